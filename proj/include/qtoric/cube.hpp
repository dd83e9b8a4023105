#pragma once

// The n-cube as an orbit polytope and its characteristic matrices.
//
// Facet columns follow one convention everywhere: columns 0..n-1 are
// F_1..F_n, columns n..2n-1 are the opposite facets F'_1..F'_n.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qtoric {

inline constexpr int kHardDimensionCap = 16;
inline constexpr int kDefaultDimensionCap = 12;

/// A facet of the cube: pair index 0..n-1 and which side of the pair.
struct Facet {
  std::size_t pair = 0;
  bool primed = false;

  std::size_t column(std::size_t n) const { return primed ? n + pair : pair; }
  std::string label() const {
    return std::string("F") + (primed ? "'" : "") + std::to_string(pair + 1);
  }
  friend bool operator==(const Facet&, const Facet&) = default;
};

class CubeCombinatorics {
 public:
  explicit CubeCombinatorics(std::size_t n) : n_(n) {}

  std::size_t dimension() const { return n_; }
  std::size_t facet_count() const { return 2 * n_; }
  std::size_t vertex_count() const { return std::size_t{1} << n_; }

  std::vector<Facet> facets() const {
    std::vector<Facet> out;
    for (std::size_t i = 0; i < n_; ++i) out.push_back({i, false});
    for (std::size_t i = 0; i < n_; ++i) out.push_back({i, true});
    return out;
  }

  /// Vertex `mask` picks F'_{i+1} where bit i is set and F_{i+1} otherwise,
  /// so no vertex ever meets both facets of a pair.
  std::vector<Facet> vertex(std::uint64_t mask) const {
    if (mask >= vertex_count()) throw std::out_of_range("cube: vertex index out of range");
    std::vector<Facet> out;
    for (std::size_t i = 0; i < n_; ++i) out.push_back({i, ((mask >> i) & 1U) != 0});
    return out;
  }

  static std::string vertex_label(const std::vector<Facet>& facets) {
    std::string s;
    for (const auto& f : facets) {
      if (!s.empty()) s += " & ";
      s += f.label();
    }
    return s;
  }

 private:
  std::size_t n_;
};

inline CubeCombinatorics cube(int n, int cap = kHardDimensionCap) {
  if (n < 1 || n > cap || n > kHardDimensionCap) {
    throw std::invalid_argument("cube: dimension " + std::to_string(n) + " outside 1.." +
                                std::to_string(std::min(cap, kHardDimensionCap)));
  }
  return CubeCombinatorics(static_cast<std::size_t>(n));
}

/// n x 2n integer matrix stored by columns (one facet vector per column).
class CharacteristicMatrix {
 public:
  CharacteristicMatrix() = default;
  CharacteristicMatrix(std::size_t n, std::vector<std::vector<std::int64_t>> columns)
      : n_(n), columns_(std::move(columns)) {
    if (n_ == 0) throw std::invalid_argument("characteristic matrix: n must be positive");
    if (columns_.size() != 2 * n_) {
      throw std::invalid_argument("characteristic matrix: expected " + std::to_string(2 * n_) +
                                  " columns, got " + std::to_string(columns_.size()));
    }
    for (std::size_t j = 0; j < columns_.size(); ++j) {
      if (columns_[j].size() != n_) {
        throw std::invalid_argument("characteristic matrix: column " + std::to_string(j + 1) +
                                    " has length " + std::to_string(columns_[j].size()) +
                                    ", expected " + std::to_string(n_));
      }
    }
  }

  std::size_t dimension() const { return n_; }
  const std::vector<std::vector<std::int64_t>>& columns() const { return columns_; }
  const std::vector<std::int64_t>& column(std::size_t j) const { return columns_.at(j); }
  std::int64_t entry(std::size_t row, std::size_t col) const { return columns_.at(col).at(row); }

  friend bool operator==(const CharacteristicMatrix&, const CharacteristicMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::vector<std::int64_t>> columns_;
};

/// Powers of two in the binary expansion of n, largest first: 5 -> {4, 1}.
inline std::vector<std::size_t> binary_groups(std::size_t n) {
  std::vector<std::size_t> groups;
  for (int bit = 63; bit >= 0; --bit) {
    if ((n >> bit) & 1U) groups.push_back(std::size_t{1} << bit);
  }
  return groups;
}

namespace detail {

/// [I_n | B] where B is block diagonal over `groups`; inside a block of
/// size m, local column j carries ones in local rows j..m-1.
inline CharacteristicMatrix triangular_family(std::size_t n,
                                              const std::vector<std::size_t>& groups) {
  std::vector<std::vector<std::int64_t>> columns(2 * n, std::vector<std::int64_t>(n, 0));
  for (std::size_t j = 0; j < n; ++j) columns[j][j] = 1;
  std::size_t offset = 0;
  for (const std::size_t m : groups) {
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t r = j; r < m; ++r) columns[n + offset + j][offset + r] = 1;
    }
    offset += m;
  }
  return CharacteristicMatrix(n, std::move(columns));
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("determinant: overflow");
  return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("determinant: overflow");
  return r;
}

}  // namespace detail

/// The triangular matrix over the cube: lambda_j = e_j and
/// lambda_{n+j} = e_j + e_{j+1} + ... + e_n.
inline CharacteristicMatrix lambda_mi(std::size_t n) {
  if (n == 0) throw std::invalid_argument("lambda_mi: n must be positive");
  return detail::triangular_family(n, {n});
}

/// Block version of lambda_mi, one block per binary digit of n.
inline CharacteristicMatrix lambda_q(std::size_t n) {
  if (n == 0) throw std::invalid_argument("lambda_q: n must be positive");
  return detail::triangular_family(n, binary_groups(n));
}

/// Exact determinant by fraction-free (Bareiss) elimination; every
/// intermediate is a minor of the input, and overflow throws.
inline std::int64_t exact_determinant(std::vector<std::vector<std::int64_t>> a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  std::int64_t sign = 1;
  std::int64_t prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        const std::int64_t num = detail::checked_sub(detail::checked_mul(a[i][j], a[k][k]),
                                                     detail::checked_mul(a[i][k], a[k][j]));
        a[i][j] = num / prev;
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

struct ValidationReport {
  bool valid = true;
  /// Every vertex minor is odd (the weaker condition the mod-2 cohomology sees).
  bool valid_mod2 = true;
  std::size_t vertices_checked = 0;
  std::optional<std::uint64_t> failing_vertex;
  std::vector<Facet> failing_facets;
  std::int64_t failing_determinant = 0;

  std::string failing_label() const {
    return failing_vertex ? CubeCombinatorics::vertex_label(failing_facets) : std::string{};
  }
};

inline std::vector<std::vector<std::int64_t>> vertex_minor(const CharacteristicMatrix& cm,
                                                           const std::vector<Facet>& vertex) {
  const std::size_t n = cm.dimension();
  std::vector<std::vector<std::int64_t>> minor(n, std::vector<std::int64_t>(n));
  for (std::size_t c = 0; c < n; ++c) {
    const auto& col = cm.column(vertex[c].column(n));
    for (std::size_t r = 0; r < n; ++r) minor[r][c] = col[r];
  }
  return minor;
}

/// Checks |det| = 1 for the minor of every vertex, reporting the first
/// failure (vertices in mask order).
inline ValidationReport validate(const CharacteristicMatrix& cm) {
  const CubeCombinatorics c(cm.dimension());
  ValidationReport report;
  for (std::uint64_t mask = 0; mask < c.vertex_count(); ++mask) {
    const auto vertex = c.vertex(mask);
    const std::int64_t det = exact_determinant(vertex_minor(cm, vertex));
    ++report.vertices_checked;
    if (det % 2 == 0) report.valid_mod2 = false;
    if ((det != 1 && det != -1) && report.valid) {
      report.valid = false;
      report.failing_vertex = mask;
      report.failing_facets = vertex;
      report.failing_determinant = det;
    }
  }
  return report;
}

}  // namespace qtoric
