#pragma once

// Quasitoric manifolds over the cube: presentations of H*(M; Z_2), total
// and dual Stiefel-Whitney classes, sigma tables and skew-embedding bounds.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qtoric/cube.hpp"
#include "qtoric/gf2poly.hpp"
#include "qtoric/oracle.hpp"
#include "qtoric/quotient.hpp"

namespace qtoric {

/// An internal cross-check disagreed; the engine itself is wrong.
class EngineDefect : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class Family { MI, Q, Custom };

/// U: generators u_j after eliminating the v_j by the linear ideal.
/// T: t_j = u_1 + ... + u_j within each group (MI and Q only).
/// UV: all 2n facet classes, u_1..u_n then v_1..v_n, modulo I + J.
enum class Basis { U, T, UV };

inline std::string family_name(Family f) {
  switch (f) {
    case Family::MI: return "mi";
    case Family::Q: return "q";
    case Family::Custom: return "custom";
  }
  return "?";
}

inline std::string basis_name(Basis b) {
  switch (b) {
    case Basis::U: return "u";
    case Basis::T: return "t";
    case Basis::UV: return "uv";
  }
  return "?";
}

struct QuotientRing {
  Basis basis = Basis::U;
  std::vector<std::string> names;
  RelationSet relations;
  GroebnerBasis gb;

  std::size_t num_generators() const { return names.size(); }
};

namespace detail {

inline QuotientRing make_ring(Basis basis, std::vector<std::string> names,
                              std::vector<Gf2Polynomial> relations) {
  std::vector<Gf2Polynomial> nonzero;
  for (auto& r : relations) {
    if (!r.is_zero()) nonzero.push_back(std::move(r));
  }
  QuotientRing ring{basis, std::move(names), RelationSet(std::move(nonzero)), {}};
  ring.gb = buchberger(ring.relations, ring.names.size());
  return ring;
}

/// Plain composition x_i -> images[i] in the free polynomial ring.
inline Gf2Polynomial compose(const Gf2Polynomial& p, const std::vector<Gf2Polynomial>& images) {
  PolynomialAccumulator acc;
  for (const auto& m : p.terms()) {
    Gf2Polynomial value = Gf2Polynomial::one();
    for (const auto& [index, exponent] : m.pairs()) {
      for (unsigned e = 0; e < exponent; ++e) value *= images.at(index);
    }
    acc.add(value);
  }
  return acc.take();
}

/// Solves A v = B u over GF(2), where A holds the F_1..F_n columns and B
/// the F'_1..F'_n columns; returns each v_i as a linear form in the u's.
inline std::vector<Gf2Polynomial> eliminate_linear_ideal(const CharacteristicMatrix& cm) {
  const std::size_t n = cm.dimension();
  // Row bits 0..n-1 carry A (coefficients of v), bits n..2n-1 carry B.
  std::vector<std::uint64_t> rows(n, 0);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < 2 * n; ++c) {
      if ((cm.entry(r, c) & 1) != 0) rows[r] |= std::uint64_t{1} << c;
    }
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && ((rows[pivot] >> col) & 1U) == 0) ++pivot;
    if (pivot == n) {
      throw std::invalid_argument(
          "characteristic matrix: the F_1..F_n minor is even, the linear ideal cannot be "
          "eliminated");
    }
    std::swap(rows[col], rows[pivot]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r != col && ((rows[r] >> col) & 1U) != 0) rows[r] ^= rows[col];
    }
  }
  std::vector<Gf2Polynomial> v_in_u;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::size_t> us;
    for (std::size_t j = 0; j < n; ++j) {
      if ((rows[i] >> (n + j)) & 1U) us.push_back(j);
    }
    v_in_u.push_back(Gf2Polynomial::linear(us));
  }
  return v_in_u;
}

}  // namespace detail

struct BuildOptions {
  int max_n = kDefaultDimensionCap;
};

class ManifoldModel;
ManifoldModel build(Family family, std::size_t n,
                    const std::optional<CharacteristicMatrix>& matrix, BuildOptions options);

class ManifoldModel {
 public:
  Family family() const { return family_; }
  std::size_t n() const { return n_; }
  std::size_t real_dimension() const { return 2 * n_; }
  const CharacteristicMatrix& matrix() const { return matrix_; }

  /// Facet-group sizes m_1 > m_2 > ... (a single group for MI, none for CUSTOM).
  const std::vector<std::size_t>& groups() const { return groups_; }

  const QuotientRing& u_ring() const { return u_ring_; }
  bool has_t_ring() const { return t_ring_.has_value(); }
  const QuotientRing& t_ring() const {
    if (!t_ring_) throw std::invalid_argument("t-basis exists only for the mi and q families");
    return *t_ring_;
  }
  const QuotientRing& ring(Basis b) const {
    switch (b) {
      case Basis::U: return u_ring_;
      case Basis::T: return t_ring();
      case Basis::UV: return uv_ring_;
    }
    throw std::invalid_argument("unknown basis");
  }
  Basis preferred_basis() const { return has_t_ring() ? Basis::T : Basis::U; }

  /// v_j as linear forms in the u generators.
  const std::vector<Gf2Polynomial>& v_in_u() const { return v_in_u_; }
  /// Images of u_j in the t-ring: u_j = t_j + t_{j-1} inside a group.
  const std::vector<Gf2Polynomial>& u_in_t() const { return u_in_t_; }

  /// Generator index of t^{(group)}_{i}, both 0-based.
  std::size_t group_offset(std::size_t group) const {
    std::size_t offset = 0;
    for (std::size_t g = 0; g < group; ++g) offset += groups_.at(g);
    return offset;
  }

 private:
  friend ManifoldModel build(Family, std::size_t, const std::optional<CharacteristicMatrix>&,
                             BuildOptions);

  Family family_ = Family::MI;
  std::size_t n_ = 0;
  CharacteristicMatrix matrix_;
  std::vector<std::size_t> groups_;
  std::vector<Gf2Polynomial> v_in_u_;
  std::vector<Gf2Polynomial> u_in_t_;
  QuotientRing u_ring_;
  std::optional<QuotientRing> t_ring_;
  QuotientRing uv_ring_;
};

inline std::vector<std::string> generator_names(const std::string& symbol, std::size_t n,
                                                const std::vector<std::size_t>& groups,
                                                bool grouped) {
  std::vector<std::string> names;
  if (!grouped) {
    for (std::size_t i = 0; i < n; ++i) names.push_back(symbol + std::to_string(i + 1));
    return names;
  }
  for (std::size_t g = 0; g < groups.size(); ++g) {
    for (std::size_t i = 0; i < groups[g]; ++i) {
      names.push_back(symbol + std::to_string(g + 1) + "_" + std::to_string(i + 1));
    }
  }
  return names;
}

inline ManifoldModel build(Family family, std::size_t n,
                           const std::optional<CharacteristicMatrix>& matrix = std::nullopt,
                           BuildOptions options = {}) {
  const int cap = std::min(options.max_n, kHardDimensionCap);
  if (n < 1 || static_cast<int>(n) > cap) {
    throw std::invalid_argument("n = " + std::to_string(n) + " outside 1.." +
                                std::to_string(cap));
  }
  ManifoldModel m;
  m.family_ = family;
  m.n_ = n;
  switch (family) {
    case Family::MI:
      m.matrix_ = lambda_mi(n);
      m.groups_ = {n};
      break;
    case Family::Q:
      m.matrix_ = lambda_q(n);
      m.groups_ = binary_groups(n);
      break;
    case Family::Custom:
      if (!matrix) throw std::invalid_argument("custom family requires a characteristic matrix");
      if (matrix->dimension() != n) {
        throw std::invalid_argument("matrix dimension " + std::to_string(matrix->dimension()) +
                                    " does not match n = " + std::to_string(n));
      }
      m.matrix_ = *matrix;
      break;
  }
  const auto report = validate(m.matrix_);
  if (!report.valid) {
    throw std::invalid_argument("invalid characteristic matrix: vertex " +
                                report.failing_label() + " has determinant " +
                                std::to_string(report.failing_determinant));
  }

  const bool grouped = family == Family::Q;
  const auto u_names = generator_names("u", n, m.groups_, grouped);
  const auto v_names = generator_names("v", n, m.groups_, grouped);

  m.v_in_u_ = detail::eliminate_linear_ideal(m.matrix_);
  std::vector<Gf2Polynomial> u_relations;
  for (std::size_t j = 0; j < n; ++j) {
    u_relations.push_back(m.v_in_u_[j] * Monomial::variable(j));
  }
  m.u_ring_ = detail::make_ring(Basis::U, u_names, u_relations);

  // Full ring: u_j at index j, v_j at index n + j, relations u_j v_j and
  // the rows of the matrix mod 2.
  std::vector<std::string> uv_names = u_names;
  uv_names.insert(uv_names.end(), v_names.begin(), v_names.end());
  std::vector<Gf2Polynomial> uv_relations;
  for (std::size_t j = 0; j < n; ++j) {
    uv_relations.push_back(Gf2Polynomial(Monomial::variable(j) * Monomial::variable(n + j)));
  }
  for (std::size_t r = 0; r < n; ++r) {
    std::vector<std::size_t> vars;
    for (std::size_t j = 0; j < n; ++j) {
      if ((m.matrix_.entry(r, j) & 1) != 0) vars.push_back(n + j);
      if ((m.matrix_.entry(r, n + j) & 1) != 0) vars.push_back(j);
    }
    uv_relations.push_back(Gf2Polynomial::linear(vars));
  }
  m.uv_ring_ = detail::make_ring(Basis::UV, uv_names, uv_relations);

  if (family != Family::Custom) {
    m.u_in_t_.resize(n);
    std::size_t offset = 0;
    for (const std::size_t size : m.groups_) {
      for (std::size_t i = 0; i < size; ++i) {
        m.u_in_t_[offset + i] = Gf2Polynomial::variable(offset + i);
        if (i > 0) m.u_in_t_[offset + i] += Gf2Polynomial::variable(offset + i - 1);
      }
      offset += size;
    }
    std::vector<Gf2Polynomial> t_relations;
    for (const auto& r : u_relations) t_relations.push_back(detail::compose(r, m.u_in_t_));
    m.t_ring_ = detail::make_ring(Basis::T, generator_names("t", n, m.groups_, grouped),
                                  std::move(t_relations));
  }
  return m;
}

/// A cohomology class split by degree; components[k] sits in degree 2k,
/// k = 0..n, each in normal form.
struct GradedClass {
  Basis basis = Basis::T;
  std::vector<Gf2Polynomial> components;

  static GradedClass from_polynomial(const Gf2Polynomial& p, Basis basis, std::size_t n) {
    GradedClass c{basis, {}};
    for (std::size_t k = 0; k <= n; ++k) {
      c.components.push_back(graded_component(p, static_cast<int>(2 * k)));
    }
    return c;
  }

  const Gf2Polynomial& component(int degree) const {
    if (degree < 0 || degree % 2 != 0) {
      throw std::invalid_argument("component: degree must be even and non-negative");
    }
    static const Gf2Polynomial kZero;
    const auto k = static_cast<std::size_t>(degree / 2);
    return k < components.size() ? components[k] : kZero;
  }

  Gf2Polynomial total() const {
    Gf2Polynomial t;
    for (const auto& c : components) t += c;
    return t;
  }

  /// Largest degree with a nonzero component (0 for the unit class).
  int top_degree() const {
    for (std::size_t k = components.size(); k-- > 0;) {
      if (!components[k].is_zero()) return static_cast<int>(2 * k);
    }
    return 0;
  }

  friend bool operator==(const GradedClass&, const GradedClass&) = default;
};

namespace detail {

/// Product of (1 + g) over the given classes, reduced and truncated at
/// max_degree after every factor.
inline Gf2Polynomial product_of_one_plus(const std::vector<Gf2Polynomial>& classes,
                                         Reducer& reducer, int max_degree) {
  Gf2Polynomial acc = Gf2Polynomial::one();
  for (const auto& x : classes) {
    acc = truncate(reducer.multiply(acc, Gf2Polynomial::one() + x), max_degree);
  }
  return acc;
}

/// t^{(g)}_i written in the requested basis (linear form u_1 + ... + u_i in U).
inline Gf2Polynomial partial_sum_class(Basis basis, std::size_t index,
                                       std::size_t group_start) {
  if (basis == Basis::T) return Gf2Polynomial::variable(index);
  std::vector<std::size_t> vars;
  for (std::size_t j = group_start; j <= index; ++j) vars.push_back(j);
  return Gf2Polynomial::linear(vars);
}

inline void require_basis(const ManifoldModel& m, Basis basis) {
  if (basis == Basis::T && !m.has_t_ring()) {
    throw std::invalid_argument("t-basis exists only for the mi and q families");
  }
  if (basis == Basis::UV) {
    throw std::invalid_argument("classes are computed in the u or t basis");
  }
}

}  // namespace detail

/// The shortened closed form of the total class for MI and Q:
/// prod over groups of (1 + t_1)(1 + t_2)...(1 + t_{m-1}).
inline Gf2Polynomial shortened_total_product(const ManifoldModel& m, Basis basis) {
  Reducer reducer(m.ring(basis).gb);
  std::vector<Gf2Polynomial> factors;
  std::size_t offset = 0;
  for (const std::size_t size : m.groups()) {
    for (std::size_t i = 0; i + 1 < size; ++i) {
      factors.push_back(detail::partial_sum_class(basis, offset + i, offset));
    }
    offset += size;
  }
  return detail::product_of_one_plus(factors, reducer, static_cast<int>(m.real_dimension()));
}

/// Closed form of the dual class for MI and Q:
/// prod over groups of prod_{i=1}^{m-1} (1 + t_i + ... + t_i^i).
inline Gf2Polynomial dual_product_formula(const ManifoldModel& m, Basis basis) {
  Reducer reducer(m.ring(basis).gb);
  const int cap = static_cast<int>(m.real_dimension());
  Gf2Polynomial acc = Gf2Polynomial::one();
  std::size_t offset = 0;
  for (const std::size_t size : m.groups()) {
    for (std::size_t i = 0; i + 1 < size; ++i) {
      const Gf2Polynomial t = detail::partial_sum_class(basis, offset + i, offset);
      Gf2Polynomial factor = Gf2Polynomial::one();
      Gf2Polynomial power = Gf2Polynomial::one();
      for (std::size_t e = 1; e <= i + 1; ++e) {
        power = reducer.multiply(power, t);
        factor += power;
      }
      acc = truncate(reducer.multiply(acc, factor), cap);
    }
    offset += size;
  }
  return acc;
}

/// Total Stiefel-Whitney class: the product of (1 + x) over all 2n facet
/// classes, with each v_j replaced by its linear form in the u's.  For MI
/// and Q the result is checked against the shortened product.
inline GradedClass total_sw(const ManifoldModel& m, Basis basis) {
  detail::require_basis(m, basis);
  const int cap = static_cast<int>(m.real_dimension());
  Reducer u_reducer(m.u_ring().gb);
  std::vector<Gf2Polynomial> facet_classes;
  for (std::size_t j = 0; j < m.n(); ++j) facet_classes.push_back(Gf2Polynomial::variable(j));
  for (const auto& v : m.v_in_u()) facet_classes.push_back(v);
  Gf2Polynomial omega = detail::product_of_one_plus(facet_classes, u_reducer, cap);

  if (basis == Basis::T) {
    Reducer t_reducer(m.t_ring().gb);
    omega = substitute(omega, m.u_in_t(), t_reducer);
  }
  if (m.family() != Family::Custom && omega != shortened_total_product(m, basis)) {
    throw EngineDefect("total_sw: facet product disagrees with the shortened product for " +
                       family_name(m.family()) + "(" + std::to_string(m.n()) + ")");
  }
  return GradedClass::from_polynomial(omega, basis, m.n());
}

inline GradedClass total_sw(const ManifoldModel& m) { return total_sw(m, m.preferred_basis()); }

/// Dual class, the inverse of total_sw.  Computed by truncated series
/// inversion and checked against the closed product (MI, Q) or against
/// the unit identity (CUSTOM).
inline GradedClass dual_sw(const ManifoldModel& m, Basis basis, const GradedClass& total) {
  detail::require_basis(m, basis);
  const int cap = static_cast<int>(m.real_dimension());
  Reducer reducer(m.ring(basis).gb);
  const Gf2Polynomial omega = total.total();
  const Gf2Polynomial dual = series_inverse(omega, reducer, cap);
  if (m.family() != Family::Custom) {
    if (dual != dual_product_formula(m, basis)) {
      throw EngineDefect("dual_sw: series inverse disagrees with the product formula for " +
                         family_name(m.family()) + "(" + std::to_string(m.n()) + ")");
    }
  } else if (!truncate(reducer.multiply(omega, dual), cap).is_one()) {
    throw EngineDefect("dual_sw: total * dual is not 1");
  }
  return GradedClass::from_polynomial(dual, basis, m.n());
}

inline GradedClass dual_sw(const ManifoldModel& m, Basis basis) {
  return dual_sw(m, basis, total_sw(m, basis));
}

inline GradedClass dual_sw(const ManifoldModel& m) { return dual_sw(m, m.preferred_basis()); }

inline int top_dual_degree(const ManifoldModel& m) { return dual_sw(m).top_degree(); }

struct BoundReport {
  int dimension = 0;
  int k_max = 0;
  int sw_bound = 0;
  int generic_bound = 0;
  int final_bound = 0;

  friend bool operator==(const BoundReport&, const BoundReport&) = default;
};

/// N(M) >= 2d + 2k + 1 from the top nonzero dual class in degree k, and
/// the generic floor N(M) >= 2d + 2.
inline BoundReport bound_from(int dimension, int k_max) {
  BoundReport r;
  r.dimension = dimension;
  r.k_max = k_max;
  r.sw_bound = 2 * dimension + 2 * k_max + 1;
  r.generic_bound = 2 * dimension + 2;
  r.final_bound = std::max(r.sw_bound, r.generic_bound);
  return r;
}

inline BoundReport skew_lower_bound(const ManifoldModel& m) {
  return bound_from(static_cast<int>(m.real_dimension()), top_dual_degree(m));
}

struct SigmaTable {
  /// rows[i] is row n = i + 1, entries k = 0..n-1.
  std::vector<std::vector<int>> rows;

  const std::vector<int>& row(std::size_t n) const { return rows.at(n - 1); }
};

/// Rows from [1] by sigma^k_{n+1} = sum_{i<=k} sigma^i_n (mod 2) for
/// k < n, and the boundary entry sigma^n_{n+1} = sigma^{n-1}_{n+1}.
inline SigmaTable sigma_table(std::size_t n) {
  if (n < 1) throw std::invalid_argument("sigma_table: n must be positive");
  SigmaTable t;
  t.rows.push_back({1});
  while (t.rows.size() < n) {
    const auto& prev = t.rows.back();
    const std::size_t len = prev.size();
    std::vector<int> next(len + 1);
    int running = 0;
    for (std::size_t k = 0; k < len; ++k) {
      running ^= prev[k];
      next[k] = running;
    }
    next[len] = next[len - 1];
    t.rows.push_back(std::move(next));
  }
  return t;
}

/// Number of monomials in each component of the dual class of MI(n),
/// degrees 0, 2, ..., 2n.
inline std::vector<std::size_t> dual_term_counts(std::size_t n, BuildOptions options = {}) {
  const auto dual = dual_sw(build(Family::MI, n, std::nullopt, options));
  std::vector<std::size_t> counts;
  for (const auto& c : dual.components) counts.push_back(c.size());
  return counts;
}

/// sigma^k_n read off the computed dual class: parity of the term count
/// of its degree-2k component, k = 0..n-1.
inline std::vector<int> sigma_from_class(std::size_t n, BuildOptions options = {}) {
  const auto counts = dual_term_counts(n, options);
  std::vector<int> row;
  for (std::size_t k = 0; k < n; ++k) row.push_back(static_cast<int>(counts[k] % 2));
  return row;
}

/// Wires the independent oracle to the recurrence and the class engine.
inline oracle::SigmaCrossCheck cross_check_sigma(int n_max, int class_cap,
                                                 BuildOptions options = {}) {
  const auto table = sigma_table(static_cast<std::size_t>(n_max));
  return oracle::cross_check_sigma(
      n_max, [&](int n) { return table.row(static_cast<std::size_t>(n)); },
      [&](int n) { return sigma_from_class(static_cast<std::size_t>(n), options); }, class_cap);
}

/// prod over groups of t^{(j)}_1 ... t^{(j)}_{m_j - 1}: the predicted top
/// dual class of Q(n) (and of MI(2^r)).
inline Monomial predicted_top_monomial(const ManifoldModel& m) {
  Monomial w;
  std::size_t offset = 0;
  for (const std::size_t size : m.groups()) {
    for (std::size_t i = 0; i + 1 < size; ++i) w = w * Monomial::variable(offset + i);
    offset += size;
  }
  return w;
}

}  // namespace qtoric
