#pragma once

// Polynomials over GF(2) in commuting generators that all sit in
// cohomological degree 2.  Monomials pack one 8-bit exponent per generator
// (8 lanes per 64-bit word); coefficients are implicit.

#include <algorithm>
#include <array>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace qtoric {

inline constexpr std::size_t kMaxGenerators = 64;
inline constexpr unsigned kMaxExponent = 255;

class Monomial {
 public:
  static constexpr std::size_t kWords = kMaxGenerators / 8;

  constexpr Monomial() = default;

  static Monomial variable(std::size_t index, unsigned exponent = 1) {
    Monomial m;
    m.set_exponent(index, exponent);
    return m;
  }

  static Monomial from_exponents(std::span<const unsigned> exponents) {
    if (exponents.size() > kMaxGenerators) {
      throw std::invalid_argument("monomial: too many generators");
    }
    Monomial m;
    for (std::size_t i = 0; i < exponents.size(); ++i) {
      m.set_exponent(i, exponents[i]);
    }
    return m;
  }

  static Monomial from_exponents(std::initializer_list<unsigned> exponents) {
    return from_exponents(std::span<const unsigned>(exponents.begin(), exponents.size()));
  }

  unsigned exponent(std::size_t index) const {
    if (index >= kMaxGenerators) return 0;
    return lane(words_[index / 8], index % 8);
  }

  /// Sum of exponents.  The cohomological degree is twice this.
  unsigned total_degree() const { return degree_; }
  unsigned cohomological_degree() const { return 2 * degree_; }

  bool is_one() const { return degree_ == 0; }

  /// One past the highest generator index with a nonzero exponent.
  std::size_t support_end() const {
    for (std::size_t w = kWords; w-- > 0;) {
      if (words_[w] != 0) {
        return w * 8 + (63 - std::countl_zero(words_[w])) / 8 + 1;
      }
    }
    return 0;
  }

  bool divides(const Monomial& other) const {
    if (degree_ > other.degree_) return false;
    for (std::size_t w = 0; w < kWords; ++w) {
      std::uint64_t a = words_[w];
      if (a == 0) continue;
      std::uint64_t b = other.words_[w];
      while (a != 0) {
        const int k = std::countr_zero(a) / 8;
        if (lane(a, k) > lane(b, k)) return false;
        a &= ~(std::uint64_t{0xff} << (8 * k));
      }
    }
    return true;
  }

  /// Exact quotient; `divisor` must divide *this.
  Monomial operator/(const Monomial& divisor) const {
    Monomial q;
    for (std::size_t w = 0; w < kWords; ++w) {
      // Lane-wise subtraction never borrows when divisor divides *this.
      q.words_[w] = words_[w] - divisor.words_[w];
    }
    q.degree_ = degree_ - divisor.degree_;
    return q;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    constexpr std::uint64_t kHigh = 0x8080808080808080ULL;
    constexpr std::uint64_t kLow = ~kHigh;
    Monomial p;
    std::uint64_t overflow = 0;
    for (std::size_t w = 0; w < kWords; ++w) {
      const std::uint64_t x = a.words_[w];
      const std::uint64_t y = b.words_[w];
      const std::uint64_t s = ((x & kLow) + (y & kLow)) ^ ((x ^ y) & kHigh);
      overflow |= ((x & y) | ((x | y) & ~s)) & kHigh;
      p.words_[w] = s;
    }
    if (overflow != 0) {
      throw std::overflow_error("monomial: exponent exceeds 255");
    }
    p.degree_ = a.degree_ + b.degree_;
    return p;
  }

  friend Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial l;
    for (std::size_t i = 0; i < kMaxGenerators; ++i) {
      const unsigned e = std::max(a.exponent(i), b.exponent(i));
      if (e != 0) l.set_exponent(i, e);
    }
    return l;
  }

  friend bool coprime(const Monomial& a, const Monomial& b) {
    for (std::size_t w = 0; w < kWords; ++w) {
      if (nonzero_lanes(a.words_[w]) & nonzero_lanes(b.words_[w])) return false;
    }
    return true;
  }

  /// Sorted (generator index, exponent) pairs of the nonzero exponents.
  std::vector<std::pair<std::size_t, unsigned>> pairs() const {
    std::vector<std::pair<std::size_t, unsigned>> out;
    for (std::size_t i = 0, end = support_end(); i < end; ++i) {
      if (const unsigned e = exponent(i)) out.emplace_back(i, e);
    }
    return out;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.words_ == b.words_;
  }

  /// Graded reverse-lexicographic order with x_0 < x_1 < ...: higher degree
  /// wins; otherwise the first generator (lowest index) whose exponents
  /// differ decides, the smaller exponent being the larger monomial.
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
    if (a.degree_ != b.degree_) return a.degree_ <=> b.degree_;
    for (std::size_t w = 0; w < kWords; ++w) {
      const std::uint64_t diff = a.words_[w] ^ b.words_[w];
      if (diff == 0) continue;
      const int k = std::countr_zero(diff) / 8;
      return lane(b.words_[w], k) <=> lane(a.words_[w], k);
    }
    return std::strong_ordering::equal;
  }

  std::size_t hash() const {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (const std::uint64_t w : words_) {
      h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }

 private:
  static unsigned lane(std::uint64_t word, int k) {
    return static_cast<unsigned>((word >> (8 * k)) & 0xff);
  }

  static std::uint64_t nonzero_lanes(std::uint64_t w) {
    // Collapse every nonzero byte to its low bit.
    w |= w >> 4;
    w |= w >> 2;
    w |= w >> 1;
    return w & 0x0101010101010101ULL;
  }

  void set_exponent(std::size_t index, unsigned exponent) {
    if (index >= kMaxGenerators) {
      throw std::invalid_argument("monomial: generator index " + std::to_string(index) +
                                  " exceeds the 64-generator limit");
    }
    if (exponent > kMaxExponent) {
      throw std::overflow_error("monomial: exponent exceeds 255");
    }
    const unsigned old = exponent_unchecked(index);
    std::uint64_t& word = words_[index / 8];
    const int shift = static_cast<int>(8 * (index % 8));
    word = (word & ~(std::uint64_t{0xff} << shift)) | (std::uint64_t{exponent} << shift);
    degree_ = degree_ - old + exponent;
  }

  unsigned exponent_unchecked(std::size_t index) const {
    return lane(words_[index / 8], static_cast<int>(index % 8));
  }

  std::array<std::uint64_t, kWords> words_{};
  std::uint32_t degree_ = 0;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept { return m.hash(); }
};

class Gf2Polynomial {
 public:
  Gf2Polynomial() = default;

  explicit Gf2Polynomial(const Monomial& m) : terms_{m} {}

  /// Builds from an arbitrary term list; repeated monomials cancel in pairs.
  static Gf2Polynomial from_terms(std::vector<Monomial> terms) {
    std::sort(terms.begin(), terms.end());
    Gf2Polynomial p;
    p.terms_.reserve(terms.size());
    for (std::size_t i = 0; i < terms.size();) {
      std::size_t j = i + 1;
      while (j < terms.size() && terms[j] == terms[i]) ++j;
      if ((j - i) % 2 == 1) p.terms_.push_back(terms[i]);
      i = j;
    }
    return p;
  }

  static Gf2Polynomial zero() { return {}; }
  static Gf2Polynomial one() { return Gf2Polynomial(Monomial{}); }
  static Gf2Polynomial variable(std::size_t index) {
    return Gf2Polynomial(Monomial::variable(index));
  }

  /// Sum of the given generators, e.g. linear({0, 1}) = x0 + x1.
  static Gf2Polynomial linear(std::span<const std::size_t> indices) {
    std::vector<Monomial> terms;
    for (const std::size_t i : indices) terms.push_back(Monomial::variable(i));
    return from_terms(std::move(terms));
  }

  /// Terms in ascending graded reverse-lexicographic order.
  const std::vector<Monomial>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_one() const { return terms_.size() == 1 && terms_.front().is_one(); }

  /// Largest term; the polynomial must be nonzero.
  const Monomial& leading() const { return terms_.back(); }

  bool contains(const Monomial& m) const {
    return std::binary_search(terms_.begin(), terms_.end(), m);
  }

  unsigned total_degree() const { return terms_.empty() ? 0 : terms_.back().total_degree(); }

  bool is_homogeneous() const {
    return std::all_of(terms_.begin(), terms_.end(), [&](const Monomial& m) {
      return m.total_degree() == terms_.front().total_degree();
    });
  }

  std::size_t support_end() const {
    std::size_t end = 0;
    for (const auto& m : terms_) end = std::max(end, m.support_end());
    return end;
  }

  Gf2Polynomial& operator+=(const Gf2Polynomial& other) {
    std::vector<Monomial> out;
    out.reserve(terms_.size() + other.terms_.size());
    std::set_symmetric_difference(terms_.begin(), terms_.end(), other.terms_.begin(),
                                  other.terms_.end(), std::back_inserter(out));
    terms_ = std::move(out);
    return *this;
  }

  friend Gf2Polynomial operator+(Gf2Polynomial p, const Gf2Polynomial& q) {
    p += q;
    return p;
  }

  /// Multiplication by a monomial keeps the term order.
  friend Gf2Polynomial operator*(const Gf2Polynomial& p, const Monomial& m) {
    Gf2Polynomial out;
    out.terms_.reserve(p.terms_.size());
    for (const auto& t : p.terms_) out.terms_.push_back(t * m);
    return out;
  }

  friend Gf2Polynomial operator*(const Gf2Polynomial& p, const Gf2Polynomial& q) {
    std::vector<Monomial> products;
    products.reserve(p.terms_.size() * q.terms_.size());
    for (const auto& a : p.terms_) {
      for (const auto& b : q.terms_) products.push_back(a * b);
    }
    return from_terms(std::move(products));
  }

  Gf2Polynomial& operator*=(const Gf2Polynomial& q) {
    *this = *this * q;
    return *this;
  }

  friend bool operator==(const Gf2Polynomial&, const Gf2Polynomial&) = default;

 private:
  std::vector<Monomial> terms_;
};

/// Terms of cohomological degree exactly `degree` (even, non-negative).
inline Gf2Polynomial graded_component(const Gf2Polynomial& p, int degree) {
  if (degree < 0 || degree % 2 != 0) {
    throw std::invalid_argument("graded_component: degree must be even and non-negative, got " +
                                std::to_string(degree));
  }
  std::vector<Monomial> terms;
  for (const auto& m : p.terms()) {
    if (static_cast<int>(m.cohomological_degree()) == degree) terms.push_back(m);
  }
  return Gf2Polynomial::from_terms(std::move(terms));
}

/// Drops every term above the given cohomological degree.
inline Gf2Polynomial truncate(const Gf2Polynomial& p, int max_degree) {
  std::vector<Monomial> terms;
  for (const auto& m : p.terms()) {
    if (static_cast<int>(m.cohomological_degree()) <= max_degree) terms.push_back(m);
  }
  return Gf2Polynomial::from_terms(std::move(terms));
}

/// Hash-set accumulator for long XOR sums; `take` yields the sorted result.
class PolynomialAccumulator {
 public:
  void add(const Monomial& m) {
    if (auto [it, inserted] = terms_.insert(m); !inserted) terms_.erase(it);
  }
  void add(const Gf2Polynomial& p) {
    for (const auto& m : p.terms()) add(m);
  }
  Gf2Polynomial take() {
    std::vector<Monomial> terms(terms_.begin(), terms_.end());
    terms_.clear();
    return Gf2Polynomial::from_terms(std::move(terms));
  }

 private:
  std::unordered_set<Monomial, MonomialHash> terms_;
};

/// Renders generator `i` as names[i], falling back to x<i+1>.
inline std::string generator_name(std::span<const std::string> names, std::size_t index) {
  if (index < names.size()) return names[index];
  return "x" + std::to_string(index + 1);
}

inline std::string to_string(const Monomial& m, std::span<const std::string> names = {}) {
  if (m.is_one()) return "1";
  std::string out;
  for (const auto& [index, exponent] : m.pairs()) {
    if (!out.empty()) out += '*';
    out += generator_name(names, index);
    if (exponent > 1) out += "^" + std::to_string(exponent);
  }
  return out;
}

/// `1 + t1 + t1*t3`; terms ascend by degree, then reverse-lexicographically.
inline std::string to_string(const Gf2Polynomial& p, std::span<const std::string> names = {}) {
  if (p.is_zero()) return "0";
  std::string out;
  for (const auto& m : p.terms()) {
    if (!out.empty()) out += " + ";
    out += to_string(m, names);
  }
  return out;
}

}  // namespace qtoric

template <>
struct std::hash<qtoric::Monomial> {
  std::size_t operator()(const qtoric::Monomial& m) const noexcept { return m.hash(); }
};
