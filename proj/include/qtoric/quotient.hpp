#pragma once

// Normal forms in GF(2)[x_0..x_{m-1}]/(relations) under graded
// reverse-lexicographic order, via a small Buchberger engine.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qtoric/gf2poly.hpp"

namespace qtoric {

/// Homogeneous relation generators.
class RelationSet {
 public:
  RelationSet() = default;
  explicit RelationSet(std::vector<Gf2Polynomial> generators) : generators_(std::move(generators)) {
    for (const auto& g : generators_) {
      if (!g.is_homogeneous()) {
        throw std::invalid_argument("relation set: generator is not homogeneous: " +
                                    to_string(g));
      }
    }
  }

  const std::vector<Gf2Polynomial>& generators() const { return generators_; }
  std::size_t size() const { return generators_.size(); }

 private:
  std::vector<Gf2Polynomial> generators_;
};

namespace detail {

/// Full reduction of `p` by an arbitrary list (not necessarily a basis).
inline Gf2Polynomial reduce_by_list(Gf2Polynomial p, std::span<const Gf2Polynomial> divisors) {
  std::vector<Monomial> remainder;
  while (!p.is_zero()) {
    const Monomial lead = p.leading();
    const Gf2Polynomial* hit = nullptr;
    for (const auto& g : divisors) {
      if (g.leading().divides(lead)) {
        hit = &g;
        break;
      }
    }
    if (hit != nullptr) {
      p += *hit * (lead / hit->leading());
    } else {
      remainder.push_back(lead);
      p += Gf2Polynomial(lead);
    }
  }
  return Gf2Polynomial::from_terms(std::move(remainder));
}

inline Gf2Polynomial s_polynomial(const Gf2Polynomial& f, const Gf2Polynomial& g) {
  const Monomial l = lcm(f.leading(), g.leading());
  return f * (l / f.leading()) + g * (l / g.leading());
}

}  // namespace detail

struct BuchbergerOptions {
  /// Pair reductions allowed before the engine reports a defect.
  std::size_t max_pair_reductions = 1'000'000;
};

class GroebnerBasis;
GroebnerBasis buchberger(const RelationSet& relations, std::size_t num_generators,
                         BuchbergerOptions options);

/// Reduced Groebner basis, elements sorted by ascending leading monomial.
class GroebnerBasis {
 public:
  GroebnerBasis() = default;

  const std::vector<Gf2Polynomial>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  std::size_t num_generators() const { return num_generators_; }
  static constexpr const char* order_name() { return "grevlex"; }

  bool is_reduced() const {
    for (std::size_t i = 0; i < elements_.size(); ++i) {
      for (std::size_t j = 0; j < elements_.size(); ++j) {
        if (i == j) continue;
        for (const auto& m : elements_[j].terms()) {
          if (elements_[i].leading().divides(m)) return false;
        }
      }
    }
    return true;
  }

  bool s_pairs_reduce_to_zero() const {
    for (std::size_t i = 0; i < elements_.size(); ++i) {
      for (std::size_t j = i + 1; j < elements_.size(); ++j) {
        if (coprime(elements_[i].leading(), elements_[j].leading())) continue;
        const auto s = detail::s_polynomial(elements_[i], elements_[j]);
        if (!detail::reduce_by_list(s, elements_).is_zero()) return false;
      }
    }
    return true;
  }

  /// First element whose leading monomial divides `m`, if any.
  const Gf2Polynomial* divisor_of(const Monomial& m) const {
    for (const auto& g : elements_) {
      if (g.leading().divides(m)) return &g;
    }
    return nullptr;
  }

  friend bool operator==(const GroebnerBasis&, const GroebnerBasis&) = default;

 private:
  friend GroebnerBasis buchberger(const RelationSet&, std::size_t, BuchbergerOptions);
  std::vector<Gf2Polynomial> elements_;
  std::size_t num_generators_ = 0;
};

/// Buchberger's algorithm with the normal selection strategy (smallest lcm
/// first) and the coprime-leading-terms criterion, followed by
/// interreduction.  The result is verified before it is returned.
inline GroebnerBasis buchberger(const RelationSet& relations, std::size_t num_generators,
                                BuchbergerOptions options = {}) {
  if (num_generators > kMaxGenerators) {
    throw std::invalid_argument("buchberger: at most 64 generators are supported");
  }
  for (const auto& g : relations.generators()) {
    if (g.support_end() > num_generators) {
      throw std::invalid_argument("buchberger: relation uses a generator outside the ring: " +
                                  to_string(g));
    }
  }

  std::vector<Gf2Polynomial> basis;
  struct Pair {
    std::size_t i, j;
    Monomial lcm;
  };
  std::vector<Pair> pairs;

  auto add_element = [&](Gf2Polynomial f) {
    const std::size_t k = basis.size();
    for (std::size_t i = 0; i < k; ++i) {
      if (!coprime(basis[i].leading(), f.leading())) {
        pairs.push_back({i, k, lcm(basis[i].leading(), f.leading())});
      }
    }
    basis.push_back(std::move(f));
  };

  for (const auto& g : relations.generators()) {
    auto r = detail::reduce_by_list(g, basis);
    if (!r.is_zero()) add_element(std::move(r));
  }

  std::size_t reductions = 0;
  while (!pairs.empty()) {
    auto it = std::min_element(pairs.begin(), pairs.end(),
                               [](const Pair& a, const Pair& b) { return a.lcm < b.lcm; });
    const Pair pair = *it;
    pairs.erase(it);
    if (++reductions > options.max_pair_reductions) {
      throw std::logic_error("buchberger: pair-reduction guard exceeded");
    }
    auto r = detail::reduce_by_list(detail::s_polynomial(basis[pair.i], basis[pair.j]), basis);
    if (!r.is_zero()) add_element(std::move(r));
  }

  // Minimize: drop elements whose leading term is divisible by another's.
  std::vector<Gf2Polynomial> minimal;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < basis.size() && !redundant; ++j) {
      if (i == j || !basis[j].leading().divides(basis[i].leading())) continue;
      // Equal leading terms: keep the earliest.
      redundant = basis[j].leading() != basis[i].leading() || j < i;
    }
    if (!redundant) minimal.push_back(basis[i]);
  }

  // Interreduce tails.
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<Gf2Polynomial> others;
    for (std::size_t j = 0; j < minimal.size(); ++j) {
      if (j != i) others.push_back(minimal[j]);
    }
    const Monomial lead = minimal[i].leading();
    Gf2Polynomial tail = minimal[i] + Gf2Polynomial(lead);
    minimal[i] = Gf2Polynomial(lead) + detail::reduce_by_list(tail, others);
  }
  std::sort(minimal.begin(), minimal.end(), [](const auto& a, const auto& b) {
    return a.leading() < b.leading();
  });

  GroebnerBasis gb;
  gb.elements_ = std::move(minimal);
  gb.num_generators_ = num_generators;
  if (!gb.is_reduced() || !gb.s_pairs_reduce_to_zero()) {
    throw std::logic_error("buchberger: post-construction check failed");
  }
  return gb;
}

/// Memoizing normal-form evaluator bound to one basis.  Holds a mutable
/// cache, so each thread should own its own Reducer; the basis it refers
/// to must outlive it.
class Reducer {
 public:
  explicit Reducer(const GroebnerBasis& gb) : gb_(&gb) {}

  const GroebnerBasis& basis() const { return *gb_; }

  const Gf2Polynomial& reduce(const Monomial& m) {
    if (auto it = cache_.find(m); it != cache_.end()) return it->second;
    Gf2Polynomial result;
    if (const Gf2Polynomial* g = gb_->divisor_of(m)) {
      const Monomial cofactor = m / g->leading();
      PolynomialAccumulator acc;
      for (const auto& t : g->terms()) {
        if (t == g->leading()) continue;
        acc.add(reduce(t * cofactor));
      }
      result = acc.take();
    } else {
      result = Gf2Polynomial(m);
    }
    // unordered_map keeps element references stable across rehashing.
    return cache_.emplace(m, std::move(result)).first->second;
  }

  Gf2Polynomial reduce(const Gf2Polynomial& p) {
    check_generators(p);
    PolynomialAccumulator acc;
    for (const auto& m : p.terms()) acc.add(reduce(m));
    return acc.take();
  }

  /// Normal form of a product of two polynomials, reducing term products
  /// one at a time instead of forming the full product first.
  Gf2Polynomial multiply(const Gf2Polynomial& p, const Gf2Polynomial& q) {
    check_generators(p);
    check_generators(q);
    PolynomialAccumulator acc;
    for (const auto& a : p.terms()) {
      for (const auto& b : q.terms()) acc.add(reduce(a * b));
    }
    return acc.take();
  }

  std::size_t cache_size() const { return cache_.size(); }

 private:
  void check_generators(const Gf2Polynomial& p) const {
    if (p.support_end() > gb_->num_generators()) {
      throw std::invalid_argument("normal_form: polynomial uses a generator outside the ring (" +
                                  std::to_string(gb_->num_generators()) + " generators)");
    }
  }

  const GroebnerBasis* gb_;
  std::unordered_map<Monomial, Gf2Polynomial, MonomialHash> cache_;
};

inline Gf2Polynomial normal_form(const Gf2Polynomial& p, const GroebnerBasis& gb) {
  Reducer reducer(gb);
  return reducer.reduce(p);
}

/// Normal form by rewriting steps whose term and divisor are chosen by
/// `pick(count)`, which must return an index below `count`.  Any choice
/// sequence yields the same result for a Groebner basis.
template <class Pick>
Gf2Polynomial normal_form_by(Gf2Polynomial p, const GroebnerBasis& gb, Pick&& pick) {
  if (p.support_end() > gb.num_generators()) {
    throw std::invalid_argument("normal_form: polynomial uses a generator outside the ring");
  }
  for (;;) {
    std::vector<std::size_t> reducible;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (gb.divisor_of(p.terms()[i]) != nullptr) reducible.push_back(i);
    }
    if (reducible.empty()) return p;
    const Monomial term = p.terms()[reducible[pick(reducible.size())]];
    std::vector<const Gf2Polynomial*> divisors;
    for (const auto& g : gb.elements()) {
      if (g.leading().divides(term)) divisors.push_back(&g);
    }
    const Gf2Polynomial& g = *divisors[pick(divisors.size())];
    p += g * (term / g.leading());
  }
}

struct StandardBasis {
  /// by_degree[k] holds the standard monomials of cohomological degree 2k.
  std::vector<std::vector<Monomial>> by_degree;

  std::size_t total() const {
    std::size_t n = 0;
    for (const auto& d : by_degree) n += d.size();
    return n;
  }
  std::vector<std::size_t> ranks() const {
    std::vector<std::size_t> r;
    for (const auto& d : by_degree) r.push_back(d.size());
    return r;
  }
};

/// Monomials of cohomological degree <= max_degree that no leading monomial
/// divides.  Grown degree by degree, since standard monomials are closed
/// under taking divisors.
inline StandardBasis standard_monomials(const GroebnerBasis& gb, int max_degree) {
  if (max_degree < 0 || max_degree % 2 != 0) {
    throw std::invalid_argument("standard_monomials: degree must be even and non-negative");
  }
  StandardBasis sb;
  const Monomial one{};
  if (gb.divisor_of(one) != nullptr) {
    // Unit ideal: the quotient is zero.
    sb.by_degree.resize(static_cast<std::size_t>(max_degree / 2 + 1));
    return sb;
  }
  sb.by_degree.push_back({one});
  for (int k = 1; k <= max_degree / 2; ++k) {
    std::vector<Monomial> next;
    for (const auto& m : sb.by_degree.back()) {
      for (std::size_t v = 0; v < gb.num_generators(); ++v) {
        const Monomial candidate = m * Monomial::variable(v);
        if (gb.divisor_of(candidate) == nullptr) next.push_back(candidate);
      }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    sb.by_degree.push_back(std::move(next));
  }
  return sb;
}

/// Truncated inverse q of p (constant term 1) with p*q = 1 up to
/// max_degree, built one degree at a time: q_d = sum_{0<e<=d} p_e q_{d-e}.
inline Gf2Polynomial series_inverse(const Gf2Polynomial& p, Reducer& reducer, int max_degree) {
  if (max_degree < 0 || max_degree % 2 != 0) {
    throw std::invalid_argument("series_inverse: degree must be even and non-negative");
  }
  if (!graded_component(p, 0).is_one()) {
    throw std::invalid_argument("series_inverse: constant term must be 1");
  }
  const Gf2Polynomial reduced = reducer.reduce(p);
  const int top = max_degree / 2;
  std::vector<Gf2Polynomial> pc(static_cast<std::size_t>(top + 1));
  for (int e = 0; e <= top; ++e) pc[e] = graded_component(reduced, 2 * e);

  std::vector<Gf2Polynomial> qc(static_cast<std::size_t>(top + 1));
  qc[0] = Gf2Polynomial::one();
  PolynomialAccumulator total;
  total.add(qc[0]);
  for (int d = 1; d <= top; ++d) {
    PolynomialAccumulator acc;
    for (int e = 1; e <= d; ++e) {
      if (pc[e].is_zero() || qc[d - e].is_zero()) continue;
      acc.add(reducer.multiply(pc[e], qc[d - e]));
    }
    qc[d] = acc.take();
    total.add(qc[d]);
  }
  return total.take();
}

inline Gf2Polynomial series_inverse(const Gf2Polynomial& p, const GroebnerBasis& gb,
                                    int max_degree) {
  Reducer reducer(gb);
  return series_inverse(p, reducer, max_degree);
}

/// Ring map x_i -> images[i], evaluated in the target ring of `reducer`.
inline Gf2Polynomial substitute(const Gf2Polynomial& p, std::span<const Gf2Polynomial> images,
                                Reducer& reducer) {
  if (p.support_end() > images.size()) {
    throw std::invalid_argument("substitute: missing image for a generator");
  }
  PolynomialAccumulator acc;
  for (const auto& m : p.terms()) {
    Gf2Polynomial value = Gf2Polynomial::one();
    for (const auto& [index, exponent] : m.pairs()) {
      for (unsigned e = 0; e < exponent; ++e) value = reducer.multiply(value, images[index]);
    }
    acc.add(value);
  }
  return acc.take();
}

}  // namespace qtoric
