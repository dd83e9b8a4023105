#pragma once

// Invariant suites behind `qtoric verify`.  Each n is checked
// independently (and concurrently); results are ordered by n.

#include <cstdint>
#include <exception>
#include <functional>
#include <future>
#include <random>
#include <string>
#include <vector>

#include "qtoric/cube.hpp"
#include "qtoric/gf2poly.hpp"
#include "qtoric/manifolds.hpp"
#include "qtoric/oracle.hpp"
#include "qtoric/quotient.hpp"

namespace qtoric {

struct CheckResult {
  std::string name;
  int n = 0;  // 0 for checks not tied to one dimension
  bool passed = false;
  std::string detail;
};

/// Random polynomial with up to `max_terms` terms of total degree <= max_total_degree.
inline Gf2Polynomial random_polynomial(std::mt19937_64& rng, std::size_t num_generators,
                                       std::size_t max_terms, unsigned max_total_degree) {
  std::uniform_int_distribution<std::size_t> term_count(0, max_terms);
  std::uniform_int_distribution<unsigned> degree(0, max_total_degree);
  std::uniform_int_distribution<std::size_t> var(0, num_generators - 1);
  std::vector<Monomial> terms;
  const std::size_t count = term_count(rng);
  for (std::size_t t = 0; t < count; ++t) {
    Monomial m;
    for (unsigned d = degree(rng); d > 0; --d) m = m * Monomial::variable(var(rng));
    terms.push_back(m);
  }
  return Gf2Polynomial::from_terms(std::move(terms));
}

inline std::uint64_t binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

namespace detail {

class CheckLog {
 public:
  explicit CheckLog(int n) : n_(n) {}

  void run(const std::string& name, const std::function<std::string()>& body) {
    CheckResult r{name, n_, false, {}};
    try {
      r.detail = body();
      r.passed = r.detail.empty();
    } catch (const std::exception& e) {
      r.detail = std::string("exception: ") + e.what();
    }
    results_.push_back(std::move(r));
  }

  std::vector<CheckResult> take() { return std::move(results_); }

 private:
  int n_;
  std::vector<CheckResult> results_;
};

inline std::string rank_detail(const QuotientRing& ring, std::size_t n) {
  const auto sb = standard_monomials(ring.gb, static_cast<int>(2 * n + 2));
  const auto ranks = sb.ranks();
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    if (ranks[i] != binomial(static_cast<unsigned>(n), static_cast<unsigned>(i))) {
      return basis_name(ring.basis) + "-ring rank in degree " + std::to_string(2 * i) + " is " +
             std::to_string(ranks[i]);
    }
  }
  return {};
}

inline std::string normal_form_detail(const QuotientRing& ring, std::uint64_t seed,
                                      int samples) {
  std::mt19937_64 rng(seed);
  Reducer reducer(ring.gb);
  const std::size_t m = ring.num_generators();
  for (const auto& g : ring.relations.generators()) {
    if (!reducer.reduce(g).is_zero()) return "relation " + to_string(g, ring.names) + " not in ideal";
  }
  for (int s = 0; s < samples; ++s) {
    const auto p = random_polynomial(rng, m, 6, 5);
    const auto q = random_polynomial(rng, m, 6, 5);
    const auto np = reducer.reduce(p);
    if (reducer.reduce(np) != np) return "normal form not idempotent";
    if (reducer.reduce(p * q) != reducer.multiply(np, reducer.reduce(q))) {
      return "normal form not multiplicative";
    }
    auto pick = [&](std::size_t count) {
      return std::uniform_int_distribution<std::size_t>(0, count - 1)(rng);
    };
    if (normal_form_by(p, ring.gb, pick) != np) return "reduction path changed the normal form";
  }
  return {};
}

inline std::string ring_axiom_detail(std::uint64_t seed, int samples) {
  std::mt19937_64 rng(seed);
  for (int s = 0; s < samples; ++s) {
    const auto p = random_polynomial(rng, 8, 6, 4);
    const auto q = random_polynomial(rng, 8, 6, 4);
    const auto r = random_polynomial(rng, 8, 6, 4);
    if ((p + q) + r != p + (q + r)) return "addition not associative";
    if (p + q != q + p) return "addition not commutative";
    if (!(p + p).is_zero()) return "p + p != 0";
    if (p * (q + r) != p * q + p * r) return "multiplication not distributive";
    if ((p + q) * (p + q) != p * p + q * q) return "Frobenius fails";
    if ((p * q) * r != p * (q * r)) return "multiplication not associative";
  }
  return {};
}

inline std::vector<CheckResult> checks_for(int n) {
  CheckLog log(n);
  const auto un = static_cast<std::size_t>(n);
  const bool power_of_two = (un & (un - 1)) == 0;
  const ManifoldModel mi = build(Family::MI, un, std::nullopt, {kHardDimensionCap});
  const ManifoldModel q = build(Family::Q, un, std::nullopt, {kHardDimensionCap});

  log.run("matrix_valid", [&]() -> std::string {
    if (!validate(mi.matrix()).valid) return "lambda_mi invalid";
    if (!validate(q.matrix()).valid) return "lambda_q invalid";
    return {};
  });
  log.run("groebner_bases", [&]() -> std::string {
    for (const ManifoldModel* m : {&mi, &q}) {
      for (Basis b : {Basis::U, Basis::T, Basis::UV}) {
        const auto& gb = m->ring(b).gb;
        if (!gb.is_reduced() || !gb.s_pairs_reduce_to_zero()) {
          return family_name(m->family()) + " " + basis_name(b) + "-basis not a reduced GB";
        }
      }
    }
    return {};
  });
  log.run("rank_profile", [&]() -> std::string {
    for (const ManifoldModel* m : {&mi, &q}) {
      for (Basis b : {Basis::U, Basis::T, Basis::UV}) {
        if (auto d = rank_detail(m->ring(b), un); !d.empty()) {
          return family_name(m->family()) + ": " + d;
        }
      }
    }
    return {};
  });
  log.run("power_identities", [&]() -> std::string {
    Reducer t(mi.t_ring().gb);
    Reducer u(mi.u_ring().gb);
    Monomial prefix;
    for (std::size_t i = 0; i < un; ++i) {
      prefix = prefix * Monomial::variable(i);
      const auto ti = Monomial::variable(i, static_cast<unsigned>(i + 1));
      if (t.reduce(Gf2Polynomial(ti)) != Gf2Polynomial(prefix)) {
        return "t" + std::to_string(i + 1) + "^" + std::to_string(i + 1) + " != t1...t" +
               std::to_string(i + 1);
      }
      if (!t.reduce(Gf2Polynomial(ti * Monomial::variable(i))).is_zero()) {
        return "t" + std::to_string(i + 1) + "^" + std::to_string(i + 2) + " != 0";
      }
      if (u.reduce(Gf2Polynomial(ti)).is_zero()) {
        return "u" + std::to_string(i + 1) + "^" + std::to_string(i + 1) + " == 0";
      }
      if (!u.reduce(Gf2Polynomial(ti * Monomial::variable(i))).is_zero()) {
        return "u" + std::to_string(i + 1) + "^" + std::to_string(i + 2) + " != 0";
      }
    }
    return {};
  });
  if (n <= 8) {
    log.run("cancellation_identity", [&]() -> std::string {
      Reducer uv(mi.ring(Basis::UV).gb);
      for (std::size_t i = 1; i < un; ++i) {
        const auto lhs = (Gf2Polynomial::one() + Gf2Polynomial::variable(i)) *
                         (Gf2Polynomial::one() + Gf2Polynomial::variable(un + i));
        Gf2Polynomial rhs = Gf2Polynomial::one();
        for (std::size_t j = 0; j < i; ++j) rhs += Gf2Polynomial::variable(j);
        if (uv.reduce(lhs) != uv.reduce(rhs)) return "fails at i = " + std::to_string(i + 1);
      }
      return {};
    });
  }

  GradedClass mi_total, mi_dual, q_total, q_dual;
  log.run("path_independence", [&]() -> std::string {
    // dual_sw throws EngineDefect when its two routes disagree.
    mi_total = total_sw(mi);
    mi_dual = dual_sw(mi, Basis::T, mi_total);
    q_total = total_sw(q);
    q_dual = dual_sw(q, Basis::T, q_total);
    for (const ManifoldModel* m : {&mi, &q}) {
      Reducer t(m->t_ring().gb);
      const auto via_u = substitute(dual_sw(*m, Basis::U).total(), m->u_in_t(), t);
      if (via_u != dual_sw(*m, Basis::T).total()) {
        return family_name(m->family()) + ": u-basis and t-basis dual classes differ";
      }
    }
    return {};
  });
  log.run("unit_contract", [&]() -> std::string {
    for (const auto& [m, total, dual] :
         {std::tuple{&mi, &mi_total, &mi_dual}, std::tuple{&q, &q_total, &q_dual}}) {
      Reducer t(m->t_ring().gb);
      if (!t.multiply(total->total(), dual->total()).is_one()) {
        return family_name(m->family()) + ": w * dual w != 1";
      }
    }
    return {};
  });
  log.run("sigma_consistency", [&]() -> std::string {
    std::vector<int> from_class;
    for (std::size_t k = 0; k < un; ++k) {
      from_class.push_back(static_cast<int>(mi_dual.components[k].size() % 2));
    }
    if (from_class != sigma_table(un).row(un)) return "class parities differ from recurrence";
    return {};
  });
  if (power_of_two && n >= 2) {
    log.run("power_of_two_top_class", [&]() -> std::string {
      Monomial w;
      for (std::size_t i = 0; i + 1 < un; ++i) w = w * Monomial::variable(i);
      if (mi_dual.component(2 * n - 2) != Gf2Polynomial(w)) return "top component differs";
      return {};
    });
    log.run("power_of_two_bound", [&]() -> std::string {
      const auto b = bound_from(2 * n, mi_dual.top_degree());
      if (b.final_bound != 8 * n - 3) return "bound " + std::to_string(b.final_bound);
      return {};
    });
  }
  log.run("q_top_class", [&]() -> std::string {
    const int a = oracle::alpha(un);
    if (q_dual.top_degree() != 2 * n - 2 * a) {
      return "top degree " + std::to_string(q_dual.top_degree());
    }
    if (q_dual.component(2 * n - 2 * a) != Gf2Polynomial(predicted_top_monomial(q))) {
      return "top component differs from the predicted monomial";
    }
    const auto b = bound_from(2 * n, q_dual.top_degree());
    if (n >= 2 && b.final_bound != 8 * n - 4 * a + 1) {
      return "bound " + std::to_string(b.final_bound);
    }
    return {};
  });
  if (n <= 6) {
    log.run("normal_form_properties", [&]() -> std::string {
      for (Basis b : {Basis::U, Basis::T, Basis::UV}) {
        if (auto d = normal_form_detail(mi.ring(b), 1000 + static_cast<std::uint64_t>(n), 50);
            !d.empty()) {
          return basis_name(b) + ": " + d;
        }
      }
      return {};
    });
  }
  return log.take();
}

}  // namespace detail

/// Runs every invariant suite for n = 1..n_max plus the dimension-free
/// oracle checks.  Only the first failure matters for the exit status.
inline std::vector<CheckResult> run_verification(int n_max) {
  if (n_max < 1 || n_max > kHardDimensionCap) {
    throw std::invalid_argument("verify: n-max outside 1.." + std::to_string(kHardDimensionCap));
  }
  std::vector<CheckResult> results;
  detail::CheckLog global(0);
  global.run("ring_axioms", [] { return detail::ring_axiom_detail(7, 200); });
  global.run("binomial_parity_rules", []() -> std::string {
    for (int a = 0; a <= 40; ++a) {
      for (int b = 0; b <= a; ++b) {
        if (oracle::binom_parity(a, b) != oracle::binom_parity_bruteforce(a, b)) {
          return "C(" + std::to_string(a) + "," + std::to_string(b) + ")";
        }
      }
    }
    return {};
  });
  global.run("sigma_lucas", [&]() -> std::string {
    const int rows = std::max(n_max, 20);
    const auto check = cross_check_sigma(rows, 0);
    if (!check.passed()) {
      const auto& w = check.disagreements.front();
      return "n=" + std::to_string(w.n) + " k=" + std::to_string(w.k);
    }
    return {};
  });
  results = global.take();

  std::vector<std::future<std::vector<CheckResult>>> tasks;
  for (int n = 1; n <= n_max; ++n) {
    tasks.push_back(std::async(std::launch::async, [n] { return detail::checks_for(n); }));
  }
  for (auto& t : tasks) {
    for (auto& r : t.get()) results.push_back(std::move(r));
  }
  return results;
}

}  // namespace qtoric
