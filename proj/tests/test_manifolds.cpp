#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "qtoric/manifolds.hpp"
#include "qtoric/verify.hpp"
#include "support/naive.hpp"

using namespace qtoric;

namespace {

Gf2Polynomial var(std::size_t i) { return Gf2Polynomial::variable(i); }
Gf2Polynomial one() { return Gf2Polynomial::one(); }

std::string dual_text(std::size_t n) {
  const auto m = build(Family::MI, n);
  return to_string(dual_sw(m).total(), m.t_ring().names);
}

}  // namespace

TEST(Build, CubeRelationsInBothBases) {
  const auto m = build(Family::MI, 3);
  EXPECT_EQ(m.real_dimension(), 6u);
  EXPECT_EQ(m.groups(), (std::vector<std::size_t>{3}));
  EXPECT_EQ(m.u_ring().names, (std::vector<std::string>{"u1", "u2", "u3"}));
  EXPECT_EQ(m.t_ring().names, (std::vector<std::string>{"t1", "t2", "t3"}));
  // v_r = u_1 + ... + u_r.
  EXPECT_EQ(m.v_in_u()[0], var(0));
  EXPECT_EQ(m.v_in_u()[2], var(0) + var(1) + var(2));

  const auto& u = m.u_ring().relations.generators();
  ASSERT_EQ(u.size(), 3u);
  EXPECT_EQ(u[0], var(0) * var(0));
  EXPECT_EQ(u[1], var(1) * (var(0) + var(1)));

  const auto& t = m.t_ring().relations.generators();
  ASSERT_EQ(t.size(), 3u);
  EXPECT_EQ(t[0], var(0) * var(0));
  EXPECT_EQ(t[1], var(1) * var(1) + var(0) * var(1));
  EXPECT_EQ(t[2], var(2) * var(2) + var(1) * var(2));
  EXPECT_EQ(m.u_in_t()[2], var(1) + var(2));
}

TEST(Build, GroupedGeneratorNames) {
  const auto q = build(Family::Q, 5);
  EXPECT_EQ(q.groups(), (std::vector<std::size_t>{4, 1}));
  EXPECT_EQ(q.t_ring().names,
            (std::vector<std::string>{"t1_1", "t1_2", "t1_3", "t1_4", "t2_1"}));
  EXPECT_EQ(q.group_offset(1), 4u);
  EXPECT_EQ(q.preferred_basis(), Basis::T);
}

TEST(Build, Errors) {
  EXPECT_THROW(build(Family::Custom, 2), std::invalid_argument);
  EXPECT_THROW(build(Family::Custom, 3, lambda_mi(2)), std::invalid_argument);
  const CharacteristicMatrix bad(2, {{1, 0}, {0, 1}, {1, 1}, {1, 1}});
  EXPECT_THROW(build(Family::Custom, 2, bad), std::invalid_argument);
  EXPECT_THROW(build(Family::MI, 0), std::invalid_argument);
  EXPECT_THROW(build(Family::MI, 13), std::invalid_argument);
  EXPECT_NO_THROW(build(Family::MI, 2, std::nullopt, {2}));
  EXPECT_THROW(build(Family::MI, 3, std::nullopt, {2}), std::invalid_argument);

  const auto c = build(Family::Custom, 2, lambda_mi(2));
  EXPECT_FALSE(c.has_t_ring());
  EXPECT_EQ(c.preferred_basis(), Basis::U);
  EXPECT_THROW(c.t_ring(), std::invalid_argument);
  EXPECT_THROW(total_sw(c, Basis::T), std::invalid_argument);
  EXPECT_THROW(total_sw(c, Basis::UV), std::invalid_argument);
}

TEST(Classes, TotalClassOfTheCubeManifold) {
  const auto m2 = build(Family::MI, 2);
  EXPECT_EQ(total_sw(m2).total(), one() + var(0));
  const auto m3 = build(Family::MI, 3);
  EXPECT_EQ(total_sw(m3).total(), one() + var(0) + var(1) + var(0) * var(1));
  EXPECT_EQ(total_sw(m3, Basis::U).total(), one() + var(1) + var(0) * var(1));
}

TEST(Classes, DualClassesOfSmallCubes) {
  EXPECT_EQ(dual_text(2), "1 + t1");
  EXPECT_EQ(dual_text(3), "1 + t1 + t2");
  EXPECT_EQ(dual_text(4), "1 + t1 + t2 + t3 + t1*t3 + t1*t2*t3");
  EXPECT_EQ(dual_text(5),
            "1 + t1 + t2 + t3 + t4 + t1*t3 + t1*t4 + t2*t4 + t1*t2*t3 + t2*t3*t4");
  const auto d4 = dual_sw(build(Family::MI, 4));
  EXPECT_EQ(d4.component(4), var(0) * var(2));
  EXPECT_TRUE(d4.component(8).is_zero());
  EXPECT_TRUE(d4.component(20).is_zero());
  EXPECT_THROW(d4.component(3), std::invalid_argument);
}

TEST(Classes, TopDegreeAndBounds) {
  const auto mi4 = build(Family::MI, 4);
  EXPECT_EQ(top_dual_degree(mi4), 6);
  EXPECT_EQ(skew_lower_bound(mi4), (BoundReport{8, 6, 29, 18, 29}));
  EXPECT_EQ(skew_lower_bound(build(Family::Q, 3)).final_bound, 17);
  EXPECT_EQ(skew_lower_bound(build(Family::MI, 1)), (BoundReport{2, 0, 5, 6, 6}));

  const auto q6 = build(Family::Q, 6);
  EXPECT_EQ(top_dual_degree(q6), 8);
  EXPECT_EQ(skew_lower_bound(q6).final_bound, 41);

  // [I | I]: every u_j^2 vanishes, the total class is 1.
  const CharacteristicMatrix ii(2, {{1, 0}, {0, 1}, {1, 0}, {0, 1}});
  const auto c = build(Family::Custom, 2, ii);
  EXPECT_TRUE(dual_sw(c).total().is_one());
  EXPECT_EQ(skew_lower_bound(c).final_bound, 10);
}

TEST(Classes, QTopClassIsThePredictedMonomial) {
  for (std::size_t n = 1; n <= 9; ++n) {
    const auto q = build(Family::Q, n);
    const auto dual = dual_sw(q);
    const int alpha = oracle::alpha(n);
    ASSERT_EQ(dual.top_degree(), static_cast<int>(2 * n) - 2 * alpha) << n;
    ASSERT_EQ(dual.component(dual.top_degree()), Gf2Polynomial(predicted_top_monomial(q))) << n;
    ASSERT_EQ(skew_lower_bound(q).final_bound, std::max(8 * static_cast<int>(n) - 4 * alpha + 1,
                                                        4 * static_cast<int>(n) + 2));
  }
}

TEST(Sigma, TableRows) {
  const auto t = sigma_table(8);
  EXPECT_EQ(t.row(1), (std::vector<int>{1}));
  EXPECT_EQ(t.row(3), (std::vector<int>{1, 0, 0}));
  EXPECT_EQ(t.row(5), (std::vector<int>{1, 0, 1, 0, 0}));
  EXPECT_EQ(t.row(8), std::vector<int>(8, 1));
  // Rows 2^r - 1 are 1 0 0 ... 0.
  const auto big = sigma_table(31);
  for (std::size_t n : {3u, 7u, 15u, 31u}) {
    std::vector<int> expected(n, 0);
    expected[0] = 1;
    EXPECT_EQ(big.row(n), expected);
  }
  EXPECT_THROW(sigma_table(0), std::invalid_argument);
}

TEST(Sigma, ReadOffComputedClasses) {
  EXPECT_EQ(sigma_from_class(1), (std::vector<int>{1}));
  EXPECT_EQ(dual_term_counts(4), (std::vector<std::size_t>{1, 3, 1, 1, 0}));
  EXPECT_EQ(dual_term_counts(5), (std::vector<std::size_t>{1, 4, 3, 2, 0, 0}));
  EXPECT_EQ(sigma_from_class(5), sigma_table(5).row(5));
  const auto check = cross_check_sigma(12, 9);
  EXPECT_TRUE(check.passed());
  EXPECT_EQ(check.witnesses.size(), 78u);
}

TEST(ManifoldProperties, PowerOfTwoQMatchesCube) {
  for (std::size_t n : {1u, 2u, 4u, 8u}) {
    const auto q = build(Family::Q, n);
    const auto mi = build(Family::MI, n);
    EXPECT_EQ(q.t_ring().gb, mi.t_ring().gb) << n;
    EXPECT_EQ(q.u_ring().gb, mi.u_ring().gb) << n;
  }
}

TEST(ManifoldProperties, RingShapeOfAllPresentations) {
  for (std::size_t n = 1; n <= 7; ++n) {
    for (const Family f : {Family::MI, Family::Q}) {
      const auto m = build(f, n);
      for (const Basis b : {Basis::U, Basis::T, Basis::UV}) {
        const auto ranks = standard_monomials(m.ring(b).gb, 2 * static_cast<int>(n)).ranks();
        for (std::size_t i = 0; i <= n; ++i) {
          ASSERT_EQ(ranks[i], binomial(static_cast<unsigned>(n), static_cast<unsigned>(i)));
        }
      }
    }
  }
}

TEST(ManifoldProperties, PowerIdentitiesInTheCubeRing) {
  for (std::size_t n = 2; n <= 8; ++n) {
    const auto m = build(Family::MI, n);
    Reducer t(m.t_ring().gb), u(m.u_ring().gb), uv(m.ring(Basis::UV).gb);
    for (std::size_t i = 1; i <= n; ++i) {
      Gf2Polynomial tp = one(), up = one(), prefix = one();
      for (std::size_t e = 0; e < i; ++e) {
        tp = t.multiply(tp, var(i - 1));
        up = u.multiply(up, var(i - 1));
        prefix = prefix * var(e);
      }
      ASSERT_EQ(tp, prefix);
      ASSERT_FALSE(up.is_zero());
      ASSERT_TRUE(t.multiply(tp, var(i - 1)).is_zero());
      ASSERT_TRUE(u.multiply(up, var(i - 1)).is_zero());
      if (i >= 2) {
        const auto shortened = uv.multiply(one() + var(i - 1), one() + var(n + i - 1));
        std::vector<std::size_t> below;
        for (std::size_t j = 0; j + 1 < i; ++j) below.push_back(j);
        ASSERT_EQ(shortened, one() + Gf2Polynomial::linear(below));
      }
    }
  }
}

TEST(ManifoldProperties, UnitIdentityAndBasisAgreement) {
  for (std::size_t n = 1; n <= 8; ++n) {
    for (const Family f : {Family::MI, Family::Q}) {
      const auto m = build(f, n);
      for (const Basis b : {Basis::U, Basis::T}) {
        const auto w = total_sw(m, b);
        const auto d = dual_sw(m, b, w);
        Reducer r(m.ring(b).gb);
        ASSERT_TRUE(truncate(r.multiply(w.total(), d.total()), 2 * static_cast<int>(n)).is_one());
      }
      Reducer t(m.t_ring().gb);
      ASSERT_EQ(substitute(dual_sw(m, Basis::U).total(), m.u_in_t(), t), dual_sw(m).total());
    }
  }
}

TEST(ManifoldProperties, RandomCustomMatrices) {
  std::mt19937_64 rng(123);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(trial % 6);
    const auto m = build(Family::Custom, n, testkit::random_valid_matrix(rng, n));
    const auto w = total_sw(m);
    const auto d = dual_sw(m, Basis::U, w);
    Reducer r(m.u_ring().gb);
    ASSERT_TRUE(truncate(r.multiply(w.total(), d.total()), 2 * static_cast<int>(n)).is_one());
    const auto ranks = standard_monomials(m.u_ring().gb, 2 * static_cast<int>(n)).ranks();
    for (std::size_t i = 0; i <= n; ++i) {
      ASSERT_EQ(ranks[i], binomial(static_cast<unsigned>(n), static_cast<unsigned>(i)));
    }
  }
}

TEST(ManifoldProperties, CustomCopyOfTheCubeMatrix) {
  for (std::size_t n = 1; n <= 6; ++n) {
    const auto c = build(Family::Custom, n, lambda_mi(n));
    const auto mi = build(Family::MI, n);
    EXPECT_EQ(c.u_ring().gb, mi.u_ring().gb);
    EXPECT_EQ(dual_sw(c).total(), dual_sw(mi, Basis::U).total());
  }
}
