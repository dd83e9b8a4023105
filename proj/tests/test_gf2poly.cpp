#include <random>
#include <set>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "qtoric/gf2poly.hpp"
#include "qtoric/verify.hpp"
#include "support/naive.hpp"

using namespace qtoric;

namespace {

Monomial mono(std::initializer_list<unsigned> e) { return Monomial::from_exponents(e); }
Gf2Polynomial var(std::size_t i) { return Gf2Polynomial::variable(i); }
Gf2Polynomial one() { return Gf2Polynomial::one(); }

const std::vector<std::string> kT{"t1", "t2", "t3", "t4", "t5"};

}  // namespace

TEST(Monomial, MultiplyAddsExponents) {
  const auto t1 = Monomial::variable(0);
  EXPECT_EQ(t1 * t1, Monomial::variable(0, 2));
  EXPECT_EQ(Monomial{} * Monomial::variable(1), Monomial::variable(1));
  EXPECT_EQ(mono({1, 1}) * Monomial::variable(1), mono({1, 2}));
  EXPECT_EQ((mono({1, 1}) * Monomial::variable(1)).cohomological_degree(), 6u);
}

TEST(Monomial, ExponentBookkeeping) {
  const auto m = mono({0, 3, 0, 1});
  EXPECT_EQ(m.exponent(0), 0u);
  EXPECT_EQ(m.exponent(1), 3u);
  EXPECT_EQ(m.exponent(3), 1u);
  EXPECT_EQ(m.total_degree(), 4u);
  EXPECT_EQ(m.support_end(), 4u);
  EXPECT_EQ(m.pairs(), (std::vector<std::pair<std::size_t, unsigned>>{{1, 3}, {3, 1}}));
  EXPECT_TRUE(Monomial{}.pairs().empty());
}

TEST(Monomial, HighGeneratorIndices) {
  const auto a = Monomial::variable(63, 5);
  const auto b = Monomial::variable(40, 2);
  const auto p = a * b;
  EXPECT_EQ(p.exponent(63), 5u);
  EXPECT_EQ(p.exponent(40), 2u);
  EXPECT_EQ(p.support_end(), 64u);
  EXPECT_TRUE(b.divides(p));
  EXPECT_EQ(p / b, a);
  EXPECT_THROW(Monomial::variable(64), std::invalid_argument);
}

TEST(Monomial, ExponentOverflowIsDetected) {
  const auto big = Monomial::variable(3, 200);
  EXPECT_EQ((big * Monomial::variable(3, 55)).exponent(3), 255u);
  EXPECT_THROW(big * Monomial::variable(3, 56), std::overflow_error);
  EXPECT_THROW(Monomial::variable(0, 256), std::overflow_error);
}

TEST(Monomial, LaneArithmeticMatchesScalarReference) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<unsigned> exp(0, 127);
  std::uniform_int_distribution<std::size_t> idx(0, 63);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<unsigned> ea(64, 0), eb(64, 0);
    for (int k = 0; k < 6; ++k) {
      ea[idx(rng)] = exp(rng);
      eb[idx(rng)] = exp(rng);
    }
    const auto a = Monomial::from_exponents(std::span<const unsigned>(ea));
    const auto b = Monomial::from_exponents(std::span<const unsigned>(eb));
    const auto p = a * b;
    bool a_divides_b = true;
    for (std::size_t i = 0; i < 64; ++i) {
      ASSERT_EQ(p.exponent(i), ea[i] + eb[i]);
      ASSERT_EQ(lcm(a, b).exponent(i), std::max(ea[i], eb[i]));
      a_divides_b = a_divides_b && ea[i] <= eb[i];
    }
    ASSERT_EQ(a.divides(b), a_divides_b);
    ASSERT_TRUE(a.divides(p));
    ASSERT_EQ(p / a, b);
    bool disjoint = true;
    for (std::size_t i = 0; i < 64; ++i) disjoint = disjoint && (ea[i] == 0 || eb[i] == 0);
    ASSERT_EQ(coprime(a, b), disjoint);
  }
}

TEST(Monomial, GradedReverseLexOrder) {
  // Lower degree is smaller.
  EXPECT_LT(Monomial::variable(4), mono({1, 1}));
  // t1 < t2 < t3.
  EXPECT_LT(Monomial::variable(0), Monomial::variable(1));
  EXPECT_LT(Monomial::variable(1), Monomial::variable(2));
  // Squares lead the relations t_i^2 + t_{i-1} t_i.
  EXPECT_GT(mono({0, 2}), mono({1, 1}));
  EXPECT_GT(mono({0, 0, 2}), mono({0, 1, 1}));
  EXPECT_GT(mono({0, 0, 2}), mono({1, 0, 1}));
  // Smallest variable decides: t1 t4 > t1 t3, t2 t4 > t1 t4.
  EXPECT_GT(mono({1, 0, 0, 1}), mono({1, 0, 1}));
  EXPECT_GT(mono({0, 1, 0, 1}), mono({1, 0, 0, 1}));
}

TEST(Gf2Polynomial, AdditionCancelsInCharacteristicTwo) {
  EXPECT_EQ((var(0) + var(1)) + (var(1) + var(2)), var(0) + var(2));
  const auto p = one() + var(0) + var(1) * var(2);
  EXPECT_TRUE((p + p).is_zero());
  EXPECT_EQ(one() + Gf2Polynomial::zero(), one());
}

TEST(Gf2Polynomial, FromTermsCancelsPairs) {
  const auto t1 = Monomial::variable(0);
  EXPECT_TRUE(Gf2Polynomial::from_terms({t1, t1}).is_zero());
  EXPECT_EQ(Gf2Polynomial::from_terms({t1, t1, t1}), Gf2Polynomial(t1));
}

TEST(Gf2Polynomial, Multiplication) {
  EXPECT_EQ((one() + var(0)) * (one() + var(0)), one() + var(0) * var(0));
  EXPECT_EQ((one() + var(0)) * (one() + var(1)), one() + var(0) + var(1) + var(0) * var(1));
  EXPECT_TRUE((var(0) * Gf2Polynomial::zero()).is_zero());
}

TEST(Gf2Polynomial, TriangularProductMatchesNaiveExpansion) {
  const std::vector<Gf2Polynomial> factors{one() + var(0), one() + var(0) + var(1),
                                           one() + var(0) + var(1) + var(2)};
  Gf2Polynomial product = one();
  for (const auto& f : factors) product *= f;

  EXPECT_EQ(product.size(), 10u);  // sympy, mod 2
  std::vector<testkit::NaivePoly> naive;
  for (const auto& f : factors) naive.push_back(testkit::naive_from(f, 3));
  EXPECT_EQ(testkit::naive_from(product, 3), testkit::naive_expand(naive, 3));
  EXPECT_EQ(to_string(product, kT),
            "1 + t1 + t3 + t1^2 + t2^2 + t2*t3 + t1^3 + t1^2*t3 + t1*t2^2 + t1*t2*t3");
}

TEST(Gf2Polynomial, GradedComponent) {
  const auto p = one() + var(0) + var(0) * var(1);
  EXPECT_EQ(graded_component(p, 4), var(0) * var(1));
  EXPECT_EQ(graded_component(p, 0), one());
  EXPECT_TRUE(graded_component(p, 10).is_zero());
  EXPECT_THROW(graded_component(p, 3), std::invalid_argument);
  EXPECT_THROW(graded_component(p, -2), std::invalid_argument);

  // The printed dual class of the 4-cube manifold, degree 4 part.
  const auto dual4 = one() + var(0) + var(1) + var(2) + var(0) * var(2) + var(0) * var(1) * var(2);
  EXPECT_EQ(graded_component(dual4, 4), var(0) * var(2));

  Gf2Polynomial sum;
  for (int d = 0; d <= 6; d += 2) sum += graded_component(dual4, d);
  EXPECT_EQ(sum, dual4);
}

TEST(Gf2Polynomial, Rendering) {
  EXPECT_EQ(to_string(Gf2Polynomial::zero()), "0");
  EXPECT_EQ(to_string(one() + var(0) + var(0) * var(2), kT), "1 + t1 + t1*t3");
  EXPECT_EQ(to_string(var(1) * var(1) + var(0) * var(1), kT), "t1*t2 + t2^2");
  EXPECT_EQ(to_string(var(0) + var(1)), "x1 + x2");
  const auto dual5 = var(0) * var(2) + var(0) * var(3) + var(1) * var(3);
  EXPECT_EQ(to_string(dual5, kT), "t1*t3 + t1*t4 + t2*t4");
}

TEST(Gf2Polynomial, HomogeneityAndDegree) {
  EXPECT_TRUE((var(0) * var(1) + var(2) * var(2)).is_homogeneous());
  EXPECT_FALSE((one() + var(0)).is_homogeneous());
  EXPECT_EQ((one() + var(0) * var(1)).total_degree(), 2u);
}

TEST(Gf2PolynomialProperties, RingAxiomsOnRandomInputs) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const auto p = random_polynomial(rng, 6, 8, 4);
    const auto q = random_polynomial(rng, 6, 8, 4);
    const auto r = random_polynomial(rng, 6, 8, 4);
    ASSERT_EQ((p + q) + r, p + (q + r));
    ASSERT_EQ(p + q, q + p);
    ASSERT_TRUE((p + p).is_zero());
    ASSERT_EQ(p * (q + r), p * q + p * r);
    ASSERT_EQ(p * q, q * p);
    ASSERT_EQ((p + q) * (p + q), p * p + q * q);
  }
}

TEST(Gf2PolynomialProperties, CanonicalTermOrder) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    auto p = random_polynomial(rng, 5, 10, 4);
    auto terms = p.terms();
    ASSERT_TRUE(std::is_sorted(terms.begin(), terms.end()));
    ASSERT_EQ(std::adjacent_find(terms.begin(), terms.end()), terms.end());
    std::shuffle(terms.begin(), terms.end(), rng);
    const auto rebuilt = Gf2Polynomial::from_terms(terms);
    ASSERT_EQ(rebuilt, p);
    ASSERT_EQ(to_string(rebuilt), to_string(p));
  }
}

TEST(PolynomialAccumulator, MatchesRepeatedAddition) {
  std::mt19937_64 rng(5);
  Gf2Polynomial direct;
  PolynomialAccumulator acc;
  for (int i = 0; i < 50; ++i) {
    const auto p = random_polynomial(rng, 4, 6, 3);
    direct += p;
    acc.add(p);
  }
  EXPECT_EQ(acc.take(), direct);
}
