#include "netmap/contfrac.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace netmap;

namespace {

// Backward evaluation a0 + 1/(a1 + 1/(...)), independent of the convergent
// recursion.
Rational evaluate_backward(const std::vector<BigInt>& a) {
  Rational x(a.back());
  for (std::size_t k = a.size() - 1; k-- > 0;) x = Rational(a[k]) + Rational(1) / x;
  return x;
}

std::vector<BigInt> random_terms(std::mt19937_64& rng) {
  std::vector<BigInt> t{BigInt(static_cast<long long>(rng() % 21) - 10)};
  int len = static_cast<int>(rng() % 7);
  for (int k = 0; k < len; ++k) t.emplace_back(static_cast<long long>(1 + rng() % 9));
  return t;
}

}  // namespace

TEST(ContFrac, ParseAndPrint) {
  CFExpansion e = CFExpansion::parse("[0, 1, 3,3]");
  EXPECT_EQ(e.str(), "[0,1,3,3]");
  EXPECT_EQ(e.length(), 3u);
  EXPECT_EQ(value(e), ExtRat::parse("10/13"));
  EXPECT_THROW(CFExpansion::parse("[1,0]"), Error);
  EXPECT_THROW(CFExpansion::parse("1,2"), Error);
  EXPECT_EQ(e.parent().str(), "[0,1,3]");
  EXPECT_EQ(e.parent().extended(3), e);
}

TEST(ContFrac, ValueMatchesBackwardEvaluation) {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 500; ++k) {
    auto t = random_terms(rng);
    EXPECT_EQ(value(CFExpansion(t)), ExtRat::from_rational(evaluate_backward(t)));
  }
}

TEST(ContFrac, ConsecutiveConvergentsAreUnimodular) {
  std::mt19937_64 rng(9);
  for (int k = 0; k < 300; ++k) {
    auto pairs = convergent_pairs(CFExpansion(random_terms(rng)));
    BigInt p1 = 1, q1 = 0;  // p_{-1}/q_{-1}
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const auto& [p, q] = pairs[i];
      BigInt det = p * q1 - p1 * q;
      EXPECT_EQ(det, i % 2 == 0 ? BigInt(-1) : BigInt(1));
      EXPECT_GT(q, 0);
      p1 = p;
      q1 = q;
    }
  }
}

TEST(ContFrac, BothExpansionsOfARational) {
  std::mt19937_64 rng(13);
  for (int k = 0; k < 500; ++k) {
    long long q = 1 + static_cast<long long>(rng() % 200);
    long long p = static_cast<long long>(rng() % 801) - 400;
    ExtRat t = ExtRat::reduce(p, q);
    auto [shorter, longer] = expansions_of(t);
    EXPECT_EQ(value(shorter), t);
    EXPECT_EQ(value(longer), t);
    EXPECT_EQ(longer.length(), shorter.length() + 1);
    EXPECT_EQ(longer.terms().back(), 1);
  }
}

TEST(ContFrac, KConvergentSaturates) {
  CFExpansion e = CFExpansion::parse("[1,2,2]");
  EXPECT_EQ(k_convergent(e, 0), ExtRat::integer(1));
  EXPECT_EQ(k_convergent(e, 1), ExtRat::parse("3/2"));
  EXPECT_EQ(k_convergent(e, 9), ExtRat::parse("7/5"));
}
