#include "netmap/exactnum.hpp"

#include <gtest/gtest.h>

#include <numeric>
#include <random>
#include <set>

using namespace netmap;

namespace {

long long floor_div_ll(long long a, long long b) {
  long long q = a / b;
  if (a % b != 0 && ((a < 0) != (b < 0))) --q;
  return q;
}

IMat2 random_sl2(std::mt19937_64& rng) {
  // Products of the generators [[1,1],[0,1]] and [[1,0],[1,1]] and their inverses.
  const IMat2 gens[4] = {{1, 1, 0, 1}, {1, -1, 0, 1}, {1, 0, 1, 1}, {1, 0, -1, 1}};
  IMat2 m;
  int len = static_cast<int>(rng() % 8);
  for (int k = 0; k < len; ++k) m = m * gens[rng() % 4];
  return m;
}

}  // namespace

TEST(ExtRat, ReducesToCanonicalForm) {
  EXPECT_EQ(ExtRat::reduce(4, -6).str(), "-2/3");
  EXPECT_EQ(ExtRat::reduce(-5, 0), ExtRat::infinity());
  EXPECT_EQ(ExtRat::reduce(0, -7), ExtRat::integer(0));
  EXPECT_THROW(ExtRat::reduce(0, 0), Error);
  EXPECT_EQ(ExtRat::parse("10/-4").str(), "-5/2");
  EXPECT_EQ(ExtRat::parse("inf"), ExtRat::infinity());
  EXPECT_THROW(ExtRat::parse("1/x"), Error);
}

TEST(ExtRat, HeightAndCuspConversion) {
  EXPECT_EQ(height(ExtRat::parse("-13/10")), 13);
  EXPECT_EQ(height(ExtRat::infinity()), 1);
  EXPECT_EQ(cusp_of_slope(ExtRat::infinity()), ExtRat::integer(0));
  EXPECT_EQ(cusp_of_slope(ExtRat::parse("-2/1")), ExtRat::parse("1/2"));
  EXPECT_EQ(slope_of_cusp(ExtRat::parse("10/13")), ExtRat::parse("-13/10"));
}

TEST(ExactNum, FloorDivisionMatchesMachineIntegers) {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 2000; ++k) {
    long long a = static_cast<long long>(rng() % 20001) - 10000;
    long long b = static_cast<long long>(rng() % 201) - 100;
    if (b == 0) continue;
    EXPECT_EQ(floor_div(a, b), floor_div_ll(a, b));
    EXPECT_EQ(ceil_div(a, b), -floor_div_ll(-a, b));
  }
}

TEST(ExactNum, ExtendedGcdBezout) {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 1000; ++k) {
    BigInt a(static_cast<long long>(rng() % 100001) - 50000), b(static_cast<long long>(rng() % 100001) - 50000);
    BigInt x, y;
    BigInt g = ext_gcd(a, b, x, y);
    EXPECT_EQ(a * x + b * y, g);
    EXPECT_EQ(g, BigInt(std::gcd(a.convert_to<long long>(), b.convert_to<long long>())));
  }
}

TEST(ExactNum, ParsesRationals) {
  EXPECT_EQ(parse_rational("0.25"), Rational(1, 4));
  EXPECT_EQ(parse_rational("-1.5"), Rational(-3, 2));
  EXPECT_EQ(parse_rational("6/-4"), Rational(-3, 2));
  EXPECT_THROW(parse_rational("1/0"), Error);
}

TEST(Farey, CountMatchesCoprimeDoubleLoop) {
  for (long long H : {1, 2, 3, 7, 20, 45}) {
    std::size_t expected = 0;
    for (long long q = 0; q <= H; ++q) {
      for (long long p = -H; p <= H; ++p) {
        if (std::gcd(p, q) != 1) continue;
        if (q == 0 && p != 1) continue;  // only 1/0
        ++expected;
      }
    }
    auto all = farey_enumerate(H);
    EXPECT_EQ(all.size(), expected) << "H=" << H;
    std::set<std::string> seen;
    for (const auto& x : all) {
      EXPECT_LE(height(x), H);
      EXPECT_TRUE(seen.insert(x.str()).second) << x;
    }
  }
}

TEST(Farey, IncreasingHeight) {
  BigInt last = 0;
  for_each_farey(30, [&](const ExtRat& x) {
    EXPECT_GE(height(x), last);
    last = height(x);
  });
}

TEST(Mobius, CompositionIsMatrixProduct) {
  std::mt19937_64 rng(3);
  auto xs = farey_enumerate(6);
  for (int k = 0; k < 300; ++k) {
    IMat2 A = random_sl2(rng), B = random_sl2(rng);
    const ExtRat& x = xs[rng() % xs.size()];
    EXPECT_EQ(mobius(A * B, x), mobius(A, mobius(B, x)));
    EXPECT_EQ(mobius(A.unimodular_inverse(), mobius(A, x)), x);
  }
}

TEST(Mobius, PowerByRepeatedProduct) {
  IMat2 g{0, 1, -1, 2}, acc;
  for (unsigned n = 0; n <= 40; ++n) {
    EXPECT_EQ(power(g, n), acc);
    acc = acc * g;
  }
}

TEST(Mobius, SlopeActionRep) {
  IMat2 phi{2, 1, 1, 1};
  EXPECT_EQ(slope_action_rep(phi), (IMat2{2, -1, -1, 1}));
  EXPECT_THROW(slope_action_rep(IMat2{2, 0, 0, 1}), Error);
}
