#include "netmap/decider.hpp"
#include "netmap/dnfamily.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace netmap;

namespace {

DecideOptions quick() {
  DecideOptions o;
  o.depth = 4;
  o.height_budget = 100;
  o.tree_budget = 4000;
  return o;
}

}  // namespace

TEST(Decide, D2ObstructedAtInfinity) {
  for (Translation t : {Translation::None, Translation::Lambda1, Translation::Lambda2, Translation::Lambda12}) {
    Verdict v = decide(make_dn(2).with_translation(t), quick());
    ASSERT_EQ(v.kind, Verdict::Kind::Obstructed) << to_string(t);
    EXPECT_EQ(*v.slope, ExtRat::infinity());
    EXPECT_EQ(v.multiplier, 1);
    EXPECT_EQ(v.c, 1);
    EXPECT_EQ(v.d, 1);
    EXPECT_EQ(v.str(), "obstructed slope=1/0 multiplier=1");
  }
}

TEST(Decide, D5Obstructed) {
  Verdict v = decide(make_dn(5), quick());
  ASSERT_EQ(v.kind, Verdict::Kind::Obstructed);
  EXPECT_EQ(*v.slope, ExtRat::parse("-2/1"));
  EXPECT_GE(v.multiplier, 1);
  EXPECT_TRUE(is_fixed_slope(make_dn(5), *v.slope));
}

TEST(Decide, D0NoObstructionFound) {
  DecideOptions o = quick();
  o.height_budget = 60;
  o.tree_budget = 2000;
  Verdict v = decide(make_dn(0), o);
  EXPECT_EQ(v.kind, Verdict::Kind::NoObstructionFound);
  ASSERT_FALSE(v.assumptions.empty());
  EXPECT_NE(v.assumptions.front().find("length <= 4"), std::string::npos);
}

TEST(Decide, RefusesEuclideanAndNonNet) {
  Diagram arcless = Diagram::make({2, 0}, {0, 1}, Translation::Zero, {});
  Verdict v = decide(arcless);
  EXPECT_EQ(v.kind, Verdict::Kind::Refused);
  EXPECT_EQ(v.str(), "refused: Euclidean");
  Verdict w = decide(make_dn(2).with_translation(Translation::Zero), quick());
  EXPECT_EQ(w.kind, Verdict::Kind::Refused);
  EXPECT_THROW(brute_force_fixed_slopes(arcless, 5), Refusal);
}

TEST(Decide, JsonFields) {
  auto j = to_json(decide(make_dn(2), quick()));
  for (const char* key : {"verdict", "slope", "multiplier", "depth", "height_budget", "assumptions"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j["verdict"], "obstructed");
  EXPECT_EQ(j["slope"], "1/0");
  EXPECT_EQ(j["multiplier"], "1");
}

TEST(Candidates, D2StopsAtLevelZero) {
  CandidateTree t = candidates(make_dn(2), 3, {});
  ASSERT_TRUE(t.obstruction_cusp.has_value());
  EXPECT_EQ(*t.obstruction_cusp, ExtRat::integer(0));
  EXPECT_EQ(t.obstruction_multiplier, 1);
  EXPECT_TRUE(t.levels[2].empty());
}

TEST(Candidates, LevelZeroCount) {
  for (long long n : {0, 5}) {
    const Diagram D = make_dn(n);
    CandidateTree t = candidates(D, 0, {1000000});
    Rational R = excluded_interval(D, ExtRat::infinity()).region->radius;
    EXPECT_LE(BigInt(t.size), 2 * ceil_of(R) + 3);
    EXPECT_FALSE(t.truncated);
    // The largest negative integer in the region is present.
    EXPECT_TRUE(t.contains_value(ExtRat::integer(-floor_of(R) - 1)));
  }
}

TEST(Candidates, LevelsNestAndAvoidParentRegions) {
  CandidateTree t = candidates(make_dn(0), 2, {3000});
  EXPECT_TRUE(t.truncated);
  for (std::size_t k = 2; k < t.levels.size(); ++k) {
    for (const auto& node : t.levels[k]) {
      CFExpansion parent = node.expansion->parent();
      EXPECT_EQ(parent.length() + 1, node.expansion->length());
      Exclusion e = excluded_interval(make_dn(0), value(parent));
      ASSERT_FALSE(e.refused());
      EXPECT_FALSE(e.region->contains(node.value));
    }
  }
}

TEST(Candidates, ObstructionCuspsOnTheirPaths) {
  PathReport p5 = candidate_path(make_dn(5), CFExpansion::parse("[0,2]"));
  EXPECT_TRUE(p5.member || p5.early_stop);
  EXPECT_EQ(*p5.obstruction_cusp, ExtRat::parse("1/2"));
  PathReport p8 = candidate_path(make_dn(8), CFExpansion::parse("[0,1,3,3]"));
  EXPECT_TRUE(p8.member);
  PathReport far = candidate_path(make_dn(5), CFExpansion::parse("[100000]"));
  EXPECT_FALSE(far.member);
}

TEST(BruteForce, KnownFixedSlopes) {
  auto d2 = brute_force_fixed_slopes(make_dn(2), 10);
  bool found = false;
  for (const auto& f : d2) found = found || (f.slope == ExtRat::infinity() && f.multiplier == 1);
  EXPECT_TRUE(found);
  auto d8 = brute_force_fixed_slopes(make_dn(8), 20);
  found = false;
  for (const auto& f : d8) found = found || (f.slope == ExtRat::parse("-13/10") && f.multiplier >= 1);
  EXPECT_TRUE(found);
}

TEST(SmallPreimage, ParityClasses) {
  EXPECT_EQ(parity_class(ExtRat::infinity()), std::make_pair(1, 0));
  EXPECT_EQ(parity_class(ExtRat::integer(0)), std::make_pair(0, 1));
  EXPECT_EQ(parity_class(ExtRat::parse("3/5")), std::make_pair(1, 1));
  const Diagram D0 = make_dn(0);
  for (const char* e : {"0/1", "1/0", "1/1"}) {
    ExtRat target = ExtRat::parse(e);
    ExtRat s = find_small_preimage(D0, target);
    EXPECT_LE(height(s), D0.degree());
    SlopeValue img = mu(D0, s);
    ASSERT_FALSE(is_odot(img));
    EXPECT_EQ(parity_class(std::get<ExtRat>(img)), parity_class(target));
  }
}

TEST(Bounds, ClosedFormOfHeightTower) {
  auto hs = bound_formulas(2, 0, 1, 1);
  EXPECT_EQ(*hs[0].value, 256);
  for (long long C : {2, 3}) {
    for (long long A : {1, 128}) {
      auto tower = bound_formulas(C, 2, A, 5);
      BigInt C8 = boost::multiprecision::pow(BigInt(C), 8);
      for (const auto& h : tower) {
        ASSERT_TRUE(h.value.has_value());
        // (A1 C^8)^((19^k - 1)/18) (A0 C^8)^(19^k), evaluated directly.
        unsigned long long p19 = 1;
        for (int i = 0; i < h.k; ++i) p19 *= 19;
        BigInt direct = boost::multiprecision::pow(BigInt(5) * C8, static_cast<unsigned>((p19 - 1) / 18)) *
                        boost::multiprecision::pow(BigInt(A) * C8, static_cast<unsigned>(p19));
        EXPECT_EQ(*h.value, direct);
        if (h.k > 0) {
          EXPECT_EQ(*h.value, BigInt(5) * C8 * boost::multiprecision::pow(*tower[h.k - 1].value, 19));
        }
      }
    }
  }
  auto big = bound_formulas(10, 6);
  EXPECT_FALSE(big.back().value.has_value());
  EXPECT_EQ(big.back().e2, 47045881);
}

TEST(Bounds, DepthBoundMonotoneAndRigorous) {
  Rational a = a_lower_bound();
  double exact = 4.0 * std::atanh(std::sqrt(2.0) - 1.0);
  EXPECT_LT(a.convert_to<double>(), exact + 1e-12);
  EXPECT_GT(a.convert_to<double>(), exact - 1e-12);
  for (long long C : {2, 7, 100}) {
    BigInt prev = -1;
    for (int k = 9; k >= 1; --k) {
      BigInt n = n_bound(C, Rational(k, 10));
      // Smaller c gives a smaller bound.
      if (prev >= 0) {
        EXPECT_LE(n, prev);
      }
      prev = n;
      double approx = 1 + (30 * std::log(5.0 * C) + std::log(16.0) + 2 * std::log(double(C))) /
                              ((1 - k / 10.0) * exact);
      EXPECT_GE(n.convert_to<double>(), std::floor(approx) - 1e-9);
      EXPECT_LE(n.convert_to<double>(), std::floor(approx) + 1);
    }
  }
  EXPECT_THROW(n_bound(2, Rational(1)), Error);
  EXPECT_THROW(n_bound(2, Rational(0)), Error);
}
