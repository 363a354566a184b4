#include "netmap/diagram.hpp"
#include "netmap/dnfamily.hpp"

#include "random_diagrams.hpp"

#include <gtest/gtest.h>

using namespace netmap;

TEST(Diagram, ParsesTheD0File) {
  Diagram D = Diagram::parse(
      "# comment\n"
      "lambda1 = 0 1\n"
      "lambda2 = -2 -1\n"
      "arc = (0,1) -> (-1,0)   # trailing comment\n");
  EXPECT_EQ(D, make_dn(0));
  EXPECT_TRUE(D.is_virtual());
  EXPECT_EQ(D.degree(), 2);
  EXPECT_EQ(Diagram::parse(D.str()), D);
}

TEST(Diagram, ParseErrorsCarryLineNumbers) {
  auto line_of = [](const std::string& text) {
    try {
      Diagram::parse(text);
    } catch (const DiagramError& e) {
      return e.line();
    }
    return -1;
  };
  EXPECT_EQ(line_of("lambda1 = 1 0\nlambda2 = 0 2\nfoo = 3\n"), 3);
  EXPECT_EQ(line_of("lambda1 = 1 0\nlambda1 = 0 2\n"), 2);
  EXPECT_EQ(line_of("lambda1 = 1 0\nlambda2 = 0 2\ntranslation = lambda3\n"), 3);
  // The arc starts off the lattice.
  EXPECT_EQ(line_of("lambda1 = 2 0\nlambda2 = 0 1\n\narc = (1,0) -> (1,1)\n"), 4);
}

TEST(Diagram, RejectsInvalidInput) {
  // Dependent and unimodular lattices.
  EXPECT_THROW(Diagram::make({1, 2}, {2, 4}, Translation::None, {}), DiagramError);
  EXPECT_THROW(Diagram::make({1, 0}, {0, 1}, Translation::None, {}), DiagramError);
  // Arc through an integer point.
  EXPECT_THROW(Diagram::make({2, 0}, {0, 1}, Translation::None, {{{0, 0}, {2, 2}}}), DiagramError);
  // Arc ending at a lattice point.
  EXPECT_THROW(Diagram::make({2, 0}, {0, 1}, Translation::None, {{{0, 0}, {0, 1}}}), DiagramError);
}

TEST(Diagram, EuclideanTest) {
  EXPECT_FALSE(is_euclidean(make_dn(0)));
  EXPECT_FALSE(is_euclidean(make_dn(2)));
  EXPECT_TRUE(is_euclidean(make_dn(0).without_arcs()));
}

TEST(Diagram, CriticalClassCount) {
  std::mt19937_64 rng(21);
  for (int k = 0; k < 50; ++k) {
    Diagram D = netmap::testing::random_diagram(rng);
    EXPECT_EQ(BigInt(D.critical_classes().size()), 2 * (D.degree() - 1)) << D.str();
  }
}

TEST(DnFamily, TwistMatrixIsAPower) {
  EXPECT_EQ(twist_matrix(2), (IMat2{-1, 2, -2, 3}));
  for (long long n = 0; n <= 50; ++n) {
    EXPECT_EQ(twist_matrix(n), power(IMat2{0, 1, -1, 2}, static_cast<unsigned long long>(n)));
  }
}

TEST(DnFamily, DnIsTheTwistOfD0) {
  const Diagram D0 = make_dn(0);
  EXPECT_EQ(D0.lambda1(), (Vec2{0, 1}));
  EXPECT_EQ(D0.lambda2(), (Vec2{-2, -1}));
  EXPECT_EQ(D0.arcs()[0].to, (Vec2{-1, 0}));
  for (long long n = 0; n <= 50; ++n) EXPECT_EQ(sl2_apply(twist_matrix(n), D0), make_dn(n)) << n;
}

namespace {

// Any two spin mirrors meet, scanning translates 2*(i*l1 + j*l2) with
// |i|, |j| <= 20, far past the reach of arcs this short.
bool mirrors_meet_scan(const Vec2& l1, const Vec2& l2, const std::vector<Arc>& arcs) {
  for (std::size_t j = 0; j < arcs.size(); ++j) {
    for (std::size_t k = j; k < arcs.size(); ++k) {
      Vec2 ej = arcs[j].to - arcs[j].from, ek = arcs[k].to - arcs[k].from;
      if (ej == Vec2{0, 0} || ek == Vec2{0, 0}) continue;
      for (long long a = -20; a <= 20; ++a) {
        for (long long b = -20; b <= 20; ++b) {
          if (j == k && a == 0 && b == 0) continue;
          Vec2 ck = arcs[k].from + BigInt(2 * a) * l1 + BigInt(2 * b) * l2;
          if (detail::segments_meet(arcs[j].from - ej, arcs[j].from + ej, ck - ek, ck + ek)) return true;
        }
      }
    }
  }
  return false;
}

}  // namespace

TEST(Diagram, MirrorCheckMatchesWideScan) {
  std::mt19937_64 rng(12);
  int accepted = 0, mirror_rejects = 0;
  for (int n = 0; n < 3000; ++n) {
    Vec2 l1{netmap::testing::uniform(rng, -4, 4), netmap::testing::uniform(rng, -4, 4)};
    Vec2 l2{netmap::testing::uniform(rng, -4, 4), netmap::testing::uniform(rng, -4, 4)};
    if (cross(l1, l2) < 2) continue;
    std::vector<Arc> arcs;
    for (int k = 0; k < 2; ++k) {
      Vec2 from = BigInt(k) * l1;
      arcs.push_back({from, from + Vec2{netmap::testing::uniform(rng, -4, 4), netmap::testing::uniform(rng, -4, 4)}});
    }
    bool meet = mirrors_meet_scan(l1, l2, arcs);
    try {
      Diagram::make(l1, l2, Translation::None, arcs);
      ++accepted;
      EXPECT_FALSE(meet) << l1.str() << " " << l2.str();
    } catch (const DiagramError& e) {
      if (std::string(e.what()).find("spin mirrors") != std::string::npos) {
        ++mirror_rejects;
        EXPECT_TRUE(meet) << l1.str() << " " << l2.str();
      }
    }
  }
  EXPECT_GT(accepted, 50);
  EXPECT_GT(mirror_rejects, 10);
}

TEST(DnFamily, GeomsizeWithinTwoOfN) {
  for (long long n = 0; n <= 200; ++n) {
    BigInt g = make_dn(n).geomsize();
    EXPECT_GE(g, n);
    EXPECT_LE(g, n + 2);
  }
}

TEST(Sl2Action, ComposesAndPreservesDegree) {
  std::mt19937_64 rng(4);
  const IMat2 gens[4] = {{1, 1, 0, 1}, {1, -1, 0, 1}, {1, 0, 1, 1}, {1, 0, -1, 1}};
  for (int k = 0; k < 100; ++k) {
    Diagram D = netmap::testing::random_diagram(rng);
    IMat2 M = gens[rng() % 4] * gens[rng() % 4], N = gens[rng() % 4];
    Diagram a = sl2_apply(M * N, D), b = sl2_apply(M, sl2_apply(N, D));
    EXPECT_EQ(a, b);
    EXPECT_EQ(a.degree(), D.degree());
    EXPECT_EQ(a.arcs().size(), D.arcs().size());
  }
  EXPECT_THROW(sl2_apply(IMat2{2, 0, 0, 1}, make_dn(0)), Error);
}
