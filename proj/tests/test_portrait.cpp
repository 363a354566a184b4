#include "netmap/portrait.hpp"
#include "netmap/dnfamily.hpp"

#include "portrait_lists.hpp"
#include "random_diagrams.hpp"

#include <gtest/gtest.h>

using namespace netmap;

namespace {

std::vector<Portrait> four_portraits(long long n) {
  std::vector<Portrait> out;
  for (Translation t : kConcreteTranslations) out.push_back(portrait(make_dn(n).with_translation(t)));
  return out;
}

}  // namespace

TEST(Portrait, D2CircleZeroIsNotNet) {
  Portrait P = portrait(make_dn(2).with_translation(Translation::Zero));
  EXPECT_FALSE(is_net(P));
  EXPECT_EQ(P.postcritical_count(), 3u);
  EXPECT_TRUE(portrait_iso(P, netmap::testing::expected_portraits(true)[0].portrait));
}

TEST(Portrait, D2CircleLambda1) {
  Portrait P = portrait(make_dn(2).with_translation(Translation::Lambda1));
  EXPECT_TRUE(is_net(P));
  EXPECT_TRUE(portrait_iso(P, netmap::testing::expected_portraits(true)[1].portrait));
}

TEST(Portrait, FourChoicesMatchTheListsForEachParity) {
  for (long long n : {2, 3, 4, 5, 8, 11}) {
    auto got = four_portraits(n);
    EXPECT_TRUE(netmap::testing::matches_as_multiset(got, netmap::testing::expected_portraits(n % 2 == 0))) << n;
    int net = 0;
    for (const auto& P : got) net += is_net(P) ? 1 : 0;
    EXPECT_EQ(net, 3) << n;
    for (std::size_t a = 0; a < got.size(); ++a) {
      for (std::size_t b = a + 1; b < got.size(); ++b) {
        if (is_net(got[a]) && is_net(got[b])) {
          EXPECT_FALSE(portrait_iso(got[a], got[b])) << n;
        }
      }
    }
  }
}

TEST(Portrait, EvenAndOddListsAgreeAsMultisets) {
  std::vector<Portrait> odd;
  for (const auto& e : netmap::testing::expected_portraits(false)) odd.push_back(e.portrait);
  EXPECT_TRUE(netmap::testing::matches_as_multiset(odd, netmap::testing::expected_portraits(true)));
}

TEST(Portrait, CriticalCountIsTwiceDegreeMinusOne) {
  std::mt19937_64 rng(31);
  for (int k = 0; k < 100; ++k) {
    Diagram D = netmap::testing::random_diagram(rng);
    for (Translation t : kConcreteTranslations) {
      Portrait P = portrait(D.with_translation(t));
      EXPECT_EQ(BigInt(P.critical_count()), 2 * (D.degree() - 1)) << D.str();
      ASSERT_EQ(P.edges.size(), P.nodes.size());
      for (std::size_t i = 0; i < P.edges.size(); ++i) {
        EXPECT_EQ(P.edges[i].from, i);
        EXPECT_EQ(P.edges[i].degree == 2, P.nodes[i].critical);
      }
    }
  }
}

TEST(Portrait, RepresentativeIndependence) {
  // Moving an arc by a Gamma1 element (here a 2*Lambda1 translation) does
  // not change the class map.
  const Diagram D = make_dn(3);
  const Vec2 shift = BigInt(2) * D.lambda1();
  const Arc& a = D.arcs()[0];
  Diagram moved = Diagram::make(D.lambda1(), D.lambda2(), Translation::None, {{a.from + shift, a.to + shift}});
  for (Translation t : kConcreteTranslations) {
    EXPECT_TRUE(portrait_iso(portrait(D.with_translation(t)), portrait(moved.with_translation(t))));
  }
}

TEST(Portrait, VirtualDiagramRejected) {
  EXPECT_THROW(portrait(make_dn(2)), Error);
  EXPECT_FALSE(is_noneuclidean(make_dn(0).without_arcs().with_translation(Translation::Lambda1)));
}

TEST(Portrait, IsomorphismDistinguishesDegrees) {
  Portrait a = portrait_from_edges({{"x", "y", 1}, {"y", "x", 2}}, {"x", "y"});
  Portrait b = portrait_from_edges({{"x", "y", 1}, {"y", "x", 1}}, {"x", "y"});
  EXPECT_TRUE(portrait_iso(a, a));
  EXPECT_FALSE(portrait_iso(a, b));
}
