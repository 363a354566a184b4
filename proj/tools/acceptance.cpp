// Acceptance run: one PASS/FAIL line per criterion. Exit status is the
// number of failures.

#include "netmap/netmap.hpp"

#include "../tests/portrait_lists.hpp"
#include "../tests/random_diagrams.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

using namespace netmap;

namespace {

struct Outcome {
  bool ok = true;
  std::string note;
  void fail(const std::string& why) {
    if (ok) note = why;
    ok = false;
  }
};

int failures = 0;

void criterion(int number, const char* title, double limit_seconds, const std::function<Outcome()>& body) {
  auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.fail(std::string("exception: ") + e.what());
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit_seconds > 0 && secs >= limit_seconds) {
    std::ostringstream why;
    why << "took " << secs << " s, limit " << limit_seconds << " s";
    o.fail(why.str());
  }
  if (!o.ok) ++failures;
  std::cout << (o.ok ? "PASS" : "FAIL") << " " << number << " " << title << " (" << secs << " s)";
  if (!o.note.empty()) std::cout << ": " << o.note;
  std::cout << std::endl;
}

// The shared random corpus of criteria 5 and 6: 500 (diagram, slope)
// pairs with geomsize <= 6 and slope height <= 30.
std::vector<std::pair<Diagram, ExtRat>> corpus() {
  std::mt19937_64 rng(20240607);
  std::vector<std::pair<Diagram, ExtRat>> out;
  while (out.size() < 500) {
    Diagram D = testing::random_diagram(rng, 6, 2);
    long long q = testing::uniform(rng, 0, 30), p = testing::uniform(rng, -30, 30);
    if (p == 0 && q == 0) continue;
    out.emplace_back(D, ExtRat::reduce(p, q));
  }
  return out;
}

}  // namespace

int main() {
  criterion(1, "mu_0 golden values", 1.0, [] {
    Outcome o;
    const Diagram D0 = make_dn(0);
    const std::pair<const char*, const char*> golden[] = {{"1/0", "0/1"}, {"1/1", "-1/1"}, {"-1/1", "1/1"}, {"1/2", "1/0"}};
    for (const auto& [s, img] : golden) {
      SlopeValue got = mu(D0, ExtRat::parse(s));
      if (got != SlopeValue(ExtRat::parse(img))) o.fail(std::string("mu_0(") + s + ") = " + to_string(got));
    }
    return o;
  });

  criterion(2, "D_2 obstruction 1/0 with c = d = 1", 1.0, [] {
    Outcome o;
    for (Translation t : kConcreteTranslations) {
      Diagram D = make_dn(2).with_translation(t);
      if (!is_net(D)) continue;
      Verdict v = decide(D);
      if (v.kind != Verdict::Kind::Obstructed || *v.slope != ExtRat::infinity() || v.multiplier != 1 || v.c != 1 ||
          v.d != 1) {
        o.fail(std::string("translation ") + to_string(t) + ": " + v.str());
      }
    }
    return o;
  });

  criterion(3, "table of obstruction slopes", 1.0, [] {
    Outcome o;
    const std::pair<long long, const char*> table[] = {{2, "1/0"},        {5, "-2/1"},       {8, "-13/10"},
                                                       {11, "-16/13"},    {14, "-171/148"},  {17, "-194/171"},
                                                       {20, "-303/274"},  {23, "-332/303"},  {26, "-4295/3976"},
                                                       {29, "-4614/4295"}};
    for (const auto& [n, s] : table) {
      if (obstruction_slope(n) != ExtRat::parse(s)) o.fail("n=" + std::to_string(n) + ": " + obstruction_slope(n).str());
    }
    return o;
  });

  criterion(4, "brute-force fixed slopes agree with the recursion", 60.0, [] {
    Outcome o;
    for (long long n : {2, 5, 8}) {
      ExtRat s = obstruction_slope(n);
      auto fixed = brute_force_fixed_slopes(make_dn(n), height(s) + 2);
      std::vector<ExtRat> heavy;
      for (const auto& f : fixed) {
        if (f.multiplier >= 1) heavy.push_back(f.slope);
      }
      if (heavy.size() != 1 || heavy[0] != s) {
        std::string got;
        for (const auto& h : heavy) got += " " + h.str();
        o.fail("n=" + std::to_string(n) + ": multiplier >= 1 at" + got);
      }
    }
    return o;
  });

  const auto pairs = corpus();

  criterion(5, "degree conservation", 60.0, [&] {
    Outcome o;
    for (const auto& [D, s] : pairs) {
      PullbackResult r = pullback(D, s);
      BigInt total = 0;
      std::optional<std::pair<BigInt, BigInt>> cls;
      for (const auto& c : r.components) {
        total += c.degree;
        if (!c.essential) continue;
        if (c.degree != *r.d) o.fail("essential degrees differ for " + s.str());
        BigInt g = gcd_big(c.alpha, c.beta);
        std::pair<BigInt, BigInt> prim{c.alpha / g, c.beta / g};
        if (cls && *cls != prim) o.fail("essential displacement classes differ for " + s.str());
        cls = prim;
      }
      if (total != D.degree()) o.fail("degrees sum to " + total.str() + " for " + s.str());
    }
    return o;
  });

  criterion(6, "height distortion ht(mu(s)) <= 125 C ht(s)", 0, [&] {
    Outcome o;
    for (const auto& [D, s] : pairs) {
      SlopeValue img = mu(D, s);
      if (is_odot(img)) continue;
      if (height(std::get<ExtRat>(img)) > 125 * D.geomsize() * height(s)) o.fail(s.str() + " -> " + to_string(img));
    }
    return o;
  });

  criterion(7, "independence of translation and generic offset", 0, [] {
    Outcome o;
    std::mt19937_64 rng(77);
    for (int k = 0; k < 100; ++k) {
      Diagram D = testing::random_diagram(rng, 6, 2);
      long long q = testing::uniform(rng, 0, 30), p = testing::uniform(rng, -30, 30);
      if (p == 0 && q == 0) q = 1;
      ExtRat s = ExtRat::reduce(p, q);
      PullbackResult base = pullback(D, s);
      for (Translation t : kConcreteTranslations) {
        if (!same_result(base, pullback(D.with_translation(t), s))) o.fail("translation changes " + s.str());
      }
      for (unsigned off : {1u, 2u, 3u, 4u, 5u}) {
        if (!same_result(base, pullback(D, s, {off * 7, 64}))) o.fail("offset changes " + s.str());
      }
    }
    return o;
  });

  criterion(8, "portraits of D_2 and D_3", 0, [] {
    Outcome o;
    for (long long n : {2, 3}) {
      std::vector<Portrait> got;
      int net = 0;
      for (Translation t : kConcreteTranslations) {
        Diagram D = make_dn(n).with_translation(t);
        got.push_back(portrait(D));
        net += is_net(got.back()) ? 1 : 0;
        if (BigInt(got.back().critical_count()) != 2 * (D.degree() - 1)) o.fail("critical count");
      }
      if (net != 3) o.fail("n=" + std::to_string(n) + ": " + std::to_string(net) + " NET portraits");
      for (std::size_t a = 0; a < got.size(); ++a) {
        for (std::size_t b = a + 1; b < got.size(); ++b) {
          if (is_net(got[a]) && is_net(got[b]) && portrait_iso(got[a], got[b])) o.fail("isomorphic NET portraits");
        }
      }
      if (!testing::matches_as_multiset(got, testing::expected_portraits(n % 2 == 0))) {
        o.fail("n=" + std::to_string(n) + ": portraits differ from the expected list");
      }
    }
    std::mt19937_64 rng(88);
    for (int k = 0; k < 100; ++k) {
      Diagram D = testing::random_diagram(rng, 6, 2);
      for (Translation t : kConcreteTranslations) {
        if (BigInt(portrait(D.with_translation(t)).critical_count()) != 2 * (D.degree() - 1)) {
          o.fail("critical count on a random diagram");
        }
      }
    }
    return o;
  });

  criterion(9, "excluded regions contain no fixed cusp", 300.0, [] {
    Outcome o;
    std::mt19937_64 rng(99);
    std::vector<Diagram> ds{make_dn(0)};
    while (ds.size() < 10) ds.push_back(testing::random_diagram(rng, 6, 2));
    std::size_t regions = 0, refusals = 0;
    for (const Diagram& D : ds) {
      std::vector<ExtRat> fixed_cusps;
      for_each_farey(60, [&](const ExtRat& s) {
        if (is_fixed_slope(D, s)) fixed_cusps.push_back(cusp_of_slope(s));
      });
      for_each_farey(8, [&](const ExtRat& t) {
        Exclusion e = excluded_interval(D, t);
        if (e.refused()) {
          ++refusals;
          return;
        }
        ++regions;
        for (const ExtRat& f : fixed_cusps) {
          if (e.region->contains(f)) o.fail("cusp " + f.str() + " inside the region about " + t.str());
        }
      });
    }
    if (o.ok) o.note = std::to_string(regions) + " regions, " + std::to_string(refusals) + " refusals";
    return o;
  });

  criterion(10, "obstruction cusps survive the candidate construction", 0, [] {
    Outcome o;
    std::string notes;
    for (long long n : {5, 8}) {
      ExtRat t = cusp_of_slope(obstruction_slope(n));
      CFExpansion e = expansions_of(t).first;
      PathReport rep = candidate_path(make_dn(n), e);
      bool ok = (rep.member || rep.early_stop) && (!rep.early_stop || *rep.obstruction_cusp == t);
      if (!ok) o.fail("n=" + std::to_string(n) + ": " + e.str() + " " + rep.steps.back());
      CandidateTree tree = candidates(make_dn(n), static_cast<int>(e.length()));
      bool in_tree = tree.contains_value(t) || (tree.obstruction_cusp && *tree.obstruction_cusp == t);
      notes += "D_" + std::to_string(n) + " " + e.str() + (rep.early_stop ? " early stop" : " member") +
               (in_tree ? ", in budgeted tree; " : ", beyond the tree budget; ");
    }
    if (o.ok) o.note = notes;
    return o;
  });

  criterion(11, "functional identities of mu_0", 0, [] {
    Outcome o;
    IdentityReport r = functional_identities_check(50);
    if (!r.violations.empty()) o.fail(r.violations.front());
    o.note = std::to_string(r.checked) + " checked, " + std::to_string(r.skipped_odot) + " odot skipped";
    return o;
  });

  criterion(12, "f(n) <= ht(s_n) <= g(n) and -2 <= s_n < -1", 0, [] {
    Outcome o;
    for (long long n = 5; n <= 200; n += 3) {
      SandwichRow r = sandwich(n);
      if (!r.ok) o.fail("n=" + std::to_string(n));
    }
    return o;
  });

  return failures;
}
