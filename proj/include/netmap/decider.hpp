#pragma once

// Candidate sets T_{-1} ⊆ T_0 ⊆ ... ⊆ T_N of continued-fraction expansions,
// fixed-slope search, verdicts and the bound formulas.

#include "netmap/contfrac.hpp"
#include "netmap/intervals.hpp"
#include "netmap/portrait.hpp"

#include <json.hpp>
#include <mpfr.h>

#include <deque>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

namespace netmap {

/// Raised when an input is outside what the procedure can decide.
class Refusal : public Error {
 public:
  using Error::Error;
};

struct CandidateNode {
  std::optional<CFExpansion> expansion;  // absent for 1/0
  ExtRat value;
  int level = -1;
  std::optional<Exclusion> exclusion;  // computed for nodes that get extended
};

struct CandidateTree {
  /// levels[k + 1] holds the elements new in T_k.
  std::vector<std::vector<CandidateNode>> levels;
  int depth = 0;
  bool truncated = false;
  std::size_t budget = 0;
  std::size_t size = 0;
  std::optional<ExtRat> obstruction_cusp;  // early stop
  Rational obstruction_multiplier = 0;

  std::vector<ExtRat> values() const {
    std::vector<ExtRat> out;
    for (const auto& level : levels) {
      for (const auto& node : level) out.push_back(node.value);
    }
    return out;
  }

  bool contains_value(const ExtRat& t) const {
    for (const auto& level : levels) {
      for (const auto& node : level) {
        if (node.value == t) return true;
      }
    }
    return false;
  }
};

struct CandidateOptions {
  std::size_t budget = 20000;  // total elements; the tree is truncated beyond
};

namespace detail {

/// Largest a >= 1 with [.., a] outside the excluded interval about u, where
/// u = p/q with previous convergent p'/q'. |u - t| = 1/(q (a q + q')).
inline BigInt max_partial_quotient(const Rational& rho, const BigInt& q, const BigInt& q_prev) {
  Rational bound = (Rational(1) / (rho * Rational(q)) - Rational(q_prev)) / Rational(q);
  return floor_of(bound);
}

inline bool excluded(const Exclusion& e, const ExtRat& t) { return e.region && e.region->contains(t); }

}  // namespace detail

/// Integers in T_0 for the excluded region about 1/0: [-R, R] ordered by
/// absolute value, then the largest integer below -R.
inline std::vector<BigInt> level0_integers(const ExcludedRegion& at_infinity) {
  BigInt R = floor_of(at_infinity.radius);
  std::vector<BigInt> out{0};
  for (BigInt k = 1; k <= R; ++k) {
    out.push_back(-k);
    out.push_back(k);
  }
  out.push_back(-R - 1);
  return out;
}

/// Builds T_{-1}, ..., T_N. Regions are computed parent by parent as the
/// parent is extended, so a truncated tree only pays for what it holds.
inline CandidateTree candidates(const Diagram& D, int N, const CandidateOptions& opt = {}) {
  if (N < 0) throw Error("candidates: depth must be nonnegative");
  CandidateTree tree;
  tree.depth = N;
  tree.budget = opt.budget;
  tree.levels.assign(static_cast<std::size_t>(N) + 2, {});

  CandidateNode root;
  root.value = ExtRat::infinity();
  root.level = -1;
  root.exclusion = excluded_interval(D, root.value);
  tree.levels[0].push_back(root);
  tree.size = 1;
  auto stop_if_obstruction = [&](const CandidateNode& node) {
    if (node.exclusion && node.exclusion->obstruction) {
      tree.obstruction_cusp = node.value;
      tree.obstruction_multiplier = node.exclusion->pullback.multiplier;
      return true;
    }
    return false;
  };
  if (stop_if_obstruction(root)) return tree;
  if (root.exclusion->refused()) throw Refusal(root.exclusion->refusal);

  // T_0 takes at most half the budget, so its smallest elements are always
  // extended (and checked for an early stop).
  for (const BigInt& a0 : level0_integers(*root.exclusion->region)) {
    if (tree.size >= std::max<std::size_t>(opt.budget / 2, 2)) {
      tree.truncated = true;
      break;
    }
    CandidateNode node;
    node.expansion = CFExpansion({a0});
    node.value = ExtRat::integer(a0);
    node.level = 0;
    tree.levels[1].push_back(std::move(node));
    ++tree.size;
  }

  for (int k = 1; k <= N; ++k) {
    for (auto& u : tree.levels[static_cast<std::size_t>(k)]) {
      if (tree.size >= opt.budget) {
        tree.truncated = true;
        break;
      }
      u.exclusion = excluded_interval(D, u.value);
      if (stop_if_obstruction(u)) return tree;
      if (u.exclusion->refused()) throw Refusal(u.exclusion->refusal);
      auto pairs = convergent_pairs(*u.expansion);
      const BigInt q = pairs.back().second;
      const BigInt q_prev = pairs.size() >= 2 ? pairs[pairs.size() - 2].second : BigInt(0);
      BigInt a_max = detail::max_partial_quotient(u.exclusion->region->radius, q, q_prev);
      for (BigInt a = 1; a <= a_max; ++a) {
        if (tree.size >= opt.budget) {
          tree.truncated = true;
          break;
        }
        CandidateNode node;
        node.expansion = u.expansion->extended(a);
        node.value = value(*node.expansion);
        node.level = k;
        if (detail::excluded(*u.exclusion, node.value)) continue;
        tree.levels[static_cast<std::size_t>(k) + 1].push_back(std::move(node));
        ++tree.size;
      }
    }
  }
  return tree;
}

/// Step-by-step membership of one expansion: whether each prefix
/// [a0..ak] survives the exclusion about [a0..a_{k-1}] (and a0 survives
/// the exclusion about 1/0). Stops early at a multiplier-1 fixed cusp.
struct PathReport {
  bool member = false;
  bool early_stop = false;
  std::optional<ExtRat> obstruction_cusp;
  std::vector<std::string> steps;
};

inline PathReport candidate_path(const Diagram& D, const CFExpansion& e) {
  PathReport rep;
  Exclusion at_inf = excluded_interval(D, ExtRat::infinity());
  if (at_inf.obstruction) {
    rep.early_stop = true;
    rep.obstruction_cusp = ExtRat::infinity();
    rep.steps.push_back("1/0: fixed with multiplier 1, construction stops");
    return rep;
  }
  if (at_inf.refused()) throw Refusal(at_inf.refusal);
  const BigInt& a0 = e.terms().front();
  auto ints = level0_integers(*at_inf.region);
  if (std::find(ints.begin(), ints.end(), a0) == ints.end()) {
    rep.steps.push_back("[" + a0.str() + "] excluded by " + at_inf.region->str());
    return rep;
  }
  rep.steps.push_back("[" + a0.str() + "] in T_0");
  for (std::size_t k = 1; k < e.terms().size(); ++k) {
    CFExpansion u(std::vector<BigInt>(e.terms().begin(), e.terms().begin() + static_cast<long>(k)));
    Exclusion ex = excluded_interval(D, value(u));
    if (ex.obstruction) {
      rep.early_stop = true;
      rep.obstruction_cusp = value(u);
      rep.steps.push_back(u.str() + " = " + value(u).str() + ": fixed with multiplier 1, construction stops");
      return rep;
    }
    if (ex.refused()) throw Refusal(ex.refusal);
    CFExpansion v(std::vector<BigInt>(e.terms().begin(), e.terms().begin() + static_cast<long>(k) + 1));
    if (ex.region->contains(value(v))) {
      rep.steps.push_back(v.str() + " excluded by " + ex.region->str());
      return rep;
    }
    rep.steps.push_back(v.str() + " in T_" + std::to_string(k));
  }
  rep.member = true;
  Exclusion last = excluded_interval(D, value(e));
  if (last.obstruction) {
    rep.early_stop = true;
    rep.obstruction_cusp = value(e);
    rep.steps.push_back(e.str() + " = " + value(e).str() + ": fixed with multiplier 1, construction stops");
  }
  return rep;
}

struct FixedSlope {
  ExtRat slope;
  Rational multiplier;
  BigInt c;
  BigInt d;
};

inline std::vector<FixedSlope> brute_force_fixed_slopes(const Diagram& D, const BigInt& max_height) {
  if (is_euclidean(D)) throw Refusal("Euclidean");
  std::vector<FixedSlope> out;
  for_each_farey(max_height, [&](const ExtRat& s) {
    PullbackResult r = pullback(D, s);
    if (!r.trivial() && std::get<ExtRat>(r.image) == s) out.push_back({s, r.multiplier, r.c, *r.d});
  });
  return out;
}

/// (p mod 2, q mod 2) of a reduced slope; the Gamma(2) orbit it lies in.
inline std::pair<int, int> parity_class(const ExtRat& x) {
  return {static_cast<int>(abs_big(x.p()) % 2), static_cast<int>(abs_big(x.q()) % 2)};
}

/// A slope of height <= deg(F) whose image lies in the Gamma(2) orbit of e.
inline ExtRat find_small_preimage(const Diagram& D, const ExtRat& e) {
  if (parity_class(e) != parity_class(ExtRat::integer(0)) && parity_class(e) != parity_class(ExtRat::infinity()) &&
      parity_class(e) != parity_class(ExtRat::integer(1))) {
    throw Error("find_small_preimage: bad target");
  }
  std::optional<ExtRat> found;
  for_each_farey(abs_big(D.degree()), [&](const ExtRat& s) {
    if (found) return;
    SlopeValue img = pullback(D, s).image;
    if (!is_odot(img) && parity_class(std::get<ExtRat>(img)) == parity_class(e)) found = s;
  });
  if (!found) throw Refusal("slope function possibly trivial");
  return *found;
}

struct Verdict {
  enum class Kind { Obstructed, NoObstructionFound, Refused };
  Kind kind = Kind::Refused;
  std::optional<ExtRat> slope;
  Rational multiplier = 0;
  BigInt c = 0, d = 0;
  std::string found_by;
  int depth = 0;
  BigInt height_budget = 0;
  std::vector<std::string> assumptions;
  std::string reason;

  std::string str() const {
    switch (kind) {
      case Kind::Obstructed:
        return "obstructed slope=" + slope->str() + " multiplier=" +
               (boost::multiprecision::denominator(multiplier) == 1 ? boost::multiprecision::numerator(multiplier).str()
                                                                    : to_string(multiplier));
      case Kind::NoObstructionFound:
        return "no obstruction found depth=" + std::to_string(depth) + " height_budget=" + height_budget.str();
      case Kind::Refused: return "refused: " + reason;
    }
    return "";
  }
};

inline std::string rational_text(const Rational& r) {
  return boost::multiprecision::denominator(r) == 1 ? boost::multiprecision::numerator(r).str() : to_string(r);
}

inline nlohmann::json to_json(const Verdict& v) {
  nlohmann::json j;
  switch (v.kind) {
    case Verdict::Kind::Obstructed: j["verdict"] = "obstructed"; break;
    case Verdict::Kind::NoObstructionFound: j["verdict"] = "no_obstruction_found"; break;
    case Verdict::Kind::Refused: j["verdict"] = "refused"; break;
  }
  j["slope"] = v.slope ? nlohmann::json(v.slope->str()) : nlohmann::json(nullptr);
  j["multiplier"] = v.kind == Verdict::Kind::Obstructed ? nlohmann::json(rational_text(v.multiplier)) : nlohmann::json(nullptr);
  j["depth"] = v.depth;
  j["height_budget"] = v.height_budget.str();
  j["assumptions"] = v.assumptions;
  if (v.kind == Verdict::Kind::Refused) j["reason"] = v.reason;
  if (v.kind == Verdict::Kind::Obstructed) {
    j["c"] = v.c.str();
    j["d"] = v.d.str();
    j["found_by"] = v.found_by;
  }
  return j;
}

struct DecideOptions {
  int depth = 6;
  BigInt height_budget = 1000;
  std::size_t tree_budget = 20000;
};

inline Verdict decide(const Diagram& D, const DecideOptions& opt = {}) {
  Verdict v;
  v.depth = opt.depth;
  v.height_budget = opt.height_budget;
  auto refuse = [&](std::string reason) {
    v.kind = Verdict::Kind::Refused;
    v.reason = std::move(reason);
    return v;
  };
  if (is_euclidean(D)) return refuse("Euclidean");
  if (D.is_virtual()) {
    bool any = false;
    for (Translation t : kConcreteTranslations) any = any || is_net(D.with_translation(t));
    if (!any) return refuse("no translation choice gives a NET map");
  } else if (!is_net(D)) {
    return refuse("not a NET map (fewer than four postcritical points)");
  }

  auto obstructed = [&](const ExtRat& s, const PullbackResult& r, const char* how) {
    v.kind = Verdict::Kind::Obstructed;
    v.slope = s;
    v.multiplier = r.multiplier;
    v.c = r.c;
    v.d = *r.d;
    v.found_by = how;
    return v;
  };
  auto check = [&](const ExtRat& s) -> std::optional<PullbackResult> {
    PullbackResult r = pullback(D, s);
    if (!r.trivial() && std::get<ExtRat>(r.image) == s && r.multiplier >= 1) return r;
    return std::nullopt;
  };

  CandidateTree tree;
  try {
    tree = candidates(D, opt.depth, {opt.tree_budget});
  } catch (const Refusal& e) {
    return refuse(e.what());
  }
  if (tree.obstruction_cusp) {
    ExtRat s = slope_of_cusp(*tree.obstruction_cusp);
    if (auto r = check(s)) return obstructed(s, *r, "candidate tree");
    throw InternalError("early stop at a cusp that is not a multiplier-1 fixed cusp");
  }
  // Tree values and the height search are merged in order of height, so
  // cheap slopes come first; every tree value is checked either way.
  std::vector<const CandidateNode*> order;
  std::unordered_set<ExtRat> in_tree;
  for (const auto& level : tree.levels) {
    for (const auto& node : level) {
      order.push_back(&node);
      in_tree.insert(node.value);
    }
  }
  std::vector<BigInt> heights(order.size());
  std::vector<std::size_t> perm(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    heights[k] = height(order[k]->value);
    perm[k] = k;
  }
  std::stable_sort(perm.begin(), perm.end(), [&](std::size_t x, std::size_t y) { return heights[x] < heights[y]; });
  {
    std::vector<const CandidateNode*> sorted;
    std::vector<BigInt> sorted_heights;
    for (std::size_t k : perm) {
      sorted.push_back(order[k]);
      sorted_heights.push_back(heights[k]);
    }
    order.swap(sorted);
    heights.swap(sorted_heights);
  }
  std::optional<Verdict> found;
  std::size_t next = 0;
  auto check_tree_up_to = [&](const std::optional<BigInt>& h) {
    for (; !found && next < order.size() && (!h || heights[next] <= *h); ++next) {
      const CandidateNode& node = *order[next];
      ExtRat s = slope_of_cusp(node.value);
      PullbackResult r = node.exclusion ? node.exclusion->pullback : pullback(D, s);
      if (!r.trivial() && std::get<ExtRat>(r.image) == s && r.multiplier >= 1) {
        found = obstructed(s, r, "candidate tree");
      }
    }
  };
  for_each_farey(opt.height_budget, [&](const ExtRat& s) {
    if (found) return;
    check_tree_up_to(height(s));
    if (found || in_tree.count(cusp_of_slope(s))) return;
    if (auto r = check(s)) found = obstructed(s, *r, "height search");
  });
  check_tree_up_to(std::nullopt);
  if (found) return *found;

  v.kind = Verdict::Kind::NoObstructionFound;
  v.assumptions.push_back("every fixed cusp has a continued fraction expansion of length <= " +
                          std::to_string(opt.depth) + " (the contraction constant of the Hurwitz class is not effective)");
  if (tree.truncated) {
    v.assumptions.push_back("candidate tree truncated at " + std::to_string(tree.budget) +
                            " elements; remaining candidates not examined");
  }
  v.assumptions.push_back("all slopes of height <= " + opt.height_budget.str() + " checked");
  return v;
}

// Bound formulas.

/// H_k = (A1 C^8)^e1 * (A0 C^8)^e2 with e1 = (19^k - 1)/18, e2 = 19^k.
struct HeightBound {
  int k = 0;
  BigInt e1, e2;
  std::optional<BigInt> value;  // only when small enough to write out
};

inline std::vector<HeightBound> bound_formulas(const BigInt& C, int N, const BigInt& A0 = 128,
                                               const BigInt& A1 = 128, std::size_t max_digits = 200000) {
  if (C < 2) throw Error("bound_formulas: C must be at least 2");
  if (N < 0) throw Error("bound_formulas: N must be nonnegative");
  const BigInt C8 = boost::multiprecision::pow(C, 8);
  const BigInt base0 = A0 * C8, base1 = A1 * C8;
  const double digits0 = static_cast<double>(base0.str().size()), digits1 = static_cast<double>(base1.str().size());
  std::vector<HeightBound> out;
  BigInt e1 = 0, e2 = 1;
  std::optional<BigInt> prev;
  for (int k = 0; k <= N; ++k) {
    HeightBound hb{k, e1, e2, std::nullopt};
    double est = static_cast<double>(e1) * digits1 + static_cast<double>(e2) * digits0;
    if (est <= static_cast<double>(max_digits)) {
      // H_0 = A0 C^8, H_k = A1 C^8 H_{k-1}^19.
      hb.value = k == 0 ? base0 : BigInt(base1 * boost::multiprecision::pow(*prev, 19));
    }
    prev = hb.value;
    out.push_back(hb);
    e1 = 19 * e1 + 1;
    e2 = 19 * e2;
  }
  return out;
}

namespace detail {

struct Mpfr {
  mpfr_t v;
  Mpfr() { mpfr_init2(v, 256); }
  ~Mpfr() { mpfr_clear(v); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
};

}  // namespace detail

/// Rigorous lower bound on a = 4 atanh(sqrt(2) - 1), as an exact rational.
inline Rational a_lower_bound() {
  detail::Mpfr x;
  mpfr_sqrt_ui(x.v, 2, MPFR_RNDD);
  mpfr_sub_ui(x.v, x.v, 1, MPFR_RNDD);
  mpfr_atanh(x.v, x.v, MPFR_RNDD);
  mpfr_mul_ui(x.v, x.v, 4, MPFR_RNDD);
  mpq_t q;
  mpq_init(q);
  mpfr_get_q(q, x.v);
  Rational r(q);
  mpq_clear(q);
  return r;
}

/// floor of a rigorous upper bound on
/// 1 + (30 log(5C) + log 16 + 2 log C) / ((1 - c) a).
inline BigInt n_bound(const BigInt& C, const Rational& c) {
  if (C < 2) throw Error("n_bound: C must be at least 2");
  if (c <= 0 || c >= 1) throw Error("n_bound: contraction must lie in (0,1)");
  detail::Mpfr num, t, den, cc;
  mpfr_set_z(t.v, BigInt(5 * C).backend().data(), MPFR_RNDU);
  mpfr_log(num.v, t.v, MPFR_RNDU);
  mpfr_mul_ui(num.v, num.v, 30, MPFR_RNDU);
  mpfr_set_ui(t.v, 16, MPFR_RNDU);
  mpfr_log(t.v, t.v, MPFR_RNDU);
  mpfr_add(num.v, num.v, t.v, MPFR_RNDU);
  mpfr_set_z(t.v, C.backend().data(), MPFR_RNDU);
  mpfr_log(t.v, t.v, MPFR_RNDU);
  mpfr_mul_ui(t.v, t.v, 2, MPFR_RNDU);
  mpfr_add(num.v, num.v, t.v, MPFR_RNDU);
  // Denominator rounded down: (1 - c) * a.
  Rational one_minus_c = Rational(1) - c;
  mpfr_set_q(den.v, one_minus_c.backend().data(), MPFR_RNDD);
  Rational a = a_lower_bound();
  mpfr_set_q(cc.v, a.backend().data(), MPFR_RNDD);
  mpfr_mul(den.v, den.v, cc.v, MPFR_RNDD);
  mpfr_div(num.v, num.v, den.v, MPFR_RNDU);
  mpfr_add_ui(num.v, num.v, 1, MPFR_RNDU);
  mpfr_floor(num.v, num.v);
  mpz_t z;
  mpz_init(z);
  mpfr_get_z(z, num.v, MPFR_RNDN);
  BigInt out(z);
  mpz_clear(z);
  return out;
}

}  // namespace netmap
