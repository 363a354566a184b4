#pragma once

// Excluded regions around cusps: open sets of reals that cannot contain a
// cusp fixed by sigma_F.

#include "netmap/contfrac.hpp"
#include "netmap/photon.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace netmap {

/// Open interval (lo, hi); a missing endpoint is infinite.
struct Interval {
  std::optional<Rational> lo;
  std::optional<Rational> hi;

  bool contains(const Rational& x) const { return (!lo || *lo < x) && (!hi || x < *hi); }

  /// this is a subset of other.
  bool within(const Interval& other) const {
    bool lo_ok = !other.lo || (lo && *other.lo <= *lo);
    bool hi_ok = !other.hi || (hi && *hi <= *other.hi);
    return lo_ok && hi_ok;
  }

  std::string str() const {
    return "(" + (lo ? to_string(*lo) : std::string("-inf")) + ", " + (hi ? to_string(*hi) : std::string("+inf")) +
           ")";
  }
  friend bool operator==(const Interval& a, const Interval& b) { return a.lo == b.lo && a.hi == b.hi; }
};

struct ExcludedRegion {
  enum class Kind { DeletedAtInfinity, DeletedInterval, FullInterval, General };

  Kind kind = Kind::General;
  std::optional<ExtRat> center;  // the cusp t
  Rational radius = 0;           // R for DeletedAtInfinity, rho otherwise
  std::vector<Interval> intervals;
  std::string provenance;

  // Exceptional-case details.
  std::optional<BigInt> size_constant;
  std::optional<BigInt> N;
  std::optional<ExtRat> witness;  // the small slope P/Q behind the radius at 1/0

  bool empty() const { return intervals.empty(); }

  bool contains(const ExtRat& x) const {
    if (x.is_infinite()) return false;
    Rational v = x.value();
    for (const auto& i : intervals) {
      if (i.contains(v)) return true;
    }
    return false;
  }

  bool within(const ExcludedRegion& other) const {
    for (const auto& i : intervals) {
      bool ok = false;
      for (const auto& j : other.intervals) ok = ok || i.within(j);
      if (!ok) return false;
    }
    return true;
  }

  std::string str() const {
    if (intervals.empty()) return "{}";
    std::string s;
    for (std::size_t k = 0; k < intervals.size(); ++k) {
      if (k) s += " U ";
      s += intervals[k].str();
    }
    return s;
  }
};

inline const char* to_string(ExcludedRegion::Kind k) {
  switch (k) {
    case ExcludedRegion::Kind::DeletedAtInfinity: return "deleted_at_infinity";
    case ExcludedRegion::Kind::DeletedInterval: return "deleted_interval";
    case ExcludedRegion::Kind::FullInterval: return "interval";
    case ExcludedRegion::Kind::General: return "general";
  }
  return "general";
}

/// Either a region or a refusal. obstruction is set when the refusal is
/// because t is fixed with multiplier 1.
struct Exclusion {
  ExtRat cusp;
  std::optional<ExcludedRegion> region;
  std::string refusal;
  bool obstruction = false;
  PullbackResult pullback;

  bool refused() const { return !region.has_value(); }
};

/// Size constant used in every bound: geomsize, raised if needed so that
/// deg <= C^2 (the sup-norm geomsize does not guarantee it) and C >= 2.
inline BigInt size_constant(const Diagram& D) {
  BigInt C = D.geomsize();
  BigInt r = boost::multiprecision::sqrt(abs_big(D.degree()));
  if (r * r < abs_big(D.degree())) r += 1;
  if (C < r) C = r;
  if (C < 2) C = 2;
  return C;
}

/// The exact open solution set of deg*|p x + q| < |p' x + q'|.
inline ExcludedRegion fixedpt_region(const ExtRat& s, const ExtRat& s_img, const BigInt& deg) {
  if (deg < 1) throw Error("fixedpt_region: degree must be positive");
  const BigInt &p = s.p(), &q = s.q(), &pp = s_img.p(), &qp = s_img.q();
  auto negative = [&](const Rational& x) {
    Rational l = Rational(deg) * abs_rat(Rational(p) * x + Rational(q));
    Rational r = abs_rat(Rational(pp) * x + Rational(qp));
    return l < r;
  };
  // Boundary points: deg (p x + q) = +-(p' x + q').
  std::vector<Rational> roots;
  for (int sign : {1, -1}) {
    BigInt den = deg * p - sign * pp;
    BigInt num = sign * qp - deg * q;
    if (den != 0) roots.emplace_back(num, den);
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());

  ExcludedRegion region;
  region.kind = ExcludedRegion::Kind::General;
  region.provenance = "fixed point inequality";
  if (roots.empty()) {
    if (negative(Rational(0))) region.intervals.push_back({});
    return region;
  }
  std::vector<Interval> pieces;
  pieces.push_back({std::nullopt, roots.front()});
  for (std::size_t k = 1; k < roots.size(); ++k) pieces.push_back({roots[k - 1], roots[k]});
  pieces.push_back({roots.back(), std::nullopt});
  for (const auto& piece : pieces) {
    Rational sample;
    if (!piece.lo) {
      sample = *piece.hi - 1;
    } else if (!piece.hi) {
      sample = *piece.lo + 1;
    } else {
      sample = (*piece.lo + *piece.hi) / 2;
    }
    if (negative(sample)) region.intervals.push_back(piece);
  }
  return region;
}

namespace detail {

/// A slope function with its data at slope 0/1, as needed by the
/// exceptional-cusp construction at 1/0.
struct SlopeFunctionAtInfinity {
  std::function<SlopeValue(const ExtRat&)> mu;
  BigInt c;  // essential preimages of slope 0/1
  BigInt d;  // their common degree
  BigInt deg;
  BigInt C;
};

struct InfinityBound {
  BigInt N;
  Rational R;
  ExtRat witness;
};

/// Exceptional cusp 1/0: a radius R such that no fixed
/// cusp lies in (-inf, -R) U (R, inf). Returns nothing if no suitable
/// small slope exists.
inline std::optional<InfinityBound> exceptional_radius(const SlopeFunctionAtInfinity& f) {
  std::optional<ExtRat> witness;
  SlopeValue image;
  for_each_farey(f.deg, [&](const ExtRat& x) {
    if (witness || x.p() == 0) return;
    SlopeValue img = f.mu(x);
    if (is_odot(img) || std::get<ExtRat>(img) == ExtRat::integer(0)) return;
    witness = x;
    image = img;
  });
  if (!witness) return std::nullopt;
  const ExtRat& PQ = *witness;
  const ExtRat& img = std::get<ExtRat>(image);
  const BigInt &P = PQ.p(), &Q = PQ.q(), &Pp = img.p(), &Qp = img.q();
  const BigInt& C = f.C;
  BigInt n_closed = (C * C * C * C + 125 * C + 2) * C * C;
  // Exact form of the same display: the excluded radius about -Q/P - 2nd
  // exceeds d once 2|n| > d(|P| deg + 1) + |Q'/P'| + |Q/P|.
  Rational rhs = Rational(f.d * (abs_big(P) * f.deg + 1)) + abs_rat(Rational(Qp, Pp)) + abs_rat(Rational(Q, P));
  BigInt n_exact = floor_of(rhs / 2) + 1;
  BigInt N = n_closed > n_exact ? n_closed : n_exact;
  Rational R = abs_rat(Rational(Q, P)) + Rational(2 * N * f.d);
  return InfinityBound{N, R, PQ};
}

inline BigInt component_degree(const PullbackResult& r) {
  if (r.d) return *r.d;
  if (r.components.empty()) throw InternalError("pullback without components");
  return r.components.front().degree;
}

}  // namespace detail

/// The excluded region about the cusp t, or a refusal.
inline Exclusion excluded_interval(const Diagram& D, const ExtRat& t) {
  Exclusion out;
  out.cusp = t;
  const ExtRat s = slope_of_cusp(t);
  out.pullback = pullback(D, s);
  const PullbackResult& pb = out.pullback;
  const BigInt C = size_constant(D);
  const BigInt deg = abs_big(D.degree());
  const BigInt h = height(t);

  std::optional<ExtRat> t_img;
  if (!pb.trivial()) t_img = cusp_of_slope(std::get<ExtRat>(pb.image));
  const bool fixed = t_img && *t_img == t;
  if (fixed && pb.multiplier == 1) {
    out.refusal = "cusp " + t.str() + " is fixed with multiplier 1 (slope " + s.str() + " is an obstruction)";
    out.obstruction = true;
    return out;
  }
  const bool exceptional = !t_img || fixed;

  ExcludedRegion region;
  region.center = t;
  region.size_constant = C;
  if (!exceptional) {
    if (t.is_infinite()) {
      Rational R(100 * C * C);
      region.kind = ExcludedRegion::Kind::DeletedAtInfinity;
      region.radius = R;
      region.intervals = {{std::nullopt, Rational(-R)}, {R, std::nullopt}};
      region.provenance = "nonexceptional, cusp 1/0";
    } else {
      Rational rho(BigInt(1), 100 * C * C * h * h);
      region.kind = ExcludedRegion::Kind::FullInterval;
      region.radius = rho;
      region.intervals = {{t.value() - rho, t.value() + rho}};
      region.provenance = "nonexceptional, finite cusp";
    }
    // The interval must sit inside the exact solution set it is derived from.
    ExcludedRegion exact = fixedpt_region(s, std::get<ExtRat>(pb.image), deg);
    if (!region.within(exact)) {
      throw InternalError("excluded interval " + region.str() + " about " + t.str() +
                          " is not inside the fixed point region " + exact.str());
    }
    out.region = region;
    return out;
  }

  if (t.is_infinite()) {
    detail::SlopeFunctionAtInfinity f{[&D](const ExtRat& x) { return pullback(D, x).image; }, pb.c,
                                      detail::component_degree(pb), deg, C};
    auto bound = detail::exceptional_radius(f);
    if (!bound) {
      out.refusal = "no slope of height <= deg(F) has an image outside {0/1, odot}: slope function possibly trivial";
      return out;
    }
    region.kind = ExcludedRegion::Kind::DeletedAtInfinity;
    region.radius = bound->R;
    region.intervals = {{std::nullopt, Rational(-bound->R)}, {bound->R, std::nullopt}};
    region.N = bound->N;
    region.witness = bound->witness;
    region.provenance = "exceptional, cusp 1/0";
    out.region = region;
    return out;
  }

  // Finite exceptional cusp t = -q/p: conjugate t to 1/0 by
  // sigma_phi(z) = (a z + b) / (p z + q) with q a - b p = 1.
  const BigInt q = -t.p(), p = t.q();
  BigInt a, b;
  if (p == 1) {
    // q/p is an integer.
    a = 0;
    b = -1;
  } else {
    // Previous convergent b/a of q/p, sign fixed so that q a - b p = 1.
    auto pairs = convergent_pairs(expansions_of(ExtRat::reduce(q, p)).first);
    b = pairs[pairs.size() - 2].first;
    a = pairs[pairs.size() - 2].second;
    if (q * a - b * p == -1) {
      a = -a;
      b = -b;
    }
  }
  if (q * a - b * p != 1) throw InternalError("conjugating matrix does not have determinant 1");
  const IMat2 sigma_phi{a, b, p, q};
  const IMat2 sigma_phi_inv = sigma_phi.unimodular_inverse();
  auto mu_G = [&D, sigma_phi, sigma_phi_inv](const ExtRat& x) -> SlopeValue {
    ExtRat z = mobius(sigma_phi_inv, cusp_of_slope(x));
    SlopeValue img = pullback(D, slope_of_cusp(z)).image;
    if (is_odot(img)) return Odot{};
    return slope_of_cusp(mobius(sigma_phi, cusp_of_slope(std::get<ExtRat>(img))));
  };
  const BigInt C_conj = C * h * h;
  detail::SlopeFunctionAtInfinity f{mu_G, pb.c, detail::component_degree(pb), deg, C_conj};
  auto bound = detail::exceptional_radius(f);
  if (!bound) {
    out.refusal = "no slope of height <= deg(F) has an image outside {0/1, odot} after conjugation: slope "
                  "function possibly trivial";
    return out;
  }
  Rational rho = Rational(1) / ((Rational(h) * bound->R + Rational(h)) * Rational(h));
  region.kind = ExcludedRegion::Kind::DeletedInterval;
  region.radius = rho;
  region.intervals = {{t.value() - rho, t.value()}, {t.value(), t.value() + rho}};
  region.N = bound->N;
  region.size_constant = C_conj;
  region.witness = bound->witness;
  region.provenance = "exceptional, finite cusp";
  out.region = region;
  return out;
}

}  // namespace netmap
