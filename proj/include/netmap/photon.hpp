#pragma once

// Slope pullback by the photon / spin-mirror algorithm.
//
// A spin mirror is a connected component of the union of the Gamma1
// translates of an arc: the segment c' + s*e, s in [-1,1], where e is the
// arc vector and c' ranges over from + 2*Lambda1. A photon hitting a
// mirror is rotated by 180 degrees about the mirror's center.
//
// Every rotation about a mirror center lies in Gamma1, so we unfold: the
// photon follows a straight line v + t*u and the actual position is
// g(v + t*u), where g is the composite of the rotations about the centers
// crossed so far (in the order met). Over one period t in (0, 2d) an even
// number of crossings leaves g a translation by 2*sum (-1)^(i+1) c_i; an odd
// number makes g a rotation, and the component is peripheral.

#include "netmap/diagram.hpp"

#include <algorithm>
#include <optional>
#include <type_traits>
#include <vector>

namespace netmap {

struct Component {
  BigInt degree;
  BigInt alpha;  // v - w' = alpha*lambda1 + beta*lambda2
  BigInt beta;
  std::size_t crossings = 0;
  bool essential = false;

  friend bool operator==(const Component& a, const Component& b) {
    return a.degree == b.degree && a.alpha == b.alpha && a.beta == b.beta &&
           a.crossings == b.crossings && a.essential == b.essential;
  }
  friend bool operator<(const Component& a, const Component& b) {
    return std::tie(a.degree, a.alpha, a.beta, a.crossings, a.essential) <
           std::tie(b.degree, b.alpha, b.beta, b.crossings, b.essential);
  }
};

struct PullbackResult {
  ExtRat slope;
  SlopeValue image = Odot{};
  std::vector<Component> components;
  BigInt c = 0;
  std::optional<BigInt> d;  // absent when c = 0
  Rational multiplier = 0;

  bool trivial() const { return is_odot(image); }

  /// Same result up to the order of components.
  friend bool same_result(PullbackResult a, PullbackResult b) {
    std::sort(a.components.begin(), a.components.end());
    std::sort(b.components.begin(), b.components.end());
    return a.slope == b.slope && a.image == b.image && a.components == b.components && a.c == b.c &&
           a.d == b.d && a.multiplier == b.multiplier;
  }
};

struct PhotonOptions {
  /// Index into the sequence of generic offsets; the first non-degenerate
  /// offset at or after this index is used.
  unsigned offset = 0;
  unsigned retry_budget = 64;
};

namespace detail {

inline bool is_prime_small(unsigned long n) {
  if (n < 2) return false;
  for (unsigned long k = 2; k * k <= n; ++k) {
    if (n % k == 0) return false;
  }
  return true;
}

/// The k-th prime >= 1009.
inline unsigned long offset_prime(unsigned k) {
  unsigned long n = 1009;
  for (;;) {
    if (is_prime_small(n)) {
      if (k == 0) return n;
      --k;
    }
    ++n;
  }
}

enum class TraceStatus { Ok, Degenerate };

/// The crossings of one component, reduced to what the monodromy needs:
/// their number and the alternating sums of the centers
/// c = from + 2 i d u + 2 l w, in crossing order.
struct CrossingSummary {
  TraceStatus status = TraceStatus::Ok;
  std::size_t count = 0;
  Vec2 from_sum{0, 0};
  BigInt i_sum = 0, l_sum = 0;
};

/// Per-arc data, with parameters kept as integers over den * U, U the lcm
/// of the |cross(u, e)|.
struct ArcSweep {
  std::size_t arc;
  BigInt lo, hi;          // candidate l range (widened by one on each side)
  BigInt s0, s_step;      // s * den * ue = s0 + l * s_step
  BigInt bound;           // |s| < 1 iff |s0 + l s_step| < bound
  BigInt t_base, t_step;  // t * den * U = t_base + l t_step, mod period
};

template <class Int>
struct CrossingT {
  Int t;
  std::size_t arc;
  Int i, l;
};

template <class Int>
inline Int floor_div_t(const Int& a, const Int& b) {
  if constexpr (std::is_same_v<Int, BigInt>) {
    return floor_div(a, b);
  } else {
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
  }
}

template <class Int, class Conv>
inline CrossingSummary sweep(const std::vector<Arc>& arcs, const std::vector<ArcSweep>& sweeps,
                             const BigInt& period_big, Conv conv) {
  CrossingSummary out;
  std::vector<CrossingT<Int>> cs;
  const Int period = conv(period_big);
  for (const ArcSweep& a : sweeps) {
    const Int s_step = conv(a.s_step), t_step = conv(a.t_step), bound = conv(a.bound);
    const Int lo = conv(a.lo), hi = conv(a.hi);
    Int snum = conv(a.s0) + lo * s_step;
    Int tnum = conv(a.t_base) + lo * t_step;
    for (Int l = lo; l <= hi; ++l, snum += s_step, tnum += t_step) {
      Int as = snum < 0 ? Int(-snum) : snum;
      if (as == bound) {
        out.status = TraceStatus::Degenerate;
        return out;
      }
      if (as > bound) continue;
      Int i = -floor_div_t<Int>(tnum, period);
      Int t = tnum + i * period;
      if (t == 0) {
        out.status = TraceStatus::Degenerate;
        return out;
      }
      cs.push_back({t, a.arc, i, l});
    }
  }
  std::sort(cs.begin(), cs.end(), [](const CrossingT<Int>& x, const CrossingT<Int>& y) { return x.t < y.t; });
  Int i_sum = 0, l_sum = 0;
  std::vector<long long> arc_sign(arcs.size(), 0);
  for (std::size_t k = 0; k < cs.size(); ++k) {
    if (k > 0 && cs[k].t == cs[k - 1].t) {
      out.status = TraceStatus::Degenerate;
      return out;
    }
    if (k % 2 == 0) {
      i_sum += cs[k].i;
      l_sum += cs[k].l;
      ++arc_sign[cs[k].arc];
    } else {
      i_sum -= cs[k].i;
      l_sum -= cs[k].l;
      --arc_sign[cs[k].arc];
    }
  }
  out.count = cs.size();
  for (std::size_t k = 0; k < arcs.size(); ++k) out.from_sum = out.from_sum + BigInt(arc_sign[k]) * arcs[k].from;
  out.i_sum = BigInt(i_sum);
  out.l_sum = BigInt(l_sum);
  return out;
}

/// Crossings of the open straight segment P0 + t*u, t in (0, 2d), with all
/// spin mirrors. P0 = P0num / den. Degenerate if the segment touches a
/// mirror endpoint, starts or ends on a mirror, or two crossings tie.
inline CrossingSummary collect_crossings(const std::vector<Arc>& arcs, const Vec2& u, const BigInt& d, const Vec2& w,
                                         const Vec2& p0num, const BigInt& den) {
  BigInt U = 1;
  for (const Arc& arc : arcs) {
    BigInt ue = abs_big(cross(u, arc.to - arc.from));
    if (ue != 0) U = boost::multiprecision::lcm(U, ue);
  }
  const BigInt period = 2 * d * den * U;
  const BigInt cwu = cross(w, u);
  std::vector<ArcSweep> sweeps;
  BigInt magnitude = period;  // largest intermediate value of the sweep
  auto grow = [&](const BigInt& x) {
    BigInt ax = abs_big(x);
    if (ax > magnitude) magnitude = ax;
  };
  for (std::size_t ai = 0; ai < arcs.size(); ++ai) {
    const Arc& arc = arcs[ai];
    const Vec2 e = arc.to - arc.from;
    const BigInt ue = cross(u, e);
    if (ue == 0) continue;  // parallel mirrors are never met: the line avoids Z^2
    const Vec2 base = den * arc.from - p0num;
    ArcSweep a;
    a.arc = ai;
    a.s0 = cross(base, u);
    a.s_step = 2 * den * cwu;
    a.bound = den * abs_big(ue);
    BigInt lo, hi;
    if (a.s_step > 0) {
      lo = floor_div(-a.bound - a.s0, a.s_step) + 1;
      hi = ceil_div(a.bound - a.s0, a.s_step) - 1;
    } else {
      lo = floor_div(a.bound - a.s0, a.s_step) + 1;
      hi = ceil_div(-a.bound - a.s0, a.s_step) - 1;
    }
    a.lo = lo - 1;
    a.hi = hi + 1;
    const BigInt scale = U / ue;
    a.t_base = cross(base, e) * scale;
    a.t_step = 2 * den * cross(w, e) * scale;
    BigInt lmax = abs_big(a.lo) > abs_big(a.hi) ? abs_big(a.lo) : abs_big(a.hi);
    grow(lmax + 1);
    grow(abs_big(a.s0) + (lmax + 1) * abs_big(a.s_step));
    grow(abs_big(a.t_base) + (lmax + 1) * abs_big(a.t_step));
    // i * period is at most |tnum| + period; sums add a factor of the count.
    grow((abs_big(a.t_base) + (lmax + 1) * abs_big(a.t_step) + period) * (a.hi - a.lo + 1) * 4);
    sweeps.push_back(std::move(a));
  }
  if (magnitude < (BigInt(1) << 62)) {
    return sweep<long long>(arcs, sweeps, period, [](const BigInt& x) { return x.convert_to<long long>(); });
  }
  return sweep<BigInt>(arcs, sweeps, period, [](const BigInt& x) { return x; });
}

}  // namespace detail

/// Computes mu_F(s), c(s), d(s) and the multiplier. The translation of the
/// diagram is never read.
inline PullbackResult pullback(const Diagram& D, const ExtRat& s, const PhotonOptions& opt = {}) {
  const Lattice& L = D.lattice();
  const Vec2 u{s.q(), s.p()};
  const std::vector<Arc> arcs = D.nontrivial_arcs();

  // d = min k > 0 with k*u in Lambda1; d*u is primitive in Lambda1.
  auto [su, tu] = L.scaled_coords(u);
  const BigInt det = L.det();
  BigInt g = gcd_big(gcd_big(su, tu), det);
  const BigInt d = abs_big(det) / g;
  const BigInt a = su * d / det, b = tu * d / det;  // d*u = a*lambda1 + b*lambda2
  BigInt x, y;
  if (ext_gcd(a, b, x, y) != 1) throw InternalError("pullback: d*u is not primitive in Lambda1");
  // a*x + b*y = 1, so w = -y*lambda1 + x*lambda2 completes a basis.
  const Vec2 w = L.combine(-y, x);

  for (unsigned attempt = 0; attempt < opt.retry_budget; ++attempt) {
    const BigInt K = detail::offset_prime(opt.offset + attempt);
    const BigInt den = 6 * K;
    const Vec2 vnum{3 * K - 6 * s.p(), 2 * K + 6 * s.q()};
    if (cross(vnum, u) % den == 0) continue;

    PullbackResult result;
    result.slope = s;
    std::vector<bool> consumed;
    std::vector<Vec2> reps;
    L.for_each_coset([&](const Vec2& z) { reps.push_back(z); });
    consumed.assign(reps.size(), false);
    auto index_of = [&](const Vec2& z) {
      Vec2 r = L.reduce(z);
      // reps are ordered row-major: (i, j) at j*width + i.
      return static_cast<std::size_t>(r.y * L.width() + r.x);
    };

    bool degenerate = false;
    for (std::size_t zi = 0; zi < reps.size() && !degenerate; ++zi) {
      if (consumed[zi]) continue;
      const Vec2& z = reps[zi];
      for (BigInt k = 0; k < d; ++k) {
        std::size_t idx = index_of(z + k * u);
        if (consumed[idx]) throw InternalError("pullback: fiber point consumed twice");
        consumed[idx] = true;
      }
      const Vec2 p0num = vnum + (2 * den) * z;
      const detail::CrossingSummary cs = detail::collect_crossings(arcs, u, d, w, p0num, den);
      if (cs.status == detail::TraceStatus::Degenerate) {
        degenerate = true;
        break;
      }
      Component comp;
      comp.degree = d;
      comp.crossings = cs.count;
      if (cs.count % 2 == 0) {
        // v - w' = -2 d u - 2 sum (-1)^(i+1) c_i
        Vec2 disp = BigInt(-2) * (d * u) - BigInt(2) * cs.from_sum - BigInt(4 * cs.i_sum) * (d * u) -
                    BigInt(4 * cs.l_sum) * w;
        auto [al, be] = L.coords(disp);
        if (al < 0 || (al == 0 && be < 0)) {
          al = -al;
          be = -be;
        }
        comp.alpha = al;
        comp.beta = be;
        comp.essential = al != 0 || be != 0;
      }
      result.components.push_back(comp);
    }
    if (degenerate) continue;

    BigInt total = 0;
    for (const auto& comp : result.components) total += comp.degree;
    if (total != abs_big(det)) throw InternalError("pullback: component degrees do not sum to deg");

    std::optional<ExtRat> image;
    for (const auto& comp : result.components) {
      if (!comp.essential) continue;
      ExtRat sl = ExtRat::reduce(comp.beta, comp.alpha);
      if (image && *image != sl) throw InternalError("pullback: essential components disagree on slope");
      image = sl;
      result.c += 1;
    }
    if (image) {
      result.image = *image;
      result.d = d;
      result.multiplier = Rational(result.c, d);
    }
    return result;
  }
  throw Error("pullback: no generic start point found within the retry budget");
}

inline SlopeValue mu(const Diagram& D, const ExtRat& s) { return pullback(D, s).image; }

inline Rational multiplier(const Diagram& D, const ExtRat& s) { return pullback(D, s).multiplier; }

inline bool is_fixed_slope(const Diagram& D, const ExtRat& s) {
  SlopeValue img = pullback(D, s).image;
  return !is_odot(img) && std::get<ExtRat>(img) == s;
}

}  // namespace netmap
