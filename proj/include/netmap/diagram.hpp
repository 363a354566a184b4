#pragma once

// Presentation diagrams: the lattice vectors lambda1, lambda2, an optional
// translation term, and straight push arcs from lattice corners.

#include "netmap/lattice.hpp"

#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace netmap {

enum class Translation { Zero, Lambda1, Lambda2, Lambda12, None };

inline const char* to_string(Translation t) {
  switch (t) {
    case Translation::Zero: return "0";
    case Translation::Lambda1: return "lambda1";
    case Translation::Lambda2: return "lambda2";
    case Translation::Lambda12: return "lambda1+lambda2";
    case Translation::None: return "none";
  }
  return "none";
}

inline std::optional<Translation> parse_translation(std::string_view s) {
  if (s == "0" || s == "zero") return Translation::Zero;
  if (s == "lambda1") return Translation::Lambda1;
  if (s == "lambda2") return Translation::Lambda2;
  if (s == "lambda1+lambda2" || s == "lambda12") return Translation::Lambda12;
  if (s == "none") return Translation::None;
  return std::nullopt;
}

inline constexpr Translation kConcreteTranslations[] = {Translation::Zero, Translation::Lambda1,
                                                        Translation::Lambda2, Translation::Lambda12};

struct Arc {
  Vec2 from;
  Vec2 to;

  bool trivial() const { return from == to; }
  friend bool operator==(const Arc& a, const Arc& b) { return a.from == b.from && a.to == b.to; }
};

class DiagramError : public Error {
 public:
  DiagramError(const std::string& what, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Class of a point of Z^2 under the group generated by x -> 2l - x for l
/// in the diagram lattice; two points agree iff z' is in +-z + 2*Lambda1.
struct Gamma1Class {
  Vec2 representative;
  friend bool operator==(const Gamma1Class& a, const Gamma1Class& b) {
    return a.representative == b.representative;
  }
  friend bool operator<(const Gamma1Class& a, const Gamma1Class& b) {
    return a.representative < b.representative;
  }
};

class Diagram {
 public:
  /// Validates and builds a diagram. Errors carry no line number.
  static Diagram make(Vec2 lambda1, Vec2 lambda2, Translation translation, std::vector<Arc> arcs) {
    Diagram d(std::move(lambda1), std::move(lambda2), translation, std::move(arcs));
    d.validate();
    return d;
  }

  /// Parses the line-oriented text format:
  ///   lambda1 = <int> <int>
  ///   lambda2 = <int> <int>
  ///   translation = 0 | lambda1 | lambda2 | lambda1+lambda2 | none
  ///   arc = (<int>,<int>) -> (<int>,<int>)
  static Diagram parse(std::string_view text);

  const Vec2& lambda1() const { return lambda1_; }
  const Vec2& lambda2() const { return lambda2_; }
  Translation translation() const { return translation_; }
  const std::vector<Arc>& arcs() const { return arcs_; }
  const Lattice& lattice() const { return lattice_; }
  const Lattice& double_lattice() const { return double_lattice_; }

  /// det[lambda1 lambda2], the degree of the map.
  const BigInt& degree() const { return lattice_.det(); }

  /// max of the sup-norms of lambda1 and lambda2.
  BigInt geomsize() const {
    BigInt a = sup_norm(lambda1_), b = sup_norm(lambda2_);
    return a > b ? a : b;
  }

  IMat2 matrix() const { return {lambda1_.x, lambda2_.x, lambda1_.y, lambda2_.y}; }

  bool is_virtual() const { return translation_ == Translation::None; }

  /// The translation vector b; only for non-virtual diagrams.
  Vec2 translation_vector() const {
    switch (translation_) {
      case Translation::Zero: return {0, 0};
      case Translation::Lambda1: return lambda1_;
      case Translation::Lambda2: return lambda2_;
      case Translation::Lambda12: return lambda1_ + lambda2_;
      case Translation::None: break;
    }
    throw Error("virtual diagram has no translation vector");
  }

  Diagram with_translation(Translation t) const {
    Diagram d = *this;
    d.translation_ = t;
    return d;
  }

  Diagram without_arcs() const { return make(lambda1_, lambda2_, translation_, {}); }

  std::vector<Arc> nontrivial_arcs() const {
    std::vector<Arc> out;
    for (const Arc& a : arcs_) {
      if (!a.trivial()) out.push_back(a);
    }
    return out;
  }

  bool is_corner(const Vec2& v) const { return lattice_.contains(v); }

  /// Which of 0, lambda1, lambda2, lambda1+lambda2 a lattice point reduces
  /// to modulo 2*Lambda1 (negation does not change it), as bits (i mod 2, j mod 2).
  int corner_index(const Vec2& v) const {
    auto [i, j] = lattice_.coords(v);
    int bi = static_cast<int>(abs_big(i) % 2), bj = static_cast<int>(abs_big(j) % 2);
    return bi | (bj << 1);
  }

  Gamma1Class gamma1_class(const Vec2& v) const {
    Vec2 a = double_lattice_.reduce(v);
    Vec2 b = double_lattice_.reduce(-v);
    return {a < b ? a : b};
  }

  /// Every Gamma1 class of Z^2 that is not a corner; these are the critical
  /// points of the underlying affine map. There are 2(deg - 1) of them.
  std::vector<Gamma1Class> critical_classes() const {
    std::vector<Gamma1Class> out;
    double_lattice_.for_each_coset([&](const Vec2& v) {
      if (lattice_.contains(v)) return;
      Gamma1Class c = gamma1_class(v);
      if (c.representative == v) out.push_back(c);
    });
    return out;
  }

  std::string str() const {
    std::ostringstream os;
    os << "lambda1 = " << lambda1_.x << ' ' << lambda1_.y << '\n';
    os << "lambda2 = " << lambda2_.x << ' ' << lambda2_.y << '\n';
    os << "translation = " << to_string(translation_) << '\n';
    for (const Arc& a : arcs_) {
      os << "arc = (" << a.from.x << ',' << a.from.y << ") -> (" << a.to.x << ',' << a.to.y << ")\n";
    }
    return os.str();
  }

  friend bool operator==(const Diagram& a, const Diagram& b) {
    return a.lambda1_ == b.lambda1_ && a.lambda2_ == b.lambda2_ && a.translation_ == b.translation_ &&
           a.arcs_ == b.arcs_;
  }

 private:
  Diagram(Vec2 lambda1, Vec2 lambda2, Translation translation, std::vector<Arc> arcs)
      : lambda1_(std::move(lambda1)),
        lambda2_(std::move(lambda2)),
        translation_(translation),
        arcs_(std::move(arcs)),
        lattice_(checked_lattice(lambda1_, lambda2_)),
        double_lattice_(BigInt(2) * lambda1_, BigInt(2) * lambda2_) {}

  static Lattice checked_lattice(const Vec2& l1, const Vec2& l2) {
    BigInt det = cross(l1, l2);
    if (det == 0) throw DiagramError("lambda1 and lambda2 are linearly dependent");
    if (det < 2) {
      throw DiagramError("det[lambda1 lambda2] must be at least 2 (got " + det.str() + ")");
    }
    return Lattice(l1, l2);
  }

  void validate() const;

  Vec2 lambda1_, lambda2_;
  Translation translation_;
  std::vector<Arc> arcs_;
  Lattice lattice_;
  Lattice double_lattice_;
};

namespace detail {

inline int orientation(const Vec2& a, const Vec2& b, const Vec2& c) {
  BigInt v = cross(b - a, c - a);
  return v > 0 ? 1 : (v < 0 ? -1 : 0);
}

inline bool on_segment(const Vec2& a, const Vec2& b, const Vec2& p) {
  auto lo = [](const BigInt& u, const BigInt& v) { return u < v ? u : v; };
  auto hi = [](const BigInt& u, const BigInt& v) { return u < v ? v : u; };
  return lo(a.x, b.x) <= p.x && p.x <= hi(a.x, b.x) && lo(a.y, b.y) <= p.y && p.y <= hi(a.y, b.y);
}

/// Closed segments [a,b] and [c,d] share a point.
inline bool segments_meet(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
  int o1 = orientation(a, b, c), o2 = orientation(a, b, d);
  int o3 = orientation(c, d, a), o4 = orientation(c, d, b);
  if (o1 != o2 && o3 != o4 && o1 * o2 <= 0 && o3 * o4 <= 0) {
    if (o1 != 0 || o2 != 0) return true;
  }
  if (o1 == 0 && on_segment(a, b, c)) return true;
  if (o2 == 0 && on_segment(a, b, d)) return true;
  if (o3 == 0 && on_segment(c, d, a)) return true;
  if (o4 == 0 && on_segment(c, d, b)) return true;
  return false;
}

/// Whether x lies in the closed parallelogram {2a*l1 + b*l2 : a,b in [0,1]},
/// tested on coordinates scaled by det.
inline bool in_fundamental_domain(const Lattice& lat, const BigInt& si, const BigInt& sj) {
  const BigInt& det = lat.det();
  return si >= 0 && si <= 2 * det && sj >= 0 && sj <= det;
}

}  // namespace detail

inline void Diagram::validate() const {
  std::vector<int> from_corners;
  std::vector<Gamma1Class> to_classes;
  for (std::size_t k = 0; k < arcs_.size(); ++k) {
    const Arc& arc = arcs_[k];
    const std::string label = "arc " + std::to_string(k + 1) + " " + arc.from.str() + " -> " + arc.to.str();
    if (!lattice_.contains(arc.from)) {
      throw DiagramError(label + ": start point is not in the lattice spanned by lambda1, lambda2");
    }
    if (arc.trivial()) continue;
    if (lattice_.contains(arc.to)) {
      throw DiagramError(label + ": end point must not be a lattice corner");
    }
    Vec2 diff = arc.to - arc.from;
    if (gcd_big(diff.x, diff.y) != 1) {
      throw DiagramError(label + ": segment passes through an integer point");
    }
    int corner = corner_index(arc.from);
    for (int c : from_corners) {
      if (c == corner) throw DiagramError(label + ": two arcs start at the same corner class");
    }
    from_corners.push_back(corner);
    Gamma1Class target = gamma1_class(arc.to);
    for (const auto& t : to_classes) {
      if (t == target) throw DiagramError(label + ": two arcs end at the same point class");
    }
    to_classes.push_back(target);

    // Some Gamma1 image of the arc must sit in the closed parallelogram
    // spanned by 2*lambda1 and lambda2.
    auto [fi, fj] = lattice_.coords(arc.from);
    auto [ti, tj] = lattice_.scaled_coords(arc.to);
    const BigInt& det = lattice_.det();
    bool placed = false;
    for (int sign : {1, -1}) {
      // Image coords: 2m + sign * coords, need from-image in [0,2]x[0,1].
      BigInt mi_lo = ceil_div(-sign * fi, BigInt(2)), mi_hi = floor_div(2 - sign * fi, BigInt(2));
      BigInt mj_lo = ceil_div(-sign * fj, BigInt(2)), mj_hi = floor_div(1 - sign * fj, BigInt(2));
      for (BigInt mi = mi_lo; mi <= mi_hi && !placed; ++mi) {
        for (BigInt mj = mj_lo; mj <= mj_hi && !placed; ++mj) {
          BigInt si = 2 * mi * det + sign * ti;
          BigInt sj = 2 * mj * det + sign * tj;
          if (detail::in_fundamental_domain(lattice_, si, sj)) placed = true;
        }
      }
    }
    if (!placed) {
      throw DiagramError(label + ": no copy of the arc fits in the parallelogram spanned by 2*lambda1, lambda2");
    }
  }

  // Spin mirrors (each arc doubled through its start point, and all
  // translates by 2*Lambda1) must be pairwise disjoint.
  auto arcs = nontrivial_arcs();
  const BigInt det = cross(lambda1_, lambda2_);
  const BigInt adet = abs_big(det);
  const int dsign = det > 0 ? 1 : -1;
  // Translates m with |2*Lambda*m - g| <= r in sup norm. The range of mi
  // comes from Cramer's rule over the box; each coordinate then pins mj to
  // an interval.
  auto pin = [](const BigInt& base, const BigInt& step, const BigInt& r, BigInt& lo, BigInt& hi) {
    // |base + step*mj| <= r
    if (step == 0) {
      if (abs_big(base) > r) hi = lo - 1;
      return;
    }
    BigInt a = -r - base, b = r - base;
    if (step < 0) {
      std::swap(a, b);
      a = -a;
      b = -b;
    }
    BigInt s = abs_big(step);
    BigInt l = ceil_div(a, s), h = floor_div(b, s);
    if (l > lo) lo = l;
    if (h < hi) hi = h;
  };
  for (std::size_t j = 0; j < arcs.size(); ++j) {
    for (std::size_t k = j; k < arcs.size(); ++k) {
      Vec2 ej = arcs[j].to - arcs[j].from, ek = arcs[k].to - arcs[k].from;
      const Vec2& cj = arcs[j].from;
      Vec2 g = cj - arcs[k].from;
      BigInt r = sup_norm(ej) + sup_norm(ek);
      BigInt c = dsign * cross(g, lambda2_);
      BigInt spread = r * (abs_big(lambda2_.x) + abs_big(lambda2_.y));
      BigInt mi_lo = ceil_div(c - spread, 2 * adet), mi_hi = floor_div(c + spread, 2 * adet);
      for (BigInt mi = mi_lo; mi <= mi_hi; ++mi) {
        BigInt mj_lo = -(r + sup_norm(g)) - 1 - 2 * abs_big(mi) * sup_norm(lambda1_), mj_hi = -mj_lo;
        pin(2 * mi * lambda1_.x - g.x, 2 * lambda2_.x, r, mj_lo, mj_hi);
        pin(2 * mi * lambda1_.y - g.y, 2 * lambda2_.y, r, mj_lo, mj_hi);
        for (BigInt mj = mj_lo; mj <= mj_hi; ++mj) {
          if (j == k && mi == 0 && mj == 0) continue;
          Vec2 ck = arcs[k].from + BigInt(2) * lattice_.combine(mi, mj);
          if (detail::segments_meet(cj - ej, cj + ej, ck - ek, ck + ek)) {
            throw DiagramError("arcs " + arcs[j].from.str() + " -> " + arcs[j].to.str() + " and " +
                               arcs[k].from.str() + " -> " + arcs[k].to.str() +
                               " produce intersecting spin mirrors");
          }
        }
      }
    }
  }
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline Vec2 parse_pair(std::string_view s, int line) {
  s = trim(s);
  bool paren = !s.empty() && s.front() == '(';
  if (paren) {
    if (s.back() != ')') throw DiagramError("unbalanced parenthesis in '" + std::string(s) + "'", line);
    s = s.substr(1, s.size() - 2);
  }
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == ',' || s[i] == ' ' || s[i] == '\t') {
      auto part = trim(s.substr(start, i - start));
      if (!part.empty()) parts.push_back(part);
      start = i + 1;
    }
  }
  if (parts.size() != 2) throw DiagramError("expected two integers, got '" + std::string(s) + "'", line);
  try {
    return {parse_bigint(parts[0]), parse_bigint(parts[1])};
  } catch (const Error& e) {
    throw DiagramError(e.what(), line);
  }
}

}  // namespace detail

inline Diagram Diagram::parse(std::string_view text) {
  std::optional<Vec2> l1, l2;
  std::optional<Translation> translation;
  std::vector<Arc> arcs;
  int line_no = 0;
  int last_line = 0;
  while (!text.empty()) {
    ++line_no;
    auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    last_line = line_no;
    auto eq = line.find('=');
    if (eq == std::string_view::npos) throw DiagramError("expected 'key = value'", line_no);
    auto key = detail::trim(line.substr(0, eq));
    auto value = detail::trim(line.substr(eq + 1));
    if (key == "lambda1" || key == "lambda2") {
      auto& slot = key == "lambda1" ? l1 : l2;
      if (slot) throw DiagramError("duplicate " + std::string(key), line_no);
      slot = detail::parse_pair(value, line_no);
    } else if (key == "translation") {
      if (translation) throw DiagramError("duplicate translation", line_no);
      translation = parse_translation(value);
      if (!translation) throw DiagramError("unknown translation '" + std::string(value) + "'", line_no);
    } else if (key == "arc") {
      auto arrow = value.find("->");
      if (arrow == std::string_view::npos) throw DiagramError("arc needs '->'", line_no);
      arcs.push_back({detail::parse_pair(value.substr(0, arrow), line_no),
                      detail::parse_pair(value.substr(arrow + 2), line_no)});
      // Validate arcs as they arrive so errors point at the offending line.
      if (l1 && l2) {
        try {
          make(*l1, *l2, Translation::None, arcs);
        } catch (const DiagramError& e) {
          throw DiagramError(e.what(), line_no);
        }
      }
    } else {
      throw DiagramError("unknown key '" + std::string(key) + "'", line_no);
    }
  }
  if (!l1) throw DiagramError("missing lambda1", last_line);
  if (!l2) throw DiagramError("missing lambda2", last_line);
  try {
    return make(*l1, *l2, translation.value_or(Translation::None), std::move(arcs));
  } catch (const DiagramError& e) {
    if (e.line() > 0) throw;
    throw DiagramError(e.what(), last_line);
  }
}

/// Applies M in SL2(Z) to the whole diagram; the translation label is kept.
inline Diagram sl2_apply(const IMat2& m, const Diagram& d) {
  if (m.det() != 1) throw Error("sl2_apply: determinant must be 1");
  std::vector<Arc> arcs;
  for (const Arc& a : d.arcs()) arcs.push_back({apply(m, a.from), apply(m, a.to)});
  return Diagram::make(apply(m, d.lambda1()), apply(m, d.lambda2()), d.translation(), std::move(arcs));
}

/// True iff every arc is trivial.
inline bool is_euclidean(const Diagram& d) { return d.nontrivial_arcs().empty(); }

}  // namespace netmap
