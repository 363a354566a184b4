#pragma once

// Exact arithmetic shared by every other module: big integers and rationals
// (GMP-backed), reduced extended rationals p/q including 1/0, and 2x2
// integer matrices acting projectively.

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <functional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace netmap {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an invariant that the mathematics guarantees is violated at
/// runtime. Seeing one means a bug, not bad input.
class InternalError : public Error {
 public:
  using Error::Error;
};

inline BigInt abs_big(const BigInt& x) { return x < 0 ? BigInt(-x) : x; }

inline BigInt gcd_big(const BigInt& a, const BigInt& b) {
  return boost::multiprecision::gcd(abs_big(a), abs_big(b));
}

/// Floor division for big integers (rounds toward negative infinity).
inline BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

inline BigInt ceil_div(const BigInt& a, const BigInt& b) { return -floor_div(-a, b); }

/// Extended Euclid: returns g = gcd(a,b) >= 0 and sets x,y with a*x + b*y = g.
inline BigInt ext_gcd(const BigInt& a, const BigInt& b, BigInt& x, BigInt& y) {
  BigInt old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    BigInt q = floor_div(old_r, r);
    BigInt tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  x = old_s;
  y = old_t;
  return old_r;
}

inline BigInt floor_of(const Rational& r) {
  return floor_div(boost::multiprecision::numerator(r), boost::multiprecision::denominator(r));
}

inline BigInt ceil_of(const Rational& r) {
  return ceil_div(boost::multiprecision::numerator(r), boost::multiprecision::denominator(r));
}

inline Rational abs_rat(const Rational& r) { return r < 0 ? Rational(-r) : r; }

inline std::string to_string(const BigInt& x) { return x.str(); }

inline std::string to_string(const Rational& r) {
  std::string s = boost::multiprecision::numerator(r).str();
  s += '/';
  s += boost::multiprecision::denominator(r).str();
  return s;
}

/// Parses an optionally signed decimal integer.
inline BigInt parse_bigint(std::string_view text) {
  std::size_t i = 0;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
  if (i == text.size()) throw Error("expected an integer, got '" + std::string(text) + "'");
  for (std::size_t j = i; j < text.size(); ++j) {
    if (text[j] < '0' || text[j] > '9') {
      throw Error("expected an integer, got '" + std::string(text) + "'");
    }
  }
  std::string digits(text[0] == '+' ? text.substr(1) : text);
  return BigInt(digits);
}

/// Parses "p/q", "p" or a finite decimal such as "0.25" into an exact rational.
inline Rational parse_rational(std::string_view text) {
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt den = parse_bigint(text.substr(slash + 1));
    if (den == 0) throw Error("zero denominator in '" + std::string(text) + "'");
    return Rational(parse_bigint(text.substr(0, slash)), den);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    bool negative = !whole.empty() && whole[0] == '-';
    std::string digits(whole.empty() || whole == "-" || whole == "+" ? std::string_view("0") : whole);
    if (digits[0] == '-' || digits[0] == '+') digits.erase(0, 1);
    if (digits.empty()) digits = "0";
    BigInt scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    BigInt num = parse_bigint(digits) * scale + (frac.empty() ? BigInt(0) : parse_bigint(frac));
    if (!frac.empty() && (frac[0] == '-' || frac[0] == '+')) {
      throw Error("malformed decimal '" + std::string(text) + "'");
    }
    return Rational(negative ? BigInt(-num) : num, scale);
  }
  return Rational(parse_bigint(text));
}

/// A reduced extended rational p/q with gcd(|p|,|q|) = 1 and q >= 0.
/// Infinity is stored as 1/0. Used for both slopes and cusps.
class ExtRat {
 public:
  /// 0/1.
  ExtRat() : p_(0), q_(1) {}

  /// Reduces (p, q) to canonical form. Throws on (0, 0).
  static ExtRat reduce(BigInt p, BigInt q) {
    if (p == 0 && q == 0) throw Error("0/0 is not an extended rational");
    BigInt g = gcd_big(p, q);
    p /= g;
    q /= g;
    if (q < 0 || (q == 0 && p < 0)) {
      p = -p;
      q = -q;
    }
    return ExtRat(std::move(p), std::move(q));
  }

  static ExtRat infinity() { return ExtRat(1, 0); }
  static ExtRat integer(const BigInt& n) { return ExtRat(n, 1); }
  static ExtRat from_rational(const Rational& r) {
    return ExtRat(boost::multiprecision::numerator(r), boost::multiprecision::denominator(r));
  }

  /// Accepts "p/q" (unreduced, signed), a bare integer, or "inf".
  static ExtRat parse(std::string_view text) {
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
    if (text == "inf" || text == "infinity" || text == "oo") return infinity();
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
      return reduce(parse_bigint(text.substr(0, slash)), parse_bigint(text.substr(slash + 1)));
    }
    return integer(parse_bigint(text));
  }

  const BigInt& p() const { return p_; }
  const BigInt& q() const { return q_; }

  bool is_infinite() const { return q_ == 0; }
  bool is_finite() const { return q_ != 0; }

  /// Value as a rational; only for finite values.
  Rational value() const {
    if (is_infinite()) throw Error("1/0 has no finite value");
    return Rational(p_, q_);
  }

  std::string str() const { return p_.str() + "/" + q_.str(); }

  friend bool operator==(const ExtRat& a, const ExtRat& b) { return a.p_ == b.p_ && a.q_ == b.q_; }
  friend bool operator!=(const ExtRat& a, const ExtRat& b) { return !(a == b); }

  /// A total order for use in sorted containers: by value, with 1/0 last.
  friend bool operator<(const ExtRat& a, const ExtRat& b) {
    if (a.is_infinite()) return false;
    if (b.is_infinite()) return true;
    return a.p_ * b.q_ < b.p_ * a.q_;
  }

  friend std::ostream& operator<<(std::ostream& os, const ExtRat& x) { return os << x.str(); }

 private:
  ExtRat(BigInt p, BigInt q) : p_(std::move(p)), q_(std::move(q)) {}

  BigInt p_;
  BigInt q_;
};

inline ExtRat reduce(const BigInt& p, const BigInt& q) { return ExtRat::reduce(p, q); }

/// ht(p/q) = max(|p|, |q|).
inline BigInt height(const ExtRat& x) {
  BigInt a = abs_big(x.p());
  return a > x.q() ? a : x.q();
}

/// Marker for the trivial pullback value (every preimage component
/// inessential or peripheral).
struct Odot {
  friend bool operator==(Odot, Odot) { return true; }
};

/// A slope-function value: an extended rational or the marker.
using SlopeValue = std::variant<ExtRat, Odot>;

inline bool is_odot(const SlopeValue& v) { return std::holds_alternative<Odot>(v); }

inline std::string to_string(const SlopeValue& v) {
  return is_odot(v) ? std::string("odot") : std::get<ExtRat>(v).str();
}

/// 2x2 integer matrix [[a, b], [c, d]].
struct IMat2 {
  BigInt a = 1, b = 0, c = 0, d = 1;

  static IMat2 identity() { return {}; }

  BigInt det() const { return a * d - b * c; }

  friend IMat2 operator*(const IMat2& x, const IMat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
            x.c * y.b + x.d * y.d};
  }

  friend bool operator==(const IMat2& x, const IMat2& y) {
    return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
  }

  /// Inverse of a determinant +-1 matrix.
  IMat2 unimodular_inverse() const {
    BigInt dt = det();
    if (dt != 1 && dt != -1) throw Error("matrix is not invertible over the integers");
    return {d * dt, -b * dt, -c * dt, a * dt};
  }

  std::string str() const {
    return "[[" + a.str() + "," + b.str() + "],[" + c.str() + "," + d.str() + "]]";
  }

  friend std::ostream& operator<<(std::ostream& os, const IMat2& m) { return os << m.str(); }
};

inline IMat2 power(IMat2 base, unsigned long long exponent) {
  IMat2 result;
  while (exponent > 0) {
    if (exponent & 1ULL) result = result * base;
    base = base * base;
    exponent >>= 1ULL;
  }
  return result;
}

/// Fractional-linear action x -> (a x + b) / (c x + d), computed projectively
/// on (p, q) so 1/0 needs no special case.
inline ExtRat mobius(const IMat2& m, const ExtRat& x) {
  if (m.det() == 0) throw Error("mobius: singular matrix");
  return ExtRat::reduce(m.a * x.p() + m.b * x.q(), m.c * x.p() + m.d * x.q());
}

/// Matrix through which a mapping class with matrix phi acts on slopes by
/// pullback: [[a, b], [c, d]] -> [[a, -c], [-b, d]].
inline IMat2 slope_action_rep(const IMat2& phi) {
  if (phi.det() != 1) throw Error("slope_action_rep: determinant must be 1");
  return {phi.a, -phi.c, -phi.b, phi.d};
}

/// t = -1/s. The map is an involution, so it also converts cusps to slopes.
inline ExtRat cusp_of_slope(const ExtRat& s) { return ExtRat::reduce(-s.q(), s.p()); }
inline ExtRat slope_of_cusp(const ExtRat& t) { return ExtRat::reduce(-t.q(), t.p()); }

/// Calls visit(x) for every reduced extended rational of height <= max_height,
/// each exactly once, in order of increasing height.
template <class Visitor>
void for_each_farey(const BigInt& max_height, Visitor&& visit) {
  if (max_height < 1) throw Error("farey_enumerate: max_height must be >= 1");
  visit(ExtRat::infinity());
  visit(ExtRat::integer(0));
  for (BigInt h = 1; h <= max_height; ++h) {
    // Height exactly h: |p| = h with q < h coprime, or q = h with |p| < h coprime.
    for (BigInt k = 0; k <= h; ++k) {
      if (gcd_big(h, k) != 1) continue;
      if (k < h) {
        // p = +-h, q = k (k = 0 only pairs with h = 1, already emitted as 1/0).
        if (k == 0) continue;
        visit(ExtRat::reduce(h, k));
        visit(ExtRat::reduce(-h, k));
      }
      if (k < h && k > 0) {
        visit(ExtRat::reduce(k, h));
        visit(ExtRat::reduce(-k, h));
      }
    }
    if (h == 1) {
      visit(ExtRat::integer(1));
      visit(ExtRat::integer(-1));
    }
  }
}

inline std::vector<ExtRat> farey_enumerate(const BigInt& max_height) {
  std::vector<ExtRat> out;
  for_each_farey(max_height, [&](const ExtRat& x) { out.push_back(x); });
  return out;
}

}  // namespace netmap

template <>
struct std::hash<netmap::ExtRat> {
  std::size_t operator()(const netmap::ExtRat& x) const noexcept {
    // Low limbs and signs are enough for a hash.
    std::size_t h1 = mpz_get_ui(x.p().backend().data()) * 2 + (x.p() < 0 ? 1 : 0);
    std::size_t h2 = mpz_get_ui(x.q().backend().data()) * 2 + (x.q() < 0 ? 1 : 0);
    return h1 ^ (h2 * 0x9e3779b97f4a7c15ULL);
  }
};
