#pragma once

// Integer plane vectors and full-rank sublattices of Z^2.

#include "netmap/exactnum.hpp"

#include <array>
#include <utility>

namespace netmap {

struct Vec2 {
  BigInt x = 0;
  BigInt y = 0;

  friend Vec2 operator+(const Vec2& a, const Vec2& b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(const Vec2& a, const Vec2& b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator-(const Vec2& a) { return {-a.x, -a.y}; }
  friend Vec2 operator*(const BigInt& k, const Vec2& a) { return {k * a.x, k * a.y}; }
  friend bool operator==(const Vec2& a, const Vec2& b) { return a.x == b.x && a.y == b.y; }
  friend bool operator!=(const Vec2& a, const Vec2& b) { return !(a == b); }
  friend bool operator<(const Vec2& a, const Vec2& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  }

  std::string str() const { return "(" + x.str() + "," + y.str() + ")"; }
};

/// 2D cross product a.x*b.y - a.y*b.x.
inline BigInt cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }

inline BigInt sup_norm(const Vec2& v) {
  BigInt ax = abs_big(v.x), ay = abs_big(v.y);
  return ax > ay ? ax : ay;
}

inline Vec2 apply(const IMat2& m, const Vec2& v) {
  return {m.a * v.x + m.b * v.y, m.c * v.x + m.d * v.y};
}

/// The lattice spanned by two independent integer vectors, with a canonical
/// residue system for Z^2 / L: representatives (x, y), 0 <= x < width,
/// 0 <= y < rows.
class Lattice {
 public:
  Lattice(Vec2 b1, Vec2 b2) : b1_(std::move(b1)), b2_(std::move(b2)) {
    det_ = cross(b1_, b2_);
    if (det_ == 0) throw Error("lattice vectors are linearly dependent");
    BigInt s, t;
    rows_ = ext_gcd(b1_.y, b2_.y, s, t);
    y_step_ = s * b1_ + t * b2_;
    width_ = abs_big(det_) / rows_;
  }

  const Vec2& b1() const { return b1_; }
  const Vec2& b2() const { return b2_; }
  /// Signed determinant of [b1 b2].
  const BigInt& det() const { return det_; }
  BigInt index() const { return abs_big(det_); }
  const BigInt& width() const { return width_; }
  const BigInt& rows() const { return rows_; }

  /// Coordinates of v in the basis (b1, b2), multiplied by det.
  std::pair<BigInt, BigInt> scaled_coords(const Vec2& v) const {
    return {cross(v, b2_), cross(b1_, v)};
  }

  bool contains(const Vec2& v) const {
    auto [a, b] = scaled_coords(v);
    return a % det_ == 0 && b % det_ == 0;
  }

  /// Integer coordinates of a lattice vector.
  std::pair<BigInt, BigInt> coords(const Vec2& v) const {
    auto [a, b] = scaled_coords(v);
    if (a % det_ != 0 || b % det_ != 0) throw Error("vector " + v.str() + " is not in the lattice");
    return {a / det_, b / det_};
  }

  Vec2 combine(const BigInt& i, const BigInt& j) const { return i * b1_ + j * b2_; }

  /// Canonical representative of v + L.
  Vec2 reduce(Vec2 v) const {
    BigInt k = floor_div(v.y, rows_);
    v = v - k * y_step_;
    v.x -= width_ * floor_div(v.x, width_);
    return v;
  }

  template <class Visitor>
  void for_each_coset(Visitor&& visit) const {
    for (BigInt j = 0; j < rows_; ++j) {
      for (BigInt i = 0; i < width_; ++i) visit(Vec2{i, j});
    }
  }

 private:
  Vec2 b1_, b2_;
  BigInt det_;
  BigInt rows_;
  BigInt width_;
  Vec2 y_step_;
};

}  // namespace netmap
