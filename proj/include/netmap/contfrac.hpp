#pragma once

// Finite regular continued fractions [a0, a1, ..., an] with a0 any integer
// and ak > 0 for k >= 1.

#include "netmap/exactnum.hpp"

#include <string>
#include <utility>
#include <vector>

namespace netmap {

class CFExpansion {
 public:
  CFExpansion() = default;

  explicit CFExpansion(std::vector<BigInt> terms) : terms_(std::move(terms)) {
    if (terms_.empty()) throw Error("continued fraction needs at least one term");
    for (std::size_t k = 1; k < terms_.size(); ++k) {
      if (terms_[k] <= 0) throw Error("partial quotients after the first must be positive");
    }
  }

  const std::vector<BigInt>& terms() const { return terms_; }

  /// Index n of the last partial quotient.
  std::size_t length() const { return terms_.size() - 1; }

  /// The expansion extended by one more partial quotient.
  CFExpansion extended(const BigInt& next) const {
    std::vector<BigInt> t = terms_;
    t.push_back(next);
    return CFExpansion(std::move(t));
  }

  /// [a0, ..., a_{n-1}]; only for n >= 1.
  CFExpansion parent() const {
    if (terms_.size() < 2) throw Error("a one-term expansion has no parent");
    return CFExpansion(std::vector<BigInt>(terms_.begin(), terms_.end() - 1));
  }

  std::string str() const {
    std::string s = "[";
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      if (i) s += ',';
      s += terms_[i].str();
    }
    return s + "]";
  }

  friend bool operator==(const CFExpansion& a, const CFExpansion& b) { return a.terms_ == b.terms_; }
  friend bool operator<(const CFExpansion& a, const CFExpansion& b) { return a.terms_ < b.terms_; }

  /// Parses "[a0,a1,...]".
  static CFExpansion parse(std::string_view text) {
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
    if (text.size() < 2 || text.front() != '[' || text.back() != ']') {
      throw Error("continued fraction must look like [a0,a1,...]");
    }
    text = text.substr(1, text.size() - 2);
    std::vector<BigInt> terms;
    while (!text.empty()) {
      auto comma = text.find(',');
      std::string_view item = text.substr(0, comma);
      while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
      while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
      terms.push_back(parse_bigint(item));
      if (comma == std::string_view::npos) break;
      text.remove_prefix(comma + 1);
    }
    return CFExpansion(std::move(terms));
  }

 private:
  std::vector<BigInt> terms_;
};

/// Convergents p_k/q_k for k = 0..n via p_k = a_k p_{k-1} + p_{k-2}, seeded
/// with p_{-1}/q_{-1} = 1/0 and p_{-2}/q_{-2} = 0/1.
inline std::vector<ExtRat> convergents(const CFExpansion& e) {
  std::vector<ExtRat> out;
  BigInt p2 = 0, q2 = 1, p1 = 1, q1 = 0;
  for (const BigInt& a : e.terms()) {
    BigInt p = a * p1 + p2;
    BigInt q = a * q1 + q2;
    out.push_back(ExtRat::reduce(p, q));
    p2 = std::move(p1);
    q2 = std::move(q1);
    p1 = std::move(p);
    q1 = std::move(q);
  }
  return out;
}

/// Unreduced numerator/denominator pairs (p_k, q_k); already coprime, q_k > 0.
inline std::vector<std::pair<BigInt, BigInt>> convergent_pairs(const CFExpansion& e) {
  std::vector<std::pair<BigInt, BigInt>> out;
  BigInt p2 = 0, q2 = 1, p1 = 1, q1 = 0;
  for (const BigInt& a : e.terms()) {
    BigInt p = a * p1 + p2;
    BigInt q = a * q1 + q2;
    out.emplace_back(p, q);
    p2 = std::move(p1);
    q2 = std::move(q1);
    p1 = std::move(p);
    q1 = std::move(q);
  }
  return out;
}

inline ExtRat value(const CFExpansion& e) { return convergents(e).back(); }

/// The k-convergent; past the end of the expansion it is the value itself.
inline ExtRat k_convergent(const CFExpansion& e, std::size_t k) {
  auto conv = convergents(e);
  return k < conv.size() ? conv[k] : conv.back();
}

/// The two regular expansions of a finite rational: the short one ending in
/// a_n > 1 (or a single term) and the long one ending in 1.
inline std::pair<CFExpansion, CFExpansion> expansions_of(const ExtRat& t) {
  if (t.is_infinite()) throw Error("1/0 has no finite continued fraction");
  std::vector<BigInt> terms;
  BigInt num = t.p(), den = t.q();
  while (den != 0) {
    BigInt a = floor_div(num, den);
    terms.push_back(a);
    BigInt r = num - a * den;
    num = std::move(den);
    den = std::move(r);
  }
  std::vector<BigInt> other = terms;
  if (other.size() >= 2 && other.back() == 1) {
    // Euclid never ends in 1 after the first term, but keep this total.
    other.pop_back();
    other.back() += 1;
  } else {
    other.back() -= 1;
    other.push_back(1);
  }
  return {CFExpansion(std::move(terms)), CFExpansion(std::move(other))};
}

}  // namespace netmap
