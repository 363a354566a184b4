#pragma once

// The family D_n: lambda1 = (n, n+1), lambda2 = (n-2, n-1), one arc from
// lambda1 to (n-1, n). D_n = M_n . D_0 with M_n = [[0,1],[-1,2]]^n.

#include "netmap/photon.hpp"

#include <json.hpp>

#include <map>
#include <string>
#include <vector>

namespace netmap {

inline Diagram make_dn(long long n, Translation t = Translation::None) {
  if (n < 0) throw Error("make_dn: n must be nonnegative");
  BigInt N(n);
  return Diagram::make({N, N + 1}, {N - 2, N - 1}, t, {{{N, N + 1}, {N - 1, N}}});
}

inline IMat2 twist_matrix(long long n) {
  if (n < 0) throw Error("twist_matrix: n must be nonnegative");
  BigInt N(n);
  return {1 - N, N, -N, N + 1};
}

/// nu_m = mu_iota mu_{phi_1^m} = [[m, -m-1], [-m+1, m]].
inline IMat2 nu(long long m) {
  BigInt M(m);
  return {M, -M - 1, 1 - M, M};
}

/// Slope of the obstruction of D_n, n = 2 mod 3.
inline ExtRat obstruction_slope(long long n) {
  if (n < 2 || n % 3 != 2) throw Error("obstruction_slope: n must be >= 2 and congruent to 2 mod 3");
  if (n == 2) return ExtRat::infinity();
  long long m = n / 2;
  return n % 2 == 1 ? mobius(nu(m), obstruction_slope(m)) : mobius(nu(m), obstruction_slope(m + 1));
}

/// f = 1 on (0,4), f(x) = (x/2 - 1) f(x/2 - 1) for x >= 4.
inline Rational est_f(const Rational& x) {
  if (x <= 0) throw Error("est_f: argument must be positive");
  if (x < 4) return 1;
  Rational y = x / 2 - 1;
  return y * est_f(y);
}

/// g = 1 on (0,4), g(x) = 2 (x/2 + 1) g(x/2 + 1) for x >= 4.
inline Rational est_g(const Rational& x) {
  if (x <= 0) throw Error("est_g: argument must be positive");
  if (x < 4) return 1;
  Rational y = x / 2 + 1;
  return 2 * y * est_g(y);
}

struct SandwichRow {
  long long n;
  ExtRat s;
  Rational f, g;
  bool ok;
};

/// f(n) <= ht(s_n) <= g(n) and -2 <= s_n < -1.
inline SandwichRow sandwich(long long n) {
  SandwichRow row{n, obstruction_slope(n), est_f(Rational(n)), est_g(Rational(n)), false};
  Rational ht(height(row.s));
  bool range = row.s.is_finite() && row.s.value() >= -2 && row.s.value() < -1;
  row.ok = row.f <= ht && ht <= row.g && range;
  return row;
}

struct IdentityReport {
  std::size_t checked = 0;
  std::size_t skipped_odot = 0;
  std::vector<std::string> violations;
};

/// mu_0 eta = eta_hat mu_0 for eta_1 = [[-1,2],[-2,3]] with eta_hat_1 =
/// [[2,1],[-1,0]], and eta_0 = [[1,0],[-2,1]] with eta_hat_0 = [[0,1],[-1,0]].
inline IdentityReport functional_identities_check(const BigInt& sample_height) {
  const Diagram D0 = make_dn(0);
  const IMat2 eta[2] = {{-1, 2, -2, 3}, {1, 0, -2, 1}};
  const IMat2 eta_hat[2] = {{2, 1, -1, 0}, {0, 1, -1, 0}};
  IdentityReport rep;
  for_each_farey(sample_height, [&](const ExtRat& s) {
    SlopeValue img = pullback(D0, s).image;
    if (is_odot(img)) {
      ++rep.skipped_odot;
      return;
    }
    for (int i = 0; i < 2; ++i) {
      SlopeValue lhs = pullback(D0, mobius(eta[i], s)).image;
      ExtRat rhs = mobius(eta_hat[i], std::get<ExtRat>(img));
      ++rep.checked;
      if (is_odot(lhs) || std::get<ExtRat>(lhs) != rhs) {
        rep.violations.push_back("eta_" + std::string(i == 0 ? "1" : "0") + " at " + s.str() + ": " +
                                 to_string(lhs) + " != " + rhs.str());
      }
    }
  });
  return rep;
}

/// Slope-level form of psi_m^-1 F_m psi_m ~ F_{2m+1} and
/// psi_m^-1 F_{m+1} psi_m ~ F_{2m}: mu_n nu_m = nu_m mu_src on every slope
/// of height <= sample_height.
inline IdentityReport conjugation_check(long long m, const BigInt& sample_height) {
  IdentityReport rep;
  const IMat2 v = nu(m);
  const std::pair<long long, long long> cases[2] = {{2 * m + 1, m}, {2 * m, m + 1}};
  for (auto [n, src] : cases) {
    if (n < 0 || src < 0) continue;
    const Diagram Dn = make_dn(n), Ds = make_dn(src);
    for_each_farey(sample_height, [&](const ExtRat& s) {
      SlopeValue lhs = pullback(Dn, mobius(v, s)).image;
      SlopeValue inner = pullback(Ds, s).image;
      ++rep.checked;
      bool ok = is_odot(inner) ? is_odot(lhs)
                               : (!is_odot(lhs) && std::get<ExtRat>(lhs) == mobius(v, std::get<ExtRat>(inner)));
      if (!ok) {
        rep.violations.push_back("n=" + std::to_string(n) + " at " + s.str() + ": " + to_string(lhs) + " vs nu(" +
                                 to_string(inner) + ")");
      }
    });
  }
  return rep;
}

struct DnRecord {
  long long n;
  Diagram diagram;
  IMat2 twist;
  std::optional<ExtRat> obstruction;
};

inline DnRecord dn_record(long long n) {
  DnRecord r{n, make_dn(n), twist_matrix(n), std::nullopt};
  if (n >= 2 && n % 3 == 2) r.obstruction = obstruction_slope(n);
  return r;
}

inline nlohmann::json to_json(const DnRecord& r) {
  const auto& D = r.diagram;
  nlohmann::json j = {{"n", r.n},
                      {"lambda1", {D.lambda1().x.str(), D.lambda1().y.str()}},
                      {"lambda2", {D.lambda2().x.str(), D.lambda2().y.str()}},
                      {"arc", {{D.arcs()[0].from.x.str(), D.arcs()[0].from.y.str()},
                               {D.arcs()[0].to.x.str(), D.arcs()[0].to.y.str()}}},
                      {"twist_matrix", r.twist.str()},
                      {"degree", D.degree().str()},
                      {"geomsize", D.geomsize().str()}};
  if (r.obstruction) {
    j["obstruction_slope"] = r.obstruction->str();
    j["height"] = height(*r.obstruction).str();
  }
  return j;
}

}  // namespace netmap
