#pragma once

// Command-line front end. Exit codes: 0 success, 2 refusal, 1 error.

#include "netmap/decider.hpp"
#include "netmap/dnfamily.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace netmap::cli {

inline Diagram load_diagram(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return Diagram::parse(ss.str());
}

inline nlohmann::json to_json(const PullbackResult& r) {
  nlohmann::json comps = nlohmann::json::array();
  for (const auto& c : r.components) {
    comps.push_back({{"degree", c.degree.str()},
                     {"crossings", c.crossings},
                     {"essential", c.essential},
                     {"displacement", {c.alpha.str(), c.beta.str()}}});
  }
  return {{"slope", r.slope.str()},
          {"image", to_string(r.image)},
          {"c", r.c.str()},
          {"d", r.d ? nlohmann::json(r.d->str()) : nlohmann::json(nullptr)},
          {"multiplier", rational_text(r.multiplier)},
          {"components", comps}};
}

inline std::string pullback_line(const PullbackResult& r) {
  return "slope=" + r.slope.str() + " image=" + to_string(r.image) + " c=" + r.c.str() +
         " d=" + (r.d ? r.d->str() : std::string("-")) + " multiplier=" + rational_text(r.multiplier);
}

inline nlohmann::json to_json(const ExcludedRegion& r) {
  nlohmann::json iv = nlohmann::json::array();
  for (const auto& i : r.intervals) {
    iv.push_back({i.lo ? nlohmann::json(to_string(*i.lo)) : nlohmann::json("-inf"),
                  i.hi ? nlohmann::json(to_string(*i.hi)) : nlohmann::json("+inf")});
  }
  nlohmann::json j = {{"kind", to_string(r.kind)},
                      {"radius", to_string(r.radius)},
                      {"intervals", iv},
                      {"provenance", r.provenance}};
  if (r.size_constant) j["size_constant"] = r.size_constant->str();
  if (r.N) j["N"] = r.N->str();
  if (r.witness) j["witness"] = r.witness->str();
  return j;
}

namespace detail {

struct Context {
  std::ostream& out;
  std::ostream& err;
};

inline int cmd_validate(Context& ctx, const std::string& file) {
  Diagram D = load_diagram(file);
  ctx.out << "ok degree=" << D.degree() << " geomsize=" << D.geomsize() << " arcs=" << D.arcs().size()
          << " translation=" << to_string(D.translation()) << " euclidean=" << (is_euclidean(D) ? "yes" : "no")
          << "\n";
  return 0;
}

inline int cmd_pullback(Context& ctx, const std::string& file, const std::string& slope, bool json,
                        unsigned offset) {
  Diagram D = load_diagram(file);
  PullbackResult r = pullback(D, ExtRat::parse(slope), {offset, 64});
  if (json) {
    ctx.out << to_json(r).dump(2) << "\n";
    return 0;
  }
  ctx.out << pullback_line(r) << "\n";
  for (const auto& c : r.components) {
    ctx.out << "  component degree=" << c.degree << " crossings=" << c.crossings;
    if (c.crossings % 2 == 1) {
      ctx.out << " peripheral";
    } else {
      ctx.out << " displacement=(" << c.alpha << "," << c.beta << ")" << (c.essential ? " essential" : " inessential");
    }
    ctx.out << "\n";
  }
  return 0;
}

inline int cmd_slopes(Context& ctx, const std::string& file, long long max_height, bool json) {
  Diagram D = load_diagram(file);
  nlohmann::json rows = nlohmann::json::array();
  if (!json) ctx.out << std::left << std::setw(12) << "slope" << std::setw(12) << "image" << std::setw(6) << "c"
                     << std::setw(6) << "d" << "multiplier\n";
  for_each_farey(max_height, [&](const ExtRat& s) {
    PullbackResult r = pullback(D, s);
    if (json) {
      rows.push_back({{"slope", s.str()},
                      {"image", to_string(r.image)},
                      {"c", r.c.str()},
                      {"d", r.d ? nlohmann::json(r.d->str()) : nlohmann::json(nullptr)},
                      {"multiplier", rational_text(r.multiplier)}});
    } else {
      ctx.out << std::left << std::setw(12) << s.str() << std::setw(12) << to_string(r.image) << std::setw(6)
              << r.c.str() << std::setw(6) << (r.d ? r.d->str() : std::string("-")) << rational_text(r.multiplier)
              << "\n";
    }
  });
  if (json) ctx.out << rows.dump(2) << "\n";
  return 0;
}

inline int cmd_decide(Context& ctx, const std::string& file, const DecideOptions& opt, bool json) {
  Diagram D = load_diagram(file);
  Verdict v = decide(D, opt);
  if (json) {
    ctx.out << to_json(v).dump(2) << "\n";
  } else {
    ctx.out << v.str() << "\n";
    for (const auto& a : v.assumptions) ctx.out << "  assuming: " << a << "\n";
  }
  return v.kind == Verdict::Kind::Refused ? 2 : 0;
}

inline int cmd_portrait(Context& ctx, const std::string& file, const std::string& translation, bool json) {
  Diagram D = load_diagram(file);
  if (!translation.empty()) {
    auto t = parse_translation(translation);
    if (!t) throw Error("unknown translation '" + translation + "'");
    D = D.with_translation(*t);
  }
  if (D.is_virtual()) {
    ctx.err << "refused: a portrait needs a translation (pass --translation)\n";
    return 2;
  }
  Portrait P = portrait(D);
  if (json) {
    ctx.out << to_json(P).dump(2) << "\n";
    return 0;
  }
  ctx.out << "translation=" << to_string(D.translation()) << " postcritical=" << P.postcritical_count()
          << " critical=" << P.critical_count() << " net=" << (is_net(P) ? "yes" : "no") << "\n";
  for (const auto& e : P.edges) {
    const auto& n = P.nodes[e.from];
    ctx.out << "  " << n.id << " -> " << P.nodes[e.to].id << " degree " << e.degree
            << (n.postcritical ? " [postcritical]" : "") << "\n";
  }
  return 0;
}

inline int cmd_exclude(Context& ctx, const std::string& file, const std::string& cusp, bool json) {
  Diagram D = load_diagram(file);
  Exclusion e = excluded_interval(D, ExtRat::parse(cusp));
  if (e.refused()) {
    if (json) {
      ctx.out << nlohmann::json{{"cusp", e.cusp.str()}, {"refused", e.refusal}, {"obstruction", e.obstruction}}.dump(2)
              << "\n";
    } else {
      ctx.out << "refused: " << e.refusal << "\n";
    }
    return 2;
  }
  if (json) {
    nlohmann::json j = to_json(*e.region);
    j["cusp"] = e.cusp.str();
    ctx.out << j.dump(2) << "\n";
  } else {
    ctx.out << "cusp=" << e.cusp.str() << " " << e.region->provenance << " region=" << e.region->str() << "\n";
  }
  return 0;
}

inline int cmd_candidates(Context& ctx, const std::string& file, int depth, std::size_t budget, bool list,
                          const std::string& path) {
  Diagram D = load_diagram(file);
  if (!path.empty()) {
    PathReport rep = candidate_path(D, CFExpansion::parse(path));
    for (const auto& s : rep.steps) ctx.out << s << "\n";
    ctx.out << (rep.early_stop ? "early stop" : (rep.member ? "member" : "not a member")) << "\n";
    return 0;
  }
  CandidateTree tree = candidates(D, depth, {budget});
  if (tree.obstruction_cusp) {
    ctx.out << "early stop: cusp " << tree.obstruction_cusp->str() << " is fixed with multiplier "
            << rational_text(tree.obstruction_multiplier) << " (slope " << slope_of_cusp(*tree.obstruction_cusp).str()
            << ")\n";
  }
  for (std::size_t k = 0; k < tree.levels.size(); ++k) {
    ctx.out << "T_" << static_cast<int>(k) - 1 << " new=" << tree.levels[k].size() << "\n";
    if (!list) continue;
    for (const auto& n : tree.levels[k]) {
      ctx.out << "  " << (n.expansion ? n.expansion->str() : std::string("1/0")) << " = " << n.value.str() << "\n";
    }
  }
  ctx.out << "size=" << tree.size << (tree.truncated ? " truncated" : "") << "\n";
  return 0;
}

inline int cmd_dn(Context& ctx, long long n, bool table, bool json) {
  if (table) {
    nlohmann::json rows = nlohmann::json::array();
    if (!json) ctx.out << std::left << std::setw(6) << "n" << std::setw(24) << "s_n" << "height\n";
    for (long long k = 2; k <= n; k += 3) {
      ExtRat s = obstruction_slope(k);
      if (json) {
        rows.push_back({{"n", k}, {"obstruction_slope", s.str()}, {"height", height(s).str()}});
      } else {
        ctx.out << std::left << std::setw(6) << k << std::setw(24) << s.str() << height(s) << "\n";
      }
    }
    if (json) ctx.out << rows.dump(2) << "\n";
    return 0;
  }
  DnRecord r = dn_record(n);
  if (json) {
    ctx.out << netmap::to_json(r).dump(2) << "\n";
    return 0;
  }
  ctx.out << r.diagram.str();
  ctx.out << "# twist matrix " << r.twist.str() << "\n";
  if (r.obstruction) ctx.out << "# obstruction slope " << r.obstruction->str() << "\n";
  return 0;
}

inline int cmd_bounds(Context& ctx, const std::string& size, const std::string& contraction, int depth,
                      const std::string& a0, const std::string& a1, bool json) {
  BigInt C = parse_bigint(size);
  auto hs = bound_formulas(C, depth, parse_bigint(a0), parse_bigint(a1));
  nlohmann::json j;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& h : hs) {
    nlohmann::json row = {{"k", h.k}, {"e1", h.e1.str()}, {"e2", h.e2.str()}};
    if (h.value) {
      row["digits"] = h.value->str().size();
      if (h.value->str().size() <= 60) row["value"] = h.value->str();
    }
    rows.push_back(row);
  }
  j["H"] = rows;
  if (!contraction.empty()) j["N"] = n_bound(C, parse_rational(contraction)).str();
  if (json) {
    ctx.out << j.dump(2) << "\n";
    return 0;
  }
  for (const auto& h : hs) {
    ctx.out << "H_" << h.k << " = (A1 C^8)^" << h.e1 << " (A0 C^8)^" << h.e2;
    if (h.value) {
      std::string v = h.value->str();
      if (v.size() <= 60) {
        ctx.out << " = " << v;
      } else {
        ctx.out << " (" << v.size() << " digits)";
      }
    }
    ctx.out << "\n";
  }
  if (!contraction.empty()) ctx.out << "N <= " << j["N"].get<std::string>() << "\n";
  return 0;
}

}  // namespace detail

/// args excludes the program name.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"NET map slope functions and obstructions", "netmap"};
  app.require_subcommand(1);
  detail::Context ctx{out, err};

  std::string file, slope, cusp, translation, path, size, contraction, a0 = "128", a1 = "128";
  bool json = false, table = false, list = false;
  long long max_height = 10, n = 0, height_budget = 1000;
  int depth = 6;
  unsigned offset = 0;
  std::size_t budget = 20000;

  auto* validate = app.add_subcommand("validate", "Check a diagram file");
  validate->add_option("file", file, "diagram file")->required();

  auto* pull = app.add_subcommand("pullback", "Pull back one slope");
  pull->add_option("file", file, "diagram file")->required();
  pull->add_option("--slope", slope, "slope p/q")->required();
  pull->add_option("--offset", offset, "index of the generic start offset");
  pull->add_flag("--json", json);

  auto* slopes = app.add_subcommand("slopes", "Slope function table up to a height");
  slopes->add_option("file", file, "diagram file")->required();
  slopes->add_option("--max-height", max_height, "largest height")->check(CLI::PositiveNumber);
  slopes->add_flag("--json", json);

  auto* dec = app.add_subcommand("decide", "Search for an obstruction");
  dec->add_option("file", file, "diagram file")->required();
  dec->add_option("--depth", depth, "continued fraction depth N")->check(CLI::NonNegativeNumber);
  dec->add_option("--height", height_budget, "height budget B")->check(CLI::PositiveNumber);
  dec->add_option("--budget", budget, "candidate tree element budget")->check(CLI::PositiveNumber);
  dec->add_flag("--json", json);

  auto* port = app.add_subcommand("portrait", "Dynamic portrait");
  port->add_option("file", file, "diagram file")->required();
  port->add_option("--translation", translation, "0, lambda1, lambda2 or lambda1+lambda2");
  port->add_flag("--json", json);

  auto* excl = app.add_subcommand("exclude", "Excluded region about a cusp");
  excl->add_option("file", file, "diagram file")->required();
  excl->add_option("--cusp", cusp, "cusp p/q")->required();
  excl->add_flag("--json", json);

  auto* cand = app.add_subcommand("candidates", "Candidate tree");
  cand->add_option("file", file, "diagram file")->required();
  cand->add_option("--depth", depth, "depth N")->check(CLI::NonNegativeNumber);
  cand->add_option("--budget", budget, "element budget")->check(CLI::PositiveNumber);
  cand->add_option("--path", path, "check one expansion [a0,a1,...] step by step");
  cand->add_flag("--list", list, "list every element");

  auto* dn = app.add_subcommand("dn", "The family D_n");
  dn->add_option("--n", n, "n")->required()->check(CLI::NonNegativeNumber);
  dn->add_flag("--table", table, "obstruction slopes for n = 2, 5, ... up to --n");
  dn->add_flag("--json", json);

  auto* bounds = app.add_subcommand("bounds", "Height and depth bound formulas");
  bounds->add_option("--size", size, "size constant C")->required();
  bounds->add_option("--contraction", contraction, "contraction constant c in (0,1)");
  bounds->add_option("--depth", depth, "largest k for H_k")->check(CLI::NonNegativeNumber);
  bounds->add_option("--a0", a0, "constant A0");
  bounds->add_option("--a1", a1, "constant A1");
  bounds->add_flag("--json", json);

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*validate) return detail::cmd_validate(ctx, file);
    if (*pull) return detail::cmd_pullback(ctx, file, slope, json, offset);
    if (*slopes) return detail::cmd_slopes(ctx, file, max_height, json);
    if (*dec) return detail::cmd_decide(ctx, file, {depth, height_budget, budget}, json);
    if (*port) return detail::cmd_portrait(ctx, file, translation, json);
    if (*excl) return detail::cmd_exclude(ctx, file, cusp, json);
    if (*cand) return detail::cmd_candidates(ctx, file, depth, budget, list, path);
    if (*dn) return detail::cmd_dn(ctx, n, table, json);
    if (*bounds) return detail::cmd_bounds(ctx, size, contraction, bounds->count("--depth") ? depth : 3, a0, a1, json);
  } catch (const Refusal& e) {
    err << "refused: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace netmap::cli
