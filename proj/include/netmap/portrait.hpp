#pragma once

// Dynamic portraits from the lattice class model.
//
// A corner node is a parity x in (Z/2)^2; the affine part sends it to the
// diagram corner y = A x + b. If y is (up to 2*Lambda1 and sign) the start of
// an arc, the push carries it to the arc's end tau. The image is the parity
// of the resulting integer point, with local degree 2 exactly when that
// point is not in Lambda1. Critical classes of Z^2 mod (+-, 2*Lambda1) that
// no arc ends in are free critical points; each maps with degree 2 to its
// own parity.

#include "netmap/diagram.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <map>
#include <string>
#include <vector>

namespace netmap {

struct PortraitNode {
  std::string id;
  bool corner = true;   // false: free critical point
  int parity = 0;       // corner nodes: bit 0 = lambda1 coefficient, bit 1 = lambda2
  Vec2 representative;  // free critical points: class representative
  bool critical = false;
  bool postcritical = false;
};

struct PortraitEdge {
  std::size_t from;
  std::size_t to;
  int degree;
};

struct Portrait {
  std::vector<PortraitNode> nodes;
  std::vector<PortraitEdge> edges;  // exactly one per node, edges[i].from == i

  std::size_t postcritical_count() const {
    return static_cast<std::size_t>(
        std::count_if(nodes.begin(), nodes.end(), [](const PortraitNode& n) { return n.postcritical; }));
  }
  std::size_t critical_count() const {
    return static_cast<std::size_t>(
        std::count_if(nodes.begin(), nodes.end(), [](const PortraitNode& n) { return n.critical; }));
  }
};

inline const char* corner_name(int parity) {
  static const char* names[] = {"0", "lambda1", "lambda2", "lambda1+lambda2"};
  return names[parity & 3];
}

namespace detail {

/// Parity in (Z/2)^2 of an integer point, as bits (x mod 2, y mod 2).
inline int parity_of(const Vec2& v) {
  int px = static_cast<int>(abs_big(v.x) % 2), py = static_cast<int>(abs_big(v.y) % 2);
  return px | (py << 1);
}

/// The full map on corners and critical classes before trimming to orbits.
struct ClassMap {
  std::array<int, 4> corner_target{};
  std::array<int, 4> corner_degree{};
  std::vector<Vec2> free_critical;
  std::vector<int> free_target;
};

inline ClassMap class_map(const Diagram& D) {
  if (D.is_virtual()) throw Error("portrait: the diagram has no translation term");
  ClassMap m;
  const Vec2 b = D.translation_vector();
  const auto arcs = D.nontrivial_arcs();
  for (int x = 0; x < 4; ++x) {
    Vec2 y = D.lattice().combine(x & 1, (x >> 1) & 1) + b;
    Vec2 img = y;
    for (const Arc& arc : arcs) {
      if (D.corner_index(arc.from) == D.corner_index(y)) {
        img = arc.to;
        break;
      }
    }
    m.corner_target[x] = parity_of(img);
    m.corner_degree[x] = D.lattice().contains(img) ? 1 : 2;
  }
  std::vector<Gamma1Class> targeted;
  for (const Arc& arc : arcs) targeted.push_back(D.gamma1_class(arc.to));
  for (const Gamma1Class& c : D.critical_classes()) {
    if (std::find(targeted.begin(), targeted.end(), c) != targeted.end()) continue;
    m.free_critical.push_back(c.representative);
    m.free_target.push_back(parity_of(c.representative));
  }
  return m;
}

}  // namespace detail

/// Critical points plus their forward orbits, with local degrees.
inline Portrait portrait(const Diagram& D) {
  const detail::ClassMap m = detail::class_map(D);
  std::array<bool, 4> in_orbit{}, post{};
  auto follow = [&](int x) {
    while (!post[x]) {
      post[x] = true;
      in_orbit[x] = true;
      x = m.corner_target[x];
    }
  };
  for (int x = 0; x < 4; ++x) {
    if (m.corner_degree[x] == 2) {
      in_orbit[x] = true;
      follow(m.corner_target[x]);
    }
  }
  for (int t : m.free_target) follow(t);

  Portrait P;
  std::array<std::size_t, 4> index{};
  for (int x = 0; x < 4; ++x) {
    if (!in_orbit[x]) continue;
    index[x] = P.nodes.size();
    PortraitNode n;
    n.id = corner_name(x);
    n.corner = true;
    n.parity = x;
    n.critical = m.corner_degree[x] == 2;
    n.postcritical = post[x];
    P.nodes.push_back(n);
  }
  for (int x = 0; x < 4; ++x) {
    if (in_orbit[x]) P.edges.push_back({index[x], index[m.corner_target[x]], m.corner_degree[x]});
  }
  for (std::size_t k = 0; k < m.free_critical.size(); ++k) {
    PortraitNode n;
    n.id = "crit" + m.free_critical[k].str();
    n.corner = false;
    n.representative = m.free_critical[k];
    n.critical = true;
    P.edges.push_back({P.nodes.size(), index[m.free_target[k]], 2});
    P.nodes.push_back(n);
  }
  return P;
}

inline bool is_net(const Portrait& P) { return P.postcritical_count() == 4; }

inline bool is_net(const Diagram& D) { return is_net(portrait(D)); }

/// NET with at least one nontrivial arc.
inline bool is_noneuclidean(const Diagram& D) { return !is_euclidean(D) && is_net(D); }

namespace detail {

/// Invariant form of a portrait with node i relabelled by perm; free
/// critical points are anonymous, so only the multiset of their edges counts.
inline std::vector<std::array<int, 5>> portrait_form(const Portrait& P, const std::vector<int>& perm) {
  std::vector<std::array<int, 5>> rows;
  for (const PortraitEdge& e : P.edges) {
    const PortraitNode& n = P.nodes[e.from];
    int from = n.corner ? perm[e.from] : -1;
    rows.push_back({from, perm[e.to], e.degree, n.critical ? 1 : 0, n.postcritical ? 1 : 0});
  }
  std::sort(rows.begin(), rows.end());
  return rows;
}

}  // namespace detail

/// Isomorphism of portraits: a node bijection preserving edges, degrees,
/// criticality and postcriticality.
inline bool portrait_iso(const Portrait& a, const Portrait& b) {
  if (a.nodes.size() != b.nodes.size()) return false;
  std::vector<std::size_t> ca, cb;
  for (std::size_t i = 0; i < a.nodes.size(); ++i) {
    if (a.nodes[i].corner) ca.push_back(i);
  }
  for (std::size_t i = 0; i < b.nodes.size(); ++i) {
    if (b.nodes[i].corner) cb.push_back(i);
  }
  if (ca.size() != cb.size()) return false;
  // Free critical points only point into corner nodes, so permuting the
  // corner nodes (at most 4) is enough.
  std::vector<int> pb(b.nodes.size(), -1);
  for (std::size_t k = 0; k < cb.size(); ++k) pb[cb[k]] = static_cast<int>(k);
  const auto target = detail::portrait_form(b, pb);
  std::vector<int> order(ca.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = static_cast<int>(k);
  do {
    std::vector<int> pa(a.nodes.size(), -1);
    for (std::size_t k = 0; k < ca.size(); ++k) pa[ca[k]] = order[k];
    if (detail::portrait_form(a, pa) == target) return true;
  } while (std::next_permutation(order.begin(), order.end()));
  return false;
}

/// Builds a portrait from an explicit edge list; used to state expected
/// portraits. Names starting with "crit" are free critical points.
inline Portrait portrait_from_edges(const std::vector<std::tuple<std::string, std::string, int>>& edges,
                                    const std::vector<std::string>& postcritical) {
  Portrait P;
  std::map<std::string, std::size_t> idx;
  auto node = [&](const std::string& name) {
    auto it = idx.find(name);
    if (it != idx.end()) return it->second;
    PortraitNode n;
    n.id = name;
    n.corner = name.rfind("crit", 0) != 0;
    n.postcritical = std::find(postcritical.begin(), postcritical.end(), name) != postcritical.end();
    idx[name] = P.nodes.size();
    P.nodes.push_back(n);
    return P.nodes.size() - 1;
  };
  for (const auto& [from, to, deg] : edges) {
    std::size_t f = node(from), t = node(to);
    P.nodes[f].critical = deg == 2;
    P.edges.push_back({f, t, deg});
  }
  std::sort(P.edges.begin(), P.edges.end(),
            [](const PortraitEdge& x, const PortraitEdge& y) { return x.from < y.from; });
  if (P.edges.size() != P.nodes.size()) throw Error("portrait_from_edges: every node needs one outgoing edge");
  return P;
}

inline nlohmann::json to_json(const Portrait& P) {
  nlohmann::json nodes = nlohmann::json::array(), edges = nlohmann::json::array();
  for (const auto& n : P.nodes) {
    nlohmann::json j = {{"id", n.id},
                        {"kind", n.corner ? "corner" : "free_critical"},
                        {"critical", n.critical},
                        {"postcritical", n.postcritical}};
    if (!n.corner) j["representative"] = {n.representative.x.str(), n.representative.y.str()};
    nodes.push_back(j);
  }
  for (const auto& e : P.edges) {
    edges.push_back({{"from", P.nodes[e.from].id}, {"to", P.nodes[e.to].id}, {"degree", e.degree}});
  }
  return {{"nodes", nodes}, {"edges", edges}, {"postcritical_count", P.postcritical_count()},
          {"net", is_net(P)}};
}

}  // namespace netmap
