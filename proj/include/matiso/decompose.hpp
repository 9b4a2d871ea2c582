#pragma once
// Triconnected decomposition of a 2-connected multigraph into a tree of
// bonds, polygons and 3-connected components joined by twin virtual edges,
// plus the excised-pair surgery X -> X' and the recompose integrity check.

#include <map>
#include <string>

#include "matiso/multigraph.hpp"

namespace matiso {

enum class CompKind { Bond, Polygon, Triconnected, ExcisedStar };

inline const char* comp_kind_name(CompKind k) {
  switch (k) {
    case CompKind::Bond: return "bond";
    case CompKind::Polygon: return "polygon";
    case CompKind::Triconnected: return "triconnected";
    case CompKind::ExcisedStar: return "excised-star";
  }
  return "?";
}

// Component edge over the global vertex ids of the decomposed graph.
// Exactly one of eid (real edge id) and vid (virtual twin link) is set.
struct DEdge {
  int u = -1, v = -1;
  int eid = -1;
  int vid = -1;

  bool is_virtual() const { return vid >= 0; }
};

struct Component {
  CompKind kind = CompKind::Bond;
  std::vector<DEdge> edges;
};

// A tree edge: the twin virtual edges carrying one vid, sitting at
// (comp_a, pos_a) and (comp_b, pos_b).
struct Link {
  int vid = -1;
  int comp_a = -1, pos_a = -1;
  int comp_b = -1, pos_b = -1;

  int other(int comp) const { return comp == comp_a ? comp_b : comp_a; }
};

struct DecompositionTree {
  Multigraph graph;  // the graph whose edges the components partition
  std::vector<Component> comps;
  std::vector<Link> links;
  std::vector<std::pair<int, int>> excised_pairs;  // filled by the surgery
  std::vector<int> surgery_edges;                  // edge ids added by the surgery

  // comp -> list of (link index, neighbor comp)
  std::vector<std::vector<std::pair<int, int>>> adjacency() const {
    std::vector<std::vector<std::pair<int, int>>> adj(comps.size());
    for (int li = 0; li < static_cast<int>(links.size()); ++li) {
      const Link& l = links[li];
      adj[l.comp_a].push_back({li, l.comp_b});
      adj[l.comp_b].push_back({li, l.comp_a});
    }
    return adj;
  }
};

namespace decomp_detail {

struct LocalView {
  std::vector<int> verts;  // sorted global ids
  Multigraph g;            // local-id copy

  int local(int gv) const {
    return static_cast<int>(std::lower_bound(verts.begin(), verts.end(), gv) - verts.begin());
  }
};

inline LocalView make_view(const std::vector<DEdge>& edges) {
  LocalView lv;
  for (const DEdge& e : edges) {
    lv.verts.push_back(e.u);
    lv.verts.push_back(e.v);
  }
  std::sort(lv.verts.begin(), lv.verts.end());
  lv.verts.erase(std::unique(lv.verts.begin(), lv.verts.end()), lv.verts.end());
  lv.g = Multigraph(static_cast<int>(lv.verts.size()));
  for (const DEdge& e : edges) lv.g.add_edge(lv.local(e.u), lv.local(e.v));
  return lv;
}

// Split until every piece is a bond, a polygon or a 3-connected graph.
// Invariant: the edge list is 2-connected as a graph at every level.
inline void split_component(std::vector<DEdge> edges, std::vector<Component>& out, int& next_vid) {
  LocalView lv = make_view(edges);
  int n = lv.g.vertex_count();
  if (n <= 2) {
    out.push_back({CompKind::Bond, std::move(edges)});
    return;
  }

  // a maximal parallel class (real and virtual alike) splits off as a bond
  std::map<std::pair<int, int>, std::vector<int>> classes;
  for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
    auto k = std::minmax(edges[i].u, edges[i].v);
    classes[{k.first, k.second}].push_back(i);
  }
  for (auto& [pair, members] : classes) {
    if (members.size() < 2) continue;
    int vid = next_vid++;
    DEdge virt{pair.first, pair.second, -1, vid};
    std::vector<DEdge> bond, rest;
    std::size_t at = 0;
    for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
      if (at < members.size() && members[at] == i) {
        bond.push_back(edges[i]);
        ++at;
      } else {
        rest.push_back(edges[i]);
      }
    }
    bond.push_back(virt);
    rest.push_back(virt);
    out.push_back({CompKind::Bond, std::move(bond)});
    split_component(std::move(rest), out, next_vid);
    return;
  }

  // simple from here on; a 2-connected graph with all degrees 2 is a cycle
  auto deg = lv.g.degrees();
  if (std::all_of(deg.begin(), deg.end(), [](int d) { return d == 2; })) {
    out.push_back({CompKind::Polygon, std::move(edges)});
    return;
  }

  // least separating pair (global vertex order); excise the part holding
  // the smallest vertex
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      auto parts = components_without_pair(lv.g, a, b);
      if (parts.size() < 2) continue;
      const std::vector<int>* part = &parts[0];
      for (const auto& p : parts)
        if (p[0] < (*part)[0]) part = &p;
      std::vector<bool> in_part(n, false);
      for (int x : *part) in_part[x] = true;
      int vid = next_vid++;
      DEdge virt{lv.verts[a], lv.verts[b], -1, vid};
      std::vector<DEdge> inner, outer;
      for (const DEdge& e : edges) {
        if (in_part[lv.local(e.u)] || in_part[lv.local(e.v)])
          inner.push_back(e);
        else
          outer.push_back(e);
      }
      inner.push_back(virt);
      outer.push_back(virt);
      split_component(std::move(inner), out, next_vid);
      split_component(std::move(outer), out, next_vid);
      return;
    }
  }

  out.push_back({CompKind::Triconnected, std::move(edges)});
}

// Merge adjacent same-kind polygon or bond pairs to the canonical form.
inline void merge_series_parallel(std::vector<Component>& comps) {
  for (bool again = true; again;) {
    again = false;
    std::map<int, std::vector<std::pair<int, int>>> sites;  // vid -> (comp, pos)
    for (int c = 0; c < static_cast<int>(comps.size()); ++c)
      for (int i = 0; i < static_cast<int>(comps[c].edges.size()); ++i)
        if (comps[c].edges[i].is_virtual()) sites[comps[c].edges[i].vid].push_back({c, i});
    for (auto& [vid, at] : sites) {
      if (at.size() != 2) throw IntegrityError("virtual edge without exactly two twins");
      auto [ca, pa] = at[0];
      auto [cb, pb] = at[1];
      if (ca == cb) throw IntegrityError("twin virtual edges in one component");
      CompKind ka = comps[ca].kind, kb = comps[cb].kind;
      bool mergeable = ka == kb && (ka == CompKind::Bond || ka == CompKind::Polygon);
      if (!mergeable) continue;
      Component merged;
      merged.kind = ka;
      for (int i = 0; i < static_cast<int>(comps[ca].edges.size()); ++i)
        if (i != pa) merged.edges.push_back(comps[ca].edges[i]);
      for (int i = 0; i < static_cast<int>(comps[cb].edges.size()); ++i)
        if (i != pb) merged.edges.push_back(comps[cb].edges[i]);
      comps[ca] = std::move(merged);
      comps.erase(comps.begin() + cb);
      again = true;
      break;
    }
  }
}

inline void finalize_links(DecompositionTree& t) {
  t.links.clear();
  std::map<int, std::vector<std::pair<int, int>>> sites;
  for (int c = 0; c < static_cast<int>(t.comps.size()); ++c)
    for (int i = 0; i < static_cast<int>(t.comps[c].edges.size()); ++i)
      if (t.comps[c].edges[i].is_virtual()) sites[t.comps[c].edges[i].vid].push_back({c, i});
  for (auto& [vid, at] : sites) {
    if (at.size() != 2) throw IntegrityError("virtual edge without exactly two twins");
    t.links.push_back({vid, at[0].first, at[0].second, at[1].first, at[1].second});
  }
  // the component graph must be a tree
  if (!t.comps.empty() && t.links.size() != t.comps.size() - 1)
    throw IntegrityError("component graph is not a tree");
  detail::UnionFind uf(static_cast<int>(t.comps.size()));
  for (const Link& l : t.links)
    if (!uf.unite(l.comp_a, l.comp_b)) throw IntegrityError("component graph has a cycle");
}

}  // namespace decomp_detail

inline void require_two_connected(const Multigraph& g) {
  if (g.edge_count() == 0) throw InputError("decomposition needs at least one edge");
  if (!is_connected(g)) throw InputError("decomposition input is not connected");
  auto blocks = biconnected_components(g);
  if (blocks.blocks.size() != 1) throw InputError("decomposition input is not 2-connected");
}

inline DecompositionTree triconnected_decompose(const Multigraph& g) {
  require_two_connected(g);
  DecompositionTree t;
  t.graph = g;
  std::vector<DEdge> all;
  for (int i = 0; i < g.edge_count(); ++i) all.push_back({g.edge(i).u, g.edge(i).v, i, -1});
  int next_vid = 0;
  decomp_detail::split_component(std::move(all), t.comps, next_vid);
  decomp_detail::merge_series_parallel(t.comps);
  decomp_detail::finalize_links(t);
  return t;
}

// Distinct vertex pairs over the tree links of a decomposition.
inline std::vector<std::pair<int, int>> excised_pairs_of(const DecompositionTree& t) {
  std::set<std::pair<int, int>> pairs;
  for (const Link& l : t.links) {
    const DEdge& e = t.comps[l.comp_a].edges[l.pos_a];
    pairs.insert(std::minmax(e.u, e.v));
  }
  return {pairs.begin(), pairs.end()};
}

// X' = X plus one fresh edge per excised pair; the returned tree decomposes
// X'. Bonds holding a surgery edge play the star-center role and are marked
// as such; a surgery edge landing outside a bond would break the tree
// normalization assumptions, so that trips an integrity error.
inline DecompositionTree excised_surgery(const Multigraph& x, const DecompositionTree& d) {
  auto pairs = excised_pairs_of(d);
  Multigraph xp = x;
  std::vector<int> fresh;
  for (auto [a, b] : pairs) fresh.push_back(xp.add_edge(a, b, -1));
  DecompositionTree t = triconnected_decompose(xp);
  t.excised_pairs = pairs;
  t.surgery_edges = fresh;
  std::set<int> fresh_set(fresh.begin(), fresh.end());
  for (Component& c : t.comps) {
    bool holds = std::any_of(c.edges.begin(), c.edges.end(),
                             [&](const DEdge& e) { return !e.is_virtual() && fresh_set.count(e.eid); });
    if (!holds) continue;
    if (c.kind != CompKind::Bond) throw IntegrityError("surgery edge landed outside a bond");
    c.kind = CompKind::ExcisedStar;
  }
  return t;
}

inline DecompositionTree decompose_with_surgery(const Multigraph& x) {
  DecompositionTree d = triconnected_decompose(x);
  return excised_surgery(x, d);
}

// Glue the components back: every real edge id must appear exactly once
// with its original endpoints, twins must agree on their endpoints.
inline Multigraph recompose(const DecompositionTree& t) {
  std::map<int, std::pair<int, int>> vpair;
  std::vector<int> seen(t.graph.edge_count(), 0);
  Multigraph out(t.graph.vertex_count());
  std::vector<const DEdge*> real(t.graph.edge_count(), nullptr);
  for (const Component& c : t.comps) {
    for (const DEdge& e : c.edges) {
      if (e.is_virtual()) {
        std::pair<int, int> mk{std::min(e.u, e.v), std::max(e.u, e.v)};
        auto [it, inserted] = vpair.emplace(e.vid, mk);
        if (!inserted && it->second != mk) throw IntegrityError("twin virtual edges disagree on endpoints");
        continue;
      }
      if (e.eid < 0 || e.eid >= t.graph.edge_count()) throw IntegrityError("component names an unknown edge");
      if (seen[e.eid]++) throw IntegrityError("edge appears in two components");
      const Edge& orig = t.graph.edge(e.eid);
      if (std::min(e.u, e.v) != std::min(orig.u, orig.v) || std::max(e.u, e.v) != std::max(orig.u, orig.v))
        throw IntegrityError("component edge endpoints drifted");
      real[e.eid] = &e;
    }
  }
  for (int i = 0; i < t.graph.edge_count(); ++i) {
    if (!real[i]) throw IntegrityError("edge missing from all components");
    out.add_edge(t.graph.edge(i).u, t.graph.edge(i).v, t.graph.edge(i).color);
  }
  return out;
}

// Debug dump: `node <id> <kind> <edges, v<vid> for virtual>` lines, then
// `link <node> v<vid> <node> v<vid>` lines.
inline std::string dump_tree(const DecompositionTree& t) {
  std::string s;
  for (int c = 0; c < static_cast<int>(t.comps.size()); ++c) {
    s += "node " + std::to_string(c) + " " + comp_kind_name(t.comps[c].kind);
    for (const DEdge& e : t.comps[c].edges)
      s += e.is_virtual() ? " v" + std::to_string(e.vid) : " " + std::to_string(e.eid);
    s += "\n";
  }
  for (const Link& l : t.links)
    s += "link " + std::to_string(l.comp_a) + " v" + std::to_string(l.vid) + " " +
         std::to_string(l.comp_b) + " v" + std::to_string(l.vid) + "\n";
  return s;
}

}  // namespace matiso
