#pragma once
// Graph isomorphism for coloured multigraphs: 1-dimensional colour
// refinement with individualisation backtracking, canonical certificates,
// AHU tree codes, and the path-gadget comparison used on decomposition
// components.

#include <map>
#include <string>

#include "matiso/multigraph.hpp"

namespace matiso {

struct ColoredGraph {
  Multigraph g;
  std::vector<int> vertex_colors;  // empty means all-zero

  int vcolor(int v) const {
    return vertex_colors.empty() ? 0 : vertex_colors.at(v);
  }
};

namespace gi_detail {

// Parallel edges are folded into a simple view whose edge classes encode the
// colour multiset of each parallel bundle. Classes are indexed jointly over
// all graphs in one call so they compare across graphs.
struct FoldedView {
  int n = 0;
  std::vector<std::vector<std::pair<int, int>>> adj;  // (neighbor, edge class)
  std::vector<int> init_colors;
  std::map<std::pair<int, int>, int> bundle_class;  // (u,v) u<v -> class
  std::vector<std::vector<int>> class_table;        // class id -> colour multiset
};

inline std::vector<FoldedView> fold_graphs(const std::vector<const ColoredGraph*>& gs) {
  std::map<std::pair<int, int>, std::vector<int>> bundles;  // per graph collected below
  // collect all bundle colour multisets for a joint class table
  std::vector<std::map<std::pair<int, int>, std::vector<int>>> per(gs.size());
  std::vector<std::vector<int>> keys_all;
  for (std::size_t gi = 0; gi < gs.size(); ++gi) {
    for (const Edge& e : gs[gi]->g.edges()) {
      auto key = std::minmax(e.u, e.v);
      per[gi][{key.first, key.second}].push_back(e.color);
    }
    for (auto& [k, v] : per[gi]) {
      std::sort(v.begin(), v.end());
      keys_all.push_back(v);
    }
  }
  std::sort(keys_all.begin(), keys_all.end());
  keys_all.erase(std::unique(keys_all.begin(), keys_all.end()), keys_all.end());
  auto class_of = [&](const std::vector<int>& v) {
    return static_cast<int>(std::lower_bound(keys_all.begin(), keys_all.end(), v) - keys_all.begin());
  };

  // joint vertex colour table
  std::vector<int> vcols;
  for (auto* g : gs)
    for (int v = 0; v < g->g.vertex_count(); ++v) vcols.push_back(g->vcolor(v));
  std::sort(vcols.begin(), vcols.end());
  vcols.erase(std::unique(vcols.begin(), vcols.end()), vcols.end());

  std::vector<FoldedView> out(gs.size());
  for (std::size_t gi = 0; gi < gs.size(); ++gi) {
    FoldedView& fv = out[gi];
    fv.class_table = keys_all;
    fv.n = gs[gi]->g.vertex_count();
    fv.adj.resize(fv.n);
    fv.init_colors.resize(fv.n);
    for (int v = 0; v < fv.n; ++v)
      fv.init_colors[v] = static_cast<int>(
          std::lower_bound(vcols.begin(), vcols.end(), gs[gi]->vcolor(v)) - vcols.begin());
    for (auto& [k, v] : per[gi]) {
      int cls = class_of(v);
      fv.bundle_class[k] = cls;
      fv.adj[k.first].push_back({k.second, cls});
      fv.adj[k.second].push_back({k.first, cls});
    }
  }
  return out;
}

// One joint refinement pass over all views; signatures are integer tuples
// and colours are reindexed by sorted rank, so the ids are
// isomorphism-invariant. Returns the joint class count.
inline int refine_pass(const std::vector<const FoldedView*>& views,
                       std::vector<std::vector<int>>& colors) {
  std::vector<std::vector<std::vector<int>>> sigs(views.size());
  std::vector<std::vector<int>> all;
  for (std::size_t gi = 0; gi < views.size(); ++gi) {
    sigs[gi].resize(views[gi]->n);
    for (int v = 0; v < views[gi]->n; ++v) {
      std::vector<std::pair<int, int>> nb;
      for (auto [w, cls] : views[gi]->adj[v]) nb.push_back({cls, colors[gi][w]});
      std::sort(nb.begin(), nb.end());
      std::vector<int> s{colors[gi][v]};
      for (auto [cls, c] : nb) {
        s.push_back(cls);
        s.push_back(c);
      }
      sigs[gi][v] = std::move(s);
      all.push_back(sigs[gi][v]);
    }
  }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  for (std::size_t gi = 0; gi < views.size(); ++gi)
    for (int v = 0; v < views[gi]->n; ++v)
      colors[gi][v] = static_cast<int>(
          std::lower_bound(all.begin(), all.end(), sigs[gi][v]) - all.begin());
  return static_cast<int>(all.size());
}

// A vertex's previous colour is part of its signature, so each pass refines
// the joint partition; it is stable exactly when the class count stops
// growing. (Label equality is the wrong exit test: reindexing may permute
// the ids of a partition that is already stable.)
inline void refine_to_fixpoint(const std::vector<const FoldedView*>& views,
                               std::vector<std::vector<int>>& colors) {
  int classes = -1;
  for (;;) {
    int next = refine_pass(views, colors);
    if (next == classes) return;
    classes = next;
  }
}

inline std::vector<std::vector<int>> color_classes(const std::vector<int>& colors) {
  std::map<int, std::vector<int>> by;
  for (int v = 0; v < static_cast<int>(colors.size()); ++v) by[colors[v]].push_back(v);
  std::vector<std::vector<int>> out;
  for (auto& [c, vs] : by) out.push_back(vs);
  return out;
}

// colour multiset as sorted (color,count) pairs
inline std::vector<std::pair<int, int>> color_histogram(const std::vector<int>& colors) {
  std::map<int, int> h;
  for (int c : colors) ++h[c];
  return {h.begin(), h.end()};
}

inline bool adjacency_matches(const FoldedView& a, const FoldedView& b, const std::vector<int>& map) {
  if (a.bundle_class.size() != b.bundle_class.size()) return false;
  for (auto& [k, cls] : a.bundle_class) {
    auto mk = std::minmax(map[k.first], map[k.second]);
    auto it = b.bundle_class.find({mk.first, mk.second});
    if (it == b.bundle_class.end() || it->second != cls) return false;
  }
  return true;
}

struct IsoSearch {
  const FoldedView* a;
  const FoldedView* b;
  std::vector<const FoldedView*> views;
  long nodes = 0;

  std::optional<std::vector<int>> run(std::vector<int> ca, std::vector<int> cb) {
    if (++nodes > 500000) throw CapacityError("isomorphism search exceeded its node budget");
    std::vector<std::vector<int>> cols{std::move(ca), std::move(cb)};
    refine_to_fixpoint({a, b}, cols);
    if (color_histogram(cols[0]) != color_histogram(cols[1])) return std::nullopt;
    // smallest non-singleton class, lowest colour id breaks ties
    auto classes = color_classes(cols[0]);
    const std::vector<int>* target = nullptr;
    for (auto& cl : classes)
      if (cl.size() > 1 && (!target || cl.size() < target->size())) target = &cl;
    if (!target) {
      // discrete: map by colour
      std::vector<int> map(a->n, -1);
      std::map<int, int> where;
      for (int v = 0; v < b->n; ++v) where[cols[1][v]] = v;
      for (int v = 0; v < a->n; ++v) map[v] = where[cols[0][v]];
      if (!adjacency_matches(*a, *b, map)) return std::nullopt;
      return map;
    }
    int va = (*target)[0];
    int fresh = static_cast<int>(cols[0].size() + cols[1].size()) + 7;
    for (int vb = 0; vb < b->n; ++vb) {
      if (cols[1][vb] != cols[0][va]) continue;
      auto ca2 = cols[0], cb2 = cols[1];
      ca2[va] = fresh;
      cb2[vb] = fresh;
      if (auto r = run(std::move(ca2), std::move(cb2))) return r;
    }
    return std::nullopt;
  }
};

}  // namespace gi_detail

// Vertex bijection g1 -> g2 preserving vertex colours and the colour
// multiset of every parallel bundle, or nullopt.
inline std::optional<std::vector<int>> graph_isomorphism(const ColoredGraph& g1,
                                                         const ColoredGraph& g2) {
  if (g1.g.vertex_count() != g2.g.vertex_count() || g1.g.edge_count() != g2.g.edge_count())
    return std::nullopt;
  auto views = gi_detail::fold_graphs({&g1, &g2});
  gi_detail::IsoSearch search;
  search.a = &views[0];
  search.b = &views[1];
  return search.run(views[0].init_colors, views[1].init_colors);
}

inline std::optional<std::vector<int>> graph_isomorphism(const Multigraph& g1, const Multigraph& g2) {
  return graph_isomorphism(ColoredGraph{g1, {}}, ColoredGraph{g2, {}});
}

// Expand a vertex witness into an edge bijection: parallel bundles are
// matched colour-by-colour in edge-id order.
inline std::optional<std::vector<int>> edge_bijection_from_vertex_map(const Multigraph& g1,
                                                                      const Multigraph& g2,
                                                                      const std::vector<int>& vmap) {
  if (g1.edge_count() != g2.edge_count()) return std::nullopt;
  std::map<std::tuple<int, int, int>, std::vector<int>> bundles2;
  for (int i = 0; i < g2.edge_count(); ++i) {
    const Edge& e = g2.edge(i);
    auto k = std::minmax(e.u, e.v);
    bundles2[{k.first, k.second, e.color}].push_back(i);
  }
  std::map<std::tuple<int, int, int>, std::size_t> used;
  std::vector<int> emap(g1.edge_count(), -1);
  for (int i = 0; i < g1.edge_count(); ++i) {
    const Edge& e = g1.edge(i);
    auto k = std::minmax(vmap[e.u], vmap[e.v]);
    std::tuple<int, int, int> key{k.first, k.second, e.color};
    auto it = bundles2.find(key);
    std::size_t& at = used[key];
    if (it == bundles2.end() || at >= it->second.size()) return std::nullopt;
    emap[i] = it->second[at++];
  }
  return emap;
}

// Edge bijection between edge-coloured multigraphs straight from a GI
// vertex witness; bundle colour classes make edge colours first-class in
// the search, so no gadget encoding is needed.
inline std::optional<std::vector<int>> colored_iso_edge_map(const Multigraph& g1,
                                                            const Multigraph& g2) {
  auto vmap = graph_isomorphism(g1, g2);
  if (!vmap) return std::nullopt;
  auto emap = edge_bijection_from_vertex_map(g1, g2, *vmap);
  if (!emap) throw IntegrityError("vertex witness without an edge bijection");
  return emap;
}

// Canonical certificate: equal strings iff the coloured multigraphs are
// isomorphic. Individualisation-refinement search over the target cell,
// keeping the lexicographically least leaf serialisation.
namespace gi_detail {

inline std::string leaf_certificate(const ColoredGraph& g, const FoldedView& view,
                                    const std::vector<int>& colors) {
  // order vertices by refined colour (discrete, so this is a permutation)
  std::vector<int> order(view.n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int x, int y) { return colors[x] < colors[y]; });
  std::vector<int> pos(view.n);
  for (int i = 0; i < view.n; ++i) pos[order[i]] = i;
  // class ids are call-local, so spell out each bundle's colour multiset;
  // certificates from separate calls then compare soundly
  std::string s = "n" + std::to_string(view.n) + ";";
  for (int i = 0; i < view.n; ++i) s += std::to_string(g.vcolor(order[i])) + ",";
  s += ";";
  std::vector<std::tuple<int, int, std::string>> rows;
  for (auto& [k, cls] : view.bundle_class) {
    auto mk = std::minmax(pos[k.first], pos[k.second]);
    std::string ms;
    for (int c : view.class_table[cls]) ms += std::to_string(c) + ".";
    rows.push_back({mk.first, mk.second, std::move(ms)});
  }
  std::sort(rows.begin(), rows.end());
  for (auto& [x, y, ms] : rows)
    s += std::to_string(x) + "-" + std::to_string(y) + ":" + ms + ";";
  return s;
}

inline void cert_search(const ColoredGraph& g, const FoldedView& view, std::vector<int> colors,
                        std::string& best, long& nodes) {
  if (++nodes > 200000)
    throw CapacityError("canonical certificate search exceeded its node budget");
  std::vector<std::vector<int>> cols{std::move(colors)};
  refine_to_fixpoint({&view}, cols);
  auto classes = color_classes(cols[0]);
  const std::vector<int>* target = nullptr;
  for (auto& cl : classes)
    if (cl.size() > 1 && (!target || cl.size() < target->size())) target = &cl;
  if (!target) {
    std::string leaf = leaf_certificate(g, view, cols[0]);
    if (best.empty() || leaf < best) best = std::move(leaf);
    return;
  }
  int fresh = static_cast<int>(cols[0].size()) + 7;
  for (int v : *target) {
    auto c2 = cols[0];
    c2[v] = fresh;
    cert_search(g, view, std::move(c2), best, nodes);
  }
}

}  // namespace gi_detail

inline std::string canonical_certificate(const ColoredGraph& g) {
  auto views = gi_detail::fold_graphs({&g});
  std::string best;
  long nodes = 0;
  gi_detail::cert_search(g, views[0], views[0].init_colors, best, nodes);
  return best;
}

inline std::string canonical_certificate(const Multigraph& g) {
  return canonical_certificate(ColoredGraph{g, {}});
}

// ---- tree codes ----

// AHU code of a coloured subtree: root r, edge toward parent blocked.
inline std::string ahu_subtree_code(const std::vector<std::vector<int>>& adj,
                                    const std::vector<int>& colors, int r, int parent) {
  std::vector<std::string> kids;
  for (int w : adj[r])
    if (w != parent) kids.push_back(ahu_subtree_code(adj, colors, w, r));
  std::sort(kids.begin(), kids.end());
  std::string s = "(" + std::to_string(colors[r]);
  for (auto& k : kids) s += k;
  return s + ")";
}

inline std::vector<int> tree_centers(const std::vector<std::vector<int>>& adj) {
  int n = static_cast<int>(adj.size());
  if (n == 0) return {};
  if (n == 1) return {0};
  std::vector<int> deg(n), layer;
  for (int v = 0; v < n; ++v) deg[v] = static_cast<int>(adj[v].size());
  std::vector<bool> removed(n, false);
  int remaining = n;
  for (int v = 0; v < n; ++v)
    if (deg[v] <= 1) layer.push_back(v);
  while (remaining > 2) {
    std::vector<int> next;
    for (int v : layer) {
      removed[v] = true;
      --remaining;
      for (int w : adj[v])
        if (!removed[w] && --deg[w] == 1) next.push_back(w);
    }
    layer = std::move(next);
  }
  std::vector<int> centers;
  for (int v = 0; v < n; ++v)
    if (!removed[v]) centers.push_back(v);
  return centers;
}

// Canonical code of a coloured tree, rooted at its centre (a virtual
// super-root joins the two halves of a bicentred tree).
inline std::string tree_code(const std::vector<std::vector<int>>& adj, const std::vector<int>& colors) {
  auto centers = tree_centers(adj);
  if (centers.empty()) return "()";
  if (centers.size() == 1) return ahu_subtree_code(adj, colors, centers[0], -1);
  std::string a = ahu_subtree_code(adj, colors, centers[0], centers[1]);
  std::string b = ahu_subtree_code(adj, colors, centers[1], centers[0]);
  if (b < a) std::swap(a, b);
  return "(#" + a + b + ")";
}

// ---- coloured comparison of decomposition components ----

// Both graphs must be simple with no cycle longer than their vertex count
// (always true) and colours >= 0. Colours are folded through the path
// gadget, plain isomorphism decides, and the vertex witness converts back to
// an edge bijection on the original edges.
inline std::optional<std::vector<int>> colored_3conn_2iso(const Multigraph& g1, const Multigraph& g2) {
  if (g1.edge_count() != g2.edge_count()) return std::nullopt;
  Multigraph f1 = color_gadget_graphic(g1);
  Multigraph f2 = color_gadget_graphic(g2);
  auto vmap = graph_isomorphism(f1, f2);
  if (!vmap) return std::nullopt;
  // map original edges through endpoints; originals occupy ids 0..m-1
  std::map<std::pair<int, int>, int> lookup;
  for (int i = 0; i < g2.edge_count(); ++i) {
    auto k = std::minmax(g2.edge(i).u, g2.edge(i).v);
    if (!lookup.emplace(std::pair{k.first, k.second}, i).second)
      throw IntegrityError("colored_3conn_2iso expects simple components");
  }
  std::vector<int> emap(g1.edge_count(), -1);
  for (int i = 0; i < g1.edge_count(); ++i) {
    auto k = std::minmax((*vmap)[g1.edge(i).u], (*vmap)[g1.edge(i).v]);
    auto it = lookup.find({k.first, k.second});
    if (it == lookup.end()) throw IntegrityError("gadget witness lost an original edge");
    emap[i] = it->second;
  }
  return emap;
}

// Certificate of the gadgeted form; equal strings iff the coloured
// components are isomorphic.
inline std::string gadgeted_certificate(const Multigraph& g) {
  return canonical_certificate(color_gadget_graphic(g));
}

}  // namespace matiso
