#pragma once
// Planarity test: simplify, split into biconnected blocks, then grow a
// planar embedding face by face (Demoucron-Malgrange-Pertuiset). Desk-scale
// quadratic; returns a verdict only, no embedding structure.

#include <algorithm>
#include <optional>
#include <set>
#include <vector>

#include "matiso/multigraph.hpp"

namespace matiso {
namespace planarity_detail {

// adjacency of the simplified block; vertices are block-local
struct SimpleBlock {
  int n = 0;
  std::vector<std::vector<int>> adj;
  int edges = 0;
};

// a face is its boundary cycle as a vertex list
using Face = std::vector<int>;

inline bool face_contains_all(const Face& f, const std::vector<int>& req) {
  for (int v : req)
    if (std::find(f.begin(), f.end(), v) == f.end()) return false;
  return true;
}

// one fragment relative to the embedded subgraph: attachment vertices plus
// enough structure to extract an insertion path
struct Fragment {
  std::vector<int> attach;         // embedded vertices it touches, sorted
  std::vector<int> inner;          // non-embedded vertices, empty for a chord
  std::pair<int, int> chord{-1, -1};
};

inline std::optional<std::vector<int>> insertion_path(const SimpleBlock& g, const Fragment& fr,
                                                      const std::vector<char>& embedded) {
  if (fr.inner.empty()) return std::vector<int>{fr.chord.first, fr.chord.second};
  // BFS from one attachment through inner vertices to a different attachment
  int start = fr.attach[0];
  std::vector<int> prev(g.n, -2);
  std::vector<int> queue{start};
  prev[start] = -1;
  std::set<int> inner_set(fr.inner.begin(), fr.inner.end());
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    int v = queue[qi];
    for (int w : g.adj[v]) {
      if (prev[w] != -2) continue;
      if (embedded[w]) {
        if (w == start || (v == start)) continue;  // need an interior vertex first
        prev[w] = v;
        std::vector<int> path{w};
        for (int x = v; x != -1; x = prev[x]) path.push_back(x);
        std::reverse(path.begin(), path.end());
        return path;
      }
      if (!inner_set.count(w)) continue;
      prev[w] = v;
      queue.push_back(w);
    }
  }
  return std::nullopt;
}

inline bool dmp_planar(const SimpleBlock& g) {
  if (g.n <= 4 || g.edges <= 8) return true;  // too small for a Kuratowski subgraph
  if (g.edges > 3 * g.n - 6) return false;

  // start from any cycle: first non-tree BFS edge closes one through the LCA
  std::vector<int> parent(g.n, -2), depth(g.n, 0), order{0};
  parent[0] = -1;
  std::vector<int> cyc;
  for (std::size_t qi = 0; qi < order.size() && cyc.empty(); ++qi) {
    int v = order[qi];
    for (int w : g.adj[v]) {
      if (parent[w] == -2) {
        parent[w] = v;
        depth[w] = depth[v] + 1;
        order.push_back(w);
        continue;
      }
      if (w == parent[v] || parent[w] == v) continue;
      int x = v, y = w;
      std::vector<int> px{x}, py{y};
      while (x != y) {
        if (depth[x] >= depth[y]) px.push_back(x = parent[x]);
        if (x == y) break;
        if (depth[y] > depth[x]) py.push_back(y = parent[y]);
      }
      cyc = px;  // v .. lca, then back down to w
      for (int i = static_cast<int>(py.size()) - 2; i >= 0; --i) cyc.push_back(py[i]);
      break;
    }
  }
  if (cyc.empty()) return true;  // acyclic piece

  std::vector<char> embedded(g.n, 0);
  std::set<std::pair<int, int>> emb_edges;
  auto add_edge = [&](int u, int v) { emb_edges.insert(std::minmax(u, v)); };
  for (std::size_t i = 0; i < cyc.size(); ++i) {
    embedded[cyc[i]] = 1;
    add_edge(cyc[i], cyc[(i + 1) % cyc.size()]);
  }
  std::vector<Face> faces{cyc, cyc};  // interior and exterior share the boundary

  for (;;) {
    // fragments: chords first, then components of the non-embedded part
    std::vector<Fragment> frags;
    for (int u = 0; u < g.n; ++u) {
      if (!embedded[u]) continue;
      for (int v : g.adj[u]) {
        if (u >= v || !embedded[v]) continue;
        if (emb_edges.count({u, v})) continue;
        Fragment fr;
        fr.attach = {u, v};
        fr.chord = {u, v};
        frags.push_back(fr);
      }
    }
    std::vector<int> comp(g.n, -1);
    int ncomp = 0;
    for (int s = 0; s < g.n; ++s) {
      if (embedded[s] || comp[s] >= 0) continue;
      std::vector<int> queue{s};
      comp[s] = ncomp;
      for (std::size_t qi = 0; qi < queue.size(); ++qi)
        for (int w : g.adj[queue[qi]])
          if (!embedded[w] && comp[w] < 0) {
            comp[w] = ncomp;
            queue.push_back(w);
          }
      ++ncomp;
    }
    std::vector<Fragment> by_comp(ncomp);
    for (int v = 0; v < g.n; ++v) {
      if (comp[v] < 0) continue;
      by_comp[comp[v]].inner.push_back(v);
      for (int w : g.adj[v])
        if (embedded[w]) by_comp[comp[v]].attach.push_back(w);
    }
    for (Fragment& fr : by_comp) {
      std::sort(fr.attach.begin(), fr.attach.end());
      fr.attach.erase(std::unique(fr.attach.begin(), fr.attach.end()), fr.attach.end());
      frags.push_back(std::move(fr));
    }
    if (frags.empty()) return true;

    // admissible faces per fragment; prefer a forced fragment
    int pick = -1, pick_face = -1;
    for (std::size_t fi = 0; fi < frags.size(); ++fi) {
      int count = 0, first = -1;
      for (std::size_t k = 0; k < faces.size(); ++k)
        if (face_contains_all(faces[k], frags[fi].attach)) {
          ++count;
          if (first < 0) first = static_cast<int>(k);
        }
      if (count == 0) return false;
      if (count == 1 || pick < 0) {
        pick = static_cast<int>(fi);
        pick_face = first;
        if (count == 1) break;
      }
    }

    auto path = insertion_path(g, frags[pick], embedded);
    if (!path) throw IntegrityError("planarity fragment with no insertion path");
    const Face f = faces[pick_face];
    int a = (*path)[0], b = (*path)[static_cast<int>(path->size()) - 1];
    auto ia = std::find(f.begin(), f.end(), a) - f.begin();
    auto ib = std::find(f.begin(), f.end(), b) - f.begin();
    // arcs a -> b and b -> a along the old boundary
    Face arc1, arc2;
    for (std::size_t i = ia;; i = (i + 1) % f.size()) {
      arc1.push_back(f[i]);
      if (static_cast<int>(i) == static_cast<int>(ib)) break;
    }
    for (std::size_t i = ib;; i = (i + 1) % f.size()) {
      arc2.push_back(f[i]);
      if (static_cast<int>(i) == static_cast<int>(ia)) break;
    }
    Face nf1 = arc1, nf2 = arc2;
    for (int i = static_cast<int>(path->size()) - 2; i >= 1; --i) nf1.push_back((*path)[i]);
    for (std::size_t i = 1; i + 1 < path->size(); ++i) nf2.push_back((*path)[i]);
    faces[pick_face] = std::move(nf1);
    faces.push_back(std::move(nf2));
    for (std::size_t i = 0; i + 1 < path->size(); ++i) {
      add_edge((*path)[i], (*path)[i + 1]);
      embedded[(*path)[i]] = 1;
    }
    embedded[b] = 1;
  }
}

}  // namespace planarity_detail

// Parallel edges never affect planarity; each biconnected block embeds
// independently.
inline bool is_planar(const Multigraph& g) {
  auto bd = biconnected_components(g);
  for (const auto& blk : bd.blocks) {
    std::vector<int> verts;
    for (int e : blk) {
      verts.push_back(g.edge(e).u);
      verts.push_back(g.edge(e).v);
    }
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    auto local = [&](int v) {
      return static_cast<int>(std::lower_bound(verts.begin(), verts.end(), v) - verts.begin());
    };
    planarity_detail::SimpleBlock sb;
    sb.n = static_cast<int>(verts.size());
    sb.adj.resize(sb.n);
    std::set<std::pair<int, int>> seen;
    for (int e : blk) {
      int u = local(g.edge(e).u), v = local(g.edge(e).v);
      auto k = std::minmax(u, v);
      if (!seen.insert(k).second) continue;
      sb.adj[u].push_back(v);
      sb.adj[v].push_back(u);
      ++sb.edges;
    }
    if (!planarity_detail::dmp_planar(sb)) return false;
  }
  return true;
}

}  // namespace matiso
