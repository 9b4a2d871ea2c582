#pragma once
// Loopless multigraphs with stable edge ids, the graphic matroid oracle,
// GF(2) cycle-space machinery, Whitney operations and the generators built
// from them.

#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "matiso/matroid.hpp"

namespace matiso {

struct Edge {
  int u = -1, v = -1;
  int color = 0;

  bool touches(int x) const { return u == x || v == x; }
  int other(int x) const { return u == x ? v : u; }
};

class Multigraph {
 public:
  Multigraph() = default;
  explicit Multigraph(int n) : n_(n) {
    if (n < 0) throw InputError("negative vertex count");
  }

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  int add_vertex() { return n_++; }

  int add_edge(int u, int v, int color = 0) {
    if (u < 0 || u >= n_ || v < 0 || v >= n_)
      throw InputError("edge endpoint out of range");
    if (u == v) throw InputError("self-loops are not supported");
    edges_.push_back({u, v, color});
    return edge_count() - 1;
  }

  const Edge& edge(int i) const { return edges_.at(i); }
  Edge& edge(int i) { return edges_.at(i); }
  const std::vector<Edge>& edges() const { return edges_; }

  bool has_colors() const {
    for (const Edge& e : edges_)
      if (e.color != 0) return true;
    return false;
  }

  std::vector<int> edge_colors() const {
    std::vector<int> c;
    c.reserve(edges_.size());
    for (const Edge& e : edges_) c.push_back(e.color);
    return c;
  }

  std::vector<int> degrees() const {
    std::vector<int> d(n_, 0);
    for (const Edge& e : edges_) {
      ++d[e.u];
      ++d[e.v];
    }
    return d;
  }

  bool is_simple() const {
    std::set<std::pair<int, int>> seen;
    for (const Edge& e : edges_)
      if (!seen.insert({std::min(e.u, e.v), std::max(e.u, e.v)}).second) return false;
    return true;
  }

  // incidence[v] = edge ids touching v
  std::vector<std::vector<int>> incidence() const {
    std::vector<std::vector<int>> inc(n_);
    for (int i = 0; i < edge_count(); ++i) {
      inc[edges_[i].u].push_back(i);
      inc[edges_[i].v].push_back(i);
    }
    return inc;
  }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
};

namespace detail {

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[a] = b;
    return true;
  }

 private:
  std::vector<int> parent_;
};

}  // namespace detail

// vertex -> component id, ids numbered by first appearance
inline std::vector<int> vertex_components(const Multigraph& g) {
  detail::UnionFind uf(g.vertex_count());
  for (const Edge& e : g.edges()) uf.unite(e.u, e.v);
  std::vector<int> id(g.vertex_count(), -1);
  int next = 0;
  for (int v = 0; v < g.vertex_count(); ++v) {
    int r = uf.find(v);
    if (id[r] == -1) id[r] = next++;
    id[v] = id[r];
  }
  return id;
}

inline int component_count(const Multigraph& g) {
  auto id = vertex_components(g);
  return id.empty() ? 0 : *std::max_element(id.begin(), id.end()) + 1;
}

inline bool is_connected(const Multigraph& g) { return component_count(g) <= 1; }

// A subset of edges is independent iff it contains no cycle.
class GraphicOracle final : public MatroidOracle {
 public:
  explicit GraphicOracle(Multigraph g) : MatroidOracle(g.edge_count()), g_(std::move(g)) {}

  const Multigraph& graph() const { return g_; }

 private:
  bool indep(Mask s) const override {
    detail::UnionFind uf(g_.vertex_count());
    for (int i : mask_elements(s)) {
      const Edge& e = g_.edge(i);
      if (!uf.unite(e.u, e.v)) return false;
    }
    return true;
  }
  Multigraph g_;
};

// ---- GF(2) cycle space ----

struct Gf2Vec {
  int n = 0;
  std::vector<std::uint64_t> w;

  explicit Gf2Vec(int n = 0) : n(n), w((n + 63) / 64, 0) {}
  bool get(int i) const { return (w[i / 64] >> (i % 64)) & 1; }
  void flip(int i) { w[i / 64] ^= std::uint64_t{1} << (i % 64); }
  void operator^=(const Gf2Vec& o) {
    for (std::size_t i = 0; i < w.size(); ++i) w[i] ^= o.w[i];
  }
  bool any() const {
    for (auto x : w)
      if (x) return true;
    return false;
  }
  int lowest() const {
    for (std::size_t i = 0; i < w.size(); ++i)
      if (w[i]) return static_cast<int>(i * 64) + std::countr_zero(w[i]);
    return -1;
  }
};

// Incremental elimination basis for GF(2) vectors.
class Gf2Basis {
 public:
  // Returns true if v was independent of the current span (and absorbs it).
  bool add(Gf2Vec v) {
    reduce(v);
    if (!v.any()) return false;
    rows_.push_back(std::move(v));
    std::sort(rows_.begin(), rows_.end(),
              [](const Gf2Vec& a, const Gf2Vec& b) { return a.lowest() < b.lowest(); });
    return true;
  }
  bool contains(Gf2Vec v) const {
    reduce(v);
    return !v.any();
  }
  int rank() const { return static_cast<int>(rows_.size()); }

 private:
  void reduce(Gf2Vec& v) const {
    for (const Gf2Vec& r : rows_)
      if (v.get(r.lowest())) v ^= r;
  }
  std::vector<Gf2Vec> rows_;
};

struct CycleBasis {
  int m = 0;
  std::vector<Gf2Vec> cycles;  // one fundamental cycle per non-tree edge
};

// DFS spanning forest; one fundamental cycle per non-tree edge. The basis has
// m - n + c vectors.
inline CycleBasis cycle_basis(const Multigraph& g) {
  int n = g.vertex_count(), m = g.edge_count();
  auto inc = g.incidence();
  std::vector<int> parent_edge(n, -1), order;
  std::vector<bool> seen(n, false), tree_edge(m, false);
  for (int root = 0; root < n; ++root) {
    if (seen[root]) continue;
    seen[root] = true;
    std::vector<int> stack{root};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int ei : inc[v]) {
        int w = g.edge(ei).other(v);
        if (!seen[w]) {
          seen[w] = true;
          parent_edge[w] = ei;
          tree_edge[ei] = true;
          stack.push_back(w);
        }
      }
    }
  }
  // depth for path walking
  std::vector<int> depth(n, 0);
  std::vector<int> topo(n);
  std::iota(topo.begin(), topo.end(), 0);
  // compute depths by repeated walking (graphs are desk-scale)
  auto walk_depth = [&](int v) {
    int d = 0;
    while (parent_edge[v] != -1) {
      v = g.edge(parent_edge[v]).other(v);
      ++d;
    }
    return d;
  };
  for (int v = 0; v < n; ++v) depth[v] = walk_depth(v);

  CycleBasis basis;
  basis.m = m;
  for (int ei = 0; ei < m; ++ei) {
    if (tree_edge[ei]) continue;
    Gf2Vec cyc(m);
    cyc.flip(ei);
    int a = g.edge(ei).u, b = g.edge(ei).v;
    while (a != b) {
      if (depth[a] < depth[b]) std::swap(a, b);
      cyc.flip(parent_edge[a]);
      a = g.edge(parent_edge[a]).other(a);
    }
    basis.cycles.push_back(std::move(cyc));
  }
  return basis;
}

// An edge set lies in the cycle space iff every vertex has even degree in it.
inline bool in_cycle_space(const Multigraph& g, const Gf2Vec& s) {
  std::vector<int> deg(g.vertex_count(), 0);
  for (int i = 0; i < g.edge_count(); ++i) {
    if (!s.get(i)) continue;
    ++deg[g.edge(i).u];
    ++deg[g.edge(i).v];
  }
  for (int d : deg)
    if (d % 2) return false;
  return true;
}

inline Gf2Vec permute_vec(const Gf2Vec& v, const std::vector<int>& perm) {
  Gf2Vec out(v.n);
  for (int i = 0; i < v.n; ++i)
    if (v.get(i)) out.flip(perm[i]);
  return out;
}

// Membership test for Aut(M(X)): an edge permutation is a matroid
// automorphism iff it maps a cycle basis into the cycle space while
// preserving its GF(2) rank.
inline bool is_matroid_automorphism(const Multigraph& g, const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != g.edge_count())
    throw InputError("permutation length does not match the edge count");
  IsoWitness w{perm};
  if (!w.is_permutation()) throw InputError("edge map is not a permutation");
  CycleBasis basis = cycle_basis(g);
  Gf2Basis images;
  for (const Gf2Vec& c : basis.cycles) {
    Gf2Vec img = permute_vec(c, perm);
    if (!in_cycle_space(g, img)) return false;
    images.add(img);
  }
  return images.rank() == static_cast<int>(basis.cycles.size());
}

// Literal linear-system variant: solvable coefficients x with
// perm(b_i) = sum_k x_{ik} b_k. Slower; kept as a cross-check.
inline bool is_matroid_automorphism_by_system(const Multigraph& g, const std::vector<int>& perm) {
  CycleBasis basis = cycle_basis(g);
  Gf2Basis span;
  for (const Gf2Vec& c : basis.cycles) span.add(c);
  for (const Gf2Vec& c : basis.cycles) {
    if (!span.contains(permute_vec(c, perm))) return false;
  }
  // rank of the permuted family
  Gf2Basis images;
  for (const Gf2Vec& c : basis.cycles) images.add(permute_vec(c, perm));
  return images.rank() == static_cast<int>(basis.cycles.size());
}

// ---- Whitney operations ----

// Merge vertex w into v; v and w must lie in distinct components.
inline Multigraph whitney_identify(const Multigraph& g, int v, int w) {
  if (v < 0 || w < 0 || v >= g.vertex_count() || w >= g.vertex_count() || v == w)
    throw InputError("identify: bad vertex pair");
  auto comp = vertex_components(g);
  if (comp[v] == comp[w]) throw InputError("identify: vertices share a component");
  Multigraph out(g.vertex_count() - 1);
  auto remap = [&](int x) {
    if (x == w) return v > w ? v - 1 : v;
    return x > w ? x - 1 : x;
  };
  for (const Edge& e : g.edges()) out.add_edge(remap(e.u), remap(e.v), e.color);
  return out;
}

// Split vertex v: the listed edges (all incident to v) move their v-endpoint
// to a fresh vertex. Valid cleavings separate whole blocks, so the result
// must gain a component.
inline Multigraph whitney_cleave(const Multigraph& g, int v, const std::vector<int>& moved_edges) {
  if (v < 0 || v >= g.vertex_count()) throw InputError("cleave: bad vertex");
  std::vector<bool> moved(g.edge_count(), false);
  for (int ei : moved_edges) {
    if (ei < 0 || ei >= g.edge_count() || !g.edge(ei).touches(v))
      throw InputError("cleave: edge not incident to the cleaved vertex");
    moved[ei] = true;
  }
  Multigraph out(g.vertex_count() + 1);
  int fresh = g.vertex_count();
  for (int i = 0; i < g.edge_count(); ++i) {
    const Edge& e = g.edge(i);
    int u = e.u, w = e.v;
    if (moved[i]) {
      if (u == v) u = fresh;
      if (w == v) w = fresh;
    }
    out.add_edge(u, w, e.color);
  }
  if (component_count(out) != component_count(g) + 1)
    throw InputError("cleave: chosen edges do not split off whole blocks");
  return out;
}

// Swap the endpoint roles of u and v on one side of a separating pair.
inline Multigraph whitney_twist(const Multigraph& g, int u, int v, const std::vector<int>& side) {
  if (u < 0 || v < 0 || u >= g.vertex_count() || v >= g.vertex_count() || u == v)
    throw InputError("twist: bad separating pair");
  std::vector<bool> in_side(g.vertex_count(), false);
  for (int x : side) {
    if (x < 0 || x >= g.vertex_count() || x == u || x == v)
      throw InputError("twist: side contains the pair or a bad vertex");
    in_side[x] = true;
  }
  if (side.empty()) throw InputError("twist: empty side");
  bool proper = false;  // some vertex outside side u {u,v}
  for (int x = 0; x < g.vertex_count(); ++x)
    if (!in_side[x] && x != u && x != v) proper = true;
  if (!proper) throw InputError("twist: side must be a proper part of the graph");
  for (const Edge& e : g.edges()) {
    if (in_side[e.u] == in_side[e.v]) continue;
    int outside = in_side[e.u] ? e.v : e.u;
    if (outside != u && outside != v)
      throw InputError("twist: side is not closed off by the pair");
  }
  Multigraph out(g.vertex_count());
  for (const Edge& e : g.edges()) {
    int a = e.u, b = e.v;
    if (in_side[a] || in_side[b]) {
      auto swapuv = [&](int x) { return x == u ? v : (x == v ? u : x); };
      if (!in_side[a]) a = swapuv(a);
      if (!in_side[b]) b = swapuv(b);
    }
    out.add_edge(a, b, e.color);
  }
  return out;
}

// ---- biconnected components ----

struct BlockDecomposition {
  std::vector<std::vector<int>> blocks;  // edge ids per block
  std::vector<int> cut_vertices;
  std::vector<int> block_of_edge;
};

inline BlockDecomposition biconnected_components(const Multigraph& g) {
  int n = g.vertex_count(), m = g.edge_count();
  auto inc = g.incidence();
  BlockDecomposition out;
  out.block_of_edge.assign(m, -1);
  std::vector<int> num(n, -1), low(n, 0), parent(n, -1);
  std::vector<bool> is_cut(n, false);
  std::vector<int> edge_stack;
  int counter = 0;

  // iterative DFS
  struct Frame {
    int v;
    std::size_t idx;
    int via_edge;
  };
  for (int root = 0; root < n; ++root) {
    if (num[root] != -1) continue;
    std::vector<Frame> stack{{root, 0, -1}};
    num[root] = low[root] = counter++;
    int root_children = 0;
    while (!stack.empty()) {
      Frame& f = stack.back();
      if (f.idx < inc[f.v].size()) {
        int ei = inc[f.v][f.idx++];
        if (ei == f.via_edge) continue;
        int w = g.edge(ei).other(f.v);
        if (num[w] == -1) {
          edge_stack.push_back(ei);
          num[w] = low[w] = counter++;
          parent[w] = f.v;
          if (f.v == root) ++root_children;
          stack.push_back({w, 0, ei});
        } else if (num[w] < num[f.v]) {
          edge_stack.push_back(ei);
          low[f.v] = std::min(low[f.v], num[w]);
        }
      } else {
        int v = f.v;
        int via = f.via_edge;
        stack.pop_back();
        if (stack.empty()) break;
        int p = stack.back().v;
        low[p] = std::min(low[p], low[v]);
        if (low[v] >= num[p]) {
          // p closes a block
          std::vector<int> block;
          while (true) {
            int ei = edge_stack.back();
            edge_stack.pop_back();
            block.push_back(ei);
            if (ei == via) break;
          }
          for (int ei : block) out.block_of_edge[ei] = static_cast<int>(out.blocks.size());
          out.blocks.push_back(std::move(block));
          if (p != root) is_cut[p] = true;
        }
      }
    }
    if (root_children >= 2) is_cut[root] = true;
  }
  for (int v = 0; v < n; ++v)
    if (is_cut[v]) out.cut_vertices.push_back(v);
  return out;
}

// ---- separating pairs ----

// Components of g minus {u,v}, as vertex lists (pair excluded).
inline std::vector<std::vector<int>> components_without_pair(const Multigraph& g, int u, int v) {
  detail::UnionFind uf(g.vertex_count());
  for (const Edge& e : g.edges())
    if (!e.touches(u) && !e.touches(v)) uf.unite(e.u, e.v);
  std::vector<std::vector<int>> comps;
  std::vector<int> idx(g.vertex_count(), -1);
  for (int x = 0; x < g.vertex_count(); ++x) {
    if (x == u || x == v) continue;
    int r = uf.find(x);
    if (idx[r] == -1) {
      idx[r] = static_cast<int>(comps.size());
      comps.emplace_back();
    }
    comps[idx[r]].push_back(x);
  }
  return comps;
}

// Separating pairs of a connected graph: removing the pair leaves >= 2
// components among the remaining vertices.
inline std::vector<std::pair<int, int>> separating_pairs(const Multigraph& g) {
  std::vector<std::pair<int, int>> out;
  for (int u = 0; u < g.vertex_count(); ++u)
    for (int v = u + 1; v < g.vertex_count(); ++v)
      if (components_without_pair(g, u, v).size() >= 2) out.emplace_back(u, v);
  return out;
}

// Simple, >= 4 vertices, connected, no cut vertex, no separating pair.
inline bool is_three_connected(const Multigraph& g) {
  if (g.vertex_count() < 4 || !g.is_simple() || !is_connected(g)) return false;
  for (int v = 0; v < g.vertex_count(); ++v) {
    detail::UnionFind uf(g.vertex_count());
    for (const Edge& e : g.edges())
      if (!e.touches(v)) uf.unite(e.u, e.v);
    std::set<int> roots;
    for (int x = 0; x < g.vertex_count(); ++x)
      if (x != v) roots.insert(uf.find(x));
    if (roots.size() > 1) return false;
  }
  return separating_pairs(g).empty();
}

// ---- generators ----

// X(k): vertices x_i, y_j, z_t, u_{i,j}; u_{i,j} joins x_i, y_j and
// z_{(i+j) mod k}. 3k + k^2 vertices, 3k^2 edges; 3-connected for k >= 3.
inline Multigraph gen_modk_gadget(int k) {
  if (k < 3) throw InputError("modk gadget needs k >= 3");
  Multigraph g(3 * k + k * k);
  auto x = [&](int i) { return i; };
  auto y = [&](int j) { return k + j; };
  auto z = [&](int t) { return 2 * k + t; };
  auto u = [&](int i, int j) { return 3 * k + i * k + j; };
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      g.add_edge(x(i), u(i, j));
      g.add_edge(y(j), u(i, j));
      g.add_edge(u(i, j), z((i + j) % k));
    }
  return g;
}

// The (a,b)-shift automorphism of X(k) as an edge permutation.
inline std::vector<int> modk_shift_permutation(int k, int a, int b) {
  auto eid = [&](int i, int j, int t) { return 3 * (i * k + j) + t; };
  std::vector<int> perm(3 * k * k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      for (int t = 0; t < 3; ++t)
        perm[eid(i, j, t)] = eid((i + a) % k, (j + b) % k, t);
  return perm;
}

inline int rand_int(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

inline Multigraph random_connected_multigraph(std::mt19937_64& rng, int n, int m) {
  if (n < 1 || (n == 1 && m > 0)) throw InputError("random graph: bad parameters");
  if (m < n - 1) n = m + 1;
  Multigraph g(n);
  for (int v = 1; v < n; ++v) g.add_edge(rand_int(rng, 0, v - 1), v);
  while (g.edge_count() < m) {
    int u = rand_int(rng, 0, n - 1), v = rand_int(rng, 0, n - 1);
    if (u == v) continue;
    g.add_edge(u, v);
  }
  return g;
}

inline Multigraph random_multigraph(std::mt19937_64& rng, int n, int m) {
  Multigraph g(n);
  while (g.edge_count() < m) {
    int u = rand_int(rng, 0, n - 1), v = rand_int(rng, 0, n - 1);
    if (u == v) continue;
    g.add_edge(u, v);
  }
  return g;
}

struct WhitneyPair {
  Multigraph first, second;
  std::vector<std::string> log;  // replayable op lines
};

// Apply ops sampled from {twist, cleave, identify}; the result is always
// 2-isomorphic to the input. Inapplicable draws are logged and skipped.
inline WhitneyPair random_2iso_pair(const Multigraph& start, int ops, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  WhitneyPair out{start, start, {}};
  if (ops < 0) ops = std::max(0, start.vertex_count() - 2);  // Truemper-style budget
  Multigraph cur = start;
  for (int step = 0; step < ops; ++step) {
    struct Candidate {
      int kind;  // 0 twist, 1 cleave, 2 identify
      int a, b;
      std::vector<int> list;
    };
    std::vector<Candidate> cands;
    for (int u = 0; u < cur.vertex_count(); ++u)
      for (int v = u + 1; v < cur.vertex_count(); ++v) {
        auto comps = components_without_pair(cur, u, v);
        if (comps.size() < 2) continue;
        for (auto& side : comps) cands.push_back({0, u, v, side});
      }
    auto blocks = biconnected_components(cur);
    for (int v : blocks.cut_vertices) {
      std::vector<int> incident_blocks;
      for (std::size_t b = 0; b < blocks.blocks.size(); ++b)
        for (int ei : blocks.blocks[b])
          if (cur.edge(ei).touches(v)) {
            incident_blocks.push_back(static_cast<int>(b));
            break;
          }
      if (incident_blocks.size() < 2) continue;
      // move a random nonempty proper subset of incident blocks
      Candidate c{1, v, -1, {}};
      std::uint64_t pick = 1 + rng() % ((std::uint64_t{1} << incident_blocks.size()) - 2 + 1);
      if (pick == (std::uint64_t{1} << incident_blocks.size()) - 1) pick = 1;  // keep proper
      for (std::size_t i = 0; i < incident_blocks.size(); ++i)
        if ((pick >> i) & 1)
          for (int ei : blocks.blocks[incident_blocks[i]])
            if (cur.edge(ei).touches(v)) c.list.push_back(ei);
      if (!c.list.empty()) cands.push_back(c);
    }
    auto comp = vertex_components(cur);
    int ncomp = cur.vertex_count() ? *std::max_element(comp.begin(), comp.end()) + 1 : 0;
    if (ncomp >= 2) {
      for (int a = 0; a < cur.vertex_count(); ++a)
        for (int b = 0; b < cur.vertex_count(); ++b)
          if (comp[a] != comp[b] && a < b) cands.push_back({2, a, b, {}});
    }
    if (cands.empty()) {
      out.log.push_back("skip");
      continue;
    }
    const Candidate& c = cands[rng() % cands.size()];
    std::ostringstream line;
    try {
      if (c.kind == 0) {
        cur = whitney_twist(cur, c.a, c.b, c.list);
        line << "twist " << c.a << ' ' << c.b << " |";
        for (int x : c.list) line << ' ' << x;
      } else if (c.kind == 1) {
        cur = whitney_cleave(cur, c.a, c.list);
        line << "cleave " << c.a << " |";
        for (int x : c.list) line << ' ' << x;
      } else {
        cur = whitney_identify(cur, c.a, c.b);
        line << "identify " << c.a << ' ' << c.b;
      }
      out.log.push_back(line.str());
    } catch (const InputError&) {
      out.log.push_back("skip");
    }
  }
  out.second = cur;
  return out;
}

// Replay one log line produced by random_2iso_pair.
inline Multigraph replay_whitney_op(const Multigraph& g, const std::string& line) {
  std::istringstream in(line);
  std::string op;
  in >> op;
  if (op == "skip") return g;
  if (op == "identify") {
    int a, b;
    in >> a >> b;
    return whitney_identify(g, a, b);
  }
  if (op == "twist" || op == "cleave") {
    int a, b = -1;
    in >> a;
    if (op == "twist") in >> b;
    std::string bar;
    in >> bar;
    if (bar != "|") throw InputError("bad op line: " + line);
    std::vector<int> list;
    int x;
    while (in >> x) list.push_back(x);
    return op == "twist" ? whitney_twist(g, a, b, list) : whitney_cleave(g, a, list);
  }
  throw InputError("unknown op line: " + line);
}

// ---- colour gadget ----

// Fold edge colours into plain structure: each coloured edge (u,v) gains a
// fresh path of length n + colour between u and v. Sound when colours are
// positive and the graph has no cycle longer than n.
inline Multigraph color_gadget_graphic(const Multigraph& g) {
  Multigraph out(g.vertex_count());
  int n = g.vertex_count();
  for (const Edge& e : g.edges()) out.add_edge(e.u, e.v);
  for (const Edge& e : g.edges()) {
    if (e.color == 0) continue;
    if (e.color < 0) throw InputError("colour gadget needs nonnegative colours");
    int len = n + e.color;
    int prev = e.u;
    for (int i = 0; i < len - 1; ++i) {
      int w = out.add_vertex();
      out.add_edge(prev, w);
      prev = w;
    }
    out.add_edge(prev, e.v);
  }
  return out;
}

}  // namespace matiso
