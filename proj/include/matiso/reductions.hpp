#pragma once
// Cross-problem reductions: bounded-rank matroid isomorphism to coloured
// graphic 2-isomorphism (the red/blue circuit graph), the incidence-graph
// route for bounded-rank linear matroids, and the Turing equivalences
// between isomorphism and automorphism realized through coloured queries.

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "matiso/gi.hpp"
#include "matiso/gmi.hpp"
#include "matiso/linear.hpp"
#include "matiso/matroid.hpp"
#include "matiso/multigraph.hpp"

namespace matiso {

constexpr int kBlueEdge = 1;
constexpr int kRedEdge = 2;

// one blue cycle per circuit, one red clique per ground element
struct RedBlueGraph {
  Multigraph g;
  std::vector<int> owner;       // per edge: the ground element it encodes
  std::vector<int> free_elems;  // elements in no circuit, ascending
};

inline RedBlueGraph red_blue_graph(const MatroidOracle& m, int b) {
  if (rank(m) > b) throw InputError("matroid rank exceeds the stated bound");
  auto fam = circuits(m);
  RedBlueGraph out{Multigraph(0), {}, {}};
  std::vector<std::vector<int>> endpoints(m.size());
  for (Mask c : fam.members) {
    auto els = mask_elements(c);
    if (els.size() == 1) throw InputError("loops have no loopless cycle image");
    int l = static_cast<int>(els.size());
    std::vector<int> vs(l);
    for (int i = 0; i < l; ++i) vs[i] = out.g.add_vertex();
    for (int i = 0; i < l; ++i) {
      out.g.add_edge(vs[i], vs[(i + 1) % l], kBlueEdge);
      out.owner.push_back(els[i]);
      endpoints[els[i]].push_back(vs[i]);
      endpoints[els[i]].push_back(vs[(i + 1) % l]);
    }
  }
  for (int s = 0; s < m.size(); ++s) {
    const auto& vs = endpoints[s];
    if (vs.empty()) {
      out.free_elems.push_back(s);
      continue;
    }
    for (std::size_t i = 0; i < vs.size(); ++i)
      for (std::size_t j = i + 1; j < vs.size(); ++j) {
        out.g.add_edge(vs[i], vs[j], kRedEdge);
        out.owner.push_back(s);
      }
  }
  return out;
}

inline std::pair<RedBlueGraph, RedBlueGraph> mib_to_gmi(const MatroidOracle& m1,
                                                        const MatroidOracle& m2, int b) {
  return {red_blue_graph(m1, b), red_blue_graph(m2, b)};
}

// Full bounded-rank decision through the red/blue graphs: a colour-preserving
// 2-isomorphism sends each element's edge family onto a single element's
// family, which recovers the matroid bijection.
inline std::optional<IsoWitness> mib_decide(const MatroidOracle& m1, const MatroidOracle& m2,
                                            int b, GmiContext* ctx = nullptr) {
  if (m1.size() != m2.size() || rank(m1) != rank(m2)) return std::nullopt;
  auto [x1, x2] = mib_to_gmi(m1, m2, b);
  if (x1.free_elems.size() != x2.free_elems.size()) return std::nullopt;
  auto w = gmi_test(x1.g, x2.g, ctx);
  if (!w) return std::nullopt;
  std::vector<int> map(m1.size(), -1);
  for (int e = 0; e < x1.g.edge_count(); ++e) {
    int s = x1.owner[e], t = x2.owner[w->map[e]];
    if (map[s] == -1)
      map[s] = t;
    else if (map[s] != t)
      throw IntegrityError("2-isomorphism tears an element's edge family apart");
  }
  for (std::size_t i = 0; i < x1.free_elems.size(); ++i) map[x1.free_elems[i]] = x2.free_elems[i];
  IsoWitness iso{map};
  if (!iso.is_permutation()) throw IntegrityError("recovered element map is not a bijection");
  if (!witness_preserves_circuits(circuits(m1), circuits(m2), iso))
    throw IntegrityError("recovered element map fails circuit transport");
  return iso;
}

// oracle counterpart of the graphic membership test in multigraph.hpp
inline bool is_matroid_automorphism(const MatroidOracle& m, const std::vector<int>& perm,
                                    int bound = kEnumerationBound) {
  IsoWitness w{perm};
  if (static_cast<int>(perm.size()) != m.size() || !w.is_permutation()) return false;
  auto fam = circuits(m, bound);
  return witness_preserves_circuits(fam, fam, w);
}

struct GeneratorSet {
  std::vector<IsoWitness> gens;
  std::vector<int> level;  // gens[i] fixes every point below level[i] pointwise
};

struct OrbitPartition {
  std::vector<std::vector<int>> orbits;  // ascending within, by least element across
};

namespace red_detail {

inline IsoWitness compose(const IsoWitness& a, const IsoWitness& b) {  // a after b
  std::vector<int> m(b.map.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = a.map[b.map[i]];
  return IsoWitness{m};
}

inline IsoWitness inverse(const IsoWitness& a) {
  std::vector<int> m(a.map.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[a.map[i]] = static_cast<int>(i);
  return IsoWitness{m};
}

inline IsoWitness identity(int m) {
  std::vector<int> v(m);
  std::iota(v.begin(), v.end(), 0);
  return IsoWitness{v};
}

// orbit of `point` under the generators at levels >= floor, with one witness
// per reached point (witness maps `point` to it)
inline std::map<int, IsoWitness> orbit_transversal(int m, const GeneratorSet& gs, int floor,
                                                   int point) {
  std::map<int, IsoWitness> t;
  t.emplace(point, identity(m));
  std::vector<int> queue{point};
  while (!queue.empty()) {
    int p = queue.back();
    queue.pop_back();
    for (std::size_t k = 0; k < gs.gens.size(); ++k) {
      if (gs.level[k] < floor) continue;
      for (int dir = 0; dir < 2; ++dir) {
        IsoWitness step = dir ? inverse(gs.gens[k]) : gs.gens[k];
        int q = step.map[p];
        if (t.count(q)) continue;
        t.emplace(q, compose(step, t.at(p)));
        queue.push_back(q);
      }
    }
  }
  return t;
}

}  // namespace red_detail

// Group order through the stabilizer tower the harvesting below builds: the
// generators at levels >= i generate exactly the pointwise stabilizer of
// 0..i-1, so the order is the product of the per-level orbit sizes. Valid
// only for generator sets with that tower property.
inline unsigned long long group_order(int m, const GeneratorSet& gs) {
  unsigned long long order = 1;
  for (int i = 0; i < m; ++i)
    order *= red_detail::orbit_transversal(m, gs, i, i).size();
  return order;
}

// membership by sifting through the same tower
inline bool group_contains(int m, const GeneratorSet& gs, const IsoWitness& p) {
  if (static_cast<int>(p.map.size()) != m || !p.is_permutation()) return false;
  IsoWitness g = p;
  for (int i = 0; i < m; ++i) {
    int j = g.map[i];
    auto t = red_detail::orbit_transversal(m, gs, i, i);
    auto it = t.find(j);
    if (it == t.end()) return false;
    g = red_detail::compose(red_detail::inverse(it->second), g);
  }
  for (int i = 0; i < m; ++i)
    if (g.map[i] != i) return false;
  return true;
}

inline OrbitPartition orbits_of(int m, const GeneratorSet& gs) {
  std::vector<int> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int v) { return parent[v] == v ? v : parent[v] = find(parent[v]); };
  for (const IsoWitness& g : gs.gens)
    for (int i = 0; i < m; ++i) parent[find(i)] = find(g.map[i]);
  std::map<int, std::vector<int>> blocks;
  for (int i = 0; i < m; ++i) blocks[find(i)].push_back(i);
  OrbitPartition out;
  for (auto& [root, blk] : blocks) out.orbits.push_back(blk);
  return out;
}

// A coloured self-isomorphism query: given two colourings of the same ground
// set, return an automorphism carrying the first onto the second, if any.
using ColoredIsoSolver =
    std::function<std::optional<IsoWitness>(const std::vector<int>&, const std::vector<int>&)>;

// Pointwise-stabilizer harvesting. Level i pins elements 0..i-1 with unique
// colours on both sides and probes i against each unreached j, so a witness
// is an automorphism fixing 0..i-1 and mapping i to j. One witness per orbit
// edge suffices for the generated group to equal Aut(M).
inline GeneratorSet auto_from_iso(int m, const ColoredIsoSolver& query) {
  GeneratorSet out;
  for (int i = 0; i < m; ++i) {
    std::vector<int> c1(m, 0), c2(m, 0);
    for (int t = 0; t < i; ++t) c1[t] = c2[t] = 2 + t;
    c1[i] = 1;
    for (int j = i + 1; j < m; ++j) {
      auto reach = red_detail::orbit_transversal(m, out, i, i);
      if (reach.count(j)) continue;
      std::vector<int> probe = c2;
      probe[j] = 1;
      auto w = query(c1, probe);
      if (!w) continue;
      if (w->map[i] != j) throw IntegrityError("probe witness ignores the probe colour");
      for (int t = 0; t < i; ++t)
        if (w->map[t] != t) throw IntegrityError("probe witness moves a pinned element");
      out.gens.push_back(*w);
      out.level.push_back(i);
    }
  }
  return out;
}

// colours carried by the graph combine with the query pins through a joint
// table so equal (own colour, pin) pairs land on equal ids on both sides
inline GeneratorSet gma_generators(const Multigraph& x, GmiContext* ctx = nullptr) {
  ColoredIsoSolver query = [&x, ctx](const std::vector<int>& c1,
                                     const std::vector<int>& c2) -> std::optional<IsoWitness> {
    std::map<std::pair<int, int>, int> ids;
    for (int e = 0; e < x.edge_count(); ++e) {
      ids[{x.edge(e).color, c1[e]}] = 0;
      ids[{x.edge(e).color, c2[e]}] = 0;
    }
    int next = 0;
    for (auto& [key, id] : ids) id = next++;
    Multigraph a(x.vertex_count()), b(x.vertex_count());
    for (int e = 0; e < x.edge_count(); ++e) {
      a.add_edge(x.edge(e).u, x.edge(e).v, ids.at({x.edge(e).color, c1[e]}));
      b.add_edge(x.edge(e).u, x.edge(e).v, ids.at({x.edge(e).color, c2[e]}));
    }
    auto w = gmi_test(a, b, ctx);
    if (!w) return std::nullopt;
    return IsoWitness{w->map};
  };
  return auto_from_iso(x.edge_count(), query);
}

// linear automorphisms through the bounded-rank incidence route: column pins
// become column colours, the graph query returns a vertex map whose column
// part is the matroid automorphism
inline GeneratorSet lma_generators(const PrimeFieldMatrix& a) {
  int r = matrix_rank(a);
  ColoredIsoSolver query = [&a, r](const std::vector<int>& c1,
                                   const std::vector<int>& c2) -> std::optional<IsoWitness> {
    auto ia = incidence_graph(a, r, &c1);
    auto ib = incidence_graph(a, r, &c2);
    auto vm = graph_isomorphism(ColoredGraph{ia.g, ia.side}, ColoredGraph{ib.g, ib.side});
    if (!vm) return std::nullopt;
    std::vector<int> col(a.cols);
    for (int i = 0; i < a.cols; ++i) col[i] = (*vm)[i];
    return IsoWitness{col};
  };
  return auto_from_iso(a.cols, query);
}

// bounded-rank linear isomorphism decision through the incidence graphs
inline std::optional<IsoWitness> lmib_decide(const PrimeFieldMatrix& a, const PrimeFieldMatrix& b,
                                             int bound,
                                             const std::vector<int>* colors_a = nullptr,
                                             const std::vector<int>* colors_b = nullptr) {
  if (a.cols != b.cols) return std::nullopt;
  auto ia = incidence_graph(a, bound, colors_a);
  auto ib = incidence_graph(b, bound, colors_b);
  if (ia.g.vertex_count() != ib.g.vertex_count()) return std::nullopt;
  auto vm = graph_isomorphism(ColoredGraph{ia.g, ia.side}, ColoredGraph{ib.g, ib.side});
  if (!vm) return std::nullopt;
  std::vector<int> col(a.cols);
  for (int i = 0; i < a.cols; ++i) col[i] = (*vm)[i];
  return IsoWitness{col};
}

namespace red_detail {

class RestrictOracle final : public MatroidOracle {
 public:
  RestrictOracle(const MatroidOracle* base, std::vector<int> elems)
      : MatroidOracle(static_cast<int>(elems.size())), base_(base), elems_(std::move(elems)) {}

 private:
  bool indep(Mask s) const override {
    Mask t = 0;
    for (int i : mask_elements(s)) t |= Mask{1} << elems_[i];
    return base_->independent(t);
  }
  const MatroidOracle* base_;
  std::vector<int> elems_;
};

// circuit-connectivity components: elements sharing a circuit, closed
// transitively; returns multi-element components plus singleton kinds
struct ComponentSplit {
  std::vector<std::vector<int>> comps;  // size >= 2, ascending elements
  std::vector<int> loops;               // dependent singletons
  std::vector<int> frees;               // elements in no circuit
};

inline ComponentSplit split_components(const MatroidOracle& m, const CircuitFamily& fam) {
  std::vector<int> parent(m.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int v) { return parent[v] == v ? v : parent[v] = find(parent[v]); };
  std::vector<bool> covered(m.size(), false);
  for (Mask c : fam.members) {
    auto els = mask_elements(c);
    for (int e : els) covered[e] = true;
    for (std::size_t i = 1; i < els.size(); ++i) parent[find(els[0])] = find(els[i]);
  }
  std::map<int, std::vector<int>> blocks;
  for (int e = 0; e < m.size(); ++e)
    if (covered[e]) blocks[find(e)].push_back(e);
  ComponentSplit out;
  for (auto& [root, blk] : blocks) {
    if (blk.size() >= 2)
      out.comps.push_back(blk);
    else
      out.loops.push_back(blk[0]);  // a covered singleton is a loop
  }
  for (int e = 0; e < m.size(); ++e)
    if (!covered[e]) out.frees.push_back(e);
  return out;
}

}  // namespace red_detail

using AutoSolver = std::function<GeneratorSet(const MatroidOracle&)>;

// Isomorphism from an automorphism solver. The direct sum of two CONNECTED
// matroids has exactly those two circuit components, so block-preservation
// under automorphisms is a homomorphism onto Z2 and some generator crosses
// iff the group does iff the summands are isomorphic. Arbitrary inputs are
// first split into circuit components (the whole-sum generator rule is
// unsound once free elements can mix across blocks) and matched pairwise.
inline std::optional<IsoWitness> iso_from_auto(const MatroidOracle& m1, const MatroidOracle& m2,
                                               const AutoSolver& solver,
                                               int bound = kEnumerationBound) {
  if (m1.size() != m2.size()) return std::nullopt;
  auto f1 = circuits(m1, bound), f2 = circuits(m2, bound);
  auto s1 = red_detail::split_components(m1, f1);
  auto s2 = red_detail::split_components(m2, f2);
  if (s1.loops.size() != s2.loops.size() || s1.frees.size() != s2.frees.size() ||
      s1.comps.size() != s2.comps.size())
    return std::nullopt;

  int k = static_cast<int>(s1.comps.size());
  std::vector<std::vector<char>> ok(k, std::vector<char>(k, 0));
  std::map<std::pair<int, int>, std::vector<int>> cross;  // local map block1 -> block2
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      if (s1.comps[i].size() != s2.comps[j].size()) continue;
      int s = static_cast<int>(s1.comps[i].size());
      auto ra = std::make_shared<red_detail::RestrictOracle>(&m1, s1.comps[i]);
      auto rb = std::make_shared<red_detail::RestrictOracle>(&m2, s2.comps[j]);
      DirectSumOracle sum(ra, rb);
      auto gens = solver(sum);
      for (const IsoWitness& g : gens.gens) {
        if (g.map[0] < s) continue;  // preserves the blocks
        std::vector<int> local(s);
        for (int e = 0; e < s; ++e) {
          if (g.map[e] < s) throw IntegrityError("automorphism crosses connected blocks partially");
          local[e] = g.map[e] - s;
        }
        ok[i][j] = 1;
        cross[{i, j}] = local;
        break;
      }
    }

  auto match = gmi_detail::perfect_matching(ok);
  if (k > 0 && !match) return std::nullopt;

  std::vector<int> map(m1.size(), -1);
  for (int i = 0; i < k; ++i) {
    const auto& local = cross.at({i, (*match)[i]});
    const auto& target = s2.comps[(*match)[i]];
    for (std::size_t e = 0; e < s1.comps[i].size(); ++e) map[s1.comps[i][e]] = target[local[e]];
  }
  for (std::size_t i = 0; i < s1.loops.size(); ++i) map[s1.loops[i]] = s2.loops[i];
  for (std::size_t i = 0; i < s1.frees.size(); ++i) map[s1.frees[i]] = s2.frees[i];
  IsoWitness w{map};
  if (!w.is_permutation() || !witness_preserves_circuits(f1, f2, w))
    throw IntegrityError("assembled cross-map fails circuit transport");
  return w;
}

// the generic automorphism solver for oracle inputs: coloured queries are
// answered by the brute-force circuit search, so this is desk scale only
inline GeneratorSet oracle_generators(const MatroidOracle& m, int bound = kEnumerationBound) {
  auto fam = circuits(m, bound);
  ColoredIsoSolver query = [fam](const std::vector<int>& c1,
                                 const std::vector<int>& c2) -> std::optional<IsoWitness> {
    return brute_force_colored_iso(fam, fam, c1, c2);
  };
  return auto_from_iso(m.size(), query);
}

// Graphic instantiation of the iso-from-auto direction, decided entirely
// through gma_generators on disjoint unions of blocks. Bridges are the
// graphic matroid's free elements and match by colour; every proper block
// is 2-connected, so its matroid is connected and the Z2 argument applies.
inline std::optional<IsoWitness> iso_from_auto_graphic(const Multigraph& x1, const Multigraph& x2,
                                                       GmiContext* ctx = nullptr) {
  if (x1.edge_count() != x2.edge_count()) return std::nullopt;
  auto bd1 = biconnected_components(x1);
  auto bd2 = biconnected_components(x2);

  std::map<int, std::vector<int>> bridges1, bridges2;
  std::vector<std::vector<int>> blocks1, blocks2;
  for (const auto& blk : bd1.blocks) {
    if (blk.size() == 1)
      bridges1[x1.edge(blk[0]).color].push_back(blk[0]);
    else
      blocks1.push_back(blk);
  }
  for (const auto& blk : bd2.blocks) {
    if (blk.size() == 1)
      bridges2[x2.edge(blk[0]).color].push_back(blk[0]);
    else
      blocks2.push_back(blk);
  }
  if (bridges1.size() != bridges2.size() || blocks1.size() != blocks2.size()) return std::nullopt;
  for (auto& [color, eids] : bridges1) {
    auto it = bridges2.find(color);
    if (it == bridges2.end() || it->second.size() != eids.size()) return std::nullopt;
  }

  auto local_graph = [](const Multigraph& g, const std::vector<int>& eids) {
    std::vector<int> verts;
    for (int e : eids) {
      verts.push_back(g.edge(e).u);
      verts.push_back(g.edge(e).v);
    }
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    Multigraph out(static_cast<int>(verts.size()));
    auto local = [&](int v) {
      return static_cast<int>(std::lower_bound(verts.begin(), verts.end(), v) - verts.begin());
    };
    for (int e : eids) out.add_edge(local(g.edge(e).u), local(g.edge(e).v), g.edge(e).color);
    return out;
  };

  int k = static_cast<int>(blocks1.size());
  std::vector<std::vector<char>> ok(k, std::vector<char>(k, 0));
  std::map<std::pair<int, int>, std::vector<int>> cross;
  auto color_multiset = [](const Multigraph& g, const std::vector<int>& eids) {
    std::vector<int> cs;
    for (int e : eids) cs.push_back(g.edge(e).color);
    std::sort(cs.begin(), cs.end());
    return cs;
  };
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      if (blocks1[i].size() != blocks2[j].size()) continue;
      if (color_multiset(x1, blocks1[i]) != color_multiset(x2, blocks2[j])) continue;
      Multigraph a = local_graph(x1, blocks1[i]);
      Multigraph b = local_graph(x2, blocks2[j]);
      Multigraph u(a.vertex_count() + b.vertex_count());
      for (const Edge& e : a.edges()) u.add_edge(e.u, e.v, e.color);
      for (const Edge& e : b.edges())
        u.add_edge(a.vertex_count() + e.u, a.vertex_count() + e.v, e.color);
      int s = a.edge_count();
      auto gens = gma_generators(u, ctx);
      for (const IsoWitness& g : gens.gens) {
        if (g.map[0] < s) continue;
        std::vector<int> local(s);
        for (int e = 0; e < s; ++e) {
          if (g.map[e] < s) throw IntegrityError("automorphism crosses 2-connected blocks partially");
          local[e] = g.map[e] - s;
        }
        ok[i][j] = 1;
        cross[{i, j}] = local;
        break;
      }
    }

  auto match = gmi_detail::perfect_matching(ok);
  if (k > 0 && !match) return std::nullopt;

  std::vector<int> map(x1.edge_count(), -1);
  for (int i = 0; i < k; ++i) {
    const auto& local = cross.at({i, (*match)[i]});
    const auto& target = blocks2[(*match)[i]];
    for (std::size_t e = 0; e < blocks1[i].size(); ++e) map[blocks1[i][e]] = target[local[e]];
  }
  for (auto& [color, eids] : bridges1) {
    const auto& other = bridges2.at(color);
    for (std::size_t i = 0; i < eids.size(); ++i) map[eids[i]] = other[i];
  }
  if (!is_two_isomorphism(x1, x2, map))
    throw IntegrityError("assembled block cross-map is not a 2-isomorphism");
  return IsoWitness{map};
}

}  // namespace matiso
