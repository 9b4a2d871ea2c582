#pragma once
// 2-isomorphism of edge-coloured multigraphs: block matching, the
// fixed-point colour refinement over trees of 3-connected components, and
// constructive witness assembly with validation.

#include <functional>
#include <map>
#include <set>
#include <string>

#include "matiso/decompose.hpp"
#include "matiso/gi.hpp"

namespace matiso {

// Exact 2-isomorphism check: emap must be a colour-preserving edge
// bijection carrying the cycle space of a into the cycle space of b.
// Equal cycle-space dimension then forces equality of the spaces, which is
// exactly circuit-family preservation.
inline bool is_two_isomorphism(const Multigraph& a, const Multigraph& b, const std::vector<int>& emap) {
  int m = a.edge_count();
  if (b.edge_count() != m || static_cast<int>(emap.size()) != m) return false;
  std::vector<char> hit(m, 0);
  for (int i = 0; i < m; ++i) {
    int t = emap[i];
    if (t < 0 || t >= m || hit[t]) return false;
    hit[t] = 1;
    if (a.edge(i).color != b.edge(t).color) return false;
  }
  CycleBasis b1 = cycle_basis(a), b2 = cycle_basis(b);
  if (b1.cycles.size() != b2.cycles.size()) return false;
  for (const Gf2Vec& c : b1.cycles)
    if (!in_cycle_space(b, permute_vec(c, emap))) return false;
  return true;
}

struct GmiContext {
  bool strict_classing = false;  // route bond/polygon classing through gadget + GI
  long gi_queries = 0;
  long refine_rounds = 0;
  std::vector<std::vector<int>> q_histories;  // class counts per refinement call
  std::vector<std::string> stats_lines;
  std::map<std::string, bool> iso_memo;  // pairwise component query cache
  std::function<void(const Multigraph&)> graph_probe;  // test hook, sees engine-built graphs

  void probe(const Multigraph& g) const {
    if (graph_probe) graph_probe(g);
  }
};

struct RefineResult {
  bool equal = false;
  int iterations = 0;
  std::vector<int> q_history;
  std::vector<std::vector<int>> node_colors;  // [tree][comp] final class ids
  std::vector<std::vector<int>> vedge_class;  // [tree][link] final virtual-edge colours
};

namespace gmi_detail {

inline std::vector<std::vector<int>> comp_tree_adj(const DecompositionTree& t) {
  std::vector<std::vector<int>> adj(t.comps.size());
  for (const Link& l : t.links) {
    adj[l.comp_a].push_back(l.comp_b);
    adj[l.comp_b].push_back(l.comp_a);
  }
  return adj;
}

// joint colour table for component rendering; tags keep the sorts apart
enum { kTagReal = 0, kTagVedge = 1, kTagPin = 2 };

struct ColorTable {
  std::map<std::pair<int, int>, int> ids;  // (tag, value) -> id >= 1

  int id(int tag, int value) const {
    auto it = ids.find({tag, value});
    if (it == ids.end()) throw IntegrityError("colour missing from the joint table");
    return it->second;
  }
};

inline ColorTable build_color_table(const std::vector<const DecompositionTree*>& trees,
                                    const std::vector<const std::vector<int>*>& vclasses,
                                    bool with_pin) {
  std::set<std::pair<int, int>> keys;
  for (std::size_t i = 0; i < trees.size(); ++i) {
    for (const Component& c : trees[i]->comps)
      for (const DEdge& e : c.edges)
        if (!e.is_virtual() && trees[i]->graph.edge(e.eid).color != 0)
          keys.insert({kTagReal, trees[i]->graph.edge(e.eid).color});
    for (int v : *vclasses[i]) keys.insert({kTagVedge, v});
  }
  if (with_pin) keys.insert({kTagPin, 0});
  ColorTable t;
  int next = 1;
  for (auto& k : keys) t.ids[k] = next++;
  return t;
}

// Local coloured copy of one component; edge i corresponds to edges[i].
// Uncoloured real edges stay colour 0, everything else maps through the
// table; pin_link >= 0 overrides that link's slot with the pin colour.
inline Multigraph render_component(const DecompositionTree& t, int ci,
                                   const std::vector<int>& link_class, const ColorTable& table,
                                   int pin_link) {
  const Component& c = t.comps[ci];
  std::vector<int> verts;
  for (const DEdge& e : c.edges) {
    verts.push_back(e.u);
    verts.push_back(e.v);
  }
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  auto local = [&](int gv) {
    return static_cast<int>(std::lower_bound(verts.begin(), verts.end(), gv) - verts.begin());
  };
  std::map<int, int> class_of_vid;
  for (int li = 0; li < static_cast<int>(t.links.size()); ++li)
    class_of_vid[t.links[li].vid] = link_class.empty() ? 0 : link_class[li];
  int pin_vid = pin_link >= 0 ? t.links[pin_link].vid : -1;
  Multigraph g(static_cast<int>(verts.size()));
  for (const DEdge& e : c.edges) {
    int color;
    if (e.is_virtual())
      color = e.vid == pin_vid ? table.id(kTagPin, 0) : table.id(kTagVedge, class_of_vid.at(e.vid));
    else if (t.graph.edge(e.eid).color == 0)
      color = 0;
    else
      color = table.id(kTagReal, t.graph.edge(e.eid).color);
    g.add_edge(local(e.u), local(e.v), color);
  }
  return g;
}

inline std::string serialize_colored(const Multigraph& g) {
  std::string s = std::to_string(g.vertex_count()) + ";";
  for (const Edge& e : g.edges())
    s += std::to_string(e.u) + "-" + std::to_string(e.v) + ":" + std::to_string(e.color) + ";";
  return s;
}

// pairwise 2-isomorphism query on rendered components; edge colours ride
// through the GI solver as bundle classes, memoized on raw serializations
inline bool rendered_iso_query(const Multigraph& a, const Multigraph& b, GmiContext& ctx) {
  std::string key = serialize_colored(a) + "||" + serialize_colored(b);
  auto it = ctx.iso_memo.find(key);
  if (it != ctx.iso_memo.end()) return it->second;
  ctx.probe(a);
  ctx.probe(b);
  ++ctx.gi_queries;
  bool r = graph_isomorphism(a, b).has_value();
  ctx.iso_memo.emplace(std::move(key), r);
  return r;
}

// slot key of one component edge: distinguishes real colours, virtual-edge
// colours and the pinned slot
inline std::string slot_key(const DecompositionTree& t, const DEdge& e,
                            const std::map<int, int>& class_of_vid, int pin_vid) {
  if (e.is_virtual()) {
    if (e.vid == pin_vid) return "p";
    return "v" + std::to_string(class_of_vid.at(e.vid));
  }
  return "r" + std::to_string(t.graph.edge(e.eid).color);
}

// Any colour-respecting slot permutation of a polygon is a 2-isomorphism
// (every circuit through a polygon crosses all of its slots), so the
// gadget + GI route is only sound after sorting the slots onto a fresh ring.
inline Multigraph polygon_ring(const DecompositionTree& t, int ci, const std::vector<int>& link_class,
                               const ColorTable& table) {
  const Component& c = t.comps[ci];
  std::map<int, int> class_of_vid;
  for (int li = 0; li < static_cast<int>(t.links.size()); ++li)
    class_of_vid[t.links[li].vid] = link_class.empty() ? 0 : link_class[li];
  std::vector<int> cols;
  for (const DEdge& e : c.edges) {
    if (e.is_virtual())
      cols.push_back(table.id(kTagVedge, class_of_vid.at(e.vid)));
    else
      cols.push_back(t.graph.edge(e.eid).color == 0 ? 0
                                                    : table.id(kTagReal, t.graph.edge(e.eid).color));
  }
  std::sort(cols.begin(), cols.end());
  int k = static_cast<int>(cols.size());
  Multigraph ring(k);
  for (int i = 0; i < k; ++i) ring.add_edge(i, (i + 1) % k, cols[i]);
  return ring;
}

// Deterministic pre-split of one component: kind, previous colour, sizes
// and (where that already decides the class) the slot-colour multiset.
// Triconnected groups always carry the multiset too: a 2-isomorphism
// preserves it, so splitting on it first only saves iso queries.
inline std::string discriminator(const DecompositionTree& t, int ci, const std::vector<int>& link_class,
                                 int prev_color, bool strict) {
  const Component& c = t.comps[ci];
  std::map<int, int> class_of_vid;
  for (int li = 0; li < static_cast<int>(t.links.size()); ++li)
    class_of_vid[t.links[li].vid] = link_class.empty() ? 0 : link_class[li];
  std::string tag;
  switch (c.kind) {
    case CompKind::Bond: tag = "B"; break;
    case CompKind::Polygon: tag = "P"; break;
    case CompKind::Triconnected: tag = "T"; break;
    case CompKind::ExcisedStar: tag = "E"; break;
  }
  std::string key = tag + "|" + std::to_string(prev_color) + "|" + std::to_string(c.edges.size());
  if (c.kind == CompKind::Triconnected || !strict) {
    std::vector<std::string> slots;
    for (const DEdge& e : c.edges) slots.push_back(slot_key(t, e, class_of_vid, -1));
    std::sort(slots.begin(), slots.end());
    for (auto& s : slots) key += "," + s;
  }
  return key;
}

// whether a discriminator group still needs pairwise iso queries to split
inline bool needs_iso_queries(CompKind kind, bool strict) {
  return kind == CompKind::Triconnected || strict;
}

}  // namespace gmi_detail

// The fixed-point loop: colour virtual edges with the unordered pair of
// subtree codes across their tree edge, class all components of both trees
// jointly, recolour nodes by class, repeat until stable. Decision: equal
// final tree codes.
inline RefineResult refine_and_decide(const DecompositionTree& t1, const DecompositionTree& t2,
                                      GmiContext& ctx) {
  const DecompositionTree* ts[2] = {&t1, &t2};
  std::vector<std::vector<int>> adj[2] = {gmi_detail::comp_tree_adj(t1), gmi_detail::comp_tree_adj(t2)};

  RefineResult rr;
  rr.node_colors = {std::vector<int>(t1.comps.size(), 0), std::vector<int>(t2.comps.size(), 0)};
  rr.vedge_class = {std::vector<int>(t1.links.size(), 0), std::vector<int>(t2.links.size(), 0)};

  int cap = static_cast<int>(t1.comps.size() + t2.comps.size()) + 2;
  int last_q = 0;
  for (;; ++rr.iterations, ++ctx.refine_rounds) {
    if (rr.iterations > cap) throw IntegrityError("refinement failed to stabilize");

    // virtual-edge colours: unordered pair of side codes, joint index
    std::vector<std::string> pair_keys;
    std::vector<std::vector<std::string>> link_pairs(2);
    for (int i = 0; i < 2; ++i) {
      for (const Link& l : ts[i]->links) {
        std::string a = ahu_subtree_code(adj[i], rr.node_colors[i], l.comp_a, l.comp_b);
        std::string b = ahu_subtree_code(adj[i], rr.node_colors[i], l.comp_b, l.comp_a);
        if (b < a) std::swap(a, b);
        link_pairs[i].push_back(a + "~" + b);
        pair_keys.push_back(link_pairs[i].back());
      }
    }
    std::sort(pair_keys.begin(), pair_keys.end());
    pair_keys.erase(std::unique(pair_keys.begin(), pair_keys.end()), pair_keys.end());
    for (int i = 0; i < 2; ++i)
      for (std::size_t l = 0; l < link_pairs[i].size(); ++l)
        rr.vedge_class[i][l] = static_cast<int>(
            std::lower_bound(pair_keys.begin(), pair_keys.end(), link_pairs[i][l]) - pair_keys.begin());

    // joint component classes: discriminator groups first, pairwise iso
    // queries only where the discriminator does not already decide
    gmi_detail::ColorTable table = gmi_detail::build_color_table(
        {ts[0], ts[1]}, {&rr.vedge_class[0], &rr.vedge_class[1]}, false);
    int off[2] = {0, static_cast<int>(t1.comps.size())};
    int total = static_cast<int>(t1.comps.size() + t2.comps.size());
    std::map<std::string, std::vector<std::pair<int, int>>> groups;  // disc -> (tree, comp)
    for (int i = 0; i < 2; ++i)
      for (int c = 0; c < static_cast<int>(ts[i]->comps.size()); ++c)
        groups[gmi_detail::discriminator(*ts[i], c, rr.vedge_class[i], rr.node_colors[i][c],
                                         ctx.strict_classing)]
            .push_back({i, c});
    std::vector<int> cls(total, -1);
    int nclasses = 0;
    for (auto& [disc, members] : groups) {
      CompKind kind = ts[members[0].first]->comps[members[0].second].kind;
      if (!gmi_detail::needs_iso_queries(kind, ctx.strict_classing)) {
        for (auto [i, c] : members) cls[off[i] + c] = nclasses;
        ++nclasses;
        continue;
      }
      std::vector<Multigraph> reps;
      std::vector<int> rep_cls;
      for (auto [i, c] : members) {
        Multigraph g = kind == CompKind::Polygon
                           ? gmi_detail::polygon_ring(*ts[i], c, rr.vedge_class[i], table)
                           : gmi_detail::render_component(*ts[i], c, rr.vedge_class[i], table, -1);
        int found = -1;
        for (std::size_t r = 0; r < reps.size(); ++r)
          if (gmi_detail::rendered_iso_query(g, reps[r], ctx)) {
            found = rep_cls[r];
            break;
          }
        if (found < 0) {
          found = nclasses++;
          reps.push_back(std::move(g));
          rep_cls.push_back(found);
        }
        cls[off[i] + c] = found;
      }
    }
    rr.q_history.push_back(nclasses);
    if (nclasses < last_q) throw IntegrityError("class count decreased during refinement");
    last_q = nclasses;

    // labels are the partition's first-occurrence normal form, so they are
    // stable exactly when the partition is
    std::vector<int> relabel(nclasses, -1);
    int next_label = 0;
    bool changed = false;
    for (int i = 0; i < 2; ++i)
      for (int c = 0; c < static_cast<int>(ts[i]->comps.size()); ++c) {
        int& r = relabel[cls[off[i] + c]];
        if (r < 0) r = next_label++;
        if (r != rr.node_colors[i][c]) changed = true;
        rr.node_colors[i][c] = r;
      }
    if (!changed) break;
  }

  ctx.q_histories.push_back(rr.q_history);
  rr.equal = tree_code(adj[0], rr.node_colors[0]) == tree_code(adj[1], rr.node_colors[1]);
  return rr;
}

namespace gmi_detail {

// Witness assembly from the centre outward. Per matched component pair the
// parent virtual edges are pinned, the remaining slots are matched inside
// their colour groups, and every matched virtual pair recurses into the
// child components. Any failure here contradicts the refinement verdict,
// hence integrity errors rather than a NONISO return.
struct Assembler {
  const DecompositionTree* t[2];
  const RefineResult* rr;
  GmiContext* ctx;
  std::vector<std::vector<std::pair<int, int>>> adj[2];  // (link, neighbor)
  std::vector<int> emap;                                 // X1' edge id -> X2' edge id

  int link_at(int side, int comp, int pos) const {
    for (auto [li, nb] : adj[side][comp]) {
      const Link& l = t[side]->links[li];
      if ((l.comp_a == comp && l.pos_a == pos) || (l.comp_b == comp && l.pos_b == pos)) return li;
    }
    throw IntegrityError("virtual edge slot without a link");
  }

  void map_slots(int c1, int c2, const std::vector<int>& pos_map, int plink1, int plink2) {
    const Component& a = t[0]->comps[c1];
    const Component& b = t[1]->comps[c2];
    for (int i = 0; i < static_cast<int>(a.edges.size()); ++i) {
      const DEdge& ea = a.edges[i];
      const DEdge& eb = b.edges[pos_map[i]];
      if (ea.is_virtual() != eb.is_virtual()) throw IntegrityError("witness mixes real and virtual slots");
      if (!ea.is_virtual()) {
        emap[ea.eid] = eb.eid;
        continue;
      }
      int l1 = link_at(0, c1, i);
      int l2 = link_at(1, c2, pos_map[i]);
      if (l1 == plink1) {
        if (l2 != plink2) throw IntegrityError("pinned virtual edge escaped its twin");
        continue;
      }
      if (l2 == plink2) throw IntegrityError("pinned virtual edge escaped its twin");
      recurse(t[0]->links[l1].other(c1), t[1]->links[l2].other(c2), l1, l2);
    }
  }

  void recurse(int c1, int c2, int plink1, int plink2) {
    const Component& a = t[0]->comps[c1];
    const Component& b = t[1]->comps[c2];
    if (a.kind != b.kind || a.edges.size() != b.edges.size())
      throw IntegrityError("matched components disagree on kind or size");

    if (a.kind == CompKind::Triconnected) {
      ColorTable table = build_color_table({t[0], t[1]}, {&rr->vedge_class[0], &rr->vedge_class[1]}, true);
      Multigraph ga = render_component(*t[0], c1, rr->vedge_class[0], table, plink1);
      Multigraph gb = render_component(*t[1], c2, rr->vedge_class[1], table, plink2);
      ctx->probe(ga);
      ctx->probe(gb);
      ++ctx->gi_queries;
      auto pos_map = colored_iso_edge_map(ga, gb);
      if (!pos_map) throw IntegrityError("class-equal components failed the pinned iso query");
      map_slots(c1, c2, *pos_map, plink1, plink2);
      return;
    }

    // bonds, stars and polygons: group slots by colour key, match in order
    std::map<int, int> cls1, cls2;
    for (int li = 0; li < static_cast<int>(t[0]->links.size()); ++li)
      cls1[t[0]->links[li].vid] = rr->vedge_class[0][li];
    for (int li = 0; li < static_cast<int>(t[1]->links.size()); ++li)
      cls2[t[1]->links[li].vid] = rr->vedge_class[1][li];
    int pin_vid1 = plink1 >= 0 ? t[0]->links[plink1].vid : -1;
    int pin_vid2 = plink2 >= 0 ? t[1]->links[plink2].vid : -1;
    std::map<std::string, std::vector<int>> groups1, groups2;
    for (int i = 0; i < static_cast<int>(a.edges.size()); ++i)
      groups1[slot_key(*t[0], a.edges[i], cls1, pin_vid1)].push_back(i);
    for (int i = 0; i < static_cast<int>(b.edges.size()); ++i)
      groups2[slot_key(*t[1], b.edges[i], cls2, pin_vid2)].push_back(i);
    std::vector<int> pos_map(a.edges.size(), -1);
    for (auto& [key, members] : groups1) {
      auto it = groups2.find(key);
      if (it == groups2.end() || it->second.size() != members.size())
        throw IntegrityError("slot colour groups of matched components differ");
      for (std::size_t i = 0; i < members.size(); ++i) pos_map[members[i]] = it->second[i];
    }
    map_slots(c1, c2, pos_map, plink1, plink2);
  }
};

}  // namespace gmi_detail

// Edge map over the surgered graphs (including surgery edges); only valid
// after refine_and_decide returned equal.
inline std::vector<int> assemble_witness(const DecompositionTree& t1, const DecompositionTree& t2,
                                         const RefineResult& rr, GmiContext& ctx) {
  gmi_detail::Assembler as;
  as.t[0] = &t1;
  as.t[1] = &t2;
  as.rr = &rr;
  as.ctx = &ctx;
  as.adj[0] = t1.adjacency();
  as.adj[1] = t2.adjacency();
  as.emap.assign(t1.graph.edge_count(), -1);

  std::vector<std::vector<int>> plain1 = gmi_detail::comp_tree_adj(t1);
  std::vector<std::vector<int>> plain2 = gmi_detail::comp_tree_adj(t2);
  auto centers1 = tree_centers(plain1);
  auto centers2 = tree_centers(plain2);
  if (centers1.size() != centers2.size()) throw IntegrityError("code-equal trees with different centers");
  if (centers1.size() == 1) {
    as.recurse(centers1[0], centers2[0], -1, -1);
  } else {
    auto find_link = [](const DecompositionTree& t, int ca, int cb) {
      for (int li = 0; li < static_cast<int>(t.links.size()); ++li) {
        const Link& l = t.links[li];
        if ((l.comp_a == ca && l.comp_b == cb) || (l.comp_a == cb && l.comp_b == ca)) return li;
      }
      throw IntegrityError("bicentered tree without a center link");
    };
    int l1 = find_link(t1, centers1[0], centers1[1]);
    int l2 = find_link(t2, centers2[0], centers2[1]);
    std::string a0 = ahu_subtree_code(plain1, rr.node_colors[0], centers1[0], centers1[1]);
    std::string b0 = ahu_subtree_code(plain2, rr.node_colors[1], centers2[0], centers2[1]);
    std::string b1 = ahu_subtree_code(plain2, rr.node_colors[1], centers2[1], centers2[0]);
    int first = a0 == b0 ? 0 : a0 == b1 ? 1 : -1;
    if (first < 0) throw IntegrityError("bicentered trees refuse both center pairings");
    as.recurse(centers1[0], centers2[first], l1, l2);
    as.recurse(centers1[1], centers2[1 - first], l1, l2);
  }
  for (int v : as.emap)
    if (v < 0) throw IntegrityError("witness assembly left edges unmapped");
  return as.emap;
}

namespace gmi_detail {

struct BlockInstance {
  Multigraph sub;                // block subgraph over local vertices
  std::vector<int> global_eids;  // local edge position -> input edge id
  DecompositionTree tree;        // surgered decomposition of sub
};

inline BlockInstance make_block_instance(const Multigraph& g, const std::vector<int>& eids,
                                         GmiContext& ctx) {
  BlockInstance bi;
  bi.global_eids = eids;
  std::sort(bi.global_eids.begin(), bi.global_eids.end());
  std::vector<int> verts;
  for (int e : bi.global_eids) {
    verts.push_back(g.edge(e).u);
    verts.push_back(g.edge(e).v);
  }
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  auto local = [&](int gv) {
    return static_cast<int>(std::lower_bound(verts.begin(), verts.end(), gv) - verts.begin());
  };
  bi.sub = Multigraph(static_cast<int>(verts.size()));
  for (int e : bi.global_eids)
    bi.sub.add_edge(local(g.edge(e).u), local(g.edge(e).v), g.edge(e).color);
  ctx.probe(bi.sub);
  bi.tree = decompose_with_surgery(bi.sub);
  ctx.probe(bi.tree.graph);
  return bi;
}

// decide one block pair; returns the local edge bijection on the block
// subgraphs (surgery edges stripped)
inline std::optional<std::vector<int>> block_pair_2iso(const BlockInstance& a, const BlockInstance& b,
                                                       GmiContext& ctx) {
  if (a.sub.edge_count() != b.sub.edge_count()) return std::nullopt;
  RefineResult rr = refine_and_decide(a.tree, b.tree, ctx);
  if (!rr.equal) return std::nullopt;
  std::vector<int> full = assemble_witness(a.tree, b.tree, rr, ctx);
  int m = a.sub.edge_count();
  std::vector<int> local(m, -1);
  for (int i = 0; i < m; ++i) {
    if (full[i] < 0 || full[i] >= m) throw IntegrityError("surgery edges leaked into the witness");
    local[i] = full[i];
  }
  if (!is_two_isomorphism(a.sub, b.sub, local))
    throw IntegrityError("assembled block witness failed validation");
  {
    std::string q;
    for (int x : rr.q_history) q += (q.empty() ? "" : ",") + std::to_string(x);
    ctx.stats_lines.push_back("block m=" + std::to_string(m) + " iterations=" +
                              std::to_string(rr.iterations + 1) + " q=" + q);
  }
  return local;
}

inline std::optional<std::vector<int>> perfect_matching(const std::vector<std::vector<char>>& ok) {
  int n = static_cast<int>(ok.size());
  std::vector<int> match_r(n, -1), match_l(n, -1);
  std::function<bool(int, std::vector<char>&)> try_one = [&](int u, std::vector<char>& used) {
    for (int v = 0; v < n; ++v) {
      if (!ok[u][v] || used[v]) continue;
      used[v] = 1;
      if (match_r[v] < 0 || try_one(match_r[v], used)) {
        match_r[v] = u;
        match_l[u] = v;
        return true;
      }
    }
    return false;
  };
  for (int u = 0; u < n; ++u) {
    std::vector<char> used(n, 0);
    if (!try_one(u, used)) return std::nullopt;
  }
  return match_l;
}

}  // namespace gmi_detail

// Decide 2-isomorphism of two edge-coloured multigraphs and produce a
// validating edge bijection. Input colours must be non-negative; negative
// values are reserved for the engine's surgery marks.
inline std::optional<IsoWitness> gmi_test(const Multigraph& x1, const Multigraph& x2,
                                          GmiContext* ctx_in = nullptr) {
  GmiContext local_ctx;
  GmiContext& ctx = ctx_in ? *ctx_in : local_ctx;
  for (const Multigraph* g : {&x1, &x2})
    for (const Edge& e : g->edges())
      if (e.color < 0) throw InputError("negative edge colours are reserved");

  int m = x1.edge_count();
  if (x2.edge_count() != m) return std::nullopt;
  IsoWitness w;
  w.map.assign(m, -1);
  if (m == 0) return w;

  auto bd1 = biconnected_components(x1);
  auto bd2 = biconnected_components(x2);

  // bridges: free elements of the matroid, matched inside colour groups
  std::map<int, std::vector<int>> bridge1, bridge2;
  std::vector<std::vector<int>> big1, big2;
  for (auto& blk : bd1.blocks) {
    if (blk.size() == 1)
      bridge1[x1.edge(blk[0]).color].push_back(blk[0]);
    else
      big1.push_back(blk);
  }
  for (auto& blk : bd2.blocks) {
    if (blk.size() == 1)
      bridge2[x2.edge(blk[0]).color].push_back(blk[0]);
    else
      big2.push_back(blk);
  }
  if (bridge1.size() != bridge2.size() || big1.size() != big2.size()) return std::nullopt;
  for (auto& [color, eids] : bridge1) {
    auto it = bridge2.find(color);
    if (it == bridge2.end() || it->second.size() != eids.size()) return std::nullopt;
    std::sort(eids.begin(), eids.end());
    std::sort(it->second.begin(), it->second.end());
    for (std::size_t i = 0; i < eids.size(); ++i) w.map[eids[i]] = it->second[i];
  }

  // proper blocks: pairwise engine verdicts, then a perfect matching
  int nb = static_cast<int>(big1.size());
  std::vector<gmi_detail::BlockInstance> inst1, inst2;
  for (auto& blk : big1) inst1.push_back(gmi_detail::make_block_instance(x1, blk, ctx));
  for (auto& blk : big2) inst2.push_back(gmi_detail::make_block_instance(x2, blk, ctx));
  std::vector<std::vector<char>> ok(nb, std::vector<char>(nb, 0));
  std::vector<std::vector<std::vector<int>>> wit(nb, std::vector<std::vector<int>>(nb));
  for (int i = 0; i < nb; ++i)
    for (int j = 0; j < nb; ++j) {
      auto r = gmi_detail::block_pair_2iso(inst1[i], inst2[j], ctx);
      if (r) {
        ok[i][j] = 1;
        wit[i][j] = std::move(*r);
      }
    }
  auto matching = gmi_detail::perfect_matching(ok);
  if (!matching) return std::nullopt;
  for (int i = 0; i < nb; ++i) {
    int j = (*matching)[i];
    for (std::size_t p = 0; p < inst1[i].global_eids.size(); ++p)
      w.map[inst1[i].global_eids[p]] = inst2[j].global_eids[wit[i][j][p]];
  }

  if (!is_two_isomorphism(x1, x2, w.map))
    throw IntegrityError("assembled witness failed final validation");
  return w;
}

}  // namespace matiso
