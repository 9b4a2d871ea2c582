#pragma once
// Linear matroids over prime fields: elimination-based independence, the
// Vandermonde uniform representation, star matroids with a constructive
// greedy assignment, the coloured-column block gadget, and the incidence
// construction from bounded-rank matrices to bipartite graphs.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "matiso/matroid.hpp"
#include "matiso/multigraph.hpp"

namespace matiso {

inline bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

inline std::int64_t next_prime(std::int64_t n) {
  if (n < 2) return 2;
  while (!is_prime(n)) ++n;
  return n;
}

struct PrimeField {
  std::int64_t p;

  explicit PrimeField(std::int64_t modulus) : p(modulus) {
    if (p < 2 || p > 2147483647LL || !is_prime(p))
      throw InputError("field modulus must be a prime in [2, 2^31)");
  }

  std::int64_t reduce(std::int64_t v) const {
    v %= p;
    return v < 0 ? v + p : v;
  }
  std::int64_t add(std::int64_t a, std::int64_t b) const { return (a + b) % p; }
  std::int64_t sub(std::int64_t a, std::int64_t b) const { return reduce(a - b); }
  std::int64_t mul(std::int64_t a, std::int64_t b) const { return (a * b) % p; }
  std::int64_t pow(std::int64_t a, std::int64_t e) const {
    std::int64_t r = 1 % p;
    a = reduce(a);
    for (; e > 0; e >>= 1) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
    }
    return r;
  }
  std::int64_t inv(std::int64_t a) const {
    if (reduce(a) == 0) throw InputError("zero is not invertible");
    return pow(a, p - 2);
  }
  bool operator==(const PrimeField& o) const { return p == o.p; }
  bool operator!=(const PrimeField& o) const { return p != o.p; }
};

struct PrimeFieldMatrix {
  PrimeField field;
  int rows = 0, cols = 0;
  std::vector<std::int64_t> a;  // row-major, entries reduced

  PrimeFieldMatrix(PrimeField f, int r, int c) : field(f), rows(r), cols(c) {
    if (r < 0 || c < 0) throw InputError("matrix dimensions must be non-negative");
    a.assign(static_cast<std::size_t>(r) * c, 0);
  }

  std::int64_t at(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }
  void set(int r, int c, std::int64_t v) { a[static_cast<std::size_t>(r) * cols + c] = field.reduce(v); }

  std::vector<std::int64_t> column(int c) const {
    std::vector<std::int64_t> v(rows);
    for (int r = 0; r < rows; ++r) v[r] = at(r, c);
    return v;
  }
};

// full column rank over GF(p) via elimination
inline bool columns_independent(const PrimeFieldMatrix& m, const std::vector<int>& cols) {
  for (int c : cols)
    if (c < 0 || c >= m.cols) throw InputError("column index out of range");
  int k = static_cast<int>(cols.size());
  if (k > m.rows) return false;
  std::vector<std::vector<std::int64_t>> w(m.rows, std::vector<std::int64_t>(k));
  for (int r = 0; r < m.rows; ++r)
    for (int j = 0; j < k; ++j) w[r][j] = m.at(r, cols[j]);
  const PrimeField& f = m.field;
  int rank = 0;
  for (int j = 0; j < k; ++j) {
    int pivot = -1;
    for (int r = rank; r < m.rows; ++r)
      if (w[r][j] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) return false;
    std::swap(w[pivot], w[rank]);
    std::int64_t s = f.inv(w[rank][j]);
    for (int c = j; c < k; ++c) w[rank][c] = f.mul(w[rank][c], s);
    for (int r = 0; r < m.rows; ++r) {
      if (r == rank || w[r][j] == 0) continue;
      std::int64_t t = w[r][j];
      for (int c = j; c < k; ++c) w[r][c] = f.sub(w[r][c], f.mul(t, w[rank][c]));
    }
    ++rank;
  }
  return rank == k;
}

inline bool columns_independent(const PrimeFieldMatrix& m, Mask s) {
  return columns_independent(m, mask_elements(s));
}

inline int matrix_rank(const PrimeFieldMatrix& m) {
  std::vector<int> picked;
  for (int c = 0; c < m.cols; ++c) {
    picked.push_back(c);
    if (!columns_independent(m, picked)) picked.pop_back();
  }
  return static_cast<int>(picked.size());
}

class LinearOracle final : public MatroidOracle {
 public:
  explicit LinearOracle(PrimeFieldMatrix m) : MatroidOracle(m.cols), mat_(std::move(m)) {}

  const PrimeFieldMatrix& matrix() const { return mat_; }

 private:
  bool indep(Mask s) const override { return columns_independent(mat_, s); }

  PrimeFieldMatrix mat_;
};

// column i = (1, a_i, a_i^2, ..., a_i^{k-1}) with a_i = i+1; any k of these
// form a Vandermonde matrix, so the matroid is uniform of rank k
inline PrimeFieldMatrix uniform_representation(int k, int m, PrimeField field) {
  if (k < 0 || m < 0 || k > m) throw InputError("uniform representation needs 0 <= k <= m");
  if (field.p <= m) throw InputError("field too small: need p > m for distinct evaluation points");
  PrimeFieldMatrix out(field, k, m);
  for (int i = 0; i < m; ++i) {
    std::int64_t alpha = i + 1;
    for (int r = 0; r < k; ++r) out.set(r, i, field.pow(alpha, r));
  }
  return out;
}

struct ColumnColoring {
  std::vector<int> color;  // per column; 0 = plain, positive = class label
};

// relabel the positive classes to 1..k preserving their sorted order
inline ColumnColoring normalize_coloring(const ColumnColoring& c) {
  std::vector<int> labels;
  for (int v : c.color) {
    if (v < 0) throw InputError("column colors must be non-negative");
    if (v > 0) labels.push_back(v);
  }
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  ColumnColoring out = c;
  for (int& v : out.color)
    if (v > 0)
      v = 1 + static_cast<int>(std::lower_bound(labels.begin(), labels.end(), v) - labels.begin());
  return out;
}

// first pair of columns that are scalar multiples of each other (zero
// columns count against every column), or nullopt
inline std::optional<std::pair<int, int>> scalar_multiple_pair(const PrimeFieldMatrix& m) {
  auto is_zero = [&](int c) {
    for (int r = 0; r < m.rows; ++r)
      if (m.at(r, c) != 0) return false;
    return true;
  };
  for (int i = 0; i < m.cols; ++i)
    for (int j = i + 1; j < m.cols; ++j) {
      if (is_zero(i) || is_zero(j)) return std::make_pair(i, j);
      // find the scaling from the first nonzero row of column i
      std::int64_t scale = -1;
      bool multiple = true;
      for (int r = 0; r < m.rows && multiple; ++r) {
        std::int64_t vi = m.at(r, i), vj = m.at(r, j);
        if (vi == 0 && vj == 0) continue;
        if (vi == 0 || vj == 0) {
          multiple = false;
          break;
        }
        std::int64_t s = m.field.mul(vj, m.field.inv(vi));
        if (scale < 0)
          scale = s;
        else if (scale != s)
          multiple = false;
      }
      if (multiple) return std::make_pair(i, j);
    }
  return std::nullopt;
}

// scale every nonzero column so its first nonzero entry is 1; scalar
// multiples then become textually equal (used to prepare gadget inputs)
inline PrimeFieldMatrix normalize_column_scaling(const PrimeFieldMatrix& m) {
  PrimeFieldMatrix out = m;
  for (int c = 0; c < m.cols; ++c)
    for (int r = 0; r < m.rows; ++r)
      if (m.at(r, c) != 0) {
        std::int64_t s = m.field.inv(m.at(r, c));
        for (int rr = 0; rr < m.rows; ++rr) out.set(rr, c, m.field.mul(m.at(rr, c), s));
        break;
      }
  return out;
}

struct GadgetedMatrix {
  PrimeFieldMatrix mat;
  std::vector<int> owner;  // per output column: owning input column, -1 for originals
};

// Block construction forcing colour preservation: every column of class
// i >= 1 gets l = m + (m+1) + i companion columns in l fresh dimensions,
// its entries spread on a diagonal block and a +1/-1 circulant below, so
// the companions plus the column form the only circuit of length l+1
// through it. Distinct classes yield distinct circuit lengths.
inline GadgetedMatrix color_gadget_linear(const PrimeFieldMatrix& m, const ColumnColoring& coloring) {
  if (static_cast<int>(coloring.color.size()) != m.cols)
    throw InputError("coloring size does not match the column count");
  for (int v : coloring.color)
    if (v < 0) throw InputError("column colors must be non-negative");
  for (int c = 0; c < m.cols; ++c) {
    bool zero = true;
    for (int r = 0; r < m.rows && zero; ++r) zero = m.at(r, c) == 0;
    if (zero) throw InputError("column " + std::to_string(c) + " is zero; loops are not supported");
  }
  if (auto p = scalar_multiple_pair(m))
    throw InputError("columns " + std::to_string(p->first) + " and " + std::to_string(p->second) +
                     " are scalar multiples; normalize or drop one first");

  int mm = m.cols, mprime = mm + 1;
  long long extra_cols = 0;
  for (int v : coloring.color)
    if (v > 0) extra_cols += mm + mprime + v;
  if (m.rows + extra_cols > 4096 || mm + extra_cols > 4096)
    throw CapacityError("gadget output exceeds the supported size");

  PrimeFieldMatrix out(m.field, m.rows + static_cast<int>(extra_cols),
                       mm + static_cast<int>(extra_cols));
  GadgetedMatrix g{out, std::vector<int>(out.cols, -1)};
  for (int r = 0; r < m.rows; ++r)
    for (int c = 0; c < mm; ++c) g.mat.set(r, c, m.at(r, c));

  int row_off = m.rows, col_off = mm;
  for (int j = 0; j < mm; ++j) {
    if (coloring.color[j] == 0) continue;
    int l = mm + mprime + coloring.color[j];
    for (int t = 0; t < l; ++t) {
      int c = col_off + t;
      g.owner[c] = j;
      if (t < m.rows) g.mat.set(t, c, m.at(t, j));  // diagonal spread of the column
      g.mat.set(row_off + t, c, 1);
      g.mat.set(row_off + (t + l - 1) % l, c, m.field.sub(0, 1));
    }
    row_off += l;
    col_off += l;
  }
  return g;
}

namespace linear_detail {

// k columns (edges), k rows; nonsingular check through the shared
// elimination routine
inline bool minor_nonsingular(const PrimeField& f, const std::vector<std::vector<std::int64_t>>& cols) {
  int k = static_cast<int>(cols.size());
  PrimeFieldMatrix t(f, k, k);
  for (int c = 0; c < k; ++c)
    for (int r = 0; r < k; ++r) t.set(r, c, cols[c][r]);
  std::vector<int> all(k);
  std::iota(all.begin(), all.end(), 0);
  return columns_independent(t, all);
}

}  // namespace linear_detail

// Star matroid representation: edge {u,v} becomes the column
// [1, x_u+x_v, x_u*x_v, y_{e,1}, ..., y_{e,k-3}]. Edge sets sharing a
// vertex are dependent for free (their columns live in a rank-(k-1)
// space), so the greedy assignment only has to keep every fully
// determined non-star k-subset nonsingular. Values are drawn least-first
// and pairwise distinct; distinctness keeps later minors from becoming
// identically singular, which a fixed one-pass order could not repair.
inline PrimeFieldMatrix stk_construct(const Multigraph& x, int k, PrimeField field) {
  if (k < 3) throw InputError("star construction needs k >= 3");
  if (!x.is_simple()) throw InputError("star construction expects a simple graph");
  int n = x.vertex_count(), m = x.edge_count();
  if (n == 0) throw InputError("star construction needs a non-empty graph");
  for (int d : x.degrees())
    if (d < k) throw InputError("minimum degree must be at least k");
  __int128 need = 1;
  for (int i = 0; i < 2 * k - 1 && need <= field.p; ++i) need *= n;
  if (static_cast<__int128>(field.p) < need)
    throw InputError("field below the n^(2k-1) size bound");

  int yper = k - 3;
  std::vector<std::int64_t> xs(n, -1);
  std::vector<std::vector<std::int64_t>> ys(m, std::vector<std::int64_t>(yper, -1));
  std::set<std::int64_t> used;

  auto edge_determined = [&](int e) {
    const Edge& ed = x.edge(e);
    if (xs[ed.u] < 0 || xs[ed.v] < 0) return false;
    for (std::int64_t y : ys[e])
      if (y < 0) return false;
    return true;
  };
  auto edge_column = [&](int e) {
    const Edge& ed = x.edge(e);
    std::vector<std::int64_t> c(k);
    c[0] = 1;
    c[1] = field.add(xs[ed.u], xs[ed.v]);
    c[2] = field.mul(xs[ed.u], xs[ed.v]);
    for (int j = 0; j < yper; ++j) c[3 + j] = ys[e][j];
    return c;
  };
  auto is_star = [&](const std::vector<int>& es) {
    const Edge& first = x.edge(es[0]);
    for (int cand : {first.u, first.v}) {
      bool all = true;
      for (int e : es)
        if (x.edge(e).u != cand && x.edge(e).v != cand) {
          all = false;
          break;
        }
      if (all) return true;
    }
    return false;
  };

  std::vector<int> determined;
  auto try_value = [&](std::int64_t v, auto mark, auto unmark) {
    if (used.count(v)) return false;
    mark(v);
    std::vector<int> fresh;
    for (int e = 0; e < m; ++e)
      if (edge_determined(e) && std::find(determined.begin(), determined.end(), e) == determined.end())
        fresh.push_back(e);
    // every non-star k-subset using a fresh edge must be nonsingular
    std::vector<int> pool = determined;
    for (int e : fresh) pool.push_back(e);
    std::vector<int> pick;
    bool ok = true;
    auto rec = [&](auto&& self, std::size_t from, bool has_fresh) -> void {
      if (!ok) return;
      if (static_cast<int>(pick.size()) == k) {
        if (!has_fresh || is_star(pick)) return;
        std::vector<std::vector<std::int64_t>> cols;
        for (int e : pick) cols.push_back(edge_column(e));
        if (!linear_detail::minor_nonsingular(field, cols)) ok = false;
        return;
      }
      for (std::size_t i = from; i < pool.size(); ++i) {
        bool f = std::find(fresh.begin(), fresh.end(), pool[i]) != fresh.end();
        pick.push_back(pool[i]);
        self(self, i + 1, has_fresh || f);
        pick.pop_back();
        if (!ok) return;
      }
    };
    rec(rec, 0, false);
    if (!ok) {
      unmark();
      return false;
    }
    used.insert(v);
    for (int e : fresh) determined.push_back(e);
    return true;
  };
  auto assign = [&](auto mark, auto unmark) {
    for (std::int64_t v = 0; v < field.p; ++v)
      if (try_value(v, mark, unmark)) return;
    throw IntegrityError("greedy star assignment exhausted the field");
  };

  for (int v = 0; v < n; ++v)
    assign([&](std::int64_t t) { xs[v] = t; }, [&] { xs[v] = -1; });
  for (int e = 0; e < m; ++e)
    for (int j = 0; j < yper; ++j)
      assign([&](std::int64_t t) { ys[e][j] = t; }, [&] { ys[e][j] = -1; });

  PrimeFieldMatrix out(field, k, m);
  for (int e = 0; e < m; ++e) {
    auto col = edge_column(e);
    for (int r = 0; r < k; ++r) out.set(r, e, col[r]);
  }
  return out;
}

// attach a clique of size n+1 at every vertex, raising the minimum degree
// to at least n while preserving isomorphism of the originals
inline Multigraph attach_cliques(const Multigraph& x) {
  int n = x.vertex_count();
  Multigraph g(n + n * n);
  for (const Edge& e : x.edges()) g.add_edge(e.u, e.v, e.color);
  for (int v = 0; v < n; ++v) {
    std::vector<int> clique{v};
    for (int i = 0; i < n; ++i) clique.push_back(n + v * n + i);
    for (std::size_t i = 0; i < clique.size(); ++i)
      for (std::size_t j = i + 1; j < clique.size(); ++j) g.add_edge(clique[i], clique[j]);
  }
  return g;
}

// Rank-3 star representations whose matroid-isomorphism verdict equals the
// graph-isomorphism verdict. Inputs with minimum degree below 3 are padded
// with cliques first; unequal output ground sizes then already decide
// NONISO at comparison time.
inline std::pair<PrimeFieldMatrix, PrimeFieldMatrix> gi_to_lmib(
    const Multigraph& x1, const Multigraph& x2, std::optional<PrimeField> field = std::nullopt) {
  for (const Multigraph* g : {&x1, &x2}) {
    if (!g->is_simple()) throw InputError("graph isomorphism inputs must be simple");
    if (g->vertex_count() < 3) throw InputError("graphs below 3 vertices have no rank-3 star matroid");
  }
  auto pad = [](const Multigraph& g) {
    int mind = g.vertex_count();
    for (int d : g.degrees()) mind = std::min(mind, d);
    return mind < 3 ? attach_cliques(g) : g;
  };
  Multigraph p1 = pad(x1), p2 = pad(x2);
  if (!field) {
    std::int64_t nmax = std::max(p1.vertex_count(), p2.vertex_count());
    std::int64_t bound = 1;
    for (int i = 0; i < 5; ++i) {
      bound *= nmax;
      if (bound > 2147483647LL)
        throw CapacityError("n^5 field bound exceeds the prime field range");
    }
    field = PrimeField(next_prime(bound));
  }
  return {stk_construct(p1, 3, *field), stk_construct(p2, 3, *field)};
}

struct IncidenceGraph {
  Multigraph g;
  std::vector<int> side;  // 1 for basis vertices, 2 + column color for columns
  int columns = 0;        // vertices [0, columns) are column vertices
};

// Bipartite incidence of columns against maximal independent column sets
// (the bases). Partition-respecting graph isomorphism of two such graphs
// decides matroid isomorphism of the inputs.
inline IncidenceGraph incidence_graph(const PrimeFieldMatrix& m, int bound,
                                      const std::vector<int>* column_colors = nullptr) {
  if (column_colors && static_cast<int>(column_colors->size()) != m.cols)
    throw InputError("coloring size does not match the column count");
  int r = matrix_rank(m);
  if (r > bound) throw InputError("matrix rank exceeds the stated bound");

  std::vector<std::vector<int>> bases;
  std::vector<int> pick;
  auto rec = [&](auto&& self, int from) -> void {
    if (static_cast<int>(bases.size()) > 200000)
      throw CapacityError("too many maximal independent sets to enumerate");
    if (static_cast<int>(pick.size()) == r) {
      bases.push_back(pick);  // independence was checked on the way down
      return;
    }
    for (int c = from; c < m.cols; ++c) {
      pick.push_back(c);
      if (columns_independent(m, pick)) self(self, c + 1);
      pick.pop_back();
    }
  };
  rec(rec, 0);

  IncidenceGraph out{Multigraph(m.cols + static_cast<int>(bases.size())), {}, m.cols};
  out.side.assign(out.g.vertex_count(), 1);
  for (int c = 0; c < m.cols; ++c)
    out.side[c] = 2 + (column_colors ? (*column_colors)[c] : 0);
  for (std::size_t b = 0; b < bases.size(); ++b)
    for (int c : bases[b]) out.g.add_edge(c, m.cols + static_cast<int>(b));
  return out;
}

inline std::pair<IncidenceGraph, IncidenceGraph> lmib_to_gi(const PrimeFieldMatrix& a,
                                                            const PrimeFieldMatrix& b, int bound) {
  return {incidence_graph(a, bound), incidence_graph(b, bound)};
}

}  // namespace matiso
