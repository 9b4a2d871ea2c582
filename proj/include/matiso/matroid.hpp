#pragma once
// Representation-independent matroid primitives: independence oracles, rank /
// closure / circuit / hyperplane enumeration, and the brute-force isomorphism
// search that serves as ground truth for the specialised solvers.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace matiso {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input: bad file, out-of-range index, violated precondition.
class InputError : public Error {
 public:
  explicit InputError(const std::string& msg) : Error(msg) {}
};

// Instance is structurally fine but too large for an enumeration-based step.
class CapacityError : public Error {
 public:
  explicit CapacityError(const std::string& msg) : Error(msg) {}
};

// Internal invariant broke; a bug trap, never a caller error.
class IntegrityError : public Error {
 public:
  explicit IntegrityError(const std::string& msg) : Error(msg) {}
};

// Subsets of a ground set of at most 64 elements, element i <-> bit i.
using Mask = std::uint64_t;

inline int mask_size(Mask s) { return std::popcount(s); }

inline Mask full_mask(int m) { return m >= 64 ? ~Mask{0} : (Mask{1} << m) - 1; }

inline std::vector<int> mask_elements(Mask s) {
  std::vector<int> out;
  while (s) {
    int b = std::countr_zero(s);
    out.push_back(b);
    s &= s - 1;
  }
  return out;
}

inline Mask mask_of(const std::vector<int>& elems, int m) {
  Mask s = 0;
  for (int e : elems) {
    if (e < 0 || e >= m) throw InputError("element index out of range: " + std::to_string(e));
    s |= Mask{1} << e;
  }
  return s;
}

// Canonical subset order: size first, then lexicographic on the sorted
// element sequence (for equal sizes the set holding the smallest
// distinguishing element comes first).
inline bool subset_less(Mask a, Mask b) {
  int sa = mask_size(a), sb = mask_size(b);
  if (sa != sb) return sa < sb;
  if (a == b) return false;
  Mask d = a ^ b;
  return (a >> std::countr_zero(d)) & 1;
}

struct GroundSet {
  int size = 0;
};

class MatroidOracle {
 public:
  virtual ~MatroidOracle() = default;

  int size() const { return ground_.size; }
  GroundSet ground() const { return ground_; }

  bool independent(Mask s) const {
    if (ground_.size < 64 && (s >> ground_.size) != 0)
      throw InputError("subset mentions elements outside the ground set");
    return indep(s);
  }
  bool independent(const std::vector<int>& elems) const {
    return independent(mask_of(elems, ground_.size));
  }

 protected:
  explicit MatroidOracle(int m) {
    if (m < 0 || m > 64) throw CapacityError("oracle ground sets are limited to 64 elements");
    ground_.size = m;
  }
  virtual bool indep(Mask s) const = 0;

 private:
  GroundSet ground_;
};

// Backed by an explicit list of maximal independent sets.
class ListOracle final : public MatroidOracle {
 public:
  ListOracle(int m, std::vector<Mask> maximal_sets) : MatroidOracle(m), bases_(std::move(maximal_sets)) {
    for (Mask b : bases_)
      if (size() < 64 && (b >> size()) != 0)
        throw InputError("maximal set mentions elements outside the ground set");
    if (bases_.empty()) bases_.push_back(0);  // rank-0 matroid
    std::sort(bases_.begin(), bases_.end(), subset_less);
    bases_.erase(std::unique(bases_.begin(), bases_.end()), bases_.end());
  }

  const std::vector<Mask>& maximal_sets() const { return bases_; }

 private:
  bool indep(Mask s) const override {
    for (Mask b : bases_)
      if ((s & ~b) == 0) return true;
    return false;
  }
  std::vector<Mask> bases_;
};

class UniformOracle final : public MatroidOracle {
 public:
  UniformOracle(int k, int m) : MatroidOracle(m), k_(k) {
    if (k < 0 || k > m) throw InputError("uniform matroid needs 0 <= k <= m");
  }
  int k() const { return k_; }

 private:
  bool indep(Mask s) const override { return mask_size(s) <= k_; }
  int k_;
};

class DirectSumOracle final : public MatroidOracle {
 public:
  DirectSumOracle(std::shared_ptr<const MatroidOracle> a, std::shared_ptr<const MatroidOracle> b)
      : MatroidOracle(a->size() + b->size()), a_(std::move(a)), b_(std::move(b)) {}

  int left_size() const { return a_->size(); }

 private:
  bool indep(Mask s) const override {
    Mask lo = s & full_mask(a_->size());
    Mask hi = s >> a_->size();
    return a_->independent(lo) && b_->independent(hi);
  }
  std::shared_ptr<const MatroidOracle> a_, b_;
};

inline DirectSumOracle direct_sum(std::shared_ptr<const MatroidOracle> a,
                                  std::shared_ptr<const MatroidOracle> b) {
  return DirectSumOracle(std::move(a), std::move(b));
}

constexpr int kEnumerationBound = 16;   // subset-enumeration operations
constexpr int kFactorialBound = 8;      // permutation-search operations

// Greedy augmentation in element order; correct for any matroid oracle.
inline int rank(const MatroidOracle& m, Mask t) {
  Mask acc = 0;
  for (int e : mask_elements(t)) {
    Mask cand = acc | (Mask{1} << e);
    if (m.independent(cand)) acc = cand;
  }
  return mask_size(acc);
}

inline int rank(const MatroidOracle& m) { return rank(m, full_mask(m.size())); }

inline Mask closure(const MatroidOracle& m, Mask f) {
  int r = rank(m, f);
  Mask out = f;
  for (int e = 0; e < m.size(); ++e) {
    Mask bit = Mask{1} << e;
    if ((f & bit) == 0 && rank(m, f | bit) == r) out |= bit;
  }
  return out;
}

namespace detail {

inline void check_enum_bound(const MatroidOracle& m, int bound, const char* what) {
  if (m.size() > bound)
    throw CapacityError(std::string(what) + ": ground set of " + std::to_string(m.size()) +
                        " exceeds the enumeration bound " + std::to_string(bound));
}

// Independence of every subset, as a flat table indexed by mask.
inline std::vector<bool> independence_table(const MatroidOracle& m) {
  std::vector<bool> t(std::size_t{1} << m.size());
  for (Mask s = 0; s < t.size(); ++s) t[s] = m.independent(s);
  return t;
}

}  // namespace detail

struct CircuitFamily {
  int ground_size = 0;
  std::vector<Mask> members;  // canonical subset order

  bool contains(Mask s) const { return std::binary_search(members.begin(), members.end(), s, subset_less); }
  bool operator==(const CircuitFamily&) const = default;
};

// Minimal dependent sets, by exhaustive enumeration.
inline CircuitFamily circuits(const MatroidOracle& m, int bound = kEnumerationBound) {
  detail::check_enum_bound(m, bound, "circuits");
  auto indep = detail::independence_table(m);
  CircuitFamily fam;
  fam.ground_size = m.size();
  for (Mask s = 1; s < indep.size(); ++s) {
    if (indep[s]) continue;
    bool minimal = true;
    for (Mask t = s; t && minimal; t &= t - 1) {
      Mask without = s & ~(t & -t);
      if (!indep[without]) minimal = false;
    }
    if (minimal) fam.members.push_back(s);
  }
  std::sort(fam.members.begin(), fam.members.end(), subset_less);
  return fam;
}

// Maximal sets whose rank is exactly rank(M) - 1.
inline std::vector<Mask> hyperplanes(const MatroidOracle& m, int bound = kEnumerationBound) {
  detail::check_enum_bound(m, bound, "hyperplanes");
  int r = rank(m);
  Mask all = full_mask(m.size());
  std::vector<Mask> flats;
  for (Mask s = 0; s <= all; ++s) {
    if (rank(m, s) != r - 1) continue;
    bool maximal = true;
    Mask rest = all & ~s;
    for (Mask t = rest; t && maximal; t &= t - 1) {
      if (rank(m, s | (t & -t)) == r - 1) maximal = false;
    }
    if (maximal) flats.push_back(s);
  }
  std::sort(flats.begin(), flats.end(), subset_less);
  return flats;
}

// True iff M is U_{k,m}: every k-subset independent, every (k+1)-subset not.
inline bool is_uniform(const MatroidOracle& m, int k, int bound = kEnumerationBound) {
  detail::check_enum_bound(m, bound, "is_uniform");
  if (k < 0 || k > m.size()) return false;
  Mask all = full_mask(m.size());
  for (Mask s = 0; s <= all; ++s) {
    int sz = mask_size(s);
    if (sz == k && !m.independent(s)) return false;
    if (sz == k + 1 && m.independent(s)) return false;
  }
  return true;
}

struct IsoWitness {
  std::vector<int> map;  // map[i] = image of element i

  int size() const { return static_cast<int>(map.size()); }
  Mask apply(Mask s) const {
    Mask out = 0;
    for (int e : mask_elements(s)) out |= Mask{1} << map[e];
    return out;
  }
  bool is_permutation() const {
    std::vector<bool> seen(map.size(), false);
    for (int v : map) {
      if (v < 0 || v >= static_cast<int>(map.size()) || seen[v]) return false;
      seen[v] = true;
    }
    return true;
  }
};

// A bijection is a matroid isomorphism iff it maps the circuit family of one
// side exactly onto the other's.
inline bool witness_preserves_circuits(const CircuitFamily& c1, const CircuitFamily& c2,
                                       const IsoWitness& w) {
  if (c1.members.size() != c2.members.size()) return false;
  for (Mask c : c1.members)
    if (!c2.contains(w.apply(c))) return false;
  return true;
}

namespace detail {

struct BruteState {
  const CircuitFamily* c1;
  const CircuitFamily* c2;
  std::vector<int> map, inv;
  std::vector<std::vector<Mask>> c1_by_top, c2_by_top;  // circuits whose largest element is i
};

inline bool brute_extend(BruteState& st, int depth, bool require_colors,
                         const std::vector<int>* colors1, const std::vector<int>* colors2) {
  int m = static_cast<int>(st.map.size());
  if (depth == m) return true;
  for (int img = 0; img < m; ++img) {
    if (st.inv[img] != -1) continue;
    if (require_colors && (*colors1)[depth] != (*colors2)[img]) continue;
    st.map[depth] = img;
    st.inv[img] = depth;
    bool ok = true;
    // Circuits completed by this assignment must land on circuits, both ways.
    for (Mask c : st.c1_by_top[depth]) {
      Mask image = 0;
      for (int e : mask_elements(c)) image |= Mask{1} << st.map[e];
      if (!st.c2->contains(image)) {
        ok = false;
        break;
      }
    }
    if (ok) {
      for (Mask c : st.c2_by_top[img]) {
        bool complete = true;
        Mask pre = 0;
        for (int e : mask_elements(c)) {
          if (st.inv[e] == -1) {
            complete = false;
            break;
          }
          pre |= Mask{1} << st.inv[e];
        }
        if (complete && !st.c1->contains(pre)) {
          ok = false;
          break;
        }
      }
    }
    if (ok && brute_extend(st, depth + 1, require_colors, colors1, colors2)) return true;
    st.map[depth] = -1;
    st.inv[img] = -1;
  }
  return false;
}

inline std::optional<IsoWitness> brute_force_search(const CircuitFamily& c1, const CircuitFamily& c2,
                                                    const std::vector<int>* colors1,
                                                    const std::vector<int>* colors2) {
  if (c1.ground_size != c2.ground_size) return std::nullopt;
  if (c1.members.size() != c2.members.size()) return std::nullopt;
  auto sizes = [](const CircuitFamily& f) {
    std::vector<int> s;
    for (Mask c : f.members) s.push_back(mask_size(c));
    std::sort(s.begin(), s.end());
    return s;
  };
  if (sizes(c1) != sizes(c2)) return std::nullopt;
  int m = c1.ground_size;
  BruteState st;
  st.c1 = &c1;
  st.c2 = &c2;
  st.map.assign(m, -1);
  st.inv.assign(m, -1);
  st.c1_by_top.assign(std::max(m, 1), {});
  st.c2_by_top.assign(std::max(m, 1), {});
  for (Mask c : c1.members) st.c1_by_top[63 - std::countl_zero(c)].push_back(c);
  for (Mask c : c2.members) st.c2_by_top[63 - std::countl_zero(c)].push_back(c);
  bool colored = colors1 != nullptr;
  if (colored) {
    auto cs1 = *colors1, cs2 = *colors2;
    std::sort(cs1.begin(), cs1.end());
    std::sort(cs2.begin(), cs2.end());
    if (cs1 != cs2) return std::nullopt;
  }
  if (!brute_extend(st, 0, colored, colors1, colors2)) return std::nullopt;
  return IsoWitness{st.map};
}

}  // namespace detail

// Exhaustive isomorphism search; returns the lexicographically least witness.
inline std::optional<IsoWitness> brute_force_iso(const MatroidOracle& m1, const MatroidOracle& m2,
                                                 int factorial_bound = kFactorialBound) {
  if (m1.size() != m2.size()) return std::nullopt;
  if (m1.size() > factorial_bound)
    throw CapacityError("brute_force_iso: ground set exceeds the factorial-search bound " +
                        std::to_string(factorial_bound));
  CircuitFamily c1 = circuits(m1, factorial_bound);
  CircuitFamily c2 = circuits(m2, factorial_bound);
  return detail::brute_force_search(c1, c2, nullptr, nullptr);
}

inline std::optional<IsoWitness> brute_force_iso(const CircuitFamily& c1, const CircuitFamily& c2) {
  return detail::brute_force_search(c1, c2, nullptr, nullptr);
}

// Colour-preserving variant: witness must map like-coloured elements.
inline std::optional<IsoWitness> brute_force_colored_iso(const CircuitFamily& c1,
                                                         const CircuitFamily& c2,
                                                         const std::vector<int>& colors1,
                                                         const std::vector<int>& colors2) {
  return detail::brute_force_search(c1, c2, &colors1, &colors2);
}

// Empty result means the independence system satisfies the matroid axioms.
inline std::optional<std::string> axiom_violation(const MatroidOracle& m, int bound = 10) {
  detail::check_enum_bound(m, bound, "axiom_violation");
  auto indep = detail::independence_table(m);
  if (!indep[0]) return "empty set is dependent";
  for (Mask s = 1; s < indep.size(); ++s) {
    if (!indep[s]) continue;
    for (Mask t = s; t; t &= t - 1)
      if (!indep[s & ~(t & -t)])
        return "downward closure fails at subset " + std::to_string(s);
  }
  for (Mask a = 1; a < indep.size(); ++a) {
    if (!indep[a]) continue;
    for (Mask b = 1; b < indep.size(); ++b) {
      if (!indep[b] || mask_size(a) <= mask_size(b)) continue;
      bool extended = false;
      for (Mask t = a & ~b; t; t &= t - 1) {
        if (indep[b | (t & -t)]) {
          extended = true;
          break;
        }
      }
      if (!extended)
        return "exchange fails for " + std::to_string(a) + " over " + std::to_string(b);
    }
  }
  return std::nullopt;
}

}  // namespace matiso
