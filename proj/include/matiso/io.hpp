#pragma once
// Text formats: graph, permutation, matroid (maximal independent sets),
// matrix over a prime field, and column colorings. Lines starting with '#'
// are comments; writers emit a version comment first. Parse errors carry
// 1-based line numbers.

#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "matiso/linear.hpp"
#include "matiso/matroid.hpp"
#include "matiso/multigraph.hpp"

namespace matiso {
namespace io_detail {

constexpr const char* kVersionComment = "# matiso v1";

struct LineCursor {
  std::istream& in;
  int line_no = 0;

  // next non-comment line; false at EOF
  bool next(std::string& out) {
    std::string raw;
    while (std::getline(in, raw)) {
      ++line_no;
      std::size_t i = raw.find_first_not_of(" \t\r");
      if (i != std::string::npos && raw[i] == '#') continue;
      out = raw;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("line " + std::to_string(line_no) + ": " + what);
  }
};

inline std::vector<long long> ints_of(const std::string& s, LineCursor& cur) {
  std::vector<long long> out;
  std::istringstream is(s);
  std::string tok;
  while (is >> tok) {
    try {
      std::size_t used = 0;
      long long v = std::stoll(tok, &used);
      if (used != tok.size()) cur.fail("not an integer: '" + tok + "'");
      out.push_back(v);
    } catch (const InputError&) {
      throw;
    } catch (...) {
      cur.fail("not an integer: '" + tok + "'");
    }
  }
  return out;
}

inline std::string expect_header(LineCursor& cur, const std::string& kind) {
  std::string line;
  while (cur.next(line)) {
    std::istringstream is(line);
    std::string word;
    if (!(is >> word)) continue;  // blank line before header
    if (word != kind) cur.fail("expected '" + kind + "' header, got '" + word + "'");
    std::string rest;
    std::getline(is, rest);
    return rest;
  }
  cur.fail("missing '" + kind + "' header");
}

}  // namespace io_detail

// ---- graph: `graph <n> <m>`, then `e <u> <v> [color]` ----

inline Multigraph parse_graph(std::istream& in) {
  io_detail::LineCursor cur{in};
  std::string rest = io_detail::expect_header(cur, "graph");
  auto hdr = io_detail::ints_of(rest, cur);
  if (hdr.size() != 2) cur.fail("graph header needs <n> <m>");
  if (hdr[0] < 0 || hdr[1] < 0) cur.fail("negative graph header counts");
  Multigraph g(static_cast<int>(hdr[0]));
  std::string line;
  int seen = 0;
  while (seen < hdr[1]) {
    if (!cur.next(line)) cur.fail("expected " + std::to_string(hdr[1]) + " edges, got " +
                                  std::to_string(seen));
    std::istringstream is(line);
    std::string tag;
    if (!(is >> tag)) continue;
    if (tag != "e") cur.fail("expected an 'e' line");
    std::string tail;
    std::getline(is, tail);
    auto v = io_detail::ints_of(tail, cur);
    if (v.size() != 2 && v.size() != 3) cur.fail("edge needs <u> <v> [color]");
    if (v[0] < 0 || v[0] >= hdr[0] || v[1] < 0 || v[1] >= hdr[0]) cur.fail("edge endpoint out of range");
    int color = v.size() == 3 ? static_cast<int>(v[2]) : 0;
    if (color < 0) cur.fail("negative edge color");
    try {
      g.add_edge(static_cast<int>(v[0]), static_cast<int>(v[1]), color);
    } catch (const InputError& e) {
      cur.fail(e.what());
    }
    ++seen;
  }
  return g;
}

inline void write_graph(std::ostream& out, const Multigraph& g) {
  out << io_detail::kVersionComment << "\n";
  out << "graph " << g.vertex_count() << " " << g.edge_count() << "\n";
  for (const Edge& e : g.edges()) {
    out << "e " << e.u << " " << e.v;
    if (e.color != 0) out << " " << e.color;
    out << "\n";
  }
}

// ---- permutation: `perm <m>`, then the image list ----

inline std::vector<int> parse_perm(std::istream& in) {
  io_detail::LineCursor cur{in};
  std::string rest = io_detail::expect_header(cur, "perm");
  auto hdr = io_detail::ints_of(rest, cur);
  if (hdr.size() != 1 || hdr[0] < 0) cur.fail("perm header needs <m>");
  std::vector<int> perm;
  std::string line;
  while (static_cast<long long>(perm.size()) < hdr[0] && cur.next(line))
    for (long long v : io_detail::ints_of(line, cur)) {
      if (v < 0 || v >= hdr[0]) cur.fail("permutation image out of range");
      perm.push_back(static_cast<int>(v));
    }
  if (static_cast<long long>(perm.size()) != hdr[0]) cur.fail("permutation shorter than its header");
  IsoWitness w{perm};
  if (!w.is_permutation()) cur.fail("image list is not a permutation");
  return perm;
}

inline void write_perm(std::ostream& out, const std::vector<int>& perm) {
  out << io_detail::kVersionComment << "\n";
  out << "perm " << perm.size() << "\n";
  for (int v : perm) out << v << "\n";
}

// ---- matroid: `matroid <m>`, then one maximal independent set per line ----

inline ListOracle parse_matroid(std::istream& in) {
  io_detail::LineCursor cur{in};
  std::string rest = io_detail::expect_header(cur, "matroid");
  auto hdr = io_detail::ints_of(rest, cur);
  if (hdr.size() != 1 || hdr[0] < 0) cur.fail("matroid header needs <m>");
  int m = static_cast<int>(hdr[0]);
  std::vector<Mask> maximal;
  std::string line;
  while (cur.next(line)) {
    Mask s = 0;
    for (long long v : io_detail::ints_of(line, cur)) {
      if (v < 0 || v >= m) cur.fail("element out of range");
      s |= Mask{1} << v;
    }
    maximal.push_back(s);  // an empty line is the empty basis
  }
  if (maximal.empty()) cur.fail("matroid needs at least one maximal independent set");
  try {
    return ListOracle(m, maximal);
  } catch (const InputError& e) {
    cur.fail(e.what());
  }
}

inline void write_matroid(std::ostream& out, int m, const std::vector<Mask>& maximal_sets) {
  out << io_detail::kVersionComment << "\n";
  out << "matroid " << m << "\n";
  for (Mask s : maximal_sets) {
    bool first = true;
    for (int e : mask_elements(s)) {
      out << (first ? "" : " ") << e;
      first = false;
    }
    out << "\n";
  }
}

// ---- matrix: `matrix <rows> <cols> <p>`, then row lines ----

inline PrimeFieldMatrix parse_matrix(std::istream& in) {
  io_detail::LineCursor cur{in};
  std::string rest = io_detail::expect_header(cur, "matrix");
  auto hdr = io_detail::ints_of(rest, cur);
  if (hdr.size() != 3) cur.fail("matrix header needs <rows> <cols> <p>");
  if (hdr[0] < 0 || hdr[1] < 0) cur.fail("negative matrix dimensions");
  std::optional<PrimeField> field;
  try {
    field.emplace(hdr[2]);
  } catch (const InputError& e) {
    cur.fail(e.what());
  }
  PrimeFieldMatrix m{*field, static_cast<int>(hdr[0]), static_cast<int>(hdr[1])};
  std::string line;
  for (int r = 0; r < m.rows; ++r) {
    if (!cur.next(line)) cur.fail("expected " + std::to_string(m.rows) + " rows, got " +
                                  std::to_string(r));
    auto v = io_detail::ints_of(line, cur);
    if (static_cast<int>(v.size()) != m.cols)
      cur.fail("row needs " + std::to_string(m.cols) + " entries, got " +
               std::to_string(v.size()));
    for (int c = 0; c < m.cols; ++c) m.set(r, c, v[c]);
  }
  return m;
}

inline void write_matrix(std::ostream& out, const PrimeFieldMatrix& m) {
  out << io_detail::kVersionComment << "\n";
  out << "matrix " << m.rows << " " << m.cols << " " << m.field.p << "\n";
  for (int r = 0; r < m.rows; ++r) {
    for (int c = 0; c < m.cols; ++c) out << (c ? " " : "") << m.at(r, c);
    out << "\n";
  }
}

// ---- coloring: `colors <m>`, then one class label per line ----

inline std::vector<int> parse_colors(std::istream& in) {
  io_detail::LineCursor cur{in};
  std::string rest = io_detail::expect_header(cur, "colors");
  auto hdr = io_detail::ints_of(rest, cur);
  if (hdr.size() != 1 || hdr[0] < 0) cur.fail("colors header needs <m>");
  std::vector<int> colors;
  std::string line;
  while (static_cast<long long>(colors.size()) < hdr[0] && cur.next(line)) {
    auto v = io_detail::ints_of(line, cur);
    if (v.size() != 1) cur.fail("expected one class label per line");
    if (v[0] < 0) cur.fail("negative color class");
    colors.push_back(static_cast<int>(v[0]));
  }
  if (static_cast<long long>(colors.size()) != hdr[0]) cur.fail("fewer labels than the header");
  return colors;
}

inline void write_colors(std::ostream& out, const std::vector<int>& colors) {
  out << io_detail::kVersionComment << "\n";
  out << "colors " << colors.size() << "\n";
  for (int c : colors) out << c << "\n";
}

}  // namespace matiso
