// Single-binary front end: isomorphism deciders, automorphism tools,
// instance generators and reductions over the text formats in io.hpp.
// Exit codes: 0 isomorphic/true, 1 non-isomorphic/false, 2 usage or input
// error, 3 internal integrity error. Verdict lines are the only stdout.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "matiso/gi.hpp"
#include "matiso/gmi.hpp"
#include "matiso/io.hpp"
#include "matiso/linear.hpp"
#include "matiso/matroid.hpp"
#include "matiso/multigraph.hpp"
#include "matiso/planarity.hpp"
#include "matiso/reductions.hpp"
#include "matiso/selfcheck.hpp"

namespace {

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw matiso::InputError("cannot read '" + path + "'");
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw matiso::InputError("cannot write '" + path + "'");
  return out;
}

matiso::Multigraph load_graph(const std::string& path) {
  auto in = open_input(path);
  return matiso::parse_graph(in);
}

matiso::PrimeFieldMatrix load_matrix(const std::string& path) {
  auto in = open_input(path);
  return matiso::parse_matrix(in);
}

matiso::ListOracle load_matroid(const std::string& path) {
  auto in = open_input(path);
  return matiso::parse_matroid(in);
}

std::vector<int> load_colors(const std::string& path) {
  auto in = open_input(path);
  return matiso::parse_colors(in);
}

std::vector<int> load_perm(const std::string& path) {
  auto in = open_input(path);
  return matiso::parse_perm(in);
}

// "graph" or "matrix", from the first non-comment word
std::string sniff_kind(const std::string& path) {
  auto in = open_input(path);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream is(line);
    std::string word;
    if (!(is >> word) || word[0] == '#') continue;
    return word;
  }
  throw matiso::InputError("'" + path + "' is empty");
}

int verdict(bool iso) {
  std::cout << (iso ? "ISO" : "NONISO") << "\n";
  return iso ? 0 : 1;
}

void emit_witness(const std::string& path, const std::vector<int>& perm) {
  if (path.empty()) return;
  auto out = open_output(path);
  matiso::write_perm(out, perm);
}

void emit_stats(const matiso::GmiContext& ctx, bool wanted) {
  if (!wanted) return;
  std::cerr << "gi_queries=" << ctx.gi_queries << "\n";
  for (const std::string& s : ctx.stats_lines) std::cerr << s << "\n";
}

void write_manifest(const std::string& path, const std::vector<std::pair<std::string, std::string>>& kv) {
  auto out = open_output(path);
  for (auto& [k, v] : kv) out << k << "=" << v << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"matroid isomorphism toolkit"};
  app.require_subcommand(1);

  std::string in1, in2, witness_path, colors1_path, colors2_path, out_prefix = "out", gens_prefix;
  bool stats = false, strict = false, fold_colors = false;
  int bound = -1, gen_n = 6, gen_ops = -1, gen_k = 3, gen_m = 4, gen_rows = 3, gen_cols = 4;
  long long gen_p = 5;
  unsigned long long seed = 1;
  std::string gen_kind;

  auto* gmi = app.add_subcommand("gmi", "2-isomorphism of graphic matroids");
  gmi->add_option("g1", in1)->required();
  gmi->add_option("g2", in2)->required();
  gmi->add_option("--witness", witness_path, "write the edge bijection as a perm file");
  gmi->add_flag("--stats", stats, "refinement statistics on stderr");
  gmi->add_flag("--strict-classing", strict, "route bond/polygon classing through gadget + GI");

  auto* lmi = app.add_subcommand("lmi", "isomorphism of bounded-rank linear matroids");
  lmi->add_option("m1", in1)->required();
  lmi->add_option("m2", in2)->required();
  lmi->add_option("--colors-1", colors1_path, "column coloring of the first matrix");
  lmi->add_option("--colors-2", colors2_path, "column coloring of the second matrix");
  lmi->add_option("--bound", bound, "rank bound (default: the larger matrix rank)");
  lmi->add_option("--witness", witness_path);

  auto* mi = app.add_subcommand("mi", "isomorphism of bounded-rank oracle matroids");
  mi->add_option("m1", in1)->required();
  mi->add_option("m2", in2)->required();
  mi->add_option("--bound", bound, "rank bound (default: the matroid rank)");
  mi->add_option("--witness", witness_path);
  mi->add_flag("--stats", stats);

  auto* gi = app.add_subcommand("gi", "graph isomorphism");
  gi->add_option("g1", in1)->required();
  gi->add_option("g2", in2)->required();
  gi->add_option("--colors-1", colors1_path, "vertex coloring of the first graph");
  gi->add_option("--colors-2", colors2_path, "vertex coloring of the second graph");
  gi->add_option("--witness", witness_path, "write the vertex bijection as a perm file");

  auto* aut = app.add_subcommand("aut", "automorphism generators and group order");
  aut->add_option("input", in1, "graph or matrix file")->required();
  aut->add_option("--gens", gens_prefix, "write generators to <prefix><k>.perm");

  auto* autm = app.add_subcommand("aut-member", "matroid automorphism membership");
  autm->add_option("input", in1, "graph or matrix file")->required();
  autm->add_option("perm", in2)->required();

  auto* gen = app.add_subcommand("gen", "generate instances with a ground-truth manifest");
  gen->add_option("kind", gen_kind, "whitney-pair | modk-gadget | uniform-rep | random-graph | random-matrix")
      ->required();
  gen->add_option("--n", gen_n, "vertices");
  gen->add_option("--m", gen_m, "edges or ground size");
  gen->add_option("--ops", gen_ops, "whitney op count (default n-2)");
  gen->add_option("--k", gen_k, "modulus or uniform rank");
  gen->add_option("--p", gen_p, "field modulus");
  gen->add_option("--rows", gen_rows);
  gen->add_option("--cols", gen_cols);
  gen->add_option("--seed", seed);
  gen->add_option("--out", out_prefix, "output path prefix");

  auto* reduce = app.add_subcommand("reduce", "emit a reduction's instance files");
  std::string reduce_kind;
  reduce->add_option("kind", reduce_kind, "mib-gmi | gi-lmi | lmi-gi")->required();
  reduce->add_option("in1", in1)->required();
  reduce->add_option("in2", in2)->required();
  reduce->add_option("--bound", bound, "rank bound where the reduction needs one");
  reduce->add_option("--out", out_prefix, "output path prefix");
  reduce->add_flag("--fold-colors", fold_colors, "apply the path gadget for an uncolored instance");

  auto* selfcheck = app.add_subcommand("selfcheck", "run the acceptance suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (gmi->parsed()) {
      matiso::GmiContext ctx;
      ctx.strict_classing = strict;
      auto w = matiso::gmi_test(load_graph(in1), load_graph(in2), &ctx);
      emit_stats(ctx, stats);
      if (w) emit_witness(witness_path, w->map);
      return verdict(w.has_value());
    }

    if (lmi->parsed()) {
      auto a = load_matrix(in1);
      auto b = load_matrix(in2);
      std::optional<std::vector<int>> ca, cb;
      if (!colors1_path.empty()) ca = load_colors(colors1_path);
      if (!colors2_path.empty()) cb = load_colors(colors2_path);
      if ((ca && static_cast<int>(ca->size()) != a.cols) ||
          (cb && static_cast<int>(cb->size()) != b.cols))
        throw matiso::InputError("coloring length does not match the column count");
      int r = bound >= 0 ? bound : std::max(matiso::matrix_rank(a), matiso::matrix_rank(b));
      auto w = matiso::lmib_decide(a, b, r, ca ? &*ca : nullptr, cb ? &*cb : nullptr);
      if (w) emit_witness(witness_path, w->map);
      return verdict(w.has_value());
    }

    if (mi->parsed()) {
      auto a = load_matroid(in1);
      auto b = load_matroid(in2);
      matiso::GmiContext ctx;
      int r = bound >= 0 ? bound : std::max(matiso::rank(a), matiso::rank(b));
      auto w = matiso::mib_decide(a, b, r, &ctx);
      emit_stats(ctx, stats);
      if (w) emit_witness(witness_path, w->map);
      return verdict(w.has_value());
    }

    if (gi->parsed()) {
      matiso::ColoredGraph a{load_graph(in1), {}};
      matiso::ColoredGraph b{load_graph(in2), {}};
      if (!colors1_path.empty()) a.vertex_colors = load_colors(colors1_path);
      if (!colors2_path.empty()) b.vertex_colors = load_colors(colors2_path);
      if ((!a.vertex_colors.empty() && static_cast<int>(a.vertex_colors.size()) != a.g.vertex_count()) ||
          (!b.vertex_colors.empty() && static_cast<int>(b.vertex_colors.size()) != b.g.vertex_count()))
        throw matiso::InputError("coloring length does not match the vertex count");
      auto w = matiso::graph_isomorphism(a, b);
      if (w) emit_witness(witness_path, *w);
      return verdict(w.has_value());
    }

    if (aut->parsed()) {
      std::string kind = sniff_kind(in1);
      matiso::GeneratorSet gens;
      int m = 0;
      if (kind == "graph") {
        auto g = load_graph(in1);
        m = g.edge_count();
        gens = matiso::gma_generators(g);
      } else if (kind == "matrix") {
        auto a = load_matrix(in1);
        m = a.cols;
        gens = matiso::lma_generators(a);
      } else {
        throw matiso::InputError("aut needs a graph or matrix file, got '" + kind + "'");
      }
      std::cout << "order " << matiso::group_order(m, gens) << "\n";
      if (!gens_prefix.empty())
        for (std::size_t i = 0; i < gens.gens.size(); ++i) {
          auto out = open_output(gens_prefix + std::to_string(i) + ".perm");
          matiso::write_perm(out, gens.gens[i].map);
        }
      return 0;
    }

    if (autm->parsed()) {
      std::string kind = sniff_kind(in1);
      auto perm = load_perm(in2);
      bool ok;
      if (kind == "graph") {
        auto g = load_graph(in1);
        if (static_cast<int>(perm.size()) != g.edge_count())
          throw matiso::InputError("permutation length does not match the edge count");
        ok = matiso::is_matroid_automorphism(g, perm);
      } else if (kind == "matrix") {
        auto a = load_matrix(in1);
        ok = matiso::is_matroid_automorphism(matiso::LinearOracle(a), perm);
      } else {
        throw matiso::InputError("aut-member needs a graph or matrix file, got '" + kind + "'");
      }
      std::cout << (ok ? "TRUE" : "FALSE") << "\n";
      return ok ? 0 : 1;
    }

    if (gen->parsed()) {
      std::mt19937_64 rng(seed);
      if (gen_kind == "whitney-pair") {
        matiso::Multigraph start = matiso::random_connected_multigraph(rng, gen_n, gen_m);
        auto pair = matiso::random_2iso_pair(start, gen_ops, rng());
        {
          auto out = open_output(out_prefix + "_1.g");
          matiso::write_graph(out, pair.first);
        }
        {
          auto out = open_output(out_prefix + "_2.g");
          matiso::write_graph(out, pair.second);
        }
        {
          auto out = open_output(out_prefix + ".log");
          for (const std::string& l : pair.log) out << l << "\n";
        }
        write_manifest(out_prefix + ".manifest",
                       {{"kind", "whitney-pair"},
                        {"two_isomorphic", "true"},
                        {"ops", std::to_string(pair.log.size())},
                        {"seed", std::to_string(seed)}});
      } else if (gen_kind == "modk-gadget") {
        auto g = matiso::gen_modk_gadget(gen_k);
        auto out = open_output(out_prefix + ".g");
        matiso::write_graph(out, g);
        write_manifest(out_prefix + ".manifest",
                       {{"kind", "modk-gadget"},
                        {"k", std::to_string(gen_k)},
                        {"vertices", std::to_string(g.vertex_count())},
                        {"edges", std::to_string(g.edge_count())},
                        {"shift_automorphisms", std::to_string(static_cast<long long>(gen_k) * gen_k)}});
      } else if (gen_kind == "uniform-rep") {
        auto m = matiso::uniform_representation(gen_k, gen_m, matiso::PrimeField{gen_p});
        auto out = open_output(out_prefix + ".mat");
        matiso::write_matrix(out, m);
        write_manifest(out_prefix + ".manifest",
                       {{"kind", "uniform-rep"},
                        {"uniform_k", std::to_string(gen_k)},
                        {"ground", std::to_string(gen_m)},
                        {"p", std::to_string(gen_p)}});
      } else if (gen_kind == "random-graph") {
        auto g = matiso::random_connected_multigraph(rng, gen_n, gen_m);
        auto out = open_output(out_prefix + ".g");
        matiso::write_graph(out, g);
        write_manifest(out_prefix + ".manifest",
                       {{"kind", "random-graph"},
                        {"connected", "true"},
                        {"planar", matiso::is_planar(g) ? "true" : "false"},
                        {"seed", std::to_string(seed)}});
      } else if (gen_kind == "random-matrix") {
        matiso::PrimeField f{gen_p};
        matiso::PrimeFieldMatrix m{f, gen_rows, gen_cols};
        for (int r = 0; r < gen_rows; ++r)
          for (int c = 0; c < gen_cols; ++c)
            m.set(r, c, static_cast<std::int64_t>(rng() % static_cast<unsigned long long>(f.p)));
        auto out = open_output(out_prefix + ".mat");
        matiso::write_matrix(out, m);
        write_manifest(out_prefix + ".manifest",
                       {{"kind", "random-matrix"},
                        {"rank", std::to_string(matiso::matrix_rank(m))},
                        {"p", std::to_string(gen_p)},
                        {"seed", std::to_string(seed)}});
      } else {
        throw matiso::InputError("unknown gen kind '" + gen_kind + "'");
      }
      return 0;
    }

    if (reduce->parsed()) {
      if (reduce_kind == "mib-gmi") {
        auto a = load_matroid(in1);
        auto b = load_matroid(in2);
        int r = bound >= 0 ? bound : std::max(matiso::rank(a), matiso::rank(b));
        auto [x1, x2] = matiso::mib_to_gmi(a, b, r);
        matiso::Multigraph g1 = fold_colors ? matiso::color_gadget_graphic(x1.g) : x1.g;
        matiso::Multigraph g2 = fold_colors ? matiso::color_gadget_graphic(x2.g) : x2.g;
        {
          auto out = open_output(out_prefix + "_1.g");
          matiso::write_graph(out, g1);
        }
        {
          auto out = open_output(out_prefix + "_2.g");
          matiso::write_graph(out, g2);
        }
        write_manifest(out_prefix + ".manifest",
                       {{"kind", "mib-gmi"},
                        {"bound", std::to_string(r)},
                        {"free_elements_1", std::to_string(x1.free_elems.size())},
                        {"free_elements_2", std::to_string(x2.free_elems.size())},
                        {"folded", fold_colors ? "true" : "false"}});
      } else if (reduce_kind == "gi-lmi") {
        auto g1 = load_graph(in1);
        auto g2 = load_graph(in2);
        auto [m1, m2] = matiso::gi_to_lmib(g1, g2);
        {
          auto out = open_output(out_prefix + "_1.mat");
          matiso::write_matrix(out, m1);
        }
        {
          auto out = open_output(out_prefix + "_2.mat");
          matiso::write_matrix(out, m2);
        }
        write_manifest(out_prefix + ".manifest",
                       {{"kind", "gi-lmi"}, {"p", std::to_string(m1.field.p)}});
      } else if (reduce_kind == "lmi-gi") {
        auto a = load_matrix(in1);
        auto b = load_matrix(in2);
        int r = bound >= 0 ? bound : std::max(matiso::matrix_rank(a), matiso::matrix_rank(b));
        auto ia = matiso::incidence_graph(a, r);
        auto ib = matiso::incidence_graph(b, r);
        {
          auto out = open_output(out_prefix + "_1.g");
          matiso::write_graph(out, ia.g);
        }
        {
          auto out = open_output(out_prefix + "_1.colors");
          matiso::write_colors(out, ia.side);
        }
        {
          auto out = open_output(out_prefix + "_2.g");
          matiso::write_graph(out, ib.g);
        }
        {
          auto out = open_output(out_prefix + "_2.colors");
          matiso::write_colors(out, ib.side);
        }
        write_manifest(out_prefix + ".manifest",
                       {{"kind", "lmi-gi"}, {"bound", std::to_string(r)}});
      } else {
        throw matiso::InputError("unknown reduce kind '" + reduce_kind + "'");
      }
      return 0;
    }

    if (selfcheck->parsed()) return matiso::run_acceptance(std::cout) ? 0 : 1;
  } catch (const matiso::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const matiso::CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << "\n";
    return 2;
  } catch (const matiso::IntegrityError& e) {
    std::cerr << "integrity error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
