// Command-line harness: instance generation, embedding, the tree dichotomy,
// exact oracles and the G(n,p) threshold sweeps (CSV).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "spantree/embedders.hpp"
#include "spantree/experiments.hpp"
#include "spantree/graph.hpp"
#include "spantree/oracle.hpp"
#include "spantree/tree.hpp"

using namespace spantree;

namespace {

std::ostream& open_out(std::ofstream& file, const std::string& path) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path);
  if (!file) throw std::runtime_error("cannot open " + path + " for writing");
  return file;
}

std::vector<double> parse_grid(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stod(item));
  }
  return out;
}

int cmd_sweep(const SweepConfig& cfg, const std::string& out_path) {
  std::ofstream file;
  std::ostream& out = open_out(file, out_path);
  sweep_to_csv(cfg, out);
  return 0;
}

int cmd_embed(const std::string& graph_path, const std::string& tree_path,
              const EmbedConfig& cfg, std::uint64_t seed,
              const std::string& out_path) {
  Graph g;
  Tree t = path_tree(2);
  try {
    g = read_edge_list_file(graph_path);
    t = read_tree_file(tree_path);
  } catch (const std::exception& ex) {
    std::cerr << "input error: " << ex.what() << "\n";
    return 2;
  }
  if (g.size() != t.size()) {
    std::cerr << "input error: graph has " << g.size() << " vertices, tree has "
              << t.size() << "\n";
    return 2;
  }
  EmbedResult res = embed_tree(g, t, cfg, seed);
  std::cerr << "strategies: " << res.report.summary() << "\n";
  if (!res.report.success) {
    std::cerr << (res.report.certified_absent
                      ? "no copy exists (oracle-certified)\n"
                      : "all strategies failed; containment undecided\n");
    return 1;
  }
  std::ofstream file;
  std::ostream& out = open_out(file, out_path);
  const Embedding& e = *res.outcome.embedding;
  for (int tv = 0; tv < t.size(); ++tv) out << tv << " " << e.image(tv) << "\n";
  return 0;
}

int cmd_gen(const std::string& kind, int n, double p, int delta,
            std::uint64_t seed, const std::string& out_path) {
  std::ofstream file;
  std::ostream& out = open_out(file, out_path);
  if (kind == "gnp") {
    Graph g = gnp_sample(n, p, seed);
    write_edge_list(g, out);
    std::cerr << "gnp n=" << n << " p=" << p << " edges=" << g.edge_count()
              << " min_degree=" << g.min_degree() << "\n";
    return 0;
  }
  if (kind == "broom") {
    Broom b = build_broom(n, delta);
    write_tree(b.tree, out);
    std::cerr << "broom n=" << n << " delta=" << delta
              << " k=" << b.core.size() << " max_degree=" << b.tree.max_degree()
              << "\n";
    return 0;
  }
  if (kind == "random-tree") {
    std::optional<Tree> t = random_tree_bounded_degree(n, delta, seed);
    if (!t) {
      std::cerr << "rejection budget exhausted for delta=" << delta
                << "; request --kind path for the unique max-degree-2 tree\n";
      return 1;
    }
    write_tree(*t, out);
    std::cerr << "random-tree n=" << n << " delta=" << delta
              << " max_degree=" << t->max_degree() << "\n";
    return 0;
  }
  if (kind == "path") {
    Tree t = path_tree(n);
    write_tree(t, out);
    std::cerr << "path n=" << n << "\n";
    return 0;
  }
  std::cerr << "unknown kind: " << kind << "\n";
  return 2;
}

int cmd_dichotomy(const std::string& tree_path, int k, int ell) {
  Tree t = read_tree_file(tree_path);
  Dichotomy d = dichotomy(t, k, ell);
  if (d.leaf_branch) {
    std::cout << "leaf branch: " << d.leaf_witness.size() << " leaves >= "
              << ell << "\n";
    for (int v : d.leaf_witness) std::cout << v << "\n";
  } else {
    std::cout << "path branch: " << d.paths.paths.size()
              << " disjoint bare paths of length " << k
              << " (required >= " << d.required_paths << ")\n";
    for (const auto& path : d.paths.paths) {
      for (std::size_t i = 0; i < path.size(); ++i)
        std::cout << (i ? " " : "") << path[i];
      std::cout << "\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spantree: spanning-tree embedding engine and experiment harness"};
  app.require_subcommand(1);

  // ---- sweep
  SweepConfig scfg;
  std::string preset, mode_name = "dominating-set", p_grid_csv, sweep_out;
  std::vector<double> p_flags;
  auto* sweep = app.add_subcommand("sweep", "G(n,p) threshold sweep, CSV out");
  sweep->add_option("--preset", preset, "named preset (thm13-k2, cor12-mindeg, embed-lowrange)");
  sweep->add_option("--mode", mode_name, "dominating-set|embed-broom|embed-random-tree|min-degree");
  sweep->add_option("--n", scfg.n, "vertex count");
  sweep->add_option("--delta", scfg.delta, "max tree degree bound");
  sweep->add_option("--eps", scfg.eps, "epsilon");
  sweep->add_option("--cconst", scfg.c_const, "C constant (auto if <= 1)");
  sweep->add_option("--mu", scfg.mu, "mu (auto if outside (0,1))");
  sweep->add_option("--trials", scfg.trials, "trials per grid point");
  sweep->add_option("--seed", scfg.seed, "master seed");
  sweep->add_option("--p", p_flags, "explicit grid point (repeatable)");
  sweep->add_option("--p-grid", p_grid_csv, "comma-separated grid");
  sweep->add_option("--out", sweep_out, "output file (default stdout)");

  // ---- embed
  std::string embed_graph, embed_tree_path, embed_out;
  EmbedConfig ecfg;
  std::uint64_t embed_seed = 1;
  bool no_oracle = false;
  auto* embed = app.add_subcommand("embed", "embed a tree file into a graph file");
  embed->add_option("--graph", embed_graph, "host graph edge list")->required();
  embed->add_option("--tree", embed_tree_path, "tree edge list")->required();
  embed->add_option("--eps", ecfg.eps, "epsilon");
  embed->add_option("--cconst", ecfg.c_const, "C constant (auto if <= 1)");
  embed->add_option("--mu", ecfg.mu, "mu (auto if outside (0,1))");
  embed->add_option("--retries", ecfg.retries, "resample budget");
  embed->add_option("--seed", embed_seed, "seed");
  embed->add_flag("--no-oracle", no_oracle, "skip the exact-oracle fallback");
  embed->add_option("--oracle-limit", ecfg.oracle_limit, "max n for the oracle");
  embed->add_option("--out", embed_out, "mapping output (default stdout)");

  // ---- gen
  std::string gen_kind, gen_out;
  int gen_n = 100, gen_delta = 10;
  double gen_p = 0.5;
  std::uint64_t gen_seed = 1;
  auto* gen = app.add_subcommand("gen", "generate instances (edge-list files)");
  gen->add_option("--kind", gen_kind, "gnp|broom|random-tree|path")->required();
  gen->add_option("--n", gen_n, "vertex count")->required();
  gen->add_option("--p", gen_p, "edge probability (gnp)");
  gen->add_option("--delta", gen_delta, "max degree (broom, random-tree)");
  gen->add_option("--seed", gen_seed, "seed");
  gen->add_option("--out", gen_out, "output file (default stdout)");

  // ---- dichotomy
  std::string dich_tree;
  int dich_k = 4, dich_ell = 1;
  auto* dich = app.add_subcommand("dichotomy", "leaves-or-bare-paths report");
  dich->add_option("--tree", dich_tree, "tree edge list")->required();
  dich->add_option("--k", dich_k, "bare path length")->required();
  dich->add_option("--ell", dich_ell, "leaf target")->required();

  // ---- oracle
  auto* oracle = app.add_subcommand("oracle", "exact small-scale queries");
  oracle->require_subcommand(1);
  std::string oc_graph, oc_tree;
  long long oc_budget = 50'000'000;
  auto* oc = oracle->add_subcommand("contains", "spanning-tree containment");
  oc->add_option("--graph", oc_graph)->required();
  oc->add_option("--tree", oc_tree)->required();
  oc->add_option("--node-budget", oc_budget, "backtracking node budget");
  std::string od_graph;
  int od_k = 2;
  auto* od = oracle->add_subcommand("dominating", "dominating set of size k");
  od->add_option("--graph", od_graph)->required();
  od->add_option("--k", od_k)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sweep) {
      if (!preset.empty()) {
        SweepConfig pc = preset_config(preset);
        // explicit flags override the preset
        if (sweep->count("--mode")) pc.mode = sweep_mode_from_name(mode_name);
        if (sweep->count("--n")) pc.n = scfg.n;
        if (sweep->count("--delta")) pc.delta = scfg.delta;
        if (sweep->count("--eps")) pc.eps = scfg.eps;
        if (sweep->count("--cconst")) pc.c_const = scfg.c_const;
        if (sweep->count("--mu")) pc.mu = scfg.mu;
        if (sweep->count("--trials")) pc.trials = scfg.trials;
        if (sweep->count("--seed")) pc.seed = scfg.seed;
        scfg = pc;
      } else {
        scfg.mode = sweep_mode_from_name(mode_name);
      }
      if (!p_flags.empty()) scfg.p_grid = p_flags;
      if (!p_grid_csv.empty()) scfg.p_grid = parse_grid(p_grid_csv);
      if (const char* tm = std::getenv("SPANTREE_TIMING"))
        scfg.real_timing = std::string(tm) == "real";
      return cmd_sweep(scfg, sweep_out);
    }
    if (*embed) {
      ecfg.use_oracle = !no_oracle;
      return cmd_embed(embed_graph, embed_tree_path, ecfg, embed_seed, embed_out);
    }
    if (*gen) return cmd_gen(gen_kind, gen_n, gen_p, gen_delta, gen_seed, gen_out);
    if (*dich) return cmd_dichotomy(dich_tree, dich_k, dich_ell);
    if (*oc) {
      Graph g = read_edge_list_file(oc_graph);
      Tree t = read_tree_file(oc_tree);
      ContainmentOptions opt;
      opt.node_budget = oc_budget;
      ContainmentResult r = contains_spanning_tree(g, t, opt);
      if (r.verdict == OracleVerdict::found) {
        for (int tv = 0; tv < t.size(); ++tv)
          std::cout << tv << " " << r.embedding->image(tv) << "\n";
        return 0;
      }
      std::cout << (r.verdict == OracleVerdict::absent ? "absent" : "unknown")
                << "\n";
      return r.verdict == OracleVerdict::absent ? 1 : 2;
    }
    if (*od) {
      Graph g = read_edge_list_file(od_graph);
      DominationResult r = has_dominating_set_of_size(g, od_k);
      if (r.verdict == OracleVerdict::found) {
        for (std::size_t i = 0; i < r.set.size(); ++i)
          std::cout << (i ? " " : "") << r.set[i];
        std::cout << "\n";
        return 0;
      }
      std::cout << (r.verdict == OracleVerdict::absent ? "absent" : "unknown")
                << "\n";
      return r.verdict == OracleVerdict::absent ? 1 : 2;
    }
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  }
  return 2;
}
