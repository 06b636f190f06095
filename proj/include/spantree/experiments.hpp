#pragma once

// Desk-scale threshold experiments over G(n,p): exhaustive dominating-set
// scans, broom/random-tree embedding sweeps and min-degree statistics, with
// reproducible trial-level parallelism and CSV output.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace spantree {

enum class SweepMode { dominating_set, embed_broom, embed_random_tree, min_degree };

const char* sweep_mode_name(SweepMode m);
SweepMode sweep_mode_from_name(const std::string& name);

struct SweepConfig {
  SweepMode mode = SweepMode::dominating_set;
  int n = 400;
  int delta = 200;
  double eps = 0.6;
  double c_const = 0.0;  // <= 1: auto max(12, 2/eps)
  double mu = 0.0;       // outside (0,1): auto min(eps/10, 0.1)
  int trials = 100;
  std::uint64_t seed = 1;
  std::vector<double> p_grid;  // empty: derived {p^-, midpoint, p^+}
  int threads = 0;             // 0: SPANTREE_THREADS env, then hardware
  bool real_timing = false;    // default keeps elapsed_ms at 0 so output is
                               // byte-stable across runs and thread counts
};

struct SweepRow {
  double p = 0.0;
  int p_index = 0;
  int trial = 0;
  std::uint64_t seed = 0;
  bool outcome = false;
  int min_degree = 0;
  int max_nonneighbors = 0;      // max over v of |V \ N(v)|, v counted
  double mean_nonneighbors = 0;  // mean over v of the same
  long long elapsed_ms = 0;
};

// k for the derived grid and min-degree event: ceil((n-1)/delta).
int threshold_k(int n, int delta);
double p_lower(int n, int k, double eps);  // 1 - n^{-(1-eps)/k}
double p_upper(int n, int k, double eps);  // 1 - n^{-(1+2eps)/k}

// Expected number of dominating pairs in G(n,p): C(n,2) (1-q^2)^(n-2), q=1-p.
double expected_dominating_pairs(int n, double p);

std::vector<double> effective_p_grid(const SweepConfig& cfg);
std::vector<SweepRow> run_sweep(const SweepConfig& cfg);
void write_sweep_csv(const SweepConfig& cfg, const std::vector<SweepRow>& rows,
                     std::ostream& out);
void sweep_to_csv(const SweepConfig& cfg, std::ostream& out);

struct WilsonInterval {
  double lo = 0.0;
  double hi = 1.0;
};
WilsonInterval wilson95(int successes, int trials);

std::vector<std::string> preset_names();
SweepConfig preset_config(const std::string& name);
std::string preset_description(const std::string& name);

}  // namespace spantree
