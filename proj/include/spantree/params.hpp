#pragma once

// Degree-regime parameters and the Kullback-Leibler tail-bound calculator
// used by the threshold predictions.

#include <cstdint>

namespace spantree {

enum class Regime { high, low };

// (n, delta_max, eps, c_const, mu) plus derived quantities. k is integral in
// the high regime (ceil((n-1)/delta) - 1) and real in the low regime (n/delta);
// m_bar = n^(1-(1+eps)/k) is the per-vertex deficiency threshold. Integer
// cutoffs are taken by floor at point of use.
struct RegimeParams {
  Regime regime;
  int n = 0;
  int delta_max = 0;
  double eps = 0.0;
  double c_const = 0.0;
  double mu = 0.0;

  double k = 0.0;               // real in the low regime, integral in high
  int k_prime = 0;              // floor((1 - mu) * k)
  double deficiency = 0.0;      // m_bar = n^(1-(1+eps)/k)
  double leaf_threshold_low = 0.0;  // n / (c_const * log n)
};

// Throws std::invalid_argument on domain violations; in particular the high
// regime rejects k = ceil((n-1)/delta) - 1 < 2.
RegimeParams regime_params(int n, int delta_max, double eps, double c_const,
                           double mu, Regime regime);

// q + lambda concentration: kl = D(q+lambda || q), bound = (2 q^lambda)^n.
struct TailBound {
  double q = 0.0;
  double lambda = 0.0;
  long long n_trials = 0;
  double kl = 0.0;
  double bound = 0.0;
};

// Bernoulli Kullback-Leibler divergence D(x || y) for x, y in (0,1).
double kl_divergence(double x, double y);

// Requires 0 < q < 1, 0 < lambda < 1 - q; verifies the chain
// kl >= lambda*log(1/q) - log 2 numerically.
TailBound tail_bound(double q, double lambda, long long n_trials);

}  // namespace spantree
