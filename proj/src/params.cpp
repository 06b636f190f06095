#include "spantree/params.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "spantree/check.hpp"

namespace spantree {

RegimeParams regime_params(int n, int delta_max, double eps, double c_const,
                           double mu, Regime regime) {
  if (n < 3) throw std::invalid_argument("regime_params: n >= 3 required");
  if (delta_max < 1 || delta_max > n - 1)
    throw std::invalid_argument("regime_params: 1 <= delta <= n-1 required");
  if (eps <= 0.0) throw std::invalid_argument("regime_params: eps > 0 required");
  if (c_const <= 1.0)
    throw std::invalid_argument("regime_params: c_const > 1 required");
  if (mu <= 0.0 || mu >= 1.0)
    throw std::invalid_argument("regime_params: mu in (0,1) required");

  RegimeParams p;
  p.regime = regime;
  p.n = n;
  p.delta_max = delta_max;
  p.eps = eps;
  p.c_const = c_const;
  p.mu = mu;

  if (regime == Regime::high) {
    long long k = (static_cast<long long>(n) - 1 + delta_max - 1) / delta_max - 1;
    if (k < 2)
      throw std::invalid_argument(
          "regime_params: high regime needs ceil((n-1)/delta)-1 >= 2, got k=" +
          std::to_string(k));
    p.k = static_cast<double>(k);
  } else {
    p.k = static_cast<double>(n) / delta_max;
  }
  p.k_prime = static_cast<int>(std::floor((1.0 - mu) * p.k));
  p.deficiency = std::pow(n, 1.0 - (1.0 + eps) / p.k);
  p.leaf_threshold_low = n / (c_const * std::log(n));
  return p;
}

double kl_divergence(double x, double y) {
  SPANTREE_CHECK(x > 0.0 && x < 1.0 && y > 0.0 && y < 1.0,
                 "kl_divergence needs x, y in (0,1)");
  return x * std::log(x / y) + (1.0 - x) * std::log((1.0 - x) / (1.0 - y));
}

TailBound tail_bound(double q, double lambda, long long n_trials) {
  if (!(q > 0.0 && q < 1.0))
    throw std::invalid_argument("tail_bound: q in (0,1) required");
  if (!(lambda > 0.0 && lambda < 1.0 - q))
    throw std::invalid_argument("tail_bound: lambda in (0, 1-q) required");
  if (n_trials < 0)
    throw std::invalid_argument("tail_bound: n_trials >= 0 required");

  TailBound t;
  t.q = q;
  t.lambda = lambda;
  t.n_trials = n_trials;
  t.kl = kl_divergence(q + lambda, q);
  t.bound = std::pow(2.0 * std::pow(q, lambda), static_cast<double>(n_trials));
  // kl >= lambda*log(1/q) - log 2 holds for the whole domain; allow a hair of
  // floating slack.
  SPANTREE_CHECK(t.kl >= lambda * std::log(1.0 / q) - std::log(2.0) - 1e-12,
                 "tail_bound: KL chain inequality failed");
  return t;
}

}  // namespace spantree
