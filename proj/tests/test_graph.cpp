#include "doctest.h"

#include <cmath>
#include <sstream>

#include "spantree/graph.hpp"
#include "spantree/params.hpp"
#include "spantree/rng.hpp"

using namespace spantree;

TEST_CASE("gnp degenerate probabilities") {
  Graph empty = gnp_sample(5, 0.0, 123);
  CHECK(empty.edge_count() == 0);
  Graph complete = gnp_sample(5, 1.0, 77);
  CHECK(complete.edge_count() == 10);
  CHECK(complete.min_degree() == 4);
}

TEST_CASE("gnp edge count lands within three binomial sigmas") {
  // exact binomial over C(1000,2) pairs at p = 0.5
  const int n = 1000;
  const double pairs = n * (n - 1) / 2.0;
  const double mean = 0.5 * pairs;
  const double sd = std::sqrt(pairs * 0.5 * 0.5);
  Graph g = gnp_sample(n, 0.5, 7);
  double cnt = static_cast<double>(g.edge_count());
  CHECK(cnt > mean - 3 * sd);
  CHECK(cnt < mean + 3 * sd);
}

TEST_CASE("gnp is reproducible per seed, including the sparse sampler") {
  for (double p : {0.03, 0.5, 0.95}) {
    Graph a = gnp_sample(300, p, 42);
    Graph b = gnp_sample(300, p, 42);
    CHECK(a.edge_count() == b.edge_count());
    for (int v = 0; v < 300; ++v) CHECK(a.neighbors(v) == b.neighbors(v));
    Graph c = gnp_sample(300, p, 43);
    bool same = a.edge_count() == c.edge_count();
    if (same) {
      bool identical = true;
      for (int v = 0; v < 300 && identical; ++v)
        identical = a.neighbors(v) == c.neighbors(v);
      CHECK(!identical);
    }
  }
}

TEST_CASE("sparse sampler matches its expectation roughly") {
  Graph g = gnp_sample(1000, 0.01, 19);
  double mean = 0.01 * 1000 * 999 / 2.0;
  double sd = std::sqrt(mean * 0.99);
  CHECK(static_cast<double>(g.edge_count()) > mean - 4 * sd);
  CHECK(static_cast<double>(g.edge_count()) < mean + 4 * sd);
}

TEST_CASE("min degree examples") {
  Graph k6 = gnp_sample(6, 1.0, 1);
  CHECK(k6.min_degree() == 5);
  Graph p5(5);
  for (int i = 0; i + 1 < 5; ++i) p5.add_edge(i, i + 1);
  CHECK(p5.min_degree() == 1);
  Graph e4(4);
  CHECK(e4.min_degree() == 0);
  for (int n = 2; n <= 40; ++n) CHECK(gnp_sample(n, 1.0, 1).min_degree() == n - 1);
}

TEST_CASE("edge list round trip") {
  Rng rng(4);
  for (int it = 0; it < 20; ++it) {
    Graph g = gnp_sample(60, 0.2 + 0.03 * it, rng.next());
    std::stringstream ss;
    write_edge_list(g, ss);
    Graph h = read_edge_list(ss);
    REQUIRE(h.size() == g.size());
    for (int v = 0; v < g.size(); ++v) CHECK(h.neighbors(v) == g.neighbors(v));
  }
}

TEST_CASE("edge list parser rejects malformed input") {
  auto parse = [](const std::string& s) {
    std::stringstream ss(s);
    return read_edge_list(ss);
  };
  CHECK_THROWS(parse(""));
  CHECK_THROWS(parse("3 1\n2 1\n"));      // u >= v
  CHECK_THROWS(parse("3 1\n0 3\n"));      // out of range
  CHECK_THROWS(parse("3 2\n0 1\n0 1\n")); // duplicate
  CHECK_THROWS(parse("3 2\n0 1\n"));      // truncated
  CHECK(parse("3 2\n0 1\n1 2\n").edge_count() == 2);
}

TEST_CASE("dense deficit host honors the removal cap") {
  Graph g = dense_deficit_host(200, 7, 3.0, 99);
  CHECK(g.min_degree() >= 199 - 7);
  Graph g0 = dense_deficit_host(50, 0, 2.0, 3);
  CHECK(g0.min_degree() == 49);
}

TEST_CASE("regime parameter arithmetic") {
  RegimeParams p = regime_params(100, 33, 1.0, 12.0, 0.1, Regime::high);
  CHECK(p.k == doctest::Approx(2.0));  // ceil(99/33) - 1
  CHECK(p.deficiency == doctest::Approx(1.0));  // 100^(1-2/2)
  CHECK(p.k_prime == 1);

  CHECK_THROWS_AS(regime_params(10000, 5000, 0.5, 12.0, 0.1, Regime::high),
                  std::invalid_argument);  // k = 1

  RegimeParams lo = regime_params(2000, 200, 2.0, 12.0, 0.1, Regime::low);
  CHECK(lo.k == doctest::Approx(10.0));
  CHECK(lo.k_prime == 9);
  CHECK(lo.deficiency == doctest::Approx(std::pow(2000.0, 0.7)));
  CHECK(lo.leaf_threshold_low ==
        doctest::Approx(2000.0 / (12.0 * std::log(2000.0))));
}

TEST_CASE("deficiency shrinks as eps grows") {
  double prev = 1e300;
  for (double eps : {0.2, 0.5, 1.0, 2.0}) {
    RegimeParams p = regime_params(500, 100, eps, 12.0, 0.05, Regime::low);
    CHECK(p.deficiency < prev);
    CHECK(p.deficiency < 500.0);
    prev = p.deficiency;
  }
}

TEST_CASE("tail bound worked examples") {
  TailBound t1 = tail_bound(0.25, 0.5, 10);
  CHECK(t1.bound == doctest::Approx(1.0));  // 2 * 0.25^0.5 = 1

  TailBound t2 = tail_bound(0.01, 0.5, 10);
  CHECK(t2.bound == doctest::Approx(std::pow(0.2, 10)).epsilon(1e-9));

  TailBound t3 = tail_bound(0.3, 1e-9, 5);
  CHECK(t3.kl == doctest::Approx(0.0).epsilon(1e-6));

  CHECK_THROWS(tail_bound(0.0, 0.5, 3));
  CHECK_THROWS(tail_bound(0.5, 0.6, 3));
}

TEST_CASE("kl dominates the log-linear lower bound on a grid") {
  for (double q = 0.001; q < 0.9; q += 0.013) {
    for (double f = 0.02; f < 1.0; f += 0.02) {
      double lambda = f * (1.0 - q);
      if (lambda <= 0 || lambda >= 1.0 - q) continue;
      double kl = kl_divergence(q + lambda, q);
      CHECK(kl >= lambda * std::log(1.0 / q) - std::log(2.0) - 1e-12);
    }
  }
}
