#include "doctest.h"

#include <cmath>

#include "spantree/embedders.hpp"
#include "spantree/oracle.hpp"
#include "spantree/rng.hpp"

using namespace spantree;

namespace {

Tree star(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 1; i < n; ++i) e.push_back({0, i});
  return Tree(n, e);
}

// spider: center 0 with `legs` paths of `len` edges each
Tree spider(int legs, int len) {
  int n = 1 + legs * len;
  std::vector<std::pair<int, int>> e;
  int next = 1;
  for (int l = 0; l < legs; ++l) {
    int prev = 0;
    for (int j = 0; j < len; ++j) {
      e.push_back({std::min(prev, next), std::max(prev, next)});
      prev = next++;
    }
  }
  return Tree(n, e);
}

Graph complete(int n) { return gnp_sample(n, 1.0, 1); }

void expect_valid(const Graph& g, const Tree& t, const EmbedOutcome& out) {
  REQUIRE(out.ok());
  VerifyResult vr = verify_embedding(g, t, *out.embedding);
  CHECK(vr.ok);
}

}  // namespace

// ---- the verifier -------------------------------------------------------------

TEST_CASE("verifier catches each violation kind") {
  Graph c5(5);
  for (int i = 0; i < 5; ++i)
    c5.add_edge(std::min(i, (i + 1) % 5), std::max(i, (i + 1) % 5));
  Tree p5 = path_tree(5);

  Embedding good(5, 5);
  for (int i = 0; i < 5; ++i) good.place(i, i);
  CHECK(verify_embedding(c5, p5, good).ok);

  Embedding partial(5, 5);
  partial.place(0, 0);
  CHECK(!verify_embedding(c5, p5, partial).ok);  // totality
  CHECK(verify_embedding(c5, p5, partial, /*require_total=*/false).ok);

  Embedding nonedge(5, 5);
  nonedge.place(0, 0);
  nonedge.place(1, 2);  // 0-2 is not an edge of the 5-cycle
  VerifyResult vr = verify_embedding(c5, p5, nonedge, false);
  CHECK(!vr.ok);
  CHECK(vr.violation.find("non-edge") != std::string::npos);

  // mapping two tree vertices onto one host vertex is rejected at the source
  Embedding clash(5, 5);
  clash.place(0, 3);
  CHECK_THROWS_AS(clash.place(1, 3), std::logic_error);
}

// ---- bare paths -------------------------------------------------------------

TEST_CASE("bare paths: complete host, spanning path") {
  Graph g = complete(100);
  Tree t = path_tree(100);
  expect_valid(g, t, embed_with_bare_paths(g, t, 1, 3));
}

TEST_CASE("bare paths: deficient host, long path") {
  // removal capped at m-1 so the min-degree hypothesis delta >= n - m holds
  Graph g = dense_deficit_host(500, 4, 2.5, 17);
  REQUIRE(g.min_degree() >= 495);
  Tree t = path_tree(500);
  EmbedOutcome out = embed_with_bare_paths(g, t, 5, 3);
  expect_valid(g, t, out);
}

TEST_CASE("bare paths: star has none, precondition reported") {
  Graph g = complete(50);
  Tree t = star(50);
  EmbedOutcome out = embed_with_bare_paths(g, t, 1, 3);
  CHECK(!out.ok());
  CHECK(out.error == EmbedError::precondition);
}

TEST_CASE("bare paths best effort degenerates to plain greedy on K_n") {
  Graph g = complete(50);
  Tree t = star(50);
  expect_valid(g, t, embed_with_bare_paths(g, t, 1, 3, /*strict=*/false));
}

// ---- spread leaves ----------------------------------------------------------

TEST_CASE("spread leaves: caterpillar on the complete host, first attempt") {
  // 70 parents in a path, two leaves each; |L| = 140 > 20 log n keeps every
  // parent under the degree cap
  std::vector<std::pair<int, int>> e;
  int n_par = 70;
  for (int i = 0; i + 1 < n_par; ++i) e.push_back({i, i + 1});
  int next = n_par;
  std::vector<int> leaves;
  for (int i = 0; i < n_par; ++i)
    for (int j = 0; j < 2; ++j) {
      e.push_back({i, next});
      leaves.push_back(next++);
    }
  Tree t(next, e);
  Graph g = complete(next);
  EmbedOutcome out = embed_with_spread_leaves(g, t, leaves, 1, 50, 9);
  expect_valid(g, t, out);
  CHECK(out.attempts == 1);  // on K_n the spread sum is near |L| everywhere
}

TEST_CASE("spread leaves: spider with many legs on a slightly deficient host") {
  const int n = 401;  // 80 legs of length 5
  Tree t = spider(80, 5);
  REQUIRE(t.size() == n);
  Graph g = dense_deficit_host(n, 3, 1.5, 5);
  std::vector<int> leaves = t.leaves();
  int m = static_cast<int>(std::sqrt(n) / 5) + 1;
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    EmbedOutcome out = embed_with_spread_leaves(g, t, leaves, m, 50, seed);
    expect_valid(g, t, out);
  }
}

TEST_CASE("spread leaves: heavy parent trips the cap gate") {
  Graph g = complete(60);
  Tree t = star(60);
  EmbedOutcome out = embed_with_spread_leaves(g, t, t.leaves(), 1, 10, 4);
  CHECK(!out.ok());
  CHECK(out.error == EmbedError::precondition);
  // best effort skips the gate, but a lone parent can never satisfy the
  // spread property at its own image, so the resample loop runs dry; the
  // dispatch handles stars through the bare-path/greedy rung instead
  EmbedOutcome be = embed_with_spread_leaves(g, t, t.leaves(), 1, 10, 4,
                                             /*strict=*/false);
  CHECK(!be.ok());
  CHECK(be.error == EmbedError::retries_exhausted);
}

// ---- dominating clique -------------------------------------------------------

TEST_CASE("dominating clique: complete graph and star host") {
  DominatingCliqueResult r = find_dominating_clique(complete(30), 2, 50, 1);
  REQUIRE(r.clique.has_value());
  CHECK(r.clique->size() == 2);

  Graph host(20);  // star host: only the center dominates alone
  for (int i = 1; i < 20; ++i) host.add_edge(0, i);
  DominatingCliqueResult s = find_dominating_clique(host, 1, 200, 2);
  REQUIRE(s.clique.has_value());
  CHECK(s.clique->front() == 0);
}

TEST_CASE("dominating clique agrees with the exhaustive pair oracle") {
  for (std::uint64_t seed : {10u, 11u, 12u}) {
    Graph g = gnp_sample(400, 0.9, seed);
    DominationResult ex = has_dominating_set_of_size(g, 2, 3, seed);
    // at this density adjacent dominating pairs abound; when the oracle finds
    // any dominating pair the clique search must find an adjacent one
    if (ex.verdict == OracleVerdict::found) {
      DominatingCliqueResult r = find_dominating_clique(g, 2, 100, seed);
      REQUIRE(r.clique.has_value());
      CHECK(g.has_edge((*r.clique)[0], (*r.clique)[1]));
      CHECK(is_dominating_set(g, *r.clique));
    }
  }
}

TEST_CASE("dominating clique failure carries a coverage certificate") {
  Graph g(40);  // perfect matching: no small dominating set
  for (int i = 0; i < 40; i += 2) g.add_edge(i, i + 1);
  DominatingCliqueResult r = find_dominating_clique(g, 2, 30, 5);
  CHECK(!r.clique.has_value());
  CHECK(r.best_covered > 0);
  CHECK(r.best_covered < 40);
}

// ---- high range ---------------------------------------------------------------

TEST_CASE("high range: broom on the complete host (case II)") {
  // delta = 134 keeps k = ceil(399/134) - 1 = 2 inside the regime hypothesis
  const int n = 400;
  Broom b = build_broom(n, 134);
  RegimeParams params = regime_params(n, 134, 1.0, 12.0, 0.1, Regime::high);
  Graph g = complete(n);
  EmbedOutcome out = embed_high_range(g, b.tree, params, 5);
  expect_valid(g, b.tree, out);
  CHECK(out.detail == "case II via dominating clique");
}

TEST_CASE("high range: deficient host, success rate recorded") {
  const int n = 400;
  const double eps = 0.6;
  RegimeParams params = regime_params(n, 134, eps, 12.0, 0.06, Regime::high);
  REQUIRE(params.k == doctest::Approx(2.0));
  // deficiency threshold is 400^0.2 ~ 3.3; cap the removal at 2 so every
  // host meets the min-degree hypothesis
  Broom b = build_broom(n, 134);
  int successes = 0, ran = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Graph g = dense_deficit_host(n, 2, 1.0, Rng::stream(1234, seed).next());
    REQUIRE(static_cast<double>(g.min_degree()) >= n - params.deficiency);
    ++ran;
    EmbedOutcome out = embed_high_range(g, b.tree, params, seed);
    if (out.ok()) {
      VerifyResult vr = verify_embedding(g, b.tree, *out.embedding);
      CHECK(vr.ok);
      ++successes;
    }
  }
  MESSAGE("high-range deficient-host successes: ", successes, "/", ran);
  CHECK(ran == 50);
  CHECK(successes >= 45);
}

TEST_CASE("high range: case I spreads the light leaves") {
  // caterpillar: many light parents, no heavy ones, high max degree via a
  // single big-degree interior vertex that carries no leaves
  const int n = 401;
  Tree t = spider(80, 5);
  RegimeParams params = regime_params(n, 100, 1.0, 12.0, 0.1, Regime::high);
  Graph g = complete(n);
  EmbedOutcome out = embed_high_range(g, t, params, 8);
  expect_valid(g, t, out);
}

// ---- low range -----------------------------------------------------------------

TEST_CASE("low range: complete host always embeds") {
  // k = 5, eps = 4: deficiency threshold is exactly 1 (so the complete host
  // qualifies) and the feasibility inequality holds with lhs ~ 1.07
  const int n = 500;
  Broom b = build_broom(n, 100);
  RegimeParams params = regime_params(n, 100, 4.0, 12.0, 0.1, Regime::low);
  REQUIRE(params.eps * params.k_prime * n /
              (100.0 * params.c_const * std::log(n)) >=
          params.deficiency);
  Graph g = complete(n);
  for (std::uint64_t seed : {3u, 4u, 5u}) {
    EmbedOutcome out = embed_low_range(g, b.tree, params, 50, seed);
    expect_valid(g, b.tree, out);
    CHECK(out.attempts == 1);  // R1/R2 properties are vacuous on K_n
  }
}

TEST_CASE("low range: feasibility predicate evaluated on both sides") {
  const int n = 2000;
  // eps = 2 at k = 10: lhs ~ 3.9 against deficiency 2000^0.7 ~ 204, rejected
  RegimeParams bad = regime_params(n, 200, 2.0, 12.0, 0.1, Regime::low);
  Broom b = build_broom(n, 200);
  Graph g = dense_deficit_host(n, static_cast<int>(bad.deficiency) - 1, 20.0, 7);
  EmbedOutcome out = embed_low_range(g, b.tree, bad, 20, 5);
  CHECK(!out.ok());
  CHECK(out.error == EmbedError::predicate_failed);

  double lhs = bad.eps * bad.k_prime * n / (100.0 * bad.c_const * std::log(n));
  CHECK(lhs < bad.deficiency);  // direct numeric evaluation agrees
}

TEST_CASE("low range: randomized route succeeds where the predicate holds") {
  const int n = 2000;
  RegimeParams params = regime_params(n, 400, 3.5, 12.0, 0.1, Regime::low);
  double lhs = params.eps * params.k_prime * n /
               (100.0 * params.c_const * std::log(n));
  REQUIRE(lhs >= params.deficiency);
  Broom b = build_broom(n, 400);
  int successes = 0, ran = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Graph g = dense_deficit_host(n, 1, 0.5, Rng::stream(99, seed).next());
    if (static_cast<double>(g.min_degree()) < n - params.deficiency) continue;
    ++ran;
    EmbedOutcome out = embed_low_range(g, b.tree, params, 50, seed);
    if (out.ok()) {
      CHECK(verify_embedding(g, b.tree, *out.embedding).ok);
      CHECK(out.detail == "case II via R1/R2 sampling");
      ++successes;
    }
  }
  MESSAGE("low-range successes: ", successes, "/", ran);
  CHECK(successes > 0);
}

// ---- dispatch ------------------------------------------------------------------

TEST_CASE("embed_tree on complete hosts never fails") {
  Rng rng(2024);
  for (int n : {2, 3, 9, 40, 120, 500}) {
    Graph g = complete(n);
    std::vector<Tree> trees;
    trees.push_back(path_tree(n));
    if (n >= 3) trees.push_back(star(n));
    if (n >= 10) trees.push_back(*random_tree_bounded_degree(n, 6, rng.next()));
    if (n >= 10) trees.push_back(build_broom(n, (n + 3) / 4).tree);
    for (const Tree& t : trees) {
      EmbedConfig cfg;
      EmbedResult r = embed_tree(g, t, cfg, rng.next());
      REQUIRE_MESSAGE(r.report.success, "n=", n, " summary: ", r.report.summary());
      CHECK(verify_embedding(g, t, *r.outcome.embedding).ok);
    }
  }
}

TEST_CASE("embed_tree rejects size mismatch") {
  EmbedResult r = embed_tree(complete(5), path_tree(4), EmbedConfig{}, 1);
  CHECK(!r.report.success);
  CHECK(r.outcome.error == EmbedError::precondition);
}

TEST_CASE("embed_tree agrees with the oracle on small instances") {
  Rng rng(31337);
  int agreements = 0;
  for (int it = 0; it < 100; ++it) {
    int n = 9;
    std::vector<int> seq(n - 2);
    for (auto& s : seq) s = rng.below_int(n);
    Tree t = prufer_decode(n, seq);
    Graph g = gnp_sample(n, 0.5, rng.next());
    ContainmentResult oracle = contains_spanning_tree(g, t);
    REQUIRE(oracle.verdict != OracleVerdict::unknown);
    EmbedConfig cfg;
    EmbedResult r = embed_tree(g, t, cfg, rng.next());
    bool oracle_contains = oracle.verdict == OracleVerdict::found;
    CHECK(r.report.success == oracle_contains);
    if (!r.report.success) CHECK(r.report.certified_absent);
    if (r.report.success)
      CHECK(verify_embedding(g, t, *r.outcome.embedding).ok);
    ++agreements;
  }
  CHECK(agreements == 100);
}

TEST_CASE("embed_tree determinism for a fixed seed") {
  Graph g = dense_deficit_host(120, 3, 1.0, 5);
  Tree t = *random_tree_bounded_degree(120, 8, 9);
  EmbedConfig cfg;
  EmbedResult a = embed_tree(g, t, cfg, 42);
  EmbedResult b = embed_tree(g, t, cfg, 42);
  REQUIRE(a.report.success == b.report.success);
  if (a.report.success) {
    for (int tv = 0; tv < t.size(); ++tv)
      CHECK(a.outcome.embedding->image(tv) == b.outcome.embedding->image(tv));
  }
}
