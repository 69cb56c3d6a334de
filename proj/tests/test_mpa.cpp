#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "hinfluence/error.hpp"
#include "hinfluence/exact.hpp"
#include "hinfluence/generators.hpp"
#include "hinfluence/mpa.hpp"
#include "oracles.hpp"

using namespace hinfluence;

namespace {

WeightedFieldGraph path_graph() {
  std::vector<WeightedEdge> e{{kField, 1, 1.0}, {1, 2, 1.0}};
  return build_graph(2, e);
}

WeightedFieldGraph random_graph(std::uint64_t seed, std::size_t n, std::size_t m) {
  RandomGraphSpec spec;
  spec.n = n;
  spec.m = m;
  spec.weight_min = 0.2;
  spec.weight_max = 3.0;
  spec.field_probability = 0.4;
  spec.field_weight = 0.3;
  spec.seed = seed;
  return generate_erdos_renyi(spec);
}

}  // namespace

TEST_CASE("standard initialisation") {
  auto g = path_graph();
  auto s = mpa_init(g);
  CHECK(s.t == 0);
  CHECK(s.w.size() == 2 * g.edge_count());
  CHECK(s.w_at(g, 1, 0) == 1.0);
  CHECK(s.w_at(g, 1, 2) == 1.0);
  CHECK(s.w_at(g, 2, 1) == 1.0);
  CHECK(s.w_at(g, 0, 1) == 0.0);
  CHECK(s.h_at(g, 1, 0) == 1.0);
  CHECK(s.h_at(g, 0, 1) == 0.0);
}

TEST_CASE("one synchronous step on the path, evaluated by hand") {
  auto g = path_graph();
  auto s = mpa_step(g, mpa_init(g));
  CHECK(s.t == 1);
  CHECK(s.w_at(g, 1, 2) == 0.5);
  CHECK(s.h_at(g, 1, 2) == 1.0);
  CHECK(s.w_at(g, 2, 1) == 1.0);
  CHECK(s.h_at(g, 2, 1) == 1.0);
  CHECK(s.w_at(g, 0, 1) == 0.0);
  CHECK(s.h_at(g, 0, 1) == 0.0);

  CHECK(estimate(g, s, 2) == 1.5);
  CHECK(estimate(g, s, 1) == 2.0);
  auto all = estimate_all(g, s);
  CHECK(all.kind == ProfileKind::MpaEstimate);
  CHECK(all.round == 1);
  CHECK(all[1] == 2.0);
  CHECK(all[2] == 1.5);
}

TEST_CASE("leaf messages stay at (1, 1)") {
  auto g = random_graph(3, 30, 40);
  auto s = mpa_init(g);
  for (int t = 0; t < 25; ++t) {
    s = mpa_step(g, s);
    for (NodeId i = 1; i <= g.n(); ++i) {
      if (g.degree_count(i) != 1) continue;
      const std::size_t p = g.first_slot(i);
      CHECK(s.w[p] == 1.0);
      CHECK(s.h[p] == 1.0);
    }
  }
}

TEST_CASE("first step only moves messages whose other inputs include the field") {
  auto g = random_graph(5, 30, 60);
  auto s = mpa_step(g, mpa_init(g));
  for (std::size_t p = 0; p < g.directed_edge_count(); ++p) {
    const NodeId i = g.origin(p);
    if (i == kField) continue;
    bool touches_field = false;
    for (const auto& nb : g.neighbors(i)) touches_field |= (nb.id == kField && g.target(p) != kField);
    if (!touches_field) CHECK(s.w[p] == 1.0);
    else CHECK(s.w[p] < 1.0);
  }
}

TEST_CASE("star leaves keep estimate 1") {
  std::vector<WeightedEdge> star{{kField, 1, 0.5}, {kField, 2, 0.5}, {kField, 3, 0.5}};
  auto g = build_graph(3, star);
  auto s = mpa_init(g);
  for (int t = 0; t < 5; ++t) {
    for (NodeId l = 1; l <= 3; ++l) CHECK(estimate(g, s, l) == 1.0);
    s = mpa_step(g, s);
  }
}

TEST_CASE("estimates at t = 0 count the non-field neighbours") {
  auto g = random_graph(8, 25, 50);
  auto est = estimate_all(g, mpa_init(g));
  for (NodeId l = 1; l <= g.n(); ++l) {
    double expected = 1.0;
    for (const auto& nb : g.neighbors(l)) expected += nb.id != kField ? 1.0 : 0.0;
    CHECK(est[l] == expected);
  }
  CHECK_THROWS_AS(estimate(g, mpa_init(g), kField), Error);
}

TEST_CASE("mpa_run on the path stops at round 2 with zero distances") {
  auto g = path_graph();
  auto run = mpa_run(g, mpa_init(g));
  CHECK(run.trace.stop_round == 2);
  CHECK(run.trace.stop_reason == StopReason::Tolerance);
  REQUIRE(run.trace.records.size() == 3);
  for (std::size_t k = 0; k < 3; ++k) CHECK(run.trace.records[k].t == k);
  CHECK(run.trace.records[1].d_w == 0.0);
  CHECK(run.trace.records[1].d_h == 0.0);
  CHECK(run.trace.records[2].d_w == 0.0);
  CHECK(run.trace.records[2].d_h == 0.0);
  auto est = estimate_all(g, run.state);
  CHECK(est[1] == 2.0);
  CHECK(est[2] == 1.5);
}

TEST_CASE("trace records are consecutive and end at zero distance") {
  auto g = random_graph(21, 30, 70);
  auto run = mpa_run(g, mpa_init(g));
  REQUIRE(run.trace.records.size() == run.trace.stop_round + 1);
  for (std::size_t k = 0; k < run.trace.records.size(); ++k) CHECK(run.trace.records[k].t == k);
  CHECK(run.trace.records.back().d_w == 0.0);
  CHECK(run.trace.records.back().d_h == 0.0);
  REQUIRE(run.trace.w_round.has_value());
  REQUIRE(run.trace.h_round.has_value());
  CHECK(*run.trace.w_round <= run.trace.stop_round);
  CHECK(*run.trace.h_round <= run.trace.stop_round);
}

TEST_CASE("round cap is reported, not raised") {
  auto g = random_graph(2, 30, 80);
  StoppingConfig cfg;
  cfg.max_rounds = 3;
  auto run = mpa_run(g, mpa_init(g), cfg);
  CHECK(run.trace.stop_reason == StopReason::MaxRounds);
  CHECK(run.trace.stop_round == 3);
  cfg.eps_w = 0.0;
  CHECK_THROWS_AS(mpa_run(g, mpa_init(g), cfg), Error);
}

TEST_CASE("state built for another graph is rejected") {
  auto g = path_graph();
  auto other = random_graph(1, 10, 12);
  try {
    mpa_step(g, mpa_init(other));
    FAIL("expected KeyMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::KeyMismatch);
  }
}

TEST_CASE("range and monotonicity invariants under standard initialisation") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto g = random_graph(seed, 40, 100);
    auto s = mpa_init(g);
    for (int t = 0; t < 300; ++t) {
      auto next = mpa_step(g, s);
      for (std::size_t p = 0; p < g.directed_edge_count(); ++p) {
        if (g.origin(p) == kField) {
          CHECK(next.w[p] == 0.0);
          CHECK(next.h[p] == 0.0);
          continue;
        }
        CHECK(next.w[p] > 0.0);
        CHECK(next.w[p] <= 1.0);
        CHECK(next.h[p] >= 1.0);
        CHECK(next.w[p] <= s.w[p] + 1e-12);
      }
      s = std::move(next);
    }
  }
}

TEST_CASE("node-aggregate step matches the naive double sum") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto g = random_graph(seed, 50, 150);
    auto s = mpa_init(g);
    for (int t = 0; t < 100; ++t) {
      auto fast = mpa_step(g, s);
      auto slow = oracle::naive_step(g, s);
      for (std::size_t p = 0; p < g.directed_edge_count(); ++p) {
        CHECK(std::abs(fast.w[p] - slow.w[p]) <= 1e-12);
        CHECK(oracle::relative_gap(fast.h[p], slow.h[p]) <= 1e-12);
      }
      s = std::move(fast);
    }
  }
}

TEST_CASE("synchronous update does not depend on edge visiting order") {
  auto g = random_graph(4, 30, 80);
  auto s = mpa_init(g);
  for (int t = 0; t < 5; ++t) s = mpa_step(g, s);
  auto natural = oracle::naive_step(g, s);

  std::vector<std::size_t> order(g.directed_edge_count());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937 shuffle_rng(99);
  std::shuffle(order.begin(), order.end(), shuffle_rng);
  MessageState shuffled = s;
  const auto full = oracle::naive_step(g, s);
  for (std::size_t p : order) {
    shuffled.w[p] = full.w[p];
    shuffled.h[p] = full.h[p];
  }
  CHECK(shuffled.w == natural.w);
  CHECK(shuffled.h == natural.h);
  // A sequential (in-place) sweep reads partially updated values and differs.
  MessageState in_place = s;
  for (std::size_t p : order) {
    auto one = oracle::naive_step(g, in_place);
    in_place.w[p] = one.w[p];
  }
  CHECK(in_place.w != natural.w);
  CHECK(mpa_step(g, s).t == natural.t);
}

TEST_CASE("skipping messages into the field changes no estimate") {
  auto g = random_graph(6, 40, 90);
  StepOptions skip;
  skip.skip_field_inbound = true;
  auto a = mpa_init(g);
  auto b = mpa_init(g);
  for (int t = 0; t < 200; ++t) {
    a = mpa_step(g, a);
    b = mpa_step(g, b, skip);
  }
  CHECK(estimate_all(g, a).values == estimate_all(g, b).values);
  for (std::size_t p = 0; p < g.directed_edge_count(); ++p) {
    if (g.target(p) != kField) CHECK(a.w[p] == b.w[p]);
  }
}

TEST_CASE("trajectory is invariant under weight scaling") {
  auto g = random_graph(12, 30, 70);
  for (double alpha : {0.5, 2.0, 10.0}) {
    auto gs = scale_weights(g, alpha);
    auto a = mpa_init(g);
    auto b = mpa_init(gs);
    for (int t = 0; t < 200; ++t) {
      a = mpa_step(g, a);
      b = mpa_step(gs, b);
      for (std::size_t p = 0; p < a.w.size(); ++p) {
        CHECK(std::abs(a.w[p] - b.w[p]) <= 1e-12);
        CHECK(oracle::relative_gap(b.h[p], a.h[p]) <= 1e-12);
      }
    }
  }
}

TEST_CASE("exact on small trees after diameter rounds") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto g = generate_random_tree(30, 0.1, 5.0, seed);
    const std::size_t diam = diameter(g);
    auto s = mpa_init(g);
    for (std::size_t t = 0; t < diam; ++t) s = mpa_step(g, s);
    auto est = estimate_all(g, s);
    auto exact = exact_influence_all(g);
    for (NodeId l = 1; l <= g.n(); ++l) CHECK(oracle::relative_gap(est[l], exact[l]) <= 1e-9);
    // Removing a term from the node aggregate may move the last bit.
    auto more = mpa_step(g, s);
    for (std::size_t p = 0; p < s.w.size(); ++p) {
      CHECK(std::abs(more.w[p] - s.w[p]) <= 1e-12);
      CHECK(oracle::relative_gap(more.h[p], s.h[p]) <= 1e-12);
    }
  }
}

TEST_CASE("converged estimates overestimate on graphs with cycles") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto g = random_graph(seed, 30, 70);
    auto run = mpa_run(g, mpa_init(g));
    REQUIRE(run.trace.stop_reason == StopReason::Tolerance);
    auto est = estimate_all(g, run.state);
    auto exact = exact_influence_all(g);
    for (NodeId l = 1; l <= g.n(); ++l) CHECK(est[l] >= exact[l] - 1e-8);
  }
}

TEST_CASE("custom initial states converge to the standard fixed point") {
  auto g = random_graph(14, 25, 55);
  auto ref = mpa_run(g, mpa_init(g));
  auto s = mpa_init(g);
  DeterministicRng rng(3);
  for (std::size_t p = 0; p < s.w.size(); ++p) {
    if (g.origin(p) == kField) continue;
    s.w[p] = 1.0 - rng.uniform();  // (0, 1]
    s.h[p] = rng.uniform(1.0, static_cast<double>(g.n()));
  }
  auto run = mpa_run(g, s);
  REQUIRE(run.trace.stop_reason == StopReason::Tolerance);
  for (std::size_t p = 0; p < s.w.size(); ++p) CHECK(std::abs(run.state.w[p] - ref.state.w[p]) < 1e-7);
}
