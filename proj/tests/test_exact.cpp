#include <doctest.h>

#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "hinfluence/error.hpp"
#include "hinfluence/exact.hpp"
#include "hinfluence/generators.hpp"
#include "oracles.hpp"

using namespace hinfluence;

namespace {

WeightedFieldGraph path_graph() {
  std::vector<WeightedEdge> e{{kField, 1, 1.0}, {1, 2, 1.0}};
  return build_graph(2, e);
}

WeightedFieldGraph random_graph(std::uint64_t seed, std::size_t n, std::size_t m, double field_p = 0.3) {
  RandomGraphSpec spec;
  spec.n = n;
  spec.m = m;
  spec.weight_min = 0.2;
  spec.weight_max = 4.0;
  spec.field_probability = field_p;
  spec.field_weight = 0.5;
  spec.seed = seed;
  return generate_erdos_renyi(spec);
}

}  // namespace

TEST_CASE("hand-solved Dirichlet problems on the path field-1-2") {
  auto g = path_graph();
  auto s2 = solve_dirichlet(g, 2);
  CHECK(s2.x[0] == 0.0);
  CHECK(s2.x[1] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(s2.x[2] == 1.0);
  CHECK(s2.influence == doctest::Approx(1.5).epsilon(1e-15));

  auto s1 = solve_dirichlet(g, 1);
  CHECK(s1.x[2] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(s1.influence == doctest::Approx(2.0).epsilon(1e-15));

  auto all = exact_influence_all(g);
  CHECK(all[1] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(all[2] == doctest::Approx(1.5).epsilon(1e-14));
}

TEST_CASE("star centred on the field gives every leaf influence 1") {
  std::vector<WeightedEdge> star{{kField, 1, 0.3}, {kField, 2, 1.7}, {kField, 3, 2.2}};
  auto g = build_graph(3, star);
  auto s = solve_dirichlet(g, 1);
  CHECK(s.x[2] == 0.0);
  CHECK(s.x[3] == 0.0);
  CHECK(s.influence == 1.0);
  auto all = exact_influence_all(g);
  for (NodeId l = 1; l <= 3; ++l) CHECK(all[l] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("field as leader and unknown leader are rejected") {
  auto g = path_graph();
  CHECK_THROWS_AS(solve_dirichlet(g, kField), Error);
  try {
    solve_dirichlet(g, kField);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::FieldAsLeader);
  }
  try {
    solve_dirichlet(g, 9);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::UnknownNode);
  }
}

TEST_CASE("single leader solve matches Gaussian elimination on the full system") {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    auto g = random_graph(seed, 40, 90);
    for (NodeId l = 1; l <= g.n(); l += 7) {
      auto sol = solve_dirichlet(g, l);
      auto ref = oracle::dirichlet_by_elimination(g, l);
      for (NodeId i = 0; i <= g.n(); ++i) CHECK(std::abs(sol.x[i] - ref[i]) < 1e-10);
      CHECK(dirichlet_residual(g, sol) < 1e-10 * g.max_degree());
    }
  }
}

TEST_CASE("maximum principle and strict positivity away from the field") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    auto g = random_graph(seed, 35, 60, 0.2);
    for (NodeId l = 1; l <= g.n(); l += 5) {
      auto sol = solve_dirichlet(g, l);
      CHECK(sol.x[kField] == 0.0);
      CHECK(sol.x[l] == 1.0);
      double sum = 0.0;
      for (double v : sol.x) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
        sum += v;
      }
      CHECK(sol.influence == doctest::Approx(sum).epsilon(1e-15));
      // Component of G without the field that contains the leader.
      std::vector<bool> seen(g.node_count(), false);
      std::queue<NodeId> q;
      q.push(l);
      seen[l] = true;
      while (!q.empty()) {
        NodeId i = q.front();
        q.pop();
        CHECK(sol.x[i] > 0.0);
        for (const auto& nb : g.neighbors(i)) {
          if (nb.id != kField && !seen[nb.id]) {
            seen[nb.id] = true;
            q.push(nb.id);
          }
        }
      }
    }
  }
}

TEST_CASE("exact influence is invariant under weight scaling") {
  auto g = random_graph(11, 50, 120);
  auto base = exact_influence_all(g);
  for (double alpha : {0.5, 2.0, 10.0}) {
    auto scaled = exact_influence_all(scale_weights(g, alpha));
    for (NodeId l = 1; l <= g.n(); ++l) CHECK(std::abs(scaled[l] - base[l]) <= 1e-9 * base[l]);
  }
}

TEST_CASE("grounded-Laplacian fast path agrees with per-leader solves") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto g = random_graph(100 + seed, 60, 150);
    auto fast = exact_influence_all(g);
    for (NodeId l = 1; l <= g.n(); ++l) {
      CHECK(fast[l] >= 1.0);
      CHECK(std::abs(fast[l] - solve_dirichlet(g, l).influence) <= 1e-8 * fast[l]);
    }
  }
}

TEST_CASE("iterative and sparse paths agree with the dense ones") {
  auto g = random_graph(7, 80, 200);
  ExactOptions sparse;
  sparse.dense_limit = 0;
  auto dense_all = exact_influence_all(g);
  auto sparse_all = exact_influence_all(g, sparse);
  for (NodeId l = 1; l <= g.n(); ++l) {
    CHECK(std::abs(dense_all[l] - sparse_all[l]) <= 1e-10 * dense_all[l]);
  }
  for (NodeId l : {1u, 17u, 80u}) {
    auto cg = solve_dirichlet(g, l, sparse);
    CHECK(std::abs(cg.influence - dense_all[l]) <= 1e-8 * dense_all[l]);
  }
}

TEST_CASE("most influential node breaks ties by lowest id") {
  InfluenceProfile p;
  p.values = {1.0, 3.0, 3.0, 2.0};
  CHECK(most_influential(p) == 2);
}
