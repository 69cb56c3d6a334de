#include "hinfluence/generators.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <set>
#include <string>

#include "hinfluence/error.hpp"

namespace hinfluence {

namespace {

void check_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(Errc::InvalidArgument, std::string(name) + " must lie in [0, 1]");
}

void check_weights(double lo, double hi) {
  if (!(lo > 0.0) || !(hi >= lo)) throw Error(Errc::InvalidArgument, "weight range must satisfy 0 < min <= max");
}

std::uint64_t spoke_seed(const WheelSpec& spec) {
  auto it = std::find(spec.chord_excluded.begin(), spec.chord_excluded.end(), spec.hub);
  const auto pos = it == spec.chord_excluded.end() ? 0 : static_cast<std::uint64_t>(it - spec.chord_excluded.begin());
  return spec.seed + 1 + pos;
}

}  // namespace

WeightedFieldGraph generate_wheel(const WheelSpec& spec) {
  const std::size_t n = spec.n;
  if (n < 3) throw Error(Errc::InvalidArgument, "wheel needs at least 3 nodes");
  check_probability(spec.p, "p");
  check_probability(spec.q, "q");
  if (spec.hub < 1 || spec.hub > n) throw Error(Errc::InvalidArgument, "hub must be one of 1..n");
  if (!(spec.field_weight > 0.0)) throw Error(Errc::InvalidArgument, "field weight must be positive");

  std::vector<std::vector<bool>> present(n + 1, std::vector<bool>(n + 1, false));
  std::vector<WeightedEdge> edges;
  auto add = [&](NodeId u, NodeId v, double w) {
    present[u][v] = present[v][u] = true;
    edges.push_back({std::min(u, v), std::max(u, v), w});
  };

  for (NodeId i = 1; i <= n; ++i) add(kField, i, spec.field_weight);
  for (NodeId i = 1; i < n; ++i) add(i, i + 1, 1.0);
  add(1, static_cast<NodeId>(n), 1.0);

  auto excluded = [&](NodeId i) {
    return std::find(spec.chord_excluded.begin(), spec.chord_excluded.end(), i) != spec.chord_excluded.end();
  };
  DeterministicRng chords(spec.seed);
  for (NodeId i = 1; i <= n; ++i) {
    if (excluded(i)) continue;
    for (NodeId j = i + 1; j <= n; ++j) {
      if (excluded(j) || present[i][j]) continue;
      if (chords.bernoulli(spec.p)) add(i, j, 1.0);
    }
  }

  DeterministicRng spokes(spoke_seed(spec));
  for (NodeId j = 1; j <= n; ++j) {
    if (j == spec.hub || present[spec.hub][j]) continue;
    if (spokes.bernoulli(spec.q)) add(spec.hub, j, 1.0);
  }
  return WeightedFieldGraph::build(n, edges);
}

std::pair<WeightedFieldGraph, WeightedFieldGraph> generate_wheel_pair(std::size_t n, double p, double q,
                                                                      double field_weight, std::uint64_t seed) {
  WheelSpec spec;
  spec.n = n;
  spec.p = p;
  spec.q = q;
  spec.field_weight = field_weight;
  spec.seed = seed;
  spec.hub = 1;
  auto first = generate_wheel(spec);
  spec.hub = 26;
  auto second = generate_wheel(spec);
  return {std::move(first), std::move(second)};
}

WeightedFieldGraph generate_erdos_renyi(const RandomGraphSpec& spec) {
  const std::size_t n = spec.n;
  if (n < 1) throw Error(Errc::InvalidArgument, "need at least one node");
  if (spec.m > n * (n - 1) / 2) throw Error(Errc::InvalidArgument, "too many edges for " + std::to_string(n) + " nodes");
  check_weights(spec.weight_min, spec.weight_max);
  check_probability(spec.field_probability, "field probability");
  if (!(spec.field_weight > 0.0)) throw Error(Errc::InvalidArgument, "field weight must be positive");

  DeterministicRng rng(spec.seed);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::set<std::pair<NodeId, NodeId>> chosen;
    std::vector<WeightedEdge> edges;
    while (chosen.size() < spec.m) {
      auto a = static_cast<NodeId>(rng.below(n) + 1);
      auto b = static_cast<NodeId>(rng.below(n) + 1);
      if (a == b) continue;
      if (a > b) std::swap(a, b);
      if (!chosen.emplace(a, b).second) continue;
      edges.push_back({a, b, rng.uniform(spec.weight_min, spec.weight_max)});
    }
    bool grounded = false;
    for (NodeId i = 1; i <= n; ++i) {
      if (rng.bernoulli(spec.field_probability)) {
        edges.push_back({kField, i, spec.field_weight});
        grounded = true;
      }
    }
    if (!grounded) edges.push_back({kField, static_cast<NodeId>(rng.below(n) + 1), spec.field_weight});
    try {
      return WeightedFieldGraph::build(n, edges);
    } catch (const Error& e) {
      if (e.code() != Errc::Disconnected) throw;
    }
  }
  throw Error(Errc::Disconnected, "could not draw a connected graph in 1000 attempts");
}

WeightedFieldGraph generate_random_tree(std::size_t n, double weight_min, double weight_max, std::uint64_t seed) {
  if (n < 1) throw Error(Errc::InvalidArgument, "need at least one node");
  check_weights(weight_min, weight_max);
  DeterministicRng rng(seed);
  const std::size_t nodes = n + 1;
  std::vector<WeightedEdge> edges;
  if (nodes == 2) {
    edges.push_back({kField, 1, rng.uniform(weight_min, weight_max)});
    return WeightedFieldGraph::build(n, edges);
  }

  std::vector<NodeId> code(nodes - 2);
  for (auto& c : code) c = static_cast<NodeId>(rng.below(nodes));
  std::vector<std::size_t> remaining(nodes, 1);
  for (NodeId c : code) ++remaining[c];
  std::priority_queue<NodeId, std::vector<NodeId>, std::greater<>> leaves;
  for (NodeId i = 0; i < nodes; ++i) {
    if (remaining[i] == 1) leaves.push(i);
  }
  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (NodeId c : code) {
    NodeId leaf = leaves.top();
    leaves.pop();
    pairs.emplace_back(std::min(leaf, c), std::max(leaf, c));
    if (--remaining[c] == 1) leaves.push(c);
  }
  NodeId a = leaves.top();
  leaves.pop();
  NodeId b = leaves.top();
  pairs.emplace_back(std::min(a, b), std::max(a, b));
  std::sort(pairs.begin(), pairs.end());
  for (auto [u, v] : pairs) edges.push_back({u, v, rng.uniform(weight_min, weight_max)});
  return WeightedFieldGraph::build(n, edges);
}

BlockModel generate_block_model(const std::vector<std::size_t>& sizes, double p_in, double p_out,
                                double field_weight, std::uint64_t seed) {
  return generate_block_model(sizes, std::vector<double>(sizes.size(), p_in), p_out, field_weight, seed);
}

std::vector<double> matched_degree_probabilities(const std::vector<std::size_t>& sizes, double internal_degree) {
  std::vector<double> out;
  for (std::size_t s : sizes) {
    out.push_back(s < 2 ? 0.0 : std::min(1.0, internal_degree / static_cast<double>(s - 1)));
  }
  return out;
}

BlockModel generate_block_model(const std::vector<std::size_t>& sizes, const std::vector<double>& p_in,
                                double p_out, double field_weight, std::uint64_t seed) {
  if (sizes.empty()) throw Error(Errc::InvalidArgument, "need at least one block");
  if (p_in.size() != sizes.size()) throw Error(Errc::InvalidArgument, "need one within-block probability per block");
  for (double p : p_in) check_probability(p, "p_in");
  check_probability(p_out, "p_out");
  if (!(field_weight > 0.0)) throw Error(Errc::InvalidArgument, "field weight must be positive");

  BlockModel model{WeightedFieldGraph::build(0, {}), {}};
  for (std::size_t b = 0; b < sizes.size(); ++b) {
    model.labels.insert(model.labels.end(), sizes[b], static_cast<int>(b));
  }
  const std::size_t n = model.labels.size();
  DeterministicRng rng(seed);
  std::vector<WeightedEdge> edges;
  for (NodeId i = 1; i <= n; ++i) edges.push_back({kField, i, field_weight});
  for (NodeId i = 1; i <= n; ++i) {
    for (NodeId j = i + 1; j <= n; ++j) {
      const int bi = model.labels[i - 1];
      const double p = bi == model.labels[j - 1] ? p_in[static_cast<std::size_t>(bi)] : p_out;
      if (rng.bernoulli(p)) edges.push_back({i, j, 1.0});
    }
  }
  model.graph = WeightedFieldGraph::build(n, edges);
  return model;
}

}  // namespace hinfluence
