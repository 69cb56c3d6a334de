#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "hinfluence/graph.hpp"

namespace hinfluence {

/// Seedable generator with a platform-independent stream: mt19937_64, and
/// every uniform draw is the top 53 bits of one 64-bit output scaled to
/// [0, 1). Candidate edges are always visited in lexicographic (i, j) order
/// with exactly one draw each.
class DeterministicRng {
 public:
  explicit DeterministicRng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Integer in [0, bound).
  std::uint64_t below(std::uint64_t bound) { return static_cast<std::uint64_t>(uniform() * static_cast<double>(bound)); }
  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

/// Cycle 1-2-...-n-1 plus a field edge at every node, random chords, and
/// random spokes from a hub.
struct WheelSpec {
  std::size_t n = 50;
  double p = 0.01;          // chord probability
  double q = 0.25;          // hub-edge probability
  NodeId hub = 1;
  double field_weight = 0.040;
  std::uint64_t seed = 0;
  // Nodes that never receive chords. Hub spokes are drawn from seed + 1 + the
  // hub's position in this list (seed + 1 when absent), so hub 1 and hub 26
  // built from the same seed share cycle and chords but not spokes.
  std::vector<NodeId> chord_excluded = {1, 26};
};

/// Throws InvalidArgument for n < 3, probabilities outside [0, 1], hub
/// outside 1..n or a non-positive field weight.
WeightedFieldGraph generate_wheel(const WheelSpec& spec);

/// The (hub 1, hub 26) pair sharing cycle and chords.
std::pair<WeightedFieldGraph, WeightedFieldGraph> generate_wheel_pair(std::size_t n, double p, double q,
                                                                      double field_weight, std::uint64_t seed);

/// G(n, m) peer edges with weights uniform in [weight_min, weight_max]; each
/// node gets a field edge with probability field_probability (at least one
/// overall). Resamples until the result is connected.
struct RandomGraphSpec {
  std::size_t n = 50;
  std::size_t m = 100;
  double weight_min = 1.0;
  double weight_max = 1.0;
  double field_weight = 0.040;
  double field_probability = 1.0;
  std::uint64_t seed = 0;
};

WeightedFieldGraph generate_erdos_renyi(const RandomGraphSpec& spec);

/// Uniform labelled tree on {field, 1..n} (Pruefer code), weights uniform in
/// [weight_min, weight_max].
WeightedFieldGraph generate_random_tree(std::size_t n, double weight_min, double weight_max, std::uint64_t seed);

/// Stochastic block model with unit peer weights and a field edge at every
/// node. Block b holds consecutive ids; labels[i - 1] is the block of node i.
struct BlockModel {
  WeightedFieldGraph graph;
  std::vector<int> labels;
};

BlockModel generate_block_model(const std::vector<std::size_t>& sizes, const std::vector<double>& p_in,
                                double p_out, double field_weight, std::uint64_t seed);
BlockModel generate_block_model(const std::vector<std::size_t>& sizes, double p_in, double p_out,
                                double field_weight, std::uint64_t seed);

/// Within-block probabilities giving every block the same expected internal
/// degree (capped at 1).
std::vector<double> matched_degree_probabilities(const std::vector<std::size_t>& sizes, double internal_degree);

}  // namespace hinfluence
