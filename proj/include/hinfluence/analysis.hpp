#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "hinfluence/generators.hpp"
#include "hinfluence/graph.hpp"
#include "hinfluence/io.hpp"
#include "hinfluence/mpa.hpp"
#include "hinfluence/profile.hpp"

namespace hinfluence {

struct RankingComparison {
  double kendall_tau = 0.0;   // tau-b
  double spearman_rho = 0.0;  // Pearson correlation of average ranks
  bool top1_match = false;
  NodeId exact_top = 0;
  NodeId estimate_top = 0;
  std::vector<double> overestimation;  // estimate / exact, per node
};

/// Throws NodeSetMismatch when the profiles cover different nodes.
RankingComparison compare_rankings(const InfluenceProfile& exact, const InfluenceProfile& estimate);

double kendall_tau_b(const std::vector<double>& x, const std::vector<double>& y);
double spearman_rho(const std::vector<double>& x, const std::vector<double>& y);

struct CommunitySummary {
  int community = 0;
  std::size_t size = 0;
  double mean_ratio = 0.0;
  double max_ratio = 0.0;
  std::size_t top_k = 0;         // min(k, size)
  std::size_t top_k_overlap = 0; // shared members of the exact and estimated top-k
  double slope = 0.0;            // least squares estimate ~ exact within the community
  double intercept = 0.0;
};

/// Per-community overestimation statistics. Throws LabelMismatch.
std::vector<CommunitySummary> community_artefact(const InfluenceProfile& exact, const InfluenceProfile& estimate,
                                                 const CommunityLabels& labels, std::size_t k = 10);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

/// Ordinary least squares y ~ x. Slope is NaN when x has no spread.
LinearFit least_squares(const std::vector<double>& x, const std::vector<double>& y);

struct ErdosRenyiFamily {
  std::size_t n = 100;
  std::size_t m = 200;  // peer edges
  double field_weight = 0.040;
  double weight_min = 1.0;
  double weight_max = 1.0;
};

struct TreeFamily {
  std::size_t n = 50;
  double weight_min = 0.5;
  double weight_max = 2.0;
};

using GraphFamily = std::variant<ErdosRenyiFamily, WheelSpec, TreeFamily>;

std::string family_name(const GraphFamily& family);
WeightedFieldGraph make_graph(const GraphFamily& family, std::uint64_t seed);

struct SweepRow {
  std::string family;
  std::size_t n = 0;
  std::size_t m = 0;  // all edges, field edges included
  double m_over_n = 0.0;
  std::uint64_t seed = 0;
  std::size_t diameter = 0;
  std::size_t w_rounds = 0;
  std::size_t h_rounds = 0;
  std::size_t stop_round = 0;
  StopReason stop_reason = StopReason::Tolerance;
  double wall_seconds = 0.0;
};

struct SweepTable {
  std::vector<SweepRow> rows;
  LinearFit h_fit;  // H-convergence rounds against m/n
};

/// One MPA run per (family point, seed). Throws InvalidArgument for fewer
/// than three seeds or no points.
SweepTable convergence_sweep(const std::vector<GraphFamily>& points, const std::vector<std::uint64_t>& seeds,
                             const StoppingConfig& cfg);

void write_sweep_csv(const SweepTable& table, std::ostream& out, const Metadata& meta = {});

struct SpectralEstimate {
  double radius = 0.0;
  double upper_bound = 0.0;  // Collatz-Wielandt bound, valid even if unconverged
  bool converged = false;
  std::size_t iterations = 0;
};

struct StabilityReport {
  SpectralEstimate w;  // linearised W update
  SpectralEstimate h;  // H propagation matrix at the fixed W
  double fd_relative_error = 0.0;
  bool stable = false;  // both radii below 1
};

struct StabilityOptions {
  double tolerance = 1e-6;
  std::size_t max_iterations = 5000;
  double fd_epsilon = 1e-7;
  double fixed_point_tolerance = 1e-9;
  std::uint64_t seed = 1;
};

/// Jacobian of the W update at `w`: rows indexed by message i->j, entries
/// (C_ik / C_ij) * F(W)_{i->j}^2 for k in N_i \ {j}, k not the field.
void apply_w_jacobian(const WeightedFieldGraph& g, const std::vector<double>& w, const std::vector<double>& v,
                      std::vector<double>& out);

/// H propagation: (M v)_{i->j} = sum_{k in N_i \ {j}} W^{k->i} v_{k->i}.
void apply_h_propagation(const WeightedFieldGraph& g, const std::vector<double>& w, const std::vector<double>& v,
                         std::vector<double>& out);

/// Throws NotAFixedPoint when one step moves W by more than the tolerance.
StabilityReport stability_probe(const WeightedFieldGraph& g, const MessageState& fixed, const StabilityOptions& opts = {});

}  // namespace hinfluence
