#pragma once

#include <cstddef>
#include <vector>

#include "hinfluence/graph.hpp"
#include "hinfluence/mpa.hpp"

namespace hinfluence {

/// Replacement of the running topology by `new_graph` at round `applied_at`.
/// Edges are compared as unordered pairs; a surviving edge whose weight
/// changed counts as retained.
struct TopologyChange {
  const WeightedFieldGraph& new_graph;
  std::size_t applied_at = 0;
};

struct EdgeDiff {
  std::vector<WeightedEdge> retained;  // weights from the new graph
  std::vector<WeightedEdge> dropped;
  std::vector<WeightedEdge> added;
};

EdgeDiff diff_edges(const WeightedFieldGraph& old_g, const WeightedFieldGraph& new_g);

/// Carries messages of retained edges over unchanged, drops those of removed
/// edges and starts added edges at (1, 1), or (0, 0) when sent by the field.
/// The round counter is kept. Throws KeyMismatch or InvalidNewGraph.
MessageState apply_change(const WeightedFieldGraph& old_g, const MessageState& s, const TopologyChange& change);

struct ChangeReport {
  std::size_t change_round = 0;         // T: rounds run on the old graph
  std::size_t post_change_rounds = 0;   // additional rounds after T
  std::size_t fresh_rounds = 0;         // rounds of a restart on the new graph
  double w_gap = 0.0;                   // sup |W_changed - W_fresh|
  double h_gap = 0.0;                   // sup |H_changed - H_fresh| / max(1, |H_fresh|)
  std::size_t retained_edges = 0;
  std::size_t dropped_edges = 0;
  std::size_t added_edges = 0;
  StopReason before_stop = StopReason::Tolerance;
  StopReason after_stop = StopReason::Tolerance;
  StopReason fresh_stop = StopReason::Tolerance;
  ConvergenceTrace before_trace;
  ConvergenceTrace after_trace;
  ConvergenceTrace fresh_trace;
  MessageState after_state;
  MessageState fresh_state;
};

/// Converges on `before`, switches to `after`, converges again, and compares
/// with a run started from scratch on `after`.
ChangeReport run_change_experiment(const WeightedFieldGraph& before, const WeightedFieldGraph& after,
                                   const StoppingConfig& cfg = {});

}  // namespace hinfluence
