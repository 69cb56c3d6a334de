#include "hinfluence/dynamic.hpp"

#include <algorithm>
#include <cmath>

#include "hinfluence/error.hpp"

namespace hinfluence {

EdgeDiff diff_edges(const WeightedFieldGraph& old_g, const WeightedFieldGraph& new_g) {
  EdgeDiff diff;
  for (const auto& e : old_g.edges()) {
    if (new_g.find_slot(e.u, e.v)) {
      diff.retained.push_back({e.u, e.v, new_g.weight(e.u, e.v)});
    } else {
      diff.dropped.push_back(e);
    }
  }
  for (const auto& e : new_g.edges()) {
    if (!old_g.find_slot(e.u, e.v)) diff.added.push_back(e);
  }
  return diff;
}

MessageState apply_change(const WeightedFieldGraph& old_g, const MessageState& s, const TopologyChange& change) {
  check_state(old_g, s);
  const WeightedFieldGraph& g = change.new_graph;
  if (g.n() == 0) throw Error(Errc::InvalidNewGraph, "new graph has no ordinary nodes");

  MessageState out;
  out.t = s.t;
  out.topology = g.topology_hash();
  out.w.resize(g.directed_edge_count());
  out.h.resize(g.directed_edge_count());
  for (std::size_t slot = 0; slot < g.directed_edge_count(); ++slot) {
    const NodeId from = g.origin(slot);
    const NodeId to = g.target(slot);
    if (auto old_slot = old_g.find_slot(from, to)) {
      out.w[slot] = s.w[*old_slot];
      out.h[slot] = s.h[*old_slot];
    } else if (from == kField) {
      out.w[slot] = 0.0;
      out.h[slot] = 0.0;
    } else {
      out.w[slot] = 1.0;
      out.h[slot] = 1.0;
    }
  }
  return out;
}

ChangeReport run_change_experiment(const WeightedFieldGraph& before, const WeightedFieldGraph& after,
                                   const StoppingConfig& cfg) {
  ChangeReport report;
  const EdgeDiff diff = diff_edges(before, after);
  report.retained_edges = diff.retained.size();
  report.dropped_edges = diff.dropped.size();
  report.added_edges = diff.added.size();

  MpaResult first = mpa_run(before, mpa_init(before), cfg);
  report.change_round = first.state.t;
  report.before_stop = first.trace.stop_reason;
  report.before_trace = std::move(first.trace);

  MessageState switched = apply_change(before, first.state, {after, report.change_round});
  MpaResult second = mpa_run(after, switched, cfg);
  report.post_change_rounds = second.state.t - report.change_round;
  report.after_stop = second.trace.stop_reason;
  report.after_trace = std::move(second.trace);

  MpaResult fresh = mpa_run(after, mpa_init(after), cfg);
  report.fresh_rounds = fresh.state.t;
  report.fresh_stop = fresh.trace.stop_reason;
  report.fresh_trace = std::move(fresh.trace);

  for (std::size_t k = 0; k < fresh.state.w.size(); ++k) {
    report.w_gap = std::max(report.w_gap, std::abs(second.state.w[k] - fresh.state.w[k]));
  }
  const auto est_changed = estimate_all(after, second.state);
  const auto est_fresh = estimate_all(after, fresh.state);
  for (std::size_t k = 0; k < est_fresh.values.size(); ++k) {
    const double gap = std::abs(est_changed.values[k] - est_fresh.values[k]) / std::max(1.0, std::abs(est_fresh.values[k]));
    report.h_gap = std::max(report.h_gap, gap);
  }
  report.after_state = std::move(second.state);
  report.fresh_state = std::move(fresh.state);
  return report;
}

}  // namespace hinfluence
