#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "hinfluence/graph.hpp"
#include "hinfluence/profile.hpp"

namespace hinfluence {

/// One (W, H) message pair per directed edge, stored by graph slot
/// (see WeightedFieldGraph::first_slot), plus the round counter.
struct MessageState {
  std::vector<double> w;
  std::vector<double> h;
  std::size_t t = 0;
  std::uint64_t topology = 0;  // WeightedFieldGraph::topology_hash of the owner

  double w_at(const WeightedFieldGraph& g, NodeId from, NodeId to) const;
  double h_at(const WeightedFieldGraph& g, NodeId from, NodeId to) const;
};

struct StepOptions {
  // Messages sent into the field are never read; skipping them changes no
  // estimate but leaves those slots stale.
  bool skip_field_inbound = false;
};

struct StoppingConfig {
  double eps_w = 1e-10;  // max over directed edges of |W(t+1) - W(t)|
  double eps_h = 1e-9;   // max over leaders of |dH| / max(1, H)
  std::size_t max_rounds = 200000;
  bool record_trace = true;
  StepOptions step;
};

enum class StopReason { Tolerance, MaxRounds };
std::string_view to_string(StopReason reason);

/// Distances of each round to the final values of the run.
struct ConvergenceTrace {
  struct Record {
    std::size_t t;
    double d_w;  // sup-norm distance of W(t) to the final W
    double d_h;  // sup-norm distance of the estimates at t to the final ones
  };

  std::vector<Record> records;  // consecutive rounds start_round..stop_round
  std::size_t start_round = 0;
  std::size_t stop_round = 0;
  StopReason stop_reason = StopReason::Tolerance;
  // First round from which the distance stays below eps_w (resp. eps_h
  // relative to the largest final estimate). Only set when the trace was
  // recorded.
  std::optional<std::size_t> w_round;
  std::optional<std::size_t> h_round;

  std::size_t rounds() const noexcept { return stop_round - start_round; }
};

struct MpaResult {
  MessageState state;
  ConvergenceTrace trace;
};

/// Standard initialisation: (1, 1) on every message from an ordinary node,
/// (0, 0) on every message from the field.
MessageState mpa_init(const WeightedFieldGraph& g);

/// Throws KeyMismatch when `s` was not built for `g`.
void check_state(const WeightedFieldGraph& g, const MessageState& s);

/// One synchronous round. Per node i the aggregates
///   S_i = sum_k C_ik (1 - W^{k->i}),  T_i = sum_k W^{k->i} H^{k->i}
/// are formed once (ascending k) and each outgoing message removes the term
/// of its own target:
///   W'^{i->j} = 1 / (1 + (S_i - C_ij (1 - W^{j->i})) / C_ij)
///   H'^{i->j} = 1 + T_i - W^{j->i} H^{j->i}
MessageState mpa_step(const WeightedFieldGraph& g, const MessageState& s, const StepOptions& opts = {});

/// Same as mpa_step, writing into `next` (resized as needed).
void mpa_step_into(const WeightedFieldGraph& g, const MessageState& s, MessageState& next,
                   const StepOptions& opts = {});

/// H^l(t) = 1 + sum_{i in N_l} W^{i->l} H^{i->l}. Throws FieldAsLeader.
double estimate(const WeightedFieldGraph& g, const MessageState& s, NodeId leader);

InfluenceProfile estimate_all(const WeightedFieldGraph& g, const MessageState& s);

/// Iterates mpa_step from `s0` until both successive-change criteria hold or
/// max_rounds rounds have run. Non-convergence is reported through
/// trace.stop_reason.
MpaResult mpa_run(const WeightedFieldGraph& g, const MessageState& s0, const StoppingConfig& cfg = {});

/// Largest |W(t+1) - W(t)| for one step from `s`.
double w_step_residual(const WeightedFieldGraph& g, const MessageState& s);

}  // namespace hinfluence
