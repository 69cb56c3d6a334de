#include "hinfluence/mpa.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hinfluence/error.hpp"

namespace hinfluence {

std::string_view to_string(StopReason reason) {
  return reason == StopReason::Tolerance ? "tolerance" : "max_rounds";
}

namespace {

std::size_t slot_of(const WeightedFieldGraph& g, NodeId from, NodeId to) {
  auto slot = g.find_slot(from, to);
  if (!slot) throw Error(Errc::UnknownNode, "no edge " + std::to_string(from) + "->" + std::to_string(to));
  return *slot;
}

double sup_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) d = std::max(d, std::abs(a[k] - b[k]));
  return d;
}

double relative_change(const std::vector<double>& prev, const std::vector<double>& next) {
  double d = 0.0;
  for (std::size_t k = 0; k < prev.size(); ++k) {
    d = std::max(d, std::abs(next[k] - prev[k]) / std::max(1.0, std::abs(next[k])));
  }
  return d;
}

// First index from which every value stays below the threshold.
std::size_t settle_index(const std::vector<double>& values, double threshold) {
  std::size_t k = values.size();
  while (k > 0 && values[k - 1] < threshold) --k;
  return k;
}

}  // namespace

double MessageState::w_at(const WeightedFieldGraph& g, NodeId from, NodeId to) const {
  return w[slot_of(g, from, to)];
}

double MessageState::h_at(const WeightedFieldGraph& g, NodeId from, NodeId to) const {
  return h[slot_of(g, from, to)];
}

MessageState mpa_init(const WeightedFieldGraph& g) {
  MessageState s;
  s.w.assign(g.directed_edge_count(), 1.0);
  s.h.assign(g.directed_edge_count(), 1.0);
  const std::size_t first = g.first_slot(kField);
  for (std::size_t slot = first; slot < first + g.degree_count(kField); ++slot) {
    s.w[slot] = 0.0;
    s.h[slot] = 0.0;
  }
  s.t = 0;
  s.topology = g.topology_hash();
  return s;
}

void check_state(const WeightedFieldGraph& g, const MessageState& s) {
  if (s.topology != g.topology_hash() || s.w.size() != g.directed_edge_count() ||
      s.h.size() != g.directed_edge_count()) {
    throw Error(Errc::KeyMismatch, "message state does not match the graph's directed edges");
  }
}

void mpa_step_into(const WeightedFieldGraph& g, const MessageState& s, MessageState& next, const StepOptions& opts) {
  check_state(g, s);
  next.w.resize(s.w.size());
  next.h.resize(s.h.size());
  next.topology = s.topology;
  next.t = s.t + 1;

  const std::size_t field_end = g.first_slot(kField) + g.degree_count(kField);
  for (std::size_t slot = g.first_slot(kField); slot < field_end; ++slot) {
    next.w[slot] = 0.0;
    next.h[slot] = 0.0;
  }

  for (NodeId i = 1; i <= g.n(); ++i) {
    const std::size_t first = g.first_slot(i);
    const std::size_t last = first + g.degree_count(i);
    double leak = 0.0;
    double mass = 0.0;
    for (std::size_t p = first; p < last; ++p) {
      const std::size_t in = g.reverse(p);
      leak += g.slot_weight(p) * (1.0 - s.w[in]);
      mass += s.w[in] * s.h[in];
    }
    for (std::size_t p = first; p < last; ++p) {
      if (opts.skip_field_inbound && g.target(p) == kField) {
        next.w[p] = s.w[p];
        next.h[p] = s.h[p];
        continue;
      }
      const std::size_t in = g.reverse(p);
      const double c = g.slot_weight(p);
      // leak >= its own term after rounding, so neither difference goes
      // negative while the W inputs stay in [0, 1].
      const double others_leak = leak - c * (1.0 - s.w[in]);
      const double others_mass = mass - s.w[in] * s.h[in];
      next.w[p] = 1.0 / (1.0 + others_leak / c);
      next.h[p] = 1.0 + others_mass;
    }
  }
}

MessageState mpa_step(const WeightedFieldGraph& g, const MessageState& s, const StepOptions& opts) {
  MessageState next;
  mpa_step_into(g, s, next, opts);
  return next;
}

double estimate(const WeightedFieldGraph& g, const MessageState& s, NodeId leader) {
  if (leader == kField) throw Error(Errc::FieldAsLeader, "the field node cannot be a leader");
  if (!g.contains(leader)) throw Error(Errc::UnknownNode, "leader " + std::to_string(leader));
  check_state(g, s);
  double value = 1.0;
  const std::size_t first = g.first_slot(leader);
  for (std::size_t p = first; p < first + g.degree_count(leader); ++p) {
    const std::size_t in = g.reverse(p);
    value += s.w[in] * s.h[in];
  }
  return value;
}

InfluenceProfile estimate_all(const WeightedFieldGraph& g, const MessageState& s) {
  check_state(g, s);
  InfluenceProfile profile;
  profile.kind = ProfileKind::MpaEstimate;
  profile.round = s.t;
  profile.values.resize(g.n());
  for (NodeId l = 1; l <= g.n(); ++l) {
    double value = 1.0;
    const std::size_t first = g.first_slot(l);
    for (std::size_t p = first; p < first + g.degree_count(l); ++p) {
      const std::size_t in = g.reverse(p);
      value += s.w[in] * s.h[in];
    }
    profile.values[l - 1] = value;
  }
  return profile;
}

double w_step_residual(const WeightedFieldGraph& g, const MessageState& s) {
  return sup_distance(mpa_step(g, s).w, s.w);
}

MpaResult mpa_run(const WeightedFieldGraph& g, const MessageState& s0, const StoppingConfig& cfg) {
  if (!(cfg.eps_w > 0.0) || !(cfg.eps_h > 0.0) || cfg.max_rounds < 1) {
    throw Error(Errc::InvalidArgument, "stopping tolerances must be positive and max_rounds >= 1");
  }
  check_state(g, s0);

  MpaResult result;
  ConvergenceTrace& trace = result.trace;
  trace.start_round = s0.t;
  trace.stop_reason = StopReason::MaxRounds;

  MessageState cur = s0;
  MessageState next;
  std::vector<double> est = estimate_all(g, cur).values;
  for (std::size_t r = 0; r < cfg.max_rounds; ++r) {
    mpa_step_into(g, cur, next, cfg.step);
    std::vector<double> est_next = estimate_all(g, next).values;
    const double dw = sup_distance(next.w, cur.w);
    const double dh = relative_change(est, est_next);
    std::swap(cur, next);
    est.swap(est_next);
    if (dw < cfg.eps_w && dh < cfg.eps_h) {
      trace.stop_reason = StopReason::Tolerance;
      break;
    }
  }
  trace.stop_round = cur.t;

  if (cfg.record_trace) {
    // Replaying the deterministic iteration avoids storing every round's
    // messages while still measuring distance to the final values.
    const std::vector<double>& final_est = est;
    double est_scale = 1.0;
    for (double v : final_est) est_scale = std::max(est_scale, std::abs(v));

    std::vector<double> d_w;
    std::vector<double> d_h_rel;
    trace.records.reserve(trace.rounds() + 1);
    MessageState replay = s0;
    MessageState replay_next;
    while (true) {
      const double dw = sup_distance(replay.w, cur.w);
      const double dh = sup_distance(estimate_all(g, replay).values, final_est);
      trace.records.push_back({replay.t, dw, dh});
      d_w.push_back(dw);
      d_h_rel.push_back(dh / est_scale);
      if (replay.t == trace.stop_round) break;
      mpa_step_into(g, replay, replay_next, cfg.step);
      std::swap(replay, replay_next);
    }
    trace.w_round = trace.start_round + settle_index(d_w, cfg.eps_w);
    trace.h_round = trace.start_round + settle_index(d_h_rel, cfg.eps_h);
  }

  result.state = std::move(cur);
  return result;
}

}  // namespace hinfluence
