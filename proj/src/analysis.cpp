#include "hinfluence/analysis.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <set>

#include "hinfluence/error.hpp"
#include "hinfluence/format.hpp"

namespace hinfluence {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

int sign(double d) { return (d > 0.0) - (d < 0.0); }

std::vector<double> average_ranks(const std::vector<double>& x) {
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> ranks(x.size());
  for (std::size_t lo = 0; lo < order.size();) {
    std::size_t hi = lo;
    while (hi + 1 < order.size() && x[order[hi + 1]] == x[order[lo]]) ++hi;
    const double r = 0.5 * static_cast<double>(lo + hi) + 1.0;
    for (std::size_t k = lo; k <= hi; ++k) ranks[order[k]] = r;
    lo = hi + 1;
  }
  return ranks;
}

bool all_equal(const std::vector<double>& x) {
  return std::adjacent_find(x.begin(), x.end(), std::not_equal_to<>()) == x.end();
}

// Used when a rank statistic is undefined because one side has no spread.
double degenerate_correlation(const std::vector<double>& x, const std::vector<double>& y) {
  return all_equal(x) && all_equal(y) ? 1.0 : 0.0;
}

std::vector<NodeId> top_k(const std::vector<NodeId>& members, const InfluenceProfile& p, std::size_t k) {
  std::vector<NodeId> sorted = members;
  std::stable_sort(sorted.begin(), sorted.end(), [&](NodeId a, NodeId b) { return p[a] > p[b]; });
  sorted.resize(std::min(k, sorted.size()));
  return sorted;
}

double l1(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += std::abs(x);
  return s;
}

std::vector<bool> active_messages(const WeightedFieldGraph& g) {
  std::vector<bool> active(g.directed_edge_count(), true);
  const std::size_t first = g.first_slot(kField);
  for (std::size_t p = first; p < first + g.degree_count(kField); ++p) active[p] = false;
  return active;
}

template <class Apply>
SpectralEstimate nonnegative_spectral_radius(Apply apply, const std::vector<bool>& active, const StabilityOptions& opts) {
  SpectralEstimate est;
  const std::size_t size = active.size();
  DeterministicRng rng(opts.seed);
  std::vector<double> v(size, 0.0);
  for (std::size_t k = 0; k < size; ++k) {
    if (active[k]) v[k] = rng.uniform(0.5, 1.5);
  }
  if (l1(v) == 0.0) {
    est.converged = true;
    return est;
  }

  // Nilpotent operators (acyclic dependency structure, e.g. trees) reach the
  // zero vector exactly after at most as many products as there are messages
  // on the longest dependency chain.
  std::vector<double> y(size, 0.0);
  {
    std::vector<double> u = v;
    const std::size_t cap = std::min(opts.max_iterations, size + 1);
    for (std::size_t k = 0; k < cap; ++k) {
      apply(u, y);
      ++est.iterations;
      const double norm = l1(y);
      if (norm == 0.0) {
        est.converged = true;
        return est;
      }
      for (std::size_t i = 0; i < size; ++i) u[i] = y[i] / norm;
    }
  }

  // Shifted iteration on A = J + I keeps every active entry positive and makes
  // the Perron root dominant; Collatz-Wielandt ratios bracket rho(A).
  double norm_v = l1(v);
  for (double& x : v) x /= norm_v;
  std::vector<double> history;
  double best_upper = std::numeric_limits<double>::infinity();
  double lambda = 1.0;
  for (std::size_t k = 0; k < opts.max_iterations; ++k) {
    apply(v, y);
    ++est.iterations;
    double lower = std::numeric_limits<double>::infinity();
    double upper = 0.0;
    for (std::size_t i = 0; i < size; ++i) {
      if (!active[i]) continue;
      y[i] += v[i];
      if (v[i] > 1e-280) {
        const double r = y[i] / v[i];
        lower = std::min(lower, r);
        upper = std::max(upper, r);
      }
    }
    best_upper = std::min(best_upper, upper);
    const double norm_y = l1(y);
    lambda = norm_y;  // ||v||_1 == 1
    history.push_back(lambda);
    for (std::size_t i = 0; i < size; ++i) v[i] = y[i] / norm_y;
    const bool bracketed = upper - lower <= opts.tolerance * upper;
    const bool stagnant = history.size() > 100 &&
                          std::abs(lambda - history[history.size() - 51]) <= opts.tolerance * lambda;
    if (bracketed || stagnant) {
      est.converged = true;
      break;
    }
  }
  est.radius = std::max(0.0, lambda - 1.0);
  est.upper_bound = std::max(est.radius, best_upper - 1.0);
  return est;
}

// W update applied to an arbitrary W vector; field-origin entries forced to 0.
std::vector<double> w_update(const WeightedFieldGraph& g, const std::vector<double>& w) {
  MessageState s;
  s.w = w;
  s.h.assign(w.size(), 1.0);
  s.topology = g.topology_hash();
  return mpa_step(g, s).w;
}

}  // namespace

RankingComparison compare_rankings(const InfluenceProfile& exact, const InfluenceProfile& estimate) {
  if (exact.values.size() != estimate.values.size()) {
    throw Error(Errc::NodeSetMismatch, "profiles cover " + std::to_string(exact.values.size()) + " and " +
                                           std::to_string(estimate.values.size()) + " nodes");
  }
  if (exact.values.empty()) throw Error(Errc::NodeSetMismatch, "empty profiles");
  RankingComparison out;
  out.kendall_tau = kendall_tau_b(exact.values, estimate.values);
  out.spearman_rho = hinfluence::spearman_rho(exact.values, estimate.values);
  out.exact_top = most_influential(exact);
  out.estimate_top = most_influential(estimate);
  out.top1_match = out.exact_top == out.estimate_top;
  out.overestimation.resize(exact.values.size());
  for (std::size_t k = 0; k < exact.values.size(); ++k) out.overestimation[k] = estimate.values[k] / exact.values[k];
  return out;
}

double kendall_tau_b(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw Error(Errc::NodeSetMismatch, "sample sizes differ");
  long long concordant = 0;
  long long discordant = 0;
  long long tied_x = 0;
  long long tied_y = 0;
  long long pairs = 0;
  for (std::size_t a = 0; a < x.size(); ++a) {
    for (std::size_t b = a + 1; b < x.size(); ++b) {
      ++pairs;
      const int sx = sign(x[a] - x[b]);
      const int sy = sign(y[a] - y[b]);
      if (sx == 0) ++tied_x;
      if (sy == 0) ++tied_y;
      if (sx * sy > 0) ++concordant;
      if (sx * sy < 0) ++discordant;
    }
  }
  const double denom = std::sqrt(static_cast<double>(pairs - tied_x) * static_cast<double>(pairs - tied_y));
  if (denom == 0.0) return degenerate_correlation(x, y);
  return static_cast<double>(concordant - discordant) / denom;
}

double spearman_rho(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw Error(Errc::NodeSetMismatch, "sample sizes differ");
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t k = 0; k < rx.size(); ++k) {
    sxy += (rx[k] - mx) * (ry[k] - my);
    sxx += (rx[k] - mx) * (rx[k] - mx);
    syy += (ry[k] - my) * (ry[k] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return degenerate_correlation(x, y);
  return sxy / std::sqrt(sxx * syy);
}

LinearFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  LinearFit fit;
  const double n = static_cast<double>(x.size());
  if (x.empty() || x.size() != y.size()) return {kNaN, kNaN, kNaN};
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sxy += (x[k] - mx) * (y[k] - my);
    sxx += (x[k] - mx) * (x[k] - mx);
    syy += (y[k] - my) * (y[k] - my);
  }
  if (sxx == 0.0) return {kNaN, my, kNaN};
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r2 = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return fit;
}

std::vector<CommunitySummary> community_artefact(const InfluenceProfile& exact, const InfluenceProfile& estimate,
                                                 const CommunityLabels& labels, std::size_t k) {
  if (exact.values.size() != estimate.values.size()) throw Error(Errc::NodeSetMismatch, "profile sizes differ");
  if (labels.label.size() != exact.values.size()) {
    throw Error(Errc::LabelMismatch, std::to_string(labels.label.size()) + " labels for " +
                                         std::to_string(exact.values.size()) + " nodes");
  }
  std::vector<CommunitySummary> out;
  for (std::size_t c = 0; c < labels.community_count(); ++c) {
    const auto members = labels.members(static_cast<int>(c));
    CommunitySummary s;
    s.community = static_cast<int>(c);
    s.size = members.size();
    if (members.empty()) {
      out.push_back(s);
      continue;
    }
    std::vector<double> xs;
    std::vector<double> ys;
    for (NodeId i : members) {
      const double ratio = estimate[i] / exact[i];
      s.mean_ratio += ratio;
      s.max_ratio = std::max(s.max_ratio, ratio);
      xs.push_back(exact[i]);
      ys.push_back(estimate[i]);
    }
    s.mean_ratio /= static_cast<double>(members.size());
    const auto top_exact = top_k(members, exact, k);
    const auto top_est = top_k(members, estimate, k);
    const std::set<NodeId> exact_set(top_exact.begin(), top_exact.end());
    s.top_k = top_exact.size();
    for (NodeId i : top_est) s.top_k_overlap += exact_set.count(i);
    const LinearFit fit = least_squares(xs, ys);
    s.slope = fit.slope;
    s.intercept = fit.intercept;
    out.push_back(s);
  }
  return out;
}

std::string family_name(const GraphFamily& family) {
  struct Visitor {
    std::string operator()(const ErdosRenyiFamily&) const { return "erdos-renyi"; }
    std::string operator()(const WheelSpec&) const { return "wheel"; }
    std::string operator()(const TreeFamily&) const { return "tree"; }
  };
  return std::visit(Visitor{}, family);
}

WeightedFieldGraph make_graph(const GraphFamily& family, std::uint64_t seed) {
  struct Visitor {
    std::uint64_t seed;
    WeightedFieldGraph operator()(const ErdosRenyiFamily& f) const {
      RandomGraphSpec spec;
      spec.n = f.n;
      spec.m = f.m;
      spec.field_weight = f.field_weight;
      spec.weight_min = f.weight_min;
      spec.weight_max = f.weight_max;
      spec.seed = seed;
      return generate_erdos_renyi(spec);
    }
    WeightedFieldGraph operator()(const WheelSpec& f) const {
      WheelSpec spec = f;
      spec.seed = seed;
      return generate_wheel(spec);
    }
    WeightedFieldGraph operator()(const TreeFamily& f) const {
      return generate_random_tree(f.n, f.weight_min, f.weight_max, seed);
    }
  };
  return std::visit(Visitor{seed}, family);
}

SweepTable convergence_sweep(const std::vector<GraphFamily>& points, const std::vector<std::uint64_t>& seeds,
                             const StoppingConfig& cfg) {
  if (points.empty()) throw Error(Errc::InvalidArgument, "sweep needs at least one family point");
  if (seeds.size() < 3) throw Error(Errc::InvalidArgument, "sweep needs at least three seeds per point");
  StoppingConfig run_cfg = cfg;
  run_cfg.record_trace = true;

  SweepTable table;
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& family : points) {
    for (std::uint64_t seed : seeds) {
      const auto g = make_graph(family, seed);
      const auto start = std::chrono::steady_clock::now();
      const auto run = mpa_run(g, mpa_init(g), run_cfg);
      const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;

      SweepRow row;
      row.family = family_name(family);
      row.n = g.n();
      row.m = g.edge_count();
      row.m_over_n = static_cast<double>(row.m) / static_cast<double>(row.n);
      row.seed = seed;
      row.diameter = diameter(g);
      row.w_rounds = run.trace.w_round.value_or(run.trace.stop_round);
      row.h_rounds = run.trace.h_round.value_or(run.trace.stop_round);
      row.stop_round = run.trace.stop_round;
      row.stop_reason = run.trace.stop_reason;
      row.wall_seconds = elapsed.count();
      xs.push_back(row.m_over_n);
      ys.push_back(static_cast<double>(row.h_rounds));
      table.rows.push_back(std::move(row));
    }
  }
  table.h_fit = least_squares(xs, ys);
  return table;
}

void write_sweep_csv(const SweepTable& table, std::ostream& out, const Metadata& meta) {
  for (const auto& [key, value] : meta) out << "# " << key << '=' << value << '\n';
  out << "family,n,m,m_over_n,seed,diameter,w_rounds,h_rounds,stop_round,stop_reason,wall_seconds\n";
  for (const auto& r : table.rows) {
    out << r.family << ',' << r.n << ',' << r.m << ',' << format_number(r.m_over_n) << ',' << r.seed << ','
        << r.diameter << ',' << r.w_rounds << ',' << r.h_rounds << ',' << r.stop_round << ','
        << to_string(r.stop_reason) << ',' << format_number(r.wall_seconds) << '\n';
  }
}

void apply_w_jacobian(const WeightedFieldGraph& g, const std::vector<double>& w, const std::vector<double>& v,
                      std::vector<double>& out) {
  const std::vector<double> next = w_update(g, w);
  out.assign(w.size(), 0.0);
  for (NodeId i = 1; i <= g.n(); ++i) {
    const std::size_t first = g.first_slot(i);
    const std::size_t last = first + g.degree_count(i);
    double total = 0.0;
    for (std::size_t p = first; p < last; ++p) {
      if (g.target(p) != kField) total += g.slot_weight(p) * v[g.reverse(p)];
    }
    for (std::size_t p = first; p < last; ++p) {
      const double own = g.target(p) == kField ? 0.0 : g.slot_weight(p) * v[g.reverse(p)];
      out[p] = next[p] * next[p] * (total - own) / g.slot_weight(p);
    }
  }
}

void apply_h_propagation(const WeightedFieldGraph& g, const std::vector<double>& w, const std::vector<double>& v,
                         std::vector<double>& out) {
  out.assign(w.size(), 0.0);
  for (NodeId i = 1; i <= g.n(); ++i) {
    const std::size_t first = g.first_slot(i);
    const std::size_t last = first + g.degree_count(i);
    double total = 0.0;
    for (std::size_t p = first; p < last; ++p) {
      if (g.target(p) != kField) total += w[g.reverse(p)] * v[g.reverse(p)];
    }
    for (std::size_t p = first; p < last; ++p) {
      const double own = g.target(p) == kField ? 0.0 : w[g.reverse(p)] * v[g.reverse(p)];
      out[p] = total - own;
    }
  }
}

StabilityReport stability_probe(const WeightedFieldGraph& g, const MessageState& fixed, const StabilityOptions& opts) {
  check_state(g, fixed);
  const double residual = w_step_residual(g, fixed);
  if (!(residual < opts.fixed_point_tolerance)) {
    throw Error(Errc::NotAFixedPoint, "one step still moves W by " + format_number(residual));
  }
  const auto active = active_messages(g);
  const std::vector<double>& w = fixed.w;

  StabilityReport report;
  report.w = nonnegative_spectral_radius(
      [&](const std::vector<double>& v, std::vector<double>& out) { apply_w_jacobian(g, w, v, out); }, active, opts);
  report.h = nonnegative_spectral_radius(
      [&](const std::vector<double>& v, std::vector<double>& out) { apply_h_propagation(g, w, v, out); }, active,
      opts);

  // Directional finite difference of the W update against the Jacobian.
  DeterministicRng rng(opts.seed + 1);
  std::vector<double> dir(w.size(), 0.0);
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (active[k]) dir[k] = rng.uniform(-1.0, 1.0);
  }
  std::vector<double> jv;
  apply_w_jacobian(g, w, dir, jv);
  std::vector<double> shifted = w;
  for (std::size_t k = 0; k < w.size(); ++k) shifted[k] += opts.fd_epsilon * dir[k];
  const auto base = w_update(g, w);
  const auto moved = w_update(g, shifted);
  double err = 0.0;
  double scale = 0.0;
  for (std::size_t k = 0; k < w.size(); ++k) {
    const double fd = (moved[k] - base[k]) / opts.fd_epsilon;
    err = std::max(err, std::abs(fd - jv[k]));
    scale = std::max(scale, std::abs(jv[k]));
  }
  report.fd_relative_error = scale > 0.0 ? err / scale : err;
  report.stable = report.w.radius < 1.0 && report.h.radius < 1.0;
  return report;
}

}  // namespace hinfluence
