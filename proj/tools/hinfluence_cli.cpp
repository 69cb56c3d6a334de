// Command-line front end: exact and message-passing influence, topology
// changes, ranking comparison, convergence sweeps and graph generation.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hinfluence/analysis.hpp"
#include "hinfluence/dynamic.hpp"
#include "hinfluence/error.hpp"
#include "hinfluence/exact.hpp"
#include "hinfluence/format.hpp"
#include "hinfluence/generators.hpp"
#include "hinfluence/io.hpp"
#include "hinfluence/mpa.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace hinfluence;

namespace {

constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;

using Params = std::map<std::string, std::string>;

// "n=50,p=0.01,seed=7" -> {n: 50, p: 0.01, seed: 7}
Params parse_params(const std::string& text) {
  Params out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) throw Error(Errc::InvalidArgument, "expected key=value, got '" + item + "'");
    out[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return out;
}

double take_double(Params& p, const std::string& key, double fallback) {
  auto it = p.find(key);
  if (it == p.end()) return fallback;
  double v = 0.0;
  if (!parse_number(it->second, v)) throw Error(Errc::InvalidArgument, "bad number for " + key + ": " + it->second);
  p.erase(it);
  return v;
}

std::uint64_t take_uint(Params& p, const std::string& key, std::uint64_t fallback) {
  auto it = p.find(key);
  if (it == p.end()) return fallback;
  std::uint64_t v = 0;
  try {
    std::size_t used = 0;
    v = std::stoull(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw Error(Errc::InvalidArgument, "bad integer for " + key + ": " + it->second);
  }
  p.erase(it);
  return v;
}

void reject_leftovers(const Params& p, const std::string& what) {
  if (!p.empty()) throw Error(Errc::InvalidArgument, "unknown " + what + " parameter '" + p.begin()->first + "'");
}

WheelSpec wheel_from(const std::string& text) {
  Params p = parse_params(text);
  WheelSpec spec;
  spec.n = take_uint(p, "n", spec.n);
  spec.p = take_double(p, "p", spec.p);
  spec.q = take_double(p, "q", spec.q);
  spec.hub = static_cast<NodeId>(take_uint(p, "hub", spec.hub));
  spec.field_weight = take_double(p, "field_weight", spec.field_weight);
  spec.seed = take_uint(p, "seed", spec.seed);
  reject_leftovers(p, "wheel");
  return spec;
}

RandomGraphSpec er_from(const std::string& text) {
  Params p = parse_params(text);
  RandomGraphSpec spec;
  spec.n = take_uint(p, "n", 100);
  spec.m = take_uint(p, "m", 200);
  spec.field_weight = take_double(p, "field_weight", spec.field_weight);
  spec.field_probability = take_double(p, "field_probability", spec.field_probability);
  spec.weight_min = take_double(p, "wmin", spec.weight_min);
  spec.weight_max = take_double(p, "wmax", spec.weight_max);
  spec.seed = take_uint(p, "seed", spec.seed);
  reject_leftovers(p, "er");
  return spec;
}

// Every graph input the subcommands accept, resolved to a graph plus the
// labels some sources carry.
struct GraphInput {
  std::string graph_file;
  std::string edges_file;
  std::string wheel;
  std::string er;
  std::string tree;
  std::string sbm;
  double field_weight = 0.040;
  std::string communities_file;
  int community = -1;
};

struct ResolvedGraph {
  WeightedFieldGraph graph;
  std::optional<CommunityLabels> labels;
  std::string description;
};

ResolvedGraph resolve(const GraphInput& in) {
  const int given = !in.graph_file.empty() + !in.edges_file.empty() + !in.wheel.empty() + !in.er.empty() +
                    !in.tree.empty() + !in.sbm.empty();
  if (given != 1) {
    throw Error(Errc::InvalidArgument, "give exactly one of --graph, --edges, --wheel, --er, --tree, --sbm");
  }
  std::optional<ResolvedGraph> out;
  if (!in.graph_file.empty()) {
    out.emplace(ResolvedGraph{load_graph(fs::path(in.graph_file)), std::nullopt, "graph:" + in.graph_file});
  } else if (!in.edges_file.empty()) {
    out.emplace(ResolvedGraph{load_edge_list(fs::path(in.edges_file), in.field_weight).graph, std::nullopt,
                              "edges:" + in.edges_file + ",field_weight=" + format_number(in.field_weight)});
  } else if (!in.wheel.empty()) {
    out.emplace(ResolvedGraph{generate_wheel(wheel_from(in.wheel)), std::nullopt, "wheel:" + in.wheel});
  } else if (!in.er.empty()) {
    out.emplace(ResolvedGraph{generate_erdos_renyi(er_from(in.er)), std::nullopt, "er:" + in.er});
  } else if (!in.tree.empty()) {
    Params p = parse_params(in.tree);
    const auto n = take_uint(p, "n", 50);
    const double lo = take_double(p, "wmin", 0.5);
    const double hi = take_double(p, "wmax", 2.0);
    const auto seed = take_uint(p, "seed", 0);
    reject_leftovers(p, "tree");
    out.emplace(ResolvedGraph{generate_random_tree(n, lo, hi, seed), std::nullopt, "tree:" + in.tree});
  } else {
    Params p = parse_params(in.sbm);
    std::vector<std::size_t> sizes;
    {
      std::string text = p.count("sizes") ? p["sizes"] : "326/434/125";
      p.erase("sizes");
      std::stringstream ss(text);
      std::string part;
      while (std::getline(ss, part, '/')) sizes.push_back(std::stoul(part));
    }
    // Either one within-block probability for all blocks, or an expected
    // internal degree shared by every block.
    std::vector<double> p_in;
    if (p.count("p_in")) {
      p_in.assign(sizes.size(), take_double(p, "p_in", 0.0));
    } else {
      p_in = matched_degree_probabilities(sizes, take_double(p, "degree", 50.0));
    }
    const double p_out = take_double(p, "p_out", 0.003);
    const double fw = take_double(p, "field_weight", 0.040);
    const auto seed = take_uint(p, "seed", 0);
    reject_leftovers(p, "sbm");
    auto model = generate_block_model(sizes, p_in, p_out, fw, seed);
    out.emplace(ResolvedGraph{std::move(model.graph), CommunityLabels{std::move(model.labels)}, "sbm:" + in.sbm});
  }

  if (!in.communities_file.empty()) {
    out->labels = load_communities(fs::path(in.communities_file), out->graph.n());
  }
  if (in.community >= 0) {
    if (!out->labels) throw Error(Errc::InvalidArgument, "--community needs labels (--communities or --sbm)");
    auto induced = induce_subgraph(out->graph, out->labels->members(in.community), in.field_weight);
    out->graph = std::move(induced.graph);
    out->labels.reset();
    out->description += ",community=" + std::to_string(in.community);
  }
  return std::move(*out);
}

void add_graph_options(CLI::App* cmd, GraphInput& in) {
  cmd->add_option("--graph", in.graph_file, "Graph file ('n' line then 'i j w' lines, field id 0)");
  cmd->add_option("--edges", in.edges_file, "SNAP-style edge list; every node is tied to the field");
  cmd->add_option("--field-weight", in.field_weight, "Field edge weight for --edges and --community")->capture_default_str();
  cmd->add_option("--wheel", in.wheel, "Wheel graph, e.g. n=50,p=0.01,q=0.25,hub=1,seed=7");
  cmd->add_option("--er", in.er, "Random graph, e.g. n=100,m=400,seed=1,wmin=1,wmax=1");
  cmd->add_option("--tree", in.tree, "Random tree, e.g. n=50,seed=1");
  cmd->add_option("--sbm", in.sbm, "Block model, e.g. sizes=326/434/125,degree=50,p_out=0.003,seed=1 (or p_in=...)");
  cmd->add_option("--communities", in.communities_file, "CSV 'node,community'");
  cmd->add_option("--community", in.community, "Restrict to the subgraph induced by one community");
}

void add_stopping_options(CLI::App* cmd, StoppingConfig& cfg) {
  cmd->add_option("--eps-w", cfg.eps_w, "Tolerance on max |dW| per round")->capture_default_str()->check(CLI::PositiveNumber);
  cmd->add_option("--eps-h", cfg.eps_h, "Tolerance on max relative change of the estimates")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--max-rounds", cfg.max_rounds, "Round cap")->capture_default_str()->check(CLI::PositiveNumber);
}

json stopping_json(const StoppingConfig& cfg) {
  return json{{"eps_w", cfg.eps_w}, {"eps_h", cfg.eps_h}, {"max_rounds", cfg.max_rounds}};
}

Metadata stopping_meta(const StoppingConfig& cfg) {
  return {{"eps_w", format_number(cfg.eps_w)},
          {"eps_h", format_number(cfg.eps_h)},
          {"max_rounds", std::to_string(cfg.max_rounds)}};
}

fs::path prepare_out(const std::string& dir) {
  fs::path out(dir);
  fs::create_directories(out);
  return out;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream f(path);
  if (!f) throw Error(Errc::IoError, "cannot write " + path.string());
  return f;
}

void write_json(const fs::path& path, const json& j) { open_out(path) << j.dump(2) << '\n'; }

json trace_json(const ConvergenceTrace& t) {
  json j{{"start_round", t.start_round}, {"stop_round", t.stop_round}, {"rounds", t.rounds()},
         {"stop_reason", std::string(to_string(t.stop_reason))}};
  j["w_round"] = t.w_round ? json(*t.w_round) : json(nullptr);
  j["h_round"] = t.h_round ? json(*t.h_round) : json(nullptr);
  return j;
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

// --- subcommands -----------------------------------------------------------

int run_exact(const GraphInput& in, const std::string& out_dir) {
  auto g = resolve(in);
  auto profile = exact_influence_all(g.graph);
  auto out = prepare_out(out_dir);
  auto f = open_out(out / "exact.csv");
  write_profile_csv(profile, f, {{"command", "exact"}, {"source", g.description}, {"kind", "exact"}});
  std::cout << "exact: " << g.graph.n() << " nodes, most influential " << most_influential(profile) << '\n';
  return 0;
}

int run_mpa(const GraphInput& in, StoppingConfig cfg, const std::string& out_dir) {
  auto g = resolve(in);
  auto result = mpa_run(g.graph, mpa_init(g.graph), cfg);
  auto estimates = estimate_all(g.graph, result.state);
  auto out = prepare_out(out_dir);
  Metadata meta{{"command", "mpa"}, {"source", g.description}};
  for (auto& kv : stopping_meta(cfg)) meta.push_back(kv);
  {
    auto f = open_out(out / "estimates.csv");
    Metadata m = meta;
    m.emplace_back("kind", "mpa-estimate");
    m.emplace_back("round", std::to_string(result.state.t));
    write_profile_csv(estimates, f, m);
  }
  {
    auto f = open_out(out / "trace.csv");
    write_trace_csv(result.trace, f, meta);
  }
  json summary{{"command", "mpa"}, {"source", g.description}, {"config", stopping_json(cfg)},
               {"n", g.graph.n()}, {"edges", g.graph.edge_count()}, {"trace", trace_json(result.trace)},
               {"w_rounds", result.trace.w_round ? json(*result.trace.w_round) : json(nullptr)},
               {"h_rounds", result.trace.h_round ? json(*result.trace.h_round) : json(nullptr)},
               {"stop_reason", std::string(to_string(result.trace.stop_reason))}};
  write_json(out / "summary.json", summary);
  if (g.labels) {
    auto f = open_out(out / "communities.csv");
    f << "node,community\n";
    for (std::size_t k = 0; k < g.labels->label.size(); ++k) f << (k + 1) << ',' << g.labels->label[k] << '\n';
  }
  std::cout << "mpa: stopped at round " << result.trace.stop_round << " (" << to_string(result.trace.stop_reason)
            << ")\n";
  return 0;
}

struct DynamicInput {
  std::string before;
  std::string after;
  std::string wheel_pair;
  double field_weight = 0.040;
};

// "wheel:n=50,hub=1" / "graph:file" / "edges:file" / "er:..." / "tree:..."
WeightedFieldGraph graph_from_source(const std::string& source, double field_weight, std::string& description) {
  auto colon = source.find(':');
  if (colon == std::string::npos) throw Error(Errc::InvalidArgument, "graph source needs a kind prefix: " + source);
  GraphInput in;
  in.field_weight = field_weight;
  const std::string kind = source.substr(0, colon);
  const std::string rest = source.substr(colon + 1);
  if (kind == "graph") in.graph_file = rest;
  else if (kind == "edges") in.edges_file = rest;
  else if (kind == "wheel") in.wheel = rest;
  else if (kind == "er") in.er = rest;
  else if (kind == "tree") in.tree = rest;
  else throw Error(Errc::InvalidArgument, "unknown graph source kind '" + kind + "'");
  auto r = resolve(in);
  description = r.description;
  return std::move(r.graph);
}

int run_dynamic(const DynamicInput& in, StoppingConfig cfg, const std::string& out_dir) {
  std::optional<WeightedFieldGraph> before;
  std::optional<WeightedFieldGraph> after;
  std::string before_desc;
  std::string after_desc;
  if (!in.wheel_pair.empty()) {
    if (!in.before.empty() || !in.after.empty()) throw Error(Errc::InvalidArgument, "--wheel-pair excludes --before/--after");
    Params p = parse_params(in.wheel_pair);
    const auto n = take_uint(p, "n", 50);
    const double pp = take_double(p, "p", 0.01);
    const double q = take_double(p, "q", 0.25);
    const double fw = take_double(p, "field_weight", 0.040);
    const auto seed = take_uint(p, "seed", 0);
    reject_leftovers(p, "wheel-pair");
    auto pair = generate_wheel_pair(n, pp, q, fw, seed);
    before.emplace(std::move(pair.first));
    after.emplace(std::move(pair.second));
    before_desc = "wheel-pair:" + in.wheel_pair + ",hub=1";
    after_desc = "wheel-pair:" + in.wheel_pair + ",hub=26";
  } else {
    if (in.before.empty() || in.after.empty()) throw Error(Errc::InvalidArgument, "give --before and --after, or --wheel-pair");
    before.emplace(graph_from_source(in.before, in.field_weight, before_desc));
    try {
      after.emplace(graph_from_source(in.after, in.field_weight, after_desc));
    } catch (const Error& e) {
      if (e.code() == Errc::Disconnected) throw Error(Errc::InvalidNewGraph, e.what());
      throw;
    }
  }
  cfg.record_trace = true;
  auto report = run_change_experiment(*before, *after, cfg);

  auto out = prepare_out(out_dir);
  Metadata meta{{"command", "dynamic"}, {"before", before_desc}, {"after", after_desc}};
  for (auto& kv : stopping_meta(cfg)) meta.push_back(kv);
  const std::vector<std::pair<std::string, const ConvergenceTrace*>> traces = {
      {"trace_before.csv", &report.before_trace},
      {"trace_after_change.csv", &report.after_trace},
      {"trace_fresh.csv", &report.fresh_trace}};
  for (const auto& [name, trace] : traces) {
    auto f = open_out(out / name);
    write_trace_csv(*trace, f, meta);
  }
  json j{{"command", "dynamic"},
         {"before", before_desc},
         {"after", after_desc},
         {"config", stopping_json(cfg)},
         {"change_round", report.change_round},
         {"post_change_rounds", report.post_change_rounds},
         {"fresh_rounds", report.fresh_rounds},
         {"w_gap", report.w_gap},
         {"h_gap", report.h_gap},
         {"retained_edges", report.retained_edges},
         {"dropped_edges", report.dropped_edges},
         {"added_edges", report.added_edges},
         {"stop_reasons",
          {{"before", std::string(to_string(report.before_stop))},
           {"after_change", std::string(to_string(report.after_stop))},
           {"fresh", std::string(to_string(report.fresh_stop))}}},
         {"traces", {{"before", "trace_before.csv"}, {"after_change", "trace_after_change.csv"}, {"fresh", "trace_fresh.csv"}}}};
  write_json(out / "change_report.json", j);
  std::cout << "dynamic: post-change rounds " << report.post_change_rounds << ", fresh rounds "
            << report.fresh_rounds << ", w_gap " << format_number(report.w_gap) << '\n';
  return 0;
}

int run_compare(const std::string& exact_path, const std::string& est_path, const std::string& labels_path,
                const std::string& out_dir) {
  const auto exact = read_profile_csv(fs::path(exact_path));
  const auto est = read_profile_csv(fs::path(est_path));
  const auto cmp = compare_rankings(exact, est);
  auto out = prepare_out(out_dir);
  json j{{"command", "compare"},
         {"exact", exact_path},
         {"estimates", est_path},
         {"kendall_tau", cmp.kendall_tau},
         {"spearman_rho", cmp.spearman_rho},
         {"top1_match", cmp.top1_match},
         {"exact_top", cmp.exact_top},
         {"estimate_top", cmp.estimate_top}};
  double mean = 0.0;
  double max = 0.0;
  for (double r : cmp.overestimation) {
    mean += r;
    max = std::max(max, r);
  }
  j["mean_overestimation"] = mean / static_cast<double>(cmp.overestimation.size());
  j["max_overestimation"] = max;

  if (!labels_path.empty()) {
    const auto labels = load_communities(fs::path(labels_path), exact.n());
    const auto summary = community_artefact(exact, est, labels);
    json blocks = json::array();
    for (const auto& s : summary) {
      blocks.push_back({{"community", s.community},
                        {"size", s.size},
                        {"mean_ratio", s.mean_ratio},
                        {"max_ratio", s.max_ratio},
                        {"top_k", s.top_k},
                        {"top_k_overlap", s.top_k_overlap},
                        {"slope", number_or_null(s.slope)},
                        {"intercept", number_or_null(s.intercept)}});
    }
    j["labels"] = labels_path;
    j["communities"] = blocks;
    auto f = open_out(out / "scatter.csv");
    f << "# command=compare\n# exact=" << exact_path << "\n# estimates=" << est_path << "\n# labels=" << labels_path
      << "\nnode,exact,estimate,community\n";
    for (NodeId i = 1; i <= exact.n(); ++i) {
      f << i << ',' << format_number(exact[i]) << ',' << format_number(est[i]) << ',' << labels.label[i - 1] << '\n';
    }
  }
  write_json(out / "comparison.json", j);
  std::cout << "compare: kendall tau " << format_number(cmp.kendall_tau) << ", top-1 "
            << (cmp.top1_match ? "match" : "mismatch") << '\n';
  return 0;
}

struct SweepInput {
  std::string family = "er";
  std::vector<std::size_t> sizes = {100};
  std::vector<double> ratios = {2, 4, 8};
  std::vector<std::uint64_t> seeds = {1, 2, 3};
  double field_weight = 0.040;
  std::string wheel;  // base wheel parameters
};

int run_sweep(const SweepInput& in, StoppingConfig cfg, const std::string& out_dir) {
  if (in.seeds.empty()) throw Error(Errc::InvalidArgument, "--seeds must list at least three seeds");
  std::vector<GraphFamily> points;
  for (std::size_t n : in.sizes) {
    if (in.family == "er") {
      for (double ratio : in.ratios) {
        ErdosRenyiFamily f;
        f.n = n;
        // m/n counts field edges too, so the peer edges make up (ratio - 1) n.
        const double peer = (ratio - 1.0) * static_cast<double>(n);
        if (peer < 0.0) throw Error(Errc::InvalidArgument, "m/n must be at least 1");
        f.m = static_cast<std::size_t>(peer + 0.5);
        f.field_weight = in.field_weight;
        points.emplace_back(f);
      }
    } else if (in.family == "tree") {
      TreeFamily f;
      f.n = n;
      points.emplace_back(f);
    } else if (in.family == "wheel") {
      WheelSpec spec = in.wheel.empty() ? WheelSpec{} : wheel_from(in.wheel);
      spec.n = n;
      spec.field_weight = in.field_weight;
      points.emplace_back(spec);
    } else {
      throw Error(Errc::InvalidArgument, "unknown family '" + in.family + "'");
    }
  }
  auto table = convergence_sweep(points, in.seeds, cfg);
  auto out = prepare_out(out_dir);
  std::string seed_list;
  for (auto s : in.seeds) seed_list += (seed_list.empty() ? "" : "/") + std::to_string(s);
  Metadata meta{{"command", "sweep"}, {"family", in.family}, {"seeds", seed_list},
                {"field_weight", format_number(in.field_weight)}};
  for (auto& kv : stopping_meta(cfg)) meta.push_back(kv);
  {
    auto f = open_out(out / "sweep.csv");
    write_sweep_csv(table, f, meta);
  }
  json fit{{"command", "sweep"}, {"family", in.family}, {"seeds", in.seeds}, {"config", stopping_json(cfg)},
           {"x", "m_over_n"}, {"y", "h_rounds"}, {"slope", number_or_null(table.h_fit.slope)},
           {"intercept", number_or_null(table.h_fit.intercept)}, {"r2", number_or_null(table.h_fit.r2)},
           {"rows", table.rows.size()}};
  write_json(out / "fit.json", fit);
  std::cout << "sweep: " << table.rows.size() << " runs, H-rounds slope vs m/n "
            << format_number(table.h_fit.slope) << '\n';
  return 0;
}

int run_gen(const GraphInput& in, const std::string& out_dir) {
  auto g = resolve(in);
  auto out = prepare_out(out_dir);
  auto f = open_out(out / "graph.txt");
  f << "# command=gen\n# source=" << g.description << '\n';
  save_graph(g.graph, f);
  if (g.labels) {
    auto lf = open_out(out / "communities.csv");
    lf << "# command=gen\n# source=" << g.description << "\nnode,community\n";
    for (std::size_t k = 0; k < g.labels->label.size(); ++k) lf << (k + 1) << ',' << g.labels->label[k] << '\n';
  }
  std::cout << "gen: " << g.graph.n() << " nodes, " << g.graph.edge_count() << " edges\n";
  return 0;
}

int exit_code_for(Errc code) {
  return code == Errc::SolveFailure ? kExitInternal : kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Harmonic influence: exact Dirichlet solves and the message passing algorithm"};
  app.require_subcommand(1);
  std::string out_dir = ".";

  GraphInput graph_in;
  StoppingConfig cfg;

  auto* exact_cmd = app.add_subcommand("exact", "Exact influence of every node (writes exact.csv)");
  add_graph_options(exact_cmd, graph_in);
  exact_cmd->add_option("--out", out_dir, "Output directory")->capture_default_str();

  auto* mpa_cmd = app.add_subcommand("mpa", "Message passing estimates (estimates.csv, trace.csv, summary.json)");
  add_graph_options(mpa_cmd, graph_in);
  add_stopping_options(mpa_cmd, cfg);
  mpa_cmd->add_option("--out", out_dir, "Output directory")->capture_default_str();

  DynamicInput dyn_in;
  auto* dyn_cmd = app.add_subcommand("dynamic", "Change the topology after convergence and compare with a restart");
  dyn_cmd->add_option("--before", dyn_in.before, "Initial graph source, e.g. wheel:n=50,hub=1,seed=7 or graph:file");
  dyn_cmd->add_option("--after", dyn_in.after, "Final graph source");
  dyn_cmd->add_option("--wheel-pair", dyn_in.wheel_pair, "Hub-1 to hub-26 wheel pair, e.g. n=50,p=0.01,q=0.25,seed=7");
  dyn_cmd->add_option("--field-weight", dyn_in.field_weight, "Field weight for edges: sources")->capture_default_str();
  add_stopping_options(dyn_cmd, cfg);
  dyn_cmd->add_option("--out", out_dir, "Output directory")->capture_default_str();

  std::string exact_path;
  std::string est_path;
  std::string labels_path;
  auto* cmp_cmd = app.add_subcommand("compare", "Rank agreement of estimates against exact values");
  cmp_cmd->add_option("--exact", exact_path, "exact.csv")->required();
  cmp_cmd->add_option("--estimates", est_path, "estimates.csv")->required();
  cmp_cmd->add_option("--labels", labels_path, "Optional communities CSV 'node,community'");
  cmp_cmd->add_option("--out", out_dir, "Output directory")->capture_default_str();

  SweepInput sweep_in;
  auto* sweep_cmd = app.add_subcommand("sweep", "Convergence rounds across a graph family");
  sweep_cmd->add_option("--family", sweep_in.family, "er, wheel or tree")->capture_default_str();
  sweep_cmd->add_option("--sizes", sweep_in.sizes, "Node counts")->delimiter(',')->capture_default_str();
  sweep_cmd->add_option("--m-over-n", sweep_in.ratios, "Edge-to-node ratios (er only)")->delimiter(',')->capture_default_str();
  sweep_cmd->add_option("--seeds", sweep_in.seeds, "At least three seeds")->delimiter(',')->capture_default_str();
  sweep_cmd->add_option("--field-weight", sweep_in.field_weight, "Field edge weight")->capture_default_str();
  sweep_cmd->add_option("--wheel", sweep_in.wheel, "Base wheel parameters (wheel only)");
  add_stopping_options(sweep_cmd, cfg);
  sweep_cmd->add_option("--out", out_dir, "Output directory")->capture_default_str();

  auto* gen_cmd = app.add_subcommand("gen", "Write a graph (and labels, for --sbm) to graph.txt");
  add_graph_options(gen_cmd, graph_in);
  gen_cmd->add_option("--out", out_dir, "Output directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*exact_cmd) return run_exact(graph_in, out_dir);
    if (*mpa_cmd) return run_mpa(graph_in, cfg, out_dir);
    if (*dyn_cmd) return run_dynamic(dyn_in, cfg, out_dir);
    if (*cmp_cmd) return run_compare(exact_path, est_path, labels_path, out_dir);
    if (*sweep_cmd) return run_sweep(sweep_in, cfg, out_dir);
    if (*gen_cmd) return run_gen(graph_in, out_dir);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInternal;
}
