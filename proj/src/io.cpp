#include "hinfluence/io.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_map>

#include "hinfluence/error.hpp"
#include "hinfluence/format.hpp"

namespace hinfluence {

namespace {

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoError, "cannot open " + path.string());
  return in;
}

bool skippable(const std::string& line) {
  auto pos = line.find_first_not_of(" \t\r");
  return pos == std::string::npos || line[pos] == '#';
}

[[noreturn]] void parse_error(std::size_t line_no, const std::string& what) {
  throw Error(Errc::ParseError, "line " + std::to_string(line_no) + ": " + what);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) {
    field.erase(0, field.find_first_not_of(" \t\r"));
    field.erase(field.find_last_not_of(" \t\r") + 1);
    fields.push_back(field);
  }
  return fields;
}

bool parse_index(const std::string& text, long long& out) {
  if (text.empty()) return false;
  std::size_t used = 0;
  try {
    out = std::stoll(text, &used);
  } catch (const std::exception&) {
    return false;
  }
  return used == text.size();
}

void write_metadata(std::ostream& out, const Metadata& meta) {
  for (const auto& [key, value] : meta) out << "# " << key << '=' << value << '\n';
}

}  // namespace

LoadedGraph load_edge_list(std::istream& in, double field_weight) {
  if (!(field_weight > 0.0)) throw Error(Errc::NonPositiveWeight, "field weight must be positive");
  std::unordered_map<std::int64_t, NodeId> ids;
  std::vector<std::int64_t> original;
  std::set<std::pair<NodeId, NodeId>> seen;
  std::vector<WeightedEdge> edges;

  auto intern = [&](std::int64_t raw) {
    auto [it, inserted] = ids.emplace(raw, static_cast<NodeId>(original.size() + 1));
    if (inserted) original.push_back(raw);
    return it->second;
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    std::istringstream ss(line);
    std::int64_t a = 0;
    std::int64_t b = 0;
    std::string extra;
    if (!(ss >> a >> b)) parse_error(line_no, "expected two integer node ids");
    if (ss >> extra) parse_error(line_no, "unexpected trailing token '" + extra + "'");
    if (a == b) parse_error(line_no, "self-loop at node " + std::to_string(a));
    NodeId u = intern(a);
    NodeId v = intern(b);
    if (u > v) std::swap(u, v);
    if (seen.emplace(u, v).second) edges.push_back({u, v, 1.0});
  }
  if (original.empty()) throw Error(Errc::EmptyGraph, "edge list contains no edges");
  for (NodeId i = 1; i <= original.size(); ++i) edges.push_back({kField, i, field_weight});
  return {WeightedFieldGraph::build(original.size(), edges), std::move(original)};
}

LoadedGraph load_edge_list(const std::filesystem::path& path, double field_weight) {
  auto in = open_input(path);
  return load_edge_list(in, field_weight);
}

void save_edge_list(const WeightedFieldGraph& g, std::ostream& out) {
  for (const auto& e : g.edges()) {
    if (e.u != kField) out << e.u << ' ' << e.v << '\n';
  }
}

void save_graph(const WeightedFieldGraph& g, std::ostream& out) {
  out << g.n() << '\n';
  for (const auto& e : g.edges()) out << e.u << ' ' << e.v << ' ' << format_exact(e.weight) << '\n';
}

WeightedFieldGraph load_graph(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  long long n = -1;
  std::vector<WeightedEdge> edges;
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    std::istringstream ss(line);
    std::string extra;
    if (n < 0) {
      std::string token;
      ss >> token;
      if (!parse_index(token, n) || n < 0 || (ss >> extra)) parse_error(line_no, "expected the node count");
      continue;
    }
    std::string su;
    std::string sv;
    std::string sw;
    long long u = 0;
    long long v = 0;
    double w = 0.0;
    if (!(ss >> su >> sv >> sw) || !parse_index(su, u) || !parse_index(sv, v) || !parse_number(sw, w) ||
        (ss >> extra)) {
      parse_error(line_no, "expected 'i j w'");
    }
    if (u < 0 || v < 0 || u > n || v > n) {
      throw Error(Errc::UnknownNode, "line " + std::to_string(line_no) + ": node outside 0.." + std::to_string(n));
    }
    edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v), w});
  }
  if (n < 0) throw Error(Errc::EmptyGraph, "graph file has no header");
  return WeightedFieldGraph::build(static_cast<std::size_t>(n), edges);
}

WeightedFieldGraph load_graph(const std::filesystem::path& path) {
  auto in = open_input(path);
  return load_graph(in);
}

InducedGraph induce_subgraph(const WeightedFieldGraph& g, const std::vector<NodeId>& keep, double field_weight) {
  if (keep.empty()) throw Error(Errc::EmptyKeepSet, "no nodes to keep");
  if (!(field_weight > 0.0)) throw Error(Errc::NonPositiveWeight, "field weight must be positive");
  std::vector<NodeId> sorted = keep;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  std::vector<NodeId> renumber(g.node_count(), 0);
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    const NodeId i = sorted[k];
    if (i == kField || !g.contains(i)) throw Error(Errc::UnknownNode, "cannot keep node " + std::to_string(i));
    renumber[i] = static_cast<NodeId>(k + 1);
  }

  std::vector<WeightedEdge> edges;
  for (NodeId i = 1; i <= sorted.size(); ++i) edges.push_back({kField, i, field_weight});
  for (const auto& e : g.edges()) {
    if (e.u == kField) continue;
    if (renumber[e.u] != 0 && renumber[e.v] != 0) edges.push_back({renumber[e.u], renumber[e.v], e.weight});
  }
  return {WeightedFieldGraph::build(sorted.size(), edges), std::move(sorted)};
}

std::size_t CommunityLabels::community_count() const {
  return label.empty() ? 0 : static_cast<std::size_t>(*std::max_element(label.begin(), label.end()) + 1);
}

std::vector<std::size_t> CommunityLabels::sizes() const {
  std::vector<std::size_t> out(community_count(), 0);
  for (int c : label) ++out[static_cast<std::size_t>(c)];
  return out;
}

std::vector<NodeId> CommunityLabels::members(int community) const {
  std::vector<NodeId> out;
  for (std::size_t k = 0; k < label.size(); ++k) {
    if (label[k] == community) out.push_back(static_cast<NodeId>(k + 1));
  }
  return out;
}

CommunityLabels load_communities(std::istream& in, std::size_t n) {
  CommunityLabels labels;
  labels.label.assign(n, -1);
  std::string line;
  std::size_t line_no = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    auto fields = split_csv(line);
    if (!header) {
      if (fields.size() != 2 || fields[0] != "node" || fields[1] != "community") {
        parse_error(line_no, "expected header 'node,community'");
      }
      header = true;
      continue;
    }
    long long node = 0;
    long long community = 0;
    if (fields.size() != 2 || !parse_index(fields[0], node) || !parse_index(fields[1], community) || community < 0) {
      parse_error(line_no, "expected 'node,community' with a non-negative community id");
    }
    if (node < 1 || static_cast<std::size_t>(node) > n) {
      throw Error(Errc::UnknownNode, "line " + std::to_string(line_no) + ": node " + std::to_string(node));
    }
    if (labels.label[node - 1] != -1) parse_error(line_no, "node " + std::to_string(node) + " labelled twice");
    labels.label[node - 1] = static_cast<int>(community);
  }
  if (!header) parse_error(line_no, "missing header 'node,community'");
  for (std::size_t k = 0; k < n; ++k) {
    if (labels.label[k] == -1) throw Error(Errc::MissingNode, "node " + std::to_string(k + 1) + " has no community");
  }
  std::set<int> distinct(labels.label.begin(), labels.label.end());
  if (!distinct.empty() && static_cast<std::size_t>(*distinct.rbegin()) + 1 != distinct.size()) {
    throw Error(Errc::ParseError, "community ids must be contiguous from 0");
  }
  return labels;
}

CommunityLabels load_communities(const std::filesystem::path& path, std::size_t n) {
  auto in = open_input(path);
  return load_communities(in, n);
}

void write_profile_csv(const InfluenceProfile& profile, std::ostream& out, const Metadata& meta) {
  write_metadata(out, meta);
  out << "node,influence\n";
  for (std::size_t k = 0; k < profile.values.size(); ++k) {
    out << (k + 1) << ',' << format_number(profile.values[k]) << '\n';
  }
}

InfluenceProfile read_profile_csv(std::istream& in) {
  std::map<long long, double> rows;
  std::string line;
  std::size_t line_no = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    auto fields = split_csv(line);
    if (!header) {
      if (fields.size() != 2 || fields[0] != "node") parse_error(line_no, "expected header 'node,<value>'");
      header = true;
      continue;
    }
    long long node = 0;
    double value = 0.0;
    if (fields.size() != 2 || !parse_index(fields[0], node) || !parse_number(fields[1], value)) {
      parse_error(line_no, "expected 'node,value'");
    }
    if (node < 1) throw Error(Errc::UnknownNode, "line " + std::to_string(line_no) + ": node " + std::to_string(node));
    if (!rows.emplace(node, value).second) parse_error(line_no, "node " + std::to_string(node) + " listed twice");
  }
  if (!header) parse_error(line_no, "missing header");
  InfluenceProfile profile;
  long long expect = 1;
  for (const auto& [node, value] : rows) {
    if (node != expect) throw Error(Errc::MissingNode, "node " + std::to_string(expect) + " missing from profile");
    profile.values.push_back(value);
    ++expect;
  }
  return profile;
}

InfluenceProfile read_profile_csv(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_profile_csv(in);
}

void write_trace_csv(const ConvergenceTrace& trace, std::ostream& out, const Metadata& meta) {
  write_metadata(out, meta);
  out << "t,dW,dH\n";
  for (const auto& r : trace.records) {
    out << r.t << ',' << format_number(r.d_w) << ',' << format_number(r.d_h) << '\n';
  }
}

}  // namespace hinfluence
