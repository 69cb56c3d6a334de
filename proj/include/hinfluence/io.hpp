#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "hinfluence/graph.hpp"
#include "hinfluence/mpa.hpp"
#include "hinfluence/profile.hpp"

namespace hinfluence {

/// Graph built from a SNAP-style edge list plus the external id of every
/// renumbered node (original_ids[i - 1] for node i).
struct LoadedGraph {
  WeightedFieldGraph graph;
  std::vector<std::int64_t> original_ids;
};

/// Whitespace-separated `u v` pairs, one undirected edge per line; `#` lines
/// are comments and duplicate lines collapse. Nodes are renumbered 1..n in
/// order of first appearance, peer edges get weight 1 and every node is
/// tied to the field with `field_weight`. Throws ParseError or EmptyGraph.
LoadedGraph load_edge_list(std::istream& in, double field_weight);
LoadedGraph load_edge_list(const std::filesystem::path& path, double field_weight);

/// Peer edges as `u v` lines using internal ids.
void save_edge_list(const WeightedFieldGraph& g, std::ostream& out);

/// `n` on the first line, then `i j w` for every edge, field edges with id 0.
void save_graph(const WeightedFieldGraph& g, std::ostream& out);
WeightedFieldGraph load_graph(std::istream& in);
WeightedFieldGraph load_graph(const std::filesystem::path& path);

struct InducedGraph {
  WeightedFieldGraph graph;
  std::vector<NodeId> parent_ids;  // parent_ids[i - 1] = id of node i in the source graph
};

/// Subgraph on `keep` (renumbered in ascending id order) with every field
/// edge regenerated at `field_weight`. Throws EmptyKeepSet, UnknownNode or
/// Disconnected.
InducedGraph induce_subgraph(const WeightedFieldGraph& g, const std::vector<NodeId>& keep, double field_weight);

/// Community of every ordinary node; ids are contiguous from 0.
struct CommunityLabels {
  std::vector<int> label;  // label[i - 1] for node i

  std::size_t community_count() const;
  std::vector<std::size_t> sizes() const;
  std::vector<NodeId> members(int community) const;
};

/// CSV with header `node,community` covering nodes 1..n exactly once.
/// Throws ParseError, UnknownNode or MissingNode.
CommunityLabels load_communities(std::istream& in, std::size_t n);
CommunityLabels load_communities(const std::filesystem::path& path, std::size_t n);

/// Comment lines (`# key=value`) written ahead of a CSV header.
using Metadata = std::vector<std::pair<std::string, std::string>>;

void write_profile_csv(const InfluenceProfile& profile, std::ostream& out, const Metadata& meta = {});
/// Reads `node,influence` rows; nodes must be exactly 1..n. Throws ParseError
/// or MissingNode.
InfluenceProfile read_profile_csv(std::istream& in);
InfluenceProfile read_profile_csv(const std::filesystem::path& path);

void write_trace_csv(const ConvergenceTrace& trace, std::ostream& out, const Metadata& meta = {});

}  // namespace hinfluence
