#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/SparseCore>

namespace hinfluence {

using NodeId = std::uint32_t;

// Index 0 is the field node; ordinary nodes are 1..n.
inline constexpr NodeId kField = 0;

struct WeightedEdge {
  NodeId u;
  NodeId v;
  double weight;

  friend bool operator==(const WeightedEdge&, const WeightedEdge&) = default;
};

struct Neighbor {
  NodeId id;
  double weight;
};

/// Undirected, positively weighted graph on {field, 1..n}.
///
/// Adjacency is a compressed neighbour array sorted by node id. Every
/// directed edge i->j is identified by its slot in that array, so per-edge
/// quantities (messages) live in flat vectors of size directed_edge_count().
/// Instances are immutable and connected by construction.
class WeightedFieldGraph {
 public:
  /// Validates and builds. Throws Error with SelfLoop, UnknownNode,
  /// NonPositiveWeight, DuplicateEdge or Disconnected.
  static WeightedFieldGraph build(std::size_t n, std::span<const WeightedEdge> edges);

  std::size_t n() const noexcept { return n_; }
  std::size_t node_count() const noexcept { return n_ + 1; }
  std::size_t edge_count() const noexcept { return adj_.size() / 2; }
  std::size_t directed_edge_count() const noexcept { return adj_.size(); }

  bool contains(NodeId i) const noexcept { return i <= n_; }

  /// Ascending by neighbour id. Throws UnknownNode.
  std::span<const Neighbor> neighbors(NodeId i) const;

  /// First directed-edge slot of node i; neighbors(i)[k] is slot
  /// first_slot(i) + k.
  std::size_t first_slot(NodeId i) const { return offsets_[i]; }
  std::size_t degree_count(NodeId i) const { return offsets_[i + 1] - offsets_[i]; }

  NodeId origin(std::size_t slot) const { return origin_[slot]; }
  NodeId target(std::size_t slot) const { return adj_[slot].id; }
  double slot_weight(std::size_t slot) const { return adj_[slot].weight; }
  /// Slot of the opposite orientation j->i.
  std::size_t reverse(std::size_t slot) const { return reverse_[slot]; }

  /// Slot of i->j, if the edge exists.
  std::optional<std::size_t> find_slot(NodeId i, NodeId j) const;

  /// Weight of {i,j}, or 0 when absent.
  double weight(NodeId i, NodeId j) const;

  double degree(NodeId i) const;
  double max_degree() const noexcept { return max_degree_; }

  /// Canonical edge list: u < v, sorted lexicographically.
  std::vector<WeightedEdge> edges() const;

  /// L = D - C over all n+1 nodes.
  Eigen::SparseMatrix<double> laplacian() const;

  /// Laplacian with the field row and column removed (n x n, node i at i-1).
  Eigen::SparseMatrix<double> grounded_laplacian() const;

  /// Hash of the directed-edge key set, used to detect message states built
  /// for another topology.
  std::uint64_t topology_hash() const noexcept { return topology_hash_; }

 private:
  WeightedFieldGraph() = default;

  std::size_t n_ = 0;
  std::vector<std::size_t> offsets_;
  std::vector<Neighbor> adj_;
  std::vector<NodeId> origin_;
  std::vector<std::size_t> reverse_;
  std::vector<double> degree_;
  double max_degree_ = 0.0;
  std::uint64_t topology_hash_ = 0;
};

inline WeightedFieldGraph build_graph(std::size_t n, std::span<const WeightedEdge> edges) {
  return WeightedFieldGraph::build(n, edges);
}

/// Multiplies every weight by alpha. Throws NonPositiveScale.
WeightedFieldGraph scale_weights(const WeightedFieldGraph& g, double alpha);

/// Hop distances from `source` over the whole graph, field included.
std::vector<std::size_t> bfs_hops(const WeightedFieldGraph& g, NodeId source);

/// Longest shortest path (in hops) over all nodes including the field.
std::size_t diameter(const WeightedFieldGraph& g);

bool is_tree(const WeightedFieldGraph& g);

}  // namespace hinfluence
