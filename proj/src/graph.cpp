#include "hinfluence/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>

#include "hinfluence/error.hpp"

namespace hinfluence {

namespace {

std::string edge_name(NodeId u, NodeId v) {
  return "{" + std::to_string(u) + "," + std::to_string(v) + "}";
}

constexpr std::uint64_t kFnvOffset = 1469598103934665603ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

std::uint64_t fnv_mix(std::uint64_t h, std::uint64_t value) {
  for (int b = 0; b < 8; ++b) {
    h ^= (value >> (8 * b)) & 0xffU;
    h *= kFnvPrime;
  }
  return h;
}

}  // namespace

WeightedFieldGraph WeightedFieldGraph::build(std::size_t n, std::span<const WeightedEdge> edges) {
  if (n > std::numeric_limits<NodeId>::max() - 1) {
    throw Error(Errc::InvalidArgument, "node count too large");
  }
  WeightedFieldGraph g;
  g.n_ = n;
  const std::size_t nodes = n + 1;

  std::vector<std::size_t> count(nodes, 0);
  for (const auto& e : edges) {
    if (e.u > n || e.v > n) {
      throw Error(Errc::UnknownNode, "edge " + edge_name(e.u, e.v) + " references a node outside 0.." +
                                         std::to_string(n));
    }
    if (e.u == e.v) {
      throw Error(Errc::SelfLoop, "self-loop at node " + std::to_string(e.u));
    }
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      throw Error(Errc::NonPositiveWeight, "edge " + edge_name(e.u, e.v) + " has weight " +
                                               std::to_string(e.weight));
    }
    ++count[e.u];
    ++count[e.v];
  }

  g.offsets_.assign(nodes + 1, 0);
  for (std::size_t i = 0; i < nodes; ++i) g.offsets_[i + 1] = g.offsets_[i] + count[i];
  g.adj_.resize(g.offsets_[nodes]);
  std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& e : edges) {
    g.adj_[fill[e.u]++] = {e.v, e.weight};
    g.adj_[fill[e.v]++] = {e.u, e.weight};
  }

  g.origin_.resize(g.adj_.size());
  g.degree_.assign(nodes, 0.0);
  for (NodeId i = 0; i < nodes; ++i) {
    auto first = g.adj_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i]);
    auto last = g.adj_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i + 1]);
    std::sort(first, last, [](const Neighbor& a, const Neighbor& b) { return a.id < b.id; });
    auto dup = std::adjacent_find(first, last, [](const Neighbor& a, const Neighbor& b) { return a.id == b.id; });
    if (dup != last) throw Error(Errc::DuplicateEdge, "edge " + edge_name(i, dup->id) + " listed twice");
    double d = 0.0;
    for (auto it = first; it != last; ++it) d += it->weight;
    g.degree_[i] = d;
    g.max_degree_ = std::max(g.max_degree_, d);
    std::fill(g.origin_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i]),
              g.origin_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i + 1]), i);
  }

  g.reverse_.resize(g.adj_.size());
  std::uint64_t h = fnv_mix(kFnvOffset, n);
  for (std::size_t slot = 0; slot < g.adj_.size(); ++slot) {
    g.reverse_[slot] = *g.find_slot(g.adj_[slot].id, g.origin_[slot]);
    h = fnv_mix(h, (static_cast<std::uint64_t>(g.origin_[slot]) << 32) | g.adj_[slot].id);
  }
  g.topology_hash_ = h;

  std::vector<std::size_t> hops = bfs_hops(g, kField);
  for (NodeId i = 0; i < nodes; ++i) {
    if (hops[i] == std::numeric_limits<std::size_t>::max()) {
      throw Error(Errc::Disconnected, "node " + std::to_string(i) + " is unreachable from the field node");
    }
  }
  return g;
}

std::span<const Neighbor> WeightedFieldGraph::neighbors(NodeId i) const {
  if (!contains(i)) throw Error(Errc::UnknownNode, "node " + std::to_string(i));
  return {adj_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
}

std::optional<std::size_t> WeightedFieldGraph::find_slot(NodeId i, NodeId j) const {
  if (!contains(i) || !contains(j)) return std::nullopt;
  auto first = adj_.begin() + static_cast<std::ptrdiff_t>(offsets_[i]);
  auto last = adj_.begin() + static_cast<std::ptrdiff_t>(offsets_[i + 1]);
  auto it = std::lower_bound(first, last, j, [](const Neighbor& a, NodeId id) { return a.id < id; });
  if (it == last || it->id != j) return std::nullopt;
  return static_cast<std::size_t>(it - adj_.begin());
}

double WeightedFieldGraph::weight(NodeId i, NodeId j) const {
  auto slot = find_slot(i, j);
  return slot ? adj_[*slot].weight : 0.0;
}

double WeightedFieldGraph::degree(NodeId i) const {
  if (!contains(i)) throw Error(Errc::UnknownNode, "node " + std::to_string(i));
  return degree_[i];
}

std::vector<WeightedEdge> WeightedFieldGraph::edges() const {
  std::vector<WeightedEdge> out;
  out.reserve(edge_count());
  for (std::size_t slot = 0; slot < adj_.size(); ++slot) {
    if (origin_[slot] < adj_[slot].id) out.push_back({origin_[slot], adj_[slot].id, adj_[slot].weight});
  }
  return out;
}

Eigen::SparseMatrix<double> WeightedFieldGraph::laplacian() const {
  const auto size = static_cast<Eigen::Index>(node_count());
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(adj_.size() + node_count());
  for (std::size_t i = 0; i < node_count(); ++i) trip.emplace_back(i, i, degree_[i]);
  for (std::size_t slot = 0; slot < adj_.size(); ++slot) trip.emplace_back(origin_[slot], adj_[slot].id, -adj_[slot].weight);
  Eigen::SparseMatrix<double> lap(size, size);
  lap.setFromTriplets(trip.begin(), trip.end());
  return lap;
}

Eigen::SparseMatrix<double> WeightedFieldGraph::grounded_laplacian() const {
  const auto size = static_cast<Eigen::Index>(n_);
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(adj_.size() + n_);
  for (std::size_t i = 1; i <= n_; ++i) trip.emplace_back(i - 1, i - 1, degree_[i]);
  for (std::size_t slot = 0; slot < adj_.size(); ++slot) {
    if (origin_[slot] == kField || adj_[slot].id == kField) continue;
    trip.emplace_back(origin_[slot] - 1, adj_[slot].id - 1, -adj_[slot].weight);
  }
  Eigen::SparseMatrix<double> lap(size, size);
  lap.setFromTriplets(trip.begin(), trip.end());
  return lap;
}

WeightedFieldGraph scale_weights(const WeightedFieldGraph& g, double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw Error(Errc::NonPositiveScale, "scale factor " + std::to_string(alpha));
  }
  auto edges = g.edges();
  for (auto& e : edges) e.weight *= alpha;
  return WeightedFieldGraph::build(g.n(), edges);
}

std::vector<std::size_t> bfs_hops(const WeightedFieldGraph& g, NodeId source) {
  constexpr auto kUnseen = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> hops(g.node_count(), kUnseen);
  std::queue<NodeId> frontier;
  hops[source] = 0;
  frontier.push(source);
  while (!frontier.empty()) {
    NodeId i = frontier.front();
    frontier.pop();
    for (const auto& nb : g.neighbors(i)) {
      if (hops[nb.id] == kUnseen) {
        hops[nb.id] = hops[i] + 1;
        frontier.push(nb.id);
      }
    }
  }
  return hops;
}

std::size_t diameter(const WeightedFieldGraph& g) {
  std::size_t best = 0;
  for (NodeId i = 0; i < g.node_count(); ++i) {
    auto hops = bfs_hops(g, i);
    best = std::max(best, *std::max_element(hops.begin(), hops.end()));
  }
  return best;
}

bool is_tree(const WeightedFieldGraph& g) { return g.edge_count() + 1 == g.node_count(); }

}  // namespace hinfluence
