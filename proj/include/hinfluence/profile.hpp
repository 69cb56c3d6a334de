#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "hinfluence/graph.hpp"

namespace hinfluence {

enum class ProfileKind { Exact, MpaEstimate };

/// Influence value per leader 1..n.
struct InfluenceProfile {
  ProfileKind kind = ProfileKind::Exact;
  std::optional<std::size_t> round;  // set for MPA estimates
  std::vector<double> values;        // values[l - 1] belongs to leader l

  std::size_t n() const noexcept { return values.size(); }
  double operator[](NodeId leader) const { return values[leader - 1]; }
  double& operator[](NodeId leader) { return values[leader - 1]; }
};

/// Node with the largest value; lowest id wins ties.
NodeId most_influential(const InfluenceProfile& profile);

}  // namespace hinfluence
