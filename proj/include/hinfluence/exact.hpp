#pragma once

#include <cstddef>
#include <vector>

#include "hinfluence/graph.hpp"
#include "hinfluence/profile.hpp"

namespace hinfluence {

/// Harmonic extension for a single leader: x_field = 0, x_leader = 1 and the
/// Laplacian vanishes on every other node.
struct DirichletSolution {
  NodeId leader = 0;
  std::vector<double> x;  // indexed by NodeId, size n + 1
  double influence = 0.0; // sum of x
};

struct ExactOptions {
  // Above this many nodes the per-leader solve switches from a dense
  // Cholesky factorisation to Jacobi-preconditioned conjugate gradient.
  std::size_t dense_limit = 2000;
  double residual_tolerance = 1e-10;  // scaled by the maximum degree
};

/// Throws FieldAsLeader, UnknownNode or SolveFailure.
DirichletSolution solve_dirichlet(const WeightedFieldGraph& g, NodeId leader, const ExactOptions& opts = {});

/// Influence of every leader from one factorisation of the grounded
/// Laplacian G = Lg^-1:  H(l) = (1^T G)_l / G_ll.
InfluenceProfile exact_influence_all(const WeightedFieldGraph& g, const ExactOptions& opts = {});

/// max_i |(L x)_i| over nodes other than the field and the leader.
double dirichlet_residual(const WeightedFieldGraph& g, const DirichletSolution& sol);

}  // namespace hinfluence
