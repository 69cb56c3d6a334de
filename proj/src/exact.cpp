#include "hinfluence/exact.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>
#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCholesky>

#include "hinfluence/error.hpp"

namespace hinfluence {

NodeId most_influential(const InfluenceProfile& profile) {
  if (profile.values.empty()) throw Error(Errc::EmptyGraph, "empty influence profile");
  std::size_t best = 0;
  for (std::size_t k = 1; k < profile.values.size(); ++k) {
    if (profile.values[k] > profile.values[best]) best = k;
  }
  return static_cast<NodeId>(best + 1);
}

namespace {

void check_leader(const WeightedFieldGraph& g, NodeId leader) {
  if (leader == kField) throw Error(Errc::FieldAsLeader, "the field node cannot be a leader");
  if (!g.contains(leader)) throw Error(Errc::UnknownNode, "leader " + std::to_string(leader));
}

// Unknowns are the nodes R = {1..n} \ {leader}, packed in ascending order.
struct Packing {
  NodeId leader;
  Eigen::Index index(NodeId i) const { return i < leader ? i - 1 : i - 2; }
  NodeId node(Eigen::Index k) const {
    auto i = static_cast<NodeId>(k + 1);
    return i < leader ? i : i + 1;
  }
};

Eigen::VectorXd solve_dense(const WeightedFieldGraph& g, const Packing& pack, Eigen::Index size,
                            const Eigen::VectorXd& rhs) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(size, size);
  for (Eigen::Index r = 0; r < size; ++r) {
    NodeId i = pack.node(r);
    a(r, r) = g.degree(i);
    for (const auto& nb : g.neighbors(i)) {
      if (nb.id == kField || nb.id == pack.leader) continue;
      a(r, pack.index(nb.id)) = -nb.weight;
    }
  }
  Eigen::LLT<Eigen::MatrixXd> llt(a);
  if (llt.info() != Eigen::Success) throw Error(Errc::SolveFailure, "reduced Laplacian is not positive definite");
  return llt.solve(rhs);
}

Eigen::VectorXd solve_iterative(const WeightedFieldGraph& g, const Packing& pack, Eigen::Index size,
                                const Eigen::VectorXd& rhs) {
  std::vector<Eigen::Triplet<double>> trip;
  for (Eigen::Index r = 0; r < size; ++r) {
    NodeId i = pack.node(r);
    trip.emplace_back(r, r, g.degree(i));
    for (const auto& nb : g.neighbors(i)) {
      if (nb.id == kField || nb.id == pack.leader) continue;
      trip.emplace_back(r, pack.index(nb.id), -nb.weight);
    }
  }
  Eigen::SparseMatrix<double> a(size, size);
  a.setFromTriplets(trip.begin(), trip.end());
  Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper,
                           Eigen::DiagonalPreconditioner<double>>
      cg;
  cg.setTolerance(1e-15);
  cg.setMaxIterations(20 * static_cast<Eigen::Index>(size) + 1000);
  cg.compute(a);
  Eigen::VectorXd x = cg.solve(rhs);
  if (cg.info() != Eigen::Success && cg.info() != Eigen::NoConvergence) {
    throw Error(Errc::SolveFailure, "conjugate gradient failed");
  }
  return x;
}

}  // namespace

double dirichlet_residual(const WeightedFieldGraph& g, const DirichletSolution& sol) {
  double worst = 0.0;
  for (NodeId i = 1; i <= g.n(); ++i) {
    if (i == sol.leader) continue;
    double r = g.degree(i) * sol.x[i];
    for (const auto& nb : g.neighbors(i)) r -= nb.weight * sol.x[nb.id];
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

DirichletSolution solve_dirichlet(const WeightedFieldGraph& g, NodeId leader, const ExactOptions& opts) {
  check_leader(g, leader);
  DirichletSolution sol;
  sol.leader = leader;
  sol.x.assign(g.node_count(), 0.0);
  sol.x[leader] = 1.0;

  const auto size = static_cast<Eigen::Index>(g.n() - 1);
  if (size > 0) {
    const Packing pack{leader};
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(size);
    for (const auto& nb : g.neighbors(leader)) {
      if (nb.id != kField) rhs(pack.index(nb.id)) = nb.weight;
    }
    Eigen::VectorXd y = g.n() <= opts.dense_limit ? solve_dense(g, pack, size, rhs)
                                                  : solve_iterative(g, pack, size, rhs);
    for (Eigen::Index k = 0; k < size; ++k) {
      if (!std::isfinite(y(k))) throw Error(Errc::SolveFailure, "non-finite solution entry");
      sol.x[pack.node(k)] = std::clamp(y(k), 0.0, 1.0);
    }
  }

  const double residual = dirichlet_residual(g, sol);
  if (residual >= opts.residual_tolerance * std::max(1.0, g.max_degree())) {
    throw Error(Errc::SolveFailure, "residual " + std::to_string(residual) + " above tolerance");
  }
  for (double v : sol.x) sol.influence += v;
  return sol;
}

InfluenceProfile exact_influence_all(const WeightedFieldGraph& g, const ExactOptions& opts) {
  InfluenceProfile profile;
  profile.kind = ProfileKind::Exact;
  const auto n = static_cast<Eigen::Index>(g.n());
  profile.values.assign(g.n(), 0.0);
  if (n == 0) return profile;

  Eigen::VectorXd column_sums(n);
  Eigen::VectorXd diagonal(n);
  if (g.n() <= opts.dense_limit) {
    Eigen::MatrixXd lap = Eigen::MatrixXd(g.grounded_laplacian());
    Eigen::LLT<Eigen::MatrixXd> llt(lap);
    if (llt.info() != Eigen::Success) throw Error(Errc::SolveFailure, "grounded Laplacian is not positive definite");
    Eigen::MatrixXd green = llt.solve(Eigen::MatrixXd::Identity(n, n));
    column_sums = green.colwise().sum().transpose();
    diagonal = green.diagonal();
  } else {
    Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> llt(g.grounded_laplacian());
    if (llt.info() != Eigen::Success) throw Error(Errc::SolveFailure, "grounded Laplacian is not positive definite");
    // G is symmetric, so the column sums are G * 1.
    column_sums = llt.solve(Eigen::VectorXd::Ones(n));
    Eigen::VectorXd unit = Eigen::VectorXd::Zero(n);
    for (Eigen::Index l = 0; l < n; ++l) {
      unit(l) = 1.0;
      diagonal(l) = llt.solve(unit)(l);
      unit(l) = 0.0;
    }
  }
  for (Eigen::Index l = 0; l < n; ++l) {
    if (!(diagonal(l) > 0.0) || !std::isfinite(column_sums(l))) {
      throw Error(Errc::SolveFailure, "degenerate Green's function at node " + std::to_string(l + 1));
    }
    profile.values[static_cast<std::size_t>(l)] = column_sums(l) / diagonal(l);
  }
  return profile;
}

}  // namespace hinfluence
