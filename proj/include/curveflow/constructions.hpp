#pragma once

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

#include "curveflow/graph.hpp"

namespace curveflow {

/// Raised when a requested construction has no valid output (e.g. the
/// triangle-free system has no solution in (0,1]^V).
struct InfeasibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Solution of A_G c = 1 parameterizing the non-degenerate curvature sharp
/// schemes without laziness on a triangle-free graph.
struct TriangleFreeSolution {
  Eigen::VectorXd c;       // entries in (0,1], indexed by vertex
  bool unique = false;     // adjacency matrix invertible
  int kernel_dimension = 0;
};

struct InfeasibilityCertificate {
  std::string constraint;  // human-readable violated constraint
};

struct TriangleFreeResult {
  std::optional<TriangleFreeSolution> solution;
  std::optional<InfeasibilityCertificate> infeasible;
};

/// Non-lazy simple random walk p_xy = 1/d_x on outgoing edges.
WeightingScheme simple_random_walk(const MixedGraph& graph);

/// Curvature sharp scheme built around a clique: SRW inside the clique,
/// uniform rates from its distance-1 neighbors, and a single unit rate along
/// a distance-decreasing edge from everything further out (ties broken by
/// the lexicographically first eligible neighbor).
WeightingScheme clique_scheme(const MixedGraph& graph, const std::vector<int>& clique);

/// Solves A_G c = 1 over a connected triangle-free unmixed graph, searching
/// the solution set for a point of (0,1]^V (open bound handled with 1e-10
/// slack). Infeasibility is reported with a violated constraint.
TriangleFreeResult triangle_free_solve(const MixedGraph& graph);

/// Scheme induced by a triangle-free solution: p_xy = c_y on every edge.
WeightingScheme scheme_from_triangle_free(const MixedGraph& graph, const Eigen::VectorXd& c);

/// The four curvature sharp non-lazy weighting schemes on K_3, as vectors
/// (p01, p02, p10, p12, p20, p21); exactly the first is non-degenerate.
std::vector<WeightingScheme> k3_catalog();

}  // namespace curveflow
