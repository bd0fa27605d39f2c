#pragma once

#include <Eigen/Dense>

#include <optional>

#include "curveflow/curvature.hpp"
#include "curveflow/graph.hpp"
#include "curveflow/operators.hpp"

namespace curveflow {

/// Per-vertex curvature-sharpness certificate. The central identity is
/// 4 Q(x) 1 = 2 K_inf^{d_G(x,.)}(x) p_x; `residual` is its defect vector.
struct SharpnessReport {
  int x = 0;
  double k_inf_dist = 0.0;            // K_inf^{d_G(x,.)}(x)
  Eigen::VectorXd four_q_one;         // (4 Q(x) 1)_i, one-ball polynomial
  Eigen::VectorXd residual;           // 4 Q 1 - 2 k_inf_dist p_x  (Q row sums)
  double residual_norm = 0.0;         // inf-norm of residual
  bool sharp_via_q = false;           // residual_norm <= tolerance
  bool sharp_via_m2 = false;          // M_2(x) positive semidefinite
  Eigen::VectorXd one_ball_residuals; // per-neighbor defects of the one-ball equations
  bool volume_homogeneous = false;
  bool reversible = false;
};

/// (4 Q(x) 1)_i as the homogeneous degree-2 polynomial in the one-ball rates.
Eigen::VectorXd four_q_one(const LocalBlocks& blocks);

/// M_N(x) = Q(x) - (1/N) p_x p_x^T - K_N^{d_G}(x) (1/2) diag(p_x).
Eigen::MatrixXd m_n_matrix(const WeightingScheme& scheme, int x, Dimension n_dim);

/// N-curvature sharpness via positive semidefiniteness of M_N(x)
/// (eigenvalue floor -1e-9).
bool is_n_sharp(const WeightingScheme& scheme, int x, Dimension n_dim);

SharpnessReport sharpness_report(const WeightingScheme& scheme, int x, double tolerance = 1e-9);

/// Stationary row vector pi with pi P = pi and pi 1 = 1, if the linear system
/// has a solution; used by the reversibility test.
std::optional<Eigen::VectorXd> stationary_distribution(const WeightingScheme& scheme);

}  // namespace curveflow
