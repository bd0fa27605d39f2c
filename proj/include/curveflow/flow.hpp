#pragma once

#include <Eigen/Dense>

#include <optional>
#include <utility>
#include <vector>

#include "curveflow/graph.hpp"
#include "curveflow/sharpness.hpp"

namespace curveflow {

/// Raised when the integrator produces a rate below -clamp_tol or a
/// non-finite value; signals a step size too large for the instance.
struct FlowBlowupError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FlowConfig {
  double dt = 0.01;
  double t_max = 100.0;
  double convergence_tol = 1e-8;  // inf-norm threshold on the RHS
  int record_every = 10;          // sampling stride in steps
  double clamp_tol = 1e-9;        // negativity guard
};

struct FlowDiagnostics {
  double rhs_inf_norm = 0.0;
  double row_sum_defect = 0.0;     // max_x |sum_y p_xy - 1|
  double min_rate = 0.0;           // min over off-diagonal support
  double max_laziness_drift = 0.0; // vs the initial diagonal (held at 0)
};

struct FlowTrajectory {
  std::vector<double> times;
  std::vector<WeightingScheme> schemes;
  std::vector<FlowDiagnostics> diagnostics;
  bool converged = false;
  std::optional<double> convergence_time;

  const WeightingScheme& final_scheme() const { return schemes.back(); }
};

/// Right-hand side of the normalized curvature flow: entry (x, y_i) is
/// F_{x y_i} = -4 (Q_x 1)_i + 2 K_inf^{d_G(x,.)}(x) p_{x y_i}, written out as
/// a polynomial in the one-ball rates. Rows of isolated vertices are zero;
/// every row sums to zero.
Eigen::MatrixXd flow_rhs(const WeightingScheme& scheme);
Eigen::MatrixXd flow_rhs(const MixedGraph& graph, const Eigen::MatrixXd& rates);

/// Classical fixed-step RK4 integration with frozen laziness. Entries in
/// [-clamp_tol, 0) are clamped to zero and the row rescaled on its
/// off-diagonal support to restore D_x exactly. Terminates at t_max or once
/// the RHS inf-norm stays below convergence_tol at two consecutive samples.
FlowTrajectory integrate(const WeightingScheme& scheme, const FlowConfig& config);

/// Sharpness certificates of the limit of a converged trajectory; the flag
/// is true iff every non-isolated vertex has residual norm below 1e-6.
std::pair<std::vector<SharpnessReport>, bool> certify_limit(const FlowTrajectory& trajectory);

}  // namespace curveflow
