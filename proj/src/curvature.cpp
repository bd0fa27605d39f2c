#include "curveflow/curvature.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace curveflow {

CurvatureResult curvature(const WeightingScheme& scheme, int x, Dimension n_dim) {
  CurvatureResult result;
  result.x = x;
  result.dimension = n_dim;
  if (scheme.is_isolated(x)) {
    result.value = 0.0;
    result.route = CurvatureResult::Route::IsolatedVertexConvention;
    return result;
  }

  // Work on (G_P, P), where x is non-degenerate and sqrt(p_xy) is safe.
  const WeightingScheme induced = scheme.induced();
  const LocalBlocks blocks = local_blocks(induced, x);
  const QMatrix q = q_matrix(blocks);
  const int m = static_cast<int>(blocks.s1.size());

  Eigen::VectorXd v0(m);
  for (int i = 0; i < m; ++i) v0(i) = std::sqrt(blocks.delta_s1(i));
  const Eigen::VectorXd inv_v0 = v0.cwiseInverse();

  Eigen::MatrixXd a =
      2.0 * (inv_v0.asDiagonal() * q.entries * inv_v0.asDiagonal()).eval();
  a -= (2.0 * n_dim.inv()) * (v0 * v0.transpose());

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
  result.value = solver.eigenvalues().minCoeff();
  result.curvature_matrix = std::move(a);
  result.route = CurvatureResult::Route::EigenOnInduced;
  return result;
}

double upper_bound_f(const WeightingScheme& scheme, int x, const Eigen::VectorXd& f,
                     Dimension n_dim) {
  const double gf = gamma(scheme, f, x);
  if (gf == 0.0) {
    throw std::invalid_argument("upper_bound_f: Gamma(f)(x) = 0, not an admissible test function");
  }
  const double g2 = gamma2(scheme, f, x);
  const double lf = laplacian(scheme, f, x);
  return (g2 - n_dim.inv() * lf * lf) / gf;
}

double upper_bound_dist(const WeightingScheme& scheme, int x, Dimension n_dim) {
  const double dx = scheme.weighted_degree(x);
  if (dx <= 0.0) throw std::invalid_argument("upper_bound_dist: isolated vertex");
  const auto& nbrs = scheme.graph().out_neighbors(x);
  double back = 0.0;   // sum_y p_xy p_yx
  double inner = 0.0;  // sum_{y,y' in S_1} p_xy p_yy' (y' = y contributes laziness)
  for (int y : nbrs) {
    const double pxy = scheme.rate(x, y);
    back += pxy * scheme.rate(y, x);
    for (int y2 : nbrs) inner += pxy * scheme.rate(y, y2);
  }
  return (4.0 * back + inner) / (2.0 * dx) - 0.5 * scheme.laziness(x) -
         2.0 * dx * n_dim.inv();
}

std::pair<double, double> theoretical_bounds(const WeightingScheme& scheme, int x,
                                             Dimension n_dim) {
  if (!n_dim.is_infinite() && n_dim.value() < 2.0) {
    throw std::invalid_argument("theoretical_bounds: lower bound requires N >= 2");
  }
  const double dx = scheme.weighted_degree(x);
  if (dx <= 0.0) throw std::invalid_argument("theoretical_bounds: isolated vertex");

  // min over y in S_1^P(x) of 2 p_yx + (1/2) sum_{z in S_1^P(x) cap S_1^P(y)} p_yz ^ p_zy.
  double min_term = std::numeric_limits<double>::infinity();
  const auto& nbrs = scheme.graph().out_neighbors(x);
  for (int y : nbrs) {
    if (scheme.rate(x, y) <= 0.0) continue;
    double common = 0.0;
    for (int z : nbrs) {
      if (z == y || scheme.rate(x, z) <= 0.0) continue;
      common += std::min(scheme.rate(y, z), scheme.rate(z, y));
    }
    min_term = std::min(min_term, 2.0 * scheme.rate(y, x) + 0.5 * common);
  }
  const double lower = -1.0 + 0.5 * scheme.laziness(x) + min_term;
  const double upper = 2.0 - 2.0 * dx * n_dim.inv();
  return {lower, upper};
}

}  // namespace curveflow
