#include "curveflow/sharpness.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace curveflow {

Eigen::VectorXd four_q_one(const LocalBlocks& b) {
  const int m = static_cast<int>(b.s1.size());
  Eigen::VectorXd out(m);
  for (int i = 0; i < m; ++i) {
    double off = 0.0;    // sum_{j != i} p_{y_i y_j}
    double cross = 0.0;  // sum_{j != i} p_{x y_j} p_{y_j y_i}
    for (int j = 0; j < m; ++j) {
      if (j == i) continue;
      off += b.s1_rates(i, j);
      cross += b.delta_s1(j) * b.s1_rates(j, i);
    }
    out(i) = b.delta_s1(i) * (b.weighted_degree - b.s1_weighted_degree(i) +
                              4.0 * b.rate_to_x(i) + 2.0 * off) -
             cross;
  }
  return out;
}

Eigen::MatrixXd m_n_matrix(const WeightingScheme& scheme, int x, Dimension n_dim) {
  if (scheme.is_isolated(x)) throw std::invalid_argument("m_n_matrix: isolated vertex");
  const LocalBlocks blocks = local_blocks(scheme, x);
  const QMatrix q = q_matrix(blocks);
  const double k_dist = upper_bound_dist(scheme, x, n_dim);
  Eigen::MatrixXd m = q.entries;
  m -= n_dim.inv() * (blocks.delta_s1 * blocks.delta_s1.transpose());
  m -= (0.5 * k_dist) * Eigen::MatrixXd(blocks.delta_s1.asDiagonal());
  return m;
}

bool is_n_sharp(const WeightingScheme& scheme, int x, Dimension n_dim) {
  const Eigen::MatrixXd m = m_n_matrix(scheme, x, n_dim);
  if (m.rows() == 0) return true;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff() >= -1e-9;
}

std::optional<Eigen::VectorXd> stationary_distribution(const WeightingScheme& scheme) {
  const int n = scheme.n();
  // Stack (P^T - I) with the normalization row 1^T and solve least squares.
  Eigen::MatrixXd a(n + 1, n);
  a.topRows(n) = scheme.rates().transpose() - Eigen::MatrixXd::Identity(n, n);
  a.bottomRows(1).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + 1);
  rhs(n) = 1.0;
  const Eigen::VectorXd pi = a.colPivHouseholderQr().solve(rhs);
  if ((a * pi - rhs).lpNorm<Eigen::Infinity>() > 1e-10) return std::nullopt;
  return pi;
}

namespace {

bool reversibility_test(const WeightingScheme& scheme) {
  const auto pi = stationary_distribution(scheme);
  if (!pi) return false;
  const int n = scheme.n();
  for (int v = 0; v < n; ++v) {
    if ((*pi)(v) <= 0.0) return false;
  }
  double defect = 0.0;
  for (int v = 0; v < n; ++v) {
    for (int w = v + 1; w < n; ++w) {
      defect = std::max(defect,
                        std::abs((*pi)(v) * scheme.rate(v, w) - (*pi)(w) * scheme.rate(w, v)));
    }
  }
  return defect < 1e-10;
}

bool volume_homogeneity_test(const LocalBlocks& b) {
  const int m = static_cast<int>(b.s1.size());
  if (m == 0) return true;
  // p_y^- = p_{yx} and p_y^+ = sum_{z in S_2(x)} p_{yz} must not depend on y.
  auto outward = [&](int i) {
    double off = 0.0;
    for (int j = 0; j < m; ++j) {
      if (j != i) off += b.s1_rates(i, j);
    }
    return b.s1_weighted_degree(i) - b.rate_to_x(i) - off;
  };
  const double back0 = b.rate_to_x(0);
  const double out0 = outward(0);
  for (int i = 1; i < m; ++i) {
    if (std::abs(b.rate_to_x(i) - back0) > 1e-12) return false;
    if (std::abs(outward(i) - out0) > 1e-12) return false;
  }
  return true;
}

}  // namespace

SharpnessReport sharpness_report(const WeightingScheme& scheme, int x, double tolerance) {
  if (scheme.is_isolated(x)) throw std::invalid_argument("sharpness_report: isolated vertex");
  SharpnessReport report;
  report.x = x;

  const LocalBlocks blocks = local_blocks(scheme, x);
  const QMatrix q = q_matrix(blocks);
  const int m = static_cast<int>(blocks.s1.size());
  const double dx = blocks.weighted_degree;

  report.k_inf_dist = upper_bound_dist(scheme, x, Dimension::infinite());
  report.four_q_one = four_q_one(blocks);
  report.residual =
      4.0 * (q.entries * Eigen::VectorXd::Ones(m)) - 2.0 * report.k_inf_dist * blocks.delta_s1;
  report.residual_norm = m == 0 ? 0.0 : report.residual.lpNorm<Eigen::Infinity>();
  report.sharp_via_q = report.residual_norm <= tolerance;
  report.sharp_via_m2 = is_n_sharp(scheme, x, Dimension(2.0));

  // Per-neighbor defects of the one-ball equations: curvature sharpness
  // depends only on the rates inside B_1(x).
  report.one_ball_residuals.resize(m);
  double back = 0.0;   // sum_j p_{x y_j} p_{y_j x}
  double inner = 0.0;  // sum_{j,k} p_{x y_j} p_{y_j y_k}, k = j included (laziness)
  for (int j = 0; j < m; ++j) {
    back += blocks.delta_s1(j) * blocks.rate_to_x(j);
    for (int k = 0; k < m; ++k) inner += blocks.delta_s1(j) * blocks.s1_rates(j, k);
  }
  for (int i = 0; i < m; ++i) {
    double off = 0.0, cross = 0.0;
    for (int j = 0; j < m; ++j) {
      if (j == i) continue;
      off += blocks.s1_rates(i, j);
      cross += blocks.delta_s1(j) * blocks.s1_rates(j, i);
    }
    report.one_ball_residuals(i) =
        blocks.delta_s1(i) * (4.0 * blocks.rate_to_x(i) + 2.0 * off - 4.0 / dx * back -
                              inner / dx + blocks.s1_rates(i, i)) -
        cross;
  }

  report.volume_homogeneous = volume_homogeneity_test(blocks);
  report.reversible = reversibility_test(scheme);
  return report;
}

}  // namespace curveflow
