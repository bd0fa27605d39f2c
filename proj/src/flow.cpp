#include "curveflow/flow.hpp"

#include <cmath>

#include "curveflow/parallel.hpp"

namespace curveflow {

Eigen::MatrixXd flow_rhs(const MixedGraph& graph, const Eigen::MatrixXd& rates) {
  const int n = graph.n();
  Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(n, n);
  parallel_for(n, [&](int x) {
    const auto& nbrs = graph.out_neighbors(x);
    const int m = static_cast<int>(nbrs.size());
    if (m == 0) return;
    double dx = 0.0;
    for (int y : nbrs) dx += rates(x, y);
    if (dx <= 0.0) return;  // rate-isolated vertex: K^d divides by D_x, row frozen

    double back = 0.0;   // sum_j p_{x y_j} p_{y_j x}
    double inner = 0.0;  // sum_{j,k} p_{x y_j} p_{y_j y_k} over S_1, k = j included
    for (int yj : nbrs) {
      const double pj = rates(x, yj);
      back += pj * rates(yj, x);
      for (int yk : nbrs) inner += pj * rates(yj, yk);
    }
    const double shared = (4.0 * back + inner) / dx;
    for (int i = 0; i < m; ++i) {
      const int yi = nbrs[static_cast<size_t>(i)];
      double off = 0.0, cross = 0.0;
      for (int j = 0; j < m; ++j) {
        const int yj = nbrs[static_cast<size_t>(j)];
        if (yj == yi) continue;
        off += rates(yi, yj);
        cross += rates(x, yj) * rates(yj, yi);
      }
      rhs(x, yi) = rates(x, yi) * (-4.0 * rates(yi, x) - 2.0 * off + shared - rates(yi, yi)) +
                   cross;
    }
  });
  return rhs;
}

Eigen::MatrixXd flow_rhs(const WeightingScheme& scheme) {
  return flow_rhs(scheme.graph(), scheme.rates());
}

namespace {

FlowDiagnostics diagnostics_of(const MixedGraph& graph, const Eigen::MatrixXd& rates,
                               const Eigen::VectorXd& initial_laziness, double rhs_norm) {
  FlowDiagnostics d;
  d.rhs_inf_norm = rhs_norm;
  d.min_rate = std::numeric_limits<double>::infinity();
  bool any_edge = false;
  for (int x = 0; x < graph.n(); ++x) {
    d.row_sum_defect = std::max(d.row_sum_defect, std::abs(rates.row(x).sum() - 1.0));
    d.max_laziness_drift =
        std::max(d.max_laziness_drift, std::abs(rates(x, x) - initial_laziness(x)));
    for (int y : graph.out_neighbors(x)) {
      d.min_rate = std::min(d.min_rate, rates(x, y));
      any_edge = true;
    }
  }
  if (!any_edge) d.min_rate = 0.0;
  return d;
}

}  // namespace

FlowTrajectory integrate(const WeightingScheme& scheme, const FlowConfig& config) {
  if (!(config.dt > 0.0) || config.t_max < 0.0 || !(config.convergence_tol > 0.0) ||
      !(config.clamp_tol > 0.0) || config.record_every < 1) {
    throw std::invalid_argument("integrate: invalid flow configuration");
  }
  const auto graph = scheme.graph_ptr();
  const int n = graph->n();
  Eigen::MatrixXd p = scheme.rates();
  const Eigen::VectorXd laziness = p.diagonal();
  Eigen::VectorXd target_degree(n);
  for (int x = 0; x < n; ++x) target_degree(x) = scheme.weighted_degree(x);

  FlowTrajectory traj;
  bool previous_sample_quiet = false;

  auto record = [&](double t) {
    const Eigen::MatrixXd rhs = flow_rhs(*graph, p);
    const double norm = rhs.lpNorm<Eigen::Infinity>();
    traj.times.push_back(t);
    traj.schemes.push_back(WeightingScheme::unchecked(graph, p));
    traj.diagnostics.push_back(diagnostics_of(*graph, p, laziness, norm));
    if (norm < config.convergence_tol) {
      if (previous_sample_quiet) {
        traj.converged = true;
        traj.convergence_time = t;
      }
      previous_sample_quiet = true;
    } else {
      previous_sample_quiet = false;
    }
  };

  auto clamp_and_rescale = [&](Eigen::MatrixXd& rates) {
    for (int x = 0; x < n; ++x) {
      bool dirty = false;
      for (int y : graph->out_neighbors(x)) {
        const double v = rates(x, y);
        if (!std::isfinite(v)) throw FlowBlowupError("non-finite rate during integration");
        if (v < 0.0) {
          if (v < -config.clamp_tol) {
            throw FlowBlowupError("rate below -clamp_tol at " + graph->name(x) + " -> " +
                                  graph->name(y) + "; dt too large");
          }
          rates(x, y) = 0.0;
          dirty = true;
        }
      }
      if (dirty && target_degree(x) > 0.0) {
        double current = 0.0;
        for (int y : graph->out_neighbors(x)) current += rates(x, y);
        if (current <= 0.0) throw FlowBlowupError("row support collapsed at " + graph->name(x));
        const double scale = target_degree(x) / current;
        for (int y : graph->out_neighbors(x)) rates(x, y) *= scale;
      }
    }
  };

  record(0.0);
  const long steps = static_cast<long>(std::ceil(config.t_max / config.dt - 1e-12));
  for (long step = 1; step <= steps && !traj.converged; ++step) {
    const Eigen::MatrixXd k1 = flow_rhs(*graph, p);
    const Eigen::MatrixXd k2 = flow_rhs(*graph, p + (0.5 * config.dt) * k1);
    const Eigen::MatrixXd k3 = flow_rhs(*graph, p + (0.5 * config.dt) * k2);
    const Eigen::MatrixXd k4 = flow_rhs(*graph, p + config.dt * k3);
    p += (config.dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    clamp_and_rescale(p);
    if (step % config.record_every == 0 || step == steps) {
      record(static_cast<double>(step) * config.dt);
    }
  }
  return traj;
}

std::pair<std::vector<SharpnessReport>, bool> certify_limit(const FlowTrajectory& trajectory) {
  if (!trajectory.converged) {
    throw std::invalid_argument("certify_limit: trajectory did not converge");
  }
  const WeightingScheme& final = trajectory.final_scheme();
  std::vector<SharpnessReport> reports;
  bool all_sharp = true;
  for (int x = 0; x < final.n(); ++x) {
    if (final.is_isolated(x)) continue;
    reports.push_back(sharpness_report(final, x));
    all_sharp = all_sharp && reports.back().residual_norm < 1e-6;
  }
  return {std::move(reports), all_sharp};
}

}  // namespace curveflow
