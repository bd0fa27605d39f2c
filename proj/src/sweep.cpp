#include "curveflow/sweep.hpp"

#include <random>

#include "curveflow/curvature.hpp"
#include "curveflow/parallel.hpp"

namespace curveflow {

WeightingScheme square_scheme(double p) {
  MixedGraph square({"v0", "v1", "v2", "v3"}, {},
                    {{"v0", "v1"}, {"v3", "v2"}, {"v0", "v3"}, {"v1", "v2"}});
  Eigen::MatrixXd rates = Eigen::MatrixXd::Zero(4, 4);
  rates(0, 1) = p;
  rates(1, 0) = p;
  rates(2, 3) = p;
  rates(3, 2) = p;
  rates(0, 3) = 1.0 - p;
  rates(3, 0) = 1.0 - p;
  rates(1, 2) = 1.0 - p;
  rates(2, 1) = 1.0 - p;
  return WeightingScheme::validated(square, std::move(rates));
}

WeightingScheme path3_scheme(double p) {
  MixedGraph path({"v0", "v1", "v2", "v3"}, {}, {{"v0", "v1"}, {"v1", "v2"}, {"v2", "v3"}});
  Eigen::MatrixXd rates = Eigen::MatrixXd::Zero(4, 4);
  rates(0, 1) = 1.0;
  rates(1, 0) = 1.0 - p;
  rates(1, 2) = p;
  rates(2, 1) = p;
  rates(2, 3) = 1.0 - p;
  rates(3, 2) = 1.0;
  return WeightingScheme::validated(path, std::move(rates));
}

namespace {

std::vector<SweepRow> sweep_family(const std::vector<double>& grid,
                                   WeightingScheme (*family)(double), int probe) {
  std::vector<SweepRow> rows(grid.size());
  parallel_for(static_cast<int>(grid.size()), [&](int i) {
    const double p = grid[static_cast<size_t>(i)];
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("sweep: grid value outside [0,1]");
    const WeightingScheme scheme = family(p);
    rows[static_cast<size_t>(i)] = {
        p, curvature(scheme, probe, Dimension::infinite()).value,
        upper_bound_dist(scheme, probe, Dimension::infinite())};
  });
  return rows;
}

}  // namespace

std::vector<SweepRow> sweep_square(const std::vector<double>& grid) {
  return sweep_family(grid, &square_scheme, 0);
}

std::vector<SweepRow> sweep_path3(const std::vector<double>& grid) {
  return sweep_family(grid, &path3_scheme, 1);
}

std::vector<FlowBatchRow> flow_batch(
    const std::vector<std::pair<std::string, WeightingScheme>>& graphs, int seeds,
    const FlowConfig& config) {
  const int total = static_cast<int>(graphs.size()) * seeds;
  std::vector<FlowBatchRow> rows(static_cast<size_t>(total));
  parallel_for(total, [&](int slot) {
    const int gi = slot / seeds;
    const int seed = slot % seeds;
    const auto& [name, base] = graphs[static_cast<size_t>(gi)];

    // Random non-degenerate start on the same topology, laziness preserved.
    std::seed_seq seq{0x9e3779b9u, static_cast<unsigned>(gi), static_cast<unsigned>(seed)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> unit(0.1, 1.0);
    Eigen::MatrixXd rates = Eigen::MatrixXd::Zero(base.n(), base.n());
    for (int x = 0; x < base.n(); ++x) {
      rates(x, x) = base.laziness(x);
      const auto& nbrs = base.graph().out_neighbors(x);
      if (nbrs.empty()) continue;
      double sum = 0.0;
      for (int y : nbrs) {
        rates(x, y) = unit(rng);
        sum += rates(x, y);
      }
      if (sum > 0.0) {
        for (int y : nbrs) rates(x, y) *= (1.0 - base.laziness(x)) / sum;
      }
    }
    const WeightingScheme start =
        WeightingScheme::validated(base.graph(), std::move(rates), 1e-9);

    FlowBatchRow row;
    row.graph = name;
    row.seed = seed;
    const FlowTrajectory traj = integrate(start, config);
    row.converged = traj.converged;
    row.t_converge = traj.convergence_time.value_or(config.t_max);
    row.final_min_rate = traj.diagnostics.back().min_rate;
    row.limit_degenerate = row.final_min_rate < 1e-6;
    if (traj.converged) {
      row.limit_sharp = certify_limit(traj).second;
    }
    rows[static_cast<size_t>(slot)] = std::move(row);
  });
  return rows;
}

}  // namespace curveflow
