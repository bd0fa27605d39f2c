#pragma once

#include <string>
#include <vector>

#include "curveflow/flow.hpp"
#include "curveflow/graph.hpp"

namespace curveflow {

struct SweepRow {
  double p = 0.0;
  double k_inf = 0.0;       // K_inf at the probe vertex
  double k_inf_dist = 0.0;  // K_inf^{d_G} at the probe vertex
};

/// Square K_2 x K_2 with rates p along horizontal edges and 1-p along
/// vertical ones; probe vertex v0.
WeightingScheme square_scheme(double p);
/// Path v0 v1 v2 v3 with rates p along the inner edge {v1, v2} in both
/// directions and no laziness; probe vertex v1.
WeightingScheme path3_scheme(double p);

std::vector<SweepRow> sweep_square(const std::vector<double>& grid);
std::vector<SweepRow> sweep_path3(const std::vector<double>& grid);

struct FlowBatchRow {
  std::string graph;
  int seed = 0;
  bool converged = false;
  double t_converge = 0.0;   // t_max when not converged
  double final_min_rate = 0.0;
  bool limit_sharp = false;
  bool limit_degenerate = false;  // min edge rate of the limit below 1e-6
};

/// Integrates the flow from `seeds` random non-degenerate starts on each
/// topology (laziness kept from the input scheme). Entries run in parallel;
/// rows come back in input order.
std::vector<FlowBatchRow> flow_batch(
    const std::vector<std::pair<std::string, WeightingScheme>>& graphs, int seeds,
    const FlowConfig& config);

}  // namespace curveflow
