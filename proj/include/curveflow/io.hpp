#pragma once

#include <nlohmann/json_fwd.hpp>

#include <iosfwd>
#include <string>
#include <vector>

#include "curveflow/curvature.hpp"
#include "curveflow/flow.hpp"
#include "curveflow/graph.hpp"
#include "curveflow/sharpness.hpp"
#include "curveflow/sweep.hpp"

namespace curveflow {

struct LoadResult {
  WeightingScheme scheme;
  DegeneracyReport degeneracy;
};

/// Parses and validates a graph document:
/// { "vertices": [...], "two_sided_edges": [[a,b],...],
///   "one_sided_edges": [[a,b],...], "rates": [{"from","to","p"},...],
///   "laziness": {"v": 0.0, ...} }
/// Unlisted rates default to 0; laziness is optional.
LoadResult load_and_validate(const nlohmann::json& document);
LoadResult load_and_validate_file(const std::string& path);

nlohmann::json scheme_to_document(const WeightingScheme& scheme);
void write_scheme_file(const WeightingScheme& scheme, const std::string& path);

/// Trajectory CSV: one row per snapshot,
/// t, rhs_inf_norm, row_sum_defect, min_rate, then rate columns in fixed
/// lexicographic vertex-pair order.
void write_trajectory(const FlowTrajectory& trajectory, const std::string& path);
std::vector<std::pair<int, int>> trajectory_rate_columns(const MixedGraph& graph);

void write_sweep_csv(const std::vector<SweepRow>& rows, const std::string& path);
void write_flow_batch_csv(const std::vector<FlowBatchRow>& rows, const std::string& path);

/// Fixed-width per-vertex table: vertex, K_N, K_N^d, residual norm, sharp?,
/// degenerate? Isolated vertices show K = 0 and "isolated".
std::string report_render(const WeightingScheme& scheme, Dimension n_dim, double tolerance = 1e-9);

/// Value rounded to 12 significant digits (stable textual reports).
double round_sig(double value, int digits = 12);

}  // namespace curveflow
