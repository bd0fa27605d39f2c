#pragma once

#include <random>
#include <vector>

#include "curveflow/constructions.hpp"
#include "curveflow/curvature.hpp"
#include "curveflow/graph.hpp"
#include "curveflow/operators.hpp"
#include "curveflow/sharpness.hpp"

namespace curveflow::testing {

// ---- independent oracles -------------------------------------------------

/// Gamma_2(f)(x) through the pointwise rearrangement
/// (-1 + p_xx/2) Gamma(f) + (1/2)(Delta f)^2
/// + (1/4) sum_{y != x} p_xy sum_z p_yz (f(z) - 2 f(y) + f(x))^2.
double gamma2_sum_formula(const WeightingScheme& scheme, const Eigen::VectorXd& f, int x);

/// Q(x) assembled from the explicit per-entry formulas (the closed forms of
/// the Schur complement with diagonal pseudoinverse weights).
Eigen::MatrixXd q_closed_form(const WeightingScheme& scheme, const LocalBlocks& blocks);

/// Curvature by bisecting the largest K with
/// Q(x) - (1/N) p_x p_x^T - (K/2) diag(p_x) psd, bracket [-4, 2], 60 steps.
/// Valid at vertices that are non-degenerate in (G, P).
double curvature_by_bisection(const WeightingScheme& scheme, int x, Dimension n_dim);

/// min Gamma_2(f)(x) over all f with f(x) = 0 and f = v on S_1(x), obtained
/// by derivative-free per-coordinate search over the 2-sphere values.
double min_gamma2_brute(const WeightingScheme& scheme, const LocalBlocks& blocks,
                        const Eigen::VectorXd& v);

/// Distance vector of an arbitrary topology as a test function (unreachable
/// vertices capped at 3; values beyond B_2 do not enter the local forms).
Eigen::VectorXd distance_function(const MixedGraph& graph, int x);

// ---- graph and scheme generators ----------------------------------------

MixedGraph complete_graph(int n);
MixedGraph cycle_graph(int n);
MixedGraph star_graph(int leaves);
MixedGraph hypercube(int dim);
MixedGraph petersen_graph();
/// Rooted tree where the root has `degree` children and every other internal
/// vertex has degree `degree` as well.
MixedGraph regular_tree(int degree, int depth);

MixedGraph random_connected_graph(std::mt19937_64& rng, int max_vertices,
                                  double extra_edge_prob = 0.3, double one_sided_prob = 0.15);

/// Random Markovian scheme: positive rates on edges (zeroed with probability
/// `zero_prob`), occasional laziness; rows that lose all support become lazy.
WeightingScheme random_scheme(std::mt19937_64& rng, const MixedGraph& graph,
                              double zero_prob = 0.0, double laziness_prob = 0.2);

/// Fixed corpus of random schemes used by the equivalence/bounds batteries.
std::vector<WeightingScheme> battery_corpus(int count, int max_vertices, unsigned seed);

}  // namespace curveflow::testing
