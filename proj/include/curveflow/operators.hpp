#pragma once

#include <Eigen/Dense>

#include <map>

#include "curveflow/graph.hpp"

namespace curveflow {

/// Local Bakry-Emery data of one vertex: combinatorial spheres (with respect
/// to d_G), the vector Delta(x), and the blocks of the matrices Gamma(x) and
/// Gamma_2(x) over S_1 and S_2. Also caches the one-ball rate table used by
/// the sharpness and flow polynomials.
struct LocalBlocks {
  int x = 0;
  std::vector<int> s1;   // S_1^G(x), index order
  std::vector<int> s2;   // S_2^G(x), index order

  Eigen::VectorXd delta_s1;     // p_x = (p_{x y_i})
  Eigen::MatrixXd gamma_s1;     // (1/2) diag(p_x)
  Eigen::MatrixXd gamma2_s1;    // m x m, symmetric
  Eigen::MatrixXd gamma2_s1s2;  // m x n
  Eigen::MatrixXd gamma2_s2;    // n x n diagonal, (1/4) diag(p2)

  // One-ball rate cache.
  Eigen::VectorXd rate_to_x;           // p_{y_i x}
  Eigen::MatrixXd s1_rates;            // p_{y_i y_j}; diagonal holds laziness of y_i
  Eigen::VectorXd s1_weighted_degree;  // D_{y_i}
  Eigen::VectorXd p2_s2;               // p^(2)_{x z_j}
  double weighted_degree = 0.0;        // D_x
  double laziness = 0.0;               // p_xx
  int n_vertices = 0;
};

/// Q(x) with the pseudoinverse weights q_z of the S_2 block.
struct QMatrix {
  int x = 0;
  Eigen::MatrixXd entries;    // m x m, symmetric
  Eigen::VectorXd q_weights;  // q_z = 4 / p^(2)_xz when positive, else 0
};

LocalBlocks local_blocks(const WeightingScheme& scheme, int x);

/// Schur complement of Gamma_2(x) eliminating the 2-sphere, with the exact
/// diagonal pseudoinverse rule (p^(2) threshold 1e-14).
QMatrix q_matrix(const LocalBlocks& blocks);

/// Gamma_2-minimizing extension of values f0 on B_1^G(x) (f0(x) = 0) to all
/// of V: f0 on the one-ball, the optimal quotient on S_2^G(x) cap S_2^P(x),
/// zero elsewhere.
Eigen::VectorXd optimal_extension(const LocalBlocks& blocks, const std::map<int, double>& f0);

/// Pointwise random-walk operators, evaluated from their definitions.
double laplacian(const WeightingScheme& scheme, const Eigen::VectorXd& f, int x);
double gamma(const WeightingScheme& scheme, const Eigen::VectorXd& f, const Eigen::VectorXd& g,
             int x);
double gamma2(const WeightingScheme& scheme, const Eigen::VectorXd& f, const Eigen::VectorXd& g,
              int x);

inline double gamma(const WeightingScheme& scheme, const Eigen::VectorXd& f, int x) {
  return gamma(scheme, f, f, x);
}
inline double gamma2(const WeightingScheme& scheme, const Eigen::VectorXd& f, int x) {
  return gamma2(scheme, f, f, x);
}

}  // namespace curveflow
