#pragma once

#include <Eigen/Dense>

#include <limits>
#include <optional>
#include <utility>

#include "curveflow/graph.hpp"
#include "curveflow/operators.hpp"

namespace curveflow {

/// Dimension parameter N in (0, inf].
class Dimension {
 public:
  explicit Dimension(double value) : value_(value) {
    if (!(value > 0.0)) throw std::invalid_argument("dimension must be in (0, inf]");
  }
  static Dimension infinite() { return Dimension(std::numeric_limits<double>::infinity()); }
  double value() const { return value_; }
  bool is_infinite() const { return std::isinf(value_); }
  /// 1/N, exactly 0 at N = inf.
  double inv() const { return is_infinite() ? 0.0 : 1.0 / value_; }

 private:
  double value_;
};

struct CurvatureResult {
  enum class Route { EigenOnInduced, IsolatedVertexConvention };

  int x = 0;
  Dimension dimension = Dimension::infinite();
  double value = 0.0;
  /// Curvature matrix A_N(x) on the induced subgraph; absent for isolated x.
  std::optional<Eigen::MatrixXd> curvature_matrix;
  Route route = Route::EigenOnInduced;
};

/// Bakry-Emery curvature K_N(x). Isolated vertices (D_x = 0) get 0 by
/// convention; otherwise the minimal eigenvalue of A_N(x) built on (G_P, P).
CurvatureResult curvature(const WeightingScheme& scheme, int x, Dimension n_dim);

/// Upper bound K_N^f(x) for a test function with Gamma(f)(x) != 0.
double upper_bound_f(const WeightingScheme& scheme, int x, const Eigen::VectorXd& f,
                     Dimension n_dim);

/// Distance-function bound K_N^{d_G(x,.)}(x), evaluated from the one-ball
/// rates (the Markovian rearrangement of the two-ball form).
double upper_bound_dist(const WeightingScheme& scheme, int x, Dimension n_dim);

/// (lower, upper) sandwich around K_N(x) for N >= 2:
/// lower from the Gamma_2 inequality, upper = 2 - 2 D_x / N.
std::pair<double, double> theoretical_bounds(const WeightingScheme& scheme, int x,
                                             Dimension n_dim);

}  // namespace curveflow
