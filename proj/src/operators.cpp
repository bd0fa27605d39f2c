#include "curveflow/operators.hpp"

#include <cmath>

namespace curveflow {

namespace {
constexpr double kTwoStepPositive = 1e-14;  // p^(2) above this counts as positive
}

LocalBlocks local_blocks(const WeightingScheme& scheme, int x) {
  const MixedGraph& g = scheme.graph();
  LocalBlocks b;
  b.x = x;
  b.n_vertices = scheme.n();
  b.laziness = scheme.laziness(x);
  b.weighted_degree = scheme.weighted_degree(x);

  const auto d = bfs_distances(g, x);
  for (int v = 0; v < scheme.n(); ++v) {
    if (d[static_cast<size_t>(v)] == 1) b.s1.push_back(v);
    if (d[static_cast<size_t>(v)] == 2) b.s2.push_back(v);
  }
  const int m = static_cast<int>(b.s1.size());
  const int n2 = static_cast<int>(b.s2.size());

  b.delta_s1.resize(m);
  b.rate_to_x.resize(m);
  b.s1_weighted_degree.resize(m);
  b.s1_rates.resize(m, m);
  for (int i = 0; i < m; ++i) {
    const int yi = b.s1[static_cast<size_t>(i)];
    b.delta_s1(i) = scheme.rate(x, yi);
    b.rate_to_x(i) = scheme.rate(yi, x);
    b.s1_weighted_degree(i) = scheme.weighted_degree(yi);
    for (int j = 0; j < m; ++j) b.s1_rates(i, j) = scheme.rate(yi, b.s1[static_cast<size_t>(j)]);
  }
  b.gamma_s1 = (0.5 * b.delta_s1).asDiagonal();

  // Gamma_2 blocks over the quadratic form on functions with f(x) = 0.
  b.gamma2_s1.resize(m, m);
  for (int i = 0; i < m; ++i) {
    const double pi = b.delta_s1(i);
    double cross = 0.0;
    for (int j = 0; j < m; ++j) {
      if (j == i) continue;
      cross += b.delta_s1(j) * b.s1_rates(j, i);
    }
    b.gamma2_s1(i, i) = (-1.0 + 0.5 * b.laziness) * 0.5 * pi + 0.5 * pi * pi + pi -
                        0.75 * pi * b.s1_rates(i, i) + 0.25 * cross;
    for (int j = i + 1; j < m; ++j) {
      const double pj = b.delta_s1(j);
      const double v =
          0.5 * pi * pj - 0.5 * pi * b.s1_rates(i, j) - 0.5 * pj * b.s1_rates(j, i);
      b.gamma2_s1(i, j) = v;
      b.gamma2_s1(j, i) = v;
    }
  }

  b.gamma2_s1s2.resize(m, n2);
  b.p2_s2.resize(n2);
  for (int k = 0; k < n2; ++k) {
    const int z = b.s2[static_cast<size_t>(k)];
    double p2 = 0.0;
    for (int i = 0; i < m; ++i) {
      const double pyz = scheme.rate(b.s1[static_cast<size_t>(i)], z);
      b.gamma2_s1s2(i, k) = -0.5 * b.delta_s1(i) * pyz;
      p2 += b.delta_s1(i) * pyz;
    }
    b.p2_s2(k) = p2;
  }
  b.gamma2_s2 = (0.25 * b.p2_s2).asDiagonal();
  return b;
}

QMatrix q_matrix(const LocalBlocks& blocks) {
  QMatrix q;
  q.x = blocks.x;
  const int n2 = static_cast<int>(blocks.s2.size());
  q.q_weights.resize(n2);
  for (int k = 0; k < n2; ++k) {
    q.q_weights(k) = blocks.p2_s2(k) > kTwoStepPositive ? 4.0 / blocks.p2_s2(k) : 0.0;
  }
  q.entries = blocks.gamma2_s1;
  if (n2 > 0) {
    q.entries -= blocks.gamma2_s1s2 * q.q_weights.asDiagonal() * blocks.gamma2_s1s2.transpose();
  }
  return q;
}

Eigen::VectorXd optimal_extension(const LocalBlocks& blocks, const std::map<int, double>& f0) {
  auto value_of = [&](int v) {
    auto it = f0.find(v);
    if (it == f0.end()) {
      throw std::invalid_argument("optimal_extension: f0 is missing a value on B_1");
    }
    return it->second;
  };
  if (value_of(blocks.x) != 0.0) {
    throw std::invalid_argument("optimal_extension: f0(x) must be 0");
  }

  Eigen::VectorXd f = Eigen::VectorXd::Zero(blocks.n_vertices);
  const int m = static_cast<int>(blocks.s1.size());
  Eigen::VectorXd v(m);
  for (int i = 0; i < m; ++i) {
    v(i) = value_of(blocks.s1[static_cast<size_t>(i)]);
    f(blocks.s1[static_cast<size_t>(i)]) = v(i);
  }
  const int n2 = static_cast<int>(blocks.s2.size());
  if (n2 > 0) {
    Eigen::VectorXd qw(n2);
    for (int k = 0; k < n2; ++k) {
      qw(k) = blocks.p2_s2(k) > kTwoStepPositive ? 4.0 / blocks.p2_s2(k) : 0.0;
    }
    // w = -Gamma2_{S2}^dagger Gamma2_{S2,S1} v; zero exactly where p^(2) = 0.
    const Eigen::VectorXd w = -(qw.asDiagonal() * blocks.gamma2_s1s2.transpose() * v);
    for (int k = 0; k < n2; ++k) f(blocks.s2[static_cast<size_t>(k)]) = w(k);
  }
  return f;
}

double laplacian(const WeightingScheme& scheme, const Eigen::VectorXd& f, int x) {
  double s = 0.0;
  for (int y : scheme.graph().out_neighbors(x)) s += scheme.rate(x, y) * (f(y) - f(x));
  return s;
}

double gamma(const WeightingScheme& scheme, const Eigen::VectorXd& f, const Eigen::VectorXd& g,
             int x) {
  double s = 0.0;
  for (int y : scheme.graph().out_neighbors(x)) {
    s += scheme.rate(x, y) * (f(y) - f(x)) * (g(y) - g(x));
  }
  return 0.5 * s;
}

double gamma2(const WeightingScheme& scheme, const Eigen::VectorXd& f, const Eigen::VectorXd& g,
              int x) {
  // 2 Gamma_2(f,g) = Delta Gamma(f,g) - Gamma(f, Delta g) - Gamma(g, Delta f).
  const int n = scheme.n();
  Eigen::VectorXd gfg(n), lf(n), lg(n);
  for (int v = 0; v < n; ++v) {
    gfg(v) = gamma(scheme, f, g, v);
    lf(v) = laplacian(scheme, f, v);
    lg(v) = laplacian(scheme, g, v);
  }
  const double term = laplacian(scheme, gfg, x) - gamma(scheme, f, lg, x) - gamma(scheme, g, lf, x);
  return 0.5 * term;
}

}  // namespace curveflow
