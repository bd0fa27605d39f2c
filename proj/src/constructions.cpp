#include "curveflow/constructions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <deque>
#include <limits>

namespace curveflow {

WeightingScheme simple_random_walk(const MixedGraph& graph) {
  const int n = graph.n();
  Eigen::MatrixXd rates = Eigen::MatrixXd::Zero(n, n);
  for (int x = 0; x < n; ++x) {
    const auto& nbrs = graph.out_neighbors(x);
    if (nbrs.empty()) {
      throw std::invalid_argument("simple_random_walk: vertex " + graph.name(x) +
                                  " has no outgoing edge");
    }
    const double p = 1.0 / static_cast<double>(nbrs.size());
    for (int y : nbrs) rates(x, y) = p;
  }
  return WeightingScheme::validated(graph, std::move(rates));
}

WeightingScheme clique_scheme(const MixedGraph& graph, const std::vector<int>& clique) {
  if (!graph.is_unmixed()) throw std::invalid_argument("clique_scheme: graph must be unmixed");
  if (!graph.is_weakly_connected()) {
    throw std::invalid_argument("clique_scheme: graph must be connected");
  }
  const int k = static_cast<int>(clique.size());
  if (k < 2) throw std::invalid_argument("clique_scheme: clique needs at least two vertices");
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      if (!graph.adjacent_any(clique[static_cast<size_t>(i)], clique[static_cast<size_t>(j)])) {
        throw std::invalid_argument("clique_scheme: vertex set is not a clique");
      }
    }
  }

  const int n = graph.n();
  std::vector<char> in_clique(static_cast<size_t>(n), 0);
  for (int v : clique) in_clique[static_cast<size_t>(v)] = 1;

  // Multi-source BFS distance to the clique.
  std::vector<int> dist(static_cast<size_t>(n), -1);
  std::deque<int> queue;
  for (int v : clique) {
    dist[static_cast<size_t>(v)] = 0;
    queue.push_back(v);
  }
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int w : graph.out_neighbors(v)) {
      if (dist[static_cast<size_t>(w)] < 0) {
        dist[static_cast<size_t>(w)] = dist[static_cast<size_t>(v)] + 1;
        queue.push_back(w);
      }
    }
  }

  Eigen::MatrixXd rates = Eigen::MatrixXd::Zero(n, n);
  for (int x = 0; x < n; ++x) {
    if (in_clique[static_cast<size_t>(x)]) {
      for (int y : clique) {
        if (y != x) rates(x, y) = 1.0 / static_cast<double>(k - 1);
      }
    } else if (dist[static_cast<size_t>(x)] == 1) {
      std::vector<int> into;
      for (int y : graph.out_neighbors(x)) {
        if (in_clique[static_cast<size_t>(y)]) into.push_back(y);
      }
      for (int y : into) rates(x, y) = 1.0 / static_cast<double>(into.size());
    } else {
      // Lexicographically first neighbor strictly closer to the clique.
      int parent = -1;
      for (int y : graph.out_neighbors(x)) {
        if (dist[static_cast<size_t>(y)] == dist[static_cast<size_t>(x)] - 1) {
          if (parent < 0 || graph.name(y) < graph.name(parent)) parent = y;
        }
      }
      rates(x, parent) = 1.0;
    }
  }
  return WeightingScheme::validated(graph, std::move(rates));
}

namespace {

Eigen::MatrixXd adjacency_matrix(const MixedGraph& graph) {
  const int n = graph.n();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (int x = 0; x < n; ++x) {
    for (int y : graph.out_neighbors(x)) a(x, y) = 1.0;
  }
  return a;
}

constexpr double kOpenBoundSlack = 1e-10;

bool in_box(const Eigen::VectorXd& c) {
  return c.minCoeff() >= kOpenBoundSlack - 1e-13 && c.maxCoeff() <= 1.0 + 1e-12;
}

}  // namespace

TriangleFreeResult triangle_free_solve(const MixedGraph& graph) {
  if (!graph.is_unmixed()) {
    throw std::invalid_argument("triangle_free_solve: graph must be unmixed");
  }
  if (!graph.is_weakly_connected()) {
    throw std::invalid_argument("triangle_free_solve: graph must be connected");
  }
  if (!graph.is_triangle_free()) {
    throw std::invalid_argument("triangle_free_solve: graph has a triangle");
  }
  const int n = graph.n();
  const Eigen::MatrixXd a = adjacency_matrix(graph);
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);

  Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
  lu.setThreshold(1e-10);
  const int kernel_dim = n - static_cast<int>(lu.rank());

  TriangleFreeResult result;
  // Least-norm particular solution.
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(a);
  cod.setThreshold(1e-10);
  Eigen::VectorXd c = cod.solve(ones);
  if ((a * c - ones).lpNorm<Eigen::Infinity>() > 1e-9) {
    int worst = 0;
    (a * c - ones).cwiseAbs().maxCoeff(&worst);
    result.infeasible = InfeasibilityCertificate{
        "no rate vector can satisfy: rates into the neighbors of " + graph.name(worst) +
        " must sum to 1"};
    return result;
  }

  if (!in_box(c) && kernel_dim > 0) {
    // Alternating projections between the affine solution set and the box
    // [slack, 1]^V over the kernel of A_G.
    Eigen::MatrixXd kernel = lu.kernel();
    const Eigen::MatrixXd basis =
        Eigen::HouseholderQR<Eigen::MatrixXd>(kernel).householderQ() *
        Eigen::MatrixXd::Identity(n, kernel.cols());
    const Eigen::VectorXd c0 = c;
    for (int it = 0; it < 20000 && !in_box(c); ++it) {
      Eigen::VectorXd boxed = c.cwiseMax(kOpenBoundSlack).cwiseMin(1.0);
      c = c0 + basis * (basis.transpose() * (boxed - c0));
    }
  }

  if (!in_box(c)) {
    int worst = 0;
    double worst_gap = -1.0;
    for (int v = 0; v < n; ++v) {
      const double gap = std::max(kOpenBoundSlack - c(v), c(v) - 1.0);
      if (gap > worst_gap) {
        worst_gap = gap;
        worst = v;
      }
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", c(worst));
    result.infeasible = InfeasibilityCertificate{
        "every solution forces the rate toward " + graph.name(worst) + " to " + buf +
        ", outside (0,1]"};
    return result;
  }

  result.solution = TriangleFreeSolution{c, kernel_dim == 0, kernel_dim};
  return result;
}

WeightingScheme scheme_from_triangle_free(const MixedGraph& graph, const Eigen::VectorXd& c) {
  const int n = graph.n();
  Eigen::MatrixXd rates = Eigen::MatrixXd::Zero(n, n);
  for (int x = 0; x < n; ++x) {
    for (int y : graph.out_neighbors(x)) rates(x, y) = c(y);
  }
  return WeightingScheme::validated(graph, std::move(rates), 1e-9);
}

std::vector<WeightingScheme> k3_catalog() {
  MixedGraph k3({"0", "1", "2"}, {}, {{"0", "1"}, {"0", "2"}, {"1", "2"}});
  const double h = 0.5;
  const std::vector<std::array<double, 6>> vectors = {
      {h, h, h, h, h, h},
      {0, 1, h, h, 1, 0},
      {h, h, 0, 1, 0, 1},
      {1, 0, 1, 0, h, h},
  };
  std::vector<WeightingScheme> catalog;
  for (const auto& v : vectors) {
    Eigen::MatrixXd rates = Eigen::MatrixXd::Zero(3, 3);
    rates(0, 1) = v[0];
    rates(0, 2) = v[1];
    rates(1, 0) = v[2];
    rates(1, 2) = v[3];
    rates(2, 0) = v[4];
    rates(2, 1) = v[5];
    catalog.push_back(WeightingScheme::validated(k3, std::move(rates)));
  }
  return catalog;
}

}  // namespace curveflow
