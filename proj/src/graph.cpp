#include "curveflow/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace curveflow {

MixedGraph::MixedGraph(std::vector<std::string> vertices,
                       std::vector<std::pair<std::string, std::string>> one_sided,
                       std::vector<std::pair<std::string, std::string>> two_sided)
    : names_(std::move(vertices)) {
  const size_t n = names_.size();
  index_.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    if (!index_.emplace(names_[i], static_cast<int>(i)).second) {
      throw ValidationError("duplicate vertex identifier: " + names_[i]);
    }
  }
  kinds_.assign(n * n, EdgeKind::None);
  out_.resize(n);

  auto at = [&](int x, int y) -> EdgeKind& {
    return kinds_[static_cast<size_t>(x) * n + static_cast<size_t>(y)];
  };

  for (const auto& [a, b] : one_sided) {
    const int x = index_of(a), y = index_of(b);
    if (x == y) throw ValidationError("loop edge at vertex " + a);
    if (at(x, y) != EdgeKind::None || at(y, x) != EdgeKind::None) {
      throw ValidationError("duplicate or conflicting edge between " + a + " and " + b);
    }
    at(x, y) = EdgeKind::OneSided;
    one_sided_.emplace_back(x, y);
  }
  for (const auto& [a, b] : two_sided) {
    const int x = index_of(a), y = index_of(b);
    if (x == y) throw ValidationError("loop edge at vertex " + a);
    if (at(x, y) != EdgeKind::None || at(y, x) != EdgeKind::None) {
      throw ValidationError("duplicate or conflicting edge between " + a + " and " + b);
    }
    at(x, y) = EdgeKind::TwoSided;
    at(y, x) = EdgeKind::TwoSided;
    two_sided_.emplace_back(std::min(x, y), std::max(x, y));
  }

  for (int x = 0; x < static_cast<int>(n); ++x) {
    for (int y = 0; y < static_cast<int>(n); ++y) {
      if (has_arc(x, y)) out_[static_cast<size_t>(x)].push_back(y);
    }
  }
}

int MixedGraph::index_of(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw ValidationError("unknown vertex reference: " + name);
  return it->second;
}

bool MixedGraph::is_triangle_free() const {
  for (int a = 0; a < n(); ++a)
    for (int b = a + 1; b < n(); ++b)
      for (int c = b + 1; c < n(); ++c)
        if (adjacent_any(a, b) && adjacent_any(b, c) && adjacent_any(a, c)) return false;
  return true;
}

bool MixedGraph::is_weakly_connected() const {
  if (n() == 0) return true;
  std::vector<char> seen(static_cast<size_t>(n()), 0);
  std::deque<int> queue{0};
  seen[0] = 1;
  int count = 1;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int w = 0; w < n(); ++w) {
      if (!seen[static_cast<size_t>(w)] && adjacent_any(v, w)) {
        seen[static_cast<size_t>(w)] = 1;
        ++count;
        queue.push_back(w);
      }
    }
  }
  return count == n();
}

WeightingScheme::WeightingScheme(std::shared_ptr<const MixedGraph> g, Eigen::MatrixXd rates)
    : graph_(std::move(g)), rates_(std::move(rates)) {
  const int n = graph_->n();
  degree_.resize(static_cast<size_t>(n));
  for (int x = 0; x < n; ++x) {
    double d = 0.0;
    for (int y : graph_->out_neighbors(x)) d += rates_(x, y);
    degree_[static_cast<size_t>(x)] = d;
  }
}

WeightingScheme WeightingScheme::validated(MixedGraph graph, Eigen::MatrixXd rates,
                                           double tolerance) {
  const int n = graph.n();
  if (rates.rows() != n || rates.cols() != n) {
    throw ValidationError("rate matrix size does not match vertex count");
  }
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      const double p = rates(x, y);
      if (!std::isfinite(p)) throw ValidationError("non-finite rate at " + graph.name(x) + " -> " + graph.name(y));
      if (p < 0.0) {
        throw ValidationError("negative rate " + graph.name(x) + " -> " + graph.name(y));
      }
      if (x != y && p > 0.0 && !graph.has_arc(x, y)) {
        throw ValidationError("rate on a non-edge: " + graph.name(x) + " -> " + graph.name(y));
      }
    }
  }
  for (int x = 0; x < n; ++x) {
    const double sum = rates.row(x).sum();
    if (std::abs(sum - 1.0) > tolerance) {
      throw ValidationError("row of vertex " + graph.name(x) + " sums to " +
                            std::to_string(sum) + ", not stochastic");
    }
    if (sum != 1.0) {
      // Renormalize exactly: scale, then absorb the float residue into the
      // largest entry so the row sum is 1.0 in double arithmetic.
      rates.row(x) /= sum;
      int arg = 0;
      rates.row(x).maxCoeff(&arg);
      rates(x, arg) += 1.0 - rates.row(x).sum();
    }
  }
  auto g = std::make_shared<const MixedGraph>(std::move(graph));
  return WeightingScheme(std::move(g), std::move(rates));
}

WeightingScheme WeightingScheme::unchecked(MixedGraph graph, Eigen::MatrixXd rates) {
  return unchecked(std::make_shared<const MixedGraph>(std::move(graph)), std::move(rates));
}

WeightingScheme WeightingScheme::unchecked(std::shared_ptr<const MixedGraph> graph,
                                           Eigen::MatrixXd rates) {
  const int n = graph->n();
  if (rates.rows() != n || rates.cols() != n) {
    throw ValidationError("rate matrix size does not match vertex count");
  }
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (x != y && rates(x, y) > 0.0 && !graph->has_arc(x, y)) {
        throw ValidationError("rate on a non-edge: " + graph->name(x) + " -> " + graph->name(y));
      }
    }
  }
  return WeightingScheme(std::move(graph), std::move(rates));
}

double WeightingScheme::two_step_rate(int x, int z) const {
  double s = rates_(x, x) * rates_(x, z);
  for (int y : graph_->out_neighbors(x)) s += rates_(x, y) * rates_(y, z);
  return s;
}

bool WeightingScheme::is_degenerate_vertex(int x) const {
  for (int y : graph_->out_neighbors(x)) {
    if (rates_(x, y) == 0.0) return true;
  }
  return false;
}

DegeneracyReport WeightingScheme::degeneracy() const {
  DegeneracyReport report;
  const MixedGraph& g = *graph_;
  for (const auto& [x, y] : g.one_sided_edges()) {
    if (rates_(x, y) == 0.0) report.degenerate_one_sided.emplace_back(g.name(x), g.name(y));
  }
  for (const auto& [x, y] : g.two_sided_edges()) {
    if (rates_(x, y) == 0.0 || rates_(y, x) == 0.0) {
      report.degenerate_two_sided.emplace_back(g.name(x), g.name(y));
    }
  }
  for (int x = 0; x < g.n(); ++x) {
    if (is_degenerate_vertex(x)) report.degenerate_vertices.push_back(g.name(x));
  }
  report.is_degenerate =
      !report.degenerate_one_sided.empty() || !report.degenerate_two_sided.empty();
  return report;
}

WeightingScheme WeightingScheme::induced() const {
  return unchecked(induced_subgraph(*this), rates_);
}

MixedGraph induced_subgraph(const WeightingScheme& scheme) {
  const MixedGraph& g = scheme.graph();
  std::vector<std::pair<std::string, std::string>> one_sided, two_sided;
  auto classify = [&](int x, int y) {
    const bool fwd = scheme.rate(x, y) > 0.0;
    const bool bwd = scheme.rate(y, x) > 0.0;
    if (fwd && bwd) {
      two_sided.emplace_back(g.name(x), g.name(y));
    } else if (fwd) {
      one_sided.emplace_back(g.name(x), g.name(y));
    } else if (bwd) {
      one_sided.emplace_back(g.name(y), g.name(x));
    }
  };
  for (const auto& [x, y] : g.one_sided_edges()) {
    if (scheme.rate(x, y) > 0.0) one_sided.emplace_back(g.name(x), g.name(y));
  }
  for (const auto& [x, y] : g.two_sided_edges()) classify(x, y);
  return MixedGraph(g.vertex_names(), std::move(one_sided), std::move(two_sided));
}

std::vector<std::optional<int>> bfs_distances(const MixedGraph& graph, int source) {
  std::vector<std::optional<int>> dist(static_cast<size_t>(graph.n()));
  std::deque<int> queue{source};
  dist[static_cast<size_t>(source)] = 0;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    const int d = *dist[static_cast<size_t>(v)];
    for (int w : graph.out_neighbors(v)) {
      if (!dist[static_cast<size_t>(w)]) {
        dist[static_cast<size_t>(w)] = d + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

DistanceField distances(const WeightingScheme& scheme, int x) {
  DistanceField field;
  field.source = x;
  field.d_g = bfs_distances(scheme.graph(), x);
  field.d_p = bfs_distances(induced_subgraph(scheme), x);

  auto collect = [&](const std::vector<std::optional<int>>& d, std::vector<int>& s1,
                     std::vector<int>& s2, std::vector<int>& b1, std::vector<int>& b2) {
    for (int v = 0; v < scheme.n(); ++v) {
      const auto& dv = d[static_cast<size_t>(v)];
      if (!dv) continue;
      if (*dv == 1) s1.push_back(v);
      if (*dv == 2) s2.push_back(v);
      if (*dv <= 1) b1.push_back(v);
      if (*dv <= 2) b2.push_back(v);
    }
  };
  collect(field.d_g, field.s1_g, field.s2_g, field.b1_g, field.b2_g);
  collect(field.d_p, field.s1_p, field.s2_p, field.b1_p, field.b2_p);
  return field;
}

}  // namespace curveflow
