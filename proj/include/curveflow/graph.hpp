#pragma once

#include <Eigen/Dense>

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace curveflow {

/// Raised when an input document or in-memory description violates the
/// graph/scheme invariants (bad edges, non-stochastic rows, ...).
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Finite simple mixed graph: a vertex list plus one-sided (directed) and
/// two-sided (undirected) edge sets. Vertices are opaque string identifiers;
/// all numeric indexing follows the declaration order.
class MixedGraph {
 public:
  MixedGraph(std::vector<std::string> vertices,
             std::vector<std::pair<std::string, std::string>> one_sided,
             std::vector<std::pair<std::string, std::string>> two_sided);

  int n() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& vertex_names() const { return names_; }
  const std::string& name(int v) const { return names_[static_cast<size_t>(v)]; }
  int index_of(const std::string& name) const;

  /// True when a directed step x -> y is allowed (one-sided edge (x,y) or a
  /// two-sided edge {x,y}).
  bool has_arc(int x, int y) const { return kind(x, y) != EdgeKind::None; }
  bool is_one_sided(int x, int y) const { return kind(x, y) == EdgeKind::OneSided; }
  bool is_two_sided(int x, int y) const { return kind(x, y) == EdgeKind::TwoSided; }
  /// Any edge between x and y, regardless of orientation.
  bool adjacent_any(int x, int y) const { return has_arc(x, y) || has_arc(y, x); }

  /// Out-neighbors of x in index order (S_1 with respect to d_G when every
  /// rate is positive).
  const std::vector<int>& out_neighbors(int x) const { return out_[static_cast<size_t>(x)]; }

  /// Edge lists as index pairs; two-sided pairs are stored with first < second.
  const std::vector<std::pair<int, int>>& one_sided_edges() const { return one_sided_; }
  const std::vector<std::pair<int, int>>& two_sided_edges() const { return two_sided_; }

  bool is_unmixed() const { return one_sided_.empty(); }
  bool is_triangle_free() const;
  /// Connectivity of the underlying undirected skeleton.
  bool is_weakly_connected() const;

 private:
  enum class EdgeKind : unsigned char { None = 0, OneSided = 1, TwoSided = 2 };
  EdgeKind kind(int x, int y) const {
    return kinds_[static_cast<size_t>(x) * names_.size() + static_cast<size_t>(y)];
  }

  std::vector<std::string> names_;
  std::unordered_map<std::string, int> index_;
  std::vector<EdgeKind> kinds_;          // row-major n*n, directional
  std::vector<std::vector<int>> out_;    // sorted out-neighbor lists
  std::vector<std::pair<int, int>> one_sided_;
  std::vector<std::pair<int, int>> two_sided_;
};

/// Which edges/vertices of a weighted graph carry a vanishing required rate
/// (Def. of degeneracy for mixed weighted graphs).
struct DegeneracyReport {
  std::vector<std::pair<std::string, std::string>> degenerate_one_sided;
  std::vector<std::pair<std::string, std::string>> degenerate_two_sided;
  std::vector<std::string> degenerate_vertices;
  bool is_degenerate = false;
};

/// Markovian weighting scheme: a row-stochastic matrix of transition rates
/// supported on the edges of a mixed graph, with laziness on the diagonal.
/// Immutable after construction.
class WeightingScheme {
 public:
  /// Full validation: support, nonnegativity, row-stochasticity within
  /// `tolerance`; rows within tolerance are renormalized to sum exactly 1.
  static WeightingScheme validated(MixedGraph graph, Eigen::MatrixXd rates,
                                   double tolerance = 1e-12);
  /// Support-checked construction without renormalization. Used internally
  /// for flow states whose rows are stochastic by conservation.
  static WeightingScheme unchecked(MixedGraph graph, Eigen::MatrixXd rates);
  static WeightingScheme unchecked(std::shared_ptr<const MixedGraph> graph,
                                   Eigen::MatrixXd rates);

  const MixedGraph& graph() const { return *graph_; }
  std::shared_ptr<const MixedGraph> graph_ptr() const { return graph_; }
  int n() const { return graph_->n(); }
  const Eigen::MatrixXd& rates() const { return rates_; }
  double rate(int x, int y) const { return rates_(x, y); }
  double laziness(int x) const { return rates_(x, x); }
  /// Weighted degree D_x = sum_{y != x} p_xy.
  double weighted_degree(int x) const { return degree_[static_cast<size_t>(x)]; }
  /// Two-step rate p^(2)_xz = sum_y p_xy p_yz.
  double two_step_rate(int x, int z) const;
  bool is_isolated(int x) const { return degree_[static_cast<size_t>(x)] <= 0.0; }

  DegeneracyReport degeneracy() const;
  bool is_degenerate_vertex(int x) const;

  /// Scheme restricted to the induced subgraph G_P (same rate matrix).
  WeightingScheme induced() const;

 private:
  WeightingScheme(std::shared_ptr<const MixedGraph> g, Eigen::MatrixXd rates);

  std::shared_ptr<const MixedGraph> graph_;
  Eigen::MatrixXd rates_;
  std::vector<double> degree_;
};

/// Directed distances, spheres and balls about one source vertex, both for
/// the ambient topology G and for the induced subgraph G_P. Unreachable
/// vertices carry an empty optional, never a large number.
struct DistanceField {
  int source = 0;
  std::vector<std::optional<int>> d_g;
  std::vector<std::optional<int>> d_p;
  std::vector<int> s1_g, s2_g, s1_p, s2_p;
  std::vector<int> b1_g, b2_g, b1_p, b2_p;
};

/// Topology obtained from (G, P) by dropping edges with vanishing rates:
/// one-sided (x,y) iff p_xy > 0 and p_yx = 0, two-sided iff both positive.
MixedGraph induced_subgraph(const WeightingScheme& scheme);

/// Directed BFS distances from `source` (one-sided edges traversed forward
/// only, two-sided both ways).
std::vector<std::optional<int>> bfs_distances(const MixedGraph& graph, int source);

DistanceField distances(const WeightingScheme& scheme, int x);

}  // namespace curveflow
