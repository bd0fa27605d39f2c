#include "curveflow/io.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace curveflow {

using nlohmann::json;

namespace {

std::vector<std::pair<std::string, std::string>> parse_edge_list(const json& doc,
                                                                 const char* key) {
  std::vector<std::pair<std::string, std::string>> edges;
  if (!doc.contains(key)) return edges;
  for (const auto& e : doc.at(key)) {
    if (!e.is_array() || e.size() != 2) {
      throw ValidationError(std::string(key) + " entries must be pairs of vertex names");
    }
    edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
  }
  return edges;
}

}  // namespace

LoadResult load_and_validate(const json& document) {
  if (!document.contains("vertices")) throw ValidationError("document has no \"vertices\" list");
  std::vector<std::string> vertices;
  for (const auto& v : document.at("vertices")) vertices.push_back(v.get<std::string>());

  MixedGraph graph(vertices, parse_edge_list(document, "one_sided_edges"),
                   parse_edge_list(document, "two_sided_edges"));

  const int n = graph.n();
  Eigen::MatrixXd rates = Eigen::MatrixXd::Zero(n, n);
  std::set<std::pair<int, int>> seen;
  if (document.contains("rates")) {
    for (const auto& entry : document.at("rates")) {
      const int from = graph.index_of(entry.at("from").get<std::string>());
      const int to = graph.index_of(entry.at("to").get<std::string>());
      const double p = entry.at("p").get<double>();
      if (from == to) {
        throw ValidationError("rate entry with from == to; use \"laziness\" for the diagonal");
      }
      if (!seen.emplace(from, to).second) {
        throw ValidationError("duplicate rate entry " + graph.name(from) + " -> " +
                              graph.name(to));
      }
      rates(from, to) = p;
    }
  }
  if (document.contains("laziness")) {
    for (const auto& [name, value] : document.at("laziness").items()) {
      rates(graph.index_of(name), graph.index_of(name)) = value.get<double>();
    }
  }
  WeightingScheme scheme = WeightingScheme::validated(std::move(graph), std::move(rates));
  DegeneracyReport degeneracy = scheme.degeneracy();
  return {std::move(scheme), std::move(degeneracy)};
}

LoadResult load_and_validate_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ValidationError("invalid JSON in " + path + ": " + e.what());
  }
  return load_and_validate(doc);
}

json scheme_to_document(const WeightingScheme& scheme) {
  const MixedGraph& g = scheme.graph();
  json doc;
  doc["vertices"] = g.vertex_names();
  json two = json::array();
  for (const auto& [x, y] : g.two_sided_edges()) two.push_back({g.name(x), g.name(y)});
  json one = json::array();
  for (const auto& [x, y] : g.one_sided_edges()) one.push_back({g.name(x), g.name(y)});
  doc["two_sided_edges"] = two;
  doc["one_sided_edges"] = one;
  json rates = json::array();
  for (int x = 0; x < g.n(); ++x) {
    for (int y : g.out_neighbors(x)) {
      if (scheme.rate(x, y) != 0.0) {
        rates.push_back({{"from", g.name(x)}, {"to", g.name(y)}, {"p", scheme.rate(x, y)}});
      }
    }
  }
  doc["rates"] = rates;
  json laziness = json::object();
  for (int x = 0; x < g.n(); ++x) {
    if (scheme.laziness(x) != 0.0) laziness[g.name(x)] = scheme.laziness(x);
  }
  doc["laziness"] = laziness;
  return doc;
}

void write_scheme_file(const WeightingScheme& scheme, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << scheme_to_document(scheme).dump(2) << "\n";
}

std::vector<std::pair<int, int>> trajectory_rate_columns(const MixedGraph& graph) {
  std::vector<std::pair<int, int>> pairs;
  for (const auto& [x, y] : graph.one_sided_edges()) pairs.emplace_back(x, y);
  for (const auto& [x, y] : graph.two_sided_edges()) {
    pairs.emplace_back(x, y);
    pairs.emplace_back(y, x);
  }
  std::sort(pairs.begin(), pairs.end(), [&](const auto& a, const auto& b) {
    return std::pair(graph.name(a.first), graph.name(a.second)) <
           std::pair(graph.name(b.first), graph.name(b.second));
  });
  return pairs;
}

namespace {

std::string fmt12(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

void write_trajectory(const FlowTrajectory& trajectory, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  const MixedGraph& g = trajectory.final_scheme().graph();
  const auto columns = trajectory_rate_columns(g);
  out << "t,rhs_inf_norm,row_sum_defect,min_rate";
  for (const auto& [x, y] : columns) out << ",p_" << g.name(x) << "_" << g.name(y);
  out << "\n";
  for (size_t i = 0; i < trajectory.times.size(); ++i) {
    const auto& d = trajectory.diagnostics[i];
    out << fmt12(trajectory.times[i]) << "," << fmt12(d.rhs_inf_norm) << ","
        << fmt12(d.row_sum_defect) << "," << fmt12(d.min_rate);
    const auto& rates = trajectory.schemes[i].rates();
    for (const auto& [x, y] : columns) out << "," << fmt12(rates(x, y));
    out << "\n";
  }
}

void write_sweep_csv(const std::vector<SweepRow>& rows, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "p,k_inf,k_inf_dist\n";
  for (const auto& r : rows) {
    out << fmt12(r.p) << "," << fmt12(r.k_inf) << "," << fmt12(r.k_inf_dist) << "\n";
  }
}

void write_flow_batch_csv(const std::vector<FlowBatchRow>& rows, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "graph,seed,converged,t_converge,final_min_rate,limit_sharp,limit_degenerate\n";
  for (const auto& r : rows) {
    out << r.graph << "," << r.seed << "," << (r.converged ? 1 : 0) << ","
        << fmt12(r.t_converge) << "," << fmt12(r.final_min_rate) << ","
        << (r.limit_sharp ? 1 : 0) << "," << (r.limit_degenerate ? 1 : 0) << "\n";
  }
}

double round_sig(double value, int digits) {
  if (!std::isfinite(value) || value == 0.0) return value;
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, value);
  return std::strtod(buf, nullptr);
}

std::string report_render(const WeightingScheme& scheme, Dimension n_dim, double tolerance) {
  std::ostringstream out;
  char line[160];
  std::snprintf(line, sizeof(line), "%-12s %14s %14s %14s %-6s %-10s\n", "vertex", "K_N",
                "K_N^d", "residual", "sharp", "degenerate");
  out << line;
  const MixedGraph& g = scheme.graph();
  for (int x = 0; x < g.n(); ++x) {
    const bool degenerate = scheme.is_degenerate_vertex(x);
    if (scheme.is_isolated(x)) {
      std::snprintf(line, sizeof(line), "%-12s %14.6g %14s %14s %-6s %-10s\n",
                    g.name(x).c_str(), 0.0, "-", "-", "-", "isolated");
      out << line;
      continue;
    }
    const double k = curvature(scheme, x, n_dim).value;
    const double kd = upper_bound_dist(scheme, x, n_dim);
    const SharpnessReport report = sharpness_report(scheme, x, tolerance);
    std::snprintf(line, sizeof(line), "%-12s %14.6g %14.6g %14.6g %-6s %-10s\n",
                  g.name(x).c_str(), k, kd, report.residual_norm,
                  report.sharp_via_q ? "yes" : "no", degenerate ? "yes" : "no");
    out << line;
  }
  return out.str();
}

}  // namespace curveflow
