#pragma once

#include <iosfwd>

#include "lovx/common.hpp"

namespace lovx {

/// Weighted undirected simple graph, optionally signed.  Edges are stored
/// with u < v; weights are positive and the sign lives in a separate field.
class Graph {
 public:
  struct Edge {
    int u = 0, v = 0;
    double w = 1.0;
    int sign = +1;
  };

  Graph() = default;
  Graph(int n, std::vector<Edge> edges);

  int n() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  bool is_signed() const { return has_negative_; }
  bool is_unit_weighted() const { return unit_weighted_; }

  double degree(int v) const { return degree_[v]; }
  double volume() const { return total_volume_; }
  double volume(SubsetId a) const;
  const std::vector<int>& neighbors(int v) const { return adj_[v]; }
  bool adjacent(int u, int v) const;
  double weight(int u, int v) const;  // 0 when not adjacent

  /// Total weight of edges with exactly one endpoint in `a`.
  double cut_weight(SubsetId a) const;
  /// Total weight of edges with both endpoints in `a`.
  double inside_weight(SubsetId a) const;
  /// Total weight of edges between disjoint `a` and `b`.
  double between_weight(SubsetId a, SubsetId b) const;
  /// Frustrated-edge weight of the full +/-1 assignment encoded by `plus`
  /// (positive edges cut by the bipartition plus negative edges inside a side).
  double frustrated_weight(SubsetId plus) const;

  /// Vertex boundaries of a subset.
  SubsetId external_boundary(SubsetId a) const;
  SubsetId internal_boundary(SubsetId a) const;
  SubsetId vertex_boundary(SubsetId a) const { return external_boundary(a) | internal_boundary(a); }

  /// Line graph: one vertex per edge, edges between incident edge pairs.
  Graph line_graph() const;
  /// Induced subgraph on `keep`; `back_map` receives new->old vertex ids.
  Graph induced(SubsetId keep, std::vector<int>* back_map = nullptr) const;

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<double> degree_;
  std::vector<std::vector<int>> adj_;
  std::vector<std::vector<std::pair<int, double>>> wadj_;
  double total_volume_ = 0.0;
  bool has_negative_ = false;
  bool unit_weighted_ = true;
};

/// Whitespace-separated `u v [w] [s]` lines; `#` starts a comment; vertex ids
/// use `index_base` (0 or 1).  A missing weight defaults to 1, a missing sign
/// to +1.
Graph read_edge_list(std::istream& in, int index_base = 0);
/// DIMACS: `c` comments, `p edge N M`, `e u v [w]`; vertices are 1-indexed.
Graph read_dimacs(std::istream& in);
Graph read_graph_file(const std::string& path, const std::string& format = "edge-list",
                      int index_base = 0);

// Small built-in graphs used by tests and the check suites.
Graph make_complete(int n);
Graph make_path(int n);
Graph make_cycle(int n);
Graph make_star(int leaves);
Graph make_petersen();

}  // namespace lovx
