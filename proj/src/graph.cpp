#include "lovx/graph.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace lovx {

Graph::Graph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  if (n < 1) throw DomainError("graph needs at least one vertex");
  if (n > 31) throw DomainError("graph too large for subset enumeration layout");
  degree_.assign(n, 0.0);
  adj_.assign(n, {});
  wadj_.assign(n, {});
  std::set<std::pair<int, int>> seen;
  for (auto& e : edges_) {
    if (e.u > e.v) std::swap(e.u, e.v);
    if (e.u < 0 || e.v >= n) throw DomainError("edge endpoint out of range");
    if (e.u == e.v) throw DomainError("loops are not allowed");
    if (!seen.insert({e.u, e.v}).second) throw DomainError("duplicate edge");
    if (e.w <= 0.0) throw DomainError("edge weights must be positive");
    if (e.sign != +1 && e.sign != -1) throw DomainError("edge sign must be +1 or -1");
    degree_[e.u] += e.w;
    degree_[e.v] += e.w;
    adj_[e.u].push_back(e.v);
    adj_[e.v].push_back(e.u);
    wadj_[e.u].push_back({e.v, e.w});
    wadj_[e.v].push_back({e.u, e.w});
    if (e.sign < 0) has_negative_ = true;
    if (e.w != 1.0) unit_weighted_ = false;
  }
  for (auto& a : adj_) std::sort(a.begin(), a.end());
  for (auto& a : wadj_) std::sort(a.begin(), a.end());
  for (double d : degree_) total_volume_ += d;
}

double Graph::volume(SubsetId a) const {
  double v = 0.0;
  for (int i = 0; i < n_; ++i)
    if (a >> i & 1) v += degree_[i];
  return v;
}

bool Graph::adjacent(int u, int v) const {
  return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
}

double Graph::weight(int u, int v) const {
  auto it = std::lower_bound(wadj_[u].begin(), wadj_[u].end(), std::make_pair(v, 0.0));
  return it != wadj_[u].end() && it->first == v ? it->second : 0.0;
}

double Graph::cut_weight(SubsetId a) const {
  double total = 0.0;
  for (const auto& e : edges_)
    if (((a >> e.u) & 1) != ((a >> e.v) & 1)) total += e.w;
  return total;
}

double Graph::inside_weight(SubsetId a) const {
  double total = 0.0;
  for (const auto& e : edges_)
    if ((a >> e.u & 1) && (a >> e.v & 1)) total += e.w;
  return total;
}

double Graph::between_weight(SubsetId a, SubsetId b) const {
  double total = 0.0;
  for (const auto& e : edges_) {
    bool ua = a >> e.u & 1, ub = b >> e.u & 1;
    bool va = a >> e.v & 1, vb = b >> e.v & 1;
    if ((ua && vb) || (ub && va)) total += e.w;
  }
  return total;
}

double Graph::frustrated_weight(SubsetId plus) const {
  double total = 0.0;
  for (const auto& e : edges_) {
    bool same_side = ((plus >> e.u) & 1) == ((plus >> e.v) & 1);
    if ((e.sign > 0 && !same_side) || (e.sign < 0 && same_side)) total += e.w;
  }
  return total;
}

SubsetId Graph::external_boundary(SubsetId a) const {
  SubsetId out = 0;
  for (const auto& e : edges_) {
    bool ua = a >> e.u & 1, va = a >> e.v & 1;
    if (ua && !va) out |= SubsetId{1} << e.v;
    if (va && !ua) out |= SubsetId{1} << e.u;
  }
  return out;
}

SubsetId Graph::internal_boundary(SubsetId a) const {
  SubsetId out = 0;
  for (const auto& e : edges_) {
    bool ua = a >> e.u & 1, va = a >> e.v & 1;
    if (ua && !va) out |= SubsetId{1} << e.u;
    if (va && !ua) out |= SubsetId{1} << e.v;
  }
  return out;
}

Graph Graph::line_graph() const {
  int m = static_cast<int>(edges_.size());
  std::vector<Edge> le;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      const Edge &a = edges_[i], &b = edges_[j];
      if (a.u == b.u || a.u == b.v || a.v == b.u || a.v == b.v)
        le.push_back(Edge{i, j, 1.0, +1});
    }
  return Graph(std::max(m, 1), std::move(le));
}

Graph Graph::induced(SubsetId keep, std::vector<int>* back_map) const {
  std::vector<int> old_ids = subset_vertices(keep, n_);
  std::vector<int> new_id(n_, -1);
  for (std::size_t i = 0; i < old_ids.size(); ++i) new_id[old_ids[i]] = static_cast<int>(i);
  std::vector<Edge> sub;
  for (const auto& e : edges_)
    if (new_id[e.u] >= 0 && new_id[e.v] >= 0)
      sub.push_back(Edge{new_id[e.u], new_id[e.v], e.w, e.sign});
  if (back_map) *back_map = old_ids;
  return Graph(std::max<int>(1, static_cast<int>(old_ids.size())), std::move(sub));
}

// ---------------------------------------------------------------------------
// Readers
// ---------------------------------------------------------------------------

Graph read_edge_list(std::istream& in, int index_base) {
  if (index_base != 0 && index_base != 1) throw DomainError("index base must be 0 or 1");
  std::vector<Graph::Edge> edges;
  int max_vertex = -1;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    long u, v;
    if (!(ls >> u)) continue;  // blank/comment line
    if (!(ls >> v)) throw ParseError("edge line needs two endpoints", lineno);
    double w = 1.0;
    int sign = +1;
    double field;
    if (ls >> field) {
      w = field;
      if (ls >> field) {
        if (field != 1.0 && field != -1.0) throw ParseError("sign column must be +1 or -1", lineno);
        sign = static_cast<int>(field);
      }
    }
    u -= index_base;
    v -= index_base;
    if (u < 0 || v < 0) throw ParseError("vertex id below index base", lineno);
    if (u == v) throw ParseError("loop edge", lineno);
    if (w <= 0.0) throw ParseError("edge weight must be positive", lineno);
    edges.push_back(Graph::Edge{static_cast<int>(u), static_cast<int>(v), w, sign});
    max_vertex = std::max(max_vertex, static_cast<int>(std::max(u, v)));
  }
  if (max_vertex < 0) throw ParseError("no edges found", lineno);
  try {
    return Graph(max_vertex + 1, std::move(edges));
  } catch (const DomainError& e) {
    throw ParseError(e.what(), lineno);
  }
}

Graph read_dimacs(std::istream& in) {
  std::vector<Graph::Edge> edges;
  int n = -1;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == 'c') continue;
    std::istringstream ls(line);
    char tag;
    ls >> tag;
    if (tag == 'p') {
      std::string kind;
      long nn, mm;
      if (!(ls >> kind >> nn >> mm) || (kind != "edge" && kind != "col"))
        throw ParseError("malformed problem line", lineno);
      n = static_cast<int>(nn);
    } else if (tag == 'e') {
      long u, v;
      if (!(ls >> u >> v)) throw ParseError("malformed edge line", lineno);
      double w = 1.0;
      ls >> w;
      if (u < 1 || v < 1) throw ParseError("DIMACS vertices are 1-indexed", lineno);
      if (u == v) throw ParseError("loop edge", lineno);
      edges.push_back(Graph::Edge{static_cast<int>(u - 1), static_cast<int>(v - 1), w, +1});
    }
  }
  if (n < 1) throw ParseError("missing problem line", lineno);
  try {
    return Graph(n, std::move(edges));
  } catch (const DomainError& e) {
    throw ParseError(e.what(), lineno);
  }
}

Graph read_graph_file(const std::string& path, const std::string& format, int index_base) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path, 0);
  if (format == "edge-list") return read_edge_list(in, index_base);
  if (format == "dimacs") return read_dimacs(in);
  throw DomainError("unknown graph format: " + format);
}

// ---------------------------------------------------------------------------
// Built-in graphs
// ---------------------------------------------------------------------------

Graph make_complete(int n) {
  std::vector<Graph::Edge> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.push_back({i, j, 1.0, +1});
  return Graph(n, std::move(e));
}

Graph make_path(int n) {
  std::vector<Graph::Edge> e;
  for (int i = 0; i + 1 < n; ++i) e.push_back({i, i + 1, 1.0, +1});
  return Graph(n, std::move(e));
}

Graph make_cycle(int n) {
  std::vector<Graph::Edge> e;
  for (int i = 0; i < n; ++i) e.push_back({i, (i + 1) % n, 1.0, +1});
  return Graph(n, std::move(e));
}

Graph make_star(int leaves) {
  std::vector<Graph::Edge> e;
  for (int i = 1; i <= leaves; ++i) e.push_back({0, i, 1.0, +1});
  return Graph(leaves + 1, std::move(e));
}

Graph make_petersen() {
  std::vector<Graph::Edge> e;
  for (int i = 0; i < 5; ++i) e.push_back({i, (i + 1) % 5, 1.0, +1});
  for (int i = 0; i < 5; ++i) e.push_back({i, i + 5, 1.0, +1});
  for (int i = 0; i < 5; ++i) e.push_back({5 + i, 5 + (i + 2) % 5, 1.0, +1});
  return Graph(10, std::move(e));
}

}  // namespace lovx
