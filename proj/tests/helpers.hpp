#pragma once

#include "lovx/catalog.hpp"
#include "lovx/setfn.hpp"

namespace lovx::testing {

inline SetFunction random_powerset(int n, Rng& rng, bool integers = false, double lo = -1.0,
                                   double hi = 1.0) {
  std::vector<double> vals(std::size_t{1} << n);
  for (auto& v : vals)
    v = integers ? static_cast<double>(static_cast<int>(rng.uniform_int(21)) - 10)
                 : rng.uniform(lo, hi);
  vals[0] = 0.0;
  return SetFunction::from_powerset_table(n, std::move(vals));
}

inline SetFunction random_pair(int n, Rng& rng, bool integers = false, double lo = -1.0,
                               double hi = 1.0) {
  std::vector<double> vals(pow3(n));
  for (auto& v : vals)
    v = integers ? static_cast<double>(static_cast<int>(rng.uniform_int(21)) - 10)
                 : rng.uniform(lo, hi);
  vals[0] = 0.0;
  return SetFunction::from_pair_table(n, std::move(vals));
}

inline Vec random_point(int dim, Rng& rng, double lo = -2.0, double hi = 2.0) {
  Vec x(dim);
  for (double& v : x) v = rng.uniform(lo, hi);
  return x;
}

inline Vec random_ternary(int dim, Rng& rng) {
  Vec x(dim, 0.0);
  bool nonzero = false;
  for (double& v : x) {
    double u = rng.uniform();
    v = u < 1.0 / 3 ? -1.0 : (u < 2.0 / 3 ? 0.0 : 1.0);
    nonzero = nonzero || v != 0.0;
  }
  if (!nonzero) x[rng.uniform_int(dim)] = 1.0;
  return x;
}

/// Random connected unit-weight graph (spanning tree plus extra edges).
inline Graph random_connected_graph(int n, Rng& rng, double extra_prob = 0.4) {
  std::vector<Graph::Edge> edges;
  for (int v = 1; v < n; ++v)
    edges.push_back({static_cast<int>(rng.uniform_int(v)), v, 1.0, +1});
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      bool present = false;
      for (const auto& e : edges)
        if (e.u == std::min(i, j) && e.v == std::max(i, j)) present = true;
      if (!present && rng.uniform() < extra_prob) edges.push_back({i, j, 1.0, +1});
    }
  return Graph(n, std::move(edges));
}

inline Graph random_signed_graph(int n, Rng& rng, double extra_prob = 0.4) {
  Graph base = random_connected_graph(n, rng, extra_prob);
  std::vector<Graph::Edge> edges = base.edges();
  for (auto& e : edges) e.sign = rng.uniform() < 0.5 ? -1 : +1;
  return Graph(n, std::move(edges));
}

}  // namespace lovx::testing
