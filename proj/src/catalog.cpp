#include "lovx/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace lovx {

namespace {

double sign_of(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

int argmax_abs(ConstSpan x) {
  int best = 0;
  for (int i = 1; i < static_cast<int>(x.size()); ++i)
    if (std::fabs(x[i]) > std::fabs(x[best])) best = i;
  return best;
}

double linf(ConstSpan x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::fabs(v));
  return m;
}

}  // namespace

// ---------------------------------------------------------------------------
// PL building blocks
// ---------------------------------------------------------------------------

PLFunction pl_zero() { return PLFunction{}; }

PLFunction pl_scale(PLFunction f, double c) {
  if (f.is_zero() || c == 0.0) return pl_zero();
  auto ev = f.eval;
  auto sg = f.subgrad;
  return PLFunction{[ev, c](ConstSpan x) { return c * ev(x); },
                    [sg, c](ConstSpan x) {
                      Vec g = sg(x);
                      for (double& v : g) v *= c;
                      return g;
                    },
                    f.degree};
}

PLFunction pl_add(PLFunction f, PLFunction g) {
  if (f.is_zero()) return g;
  if (g.is_zero()) return f;
  auto fe = f.eval, ge = g.eval;
  auto fs = f.subgrad, gs = g.subgrad;
  return PLFunction{[fe, ge](ConstSpan x) { return fe(x) + ge(x); },
                    [fs, gs](ConstSpan x) {
                      Vec a = fs(x), b = gs(x);
                      for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
                      return a;
                    },
                    std::max(f.degree, g.degree)};
}

PLFunction pl_edge_tv(const Graph& g) { return pl_edge_tv_signed(g, 0); }

PLFunction pl_edge_tv_signed(const Graph& g, int sign) {
  auto edges = g.edges();
  int n = g.n();
  return PLFunction{
      [edges, sign](ConstSpan x) {
        double total = 0.0;
        for (const auto& e : edges)
          if (sign == 0 || e.sign == sign) total += e.w * std::fabs(x[e.u] - x[e.v]);
        return total;
      },
      [edges, sign, n](ConstSpan x) {
        Vec v(n, 0.0);
        for (const auto& e : edges) {
          if (sign != 0 && e.sign != sign) continue;
          double s = sign_of(x[e.u] - x[e.v]);
          v[e.u] += e.w * s;
          v[e.v] -= e.w * s;
        }
        return v;
      }};
}

PLFunction pl_edge_sum_abs(const Graph& g, int sign) {
  auto edges = g.edges();
  int n = g.n();
  return PLFunction{
      [edges, sign](ConstSpan x) {
        double total = 0.0;
        for (const auto& e : edges)
          if (sign == 0 || e.sign == sign) total += e.w * std::fabs(x[e.u] + x[e.v]);
        return total;
      },
      [edges, sign, n](ConstSpan x) {
        Vec v(n, 0.0);
        for (const auto& e : edges) {
          if (sign != 0 && e.sign != sign) continue;
          double s = sign_of(x[e.u] + x[e.v]);
          v[e.u] += e.w * s;
          v[e.v] += e.w * s;
        }
        return v;
      }};
}

PLFunction pl_weighted_l1(Vec coeffs) {
  return PLFunction{
      [coeffs](ConstSpan x) {
        double total = 0.0;
        for (std::size_t i = 0; i < coeffs.size(); ++i) total += coeffs[i] * std::fabs(x[i]);
        return total;
      },
      [coeffs](ConstSpan x) {
        Vec v(coeffs.size(), 0.0);
        for (std::size_t i = 0; i < coeffs.size(); ++i) v[i] = coeffs[i] * sign_of(x[i]);
        return v;
      }};
}

PLFunction pl_linf(int n, double scale) {
  // When the maximum modulus is attained with both signs, the reported
  // subgradient balances one top coordinate of each sign so that it sums to
  // zero; this keeps solver steps from drifting along the constants.
  return PLFunction{[scale](ConstSpan x) { return scale * linf(x); },
                    [n, scale](ConstSpan x) {
                      Vec v(n, 0.0);
                      double m = linf(x);
                      int top_pos = -1, top_neg = -1;
                      for (int i = 0; i < n; ++i) {
                        if (x[i] == m && top_pos < 0) top_pos = i;
                        if (-x[i] == m && top_neg < 0) top_neg = i;
                      }
                      if (m == 0.0) {
                        v[0] = scale;
                      } else if (top_pos >= 0 && top_neg >= 0) {
                        v[top_pos] = 0.5 * scale;
                        v[top_neg] = -0.5 * scale;
                      } else if (top_pos >= 0) {
                        v[top_pos] = scale;
                      } else {
                        v[top_neg] = -scale;
                      }
                      return v;
                    }};
}

PLFunction pl_centered_l1(Vec weights) {
  // G(x) = min_t sum_i d_i |x_i - t|.  The minimizing t* is a weighted
  // median; the reported subgradient mixes the two adjacent piece gradients
  // so that it sums to zero, which keeps <v, x> = G(x).
  auto minimizer = [weights](ConstSpan x) {
    std::vector<std::pair<double, double>> pts;  // (value, weight)
    double total = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i)
      if (weights[i] > 0.0) {
        pts.push_back({x[i], weights[i]});
        total += weights[i];
      }
    std::sort(pts.begin(), pts.end());
    double below = 0.0;
    for (const auto& [val, w] : pts) {
      if (below + w >= total / 2.0) return val;
      below += w;
    }
    return pts.empty() ? 0.0 : pts.back().first;
  };
  return PLFunction{
      [weights, minimizer](ConstSpan x) {
        double t = minimizer(x);
        double total = 0.0;
        for (std::size_t i = 0; i < weights.size(); ++i)
          total += weights[i] * std::fabs(x[i] - t);
        return total;
      },
      [weights, minimizer](ConstSpan x) {
        double t = minimizer(x);
        double above = 0.0, below = 0.0, at = 0.0;
        for (std::size_t i = 0; i < weights.size(); ++i) {
          if (x[i] > t)
            above += weights[i];
          else if (x[i] < t)
            below += weights[i];
          else
            at += weights[i];
        }
        // Slopes of t -> G(x - t 1) on the two sides of the breakpoint.
        double slope_left = below - (above + at);   // <= 0 at the minimizer
        double slope_right = (below + at) - above;  // >= 0 at the minimizer
        double theta =
            slope_right - slope_left > 0.0 ? slope_right / (slope_right - slope_left) : 1.0;
        Vec v(weights.size(), 0.0);
        for (std::size_t i = 0; i < weights.size(); ++i) {
          if (x[i] > t)
            v[i] = weights[i];
          else if (x[i] < t)
            v[i] = -weights[i];
          else
            v[i] = weights[i] * (theta * 1.0 + (1.0 - theta) * -1.0);
        }
        return v;
      }};
}

PLFunction pl_all_pairs_tv(int n, double scale) {
  Vec coeffs(static_cast<std::size_t>(n) * n, scale);
  return pl_complete_tv(coeffs, n);
}

PLFunction pl_complete_tv(Vec pair_coeffs, int n) {
  // pair_coeffs is indexed as c[i*n+j] (only i < j entries are read).
  return PLFunction{
      [pair_coeffs, n](ConstSpan x) {
        double total = 0.0;
        for (int i = 0; i < n; ++i)
          for (int j = i + 1; j < n; ++j) {
            double c = pair_coeffs[static_cast<std::size_t>(i) * n + j];
            if (c != 0.0) total += c * std::fabs(x[i] - x[j]);
          }
        return total;
      },
      [pair_coeffs, n](ConstSpan x) {
        Vec v(n, 0.0);
        for (int i = 0; i < n; ++i)
          for (int j = i + 1; j < n; ++j) {
            double c = pair_coeffs[static_cast<std::size_t>(i) * n + j];
            if (c == 0.0) continue;
            double s = sign_of(x[i] - x[j]);
            v[i] += c * s;
            v[j] -= c * s;
          }
        return v;
      }};
}

PLFunction pl_neighborhood_span(const Graph& g, int mode) {
  // mode 0: sum_i (x_i - min_{j in N(i)} x_j)   [internal boundary]
  // mode 1: sum_i (max_{j in N(i)} x_j - x_i)   [external boundary]
  // mode 2: sum_i (max_{j in N(i)} x_j - min_{j in N(i)} x_j)
  // N(i) contains i itself.
  const int n = g.n();
  std::vector<std::vector<int>> nbh(n);
  for (int i = 0; i < n; ++i) {
    nbh[i] = g.neighbors(i);
    nbh[i].push_back(i);
  }
  return PLFunction{
      [nbh, mode, n](ConstSpan x) {
        double total = 0.0;
        for (int i = 0; i < n; ++i) {
          double mx = -std::numeric_limits<double>::infinity();
          double mn = std::numeric_limits<double>::infinity();
          for (int j : nbh[i]) {
            mx = std::max(mx, x[j]);
            mn = std::min(mn, x[j]);
          }
          if (mode == 0)
            total += x[i] - mn;
          else if (mode == 1)
            total += mx - x[i];
          else
            total += mx - mn;
        }
        return total;
      },
      [nbh, mode, n](ConstSpan x) {
        Vec v(n, 0.0);
        for (int i = 0; i < n; ++i) {
          int amax = nbh[i][0], amin = nbh[i][0];
          for (int j : nbh[i]) {
            if (x[j] > x[amax]) amax = j;
            if (x[j] < x[amin]) amin = j;
          }
          if (mode == 0) {
            v[i] += 1.0;
            v[amin] -= 1.0;
          } else if (mode == 1) {
            v[amax] += 1.0;
            v[i] -= 1.0;
          } else {
            v[amax] += 1.0;
            v[amin] -= 1.0;
          }
        }
        return v;
      }};
}

// ---------------------------------------------------------------------------
// Discrete factories
// ---------------------------------------------------------------------------

SetFunction cut_function(const Graph& g) {
  Graph gc = g;
  return SetFunction::from_callback(DomainKind::Powerset, g.n(), 1,
                                    [gc](const SetTuple& t) { return gc.cut_weight(t.parts[0].pos); });
}

SetFunction volume_function(const Graph& g) {
  Graph gc = g;
  return SetFunction::from_callback(DomainKind::Powerset, g.n(), 1,
                                    [gc](const SetTuple& t) { return gc.volume(t.parts[0].pos); });
}

SetFunction cardinality_function(int n) {
  return SetFunction::from_callback(DomainKind::Powerset, n, 1, [](const SetTuple& t) {
    return static_cast<double>(popcount(t.parts[0].pos));
  });
}

SetFunction constant_one(int n, DomainKind kind) {
  return SetFunction::from_callback(kind, n, 1, [](const SetTuple& t) {
    return t.all_empty() ? 0.0 : 1.0;
  });
}

SetFunction pair_cut_sym_function(const Graph& g) {
  Graph gc = g;
  return SetFunction::from_callback(DomainKind::DisjointPair, g.n(), 1, [gc](const SetTuple& t) {
    return gc.cut_weight(t.parts[0].pos) + gc.cut_weight(t.parts[0].neg);
  });
}

SetFunction modularity_function(const Graph& g) {
  Graph gc = g;
  return SetFunction::from_callback(DomainKind::Powerset, g.n(), 1, [gc](const SetTuple& t) {
    SubsetId a = t.parts[0].pos;
    double vol_a = gc.volume(a);
    double inside_ordered = vol_a - gc.cut_weight(a);  // sum_{i,j in A} w_ij
    return inside_ordered - vol_a * vol_a / gc.volume();
  });
}

// ---------------------------------------------------------------------------
// Closed forms
// ---------------------------------------------------------------------------

namespace {

PLFunction pl_power_sum_min(int n, double exponent, Vec weights) {
  // sum over ordered k-tuples of weighted minima: with y the values sorted
  // ascending and W_i the weight of the suffix from position i, the value is
  // sum_i y_i (W_i^k - W_{i+1}^k).
  return PLFunction{
      [n, exponent, weights](ConstSpan x) {
        std::vector<int> ord(n);
        std::iota(ord.begin(), ord.end(), 0);
        std::stable_sort(ord.begin(), ord.end(), [&](int a, int b) { return x[a] < x[b]; });
        std::vector<double> suffix(n + 1, 0.0);
        for (int i = n - 1; i >= 0; --i) suffix[i] = suffix[i + 1] + weights[ord[i]];
        double total = 0.0;
        for (int i = 0; i < n; ++i)
          total += x[ord[i]] * (std::pow(suffix[i], exponent) - std::pow(suffix[i + 1], exponent));
        return total;
      },
      [n, exponent, weights](ConstSpan x) {
        std::vector<int> ord(n);
        std::iota(ord.begin(), ord.end(), 0);
        std::stable_sort(ord.begin(), ord.end(), [&](int a, int b) { return x[a] < x[b]; });
        std::vector<double> suffix(n + 1, 0.0);
        for (int i = n - 1; i >= 0; --i) suffix[i] = suffix[i + 1] + weights[ord[i]];
        Vec v(n, 0.0);
        for (int i = 0; i < n; ++i)
          v[ord[i]] = std::pow(suffix[i], exponent) - std::pow(suffix[i + 1], exponent);
        return v;
      }};
}

PLFunction pl_max_coord(int n, double scale) {
  return PLFunction{[scale](ConstSpan x) { return scale * *std::max_element(x.begin(), x.end()); },
                    [n, scale](ConstSpan x) {
                      Vec v(n, 0.0);
                      int i = static_cast<int>(std::max_element(x.begin(), x.end()) - x.begin());
                      v[i] = scale;
                      return v;
                    }};
}

PLFunction pl_pair_min_abs_edges(const Graph& g) {
  auto edges = g.edges();
  int n = g.n();
  return PLFunction{
      [edges](ConstSpan x) {
        double total = 0.0;
        for (const auto& e : edges) total += e.w * std::min(std::fabs(x[e.u]), std::fabs(x[e.v]));
        return total;
      },
      [edges, n](ConstSpan x) {
        Vec v(n, 0.0);
        for (const auto& e : edges) {
          int pick = std::fabs(x[e.u]) <= std::fabs(x[e.v]) ? e.u : e.v;
          v[pick] += e.w * sign_of(x[pick]);
        }
        return v;
      }};
}

}  // namespace

ClosedForm closed_form(const std::string& id, const Graph& g, double param) {
  const int n = g.n();
  Graph gc = g;
  Vec degrees(n);
  for (int i = 0; i < n; ++i) degrees[i] = g.degree(i);

  if (id == "cut") return {id, cut_function(g), pl_edge_tv(g)};
  if (id == "const") {
    double c = param == 0.0 ? 1.0 : param;
    return {id, SetFunction::from_callback(DomainKind::Powerset, n, 1,
                                           [c](const SetTuple& t) { return t.all_empty() ? 0.0 : c; }),
            pl_max_coord(n, c)};
  }
  if (id == "vol") {
    PLFunction lin{[degrees](ConstSpan x) {
                     double s = 0.0;
                     for (std::size_t i = 0; i < degrees.size(); ++i) s += degrees[i] * x[i];
                     return s;
                   },
                   [degrees](ConstSpan) { return degrees; }};
    return {id, volume_function(g), lin};
  }
  if (id == "vol-min-side") {
    auto f = SetFunction::from_callback(DomainKind::Powerset, n, 1, [gc](const SetTuple& t) {
      SubsetId a = t.parts[0].pos;
      return std::min(gc.volume(a), gc.volume(~a & ((SubsetId{1} << gc.n()) - 1)));
    });
    return {id, std::move(f), pl_centered_l1(degrees)};
  }
  if (id == "split-pairs") {
    auto f = SetFunction::from_callback(DomainKind::Powerset, n, 1, [n](const SetTuple& t) {
      int a = popcount(t.parts[0].pos);
      return static_cast<double>(a) * (n - a);
    });
    return {id, std::move(f), pl_all_pairs_tv(n, 1.0)};
  }
  if (id == "card-pow") {
    double k = param == 0.0 ? 2.0 : param;
    auto f = SetFunction::from_callback(DomainKind::Powerset, n, 1, [k](const SetTuple& t) {
      return std::pow(popcount(t.parts[0].pos), k);
    });
    return {id, std::move(f), pl_power_sum_min(n, k, Vec(n, 1.0))};
  }
  if (id == "vol-pow") {
    double k = param == 0.0 ? 2.0 : param;
    auto f = SetFunction::from_callback(DomainKind::Powerset, n, 1, [gc, k](const SetTuple& t) {
      return std::pow(gc.volume(t.parts[0].pos), k);
    });
    return {id, std::move(f), pl_power_sum_min(n, k, degrees)};
  }
  if (id == "boundary-vertices") {
    auto f = SetFunction::from_callback(DomainKind::Powerset, n, 1, [gc](const SetTuple& t) {
      return static_cast<double>(popcount(gc.vertex_boundary(t.parts[0].pos)));
    });
    return {id, std::move(f), pl_neighborhood_span(g, 2)};
  }

  if (id == "pair-cut-sym") return {id, pair_cut_sym_function(g), pl_edge_tv(g)};
  if (id == "pair-cross-edges") {
    auto f = SetFunction::from_callback(DomainKind::DisjointPair, n, 1, [gc](const SetTuple& t) {
      return gc.between_weight(t.parts[0].pos, t.parts[0].neg);
    });
    PLFunction form = pl_add(pl_scale(pl_weighted_l1(degrees), 0.5),
                             pl_scale(pl_edge_sum_abs(g, 0), -0.5));
    return {id, std::move(f), std::move(form)};
  }
  if (id == "pair-const") {
    double c = param == 0.0 ? 1.0 : param;
    return {id, SetFunction::from_callback(DomainKind::DisjointPair, n, 1,
                                           [c](const SetTuple& t) { return t.all_empty() ? 0.0 : c; }),
            pl_linf(n, c)};
  }
  if (id == "pair-vol") {
    auto f = SetFunction::from_callback(DomainKind::DisjointPair, n, 1, [gc](const SetTuple& t) {
      return gc.volume(t.parts[0].pos) + gc.volume(t.parts[0].neg);
    });
    return {id, std::move(f), pl_weighted_l1(degrees)};
  }
  if (id == "pair-vol-min-side") {
    auto f = SetFunction::from_callback(DomainKind::DisjointPair, n, 1, [gc](const SetTuple& t) {
      SubsetId full = (SubsetId{1} << gc.n()) - 1;
      SubsetId a = t.parts[0].pos, b = t.parts[0].neg;
      return std::min(gc.volume(a), gc.volume(full & ~a)) +
             std::min(gc.volume(b), gc.volume(full & ~b));
    });
    return {id, std::move(f), pl_centered_l1(degrees)};
  }
  if (id == "pair-inside-edges") {
    auto f = SetFunction::from_callback(DomainKind::DisjointPair, n, 1, [gc](const SetTuple& t) {
      return gc.inside_weight(t.parts[0].support());
    });
    return {id, std::move(f), pl_pair_min_abs_edges(g)};
  }
  if (id == "pair-card-times-inside-edges") {
    auto edges = g.edges();
    auto f = SetFunction::from_callback(DomainKind::DisjointPair, n, 1, [gc](const SetTuple& t) {
      SubsetId u = t.parts[0].support();
      return popcount(u) * gc.inside_weight(u);
    });
    PLFunction form{[edges, n](ConstSpan x) {
                      double total = 0.0;
                      for (int v = 0; v < n; ++v)
                        for (const auto& e : edges)
                          total += e.w * std::min({std::fabs(x[v]), std::fabs(x[e.u]),
                                                   std::fabs(x[e.v])});
                      return total;
                    },
                    [edges, n](ConstSpan x) {
                      Vec grad(n, 0.0);
                      for (int v = 0; v < n; ++v)
                        for (const auto& e : edges) {
                          int pick = v;
                          if (std::fabs(x[e.u]) < std::fabs(x[pick])) pick = e.u;
                          if (std::fabs(x[e.v]) < std::fabs(x[pick])) pick = e.v;
                          grad[pick] += e.w * sign_of(x[pick]);
                        }
                      return grad;
                    }};
    return {id, std::move(f), std::move(form)};
  }
  if (id == "pair-outside-card") {
    auto f = SetFunction::from_callback(DomainKind::DisjointPair, n, 1, [n](const SetTuple& t) {
      int u = popcount(t.parts[0].support());
      return static_cast<double>(u) * (n - u);
    });
    PLFunction form{[n](ConstSpan x) {
                      double total = 0.0;
                      for (int i = 0; i < n; ++i)
                        for (int j = 0; j < i; ++j)
                          total += std::fabs(std::fabs(x[i]) - std::fabs(x[j]));
                      return total;
                    },
                    [n](ConstSpan x) {
                      Vec grad(n, 0.0);
                      for (int i = 0; i < n; ++i)
                        for (int j = 0; j < i; ++j) {
                          double s = sign_of(std::fabs(x[i]) - std::fabs(x[j]));
                          grad[i] += s * sign_of(x[i]);
                          grad[j] -= s * sign_of(x[j]);
                        }
                      return grad;
                    }};
    return {id, std::move(f), std::move(form)};
  }
  throw DomainError("unknown closed form: " + id);
}

std::vector<std::string> closed_form_ids() {
  return {"cut",       "const",          "vol",
          "vol-min-side", "split-pairs", "card-pow",
          "vol-pow",   "boundary-vertices",
          "pair-cut-sym", "pair-cross-edges", "pair-const",
          "pair-vol",  "pair-vol-min-side", "pair-inside-edges",
          "pair-card-times-inside-edges", "pair-outside-card"};
}

// ---------------------------------------------------------------------------
// Instances
// ---------------------------------------------------------------------------

Vec ProblemInstance::indicator(const SetTuple& t) const {
  Vec x(dim, 0.0);
  const int per_block = dim / blocks;
  for (int b = 0; b < t.k(); ++b) {
    for (int i = 0; i < per_block; ++i) {
      if (t.parts[b].pos >> i & 1) x[b * per_block + i] = 1.0;
      if (t.parts[b].neg >> i & 1) x[b * per_block + i] = -1.0;
    }
  }
  return x;
}

namespace {

FeasibleDomain family_all(DomainKind kind, int n, int k = 1) {
  return FeasibleDomain{kind, n, k, nullptr};
}

FeasibleDomain family_proper_subset(int n) {
  SubsetId full = (SubsetId{1} << n) - 1;
  return FeasibleDomain{DomainKind::Powerset, n, 1, [full](const SetTuple& t) {
                          SubsetId a = t.parts[0].pos;
                          return a != 0 && a != full;
                        }};
}

SetFunction pl_restriction_pair_function(const PLFunction& F, int n) {
  // Discrete trace of a closed form on ternary indicators.
  auto eval = F.eval;
  return SetFunction::from_callback(DomainKind::DisjointPair, n, 1, [eval, n](const SetTuple& t) {
    Vec x(n, 0.0);
    for (int i = 0; i < n; ++i) {
      if (t.parts[0].pos >> i & 1) x[i] = 1.0;
      if (t.parts[0].neg >> i & 1) x[i] = -1.0;
    }
    return eval(x);
  });
}

}  // namespace

ProblemInstance maxcut_instance(const Graph& g, double p) {
  if (p < 1.0) throw DomainError("maxcut exponent must satisfy p >= 1");
  ProblemInstance inst;
  inst.id = "maxcut";
  inst.graph = g;
  inst.kind = DomainKind::DisjointPair;
  inst.dim = g.n();
  inst.sense = OptSense::Max;
  inst.params["p"] = p;
  const int n = g.n();
  Graph gc = g;
  if (p == 1.0) {
    inst.F1 = pl_edge_tv(g);
    inst.G1 = pl_linf(n, 2.0);
    inst.f = pair_cut_sym_function(g);
    inst.g = SetFunction::scale(constant_one(n, DomainKind::DisjointPair), 2.0);
    inst.dc_traces_exact = true;
  } else {
    auto edges = g.edges();
    inst.F1 = PLFunction{[edges, p](ConstSpan x) {
                           double t = 0.0;
                           for (const auto& e : edges)
                             t += e.w * std::pow(std::fabs(x[e.u] - x[e.v]), p);
                           return t;
                         },
                         nullptr, p};
    inst.G1 = PLFunction{[p](ConstSpan x) { return std::pow(2.0 * linf(x), p); }, nullptr, p};
    auto F1eval = inst.F1.eval;
    inst.f = pl_restriction_pair_function(PLFunction{F1eval, nullptr}, n);
    inst.g = SetFunction::scale(constant_one(n, DomainKind::DisjointPair), std::pow(2.0, p));
  }
  inst.family = family_all(DomainKind::DisjointPair, n);
  auto edges = g.edges();
  inst.extra_forms["dual-numerator"] = [edges, p](ConstSpan x) {
    double t = 0.0;
    for (const auto& e : edges)
      t += e.w * std::pow(std::fabs(x[e.u]) + std::fabs(x[e.v]) - std::fabs(x[e.u] + x[e.v]), p);
    return t;
  };
  return inst;
}

ProblemInstance mincut_instance(const Graph& g) {
  ProblemInstance inst = maxcut_instance(g, 1.0);
  inst.id = "mincut";
  inst.sense = OptSense::Min;
  inst.params.clear();
  const int n = g.n();
  inst.family = FeasibleDomain{DomainKind::DisjointPair, n, 1, [](const SetTuple& t) {
                                 const SetPair& p = t.parts[0];
                                 if (p.empty()) return true;  // carries no measure
                                 return p.pos != 0 && p.neg != 0;
                               }};
  inst.project_feasible = [](Vec& x) {
    double mx = *std::max_element(x.begin(), x.end());
    double mn = *std::min_element(x.begin(), x.end());
    double shift = (mx + mn) / 2.0;
    for (double& v : x) v -= shift;
  };
  inst.extra_forms.clear();
  return inst;
}

ProblemInstance max_kcut_instance(const Graph& g, int k, bool with_union_boundary) {
  if (k < 2 || k > g.n()) throw DomainError("max k-cut needs 2 <= k <= n");
  ProblemInstance inst;
  inst.id = "max-k-cut";
  inst.graph = g;
  inst.kind = DomainKind::KWay;
  inst.blocks = k;
  inst.dim = g.n() * k;
  inst.sense = OptSense::Max;
  inst.params["k"] = k;
  inst.params["union-boundary"] = with_union_boundary ? 1.0 : 0.0;
  // The block objective sums per-block boundaries, which counts every
  // between-block edge from both sides; the cut-edge count is half of it.
  inst.params["report-scale"] = 0.5;
  const int n = g.n();
  Graph gc = g;
  auto edges = g.edges();

  inst.f = SetFunction::from_callback(
      DomainKind::KWay, n, k, [gc, with_union_boundary](const SetTuple& t) {
        double total = 0.0;
        SubsetId all = 0;
        for (const auto& p : t.parts) {
          total += gc.cut_weight(p.pos);
          all |= p.pos;
        }
        if (with_union_boundary) total += gc.cut_weight(all);
        return total;
      });
  inst.g = SetFunction::from_callback(DomainKind::KWay, n, k, [](const SetTuple& t) {
    return t.all_empty() ? 0.0 : 1.0;
  });
  inst.family = FeasibleDomain{DomainKind::KWay, n, k, [](const SetTuple& t) {
                                 SubsetId seen = 0;
                                 for (const auto& p : t.parts) {
                                   if (seen & p.pos) return false;
                                   seen |= p.pos;
                                 }
                                 return true;
                               }};
  inst.F1 = PLFunction{
      [edges, n, k, with_union_boundary](ConstSpan x) {
        double total = 0.0;
        for (int b = 0; b < k; ++b)
          for (const auto& e : edges)
            total += e.w * std::fabs(x[b * n + e.u] - x[b * n + e.v]);
        if (with_union_boundary) {
          for (const auto& e : edges) {
            double mu = -std::numeric_limits<double>::infinity();
            double mv = mu;
            for (int b = 0; b < k; ++b) {
              mu = std::max(mu, x[b * n + e.u]);
              mv = std::max(mv, x[b * n + e.v]);
            }
            total += e.w * std::fabs(mu - mv);
          }
        }
        return total;
      },
      nullptr};
  inst.G1 = PLFunction{[](ConstSpan x) { return *std::max_element(x.begin(), x.end()); }, nullptr};
  // Signed variant over 2 max_l ||x^l||_inf (its disjoint-support optimum can
  // split each block into two classes, so it matches a finer cut).
  inst.extra_forms["signed-numerator"] = inst.F1.eval;
  return inst;
}

ProblemInstance cheeger_instance(const Graph& g) {
  ProblemInstance inst;
  inst.id = "cheeger";
  inst.graph = g;
  inst.kind = DomainKind::Powerset;
  inst.dim = g.n();
  inst.sense = OptSense::Min;
  const int n = g.n();
  Graph gc = g;
  Vec degrees(n);
  for (int i = 0; i < n; ++i) degrees[i] = g.degree(i);
  inst.f = cut_function(g);
  inst.g = SetFunction::from_callback(DomainKind::Powerset, n, 1, [gc](const SetTuple& t) {
    SubsetId a = t.parts[0].pos;
    SubsetId full = (SubsetId{1} << gc.n()) - 1;
    return std::min(gc.volume(a), gc.volume(full & ~a));
  });
  inst.family = family_proper_subset(n);
  inst.F1 = pl_edge_tv(g);
  inst.G1 = pl_centered_l1(degrees);
  inst.dc_traces_exact = true;
  return inst;
}

ProblemInstance dirichlet_cheeger_instance(const Graph& g, SubsetId a) {
  if (a == 0) throw DomainError("Dirichlet domain must be nonempty");
  ProblemInstance inst;
  std::vector<int> keep = subset_vertices(a, g.n());
  const int m = static_cast<int>(keep.size());
  // Ground set = A; boundary penalties p_i = weight from i into V \ A.
  Vec penalty(m, 0.0), full_degree(m, 0.0);
  std::vector<Graph::Edge> inner;
  std::vector<int> new_id(g.n(), -1);
  for (int i = 0; i < m; ++i) new_id[keep[i]] = i;
  for (const auto& e : g.edges()) {
    bool ua = new_id[e.u] >= 0, va = new_id[e.v] >= 0;
    if (ua && va) inner.push_back({new_id[e.u], new_id[e.v], e.w, e.sign});
    if (ua && !va) penalty[new_id[e.u]] += e.w;
    if (va && !ua) penalty[new_id[e.v]] += e.w;
  }
  for (int i = 0; i < m; ++i) full_degree[i] = g.degree(keep[i]);
  Graph sub(std::max(m, 1), inner);

  inst.id = "dirichlet-cheeger";
  inst.graph = g;
  inst.kind = DomainKind::DisjointPair;
  inst.dim = m;
  inst.sense = OptSense::Min;
  inst.params["subset"] = static_cast<double>(a);
  inst.F1 = pl_add(pl_edge_tv(sub), pl_weighted_l1(penalty));
  inst.G1 = pl_weighted_l1(full_degree);
  auto F1e = inst.F1.eval;
  inst.f = pl_restriction_pair_function(PLFunction{F1e, nullptr}, m);
  auto G1e = inst.G1.eval;
  inst.g = pl_restriction_pair_function(PLFunction{G1e, nullptr}, m);
  inst.family = family_all(DomainKind::DisjointPair, m);
  inst.dc_traces_exact = true;
  return inst;
}

ProblemInstance neumann_cheeger_instance(const Graph& g, SubsetId a) {
  if (a == 0) throw DomainError("Neumann domain must be nonempty");
  ProblemInstance inst;
  SubsetId closure = a | g.external_boundary(a);
  std::vector<int> keep = subset_vertices(closure, g.n());
  const int m = static_cast<int>(keep.size());
  std::vector<int> new_id(g.n(), -1);
  for (int i = 0; i < m; ++i) new_id[keep[i]] = i;
  SubsetId a_local = 0;
  for (int i = 0; i < m; ++i)
    if (a >> keep[i] & 1) a_local |= SubsetId{1} << i;
  // Edges incident to A only (both endpoints in the closure by construction).
  std::vector<Graph::Edge> inc;
  for (const auto& e : g.edges()) {
    bool ua = a >> e.u & 1, va = a >> e.v & 1;
    if (ua || va) inc.push_back({new_id[e.u], new_id[e.v], e.w, e.sign});
  }
  Graph sub(std::max(m, 1), inc);
  Vec a_degree(m, 0.0);
  for (int i = 0; i < m; ++i)
    if (a_local >> i & 1) a_degree[i] = g.degree(keep[i]);

  inst.id = "neumann-cheeger";
  inst.graph = g;
  inst.kind = DomainKind::Powerset;
  inst.dim = m;
  inst.sense = OptSense::Min;
  inst.params["subset"] = static_cast<double>(a);
  inst.F1 = pl_edge_tv(sub);
  inst.G1 = pl_centered_l1(a_degree);
  Graph subc = sub;
  Vec adeg = a_degree;
  inst.f = SetFunction::from_callback(DomainKind::Powerset, m, 1, [subc](const SetTuple& t) {
    return subc.cut_weight(t.parts[0].pos);
  });
  inst.g = SetFunction::from_callback(DomainKind::Powerset, m, 1, [adeg, a_local, m](const SetTuple& t) {
    SubsetId s = t.parts[0].pos;
    double in_vol = 0.0, out_vol = 0.0;
    for (int i = 0; i < m; ++i) {
      if (!(a_local >> i & 1)) continue;
      if (s >> i & 1)
        in_vol += adeg[i];
      else
        out_vol += adeg[i];
    }
    return std::min(in_vol, out_vol);
  });
  inst.family = FeasibleDomain{DomainKind::Powerset, m, 1, [a_local](const SetTuple& t) {
                                 SubsetId s = t.parts[0].pos;
                                 SubsetId in_a = s & a_local;
                                 return in_a != 0 && in_a != a_local;
                               }};
  inst.dc_traces_exact = true;
  return inst;
}

ProblemInstance independence_instance(const Graph& g, IndependenceForm form) {
  if (!g.is_unit_weighted()) throw DomainError("independence number requires a unit-weight graph");
  ProblemInstance inst;
  inst.id = "independence";
  inst.graph = g;
  inst.kind = DomainKind::DisjointPair;
  inst.dim = g.n();
  inst.sense = OptSense::Max;
  const int n = g.n();
  Graph gc = g;
  auto edges = g.edges();
  inst.params["form"] = form == IndependenceForm::Product ? 0.0 : 1.0;

  if (form == IndependenceForm::Difference) {
    // F = I^- + I^+ - 2 sum (deg_i - 1)|x_i|, G = 2 ||x||_inf.
    Vec plus_coeff(n, 0.0), minus_coeff(n, 0.0);
    for (int i = 0; i < n; ++i) {
      double a = g.degree(i) - 1.0;
      (a >= 0.0 ? minus_coeff : plus_coeff)[i] = 2.0 * std::fabs(a);
    }
    inst.F1 = pl_add(pl_add(pl_edge_tv(g), pl_edge_sum_abs(g, 0)), pl_weighted_l1(plus_coeff));
    inst.F2 = pl_weighted_l1(minus_coeff);
    inst.G1 = pl_linf(n, 2.0);
    inst.f = SetFunction::from_callback(DomainKind::DisjointPair, n, 1, [gc](const SetTuple& t) {
      SubsetId u = t.parts[0].support();
      return 2.0 * (popcount(u) - gc.inside_weight(u));
    });
    inst.g = SetFunction::scale(constant_one(n, DomainKind::DisjointPair), 2.0);
  } else {
    // F = ||x||_1 - sum_{k, i~j} min(|x_k|, |x_i|, |x_j|), G = ||x||_inf.
    inst.F1 = pl_weighted_l1(Vec(n, 1.0));
    inst.F2 = closed_form("pair-card-times-inside-edges", g).form;
    inst.G1 = pl_linf(n, 1.0);
    inst.f = SetFunction::from_callback(DomainKind::DisjointPair, n, 1, [gc](const SetTuple& t) {
      SubsetId u = t.parts[0].support();
      return popcount(u) * (1.0 - gc.inside_weight(u));
    });
    inst.g = constant_one(n, DomainKind::DisjointPair);
  }
  inst.family = family_all(DomainKind::DisjointPair, n);
  inst.dc_traces_exact = true;
  return inst;
}

ProblemInstance matching_instance(const Graph& g) {
  Graph line = g.line_graph();
  ProblemInstance inst = independence_instance(line, IndependenceForm::Difference);
  inst.id = "matching";
  inst.graph = g;
  inst.dim = line.n();
  // Quoted ratio objective on edge space: ||y||_1^2 / (||y||_1^2 - 2 sum_{e
  // disjoint from e'} y_e y_e').
  auto edges = g.edges();
  int m = static_cast<int>(edges.size());
  std::vector<std::pair<int, int>> disjoint;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      const auto &a = edges[i], &b = edges[j];
      if (a.u != b.u && a.u != b.v && a.v != b.u && a.v != b.v) disjoint.push_back({i, j});
    }
  inst.extra_forms["ratio-objective"] = [disjoint](ConstSpan y) {
    double l1 = 0.0;
    for (double v : y) l1 += std::fabs(v);
    double cross = 0.0;
    for (auto [i, j] : disjoint) cross += y[i] * y[j];
    return l1 * l1 / (l1 * l1 - 2.0 * cross);
  };
  return inst;
}

ProblemInstance chromatic_instance(const Graph& g) {
  ProblemInstance inst;
  inst.id = "chromatic";
  inst.graph = g;
  inst.kind = DomainKind::KWayDisjointPair;
  const int n = g.n();
  inst.blocks = n;
  inst.dim = n * n;
  inst.sense = OptSense::Min;
  Graph gc = g;
  auto edges = g.edges();
  Vec degrees(n);
  for (int i = 0; i < n; ++i) degrees[i] = g.degree(i);

  inst.f = SetFunction::from_callback(DomainKind::KWayDisjointPair, n, n, [gc, n](const SetTuple& t) {
    double total = 0.0;
    SubsetId all = 0;
    for (const auto& p : t.parts) {
      SubsetId u = p.support();
      if (u != 0) total += 1.0;
      total += n * gc.inside_weight(u);
      all |= u;
    }
    total += static_cast<double>(n) * (n - popcount(all));
    return total;
  });
  inst.g = SetFunction::from_callback(DomainKind::KWayDisjointPair, n, n, [](const SetTuple& t) {
    return t.all_empty() ? 0.0 : 1.0;
  });
  inst.family = family_all(DomainKind::KWayDisjointPair, n, n);

  // F1 = n^2 ||x||_inf + n sum_{ij} deg_j |x_{ij}| + sum_i ||x^i||_inf,
  // F2 = (n/2) sum_i sum_{j~j'} (|x_ij + x_ij'| + |x_ij - x_ij'|)
  //      + n sum_j ||x^{,j}||_inf.
  inst.F1 = PLFunction{[n, degrees](ConstSpan x) {
                         double total = n * static_cast<double>(n) * linf(x);
                         for (int i = 0; i < n; ++i)
                           for (int j = 0; j < n; ++j)
                             total += n * degrees[j] * std::fabs(x[i * n + j]);
                         for (int i = 0; i < n; ++i) {
                           double m = 0.0;
                           for (int j = 0; j < n; ++j) m = std::max(m, std::fabs(x[i * n + j]));
                           total += m;
                         }
                         return total;
                       },
                       nullptr};
  inst.F2 = PLFunction{[n, edges](ConstSpan x) {
                         double total = 0.0;
                         for (int i = 0; i < n; ++i)
                           for (const auto& e : edges) {
                             double a = x[i * n + e.u], b = x[i * n + e.v];
                             total += 0.5 * n * e.w * (std::fabs(a + b) + std::fabs(a - b));
                           }
                         for (int j = 0; j < n; ++j) {
                           double m = 0.0;
                           for (int i = 0; i < n; ++i) m = std::max(m, std::fabs(x[i * n + j]));
                           total += n * m;
                         }
                         return total;
                       },
                       nullptr};
  inst.G1 = pl_linf(n * n, 1.0);
  inst.dc_traces_exact = true;
  return inst;
}

ProblemInstance frustration_instance(const Graph& g) {
  ProblemInstance inst;
  inst.id = "frustration";
  inst.graph = g;
  inst.kind = DomainKind::DisjointPair;
  inst.dim = g.n();
  inst.sense = OptSense::Min;
  const int n = g.n();
  Graph gc = g;
  auto edges = g.edges();
  double neg_weight = 0.0;
  for (const auto& e : edges)
    if (e.sign < 0) neg_weight += e.w;
  inst.params["negative-weight"] = neg_weight;

  inst.F1 = pl_edge_tv_signed(g, +1);
  inst.F2 = pl_edge_tv_signed(g, -1);
  inst.G1 = pl_linf(n, 2.0);
  inst.f = SetFunction::from_callback(DomainKind::DisjointPair, n, 1, [gc](const SetTuple& t) {
    const SetPair& p = t.parts[0];
    double total = 0.0;
    for (const auto& e : gc.edges()) {
      double xu = (p.pos >> e.u & 1) ? 1.0 : ((p.neg >> e.u & 1) ? -1.0 : 0.0);
      double xv = (p.pos >> e.v & 1) ? 1.0 : ((p.neg >> e.v & 1) ? -1.0 : 0.0);
      total += e.sign * e.w * std::fabs(xu - xv);
    }
    return total;
  });
  inst.g = SetFunction::scale(constant_one(n, DomainKind::DisjointPair), 2.0);
  inst.family = family_all(DomainKind::DisjointPair, n);
  inst.dc_traces_exact = true;

  // Eigen-problem numerator and the alpha-power family.
  auto eig = pl_add(pl_edge_tv_signed(g, +1), pl_edge_sum_abs(g, -1));
  inst.extra_forms["eigen-numerator"] = eig.eval;
  inst.extra_forms["alpha-power-0.5"] = [edges](ConstSpan x) {
    double m = linf(x);
    double total = 0.0;
    for (const auto& e : edges) {
      double d = std::fabs(x[e.u] - x[e.v]);
      total += e.w * std::sqrt(e.sign > 0 ? d : std::max(0.0, 2.0 * m - d));
    }
    return total / std::sqrt(2.0 * m);
  };
  inst.extra_forms["sign-form"] = [edges](ConstSpan x) {
    double m = linf(x);
    double total = 0.0;
    for (const auto& e : edges) {
      double d = std::fabs(x[e.u] - x[e.v]);
      total += e.w * (e.sign > 0 ? (d > 0.0 ? 1.0 : 0.0) : (2.0 * m - d > 0.0 ? 1.0 : 0.0));
    }
    return total;
  };
  return inst;
}

ProblemInstance modularity_instance(const Graph& g) {
  ProblemInstance inst;
  inst.id = "modularity";
  inst.graph = g;
  inst.kind = DomainKind::DisjointPair;
  inst.dim = g.n();
  inst.sense = OptSense::Max;
  const int n = g.n();
  if (g.volume() <= 0.0) throw DomainError("modularity requires positive total volume");
  Vec plus(static_cast<std::size_t>(n) * n, 0.0), minus(plus);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double a = g.degree(i) * g.degree(j) / g.volume() - g.weight(i, j);
      if (a >= 0.0)
        plus[static_cast<std::size_t>(i) * n + j] = 2.0 * a;
      else
        minus[static_cast<std::size_t>(i) * n + j] = -2.0 * a;
    }
  inst.F1 = pl_complete_tv(plus, n);
  inst.F2 = pl_complete_tv(minus, n);
  inst.G1 = pl_linf(n, 4.0);
  Vec pl = plus, mi = minus;
  inst.f = SetFunction::from_callback(DomainKind::DisjointPair, n, 1, [pl, mi, n](const SetTuple& t) {
    const SetPair& p = t.parts[0];
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
      double xi = (p.pos >> i & 1) ? 1.0 : ((p.neg >> i & 1) ? -1.0 : 0.0);
      for (int j = i + 1; j < n; ++j) {
        double xj = (p.pos >> j & 1) ? 1.0 : ((p.neg >> j & 1) ? -1.0 : 0.0);
        std::size_t idx = static_cast<std::size_t>(i) * n + j;
        total += (pl[idx] - mi[idx]) * std::fabs(xi - xj);
      }
    }
    return total;
  });
  inst.g = SetFunction::scale(constant_one(n, DomainKind::DisjointPair), 4.0);
  inst.family = family_all(DomainKind::DisjointPair, n);
  inst.dc_traces_exact = true;
  return inst;
}

ProblemInstance normalized_cut_instance(const Graph& g) {
  ProblemInstance inst;
  inst.id = "normalized-cut";
  inst.graph = g;
  inst.kind = DomainKind::Powerset;
  inst.dim = g.n();
  inst.sense = OptSense::Min;
  const int n = g.n();
  inst.f = cut_function(g);
  inst.g = closed_form("split-pairs", g).discrete;
  inst.family = family_proper_subset(n);
  inst.F1 = pl_edge_tv(g);
  inst.G1 = pl_all_pairs_tv(n, 1.0);
  inst.dc_traces_exact = true;
  return inst;
}

ProblemInstance sparsest_cut_instance(const Graph& g, const std::vector<double>& mu) {
  const int n = g.n();
  std::size_t want = static_cast<std::size_t>(n) * (n - 1) / 2;
  if (mu.size() != want) throw DomainError("mu must list one weight per vertex pair (i < j)");
  for (double m : mu)
    if (m < 0.0) throw DomainError("mu weights must be nonnegative");
  ProblemInstance inst;
  inst.id = "sparsest-cut";
  inst.graph = g;
  inst.kind = DomainKind::Powerset;
  inst.dim = n;
  inst.sense = OptSense::Min;
  Vec coeffs(static_cast<std::size_t>(n) * n, 0.0);
  std::size_t idx = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) coeffs[static_cast<std::size_t>(i) * n + j] = mu[idx++];
  inst.f = cut_function(g);
  Vec cc = coeffs;
  inst.g = SetFunction::from_callback(DomainKind::Powerset, n, 1, [cc, n](const SetTuple& t) {
    SubsetId a = t.parts[0].pos;
    double total = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (((a >> i) & 1) != ((a >> j) & 1)) total += cc[static_cast<std::size_t>(i) * n + j];
    return total;
  });
  inst.family = family_proper_subset(n);
  inst.F1 = pl_edge_tv(g);
  inst.G1 = pl_complete_tv(coeffs, n);
  inst.dc_traces_exact = true;
  return inst;
}

ProblemInstance isoperimetric_profile_instance(const Graph& g, int k) {
  if (k < 1 || k > g.n()) throw DomainError("profile parameter must satisfy 1 <= k <= n");
  ProblemInstance inst;
  inst.id = "isoperimetric";
  inst.graph = g;
  inst.kind = DomainKind::Powerset;
  inst.dim = g.n();
  inst.sense = OptSense::Min;
  inst.params["k"] = k;
  const int n = g.n();
  inst.f = cut_function(g);
  inst.g = cardinality_function(n);
  inst.family = FeasibleDomain{DomainKind::Powerset, n, 1, [k](const SetTuple& t) {
                                 return popcount(t.parts[0].pos) <= k;
                               }};
  inst.F1 = pl_edge_tv(g);
  inst.G1 = pl_weighted_l1(Vec(n, 1.0));
  return inst;
}

ProblemInstance vertex_boundary_instance(const Graph& g, VertexBoundaryKind kind) {
  ProblemInstance inst;
  inst.graph = g;
  inst.kind = DomainKind::Powerset;
  inst.dim = g.n();
  inst.sense = OptSense::Min;
  const int n = g.n();
  Graph gc = g;
  int mode = kind == VertexBoundaryKind::Internal ? 0 : (kind == VertexBoundaryKind::External ? 1 : 2);
  inst.id = mode == 0 ? "vertex-boundary-int" : (mode == 1 ? "vertex-boundary-ext" : "vertex-boundary-ver");
  inst.f = SetFunction::from_callback(DomainKind::Powerset, n, 1, [gc, mode](const SetTuple& t) {
    SubsetId a = t.parts[0].pos;
    SubsetId b = mode == 0 ? gc.internal_boundary(a)
                           : (mode == 1 ? gc.external_boundary(a) : gc.vertex_boundary(a));
    return static_cast<double>(popcount(b));
  });
  inst.g = SetFunction::from_callback(DomainKind::Powerset, n, 1, [n](const SetTuple& t) {
    int a = popcount(t.parts[0].pos);
    return static_cast<double>(std::min(a, n - a));
  });
  inst.family = family_proper_subset(n);
  inst.F1 = pl_neighborhood_span(g, mode);
  inst.G1 = pl_centered_l1(Vec(n, 1.0));
  inst.dc_traces_exact = true;

  // Poincare quotient numerator (neighbors only, without i itself).
  std::vector<std::vector<int>> nbh(n);
  for (int i = 0; i < n; ++i) nbh[i] = g.neighbors(i);
  inst.extra_forms["poincare-numerator"] = [nbh, n](ConstSpan x) {
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
      double m = 0.0;
      for (int j : nbh[i]) m = std::max(m, std::fabs(x[i] - x[j]));
      total += m;
    }
    return total;
  };
  // Disjoint-pair extensions of the three vertex-boundary counts.
  inst.extra_forms["pair-extension"] = [nbh, n, mode](ConstSpan x) {
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
      double mx = std::fabs(x[i]), mn = std::fabs(x[i]);
      for (int j : nbh[i]) {
        mx = std::max(mx, std::fabs(x[j]));
        mn = std::min(mn, std::fabs(x[j]));
      }
      if (mode == 0)
        total += std::fabs(x[i]) - mn;
      else if (mode == 1)
        total += mx - std::fabs(x[i]);
      else
        total += mx - mn;
    }
    return total;
  };
  return inst;
}

ProblemInstance cheeger_like_instance(const Graph& g) {
  ProblemInstance inst;
  inst.id = "cheeger-like";
  inst.graph = g;
  inst.kind = DomainKind::Powerset;
  const int n = g.n();
  const int m = static_cast<int>(g.edges().size());
  inst.dim = m;
  inst.sense = OptSense::Max;
  auto edges = g.edges();
  Vec c(n);
  for (int i = 0; i < n; ++i) c[i] = g.degree(i) > 0.0 ? 1.0 / g.degree(i) : 0.0;

  inst.f = SetFunction::from_callback(DomainKind::Powerset, m, 1, [edges, c](const SetTuple& t) {
    double total = 0.0;
    for (std::size_t e = 0; e < edges.size(); ++e)
      if (t.parts[0].pos >> e & 1) total += c[edges[e].u] + c[edges[e].v];
    return total;
  });
  inst.g = cardinality_function(m);
  inst.family = FeasibleDomain{DomainKind::Powerset, m, 1, nullptr};
  inst.F1 = PLFunction{[edges, c, n](ConstSpan y) {
                         Vec flow(n, 0.0);
                         for (std::size_t e = 0; e < edges.size(); ++e) {
                           flow[edges[e].u] += y[e];
                           flow[edges[e].v] += y[e];
                         }
                         double total = 0.0;
                         for (int i = 0; i < n; ++i) total += c[i] * std::fabs(flow[i]);
                         return total;
                       },
                       nullptr};
  inst.G1 = pl_weighted_l1(Vec(m, 1.0));
  return inst;
}

ProblemInstance dual_cheeger_instance(const Graph& g) {
  ProblemInstance inst;
  inst.id = "dual-cheeger";
  inst.graph = g;
  inst.kind = DomainKind::DisjointPair;
  inst.dim = g.n();
  inst.sense = OptSense::Max;
  const int n = g.n();
  Graph gc = g;
  auto edges = g.edges();
  Vec degrees(n);
  for (int i = 0; i < n; ++i) degrees[i] = g.degree(i);
  inst.f = SetFunction::from_callback(DomainKind::DisjointPair, n, 1, [gc](const SetTuple& t) {
    return 2.0 * gc.between_weight(t.parts[0].pos, t.parts[0].neg);
  });
  inst.g = SetFunction::from_callback(DomainKind::DisjointPair, n, 1, [gc](const SetTuple& t) {
    return gc.volume(t.parts[0].support());
  });
  inst.family = family_all(DomainKind::DisjointPair, n);
  inst.F1 = PLFunction{[edges](ConstSpan x) {
                         double total = 0.0;
                         for (const auto& e : edges)
                           total += e.w * (std::fabs(x[e.u]) + std::fabs(x[e.v]) -
                                           std::fabs(x[e.u] + x[e.v]));
                         return total;
                       },
                       [edges, n](ConstSpan x) {
                         Vec v(n, 0.0);
                         for (const auto& e : edges) {
                           double s = sign_of(x[e.u] + x[e.v]);
                           v[e.u] += e.w * (sign_of(x[e.u]) - s);
                           v[e.v] += e.w * (sign_of(x[e.v]) - s);
                         }
                         return v;
                       }};
  inst.G1 = pl_weighted_l1(degrees);
  inst.dc_traces_exact = true;
  return inst;
}

VertexCoverProblem vertex_cover_instance(const Graph& g, SetFunction cost) {
  if (cost.kind() != DomainKind::Powerset || cost.n() != g.n())
    throw DomainError("cover cost must be a powerset function on the graph vertices");
  VertexCoverProblem out;
  out.cost = cost;
  ProblemInstance& inst = out.instance;
  inst.id = "vertex-cover";
  inst.graph = g;
  inst.kind = DomainKind::Powerset;
  inst.dim = g.n();
  inst.sense = OptSense::Min;
  const int n = g.n();
  Graph gc = g;
  inst.f = cost;
  inst.g = constant_one(n, DomainKind::Powerset);
  inst.family = FeasibleDomain{DomainKind::Powerset, n, 1, [gc](const SetTuple& t) {
                                 SubsetId a = t.parts[0].pos;
                                 if (a == 0) return true;  // no measure at the origin
                                 for (const auto& e : gc.edges())
                                   if (!((a >> e.u & 1) || (a >> e.v & 1))) return false;
                                 return true;
                               }};
  SetFunction costc = cost;
  inst.F1 = PLFunction{[costc](ConstSpan x) { return eval_original(costc, x).value; },
                       [costc](ConstSpan x) { return eval_original(costc, x).subgradient; }};
  inst.G1 = pl_max_coord(n, 1.0);
  inst.dc_traces_exact = true;
  return out;
}

MultiwayPartitionProblem multiway_partition_instance(const Graph& g, SetFunction cost,
                                                     std::vector<int> terminals) {
  if (terminals.empty()) throw DomainError("need at least one terminal");
  if (static_cast<int>(terminals.size()) > g.n()) throw DomainError("more terminals than vertices");
  for (std::size_t i = 0; i < terminals.size(); ++i)
    for (std::size_t j = i + 1; j < terminals.size(); ++j)
      if (terminals[i] == terminals[j]) throw DomainError("terminals must be distinct");
  return MultiwayPartitionProblem{g, std::move(cost), std::move(terminals)};
}

// ---------------------------------------------------------------------------
// Dispatch and oracles
// ---------------------------------------------------------------------------

ProblemInstance instance_by_id(const std::string& id, const Graph& g,
                               const std::map<std::string, double>& params) {
  auto get = [&params](const std::string& key, double fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
  };
  if (id == "maxcut") return maxcut_instance(g, get("p", 1.0));
  if (id == "mincut") return mincut_instance(g);
  if (id == "max-k-cut")
    return max_kcut_instance(g, static_cast<int>(get("k", 2)), get("union-boundary", 0) != 0);
  if (id == "cheeger") return cheeger_instance(g);
  if (id == "dirichlet-cheeger")
    return dirichlet_cheeger_instance(g, static_cast<SubsetId>(get("subset", 1)));
  if (id == "neumann-cheeger")
    return neumann_cheeger_instance(g, static_cast<SubsetId>(get("subset", 1)));
  if (id == "independence")
    return independence_instance(
        g, get("form", 1) == 0 ? IndependenceForm::Product : IndependenceForm::Difference);
  if (id == "matching") return matching_instance(g);
  if (id == "chromatic") return chromatic_instance(g);
  if (id == "frustration") return frustration_instance(g);
  if (id == "modularity") return modularity_instance(g);
  if (id == "normalized-cut") return normalized_cut_instance(g);
  if (id == "sparsest-cut") {
    std::size_t want = static_cast<std::size_t>(g.n()) * (g.n() - 1) / 2;
    return sparsest_cut_instance(g, std::vector<double>(want, get("mu", 1.0)));
  }
  if (id == "isoperimetric") return isoperimetric_profile_instance(g, static_cast<int>(get("k", 1)));
  if (id == "vertex-boundary-int") return vertex_boundary_instance(g, VertexBoundaryKind::Internal);
  if (id == "vertex-boundary-ext") return vertex_boundary_instance(g, VertexBoundaryKind::External);
  if (id == "vertex-boundary-ver") return vertex_boundary_instance(g, VertexBoundaryKind::Both);
  if (id == "cheeger-like") return cheeger_like_instance(g);
  if (id == "dual-cheeger") return dual_cheeger_instance(g);
  if (id == "vertex-cover") return vertex_cover_instance(g, cardinality_function(g.n())).instance;
  throw DomainError("unknown problem id: " + id);
}

std::vector<std::string> instance_ids() {
  return {"maxcut",      "mincut",       "max-k-cut",   "cheeger",
          "dirichlet-cheeger", "neumann-cheeger", "independence", "matching",
          "chromatic",   "frustration",  "modularity",  "normalized-cut",
          "sparsest-cut", "isoperimetric", "vertex-boundary-int",
          "vertex-boundary-ext", "vertex-boundary-ver", "cheeger-like",
          "dual-cheeger", "vertex-cover"};
}

OracleResult oracle_optimum(const ProblemInstance& inst) {
  if (inst.kind == DomainKind::Powerset || inst.kind == DomainKind::DisjointPair)
    return optimize_subsets(inst.f, &inst.g, inst.sense, &inst.family);
  if (inst.id == "max-k-cut") {
    Graph gc = inst.graph;
    int k = static_cast<int>(inst.params.at("k"));
    bool ub = inst.params.at("union-boundary") != 0.0;
    return optimize_partitions(
        [&gc, ub](const std::vector<SubsetId>& blocks) {
          double total = 0.0;
          SubsetId all = 0;
          for (SubsetId b : blocks) {
            total += gc.cut_weight(b);
            all |= b;
          }
          if (ub) total += gc.cut_weight(all);
          return total;
        },
        gc.n(), k, OptSense::Max);
  }
  if (inst.id == "chromatic") {
    Graph gc = inst.graph;
    const int n = gc.n();
    return optimize_partitions(
        [&gc, n](const std::vector<SubsetId>& blocks) {
          double total = 0.0;
          for (SubsetId b : blocks) {
            if (b != 0) total += 1.0;
            total += n * gc.inside_weight(b);
          }
          return total;
        },
        n, n, OptSense::Min);
  }
  throw DomainError("no oracle route for instance " + inst.id);
}

double exact_maxcut(const Graph& g) {
  auto cuts = all_cut_values(g);
  return *std::max_element(cuts.begin(), cuts.end());
}

double exact_mincut(const Graph& g) {
  auto cuts = all_cut_values(g);
  double best = std::numeric_limits<double>::infinity();
  for (SubsetId a = 1; a + 1 < cuts.size(); ++a) best = std::min(best, cuts[a]);
  return best;
}

double exact_max_kcut(const Graph& g, int k) {
  return 0.5 * oracle_optimum(max_kcut_instance(g, k)).optimum;
}

double exact_independence_number(const Graph& g) {
  double best = 0.0;
  for (SubsetId a = 0; a < (SubsetId{1} << g.n()); ++a)
    if (g.inside_weight(a) == 0.0) best = std::max(best, static_cast<double>(popcount(a)));
  return best;
}

double exact_chromatic_number(const Graph& g) { return oracle_optimum(chromatic_instance(g)).optimum; }

double exact_matching_number(const Graph& g) { return exact_independence_number(g.line_graph()); }

double exact_frustration_index(const Graph& g) {
  double best = std::numeric_limits<double>::infinity();
  for (SubsetId a = 0; a < (SubsetId{1} << g.n()); ++a)
    best = std::min(best, g.frustrated_weight(a));
  return best;
}

double exact_modularity_max(const Graph& g) {
  SetFunction q = modularity_function(g);
  double best = 0.0;
  for (SubsetId a = 0; a < (SubsetId{1} << g.n()); ++a) best = std::max(best, q.eval(a));
  return best;
}

double exact_cheeger_constant(const Graph& g) {
  return oracle_optimum(cheeger_instance(g)).optimum;
}

double exact_vertex_cover_number(const Graph& g) {
  double best = std::numeric_limits<double>::infinity();
  for (SubsetId a = 0; a < (SubsetId{1} << g.n()); ++a) {
    bool cover = true;
    for (const auto& e : g.edges())
      if (!((a >> e.u & 1) || (a >> e.v & 1))) {
        cover = false;
        break;
      }
    if (cover) best = std::min(best, static_cast<double>(popcount(a)));
  }
  return best;
}

}  // namespace lovx
