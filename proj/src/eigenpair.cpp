#include "lovx/eigenpair.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace lovx {

namespace {

double dot(ConstSpan a, ConstSpan b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(ConstSpan a) { return std::sqrt(dot(a, a)); }

/// Solves the (m+1) x (m+1) KKT system for the affine minimum-norm point:
/// B alpha + mu 1 = 0, sum alpha = 1, with a small ridge for degenerate
/// corrals.  Returns the alpha weights.
Vec affine_min_norm(const std::vector<Vec>& corral) {
  const int m = static_cast<int>(corral.size());
  std::vector<Vec> a(m + 1, Vec(m + 2, 0.0));
  double trace = 0.0;
  for (int i = 0; i < m; ++i) trace += dot(corral[i], corral[i]);
  double ridge = 1e-12 * (trace / m + 1.0);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) a[i][j] = dot(corral[i], corral[j]);
    a[i][i] += ridge;
    a[i][m] = 1.0;      // mu column
    a[i][m + 1] = 0.0;  // rhs
  }
  for (int j = 0; j < m; ++j) a[m][j] = 1.0;
  a[m][m] = 0.0;
  a[m][m + 1] = 1.0;

  // Gaussian elimination with partial pivoting.
  const int dim = m + 1;
  for (int col = 0; col < dim; ++col) {
    int pivot = col;
    for (int r = col + 1; r < dim; ++r)
      if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) pivot = r;
    std::swap(a[col], a[pivot]);
    double p = a[col][col];
    if (std::fabs(p) < 1e-300) p = 1e-300;
    for (int r = 0; r < dim; ++r) {
      if (r == col) continue;
      double factor = a[r][col] / p;
      if (factor == 0.0) continue;
      for (int c = col; c <= dim; ++c) a[r][c] -= factor * a[col][c];
    }
  }
  Vec alpha(m);
  for (int i = 0; i < m; ++i) alpha[i] = a[i][m + 1] / a[i][i];
  return alpha;
}

/// A polytope vertex together with an auxiliary payload carried through the
/// corral (here: the numerator-side part of a difference-polytope vertex).
struct TaggedVertex {
  Vec z;
  Vec payload;
};

struct MnpResult {
  Vec point;                         // min-norm point of the polytope
  Vec payload;                       // payload combined with the same weights
  std::vector<TaggedVertex> corral;  // supporting vertices
  Vec weights;                       // convex weights of the corral
};

/// Wolfe's minimum-norm-point algorithm driven by a linear minimization
/// oracle over the vertex set.
MnpResult min_norm_point(const std::function<TaggedVertex(ConstSpan)>& lmo, int dim,
                         int max_iter) {
  MnpResult res;
  Vec zero(dim, 0.0);
  res.corral.push_back(lmo(zero));
  res.weights.assign(1, 1.0);
  res.point = res.corral[0].z;

  auto recombine = [&]() {
    res.point.assign(dim, 0.0);
    res.payload.assign(res.corral[0].payload.size(), 0.0);
    for (std::size_t i = 0; i < res.corral.size(); ++i) {
      for (int d = 0; d < dim; ++d) res.point[d] += res.weights[i] * res.corral[i].z[d];
      for (std::size_t d = 0; d < res.payload.size(); ++d)
        res.payload[d] += res.weights[i] * res.corral[i].payload[d];
    }
  };
  recombine();

  for (int iter = 0; iter < max_iter; ++iter) {
    TaggedVertex q = lmo(res.point);
    double gap = dot(res.point, res.point) - dot(res.point, q.z);
    double scale = 1.0 + dot(res.point, res.point);
    if (gap <= 1e-14 * scale) break;
    bool known = false;
    for (const auto& s : res.corral)
      if (s.z == q.z) {
        known = true;
        break;
      }
    if (known) break;
    res.corral.push_back(std::move(q));
    res.weights.push_back(0.0);

    // Minor cycle: move to the affine minimizer, shrinking the corral while
    // any affine weight is negative.
    for (int guard = 0; guard < 4 * dim + 16; ++guard) {
      std::vector<Vec> zs;
      zs.reserve(res.corral.size());
      for (const auto& s : res.corral) zs.push_back(s.z);
      Vec alpha = affine_min_norm(zs);
      double amin = *std::min_element(alpha.begin(), alpha.end());
      if (amin > -1e-12) {
        res.weights = alpha;
        break;
      }
      double theta = 1.0;
      for (std::size_t i = 0; i < alpha.size(); ++i)
        if (alpha[i] < 1e-14) {
          double denom = res.weights[i] - alpha[i];
          if (denom > 1e-300) theta = std::min(theta, res.weights[i] / denom);
        }
      for (std::size_t i = 0; i < alpha.size(); ++i)
        res.weights[i] = theta * alpha[i] + (1.0 - theta) * res.weights[i];
      std::vector<TaggedVertex> keep;
      Vec keep_w;
      for (std::size_t i = 0; i < res.corral.size(); ++i)
        if (res.weights[i] > 1e-13) {
          keep.push_back(std::move(res.corral[i]));
          keep_w.push_back(res.weights[i]);
        }
      if (keep.empty()) {
        keep.push_back(std::move(res.corral[0]));
        keep_w.push_back(1.0);
      }
      res.corral = std::move(keep);
      res.weights = std::move(keep_w);
      if (res.corral.size() == 1) {
        res.weights[0] = 1.0;
        break;
      }
    }
    double wsum = std::accumulate(res.weights.begin(), res.weights.end(), 0.0);
    for (double& w : res.weights) w /= wsum;
    recombine();
  }
  return res;
}

const Vec* pick_extreme(const std::vector<Vec>& verts, ConstSpan dir, bool maximize) {
  const Vec* best = &verts.front();
  double best_val = dot(*best, dir);
  for (const auto& v : verts) {
    double val = dot(v, dir);
    if (maximize ? val > best_val : val < best_val) {
      best_val = val;
      best = &v;
    }
  }
  return best;
}

}  // namespace

double distance_to_hull(ConstSpan point, const std::vector<Vec>& vertices, int max_iterations) {
  if (vertices.empty()) throw DomainError("empty vertex list");
  const int dim = static_cast<int>(point.size());
  auto lmo = [&](ConstSpan dir) {
    const Vec* v = pick_extreme(vertices, dir, false);
    TaggedVertex out;
    out.z.resize(dim);
    for (int d = 0; d < dim; ++d) out.z[d] = (*v)[d] - point[d];
    return out;
  };
  return norm2(min_norm_point(lmo, dim, max_iterations).point);
}

// ---------------------------------------------------------------------------
// Eigenpair verification
// ---------------------------------------------------------------------------

namespace {

/// Random piece gradients at the indicator of `at`: random sign completions
/// and orderings consistent with the weak order the indicator induces.
/// Their hull is contained in the exact polytope, so any acceptance drawn
/// from them is sound.
std::vector<Vec> sampled_subdifferential_vertices(const SetFunction& f, const SetTuple& at,
                                                  int samples, Rng& rng) {
  const int n = f.n();
  std::vector<Vec> out;
  out.reserve(samples);
  if (f.kind() == DomainKind::Powerset) {
    SubsetId a = at.parts[0].pos;
    std::vector<int> inside = subset_vertices(a, n);
    std::vector<int> outside = subset_vertices(~a & ((SubsetId{1} << n) - 1), n);
    std::vector<int> ord(n);
    for (int s = 0; s < samples; ++s) {
      for (std::size_t i = outside.size(); i > 1; --i)
        std::swap(outside[i - 1], outside[rng.uniform_int(static_cast<int>(i))]);
      for (std::size_t i = inside.size(); i > 1; --i)
        std::swap(inside[i - 1], inside[rng.uniform_int(static_cast<int>(i))]);
      std::copy(outside.begin(), outside.end(), ord.begin());
      std::copy(inside.begin(), inside.end(), ord.begin() + outside.size());
      SubsetId suffix = 0;
      Vec u(n, 0.0);
      double prev = 0.0;
      for (int i = n - 1; i >= 0; --i) {
        suffix |= SubsetId{1} << ord[i];
        double fv = f.eval(suffix);
        u[ord[i]] = fv - prev;
        prev = fv;
      }
      out.push_back(std::move(u));
    }
    return out;
  }
  SetPair ab = at.parts[0];
  std::vector<int> assigned = subset_vertices(ab.support(), n);
  std::vector<int> free = subset_vertices(~ab.support() & ((SubsetId{1} << n) - 1), n);
  std::vector<int> ord(n);
  for (int s = 0; s < samples; ++s) {
    SubsetId pos_side = ab.pos;
    for (int e : free)
      if (rng.uniform() < 0.5) pos_side |= SubsetId{1} << e;
    for (std::size_t i = free.size(); i > 1; --i)
      std::swap(free[i - 1], free[rng.uniform_int(static_cast<int>(i))]);
    for (std::size_t i = assigned.size(); i > 1; --i)
      std::swap(assigned[i - 1], assigned[rng.uniform_int(static_cast<int>(i))]);
    std::copy(free.begin(), free.end(), ord.begin());
    std::copy(assigned.begin(), assigned.end(), ord.begin() + free.size());
    SetPair suffix;
    Vec u(n, 0.0);
    double prev = 0.0;
    for (int i = n - 1; i >= 0; --i) {
      SubsetId bit = SubsetId{1} << ord[i];
      bool positive = (pos_side & bit) != 0;
      if (positive)
        suffix.pos |= bit;
      else
        suffix.neg |= bit;
      double fv = f.eval(suffix);
      u[ord[i]] = positive ? fv - prev : prev - fv;
      prev = fv;
    }
    out.push_back(std::move(u));
  }
  return out;
}

}  // namespace

EigenCertificate verify_eigenpair_composite(const SetFunction* f1, const SetFunction* f2,
                                            const SetFunction* g1, const SetFunction* g2,
                                            double lambda, const SetTuple& eigenset,
                                            const EigenOptions& opts) {
  const SetFunction* any = f1 ? f1 : f2;
  if (!any) throw DomainError("need at least one numerator component");
  const int dim = any->n();

  bool exact_mode = true;
  Rng sample_rng(opts.sample_seed);
  auto vertices_or_zero = [&](const SetFunction* fn) -> std::vector<Vec> {
    if (!fn) return {Vec(dim, 0.0)};
    try {
      return subdifferential_vertices(*fn, eigenset, opts.vertex_budget);
    } catch (const SizeLimitError&) {
      exact_mode = false;
      return sampled_subdifferential_vertices(*fn, eigenset, opts.sample_count, sample_rng);
    }
  };
  std::vector<Vec> vf1 = vertices_or_zero(f1);
  std::vector<Vec> vf2 = vertices_or_zero(f2);
  std::vector<Vec> vg1 = vertices_or_zero(g1);
  std::vector<Vec> vg2 = vertices_or_zero(g2);

  // LMO over {p1 - p2 - lambda (q1 - q2)}; each block is chosen independently.
  // The numerator part p1 - p2 rides along as the payload so that the final
  // convex combination yields a witness in the numerator polytope.
  auto part_lmo = [&](ConstSpan dir) {
    TaggedVertex out;
    out.z.assign(dim, 0.0);
    out.payload.assign(dim, 0.0);
    const Vec* p1 = pick_extreme(vf1, dir, false);
    const Vec* p2 = pick_extreme(vf2, dir, true);
    const Vec* q1 = pick_extreme(vg1, dir, lambda > 0.0);
    const Vec* q2 = pick_extreme(vg2, dir, lambda < 0.0);
    for (int d = 0; d < dim; ++d) {
      out.payload[d] = (*p1)[d] - (*p2)[d];
      out.z[d] = out.payload[d] - lambda * ((*q1)[d] - (*q2)[d]);
    }
    return out;
  };
  MnpResult mnp = min_norm_point(part_lmo, dim, opts.max_mnp_iterations);

  EigenCertificate cert;
  cert.lambda = lambda;
  cert.eigenset = eigenset;
  cert.residual = norm2(mnp.point);
  cert.accepted = cert.residual <= opts.accept_tol;
  cert.witness = mnp.payload;
  cert.exact = exact_mode;
  return cert;
}

EigenCertificate verify_eigenpair(const SetFunction& f, const SetFunction& g, double lambda,
                                  const SetTuple& eigenset, const EigenOptions& opts) {
  return verify_eigenpair_composite(&f, nullptr, &g, nullptr, lambda, eigenset, opts);
}

// ---------------------------------------------------------------------------
// Eigenvalue enumeration
// ---------------------------------------------------------------------------

namespace {

bool symmetric_pair_condition(const SetFunction& f) {
  const int n = f.n();
  const SubsetId full = (SubsetId{1} << n) - 1;
  const double tol = f.integer_valued() ? 0.0 : 1e-9;
  const std::uint64_t m = pow3(n);
  for (std::uint64_t c = 1; c < m; ++c) {
    SetPair p = pair_from_code(c, n);
    double lhs = 2.0 * f.eval(p);
    double rhs = f.eval(SetPair{p.pos, full & ~p.pos}) + f.eval(SetPair{full & ~p.neg, p.neg});
    if (std::fabs(lhs - rhs) > tol * (1.0 + std::fabs(lhs))) return false;
  }
  return true;
}

}  // namespace

std::vector<std::pair<double, SetTuple>> enumerate_eigenvalues(const SetFunction& f,
                                                               const SetFunction& g,
                                                               const EigenOptions& opts) {
  if (f.kind() != g.kind() || f.n() != g.n())
    throw DomainError("eigen pair must share one domain");
  const int n = f.n();
  if (n > 8) throw SizeLimitError("eigenvalue enumeration limited to n <= 8");
  const SubsetId full = (SubsetId{1} << n) - 1;

  std::vector<std::pair<double, SetTuple>> accepted;
  auto offer = [&](double lambda, const SetTuple& at) {
    EigenCertificate cert = verify_eigenpair(f, g, lambda, at, opts);
    if (!cert.accepted) return;
    for (auto& [l, rep] : accepted)
      if (std::fabs(l - lambda) <= 1e-9 * (1.0 + std::fabs(l))) return;
    accepted.push_back({lambda, at});
  };

  if (f.kind() == DomainKind::Powerset) {
    double gv = g.eval(full);
    if (gv != 0.0) {
      double lambda = f.eval(full) / gv;
      for (SubsetId a = 1; a <= full; ++a) {
        offer(lambda, SetTuple{a});
        if (!accepted.empty()) break;
      }
    } else if (f.eval(full) == 0.0) {
      for (SubsetId a = 1; a <= full; ++a)
        if (g.eval(a) != 0.0) offer(f.eval(a) / g.eval(a), SetTuple{a});
    }
  } else if (f.kind() == DomainKind::DisjointPair) {
    bool fast = symmetric_pair_condition(f) && symmetric_pair_condition(g);
    if (fast) {
      for (SubsetId a = 0; a <= full; ++a) {
        SetPair p{a, full & ~a};
        double gv = g.eval(p);
        if (gv != 0.0) offer(f.eval(p) / gv, SetTuple{p});
      }
    } else {
      const std::uint64_t m = pow3(n);
      for (std::uint64_t c = 1; c < m; ++c) {
        SetPair p = pair_from_code(c, n);
        double gv = g.eval(p);
        if (gv != 0.0) offer(f.eval(p) / gv, SetTuple{p});
      }
    }
  } else {
    throw DomainError("eigenvalue enumeration handles powerset and disjoint-pair domains");
  }
  std::sort(accepted.begin(), accepted.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return accepted;
}

MinMaxCutResult minmaxcut_via_eigen(const Graph& g, const EigenOptions& opts) {
  if (g.n() > 8) throw SizeLimitError("minmaxcut_via_eigen limited to n <= 8");
  SetFunction f = pair_cut_sym_function(g);
  SetFunction two = SetFunction::scale(constant_one(g.n(), DomainKind::DisjointPair), 2.0);
  auto eigs = enumerate_eigenvalues(f, two, opts);
  MinMaxCutResult out;
  for (const auto& [l, rep] : eigs) out.eigenvalues.push_back(l);
  if (out.eigenvalues.size() < 2)
    throw FeasibilityError("expected at least the trivial and one nontrivial eigenvalue");
  out.mincut = out.eigenvalues[1];
  out.maxcut = out.eigenvalues.back();
  return out;
}

// ---------------------------------------------------------------------------
// Cheeger second eigenvalue
// ---------------------------------------------------------------------------

double min_shifted_pair_value(const SetFunction& f_pair, ConstSpan x) {
  // min over t of the disjoint-pair extension of f at x - t 1; the function
  // is piecewise linear in t with breakpoints at coordinates and midpoints.
  const int n = static_cast<int>(x.size());
  std::vector<double> cand;
  for (int i = 0; i < n; ++i) {
    cand.push_back(x[i]);
    for (int j = i + 1; j < n; ++j) cand.push_back((x[i] + x[j]) / 2.0);
  }
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  double best = std::numeric_limits<double>::infinity();
  Vec shifted(n);
  for (double t : cand) {
    for (int i = 0; i < n; ++i) shifted[i] = x[i] - t;
    best = std::min(best, eval_disjoint_pair(f_pair, shifted).value);
  }
  return best;
}

double second_eigenvalue_cheeger(const SetFunction& f_sym, const SetFunction& g_mono,
                                 int sample_trials, std::uint64_t seed) {
  if (f_sym.kind() != DomainKind::Powerset || g_mono.kind() != DomainKind::Powerset)
    throw DomainError("Cheeger pair must be powerset functions");
  const int n = f_sym.n();
  if (n > 12) throw SizeLimitError("Cheeger enumeration limited to n <= 12");
  const SubsetId full = (SubsetId{1} << n) - 1;

  for (SubsetId a = 0; a <= full; ++a) {
    if (std::fabs(f_sym.eval(a) - f_sym.eval(full & ~a)) > 1e-9)
      throw DomainError("numerator must be symmetric");
    if (g_mono.eval(a) < -1e-12) throw DomainError("denominator must be nonnegative");
    for (int i = 0; i < n; ++i)
      if (!(a >> i & 1) && g_mono.eval(a | (SubsetId{1} << i)) < g_mono.eval(a) - 1e-12)
        throw DomainError("denominator must be non-decreasing");
  }
  if (!is_submodular(g_mono).ok) throw DomainError("denominator must be submodular");

  double ch = std::numeric_limits<double>::infinity();
  SubsetId best = 0;
  for (SubsetId a = 1; a < full; ++a) {
    double denom = std::min(g_mono.eval(a), g_mono.eval(full & ~a));
    if (denom <= 0.0) continue;
    double v = f_sym.eval(a) / denom;
    if (v < ch) {
      ch = v;
      best = a;
    }
  }
  if (!std::isfinite(ch)) throw FeasibilityError("no proper subset with positive denominator");

  // Sampled variational quotients sit above the constant; the optimal
  // indicator attains it.
  SetFunction fs = f_sym;
  SetFunction gs = g_mono;
  SetFunction g_pair = SetFunction::from_callback(
      DomainKind::DisjointPair, n, 1,
      [gs](const SetTuple& t) { return gs.eval(t.parts[0].pos) + gs.eval(t.parts[0].neg); });
  Rng rng(seed);
  for (int t = 0; t < sample_trials; ++t) {
    Vec x(n);
    double mean = 0.0;
    for (int i = 0; i < n; ++i) mean += (x[i] = rng.uniform(-1.0, 1.0));
    mean /= n;
    for (double& v : x) v -= mean;
    double denom = min_shifted_pair_value(g_pair, x);
    if (denom <= 1e-9) continue;
    double quotient = eval_original(fs, x).value / denom;
    if (quotient < ch - 1e-9)
      throw FeasibilityError("sampled variational quotient fell below the Cheeger constant");
  }
  Vec ind(n, 0.0);
  for (int i = 0; i < n; ++i)
    if (best >> i & 1) ind[i] = 1.0;
  double denom = min_shifted_pair_value(g_pair, ind);
  double at_best = eval_original(fs, ind).value / denom;
  if (std::fabs(at_best - ch) > 1e-9 * (1.0 + std::fabs(ch)))
    throw FeasibilityError("the optimal indicator does not attain the variational quotient");
  return ch;
}

// ---------------------------------------------------------------------------
// Signed-graph coordinate system
// ---------------------------------------------------------------------------

SignedEigenSystem signed_eigen_check(const Graph& sg, double lambda, ConstSpan x, double tol,
                                     int max_rounds) {
  const int n = sg.n();
  if (static_cast<int>(x.size()) != n) throw DomainError("point length mismatch");
  bool all_zero = true;
  for (double v : x) {
    if (v != -1.0 && v != 0.0 && v != 1.0) throw DomainError("x must be a ternary vector");
    if (v != 0.0) all_zero = false;
  }
  if (all_zero) throw DomainError("x must be nonzero");

  SignedEigenSystem sys;
  sys.lambda = lambda;
  for (int i = 0; i < n; ++i) {
    if (x[i] > 0.0) sys.d_plus |= SubsetId{1} << i;
    if (x[i] < 0.0) sys.d_minus |= SubsetId{1} << i;
    if (x[i] == 0.0) sys.d_zero |= SubsetId{1} << i;
  }

  const auto& edges = sg.edges();
  const int m = static_cast<int>(edges.size());
  sys.z.assign(m, 0.0);
  std::vector<bool> fixed(m, false);
  for (int e = 0; e < m; ++e) {
    double d = x[edges[e].u] - edges[e].sign * x[edges[e].v];
    if (d > 0.0) {
      sys.z[e] = 1.0;
      fixed[e] = true;
    } else if (d < 0.0) {
      sys.z[e] = -1.0;
      fixed[e] = true;
    }
  }

  // Row sums sigma_i = sum_{j ~ i} z_ij with z_vu = -s_uv z_uv.
  auto row_sums = [&](const std::vector<double>& z) {
    Vec sigma(n, 0.0);
    for (int e = 0; e < m; ++e) {
      sigma[edges[e].u] += z[e];
      sigma[edges[e].v] += -edges[e].sign * z[e];
    }
    return sigma;
  };
  auto violation = [&](const std::vector<double>& z) {
    Vec sigma = row_sums(z);
    double worst = 0.0;
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
      double s = x[i] >= 0.0 ? 1.0 : -1.0;
      if (x[i] == 0.0) {
        worst = std::max(worst, std::fabs(sigma[i]));
      } else {
        double signed_sum = s * sigma[i];
        worst = std::max(worst, std::max(0.0, -signed_sum));
        worst = std::max(worst, std::max(0.0, signed_sum - lambda));
        total += signed_sum;
      }
    }
    worst = std::max(worst, std::fabs(total - lambda));
    for (int e = 0; e < m; ++e) worst = std::max(worst, std::max(0.0, std::fabs(z[e]) - 1.0));
    return worst;
  };

  // Free variables only; everything else is a constant offset.
  std::vector<int> free_edges;
  for (int e = 0; e < m; ++e)
    if (!fixed[e]) free_edges.push_back(e);

  if (free_edges.empty()) {
    sys.max_violation = violation(sys.z);
    sys.accepted = sys.max_violation <= tol;
    return sys;
  }

  // Cyclic projections: box, equality rows (least squares), then the
  // half-space rows for D+- vertices.
  const int nf = static_cast<int>(free_edges.size());
  std::vector<Vec> eq_rows;
  Vec eq_rhs;
  {
    Vec base = row_sums(sys.z);  // contribution of the fixed variables
    // sigma_i = 0 on D0.
    for (int i = 0; i < n; ++i) {
      if (x[i] != 0.0) continue;
      Vec row(nf, 0.0);
      bool touched = false;
      for (int k = 0; k < nf; ++k) {
        const auto& e = edges[free_edges[k]];
        if (e.u == i) {
          row[k] += 1.0;
          touched = true;
        }
        if (e.v == i) {
          row[k] += -e.sign;
          touched = true;
        }
      }
      if (touched || base[i] != 0.0) {
        eq_rows.push_back(row);
        eq_rhs.push_back(-base[i]);
      }
    }
    // sum over D+- of sign(x_i) sigma_i = lambda.
    Vec row(nf, 0.0);
    double rhs = lambda;
    for (int i = 0; i < n; ++i) {
      if (x[i] == 0.0) continue;
      double s = x[i] > 0.0 ? 1.0 : -1.0;
      rhs -= s * base[i];
      for (int k = 0; k < nf; ++k) {
        const auto& e = edges[free_edges[k]];
        if (e.u == i) row[k] += s;
        if (e.v == i) row[k] += -s * e.sign;
      }
    }
    eq_rows.push_back(row);
    eq_rhs.push_back(rhs);
  }

  Vec zf(nf, 0.0);
  auto project_equalities = [&]() {
    // One pass of Kaczmarz sweeps is enough inside the POCS loop.
    for (int sweep = 0; sweep < 4; ++sweep)
      for (std::size_t r = 0; r < eq_rows.size(); ++r) {
        double nr = dot(eq_rows[r], eq_rows[r]);
        if (nr < 1e-300) continue;
        double resid = dot(eq_rows[r], zf) - eq_rhs[r];
        for (int k = 0; k < nf; ++k) zf[k] -= resid * eq_rows[r][k] / nr;
      }
  };
  auto apply = [&]() {
    for (int k = 0; k < nf; ++k) sys.z[free_edges[k]] = zf[k];
  };

  for (int round = 0; round < max_rounds; ++round) {
    project_equalities();
    for (double& v : zf) v = std::clamp(v, -1.0, 1.0);
    // Half-space rows: 0 <= sign(x_i) sigma_i <= lambda on D+-.
    apply();
    Vec sigma = row_sums(sys.z);
    for (int i = 0; i < n; ++i) {
      if (x[i] == 0.0) continue;
      double s = x[i] > 0.0 ? 1.0 : -1.0;
      double val = s * sigma[i];
      double target = val < 0.0 ? 0.0 : (val > lambda ? lambda : val);
      if (target == val) continue;
      Vec row(nf, 0.0);
      for (int k = 0; k < nf; ++k) {
        const auto& e = edges[free_edges[k]];
        if (e.u == i) row[k] += s;
        if (e.v == i) row[k] += -s * e.sign;
      }
      double nr = dot(row, row);
      if (nr < 1e-300) continue;
      double shift = (target - val) / nr;
      for (int k = 0; k < nf; ++k) zf[k] += shift * row[k];
      apply();
      sigma = row_sums(sys.z);
    }
    apply();
    sys.max_violation = violation(sys.z);
    if (sys.max_violation <= tol) {
      sys.accepted = true;
      return sys;
    }
  }
  sys.accepted = false;
  return sys;
}

}  // namespace lovx
