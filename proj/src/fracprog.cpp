#include "lovx/fracprog.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lovx {

namespace {

double linf_norm(ConstSpan x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::fabs(v));
  return m;
}

double l2_norm(ConstSpan x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

double ball_norm(ConstSpan x, Ball ball) { return ball == Ball::LInf ? linf_norm(x) : l2_norm(x); }

void normalize_to_ball(Vec& x, Ball ball) {
  double m = ball_norm(x, ball);
  if (m > 0.0)
    for (double& v : x) v /= m;
}

void project_into_ball(Vec& x, Ball ball) {
  if (ball == Ball::LInf) {
    for (double& v : x) v = std::clamp(v, -1.0, 1.0);
  } else {
    double m = l2_norm(x);
    if (m > 1.0)
      for (double& v : x) v /= m;
  }
}

Vec decode_ternary(std::uint64_t code, int dim) {
  Vec x(dim, 0.0);
  for (int i = 0; i < dim; ++i) {
    switch (code % 3) {
      case 1: x[i] = 1.0; break;
      case 2: x[i] = -1.0; break;
      default: break;
    }
    code /= 3;
  }
  return x;
}

/// Surrogate J(y) = ca*A(y) + cb*B(y) - <lin, y> + prox ||y - center||^2.
struct Surrogate {
  const PLFunction* A = nullptr;
  double ca = 0.0;
  const PLFunction* B = nullptr;
  double cb = 0.0;
  Vec lin;
  Vec center;
  double prox = 0.0;

  double eval(ConstSpan y) const {
    double v = 0.0;
    if (A && !A->is_zero() && ca != 0.0) v += ca * (*A)(y);
    if (B && !B->is_zero() && cb != 0.0) v += cb * (*B)(y);
    for (std::size_t i = 0; i < lin.size(); ++i) v -= lin[i] * y[i];
    if (prox > 0.0)
      for (std::size_t i = 0; i < y.size(); ++i)
        v += prox * (y[i] - center[i]) * (y[i] - center[i]);
    return v;
  }
  Vec grad(ConstSpan y) const {
    Vec g(y.size(), 0.0);
    if (A && !A->is_zero() && ca != 0.0) {
      Vec ga = A->grad(y);
      for (std::size_t i = 0; i < g.size(); ++i) g[i] += ca * ga[i];
    }
    if (B && !B->is_zero() && cb != 0.0) {
      Vec gb = B->grad(y);
      for (std::size_t i = 0; i < g.size(); ++i) g[i] += cb * gb[i];
    }
    for (std::size_t i = 0; i < g.size(); ++i) g[i] -= lin[i];
    if (prox > 0.0)
      for (std::size_t i = 0; i < g.size(); ++i) g[i] += 2.0 * prox * (y[i] - center[i]);
    return g;
  }
};

Vec subgrad_or_zero(const PLFunction& f, ConstSpan x) {
  if (f.is_zero()) return Vec(x.size(), 0.0);
  return f.grad(x);
}

}  // namespace

bool SolveTrace::monotone(OptSense sense, double slack) const {
  for (std::size_t i = 1; i < iterates.size(); ++i) {
    double prev = iterates[i - 1].r, cur = iterates[i].r;
    if (sense == OptSense::Min ? cur > prev + slack : cur < prev - slack) return false;
  }
  return true;
}

RatioProblem ratio_problem(const ProblemInstance& inst, double prox_weight) {
  RatioProblem p;
  p.f1 = inst.F1;
  p.f2 = inst.F2;
  p.g1 = inst.G1;
  p.g2 = inst.G2;
  p.sense = inst.sense;
  p.prox_weight = prox_weight;
  p.instance = std::make_shared<ProblemInstance>(inst);
  return p;
}

// ---------------------------------------------------------------------------
// Dinkelbach scheme
// ---------------------------------------------------------------------------

SolveTrace dinkelbach_solve(const std::function<double(ConstSpan)>& F,
                            const std::function<double(ConstSpan)>& G,
                            const std::function<Vec(double, OptSense)>& inner_argopt,
                            const Vec& x0, OptSense sense, double tol, int max_iter) {
  SolveTrace trace;
  Vec x = x0;
  double gx = G(x);
  if (gx <= 0.0) throw FeasibilityError("starting point has nonpositive denominator");
  double r = F(x) / gx;
  trace.iterates.push_back({x, r});
  for (int k = 0; k < max_iter; ++k) {
    Vec y = inner_argopt(r, sense);
    double gy = G(y);
    if (gy <= 0.0) {
      trace.termination = "g-vanished";
      break;
    }
    double r_new = F(y) / gy;
    x = std::move(y);
    trace.iterates.push_back({x, r_new});
    if (std::fabs(r_new - r) <= tol * (1.0 + std::fabs(r))) {
      r = r_new;
      trace.termination = "converged";
      break;
    }
    r = r_new;
  }
  if (trace.termination.empty()) trace.termination = "max-iter";
  trace.final_ratio = trace.iterates.back().r;
  trace.final_x = trace.iterates.back().x;
  return trace;
}

std::function<Vec(double, OptSense)> dinkelbach_exact_oracle(const ProblemInstance& inst) {
  if (inst.kind != DomainKind::Powerset && inst.kind != DomainKind::DisjointPair)
    throw DomainError("exact Dinkelbach oracle covers powerset and disjoint-pair instances");
  auto shared = std::make_shared<ProblemInstance>(inst);
  return [shared](double r, OptSense sense) {
    SetFunction f = shared->f, g = shared->g;
    SetFunction obj = SetFunction::from_callback(
        f.kind(), f.n(), f.k(),
        [f, g, r](const SetTuple& t) { return f.eval(t) - r * g.eval(t); });
    OracleResult res = optimize_subsets(obj, nullptr, sense, &shared->family);
    return shared->indicator(res.witnesses.front());
  };
}

// ---------------------------------------------------------------------------
// Inner solvers
// ---------------------------------------------------------------------------

Vec inner_convex_solve(const std::function<double(ConstSpan)>& objective,
                       const std::function<Vec(ConstSpan)>& subgrad, int dim, Ball ball,
                       int budget, const Vec& start, double strong_convexity,
                       bool* reached_budget) {
  Vec x = start;
  project_into_ball(x, ball);
  Vec best = x;
  double best_val = objective(x);
  double c = 0.5;
  for (int t = 1; t <= budget; ++t) {
    Vec g = subgrad(x);
    double gn = l2_norm(g);
    if (gn < 1e-14) break;
    double step = strong_convexity > 0.0 ? 2.0 / (strong_convexity * (t + 2))
                                         : c / (gn * std::sqrt(static_cast<double>(t)));
    for (int i = 0; i < dim; ++i) x[i] -= step * g[i];
    project_into_ball(x, ball);
    double val = objective(x);
    if (val < best_val) {
      best_val = val;
      best = x;
    }
  }
  // Local stencil refinement for small dimensions: examine the 3^dim
  // displacement pattern at shrinking radii.
  if (dim <= 6) {
    double h = 0.5;
    while (h > 1e-10) {
      bool improved = false;
      std::uint64_t patterns = 1;
      for (int i = 0; i < dim; ++i) patterns *= 3;
      for (std::uint64_t code = 1; code < patterns; ++code) {
        Vec y = best;
        std::uint64_t c2 = code;
        for (int i = 0; i < dim; ++i) {
          int digit = static_cast<int>(c2 % 3);
          c2 /= 3;
          if (digit == 1) y[i] += h;
          if (digit == 2) y[i] -= h;
        }
        project_into_ball(y, ball);
        double val = objective(y);
        if (val < best_val - 1e-15) {
          best_val = val;
          best = y;
          improved = true;
        }
      }
      if (!improved) h *= 0.5;
    }
  }
  if (reached_budget) *reached_budget = true;
  return best;
}

// ---------------------------------------------------------------------------
// IP-SD core
// ---------------------------------------------------------------------------

namespace {

struct IpsdContext {
  const RatioProblem& p;
  const SolveOptions& opts;
  bool use_exact = false;
  std::uint64_t ternary_count = 0;
};

Vec ipsd_inner(const IpsdContext& ctx, const Surrogate& J, const Vec& x, Rng& rng) {
  const int dim = static_cast<int>(x.size());
  if (ctx.use_exact) {
    Vec best = x;
    double best_val = J.eval(x);
    for (std::uint64_t code = 0; code < ctx.ternary_count; ++code) {
      Vec y = decode_ternary(code, dim);
      double val = J.eval(y);
      if (val < best_val - 1e-13 * (1.0 + std::fabs(best_val))) {
        best_val = val;
        best = std::move(y);
      }
    }
    return best;
  }
  Vec start = x;
  for (double& v : start) v += 1e-3 * (rng.uniform() - 0.5);
  return inner_convex_solve([&J](ConstSpan y) { return J.eval(y); },
                            [&J](ConstSpan y) { return J.grad(y); }, dim, ctx.p.ball,
                            ctx.opts.inner_budget, start, 2.0 * J.prox);
}

SolveTrace ipsd_core(const RatioProblem& p, const Vec& x0, const SolveOptions& opts,
                     bool generalized) {
  const int dim = static_cast<int>(x0.size());
  SolveTrace trace;
  trace.seed = opts.seed;
  Rng rng(opts.seed);

  IpsdContext ctx{p, opts};
  if (opts.inner != InnerSolver::ProjectedSubgradient && p.prox_weight == 0.0 &&
      p.ball == Ball::LInf) {
    std::uint64_t count = 1;
    bool fits = true;
    for (int i = 0; i < dim; ++i) {
      count *= 3;
      if (count > opts.exact_candidate_budget) {
        fits = false;
        break;
      }
    }
    bool instance_ok = !p.instance || p.instance->dc_traces_exact;
    ctx.use_exact = fits && instance_ok;
    ctx.ternary_count = count;
    if (opts.inner == InnerSolver::ExactTernary && !ctx.use_exact)
      throw SizeLimitError("exact inner step unavailable for this problem size");
  }

  Vec x = x0;
  if (p.instance && p.instance->project_feasible) p.instance->project_feasible(x);
  normalize_to_ball(x, p.ball);
  double gx = p.G(x);
  if (gx <= 0.0) throw FeasibilityError("starting point has nonpositive denominator");
  double r = p.F(x) / gx;
  if (!generalized && r < 0.0 && p.sense == OptSense::Min)
    throw FeasibilityError("negative starting ratio: use the generalized scheme");
  trace.iterates.push_back({x, r});

  int streak = 0;
  for (int k = 0; k < opts.max_iter; ++k) {
    Surrogate J;
    J.center = x;
    J.prox = p.prox_weight;
    J.lin.assign(dim, 0.0);
    bool minimize = p.sense == OptSense::Min;
    if (r >= 0.0) {
      const PLFunction& keepA = minimize ? p.f1 : p.f2;
      const PLFunction& keepB = minimize ? p.g2 : p.g1;
      const PLFunction& linF = minimize ? p.f2 : p.f1;
      const PLFunction& linG = minimize ? p.g1 : p.g2;
      J.A = &keepA;
      J.ca = 1.0;
      J.B = &keepB;
      J.cb = r;
      Vec u = subgrad_or_zero(linF, x), v = subgrad_or_zero(linG, x);
      for (int i = 0; i < dim; ++i) J.lin[i] = u[i] + r * v[i];
    } else {
      if (!generalized) {
        trace.termination = "converged";
        break;
      }
      // Sign-handling branch: divide through by |r| so every kept piece stays
      // convex.
      const PLFunction& keepA = minimize ? p.g1 : p.g2;
      const PLFunction& keepB = minimize ? p.f1 : p.f2;
      const PLFunction& linG = minimize ? p.g2 : p.g1;
      const PLFunction& linF = minimize ? p.f2 : p.f1;
      J.A = &keepA;
      J.ca = 1.0;
      J.B = &keepB;
      J.cb = -1.0 / r;
      Vec w = subgrad_or_zero(linG, x), u = subgrad_or_zero(linF, x);
      for (int i = 0; i < dim; ++i) J.lin[i] = w[i] + (-1.0 / r) * u[i];
    }

    Vec y = ipsd_inner(ctx, J, x, rng);
    if (p.instance && p.instance->project_feasible) p.instance->project_feasible(y);
    double ny = ball_norm(y, p.ball);
    if (ny <= 1e-12) {
      // The step collapsed to the origin; the current iterate stays the
      // reported point.
      trace.termination = "g-vanished";
      break;
    }
    if (opts.normalized_scheme || ctx.use_exact)
      for (double& v : y) v /= ny;
    double gy = p.G(y);
    if (gy <= 1e-12 * (1.0 + std::fabs(p.f1(y)))) {
      trace.termination = "g-vanished";
      break;
    }
    double r_new = p.F(y) / gy;
    bool improves = minimize ? r_new <= r + 1e-12 * (1.0 + std::fabs(r))
                             : r_new >= r - 1e-12 * (1.0 + std::fabs(r));
    if (!improves) {
      // The surrogate step failed to improve the ratio (inexact inner step);
      // keep the current point and stop.
      trace.termination = "converged";
      break;
    }
    bool same_point = y == x;
    if (std::fabs(r_new - r) <= opts.tol * (1.0 + std::fabs(r)))
      ++streak;
    else
      streak = 0;
    x = std::move(y);
    r = r_new;
    trace.iterates.push_back({x, r});
    if (same_point || streak >= opts.consecutive) {
      trace.termination = "converged";
      break;
    }
  }
  if (trace.termination.empty()) trace.termination = "max-iter";
  trace.final_ratio = r;
  if (trace.final_x.empty()) trace.final_x = x;

  if (p.instance) {
    try {
      trace.extracted = extract_best_settuple(*p.instance, trace.final_x);
    } catch (const FeasibilityError&) {
    } catch (const DomainError&) {
    }
    if (opts.verify_eigen && p.instance->dc_traces_exact && p.instance->blocks == 1 &&
        dim <= 8 && trace.extracted) {
      const ProblemInstance& inst = *p.instance;
      auto trace_fn = [&inst, dim](const PLFunction& comp) -> std::optional<SetFunction> {
        if (comp.is_zero()) return std::nullopt;
        auto ev = comp.eval;
        return SetFunction::from_callback(inst.kind, dim, 1, [ev, dim](const SetTuple& t) {
          Vec ind(dim, 0.0);
          for (int i = 0; i < dim; ++i) {
            if (t.parts[0].pos >> i & 1) ind[i] = 1.0;
            if (t.parts[0].neg >> i & 1) ind[i] = -1.0;
          }
          return ev(ind);
        });
      };
      auto tf1 = trace_fn(inst.F1), tf2 = trace_fn(inst.F2);
      auto tg1 = trace_fn(inst.G1), tg2 = trace_fn(inst.G2);
      trace.certificate = verify_eigenpair_composite(
          tf1 ? &*tf1 : nullptr, tf2 ? &*tf2 : nullptr, tg1 ? &*tg1 : nullptr,
          tg2 ? &*tg2 : nullptr, trace.final_ratio, trace.extracted->first);
    }
  }
  return trace;
}

}  // namespace

SolveTrace ipsd_solve(const RatioProblem& problem, const Vec& x0, const SolveOptions& opts) {
  return ipsd_core(problem, x0, opts, opts.allow_negative_ratio);
}

SolveTrace ipsd_solve_generalized(const RatioProblem& problem, const Vec& x0, SolveOptions opts) {
  opts.allow_negative_ratio = true;
  return ipsd_core(problem, x0, opts, true);
}

// ---------------------------------------------------------------------------
// Normalized inverse-power scheme
// ---------------------------------------------------------------------------

Vec inverse_power_step_normalized(const PLFunction& F, const PLFunction& G, const Vec& x,
                                  double a_k, double b_k, int inner_budget) {
  if (a_k <= 0.0 || b_k <= 0.0) throw DomainError("scaling factors must be positive");
  const int dim = static_cast<int>(x.size());
  Vec u = G.grad(x);
  auto phi = [&](ConstSpan y) {
    double v = F(y);
    for (int i = 0; i < dim; ++i) v -= a_k * u[i] * y[i];
    return v;
  };
  Vec y = x;
  double fy = phi(y);
  for (int it = 0; it < inner_budget; ++it) {
    Vec g = F.grad(y);
    for (int i = 0; i < dim; ++i) g[i] -= a_k * u[i];
    double gn = l2_norm(g);
    if (gn <= 1e-13 * (1.0 + std::fabs(fy))) break;
    double t = 1.0;
    bool moved = false;
    for (int ls = 0; ls < 60; ++ls) {
      Vec cand = y;
      for (int i = 0; i < dim; ++i) cand[i] -= t * g[i];
      double fc = phi(cand);
      if (fc < fy - 0.25 * t * gn * gn) {
        y = std::move(cand);
        fy = fc;
        moved = true;
        break;
      }
      t *= 0.5;
    }
    if (!moved) break;
  }
  for (double& v : y) v *= b_k;
  return y;
}

SolveTrace inverse_power_solve(const PLFunction& F, const PLFunction& G, const Vec& x0,
                               double a_lo, double a_hi, int max_iter, double tol,
                               std::uint64_t seed) {
  if (F.degree <= 1.0 || G.degree <= 1.0)
    throw DomainError("normalized scheme expects p-homogeneous pairs with p > 1");
  SolveTrace trace;
  trace.seed = seed;
  Rng rng(seed);
  Vec x = x0;
  double gx = G(x);
  if (gx <= 0.0) throw FeasibilityError("starting point has nonpositive denominator");
  for (double& v : x) v /= std::pow(gx, 1.0 / G.degree);
  double r = F(x) / G(x);
  trace.iterates.push_back({x, r});
  int streak = 0;
  for (int k = 0; k < max_iter; ++k) {
    double a = a_lo == a_hi ? a_lo : rng.uniform(a_lo, a_hi);
    Vec y = inverse_power_step_normalized(F, G, x, a, 1.0);
    double gy = G(y);
    if (gy <= 0.0) {
      trace.termination = "g-vanished";
      break;
    }
    for (double& v : y) v /= std::pow(gy, 1.0 / G.degree);
    double r_new = F(y) / G(y);
    x = std::move(y);
    trace.iterates.push_back({x, r_new});
    if (std::fabs(r_new - r) <= tol * (1.0 + std::fabs(r)))
      ++streak;
    else
      streak = 0;
    r = r_new;
    if (streak >= 3) {
      trace.termination = "converged";
      break;
    }
  }
  if (trace.termination.empty()) trace.termination = "max-iter";
  trace.final_ratio = r;
  trace.final_x = x;
  return trace;
}

// ---------------------------------------------------------------------------
// Extraction
// ---------------------------------------------------------------------------

std::pair<SetTuple, double> extract_best_settuple(const ProblemInstance& inst, ConstSpan x) {
  bool nonzero = false;
  for (double v : x) nonzero = nonzero || v != 0.0;
  if (!nonzero) throw DomainError("cannot extract from the zero vector");
  std::vector<SetTuple> tuples = inst.family.associated_tuples(x);
  std::optional<std::pair<SetTuple, double>> best;
  for (const auto& t : tuples) {
    if (!inst.family.is_member(t)) continue;
    double denom = inst.g.eval(t);
    if (denom <= 0.0) continue;
    double ratio = inst.f.eval(t) / denom;
    if (!best || better(ratio, best->second, inst.sense)) best = {t, ratio};
  }
  if (!best) throw FeasibilityError("no feasible level set with positive denominator");
  return *best;
}

// ---------------------------------------------------------------------------
// Recursive frustration scheme
// ---------------------------------------------------------------------------

FrustrationResult frustration_recursive(const Graph& sg, const SolveOptions& opts,
                                        int multistart) {
  const int n = sg.n();
  std::vector<int> assign(n, 0);  // 0 = unassigned, +1 / -1 otherwise
  SubsetId remaining = (SubsetId{1} << n) - 1;
  Rng rng(opts.seed);
  FrustrationResult out;

  auto frustrated_with = [&](const std::vector<int>& a) {
    double total = 0.0;
    for (const auto& e : sg.edges()) {
      if (a[e.u] == 0 || a[e.v] == 0) continue;
      bool same = a[e.u] == a[e.v];
      if ((e.sign > 0 && !same) || (e.sign < 0 && same)) total += e.w;
    }
    return total;
  };

  while (remaining != 0 && out.rounds < n) {
    ++out.rounds;
    std::vector<int> back;
    Graph sub = sg.induced(remaining, &back);
    const int m = sub.n();

    RatioProblem p;
    p.f1 = pl_add(pl_edge_tv_signed(sub, +1), pl_edge_sum_abs(sub, -1));
    p.g1 = pl_linf(m, 1.0);
    p.sense = OptSense::Min;
    p.prox_weight = 0.0;

    SolveOptions inner_opts = opts;
    inner_opts.verify_eigen = false;
    std::optional<SolveTrace> best;
    for (int s = 0; s < std::max(1, multistart); ++s) {
      Vec x0(m, 0.0);
      if (s == 0) {
        x0.assign(m, 1.0);
      } else {
        for (double& v : x0) {
          double u = rng.uniform();
          v = u < 1.0 / 3 ? -1.0 : (u < 2.0 / 3 ? 0.0 : 1.0);
        }
        bool any = false;
        for (double v : x0) any = any || v != 0.0;
        if (!any) x0[rng.uniform_int(m)] = 1.0;
      }
      inner_opts.seed = opts.seed + 1000 * out.rounds + s;
      SolveTrace t = ipsd_core(p, x0, inner_opts, true);
      if (!best || t.final_ratio < best->final_ratio) best = std::move(t);
    }

    double top = linf_norm(best->final_x);
    SubsetId u_plus = 0, u_minus = 0;
    for (int i = 0; i < m; ++i) {
      if (std::fabs(std::fabs(best->final_x[i]) - top) <= 1e-9) {
        if (best->final_x[i] > 0.0)
          u_plus |= SubsetId{1} << i;
        else
          u_minus |= SubsetId{1} << i;
      }
    }
    // Choose the orientation of the new block against what is already fixed.
    std::vector<int> cand_a = assign, cand_b = assign;
    for (int i = 0; i < m; ++i) {
      if (u_plus >> i & 1) {
        cand_a[back[i]] = +1;
        cand_b[back[i]] = -1;
      }
      if (u_minus >> i & 1) {
        cand_a[back[i]] = -1;
        cand_b[back[i]] = +1;
      }
    }
    assign = frustrated_with(cand_a) <= frustrated_with(cand_b) ? cand_a : cand_b;
    for (int i = 0; i < m; ++i)
      if ((u_plus | u_minus) >> i & 1) remaining &= ~(SubsetId{1} << back[i]);
  }
  for (int i = 0; i < n; ++i)
    if (assign[i] == 0) assign[i] = +1;
  for (int i = 0; i < n; ++i)
    if (assign[i] > 0) out.plus |= SubsetId{1} << i;
  out.frustrated = sg.frustrated_weight(out.plus);
  return out;
}

// ---------------------------------------------------------------------------
// Relaxation lower bounds
// ---------------------------------------------------------------------------

double vertex_cover_relaxation(const Graph& g, const SetFunction& cost, int budget,
                               std::uint64_t seed) {
  const int n = g.n();
  if (n > 20) throw SizeLimitError("vertex cover relaxation limited to n <= 20");
  auto edges = g.edges();
  auto project = [&edges](Vec& x) {
    for (int round = 0; round < 50; ++round) {
      for (double& v : x) v = std::clamp(v, 0.0, 1.0);
      double worst = 0.0;
      for (const auto& e : edges) {
        double slack = 1.0 - x[e.u] - x[e.v];
        if (slack > 0.0) {
          x[e.u] += slack / 2.0;
          x[e.v] += slack / 2.0;
          worst = std::max(worst, slack);
        }
      }
      if (worst < 1e-12) break;
    }
  };
  // Exact discrete cover optimum; always a candidate value.
  double discrete = std::numeric_limits<double>::infinity();
  Vec discrete_x(n, 0.0);
  for (SubsetId a = 0; a < (SubsetId{1} << n); ++a) {
    bool cover = true;
    for (const auto& e : edges)
      if (!((a >> e.u & 1) || (a >> e.v & 1))) {
        cover = false;
        break;
      }
    if (!cover) continue;
    double v = cost.eval(a);
    if (v < discrete) {
      discrete = v;
      for (int i = 0; i < n; ++i) discrete_x[i] = (a >> i & 1) ? 1.0 : 0.0;
    }
  }

  Rng rng(seed);
  double best = discrete;
  for (int start = 0; start < 4; ++start) {
    Vec x(n, 0.5);
    if (start == 1) x = discrete_x;
    if (start >= 2)
      for (double& v : x) v = rng.uniform(0.0, 1.0);
    project(x);
    double val = eval_original(cost, x).value;
    best = std::min(best, val);
    for (int t = 1; t <= budget; ++t) {
      Vec gsub = eval_original(cost, x).subgradient;
      double gn = l2_norm(gsub);
      if (gn < 1e-14) break;
      double step = 0.5 / (gn * std::sqrt(static_cast<double>(t)));
      for (int i = 0; i < n; ++i) x[i] -= step * gsub[i];
      project(x);
      val = eval_original(cost, x).value;
      best = std::min(best, val);
    }
  }
  return best;
}

double multiway_partition_relaxation(const MultiwayPartitionProblem& prob, int budget,
                                     std::uint64_t seed) {
  const Graph& g = prob.graph;
  const int n = g.n();
  const int k = static_cast<int>(prob.terminals.size());
  const SetFunction& cost = prob.cost;

  std::vector<bool> is_terminal(n, false);
  std::vector<int> terminal_block(n, -1);
  for (int b = 0; b < k; ++b) {
    is_terminal[prob.terminals[b]] = true;
    terminal_block[prob.terminals[b]] = b;
  }
  auto project = [&](Vec& x) {
    for (int v = 0; v < n; ++v) {
      if (is_terminal[v]) {
        for (int b = 0; b < k; ++b) x[b * n + v] = b == terminal_block[v] ? 1.0 : 0.0;
        continue;
      }
      // Euclidean projection of the column onto the probability simplex.
      Vec col(k);
      for (int b = 0; b < k; ++b) col[b] = x[b * n + v];
      Vec sorted = col;
      std::sort(sorted.rbegin(), sorted.rend());
      double cum = 0.0, theta = 0.0;
      int rho = 0;
      for (int i = 0; i < k; ++i) {
        cum += sorted[i];
        double t = (cum - 1.0) / (i + 1);
        if (sorted[i] - t > 0.0) {
          rho = i + 1;
          theta = t;
        }
      }
      (void)rho;
      for (int b = 0; b < k; ++b) x[b * n + v] = std::max(0.0, col[b] - theta);
    }
  };
  auto objective = [&](ConstSpan x) {
    double total = 0.0;
    for (int b = 0; b < k; ++b) {
      Vec block(x.begin() + b * n, x.begin() + (b + 1) * n);
      total += eval_original(cost, block).value;
    }
    return total;
  };
  auto subgrad = [&](ConstSpan x) {
    Vec gsub(static_cast<std::size_t>(n) * k, 0.0);
    for (int b = 0; b < k; ++b) {
      Vec block(x.begin() + b * n, x.begin() + (b + 1) * n);
      Vec gb = eval_original(cost, block).subgradient;
      for (int i = 0; i < n; ++i) gsub[b * n + i] = gb[i];
    }
    return gsub;
  };

  // Discrete optimum (one candidate value and start).
  SetFunction costc = cost;
  OracleResult discrete = optimize_partitions(
      [&costc](const std::vector<SubsetId>& blocks) {
        double total = 0.0;
        for (SubsetId b : blocks) total += costc.eval(b);
        return total;
      },
      n, k, OptSense::Min, PartitionConstraints{prob.terminals, false, true});

  Rng rng(seed);
  double best = discrete.optimum;
  for (int start = 0; start < 3; ++start) {
    Vec x(static_cast<std::size_t>(n) * k, 1.0 / k);
    if (start == 1) {
      x.assign(static_cast<std::size_t>(n) * k, 0.0);
      const SetTuple& w = discrete.witnesses.front();
      for (int b = 0; b < k; ++b)
        for (int i = 0; i < n; ++i)
          if (w.parts[b].pos >> i & 1) x[b * n + i] = 1.0;
    }
    if (start == 2)
      for (double& v : x) v = rng.uniform(0.0, 1.0);
    project(x);
    best = std::min(best, objective(x));
    for (int t = 1; t <= budget; ++t) {
      Vec gsub = subgrad(x);
      double gn = l2_norm(gsub);
      if (gn < 1e-14) break;
      double step = 0.5 / (gn * std::sqrt(static_cast<double>(t)));
      for (std::size_t i = 0; i < x.size(); ++i) x[i] -= step * gsub[i];
      project(x);
      best = std::min(best, objective(x));
    }
  }
  return best;
}

}  // namespace lovx
