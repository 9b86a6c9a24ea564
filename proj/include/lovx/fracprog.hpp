#pragma once

#include <memory>

#include "lovx/catalog.hpp"
#include "lovx/eigenpair.hpp"

namespace lovx {

enum class Ball { LInf, L2 };

/// Ratio problem min/max (F1 - F2) / (G1 - G2) over the cone of a convex
/// body, with optional discrete wiring for extraction and certification.
struct RatioProblem {
  PLFunction f1, f2, g1, g2;
  OptSense sense = OptSense::Min;
  Ball ball = Ball::LInf;
  double prox_weight = 1.0;
  std::shared_ptr<const ProblemInstance> instance;  // optional

  double F(ConstSpan x) const { return f1(x) - (f2.is_zero() ? 0.0 : f2(x)); }
  double G(ConstSpan x) const { return g1(x) - (g2.is_zero() ? 0.0 : g2(x)); }
};

/// Wires a catalog instance into a ratio problem (prox weight defaults to the
/// zero-prox configuration used with the exact piecewise-linear inner step).
RatioProblem ratio_problem(const ProblemInstance& inst, double prox_weight = 0.0);

enum class InnerSolver { Auto, ExactTernary, ProjectedSubgradient };

struct SolveOptions {
  int max_iter = 1000;
  double tol = 1e-10;
  int consecutive = 3;        // required consecutive small ratio changes
  std::uint64_t seed = 1;
  bool verify_eigen = false;  // certify the terminal associated tuple
  bool normalized_scheme = false;  // re-normalize iterates to the ball boundary
  InnerSolver inner = InnerSolver::Auto;
  int inner_budget = 500;
  bool allow_negative_ratio = false;  // generalized sign-handling branch
  std::uint64_t exact_candidate_budget = 200000;  // 3^dim cap for the exact inner step
};

struct TraceEntry {
  Vec x;
  double r = 0.0;
};

struct SolveTrace {
  std::vector<TraceEntry> iterates;  // includes the starting point
  std::string termination;           // converged | g-vanished | max-iter
  std::uint64_t seed = 0;
  double final_ratio = 0.0;
  Vec final_x;
  std::optional<std::pair<SetTuple, double>> extracted;  // best tuple + discrete ratio
  std::optional<EigenCertificate> certificate;

  bool monotone(OptSense sense, double slack = 1e-9) const;
};

// ---------------------------------------------------------------------------
// Solvers
// ---------------------------------------------------------------------------

/// Exact parametric scheme: x_{k+1} = argopt_{S} (F - r_k G), r_{k+1} =
/// F/G(x_{k+1}).  The caller supplies the inner optimizer; with an exact one
/// the final ratio is the global optimum over S.
SolveTrace dinkelbach_solve(const std::function<double(ConstSpan)>& F,
                            const std::function<double(ConstSpan)>& G,
                            const std::function<Vec(double r, OptSense)>& inner_argopt,
                            const Vec& x0, OptSense sense, double tol = 1e-12,
                            int max_iter = 200);

/// Exact inner oracle over the discrete domain of an instance (indicator of
/// the argopt of f - r g over the feasible family).
std::function<Vec(double, OptSense)> dinkelbach_exact_oracle(const ProblemInstance& inst);

/// Mixed inverse-power / steepest-descent iteration.  `allow_negative_ratio`
/// off: terminates with an error if the ratio leaves the nonnegative range
/// handled by the base scheme.
SolveTrace ipsd_solve(const RatioProblem& problem, const Vec& x0, const SolveOptions& opts = {});
/// Sign-handling variant (branches on the sign of r_k).
SolveTrace ipsd_solve_generalized(const RatioProblem& problem, const Vec& x0,
                                  SolveOptions opts = {});

/// One step of the normalized inverse-power scheme for p-homogeneous pairs
/// (p > 1): y = argmin F(x) - a_k <u, x> with u in the subgradient of G at
/// x_k, scaled by b_k.
Vec inverse_power_step_normalized(const PLFunction& F, const PLFunction& G, const Vec& x,
                                  double a_k, double b_k, int inner_budget = 4000);
/// Drives the normalized scheme with b chosen so that G(x_{k+1}) = 1;
/// a_k drawn from [a_lo, a_hi].
SolveTrace inverse_power_solve(const PLFunction& F, const PLFunction& G, const Vec& x0,
                               double a_lo = 1.0, double a_hi = 1.0, int max_iter = 200,
                               double tol = 1e-12, std::uint64_t seed = 1);

/// Best feasible associated set-tuple of x by threshold scan (tuples with
/// g > 0 only); at least as good as F(x)/G(x) in the problem sense.
std::pair<SetTuple, double> extract_best_settuple(const ProblemInstance& inst, ConstSpan x);

/// Projected-subgradient minimization of a convex objective over the unit
/// ball (box for LInf); returns the best point evaluated.  `reached_budget`
/// reports budget exhaustion.
Vec inner_convex_solve(const std::function<double(ConstSpan)>& objective,
                       const std::function<Vec(ConstSpan)>& subgrad, int dim, Ball ball,
                       int budget, const Vec& start, double strong_convexity = 0.0,
                       bool* reached_budget = nullptr);

// ---------------------------------------------------------------------------
// Recursive frustration scheme
// ---------------------------------------------------------------------------

struct FrustrationResult {
  SubsetId plus = 0;           // vertices assigned +1
  double frustrated = 0.0;     // frustrated-edge weight of the assignment
  int rounds = 0;
};

/// Repeatedly solves the signed eigenvalue relaxation, fixes the vertices at
/// the sup-norm level, and recurses on the rest; returns a full assignment
/// whose frustrated weight upper-bounds the frustration index.
FrustrationResult frustration_recursive(const Graph& sg, const SolveOptions& opts = {},
                                        int multistart = 4);

// ---------------------------------------------------------------------------
// Relaxation lower bounds
// ---------------------------------------------------------------------------

/// Lower bound for the submodular vertex cover problem: minimizes the
/// extension over the covering polytope intersected with the unit box
/// (multi-start projected subgradient; discrete covers are included as
/// starts, so the reported value never exceeds the discrete optimum).
double vertex_cover_relaxation(const Graph& g, const SetFunction& cost, int budget = 2000,
                               std::uint64_t seed = 1);

/// Same for the multiway partition problem over the product of simplices with
/// pinned terminals.
double multiway_partition_relaxation(const MultiwayPartitionProblem& prob, int budget = 2000,
                                     std::uint64_t seed = 1);

}  // namespace lovx
