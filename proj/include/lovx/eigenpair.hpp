#pragma once

#include "lovx/catalog.hpp"
#include "lovx/graph.hpp"
#include "lovx/lovasz.hpp"
#include "lovx/setfn.hpp"

namespace lovx {

/// Certificate for the combinatorial eigenvalue problem at an indicator
/// argument: lambda together with a witness vector lying (up to `residual`)
/// in both subdifferential polytopes.
struct EigenCertificate {
  bool accepted = false;
  double lambda = 0.0;
  SetTuple eigenset;
  Vec witness;            // point of the f-side polytope closest to lambda * (g-side)
  double residual = 0.0;  // distance between the two polytopes at termination
  /// False when the vertex lists were sampled rather than enumerated; in that
  /// mode acceptance is sound but rejection only means "not certified".
  bool exact = true;
};

struct EigenOptions {
  double accept_tol = 1e-8;
  double reject_tol = 1e-6;
  std::uint64_t vertex_budget = std::uint64_t{1} << 21;
  int max_mnp_iterations = 20000;
  int sample_count = 20000;   // per polytope, when enumeration exceeds the budget
  std::uint64_t sample_seed = 1;
};

/// Decides conv S_f (at the eigenset) intersect lambda * conv S_g != empty by
/// running a min-norm-point computation on the difference polytope.
/// Guard: exact vertex enumeration wants n <= 8.
EigenCertificate verify_eigenpair(const SetFunction& f, const SetFunction& g, double lambda,
                                  const SetTuple& eigenset, const EigenOptions& opts = {});

/// Same decision for pairs in difference form: 0 in
/// (S_f1 - S_f2) - lambda (S_g1 - S_g2); null components are treated as {0}.
EigenCertificate verify_eigenpair_composite(const SetFunction* f1, const SetFunction* f2,
                                            const SetFunction* g1, const SetFunction* g2,
                                            double lambda, const SetTuple& eigenset,
                                            const EigenOptions& opts = {});

/// All eigenvalues of the pair, by screening candidate ratios f(a)/g(a) over
/// indicator arguments and keeping those that certify.  When both functions
/// satisfy 2 h(A,B) = h(A, V\A) + h(V\B, B) away from the all-empty pair,
/// candidates are restricted to full bipartitions.
std::vector<std::pair<double, SetTuple>> enumerate_eigenvalues(const SetFunction& f,
                                                               const SetFunction& g,
                                                               const EigenOptions& opts = {});

/// Cheeger constant min_{A not in {0, V}} f(A) / min(g(A), g(V\A)) for a
/// symmetric f and a nonnegative nondecreasing submodular g, with a sampled
/// cross-check of the variational quotient (which can only sit above it).
double second_eigenvalue_cheeger(const SetFunction& f_sym, const SetFunction& g_mono,
                                 int sample_trials = 200, std::uint64_t seed = 1);

/// min over t of the disjoint-pair extension of f at x - t 1.
double min_shifted_pair_value(const SetFunction& f_pair, ConstSpan x);

/// Feasibility record for the signed-graph coordinate system.
struct SignedEigenSystem {
  bool accepted = false;
  double lambda = 0.0;
  double max_violation = 0.0;
  std::vector<double> z;  // per stored edge (u < v), z_{uv}
  SubsetId d_plus = 0, d_minus = 0, d_zero = 0;
};

/// Solves the edge-variable system attached to a candidate eigenpair of the
/// signed total-variation / sup-norm pair at a ternary vector x.
SignedEigenSystem signed_eigen_check(const Graph& sg, double lambda, ConstSpan x,
                                     double tol = 1e-8, int max_rounds = 20000);

struct MinMaxCutResult {
  double mincut = 0.0;
  double maxcut = 0.0;
  std::vector<double> eigenvalues;
};

/// Eigenvalues of (sum w |x_i - x_j|, 2 ||x||_inf); the second-smallest is the
/// min-cut and the largest the max-cut (guard n <= 8).
MinMaxCutResult minmaxcut_via_eigen(const Graph& g, const EigenOptions& opts = {});

/// Distance from a point to the convex hull of the listed vertices
/// (used for hull-membership checks in tests).
double distance_to_hull(ConstSpan point, const std::vector<Vec>& vertices,
                        int max_iterations = 20000);

}  // namespace lovx
