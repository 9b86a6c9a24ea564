#pragma once

#include <functional>

#include "lovx/setfn.hpp"

namespace lovx {

/// Which extension variant a continuous point is interpreted under.
struct ExtensionKind {
  DomainKind tag = DomainKind::Powerset;
};

/// One level set crossed by a point, with the length of the parameter
/// interval on which it is active.
struct ChainEntry {
  SetTuple level;
  double length = 0.0;
};

/// Value-and-subgradient record of a piecewise-linear extension at a point.
struct PLValue {
  double value = 0.0;
  std::vector<ChainEntry> chain;     // positive-length intervals only
  std::vector<double> subgradient;   // canonical piece gradient
};

using Vec = std::vector<double>;
using ConstSpan = std::span<const double>;

// ---------------------------------------------------------------------------
// Evaluators.  All are total on their natural space and positively
// one-homogeneous; the canonical subgradient uses the stable ascending sort
// (ties broken by index) and satisfies <v, x> = f^L(x) exactly.
// ---------------------------------------------------------------------------

PLValue eval_original(const SetFunction& f, ConstSpan x);
/// Breakpoint quadrature of the level-set integral; an independent route that
/// agrees with eval_original to 1e-9.
double eval_original_integral(const SetFunction& f, ConstSpan x);
/// Moebius-coefficient form, sum over subsets of coeff(A) * min_{i in A} x_i
/// (guard n <= 16).
double eval_original_mobius(const SetFunction& f, ConstSpan x);

PLValue eval_disjoint_pair(const SetFunction& f, ConstSpan x);
double eval_disjoint_pair_integral(const SetFunction& f, ConstSpan x);

/// k-way variants; x is laid out as k blocks of length n.
PLValue eval_kway(const SetFunction& f, ConstSpan x);
PLValue eval_kway_disjoint_pair(const SetFunction& f, ConstSpan x);

/// Dispatch on f.kind().
PLValue eval_extension(const SetFunction& f, ConstSpan x);
double extension_value(const SetFunction& f, ConstSpan x);
Vec subgradient_at(const SetFunction& f, ConstSpan x);

// ---------------------------------------------------------------------------
// Subdifferential at indicator points
// ---------------------------------------------------------------------------

/// Vertices spanning the subdifferential of the extension at the indicator
/// vector of `at` (a subset for powerset functions, a disjoint pair
/// otherwise): piece gradients of all linear pieces whose closure contains
/// the indicator, deduplicated.  Guard: raw vertex count <= budget.
std::vector<Vec> subdifferential_vertices(const SetFunction& f, const SetTuple& at,
                                          std::uint64_t budget = std::uint64_t{1} << 22);

// ---------------------------------------------------------------------------
// Continuous lattice operations and comonotonicity
// ---------------------------------------------------------------------------

enum class LatticeSense { S2, BS2 };

/// Componentwise join x∨y and meet x∧y; BS2 uses the sign-aware three-case
/// operations (opposite signs collapse to 0).
std::pair<Vec, Vec> lattice_join_meet(ConstSpan x, ConstSpan y, LatticeSense sense);

struct ComonotonicWitness {
  Vec x, y;
  double gap = 0.0;
};
struct ComonotonicReport {
  bool ok = true;
  std::optional<ComonotonicWitness> witness;
  explicit operator bool() const { return ok; }
};

/// Samples (absolutely) comonotonic pairs and tests F(x+y) = F(x)+F(y) within
/// 1e-9 relative tolerance.  Sound for refutation only.
ComonotonicReport check_comonotonic_additivity(const std::function<double(ConstSpan)>& F, int n,
                                               int trials, bool absolute, Rng& rng);

// ---------------------------------------------------------------------------
// Original <-> disjoint-pair transforms
// ---------------------------------------------------------------------------

/// Builds the disjoint-pair function from a powerset function h per rule:
///   'a': f(A,B) = h(A) + h(V\B) - h(V)
///   'b': f(A,B) = h(A) + h(B)        (requires h symmetric)
///   'c': f(A,B) = h(A)
///   'd': f(A,B) = h(A ∪ B)
///   'e': f(A,B) = h(A) + sign * h(B)  (sign = +1 or -1)
SetFunction transform_original_to_pair(const SetFunction& h, char rule, int sign = +1);

// ---------------------------------------------------------------------------
// Feasible domains
// ---------------------------------------------------------------------------

/// Restricted family membership plus the induced point predicate: a point is
/// feasible when every associated set-tuple that carries positive measure in
/// the extension integral lies in the family.
struct FeasibleDomain {
  DomainKind kind = DomainKind::Powerset;
  int n = 1;
  int k = 1;
  std::function<bool(const SetTuple&)> member;  // empty => everything feasible

  bool is_member(const SetTuple& t) const { return !member || member(t); }
  bool contains_point(ConstSpan x) const;
  /// Set-tuples with positive measure at x (plus the all-V tuple when min > 0
  /// on subset-valued kinds).
  std::vector<SetTuple> associated_tuples(ConstSpan x) const;
};

}  // namespace lovx
