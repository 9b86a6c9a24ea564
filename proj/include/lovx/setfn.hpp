#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <utility>

#include "lovx/common.hpp"

namespace lovx {

enum class DomainKind { Powerset, DisjointPair, KWay, KWayDisjointPair };

std::string to_string(DomainKind kind);
DomainKind domain_kind_from_string(const std::string& s);

/// Discrete function on P(V), P2(V) or k-tuples thereof, with the convention
/// that the all-empty argument maps to 0.  Backed by a dense table or by a
/// memoized callback; evaluation is pure and safe for concurrent reads.
class SetFunction {
 public:
  SetFunction() = default;

  static SetFunction from_powerset_table(int n, std::vector<double> values);
  static SetFunction from_pair_table(int n, std::vector<double> values);
  static SetFunction from_callback(DomainKind kind, int n, int k,
                                   std::function<double(const SetTuple&)> fn,
                                   std::size_t memo_budget = std::size_t{1} << 20);

  DomainKind kind() const { return kind_; }
  int n() const { return ground_.n; }
  int k() const { return k_; }
  const GroundSet& ground() const { return ground_; }
  bool integer_valued() const { return integer_valued_; }

  /// f(a); validates that `a` matches the declared domain.
  double eval(const SetTuple& a) const;
  double eval(SubsetId a) const;
  double eval(SetPair a) const;
  double operator()(const SetTuple& a) const { return eval(a); }

  /// Unchecked table lookup paths used by enumeration loops.
  double at_mask(SubsetId a) const { return table_ ? (*table_)[a] : eval(SubsetId{a}); }
  double at_code(std::uint64_t code) const {
    return table_ ? (*table_)[code] : eval(pair_from_code(code, n()));
  }

  bool has_table() const { return table_ != nullptr; }
  /// Materialize a dense table (powerset / disjoint-pair only) so chain
  /// evaluations become O(1) lookups.
  void densify(std::uint64_t max_entries = std::uint64_t{1} << 22) const;

  /// Pointwise combinations on a shared domain.
  static SetFunction scale(const SetFunction& f, double c);
  static SetFunction sum(const SetFunction& f, const SetFunction& g);
  static SetFunction difference(const SetFunction& f, const SetFunction& g);

 private:
  void check_arg(const SetTuple& a) const;

  DomainKind kind_ = DomainKind::Powerset;
  GroundSet ground_{1};
  int k_ = 1;
  bool integer_valued_ = false;
  mutable std::shared_ptr<std::vector<double>> table_;  // dense, indexed by mask/code
  std::function<double(const SetTuple&)> fn_;

  struct Memo {
    std::mutex mu;
    std::map<SetTuple, double> cache;
    std::size_t budget = 0;
  };
  std::shared_ptr<Memo> memo_;
};

// ---------------------------------------------------------------------------
// Lattice operations on arguments
// ---------------------------------------------------------------------------

inline SubsetId subset_join(SubsetId a, SubsetId b) { return a | b; }
inline SubsetId subset_meet(SubsetId a, SubsetId b) { return a & b; }

/// Bisubmodular lattice: (A1∪B1)\(A2∪B2) on the positive side and symmetrically.
SetPair pair_join(const SetPair& a, const SetPair& b);
SetPair pair_meet(const SetPair& a, const SetPair& b);

SetTuple tuple_join(const SetTuple& a, const SetTuple& b);  // componentwise union
SetTuple tuple_meet(const SetTuple& a, const SetTuple& b);  // componentwise intersection

// ---------------------------------------------------------------------------
// Submodularity checks
// ---------------------------------------------------------------------------

struct SubmodularityWitness {
  SetTuple a;
  SetTuple b;
  double violation = 0.0;  // f(a∨b)+f(a∧b) - f(a) - f(b) > 0 at a violation
};

struct CheckResult {
  bool ok = true;
  std::optional<SubmodularityWitness> witness;
  explicit operator bool() const { return ok; }
};

/// Submodularity of a powerset function (guard n <= 24).
CheckResult is_submodular(const SetFunction& f);
/// Bisubmodularity of a disjoint-pair function (guard n <= 15).
CheckResult is_bisubmodular(const SetFunction& f);
/// k-way submodularity under componentwise union/intersection (guard n*k <= 18).
CheckResult is_kway_submodular(const SetFunction& f);

/// min over unordered incomparable pairs of f(A)+f(A') - f(A∨A') - f(A∧A').
/// Comparable pairs satisfy the inequality with equality for every function,
/// so they are excluded; returns +inf when no incomparable pair exists.
double delta_submodularity_gap(const SetFunction& f);

/// Reference strictly submodular function g(A) = #A * #(V\A).
SetFunction strict_submodular_reference(int n);

/// f = f1 - f2 with f1 submodular and f2 strictly submodular
/// (f2 = C * g with C = max(ceil(-delta(f)/delta(g)), 0) + 1).
std::pair<SetFunction, SetFunction> decompose_difference_submodular(const SetFunction& f);

}  // namespace lovx
