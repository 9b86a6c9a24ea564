#pragma once

#include "lovx/graph.hpp"
#include "lovx/lovasz.hpp"
#include "lovx/setfn.hpp"

namespace lovx {

/// Exact brute-force optimum; witnesses re-evaluate to the optimum exactly.
struct OracleResult {
  double optimum = 0.0;
  std::vector<SetTuple> witnesses;  // deterministic order, capped
  std::uint64_t evaluations = 0;
};

/// Exact optimum of f/g (or f alone when g is null) over the family, by
/// enumerating the domain of f.  Arguments with g = 0 (or outside the family)
/// are skipped.  Guards: 2^n for powerset (n <= 20), 3^n for disjoint pairs
/// (n <= 13).  Enumeration is partitioned across threads with a deterministic
/// reduction.
OracleResult optimize_subsets(const SetFunction& f, const SetFunction* g, OptSense sense,
                              const FeasibleDomain* family = nullptr,
                              std::size_t witness_cap = 16);

struct PartitionConstraints {
  std::vector<int> terminals;  // block i must contain terminals[i]
  bool exactly_k_nonempty = false;
  bool allow_empty_blocks = true;
};

/// Exact optimum over ordered partitions of {0..n-1} into at most k blocks,
/// enumerated via restricted growth strings (guard n <= 12).
OracleResult optimize_partitions(const std::function<double(const std::vector<SubsetId>&)>& objective,
                                 int n, int k, OptSense sense,
                                 const PartitionConstraints& constraints = {},
                                 std::size_t witness_cap = 16);

/// |cut(A)| for every A, computed incrementally along a Gray-code walk.
std::vector<double> all_cut_values(const Graph& g);

/// Double-enumeration checks of the discrete reduction identities:
///   13: min/max f/g over subsets equals the pair form (and the disjoint-pair
///       form when f, g vanish on the empty set),
///   14: equals the k-tuple sum and product forms (and the disjoint k-tuple
///       sum form),
///   15: the disjoint-pair analog of 14,
///   16: min/max of f^L over [a,b]^n equals a f(V) + (b-a) min/max_A f(A).
/// Returns false and fills `detail` on a mismatch.
bool check_reduction_identity(int which, const SetFunction& f, const SetFunction& g, int k,
                              double a, double b, std::string* detail = nullptr);

}  // namespace lovx
