#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace lovx {

/// Vertices are 0..n-1; a subset of the ground set is an n-bit mask.
using SubsetId = std::uint32_t;

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

/// Argument does not live on the domain the callee expects.
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

/// An enumeration guard was exceeded (hard precondition, not a format limit).
class SizeLimitError : public std::runtime_error {
 public:
  explicit SizeLimitError(const std::string& what) : std::runtime_error(what) {}
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line)
      : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// No feasible level set / infeasible configuration surfaced by a solver.
class FeasibilityError : public std::runtime_error {
 public:
  explicit FeasibilityError(const std::string& what) : std::runtime_error(what) {}
};

// ---------------------------------------------------------------------------
// Ground set and arguments
// ---------------------------------------------------------------------------

struct GroundSet {
  int n = 0;

  GroundSet() = default;
  explicit GroundSet(int n_) : n(n_) {
    if (n < 1) throw DomainError("ground set must have at least one element");
    if (n > 31) throw DomainError("ground set too large for bitmask representation");
  }
  SubsetId full() const { return (SubsetId{1} << n) - 1; }
  std::uint64_t subset_count() const { return std::uint64_t{1} << n; }
};

inline int popcount(SubsetId s) { return __builtin_popcount(s); }

/// Ordered disjoint pair (A, B); invariant pos & neg == 0.
struct SetPair {
  SubsetId pos = 0;
  SubsetId neg = 0;

  SetPair() = default;
  SetPair(SubsetId p, SubsetId q) : pos(p), neg(q) {
    if (p & q) throw DomainError("set pair is not disjoint");
  }
  bool empty() const { return pos == 0 && neg == 0; }
  SubsetId support() const { return pos | neg; }
  friend bool operator==(const SetPair& a, const SetPair& b) {
    return a.pos == b.pos && a.neg == b.neg;
  }
  friend bool operator<(const SetPair& a, const SetPair& b) {
    return a.pos != b.pos ? a.pos < b.pos : a.neg < b.neg;
  }
};

/// Argument to a set function: k parts, each a subset or a disjoint pair.
/// Subset-valued domains leave every `neg` at zero.
struct SetTuple {
  std::vector<SetPair> parts;

  SetTuple() = default;
  explicit SetTuple(SetPair p) : parts{p} {}
  explicit SetTuple(SubsetId a) : parts{SetPair{a, 0}} {}
  explicit SetTuple(std::vector<SetPair> ps) : parts(std::move(ps)) {}

  static SetTuple of_subsets(const std::vector<SubsetId>& as) {
    SetTuple t;
    t.parts.reserve(as.size());
    for (SubsetId a : as) t.parts.push_back(SetPair{a, 0});
    return t;
  }

  int k() const { return static_cast<int>(parts.size()); }
  bool all_empty() const {
    for (const auto& p : parts)
      if (!p.empty()) return false;
    return true;
  }
  friend bool operator==(const SetTuple& a, const SetTuple& b) { return a.parts == b.parts; }
  friend bool operator<(const SetTuple& a, const SetTuple& b) { return a.parts < b.parts; }
};

/// Ternary code of a pair: digit per element, 0 = neither, 1 = pos, 2 = neg.
std::uint64_t pair_code(const SetPair& p, int n);
SetPair pair_from_code(std::uint64_t code, int n);
std::uint64_t pow3(int n);

std::string subset_to_string(SubsetId a, int n);
std::string tuple_to_string(const SetTuple& t, int n);

/// Sorted vertex list of a subset.
std::vector<int> subset_vertices(SubsetId a, int n);

// ---------------------------------------------------------------------------
// Deterministic RNG (splitmix64; stable across platforms and libstdc++)
// ---------------------------------------------------------------------------

class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0x9e3779b97f4a7c15ULL) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  /// Uniform double in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [0, m).
  std::uint64_t uniform_int(std::uint64_t m) { return next_u64() % m; }
  int uniform_int(int m) { return static_cast<int>(next_u64() % static_cast<std::uint64_t>(m)); }

 private:
  std::uint64_t state_;
};

enum class OptSense { Min, Max };

inline bool better(double cand, double best, OptSense sense) {
  return sense == OptSense::Min ? cand < best : cand > best;
}

/// Worker cap honoring the LOVX_THREADS environment variable.
int thread_budget();

}  // namespace lovx
