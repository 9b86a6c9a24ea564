#include "lovx/lovasz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

namespace lovx {

namespace {

void check_length(const SetFunction& f, ConstSpan x) {
  std::size_t want = static_cast<std::size_t>(f.n()) * static_cast<std::size_t>(f.k());
  if (x.size() != want)
    throw DomainError("point has length " + std::to_string(x.size()) + ", expected " +
                      std::to_string(want));
}

std::vector<int> ascending_order(ConstSpan x) {
  std::vector<int> ord(x.size());
  std::iota(ord.begin(), ord.end(), 0);
  std::stable_sort(ord.begin(), ord.end(), [&](int a, int b) { return x[a] < x[b]; });
  return ord;
}

std::vector<int> ascending_abs_order(ConstSpan x) {
  std::vector<int> ord(x.size());
  std::iota(ord.begin(), ord.end(), 0);
  std::stable_sort(ord.begin(), ord.end(),
                   [&](int a, int b) { return std::fabs(x[a]) < std::fabs(x[b]); });
  return ord;
}

}  // namespace

// ---------------------------------------------------------------------------
// Original extension
// ---------------------------------------------------------------------------

PLValue eval_original(const SetFunction& f, ConstSpan x) {
  if (f.kind() != DomainKind::Powerset) throw DomainError("eval_original expects a powerset function");
  check_length(f, x);
  const int n = f.n();
  std::vector<int> ord = ascending_order(x);

  // Suffix sets of the chosen order: S_i = {ord[i..n-1]}, S_0 = V, S_n = empty.
  std::vector<SubsetId> suffix(n + 1, 0);
  for (int i = n - 1; i >= 0; --i) suffix[i] = suffix[i + 1] | (SubsetId{1} << ord[i]);
  std::vector<double> fs(n + 1);
  for (int i = 0; i <= n; ++i) fs[i] = f.eval(suffix[i]);

  PLValue out;
  out.subgradient.assign(n, 0.0);
  double prev = 0.0;
  for (int i = 0; i < n; ++i) {
    double gap = x[ord[i]] - prev;
    if (gap != 0.0) {
      out.value += gap * fs[i];
      out.chain.push_back(ChainEntry{SetTuple{suffix[i]}, gap});
    }
    prev = x[ord[i]];
    out.subgradient[ord[i]] = fs[i] - fs[i + 1];
  }
  return out;
}

double eval_original_integral(const SetFunction& f, ConstSpan x) {
  if (f.kind() != DomainKind::Powerset) throw DomainError("eval_original_integral expects a powerset function");
  check_length(f, x);
  const int n = f.n();
  std::vector<double> vals(x.begin(), x.end());
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  double total = vals.front() * f.eval(f.ground().full());
  for (std::size_t i = 0; i + 1 < vals.size(); ++i) {
    SubsetId level = 0;
    for (int j = 0; j < n; ++j)
      if (x[j] > vals[i]) level |= SubsetId{1} << j;
    total += (vals[i + 1] - vals[i]) * f.eval(level);
  }
  return total;
}

double eval_original_mobius(const SetFunction& f, ConstSpan x) {
  if (f.kind() != DomainKind::Powerset) throw DomainError("eval_original_mobius expects a powerset function");
  check_length(f, x);
  const int n = f.n();
  if (n > 16) throw SizeLimitError("Moebius form limited to n <= 16");
  const std::uint64_t size = f.ground().subset_count();
  std::vector<double> coeff(size);
  for (std::uint64_t a = 0; a < size; ++a) coeff[a] = f.at_mask(static_cast<SubsetId>(a));
  // In-place Moebius transform: coeff[A] = sum_{B subset A} (-1)^{|A\B|} f(B).
  for (int b = 0; b < n; ++b)
    for (std::uint64_t a = 0; a < size; ++a)
      if (a >> b & 1) coeff[a] -= coeff[a ^ (std::uint64_t{1} << b)];
  // min over the subset, by dynamic programming on the lowest bit.
  std::vector<double> mins(size, std::numeric_limits<double>::infinity());
  double total = 0.0;
  for (std::uint64_t a = 1; a < size; ++a) {
    std::uint64_t low = a & (~a + 1);
    int bit = __builtin_ctzll(low);
    std::uint64_t rest = a ^ low;
    mins[a] = rest == 0 ? x[bit] : std::min(x[bit], mins[rest]);
    if (coeff[a] != 0.0) total += coeff[a] * mins[a];
  }
  return total;
}

// ---------------------------------------------------------------------------
// Disjoint-pair extension
// ---------------------------------------------------------------------------

namespace {

/// Signed suffix chain of the canonical piece at x: zeros are assigned to the
/// positive side so that every coordinate carries a sign.
struct PairChain {
  std::vector<int> ord;          // ascending |x|, stable
  std::vector<SetPair> suffix;   // suffix[i] = signed {ord[i..n-1]}, suffix[n] = (0,0)
};

PairChain pair_chain(ConstSpan x) {
  PairChain c;
  c.ord = ascending_abs_order(x);
  const int n = static_cast<int>(x.size());
  c.suffix.assign(n + 1, SetPair{});
  for (int i = n - 1; i >= 0; --i) {
    SetPair s = c.suffix[i + 1];
    if (x[c.ord[i]] < 0.0)
      s.neg |= SubsetId{1} << c.ord[i];
    else
      s.pos |= SubsetId{1} << c.ord[i];
    c.suffix[i] = s;
  }
  return c;
}

}  // namespace

PLValue eval_disjoint_pair(const SetFunction& f, ConstSpan x) {
  if (f.kind() != DomainKind::DisjointPair)
    throw DomainError("eval_disjoint_pair expects a disjoint-pair function");
  check_length(f, x);
  const int n = f.n();
  PairChain c = pair_chain(x);
  std::vector<double> fs(n + 1);
  for (int i = 0; i <= n; ++i) fs[i] = f.eval(c.suffix[i]);

  PLValue out;
  out.subgradient.assign(n, 0.0);
  double prev = 0.0;
  for (int i = 0; i < n; ++i) {
    double a = std::fabs(x[c.ord[i]]);
    double gap = a - prev;
    if (gap != 0.0) {
      out.value += gap * fs[i];
      out.chain.push_back(ChainEntry{SetTuple{c.suffix[i]}, gap});
    }
    prev = a;
    double s = x[c.ord[i]] < 0.0 ? -1.0 : 1.0;
    out.subgradient[c.ord[i]] = s * (fs[i] - fs[i + 1]);
  }
  return out;
}

double eval_disjoint_pair_integral(const SetFunction& f, ConstSpan x) {
  if (f.kind() != DomainKind::DisjointPair)
    throw DomainError("eval_disjoint_pair_integral expects a disjoint-pair function");
  check_length(f, x);
  const int n = f.n();
  std::vector<double> vals;
  vals.push_back(0.0);
  for (double v : x) vals.push_back(std::fabs(v));
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < vals.size(); ++i) {
    SetPair level;
    for (int j = 0; j < n; ++j) {
      if (x[j] > vals[i]) level.pos |= SubsetId{1} << j;
      if (-x[j] > vals[i]) level.neg |= SubsetId{1} << j;
    }
    total += (vals[i + 1] - vals[i]) * f.eval(level);
  }
  return total;
}

// ---------------------------------------------------------------------------
// k-way extensions
// ---------------------------------------------------------------------------

PLValue eval_kway(const SetFunction& f, ConstSpan x) {
  if (f.kind() != DomainKind::KWay) throw DomainError("eval_kway expects a k-way function");
  check_length(f, x);
  const int n = f.n(), k = f.k(), total = n * k;
  std::vector<int> ord = ascending_order(x);

  auto suffix_tuple = [&](int from) {
    SetTuple t;
    t.parts.assign(k, SetPair{});
    for (int i = from; i < total; ++i) {
      int block = ord[i] / n, elem = ord[i] % n;
      t.parts[block].pos |= SubsetId{1} << elem;
    }
    return t;
  };
  std::vector<double> fs(total + 1);
  std::vector<SetTuple> suffixes(total + 1);
  for (int i = total; i >= 0; --i) {
    suffixes[i] = suffix_tuple(i);
    fs[i] = f.eval(suffixes[i]);
  }

  PLValue out;
  out.subgradient.assign(total, 0.0);
  // f(V,...,V) * min(x) plus the interval sum over the global threshold.
  if (x[ord[0]] != 0.0) {
    out.value += x[ord[0]] * fs[0];
    out.chain.push_back(ChainEntry{suffixes[0], x[ord[0]]});
  }
  for (int i = 1; i < total; ++i) {
    double gap = x[ord[i]] - x[ord[i - 1]];
    if (gap != 0.0) {
      out.value += gap * fs[i];
      out.chain.push_back(ChainEntry{suffixes[i], gap});
    }
  }
  for (int i = 0; i < total; ++i) out.subgradient[ord[i]] = fs[i] - fs[i + 1];
  return out;
}

PLValue eval_kway_disjoint_pair(const SetFunction& f, ConstSpan x) {
  if (f.kind() != DomainKind::KWayDisjointPair)
    throw DomainError("eval_kway_disjoint_pair expects a k-way disjoint-pair function");
  check_length(f, x);
  const int n = f.n(), k = f.k(), total = n * k;
  std::vector<int> ord = ascending_abs_order(x);

  auto suffix_tuple = [&](int from) {
    SetTuple t;
    t.parts.assign(k, SetPair{});
    for (int i = from; i < total; ++i) {
      int block = ord[i] / n, elem = ord[i] % n;
      if (x[ord[i]] < 0.0)
        t.parts[block].neg |= SubsetId{1} << elem;
      else
        t.parts[block].pos |= SubsetId{1} << elem;
    }
    return t;
  };
  std::vector<double> fs(total + 1);
  std::vector<SetTuple> suffixes(total + 1);
  for (int i = total; i >= 0; --i) {
    suffixes[i] = suffix_tuple(i);
    fs[i] = f.eval(suffixes[i]);
  }

  PLValue out;
  out.subgradient.assign(total, 0.0);
  double prev = 0.0;
  for (int i = 0; i < total; ++i) {
    double a = std::fabs(x[ord[i]]);
    double gap = a - prev;
    if (gap != 0.0) {
      out.value += gap * fs[i];
      out.chain.push_back(ChainEntry{suffixes[i], gap});
    }
    prev = a;
    double s = x[ord[i]] < 0.0 ? -1.0 : 1.0;
    out.subgradient[ord[i]] = s * (fs[i] - fs[i + 1]);
  }
  return out;
}

PLValue eval_extension(const SetFunction& f, ConstSpan x) {
  switch (f.kind()) {
    case DomainKind::Powerset: return eval_original(f, x);
    case DomainKind::DisjointPair: return eval_disjoint_pair(f, x);
    case DomainKind::KWay: return eval_kway(f, x);
    case DomainKind::KWayDisjointPair: return eval_kway_disjoint_pair(f, x);
  }
  throw DomainError("unknown extension kind");
}

double extension_value(const SetFunction& f, ConstSpan x) { return eval_extension(f, x).value; }

Vec subgradient_at(const SetFunction& f, ConstSpan x) { return eval_extension(f, x).subgradient; }

// ---------------------------------------------------------------------------
// Subdifferential vertices at indicators
// ---------------------------------------------------------------------------

namespace {

/// Enumerates piece gradients over all orderings consistent with the weak
/// order low-group < high-group (each group internally free), applying `emit`
/// to every chain ordering (a vector of element ids listed ascending).
template <typename Emit>
void for_each_consistent_order(std::vector<int> low, std::vector<int> high, Emit&& emit) {
  std::sort(low.begin(), low.end());
  std::sort(high.begin(), high.end());
  std::vector<int> ord(low.size() + high.size());
  do {
    do {
      std::copy(low.begin(), low.end(), ord.begin());
      std::copy(high.begin(), high.end(), ord.begin() + low.size());
      emit(ord);
    } while (std::next_permutation(high.begin(), high.end()));
  } while (std::next_permutation(low.begin(), low.end()));
}

double factorial(int m) {
  double r = 1;
  for (int i = 2; i <= m; ++i) r *= i;
  return r;
}

}  // namespace

std::vector<Vec> subdifferential_vertices(const SetFunction& f, const SetTuple& at,
                                          std::uint64_t budget) {
  const int n = f.n();
  std::set<Vec> dedup;

  if (f.kind() == DomainKind::Powerset) {
    if (at.k() != 1 || at.parts[0].neg) throw DomainError("expected a subset argument");
    SubsetId a = at.parts[0].pos;
    std::vector<int> inside = subset_vertices(a, n);
    std::vector<int> outside = subset_vertices(~a & f.ground().full(), n);
    double count = factorial(static_cast<int>(inside.size())) *
                   factorial(static_cast<int>(outside.size()));
    if (count > static_cast<double>(budget))
      throw SizeLimitError("subdifferential vertex enumeration exceeds budget");
    f.densify();
    for_each_consistent_order(outside, inside, [&](const std::vector<int>& ord) {
      SubsetId suffix = 0;
      Vec u(n, 0.0);
      double prev = 0.0;  // f(empty)
      for (int i = n - 1; i >= 0; --i) {
        suffix |= SubsetId{1} << ord[i];
        double fv = f.at_mask(suffix);
        u[ord[i]] = fv - prev;
        prev = fv;
      }
      dedup.insert(std::move(u));
    });
    return {dedup.begin(), dedup.end()};
  }

  if (f.kind() != DomainKind::DisjointPair)
    throw DomainError("subdifferential_vertices supports powerset and disjoint-pair functions");
  if (at.k() != 1) throw DomainError("expected a set-pair argument");
  SetPair ab = at.parts[0];
  SubsetId support = ab.support();
  std::vector<int> assigned = subset_vertices(support, n);
  std::vector<int> free = subset_vertices(~support & f.ground().full(), n);
  const int m = static_cast<int>(free.size());
  double count = std::ldexp(factorial(static_cast<int>(assigned.size())) * factorial(m), m);
  if (count > static_cast<double>(budget))
    throw SizeLimitError("subdifferential vertex enumeration exceeds budget");
  f.densify();

  for (SubsetId t = 0;; ++t) {
    // Sign assignment for the free elements: bit set -> positive side.
    SubsetId pos_ext = 0;
    for (int i = 0; i < m; ++i)
      if (t >> i & 1) pos_ext |= SubsetId{1} << free[i];
    SubsetId pos_side = ab.pos | pos_ext;
    for_each_consistent_order(free, assigned, [&](const std::vector<int>& ord) {
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
      dedup.insert(std::move(u));
    });
    if (m == 0 || t == (SubsetId{1} << m) - 1) break;
  }
  return {dedup.begin(), dedup.end()};
}

// ---------------------------------------------------------------------------
// Lattice operations / comonotonicity
// ---------------------------------------------------------------------------

std::pair<Vec, Vec> lattice_join_meet(ConstSpan x, ConstSpan y, LatticeSense sense) {
  if (x.size() != y.size()) throw DomainError("lattice operands must have equal length");
  Vec join(x.size()), meet(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (sense == LatticeSense::S2) {
      join[i] = std::max(x[i], y[i]);
      meet[i] = std::min(x[i], y[i]);
    } else if (x[i] * y[i] < 0.0) {
      join[i] = meet[i] = 0.0;
    } else if (x[i] >= 0.0 && y[i] >= 0.0) {
      join[i] = std::max(x[i], y[i]);
      meet[i] = std::min(x[i], y[i]);
    } else {
      join[i] = std::min(x[i], y[i]);
      meet[i] = std::max(x[i], y[i]);
    }
  }
  return {std::move(join), std::move(meet)};
}

ComonotonicReport check_comonotonic_additivity(const std::function<double(ConstSpan)>& F, int n,
                                               int trials, bool absolute, Rng& rng) {
  for (int t = 0; t < trials; ++t) {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.uniform_int(i + 1)]);

    Vec x(n), y(n);
    if (!absolute) {
      Vec xs(n), ys(n);
      for (int i = 0; i < n; ++i) xs[i] = rng.uniform(-1.0, 1.0);
      for (int i = 0; i < n; ++i) ys[i] = rng.uniform(-1.0, 1.0);
      std::sort(xs.begin(), xs.end());
      std::sort(ys.begin(), ys.end());
      for (int i = 0; i < n; ++i) {
        x[perm[i]] = xs[i];
        y[perm[i]] = ys[i];
      }
    } else {
      Vec xs(n), ys(n);
      std::vector<double> sign(n);
      for (int i = 0; i < n; ++i) xs[i] = rng.uniform(0.0, 1.0);
      for (int i = 0; i < n; ++i) ys[i] = rng.uniform(0.0, 1.0);
      for (int i = 0; i < n; ++i) sign[i] = rng.uniform() < 0.5 ? -1.0 : 1.0;
      std::sort(xs.begin(), xs.end());
      std::sort(ys.begin(), ys.end());
      for (int i = 0; i < n; ++i) {
        x[perm[i]] = sign[perm[i]] * xs[i];
        y[perm[i]] = sign[perm[i]] * ys[i];
      }
    }
    Vec sum(n);
    for (int i = 0; i < n; ++i) sum[i] = x[i] + y[i];
    double lhs = F(sum), rhs = F(x) + F(y);
    if (std::fabs(lhs - rhs) > 1e-9 * (1.0 + std::fabs(F(x)) + std::fabs(F(y))))
      return ComonotonicReport{false, ComonotonicWitness{x, y, lhs - rhs}};
  }
  return ComonotonicReport{};
}

// ---------------------------------------------------------------------------
// Original <-> disjoint-pair transforms
// ---------------------------------------------------------------------------

SetFunction transform_original_to_pair(const SetFunction& h, char rule, int sign) {
  if (h.kind() != DomainKind::Powerset)
    throw DomainError("transform_original_to_pair expects a powerset function");
  const int n = h.n();
  const SubsetId full = h.ground().full();
  if (rule == 'b') {
    for (SubsetId a = 0; a <= full; ++a)
      if (std::fabs(h.eval(a) - h.eval(full & ~a)) >
          (h.integer_valued() ? 0.0 : 1e-12 * (1.0 + std::fabs(h.eval(a)))))
        throw DomainError("rule 'b' requires a symmetric function");
  }
  SetFunction base = h;
  std::function<double(const SetTuple&)> fn;
  switch (rule) {
    case 'a':
      fn = [base, full](const SetTuple& t) {
        const SetPair& p = t.parts[0];
        return base.eval(p.pos) + base.eval(full & ~p.neg) - base.eval(full);
      };
      break;
    case 'b':
      fn = [base](const SetTuple& t) {
        return base.eval(t.parts[0].pos) + base.eval(t.parts[0].neg);
      };
      break;
    case 'c':
      fn = [base](const SetTuple& t) { return base.eval(t.parts[0].pos); };
      break;
    case 'd':
      fn = [base](const SetTuple& t) { return base.eval(t.parts[0].support()); };
      break;
    case 'e':
      fn = [base, sign](const SetTuple& t) {
        return base.eval(t.parts[0].pos) + sign * base.eval(t.parts[0].neg);
      };
      break;
    default:
      throw DomainError("transform rule must be one of a..e");
  }
  return SetFunction::from_callback(DomainKind::DisjointPair, n, 1, std::move(fn));
}

// ---------------------------------------------------------------------------
// Feasible domains
// ---------------------------------------------------------------------------

std::vector<SetTuple> FeasibleDomain::associated_tuples(ConstSpan x) const {
  std::vector<SetTuple> out;
  const bool pair_kind = kind == DomainKind::DisjointPair || kind == DomainKind::KWayDisjointPair;
  const int total = n * k;
  if (static_cast<int>(x.size()) != total) throw DomainError("point length mismatch");

  auto level_tuple = [&](double t) {
    SetTuple tup;
    tup.parts.assign(k, SetPair{});
    for (int i = 0; i < total; ++i) {
      int block = i / n, elem = i % n;
      if (pair_kind) {
        if (x[i] > t) tup.parts[block].pos |= SubsetId{1} << elem;
        if (-x[i] > t) tup.parts[block].neg |= SubsetId{1} << elem;
      } else if (x[i] > t) {
        tup.parts[block].pos |= SubsetId{1} << elem;
      }
    }
    return tup;
  };

  if (pair_kind) {
    std::vector<double> vals;
    vals.push_back(0.0);
    for (double v : x) vals.push_back(std::fabs(v));
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    for (std::size_t i = 0; i + 1 < vals.size(); ++i) out.push_back(level_tuple(vals[i]));
  } else {
    std::vector<double> vals(x.begin(), x.end());
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    if (vals.front() != 0.0) {
      SetTuple full_tuple;
      full_tuple.parts.assign(k, SetPair{});
      for (auto& p : full_tuple.parts) p.pos = (SubsetId{1} << n) - 1;
      out.push_back(full_tuple);
    }
    for (std::size_t i = 0; i + 1 < vals.size(); ++i) out.push_back(level_tuple(vals[i]));
  }
  return out;
}

bool FeasibleDomain::contains_point(ConstSpan x) const {
  if (!member) return true;
  for (const auto& t : associated_tuples(x))
    if (!member(t)) return false;
  return true;
}

}  // namespace lovx
