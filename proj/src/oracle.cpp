#include "lovx/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>

namespace lovx {

namespace {

struct Accum {
  double best;
  std::vector<SetTuple> witnesses;
  std::uint64_t evals = 0;

  explicit Accum(OptSense sense)
      : best(sense == OptSense::Min ? std::numeric_limits<double>::infinity()
                                    : -std::numeric_limits<double>::infinity()) {}

  void offer(double v, const SetTuple& t, OptSense sense, std::size_t cap) {
    if (v == best) {
      if (witnesses.size() < cap) witnesses.push_back(t);
    } else if (better(v, best, sense)) {
      best = v;
      witnesses.assign(1, t);
    }
  }

  void merge(const Accum& other, OptSense sense, std::size_t cap) {
    evals += other.evals;
    if (other.best == best) {
      for (const auto& w : other.witnesses)
        if (witnesses.size() < cap) witnesses.push_back(w);
    } else if (better(other.best, best, sense)) {
      best = other.best;
      witnesses = other.witnesses;
    }
  }
};

}  // namespace

OracleResult optimize_subsets(const SetFunction& f, const SetFunction* g, OptSense sense,
                              const FeasibleDomain* family, std::size_t witness_cap) {
  const int n = f.n();
  std::uint64_t count = 0;
  bool pair_kind = false;
  switch (f.kind()) {
    case DomainKind::Powerset:
      if (n > 20) throw SizeLimitError("subset oracle limited to n <= 20");
      count = f.ground().subset_count();
      break;
    case DomainKind::DisjointPair:
      if (n > 13) throw SizeLimitError("disjoint-pair oracle limited to n <= 13");
      count = pow3(n);
      pair_kind = true;
      break;
    default:
      throw DomainError("optimize_subsets handles powerset and disjoint-pair domains");
  }
  if (g && (g->kind() != f.kind() || g->n() != n))
    throw DomainError("numerator and denominator live on different domains");

  auto run_range = [&](std::uint64_t lo, std::uint64_t hi) {
    Accum acc(sense);
    for (std::uint64_t idx = lo; idx < hi; ++idx) {
      SetTuple arg = pair_kind ? SetTuple{pair_from_code(idx, n)}
                               : SetTuple{static_cast<SubsetId>(idx)};
      if (arg.all_empty()) continue;
      if (family && !family->is_member(arg)) continue;
      double denom = 1.0;
      if (g) {
        denom = g->eval(arg);
        ++acc.evals;
        if (denom == 0.0) continue;
      }
      double value = f.eval(arg) / denom;
      ++acc.evals;
      acc.offer(value, arg, sense, witness_cap);
    }
    return acc;
  };

  int workers = std::min<int>(thread_budget(), 8);
  Accum total(sense);
  if (workers <= 1 || count < 4096) {
    total = run_range(0, count);
  } else {
    std::vector<std::future<Accum>> futures;
    std::uint64_t chunk = (count + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      std::uint64_t lo = w * chunk, hi = std::min<std::uint64_t>(count, lo + chunk);
      if (lo >= hi) break;
      futures.push_back(std::async(std::launch::async, run_range, lo, hi));
    }
    // Ranges merge in index order, so the result is independent of the
    // worker count.
    for (auto& fu : futures) total.merge(fu.get(), sense, witness_cap);
  }
  if (total.witnesses.empty()) throw FeasibilityError("no feasible argument with nonzero denominator");
  return OracleResult{total.best, std::move(total.witnesses), total.evals};
}

OracleResult optimize_partitions(
    const std::function<double(const std::vector<SubsetId>&)>& objective, int n, int k,
    OptSense sense, const PartitionConstraints& constraints, std::size_t witness_cap) {
  if (n > 12) throw SizeLimitError("partition oracle limited to n <= 12");
  if (k < 1 || k > n) throw DomainError("partition block count out of range");
  for (int t : constraints.terminals)
    if (t < 0 || t >= n) throw DomainError("terminal out of range");
  if (!constraints.terminals.empty() && constraints.terminals.size() != static_cast<std::size_t>(k))
    throw DomainError("need one terminal per block");

  Accum acc(sense);
  std::vector<int> lbl(n, 0);
  // Restricted growth labels: lbl[v] < min(used+1, k); each canonical labeling
  // stands for one unordered partition into at most k blocks.
  std::function<void(int, int)> rec = [&](int pos, int used) {
    if (pos == n) {
      if (constraints.exactly_k_nonempty && used != k) return;
      if (!constraints.terminals.empty()) {
        // Blocks are reported in terminal order; labelings that separate the
        // terminals map one-to-one onto terminal-respecting partitions.
        if (used > k) return;
        std::vector<int> label_of(k, -1);
        for (std::size_t b = 0; b < constraints.terminals.size(); ++b) {
          int l = lbl[constraints.terminals[b]];
          if (label_of[l] != -1) return;  // two terminals share a block
          label_of[l] = static_cast<int>(b);
        }
        std::vector<SubsetId> relabeled(k, 0);
        for (int v = 0; v < n; ++v) {
          int l = label_of[lbl[v]];
          if (l < 0) return;  // a block without a terminal
          relabeled[l] |= SubsetId{1} << v;
        }
        double val = objective(relabeled);
        ++acc.evals;
        acc.offer(val, SetTuple::of_subsets(relabeled), sense, witness_cap);
        return;
      }
      std::vector<SubsetId> bs(k, 0);
      for (int v = 0; v < n; ++v) bs[lbl[v]] |= SubsetId{1} << v;
      double val = objective(bs);
      ++acc.evals;
      acc.offer(val, SetTuple::of_subsets(bs), sense, witness_cap);
      return;
    }
    int limit = std::min(used + 1, k);
    for (int b = 0; b < limit; ++b) {
      lbl[pos] = b;
      rec(pos + 1, std::max(used, b + 1));
    }
  };
  rec(0, 0);
  if (acc.witnesses.empty()) throw FeasibilityError("no feasible partition");
  return OracleResult{acc.best, std::move(acc.witnesses), acc.evals};
}

std::vector<double> all_cut_values(const Graph& g) {
  const int n = g.n();
  if (n > 24) throw SizeLimitError("cut enumeration limited to n <= 24");
  std::vector<double> cut(std::size_t{1} << n, 0.0);
  // Gray-code walk: flipping vertex v changes the cut by deg(v) - 2 w(v, S)
  // when entering the set S and by the negation when leaving.
  SubsetId cur = 0;
  double value = 0.0;
  for (std::uint64_t i = 1; i < (std::uint64_t{1} << n); ++i) {
    SubsetId gray = static_cast<SubsetId>(i ^ (i >> 1));
    SubsetId prev = static_cast<SubsetId>((i - 1) ^ ((i - 1) >> 1));
    int v = __builtin_ctz(gray ^ prev);
    double to_inside = 0.0;
    for (int u : g.neighbors(v))
      if (cur >> u & 1) to_inside += g.weight(u, v);
    bool entering = !(cur >> v & 1);
    double delta = g.degree(v) - 2.0 * to_inside;
    value += entering ? delta : -delta;
    cur ^= SubsetId{1} << v;
    cut[cur] = value;
  }
  cut[0] = 0.0;
  return cut;
}

// ---------------------------------------------------------------------------
// Reduction identities
// ---------------------------------------------------------------------------

namespace {

struct Best {
  double mn = std::numeric_limits<double>::infinity();
  double mx = -std::numeric_limits<double>::infinity();
  void offer(double v) {
    mn = std::min(mn, v);
    mx = std::max(mx, v);
  }
};

bool close(double a, double b) { return std::fabs(a - b) <= 1e-9 * (1.0 + std::fabs(a) + std::fabs(b)); }

bool fail(std::string* detail, const std::string& msg) {
  if (detail) *detail = msg;
  return false;
}

}  // namespace

bool check_reduction_identity(int which, const SetFunction& f, const SetFunction& g, int k,
                              double a, double b, std::string* detail) {
  const int n = f.n();
  const SubsetId full = f.ground().full();

  if (which == 16) {
    if (n > 10) throw SizeLimitError("identity 16 limited to n <= 10");
    Best box, sets;
    Rng rng(1234);
    for (SubsetId s = 0; s <= full; ++s) {
      Vec x(n, a);
      for (int i = 0; i < n; ++i)
        if (s >> i & 1) x[i] = b;
      box.offer(eval_original(f, x).value);
      sets.offer(f.eval(s));
    }
    for (int t = 0; t < 200; ++t) {
      Vec x(n);
      for (int i = 0; i < n; ++i) x[i] = rng.uniform(a, b);
      double v = eval_original(f, x).value;
      if (v < box.mn - 1e-9 || v > box.mx + 1e-9)
        return fail(detail, "interior point escapes the vertex range");
    }
    double want_min = a * f.eval(full) + (b - a) * sets.mn;
    double want_max = a * f.eval(full) + (b - a) * sets.mx;
    if (!close(box.mn, want_min)) return fail(detail, "box minimum mismatch");
    if (!close(box.mx, want_max)) return fail(detail, "box maximum mismatch");
    return true;
  }

  if (f.kind() != g.kind() || f.n() != g.n()) throw DomainError("f and g must share a domain");

  if (which == 13) {
    if (f.kind() != DomainKind::Powerset) throw DomainError("identity 13 expects powerset functions");
    if (n > 10) throw SizeLimitError("identity 13 limited to n <= 10");
    Best single, pairs_any, pairs_disjoint, pairs_compl;
    for (SubsetId s = 1; s <= full; ++s)
      if (g.eval(s) != 0.0) single.offer(f.eval(s) / g.eval(s));
    for (SubsetId s = 0; s <= full; ++s)
      for (SubsetId t = 0; t <= full; ++t) {
        if (s == 0 && t == 0) continue;
        double denom = g.eval(s) + g.eval(t);
        if (denom != 0.0) {
          double ratio = (f.eval(s) + f.eval(t)) / denom;
          pairs_any.offer(ratio);
          if ((s & t) == 0) pairs_disjoint.offer(ratio);
        }
        double denom_c = g.eval(s) + g.eval(full & ~t);
        if (denom_c != 0.0) pairs_compl.offer((f.eval(s) + f.eval(full & ~t)) / denom_c);
      }
    if (!close(single.mn, pairs_any.mn) || !close(single.mx, pairs_any.mx))
      return fail(detail, "pair form mismatch");
    if (!close(single.mn, pairs_disjoint.mn) || !close(single.mx, pairs_disjoint.mx))
      return fail(detail, "disjoint pair form mismatch");
    if (!close(single.mn, pairs_compl.mn) || !close(single.mx, pairs_compl.mx))
      return fail(detail, "complement pair form mismatch");
    return true;
  }

  if (which == 14) {
    if (f.kind() != DomainKind::Powerset) throw DomainError("identity 14 expects powerset functions");
    if (n * k > 16) throw SizeLimitError("identity 14 limited to n*k <= 16");
    Best single, tuple_sum, tuple_prod, tuple_disjoint;
    for (SubsetId s = 1; s <= full; ++s)
      if (g.eval(s) != 0.0) single.offer(f.eval(s) / g.eval(s));
    std::vector<SubsetId> parts(k, 0);
    std::function<void(int)> rec = [&](int pos) {
      if (pos == k) {
        double fs = 0.0, gs = 0.0, fp = 1.0, gp = 1.0;
        bool disjoint = true, any_nonempty = false, all_nonempty = true;
        SubsetId seen = 0;
        for (SubsetId p : parts) {
          fs += f.eval(p);
          gs += g.eval(p);
          fp *= f.eval(p);
          gp *= g.eval(p);
          if (seen & p) disjoint = false;
          seen |= p;
          any_nonempty = any_nonempty || p != 0;
          all_nonempty = all_nonempty && p != 0;
        }
        if (!any_nonempty) return;
        if (gs != 0.0) {
          tuple_sum.offer(fs / gs);
          if (disjoint) tuple_disjoint.offer(fs / gs);
        }
        if (all_nonempty && gp > 0.0 && fp >= 0.0) tuple_prod.offer(std::pow(fp / gp, 1.0 / k));
        return;
      }
      for (SubsetId p = 0; p <= full; ++p) {
        parts[pos] = p;
        rec(pos + 1);
      }
    };
    rec(0);
    if (!close(single.mn, tuple_sum.mn) || !close(single.mx, tuple_sum.mx))
      return fail(detail, "tuple sum form mismatch");
    if (!close(single.mn, tuple_prod.mn)) return fail(detail, "tuple product form mismatch");
    if (!close(single.mn, tuple_disjoint.mn) || !close(single.mx, tuple_disjoint.mx))
      return fail(detail, "disjoint tuple form mismatch");
    return true;
  }

  if (which == 15) {
    if (f.kind() != DomainKind::DisjointPair)
      throw DomainError("identity 15 expects disjoint-pair functions");
    if (n > 6) throw SizeLimitError("identity 15 limited to n <= 6");
    Best single, tuple_sum, tuple_disjoint;
    const std::uint64_t m = pow3(n);
    for (std::uint64_t c = 1; c < m; ++c) {
      SetPair p = pair_from_code(c, n);
      if (g.eval(p) != 0.0) single.offer(f.eval(p) / g.eval(p));
    }
    for (std::uint64_t c1 = 0; c1 < m; ++c1)
      for (std::uint64_t c2 = 0; c2 < m; ++c2) {
        if (c1 == 0 && c2 == 0) continue;
        SetPair p1 = pair_from_code(c1, n), p2 = pair_from_code(c2, n);
        double denom = g.eval(p1) + g.eval(p2);
        if (denom == 0.0) continue;
        double ratio = (f.eval(p1) + f.eval(p2)) / denom;
        tuple_sum.offer(ratio);
        if ((p1.support() & p2.support()) == 0) tuple_disjoint.offer(ratio);
      }
    if (!close(single.mn, tuple_sum.mn) || !close(single.mx, tuple_sum.mx))
      return fail(detail, "pair tuple sum mismatch");
    if (!close(single.mn, tuple_disjoint.mn) || !close(single.mx, tuple_disjoint.mx))
      return fail(detail, "disjoint pair tuple mismatch");
    return true;
  }

  throw DomainError("identity selector must be one of 13, 14, 15, 16");
}

}  // namespace lovx
