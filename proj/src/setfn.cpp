#include "lovx/setfn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lovx {

std::string to_string(DomainKind kind) {
  switch (kind) {
    case DomainKind::Powerset: return "powerset";
    case DomainKind::DisjointPair: return "disjoint-pair";
    case DomainKind::KWay: return "k-way";
    case DomainKind::KWayDisjointPair: return "k-way-disjoint-pair";
  }
  return "?";
}

DomainKind domain_kind_from_string(const std::string& s) {
  if (s == "powerset") return DomainKind::Powerset;
  if (s == "disjoint-pair") return DomainKind::DisjointPair;
  if (s == "k-way") return DomainKind::KWay;
  if (s == "k-way-disjoint-pair") return DomainKind::KWayDisjointPair;
  throw DomainError("unknown domain kind: " + s);
}

static bool all_integers(const std::vector<double>& v) {
  for (double x : v)
    if (std::rint(x) != x) return false;
  return true;
}

SetFunction SetFunction::from_powerset_table(int n, std::vector<double> values) {
  GroundSet g(n);
  if (values.size() != g.subset_count())
    throw DomainError("powerset table must have 2^n entries");
  values[0] = 0.0;  // f(empty) is reset to 0 by convention
  SetFunction f;
  f.kind_ = DomainKind::Powerset;
  f.ground_ = g;
  f.k_ = 1;
  f.integer_valued_ = all_integers(values);
  f.table_ = std::make_shared<std::vector<double>>(std::move(values));
  return f;
}

SetFunction SetFunction::from_pair_table(int n, std::vector<double> values) {
  GroundSet g(n);
  if (n > 20) throw SizeLimitError("pair table too large");
  if (values.size() != pow3(n)) throw DomainError("disjoint-pair table must have 3^n entries");
  values[0] = 0.0;
  SetFunction f;
  f.kind_ = DomainKind::DisjointPair;
  f.ground_ = g;
  f.k_ = 1;
  f.integer_valued_ = all_integers(values);
  f.table_ = std::make_shared<std::vector<double>>(std::move(values));
  return f;
}

SetFunction SetFunction::from_callback(DomainKind kind, int n, int k,
                                       std::function<double(const SetTuple&)> fn,
                                       std::size_t memo_budget) {
  if (kind == DomainKind::Powerset || kind == DomainKind::DisjointPair) k = 1;
  if (k < 1) throw DomainError("k must be positive");
  SetFunction f;
  f.kind_ = kind;
  f.ground_ = GroundSet(n);
  f.k_ = k;
  f.fn_ = std::move(fn);
  if (memo_budget > 0) {
    f.memo_ = std::make_shared<Memo>();
    f.memo_->budget = memo_budget;
  }
  return f;
}

void SetFunction::check_arg(const SetTuple& a) const {
  if (a.k() != k_) throw DomainError("argument arity does not match the function domain");
  bool pair_kind = kind_ == DomainKind::DisjointPair || kind_ == DomainKind::KWayDisjointPair;
  for (const auto& p : a.parts) {
    if (p.pos > ground_.full() || p.neg > ground_.full())
      throw DomainError("argument exceeds the ground set");
    if (p.pos & p.neg) throw DomainError("set pair is not disjoint");
    if (!pair_kind && p.neg != 0)
      throw DomainError("subset-valued domain received a signed argument");
  }
}

double SetFunction::eval(const SetTuple& a) const {
  check_arg(a);
  if (a.all_empty()) return 0.0;
  if (table_) {
    if (kind_ == DomainKind::Powerset) return (*table_)[a.parts[0].pos];
    return (*table_)[pair_code(a.parts[0], ground_.n)];
  }
  if (memo_) {
    std::lock_guard<std::mutex> lock(memo_->mu);
    auto it = memo_->cache.find(a);
    if (it != memo_->cache.end()) return it->second;
    double v = fn_(a);
    if (memo_->cache.size() < memo_->budget) memo_->cache.emplace(a, v);
    return v;
  }
  return fn_(a);
}

double SetFunction::eval(SubsetId a) const { return eval(SetTuple{a}); }
double SetFunction::eval(SetPair a) const { return eval(SetTuple{a}); }

void SetFunction::densify(std::uint64_t max_entries) const {
  if (table_) return;
  std::uint64_t size = 0;
  if (kind_ == DomainKind::Powerset)
    size = ground_.subset_count();
  else if (kind_ == DomainKind::DisjointPair)
    size = pow3(ground_.n);
  else
    return;  // k-way domains stay on the memoized path
  if (size > max_entries) throw SizeLimitError("domain too large to densify");
  auto table = std::make_shared<std::vector<double>>(size);
  bool integers = true;
  for (std::uint64_t i = 0; i < size; ++i) {
    SetTuple arg = kind_ == DomainKind::Powerset
                       ? SetTuple{static_cast<SubsetId>(i)}
                       : SetTuple{pair_from_code(i, ground_.n)};
    double v = eval(arg);
    (*table)[i] = v;
    integers = integers && std::rint(v) == v;
  }
  (*table)[0] = 0.0;
  table_ = std::move(table);
  const_cast<SetFunction*>(this)->integer_valued_ = integers;
}

SetFunction SetFunction::scale(const SetFunction& f, double c) {
  SetFunction g = f;
  if (g.table_) {
    auto t = std::make_shared<std::vector<double>>(*g.table_);
    for (double& v : *t) v *= c;
    g.table_ = std::move(t);
    g.integer_valued_ = all_integers(*g.table_);
  } else {
    SetFunction base = f;
    g = from_callback(f.kind_, f.n(), f.k_,
                      [base, c](const SetTuple& a) { return c * base.eval(a); });
  }
  return g;
}

SetFunction SetFunction::sum(const SetFunction& f, const SetFunction& g) {
  if (f.kind_ != g.kind_ || f.n() != g.n() || f.k_ != g.k_)
    throw DomainError("sum of set functions on different domains");
  if (f.table_ && g.table_) {
    std::vector<double> vals(f.table_->size());
    for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = (*f.table_)[i] + (*g.table_)[i];
    return f.kind_ == DomainKind::Powerset ? from_powerset_table(f.n(), std::move(vals))
                                           : from_pair_table(f.n(), std::move(vals));
  }
  SetFunction a = f, b = g;
  return from_callback(f.kind_, f.n(), f.k_,
                       [a, b](const SetTuple& t) { return a.eval(t) + b.eval(t); });
}

SetFunction SetFunction::difference(const SetFunction& f, const SetFunction& g) {
  return sum(f, scale(g, -1.0));
}

// ---------------------------------------------------------------------------
// Lattice operations
// ---------------------------------------------------------------------------

SetPair pair_join(const SetPair& a, const SetPair& b) {
  SubsetId p = a.pos | b.pos, q = a.neg | b.neg;
  return SetPair{p & ~q, q & ~p};
}

SetPair pair_meet(const SetPair& a, const SetPair& b) { return SetPair{a.pos & b.pos, a.neg & b.neg}; }

SetTuple tuple_join(const SetTuple& a, const SetTuple& b) {
  SetTuple out;
  out.parts.resize(a.parts.size());
  for (std::size_t i = 0; i < a.parts.size(); ++i)
    out.parts[i] = SetPair{a.parts[i].pos | b.parts[i].pos, 0};
  return out;
}

SetTuple tuple_meet(const SetTuple& a, const SetTuple& b) {
  SetTuple out;
  out.parts.resize(a.parts.size());
  for (std::size_t i = 0; i < a.parts.size(); ++i)
    out.parts[i] = SetPair{a.parts[i].pos & b.parts[i].pos, 0};
  return out;
}

// ---------------------------------------------------------------------------
// Submodularity checks
// ---------------------------------------------------------------------------

static double check_tolerance(const SetFunction& f) { return f.integer_valued() ? 0.0 : 1e-9; }

CheckResult is_submodular(const SetFunction& f) {
  if (f.kind() != DomainKind::Powerset) throw DomainError("is_submodular expects a powerset function");
  const int n = f.n();
  if (n > 24) throw SizeLimitError("is_submodular enumeration limited to n <= 24");
  f.densify();
  const double tol = check_tolerance(f);

  auto violation = [&](SubsetId a, SubsetId b) -> std::optional<SubmodularityWitness> {
    double lhs = f.at_mask(a) + f.at_mask(b);
    double rhs = f.at_mask(a | b) + f.at_mask(a & b);
    if (lhs < rhs - tol)
      return SubmodularityWitness{SetTuple{a}, SetTuple{b}, rhs - lhs};
    return std::nullopt;
  };

  if (n <= 12) {
    const SubsetId full = f.ground().full();
    for (SubsetId a = 0; a <= full; ++a)
      for (SubsetId b = a + 1; b <= full; ++b)
        if (auto w = violation(a, b)) return CheckResult{false, w};
    return CheckResult{};
  }
  // Larger ground sets: the local characterization f(A+i)+f(A+j) >= f(A+i+j)+f(A)
  // over i,j not in A is equivalent on the full power set and quadratically cheaper.
  const SubsetId full = f.ground().full();
  for (SubsetId a = 0; a <= full; ++a)
    for (int i = 0; i < n; ++i) {
      if (a >> i & 1) continue;
      for (int j = i + 1; j < n; ++j) {
        if (a >> j & 1) continue;
        SubsetId ai = a | (SubsetId{1} << i), aj = a | (SubsetId{1} << j);
        if (auto w = violation(ai, aj)) return CheckResult{false, w};
      }
    }
  return CheckResult{};
}

CheckResult is_bisubmodular(const SetFunction& f) {
  if (f.kind() != DomainKind::DisjointPair)
    throw DomainError("is_bisubmodular expects a disjoint-pair function");
  const int n = f.n();
  if (n > 15) throw SizeLimitError("is_bisubmodular enumeration limited to n <= 15");
  f.densify();
  const double tol = check_tolerance(f);
  const std::uint64_t m = pow3(n);
  for (std::uint64_t ca = 0; ca < m; ++ca) {
    SetPair a = pair_from_code(ca, n);
    double fa = f.at_code(ca);
    for (std::uint64_t cb = ca + 1; cb < m; ++cb) {
      SetPair b = pair_from_code(cb, n);
      double lhs = fa + f.at_code(cb);
      double rhs = f.at_code(pair_code(pair_join(a, b), n)) + f.at_code(pair_code(pair_meet(a, b), n));
      if (lhs < rhs - tol)
        return CheckResult{false, SubmodularityWitness{SetTuple{a}, SetTuple{b}, rhs - lhs}};
    }
  }
  return CheckResult{};
}

CheckResult is_kway_submodular(const SetFunction& f) {
  if (f.kind() != DomainKind::KWay) throw DomainError("is_kway_submodular expects a k-way function");
  const int n = f.n(), k = f.k();
  if (n * k > 18) throw SizeLimitError("is_kway_submodular enumeration limited to n*k <= 18");
  const double tol = f.integer_valued() ? 0.0 : 1e-9;
  const std::uint64_t m = std::uint64_t{1} << (n * k);
  auto decode = [&](std::uint64_t bits) {
    SetTuple t;
    t.parts.resize(k);
    for (int i = 0; i < k; ++i)
      t.parts[i] = SetPair{static_cast<SubsetId>((bits >> (i * n)) & ((1u << n) - 1)), 0};
    return t;
  };
  for (std::uint64_t ca = 0; ca < m; ++ca) {
    SetTuple a = decode(ca);
    double fa = f.eval(a);
    for (std::uint64_t cb = ca + 1; cb < m; ++cb) {
      SetTuple b = decode(cb);
      double lhs = fa + f.eval(b);
      double rhs = f.eval(tuple_join(a, b)) + f.eval(tuple_meet(a, b));
      if (lhs < rhs - tol) return CheckResult{false, SubmodularityWitness{a, b, rhs - lhs}};
    }
  }
  return CheckResult{};
}

double delta_submodularity_gap(const SetFunction& f) {
  if (f.kind() != DomainKind::Powerset)
    throw DomainError("delta_submodularity_gap expects a powerset function");
  const int n = f.n();
  if (n > 20) throw SizeLimitError("delta_submodularity_gap enumeration limited to n <= 20");
  f.densify();
  double gap = std::numeric_limits<double>::infinity();
  const SubsetId full = f.ground().full();
  for (SubsetId a = 0; a <= full; ++a)
    for (SubsetId b = a + 1; b <= full; ++b) {
      if ((a & b) == a || (a & b) == b) continue;  // comparable: identically zero
      double v = f.at_mask(a) + f.at_mask(b) - f.at_mask(a | b) - f.at_mask(a & b);
      gap = std::min(gap, v);
    }
  return gap;
}

SetFunction strict_submodular_reference(int n) {
  GroundSet g(n);
  std::vector<double> vals(g.subset_count());
  for (SubsetId a = 0; a < g.subset_count(); ++a)
    vals[a] = static_cast<double>(popcount(a)) * (n - popcount(a));
  return SetFunction::from_powerset_table(n, std::move(vals));
}

std::pair<SetFunction, SetFunction> decompose_difference_submodular(const SetFunction& f) {
  if (f.kind() != DomainKind::Powerset)
    throw DomainError("decompose_difference_submodular expects a powerset function");
  const int n = f.n();
  if (n > 20) throw SizeLimitError("decompose_difference_submodular limited to n <= 20");
  SetFunction g = strict_submodular_reference(n);
  double c = 1.0;
  if (n >= 2) {
    double df = delta_submodularity_gap(f);
    double dg = delta_submodularity_gap(g);
    c = std::max(std::ceil(-df / dg), 0.0) + 1.0;
  }
  SetFunction f2 = SetFunction::scale(g, c);
  SetFunction f1 = SetFunction::sum(f, f2);
  return {std::move(f1), std::move(f2)};
}

}  // namespace lovx
