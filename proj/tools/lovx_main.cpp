// lovx: catalog graph problems as set-function ratios, evaluate their
// continuous extensions, run the oracles and iterative solvers, and emit
// JSON/TSV reports.

#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <fstream>
#include <thread>
#include <future>
#include <iostream>
#include <sstream>

#include "lovx/json_io.hpp"

using namespace lovx;

namespace {

struct CommonArgs {
  std::string graph_path;
  std::string format = "edge-list";
  int index_base = 0;
  std::string output = "json";
  std::uint64_t seed = 1;
  int verbosity = 0;
};

struct ProblemArgs {
  std::string problem;
  double p = 1.0;
  int k = 2;
  double mu = 1.0;
  std::string form = "difference";
  std::uint64_t subset = 1;
  std::vector<int> terminals;
};

std::map<std::string, double> problem_params(const ProblemArgs& pa) {
  std::map<std::string, double> params;
  params["p"] = pa.p;
  params["k"] = pa.k;
  params["mu"] = pa.mu;
  params["subset"] = static_cast<double>(pa.subset);
  params["form"] = pa.form == "product" ? 0.0 : 1.0;
  return params;
}

Vec parse_point(const std::string& csv) {
  Vec x;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    x.push_back(std::stod(item));
  }
  if (x.empty()) throw DomainError("empty point");
  return x;
}

void attach_timing(Json& report, std::chrono::steady_clock::time_point t0) {
  auto wall =
      std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - t0)
          .count();
  report["timestamp_ms"] =
      std::chrono::duration_cast<std::chrono::milliseconds>(
          std::chrono::system_clock::now().time_since_epoch())
          .count();
  report["wall_ms"] = static_cast<double>(wall) / 1000.0;
}

void emit(const Json& report, const CommonArgs& common) {
  if (common.output == "tsv") {
    // Scalar summary only.
    for (auto it = report.begin(); it != report.end(); ++it)
      if (it.value().is_primitive()) std::cout << it.key() << "\t" << it.value().dump() << "\n";
    return;
  }
  std::cout << report.dump(2) << "\n";
}

Graph load_graph(const CommonArgs& common) {
  if (common.graph_path.empty()) throw DomainError("--graph is required");
  return read_graph_file(common.graph_path, common.format, common.index_base);
}

// Starting points: every singleton indicator plus `extra` random ternary
// vectors (seeded).
std::vector<Vec> multistart_points(const ProblemInstance& inst, int extra, std::uint64_t seed) {
  std::vector<Vec> starts;
  const int dim = inst.dim;
  const int per_block = dim / inst.blocks;
  for (int i = 0; i < per_block && inst.blocks == 1; ++i) {
    Vec x(dim, 0.0);
    x[i] = 1.0;
    starts.push_back(std::move(x));
  }
  Rng rng(seed);
  for (int s = 0; s < extra; ++s) {
    Vec x(dim, 0.0);
    bool nonzero = false;
    for (double& v : x) {
      double u = rng.uniform();
      v = u < 1.0 / 3 ? -1.0 : (u < 2.0 / 3 ? 0.0 : 1.0);
      nonzero = nonzero || v != 0.0;
    }
    if (!nonzero) x[rng.uniform_int(dim)] = 1.0;
    starts.push_back(std::move(x));
  }
  if (starts.empty()) starts.push_back(Vec(dim, 1.0));
  return starts;
}

int run_solve(const CommonArgs& common, const ProblemArgs& pa, const std::string& algo,
              int max_iter, double tol, int multistart, double prox, bool verify,
              bool allow_dim) {
  auto t0 = std::chrono::steady_clock::now();
  Graph g = load_graph(common);
  Json report;
  report["schema"] = "lovx/1";
  report["command"] = "solve";
  report["config"] = {{"algo", algo},       {"seed", common.seed}, {"max_iter", max_iter},
                      {"tol", tol},         {"multistart", multistart},
                      {"prox_weight", prox}, {"verify_eigen", verify}};

  if (algo != "recursive-frustration" && pa.problem.empty())
    throw DomainError("--problem is required");
  if (algo == "recursive-frustration") {
    SolveOptions opts;
    opts.seed = common.seed;
    opts.max_iter = max_iter;
    opts.tol = tol;
    FrustrationResult res = frustration_recursive(g, opts, std::max(1, multistart));
    report["problem"] = instance_meta_json(frustration_instance(g));
    report["result"] = {{"frustrated_weight", res.frustrated},
                        {"plus_side", subset_vertices(res.plus, g.n())},
                        {"rounds", res.rounds}};
    attach_timing(report, t0);
    emit(report, common);
    return 0;
  }

  ProblemInstance inst = instance_by_id(pa.problem, g, problem_params(pa));
  if (inst.dim > 32 && !allow_dim)
    throw DomainError("instance dimension is " + std::to_string(inst.dim) +
                      "; pass --allow-dim to solve anyway");
  report["problem"] = instance_meta_json(inst);

  if (algo == "dinkelbach") {
    auto inner = dinkelbach_exact_oracle(inst);
    auto F = [&inst](ConstSpan x) { return inst.F(x); };
    auto G = [&inst](ConstSpan x) { return inst.G(x); };
    std::vector<Vec> starts = multistart_points(inst, multistart, common.seed);
    SolveTrace best;
    bool have = false;
    for (const auto& s : starts) {
      Vec x = s;
      if (inst.project_feasible) inst.project_feasible(x);
      if (inst.G(x) <= 0.0) continue;
      SolveTrace t = dinkelbach_solve(F, G, inner, x, inst.sense, tol, max_iter);
      if (!have || better(t.final_ratio, best.final_ratio, inst.sense)) {
        best = std::move(t);
        have = true;
      }
    }
    if (!have) throw FeasibilityError("no feasible starting point");
    best.extracted = extract_best_settuple(inst, best.final_x);
    report["result"] = {{"ratio", best.final_ratio},
                        {"trace", trace_to_json(best)},
                        {"witness", tuple_to_json(best.extracted->first, inst.dim / inst.blocks)},
                        {"witness_ratio", best.extracted->second},
                        {"witness_check",
                         inst.discrete_ratio(best.extracted->first) == best.extracted->second}};
    attach_timing(report, t0);
    emit(report, common);
    return 0;
  }

  if (algo != "ipsd" && algo != "ipsd-gen") throw DomainError("unknown algorithm: " + algo);
  RatioProblem rp = ratio_problem(inst, prox);
  SolveOptions opts;
  opts.seed = common.seed;
  opts.max_iter = max_iter;
  opts.tol = tol;
  opts.verify_eigen = verify;

  std::vector<Vec> starts = multistart_points(inst, multistart, common.seed);
  std::vector<std::optional<SolveTrace>> results(starts.size());
  int workers = std::min<int>(thread_budget(), static_cast<int>(starts.size()));
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= starts.size()) break;
      SolveOptions o = opts;
      o.seed = common.seed + i;
      try {
        results[i] = algo == "ipsd" ? ipsd_solve(rp, starts[i], o)
                                    : ipsd_solve_generalized(rp, starts[i], o);
      } catch (const FeasibilityError&) {
        results[i] = std::nullopt;
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 0; w < std::max(1, workers); ++w) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  // Rank by the extracted discrete ratio (outputs ordered by start index, so
  // the scan is deterministic).
  int best_idx = -1;
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (!results[i] || !results[i]->extracted) continue;
    if (best_idx < 0 ||
        better(results[i]->extracted->second, results[best_idx]->extracted->second, inst.sense))
      best_idx = static_cast<int>(i);
  }
  if (best_idx < 0) throw FeasibilityError("all starts failed");
  const SolveTrace& best = *results[best_idx];

  Json result;
  result["ratio"] = best.final_ratio;
  result["trace"] = trace_to_json(best);
  result["start_index"] = best_idx;
  result["witness"] = tuple_to_json(best.extracted->first, inst.dim / inst.blocks);
  result["witness_ratio"] = best.extracted->second;
  result["witness_check"] = inst.discrete_ratio(best.extracted->first) == best.extracted->second;
  if (inst.id == "frustration")
    result["frustration_index"] = inst.params.at("negative-weight") + best.extracted->second;
  if (best.certificate) result["certificate"] = certificate_to_json(*best.certificate, inst.dim);
  report["result"] = result;
  attach_timing(report, t0);
  emit(report, common);
  if (verify && (!best.certificate || !best.certificate->accepted)) return 2;
  return 0;
}

int run_oracle(const CommonArgs& common, const ProblemArgs& pa) {
  auto t0 = std::chrono::steady_clock::now();
  if (pa.problem.empty()) throw DomainError("--problem is required");
  Graph g = load_graph(common);
  Json report;
  report["schema"] = "lovx/1";
  report["command"] = "oracle";
  report["config"] = {{"seed", common.seed}};
  if (pa.problem == "multiway-partition") {
    auto prob = multiway_partition_instance(g, cut_function(g), pa.terminals);
    Graph gc = g;
    SetFunction cost = prob.cost;
    OracleResult res = optimize_partitions(
        [&cost](const std::vector<SubsetId>& blocks) {
          double total = 0.0;
          for (SubsetId b : blocks) total += cost.eval(b);
          return total;
        },
        g.n(), static_cast<int>(prob.terminals.size()), OptSense::Min,
        PartitionConstraints{prob.terminals, false, true});
    report["problem"] = {{"id", "multiway-partition"}, {"graph", graph_meta_json(g)}};
    report["result"] = oracle_to_json(res, g.n());
    report["result"]["relaxation_lower_bound"] = multiway_partition_relaxation(prob);
    attach_timing(report, t0);
    emit(report, common);
    return 0;
  }
  ProblemInstance inst = instance_by_id(pa.problem, g, problem_params(pa));
  OracleResult res = oracle_optimum(inst);
  report["problem"] = instance_meta_json(inst);
  report["result"] = oracle_to_json(res, inst.dim / inst.blocks);
  if (inst.kind == DomainKind::Powerset || inst.kind == DomainKind::DisjointPair) {
    bool consistent = true;
    for (const auto& w : res.witnesses)
      consistent = consistent && inst.f.eval(w) / inst.g.eval(w) == res.optimum;
    report["result"]["witness_check"] = consistent;
  }
  if (inst.id == "frustration")
    report["result"]["frustration_index"] = inst.params.at("negative-weight") + res.optimum;
  if (inst.id == "vertex-cover")
    report["result"]["relaxation_lower_bound"] = vertex_cover_relaxation(g, cardinality_function(g.n()));
  attach_timing(report, t0);
  emit(report, common);
  return 0;
}

int run_eigen(const CommonArgs& common, const std::string& pair, const std::string& setfn_f,
              const std::string& setfn_g) {
  auto t0 = std::chrono::steady_clock::now();
  Json report;
  report["schema"] = "lovx/1";
  report["command"] = "eigen";
  report["config"] = {{"pair", pair}, {"seed", common.seed}};

  SetFunction f, g;
  int n;
  if (!setfn_f.empty()) {
    f = setfn_from_file(setfn_f);
    if (setfn_g.empty()) throw DomainError("--setfn-g is required with --setfn");
    g = setfn_from_file(setfn_g);
    n = f.n();
    report["problem"] = {{"pair", "custom"}};
  } else {
    Graph graph = load_graph(common);
    n = graph.n();
    if (pair == "cut") {
      f = pair_cut_sym_function(graph);
      g = SetFunction::scale(constant_one(n, DomainKind::DisjointPair), 2.0);
    } else if (pair == "frustration") {
      ProblemInstance inst = frustration_instance(graph);
      auto eig = inst.extra_forms.at("eigen-numerator");
      f = SetFunction::from_callback(DomainKind::DisjointPair, n, 1, [eig, n](const SetTuple& t) {
        Vec x(n, 0.0);
        for (int i = 0; i < n; ++i) {
          if (t.parts[0].pos >> i & 1) x[i] = 1.0;
          if (t.parts[0].neg >> i & 1) x[i] = -1.0;
        }
        return eig(x);
      });
      g = constant_one(n, DomainKind::DisjointPair);
    } else {
      throw DomainError("--pair must be cut or frustration (or use --setfn/--setfn-g)");
    }
    report["problem"] = {{"pair", pair}, {"graph", graph_meta_json(graph)}};
  }

  auto eigs = enumerate_eigenvalues(f, g);
  Json list = Json::array();
  for (const auto& [lambda, rep] : eigs)
    list.push_back({{"lambda", lambda}, {"eigenset", tuple_to_json(rep, n)}});
  report["result"] = {{"eigenvalues", list}};
  attach_timing(report, t0);
  emit(report, common);
  return 0;
}

int run_eval(const CommonArgs& common, const ProblemArgs& pa, const std::string& setfn_path,
             const std::string& extension, const std::string& point_csv) {
  auto t0 = std::chrono::steady_clock::now();
  Vec x = parse_point(point_csv);
  Json report;
  report["schema"] = "lovx/1";
  report["command"] = "eval";
  report["config"] = {{"extension", extension}, {"seed", common.seed}};

  if (!setfn_path.empty()) {
    SetFunction f = setfn_from_file(setfn_path);
    Json result;
    if (extension == "integral") {
      result["value"] = f.kind() == DomainKind::Powerset ? eval_original_integral(f, x)
                                                         : eval_disjoint_pair_integral(f, x);
    } else if (extension == "mobius") {
      result["value"] = eval_original_mobius(f, x);
    } else {
      PLValue v = eval_extension(f, x);
      result["value"] = v.value;
      result["subgradient"] = v.subgradient;
      Json chain = Json::array();
      for (const auto& c : v.chain)
        chain.push_back({{"level", tuple_to_json(c.level, f.n())}, {"length", c.length}});
      result["chain"] = chain;
    }
    report["problem"] = {{"setfn", setfn_path}, {"kind", to_string(f.kind())}};
    report["result"] = result;
  } else {
    Graph g = load_graph(common);
    ProblemInstance inst = instance_by_id(pa.problem, g, problem_params(pa));
    if (static_cast<int>(x.size()) != inst.dim)
      throw DomainError("point length does not match the instance dimension");
    Json result;
    result["F"] = inst.F(x);
    result["G"] = inst.G(x);
    if (inst.G(x) != 0.0) result["ratio"] = inst.ratio(x);
    result["feasible"] = inst.family.contains_point(x);
    Json extras;
    for (const auto& [name, fn] : inst.extra_forms) extras[name] = fn(x);
    if (!extras.empty()) result["extra_forms"] = extras;
    report["problem"] = instance_meta_json(inst);
    report["result"] = result;
  }
  attach_timing(report, t0);
  emit(report, common);
  return 0;
}

// ---------------------------------------------------------------------------
// check suites
// ---------------------------------------------------------------------------

struct SuiteResult {
  std::string name;
  bool pass = true;
  std::string detail;
};

SetFunction random_table(DomainKind kind, int n, Rng& rng, bool integers) {
  std::uint64_t size = kind == DomainKind::Powerset ? (std::uint64_t{1} << n) : pow3(n);
  std::vector<double> vals(size);
  for (auto& v : vals)
    v = integers ? static_cast<double>(static_cast<int>(rng.uniform_int(21)) - 10)
                 : rng.uniform(-1.0, 1.0);
  vals[0] = 0.0;
  return kind == DomainKind::Powerset ? SetFunction::from_powerset_table(n, std::move(vals))
                                      : SetFunction::from_pair_table(n, std::move(vals));
}

SuiteResult suite_cross_form(int trials, std::uint64_t seed) {
  SuiteResult res{"cross-form"};
  Rng rng(seed);
  const int n = 4;
  for (int t = 0; t < trials; ++t) {
    SetFunction f = random_table(DomainKind::Powerset, n, rng, false);
    SetFunction h = random_table(DomainKind::DisjointPair, n, rng, false);
    for (int q = 0; q < 20; ++q) {
      Vec x(n);
      for (double& v : x) v = rng.uniform(-2.0, 2.0);
      double a = eval_original(f, x).value;
      if (std::fabs(a - eval_original_integral(f, x)) > 1e-9 ||
          std::fabs(a - eval_original_mobius(f, x)) > 1e-9) {
        res.pass = false;
        res.detail = "original forms disagree";
        return res;
      }
      double b = eval_disjoint_pair(h, x).value;
      if (std::fabs(b - eval_disjoint_pair_integral(h, x)) > 1e-9) {
        res.pass = false;
        res.detail = "disjoint-pair forms disagree";
        return res;
      }
    }
  }
  return res;
}

SuiteResult suite_tables(int trials, std::uint64_t seed) {
  SuiteResult res{"tables"};
  Rng rng(seed);
  std::vector<Graph> graphs = {make_complete(3), make_path(4), make_petersen()};
  for (const auto& g : graphs)
    for (const auto& id : closed_form_ids()) {
      ClosedForm cf = closed_form(id, g);
      for (int t = 0; t < trials; ++t) {
        Vec x(g.n());
        for (double& v : x) v = rng.uniform(-2.0, 2.0);
        double generic = eval_extension(cf.discrete, x).value;
        double closed = cf.form(x);
        if (std::fabs(generic - closed) > 1e-9 * (1.0 + std::fabs(generic))) {
          res.pass = false;
          res.detail = id + " mismatch";
          return res;
        }
      }
    }
  return res;
}

SuiteResult suite_submodularity(int trials, std::uint64_t seed) {
  SuiteResult res{"submodularity"};
  Rng rng(seed);
  const int n = 5;
  for (int t = 0; t < trials; ++t) {
    // Random weighted cut functions are submodular.
    std::vector<Graph::Edge> edges;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (rng.uniform() < 0.7)
          edges.push_back({i, j, 0.5 * (1.0 + static_cast<double>(rng.uniform_int(6))), +1});
    if (edges.empty()) edges.push_back({0, 1, 1.0, +1});
    Graph g(n, edges);
    SetFunction cut = cut_function(g);
    if (!is_submodular(cut).ok) {
      res.pass = false;
      res.detail = "cut function flagged non-submodular";
      return res;
    }
    // Midpoint convexity of the extension on sampled pairs.
    for (int q = 0; q < 50; ++q) {
      Vec x(n), y(n), mid(n);
      for (int i = 0; i < n; ++i) {
        x[i] = rng.uniform(-1.0, 1.0);
        y[i] = rng.uniform(-1.0, 1.0);
        mid[i] = (x[i] + y[i]) / 2.0;
      }
      double lhs = eval_original(cut, mid).value;
      double rhs = (eval_original(cut, x).value + eval_original(cut, y).value) / 2.0;
      if (lhs > rhs + 1e-9) {
        res.pass = false;
        res.detail = "midpoint convexity violated for a cut extension";
        return res;
      }
    }
    // A planted violation must be caught and certify non-convexity.
    SetFunction bad = random_table(DomainKind::Powerset, 4, rng, true);
    auto check = is_submodular(bad);
    if (!check.ok) {
      SubsetId a = check.witness->a.parts[0].pos, b = check.witness->b.parts[0].pos;
      Vec xa(4, 0.0), xb(4, 0.0), mid(4, 0.0);
      for (int i = 0; i < 4; ++i) {
        xa[i] = (a >> i & 1) ? 1.0 : 0.0;
        xb[i] = (b >> i & 1) ? 1.0 : 0.0;
        mid[i] = (xa[i] + xb[i]) / 2.0;
      }
      double lhs = eval_original(bad, mid).value;
      double rhs = (bad.eval(a) + bad.eval(b)) / 2.0;
      if (lhs <= rhs + 1e-12) {
        res.pass = false;
        res.detail = "witness did not violate midpoint convexity";
        return res;
      }
    }
  }
  return res;
}

SuiteResult suite_identities(int trials, std::uint64_t seed) {
  SuiteResult res{"identities"};
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    const int n = 4;
    std::vector<double> fv(1 << n), gv(1 << n);
    for (auto& v : fv) v = static_cast<double>(rng.uniform_int(9));
    for (auto& v : gv) v = 1.0 + static_cast<double>(rng.uniform_int(6));
    fv[0] = gv[0] = 0.0;
    SetFunction f = SetFunction::from_powerset_table(n, fv);
    SetFunction g = SetFunction::from_powerset_table(n, gv);
    std::string detail;
    if (!check_reduction_identity(13, f, g, 2, 0, 0, &detail) ||
        !check_reduction_identity(14, f, g, 3, 0, 0, &detail) ||
        !check_reduction_identity(16, f, g, 0, -1.0, 2.0, &detail)) {
      res.pass = false;
      res.detail = detail;
      return res;
    }
  }
  return res;
}

SuiteResult suite_discrete_continuous(int trials, std::uint64_t seed) {
  SuiteResult res{"discrete-continuous"};
  Rng rng(seed);
  std::vector<std::string> ids = {"maxcut", "mincut", "cheeger", "independence", "frustration",
                                  "modularity", "dual-cheeger"};
  std::vector<Graph> graphs = {make_complete(3), make_path(4), make_cycle(5)};
  for (const auto& g : graphs)
    for (const auto& id : ids) {
      ProblemInstance inst = instance_by_id(id, g, {});
      OracleResult oracle = oracle_optimum(inst);
      for (int t = 0; t < trials; ++t) {
        Vec x(inst.dim);
        for (double& v : x) v = rng.uniform(-1.0, 1.0);
        if (inst.project_feasible) inst.project_feasible(x);
        if (!inst.family.contains_point(x)) continue;
        double gx = inst.G(x);
        if (gx <= 1e-9) continue;
        double ratio = inst.F(x) / gx;
        bool beats = inst.sense == OptSense::Min ? ratio < oracle.optimum - 1e-9
                                                 : ratio > oracle.optimum + 1e-9;
        if (beats) {
          res.pass = false;
          res.detail = id + ": sampled point beats the discrete optimum";
          return res;
        }
      }
    }
  return res;
}

SuiteResult suite_setfn_file(const std::string& path) {
  SuiteResult res{"setfn-file"};
  std::ifstream in(path);
  if (!in) {
    res.pass = false;
    res.detail = "cannot open " + path;
    return res;
  }
  Json j;
  in >> j;
  SetFunction f = setfn_from_json(j);
  SetFnAsserts asserts = setfn_asserts_from_json(j);
  Rng rng(7);
  // Cross-form agreement always holds; asserted properties are re-checked.
  for (int t = 0; t < 50; ++t) {
    Vec x(f.n());
    for (double& v : x) v = rng.uniform(-2.0, 2.0);
    if (f.kind() == DomainKind::Powerset) {
      if (std::fabs(eval_original(f, x).value - eval_original_integral(f, x)) > 1e-9) {
        res.pass = false;
        res.detail = "cross-form disagreement";
        return res;
      }
    } else if (std::fabs(eval_disjoint_pair(f, x).value - eval_disjoint_pair_integral(f, x)) >
               1e-9) {
      res.pass = false;
      res.detail = "cross-form disagreement";
      return res;
    }
  }
  if (asserts.submodular) {
    auto check = is_submodular(f);
    if (check.ok != *asserts.submodular) {
      res.pass = false;
      std::ostringstream os;
      os << "submodularity assertion failed";
      if (check.witness)
        os << "; witness " << tuple_to_string(check.witness->a, f.n()) << " / "
           << tuple_to_string(check.witness->b, f.n());
      res.detail = os.str();
      return res;
    }
  }
  if (asserts.bisubmodular) {
    auto check = is_bisubmodular(f);
    if (check.ok != *asserts.bisubmodular) {
      res.pass = false;
      res.detail = "bisubmodularity assertion failed";
      return res;
    }
  }
  return res;
}

int run_check(const CommonArgs& common, const std::string& suite, const std::string& setfn_path,
              int trials) {
  auto t0 = std::chrono::steady_clock::now();
  std::vector<SuiteResult> results;
  auto want = [&suite](const std::string& name) { return suite == "all" || suite == name; };
  if (!setfn_path.empty()) {
    results.push_back(suite_setfn_file(setfn_path));
  } else {
    if (want("cross-form")) results.push_back(suite_cross_form(std::max(5, trials / 4), common.seed));
    if (want("tables")) results.push_back(suite_tables(std::max(10, trials), common.seed + 1));
    if (want("submodularity")) results.push_back(suite_submodularity(std::max(3, trials / 6), common.seed + 2));
    if (want("identities")) results.push_back(suite_identities(std::max(3, trials / 6), common.seed + 3));
    if (want("discrete-continuous"))
      results.push_back(suite_discrete_continuous(std::max(20, trials * 2), common.seed + 4));
  }
  bool all_pass = true;
  Json lines = Json::array();
  for (const auto& r : results) {
    all_pass = all_pass && r.pass;
    std::cerr << (r.pass ? "[PASS] " : "[FAIL] ") << r.name
              << (r.detail.empty() ? "" : (": " + r.detail)) << "\n";
    lines.push_back({{"suite", r.name}, {"pass", r.pass}, {"detail", r.detail}});
  }
  Json report;
  report["schema"] = "lovx/1";
  report["command"] = "check";
  report["config"] = {{"suite", suite}, {"seed", common.seed}, {"trials", trials}};
  report["result"] = {{"suites", lines}, {"pass", all_pass}};
  attach_timing(report, t0);
  emit(report, common);
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Set-function ratio problems, their continuous extensions, and solvers"};
  app.require_subcommand(1);

  CommonArgs common;
  ProblemArgs pa;
  app.add_option("--graph", common.graph_path, "Graph file")->envname("LOVX_GRAPH");
  app.add_option("--format", common.format, "Graph format: edge-list | dimacs");
  app.add_option("--index-base", common.index_base, "Vertex index base (0 or 1)");
  app.add_option("--output", common.output, "Report format: json | tsv");
  app.add_option("--seed", common.seed, "Random seed (recorded in the report)");
  app.add_flag("-v,--verbose", common.verbosity, "Verbosity (diagnostics to stderr)");

  auto add_problem_flags = [&pa](CLI::App* cmd) {
    cmd->add_option("--problem", pa.problem, "Problem id");
    cmd->add_option("--p", pa.p, "Exponent for maxcut");
    cmd->add_option("--k", pa.k, "Block count / profile parameter");
    cmd->add_option("--mu", pa.mu, "Uniform pair weight for sparsest-cut");
    cmd->add_option("--form", pa.form, "Independence form: product | difference");
    cmd->add_option("--subset", pa.subset, "Vertex subset mask for Dirichlet/Neumann problems");
    cmd->add_option("--terminals", pa.terminals, "Terminal vertices (multiway partition)");
  };

  auto* solve = app.add_subcommand("solve", "Run an iterative solver");
  solve->fallthrough();
  add_problem_flags(solve);
  std::string algo = "ipsd";
  int max_iter = 1000, multistart = 0;
  double tol = 1e-10, prox = 0.0;
  bool verify = false;
  solve->add_option("--algo", algo, "dinkelbach | ipsd | ipsd-gen | recursive-frustration");
  solve->add_option("--max-iter", max_iter, "Iteration cap");
  solve->add_option("--tol", tol, "Ratio-change tolerance")->check(CLI::PositiveNumber);
  solve->add_option("--multistart", multistart, "Extra random ternary starts");
  solve->add_option("--prox", prox, "Proximal weight");
  solve->add_flag("--verify-eigen", verify, "Certify the terminal eigenset (exit 2 on failure)");
  bool allow_dim = false;
  solve->add_flag("--allow-dim", allow_dim,
                  "Allow solves in more than 32 continuous dimensions (e.g. chromatic)");

  auto* oracle = app.add_subcommand("oracle", "Exact brute-force optimum");
  oracle->fallthrough();
  add_problem_flags(oracle);

  auto* eigen = app.add_subcommand("eigen", "Enumerate eigenvalues of a pair");
  eigen->fallthrough();
  std::string pair = "cut", setfn_f, setfn_g;
  eigen->add_option("--pair", pair, "cut | frustration");
  eigen->add_option("--setfn", setfn_f, "Numerator table file");
  eigen->add_option("--setfn-g", setfn_g, "Denominator table file");

  auto* eval = app.add_subcommand("eval", "Evaluate extensions / instance objectives");
  eval->fallthrough();
  std::string eval_setfn, extension = "auto", point;
  eval->add_option("--setfn", eval_setfn, "Set-function table file");
  eval->add_option("--extension", extension, "auto | integral | mobius");
  eval->add_option("--point", point, "Comma-separated coordinates")->required();
  eval->add_option("--problem", pa.problem, "Problem id (uses --graph)");
  eval->add_option("--p", pa.p, "Exponent for maxcut");
  eval->add_option("--k", pa.k, "Block count / profile parameter");
  eval->add_option("--subset", pa.subset, "Vertex subset mask");

  auto* check = app.add_subcommand("check", "Run the invariant suites");
  check->fallthrough();
  std::string suite = "all", check_setfn;
  int trials = 30;
  check->add_option("--suite", suite,
                    "all | cross-form | tables | submodularity | identities | discrete-continuous");
  check->add_option("--setfn", check_setfn, "Verify a table file and its asserts");
  check->add_option("--trials", trials, "Sampling effort");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed())
      return run_solve(common, pa, algo, max_iter, tol, multistart, prox, verify, allow_dim);
    if (oracle->parsed()) return run_oracle(common, pa);
    if (eigen->parsed()) return run_eigen(common, pair, setfn_f, setfn_g);
    if (eval->parsed()) return run_eval(common, pa, eval_setfn, extension, point);
    if (check->parsed()) return run_check(common, suite, check_setfn, trials);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
