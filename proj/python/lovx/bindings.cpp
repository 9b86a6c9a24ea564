// Python bindings for the core operations: set functions and their
// extensions, graph problem instances, oracles, solvers, and the eigenvalue
// machinery.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lovx/fracprog.hpp"
#include "lovx/json_io.hpp"

namespace py = pybind11;
using namespace lovx;

namespace {

SetTuple tuple_from_py(const std::vector<std::pair<SubsetId, SubsetId>>& parts) {
  SetTuple t;
  for (auto [pos, neg] : parts) t.parts.push_back(SetPair{pos, neg});
  return t;
}

std::vector<std::pair<SubsetId, SubsetId>> tuple_to_py(const SetTuple& t) {
  std::vector<std::pair<SubsetId, SubsetId>> out;
  for (const auto& p : t.parts) out.push_back({p.pos, p.neg});
  return out;
}

}  // namespace

PYBIND11_MODULE(_lovx, m) {
  m.doc() = "Multi-way Lovasz extensions, ratio solvers, and the set-pair eigenvalue problem";

  py::register_exception<DomainError>(m, "DomainError");
  py::register_exception<SizeLimitError>(m, "SizeLimitError");
  py::register_exception<ParseError>(m, "GraphParseError");
  py::register_exception<FeasibilityError>(m, "FeasibilityError");

  py::enum_<DomainKind>(m, "DomainKind")
      .value("POWERSET", DomainKind::Powerset)
      .value("DISJOINT_PAIR", DomainKind::DisjointPair)
      .value("K_WAY", DomainKind::KWay)
      .value("K_WAY_DISJOINT_PAIR", DomainKind::KWayDisjointPair);

  py::enum_<OptSense>(m, "Sense").value("MIN", OptSense::Min).value("MAX", OptSense::Max);

  py::class_<Graph>(m, "Graph")
      .def(py::init([](int n, const std::vector<std::tuple<int, int, double, int>>& edges) {
             std::vector<Graph::Edge> es;
             for (auto [u, v, w, s] : edges) es.push_back({u, v, w, s});
             return Graph(n, std::move(es));
           }),
           py::arg("n"), py::arg("edges"))
      .def_property_readonly("n", &Graph::n)
      .def_property_readonly("m", [](const Graph& g) { return g.edges().size(); })
      .def("degree", &Graph::degree)
      .def("volume", py::overload_cast<>(&Graph::volume, py::const_))
      .def("cut_weight", &Graph::cut_weight)
      .def("frustrated_weight", &Graph::frustrated_weight)
      .def("is_signed", &Graph::is_signed)
      .def("edges", [](const Graph& g) {
        std::vector<std::tuple<int, int, double, int>> out;
        for (const auto& e : g.edges()) out.push_back({e.u, e.v, e.w, e.sign});
        return out;
      });
  m.def("read_graph", &read_graph_file, py::arg("path"), py::arg("format") = "edge-list",
        py::arg("index_base") = 0);
  m.def("complete_graph", &make_complete);
  m.def("path_graph", &make_path);
  m.def("cycle_graph", &make_cycle);
  m.def("petersen_graph", &make_petersen);

  py::class_<SetFunction>(m, "SetFunction")
      .def_static("from_powerset_table", &SetFunction::from_powerset_table)
      .def_static("from_pair_table", &SetFunction::from_pair_table)
      .def_static(
          "from_callback",
          [](DomainKind kind, int n, int k, const std::function<double(const SetTuple&)>& fn) {
            return SetFunction::from_callback(kind, n, k, fn);
          })
      .def_property_readonly("kind", &SetFunction::kind)
      .def_property_readonly("n", &SetFunction::n)
      .def_property_readonly("k", &SetFunction::k)
      .def("__call__", [](const SetFunction& f,
                          const std::vector<std::pair<SubsetId, SubsetId>>& parts) {
        return f.eval(tuple_from_py(parts));
      })
      .def("eval_subset", [](const SetFunction& f, SubsetId a) { return f.eval(a); })
      .def("eval_pair",
           [](const SetFunction& f, SubsetId pos, SubsetId neg) { return f.eval(SetPair{pos, neg}); });

  m.def("cut_function", &cut_function);
  m.def("volume_function", &volume_function);
  m.def("cardinality_function", &cardinality_function);
  m.def("modularity_function", &modularity_function);

  m.def("is_submodular", [](const SetFunction& f) {
    auto r = is_submodular(f);
    return py::make_tuple(r.ok,
                          r.witness ? py::cast(tuple_to_py(r.witness->a)) : py::none().cast<py::object>(),
                          r.witness ? py::cast(tuple_to_py(r.witness->b)) : py::none().cast<py::object>());
  });
  m.def("is_bisubmodular", [](const SetFunction& f) { return is_bisubmodular(f).ok; });
  m.def("is_kway_submodular", [](const SetFunction& f) { return is_kway_submodular(f).ok; });
  m.def("delta_submodularity_gap", &delta_submodularity_gap);
  m.def("decompose_difference_submodular", &decompose_difference_submodular);

  py::class_<PLValue>(m, "PLValue")
      .def_readonly("value", &PLValue::value)
      .def_readonly("subgradient", &PLValue::subgradient)
      .def_property_readonly("chain", [](const PLValue& v) {
        std::vector<std::pair<std::vector<std::pair<SubsetId, SubsetId>>, double>> out;
        for (const auto& c : v.chain) out.push_back({tuple_to_py(c.level), c.length});
        return out;
      });

  m.def("eval_extension", [](const SetFunction& f, const Vec& x) { return eval_extension(f, x); });
  m.def("eval_original", [](const SetFunction& f, const Vec& x) { return eval_original(f, x); });
  m.def("eval_original_integral",
        [](const SetFunction& f, const Vec& x) { return eval_original_integral(f, x); });
  m.def("eval_original_mobius",
        [](const SetFunction& f, const Vec& x) { return eval_original_mobius(f, x); });
  m.def("eval_disjoint_pair",
        [](const SetFunction& f, const Vec& x) { return eval_disjoint_pair(f, x); });
  m.def("subgradient_at", [](const SetFunction& f, const Vec& x) { return subgradient_at(f, x); });
  m.def("subdifferential_vertices",
        [](const SetFunction& f, const std::vector<std::pair<SubsetId, SubsetId>>& at) {
          return subdifferential_vertices(f, tuple_from_py(at));
        });

  py::class_<ProblemInstance>(m, "ProblemInstance")
      .def_readonly("id", &ProblemInstance::id)
      .def_readonly("dim", &ProblemInstance::dim)
      .def_readonly("blocks", &ProblemInstance::blocks)
      .def_readonly("sense", &ProblemInstance::sense)
      .def_readonly("params", &ProblemInstance::params)
      .def("F", [](const ProblemInstance& i, const Vec& x) { return i.F(x); })
      .def("G", [](const ProblemInstance& i, const Vec& x) { return i.G(x); })
      .def("ratio", [](const ProblemInstance& i, const Vec& x) { return i.ratio(x); })
      .def("discrete_f", [](const ProblemInstance& i,
                            const std::vector<std::pair<SubsetId, SubsetId>>& parts) {
        return i.f.eval(tuple_from_py(parts));
      })
      .def("discrete_g", [](const ProblemInstance& i,
                            const std::vector<std::pair<SubsetId, SubsetId>>& parts) {
        return i.g.eval(tuple_from_py(parts));
      });
  m.def("instance", &instance_by_id, py::arg("id"), py::arg("graph"),
        py::arg("params") = std::map<std::string, double>{});
  m.def("instance_ids", &instance_ids);

  m.def("oracle_optimum", [](const ProblemInstance& inst) {
    OracleResult res = oracle_optimum(inst);
    std::vector<std::vector<std::pair<SubsetId, SubsetId>>> ws;
    for (const auto& w : res.witnesses) ws.push_back(tuple_to_py(w));
    return py::make_tuple(res.optimum, ws);
  });

  m.def("exact_maxcut", &exact_maxcut);
  m.def("exact_mincut", &exact_mincut);
  m.def("exact_independence_number", &exact_independence_number);
  m.def("exact_chromatic_number", &exact_chromatic_number);
  m.def("exact_matching_number", &exact_matching_number);
  m.def("exact_frustration_index", &exact_frustration_index);
  m.def("exact_modularity_max", &exact_modularity_max);
  m.def("exact_cheeger_constant", &exact_cheeger_constant);
  m.def("exact_max_kcut", &exact_max_kcut);

  py::class_<SolveTrace>(m, "SolveTrace")
      .def_readonly("termination", &SolveTrace::termination)
      .def_readonly("final_ratio", &SolveTrace::final_ratio)
      .def_readonly("final_x", &SolveTrace::final_x)
      .def_readonly("seed", &SolveTrace::seed)
      .def_property_readonly("ratios",
                             [](const SolveTrace& t) {
                               Vec rs;
                               for (const auto& it : t.iterates) rs.push_back(it.r);
                               return rs;
                             })
      .def_property_readonly("extracted",
                             [](const SolveTrace& t) -> py::object {
                               if (!t.extracted) return py::none();
                               return py::make_tuple(tuple_to_py(t.extracted->first),
                                                     t.extracted->second);
                             })
      .def_property_readonly("certificate", [](const SolveTrace& t) -> py::object {
        if (!t.certificate) return py::none();
        py::dict d;
        d["accepted"] = t.certificate->accepted;
        d["lambda"] = t.certificate->lambda;
        d["residual"] = t.certificate->residual;
        return d;
      });

  m.def(
      "ipsd_solve",
      [](const ProblemInstance& inst, const Vec& x0, double prox_weight, std::uint64_t seed,
         int max_iter, double tol, bool verify_eigen, bool generalized) {
        RatioProblem rp = ratio_problem(inst, prox_weight);
        SolveOptions opts;
        opts.seed = seed;
        opts.max_iter = max_iter;
        opts.tol = tol;
        opts.verify_eigen = verify_eigen;
        return generalized ? ipsd_solve_generalized(rp, x0, opts) : ipsd_solve(rp, x0, opts);
      },
      py::arg("instance"), py::arg("x0"), py::arg("prox_weight") = 0.0, py::arg("seed") = 1,
      py::arg("max_iter") = 1000, py::arg("tol") = 1e-10, py::arg("verify_eigen") = false,
      py::arg("generalized") = false);

  m.def(
      "dinkelbach_solve",
      [](const ProblemInstance& inst, const Vec& x0, double tol, int max_iter) {
        auto inner = dinkelbach_exact_oracle(inst);
        auto F = [&inst](ConstSpan x) { return inst.F(x); };
        auto G = [&inst](ConstSpan x) { return inst.G(x); };
        return dinkelbach_solve(F, G, inner, x0, inst.sense, tol, max_iter);
      },
      py::arg("instance"), py::arg("x0"), py::arg("tol") = 1e-12, py::arg("max_iter") = 200);

  m.def("extract_best_settuple", [](const ProblemInstance& inst, const Vec& x) {
    auto [t, r] = extract_best_settuple(inst, x);
    return py::make_tuple(tuple_to_py(t), r);
  });

  m.def(
      "frustration_recursive",
      [](const Graph& g, std::uint64_t seed, int multistart) {
        SolveOptions opts;
        opts.seed = seed;
        FrustrationResult r = frustration_recursive(g, opts, multistart);
        return py::make_tuple(r.plus, r.frustrated, r.rounds);
      },
      py::arg("graph"), py::arg("seed") = 1, py::arg("multistart") = 4);

  m.def(
      "enumerate_eigenvalues",
      [](const SetFunction& f, const SetFunction& g) {
        auto eigs = enumerate_eigenvalues(f, g);
        std::vector<std::pair<double, std::vector<std::pair<SubsetId, SubsetId>>>> out;
        for (const auto& [l, rep] : eigs) out.push_back({l, tuple_to_py(rep)});
        return out;
      },
      py::arg("f"), py::arg("g"));
  m.def(
      "verify_eigenpair",
      [](const SetFunction& f, const SetFunction& g, double lambda,
         const std::vector<std::pair<SubsetId, SubsetId>>& at) {
        EigenCertificate c = verify_eigenpair(f, g, lambda, tuple_from_py(at));
        py::dict d;
        d["accepted"] = c.accepted;
        d["lambda"] = c.lambda;
        d["residual"] = c.residual;
        d["witness"] = c.witness;
        return d;
      },
      py::arg("f"), py::arg("g"), py::arg("lambda"), py::arg("at"));
  m.def("minmaxcut_via_eigen", [](const Graph& g) {
    MinMaxCutResult r = minmaxcut_via_eigen(g);
    return py::make_tuple(r.mincut, r.maxcut, r.eigenvalues);
  });
  m.def("second_eigenvalue_cheeger",
        [](const SetFunction& f, const SetFunction& g) { return second_eigenvalue_cheeger(f, g); });

  m.def("vertex_cover_relaxation",
        [](const Graph& g, const SetFunction& cost) { return vertex_cover_relaxation(g, cost); });

  m.attr("__version__") = "1.0.0";
}
