#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "helpers.hpp"
#include "lovx/fracprog.hpp"

using namespace lovx;
using namespace lovx::testing;

namespace {

// Every feasible indicator argument of an instance must give the same ratio
// on the discrete and continuous sides.
void check_indicator_agreement(const ProblemInstance& inst, bool exact = true) {
  const int n = inst.dim / inst.blocks;
  REQUIRE(inst.blocks == 1);
  auto try_arg = [&](const SetTuple& t) {
    if (t.all_empty()) return;
    if (!inst.family.is_member(t)) return;
    double fd = inst.f.eval(t), gd = inst.g.eval(t);
    Vec x = inst.indicator(t);
    double Fc = inst.F(x), Gc = inst.G(x);
    if (exact) {
      CHECK(Fc == fd);
      CHECK(Gc == gd);
    } else {
      CHECK(Fc == doctest::Approx(fd).epsilon(1e-9));
      CHECK(Gc == doctest::Approx(gd).epsilon(1e-9));
    }
  };
  if (inst.kind == DomainKind::Powerset) {
    for (SubsetId a = 0; a < (SubsetId{1} << n); ++a) try_arg(SetTuple{a});
  } else {
    for (std::uint64_t c = 0; c < pow3(n); ++c) try_arg(SetTuple{pair_from_code(c, n)});
  }
}

}  // namespace

TEST_CASE("graph readers") {
  {
    std::istringstream in("1 2 1.0\n2 3 1.0\n");
    Graph g = read_edge_list(in, 1);
    CHECK(g.n() == 3);
    CHECK(g.edges().size() == 2);
    CHECK(g.adjacent(0, 1));
    CHECK(g.adjacent(1, 2));
    CHECK_FALSE(g.adjacent(0, 2));
  }
  {
    std::istringstream in("c triangle\np edge 3 3\ne 1 2\ne 2 3\ne 1 3\n");
    Graph g = read_dimacs(in);
    CHECK(g.n() == 3);
    CHECK(g.edges().size() == 3);
    CHECK(g.adjacent(0, 2));
  }
  {
    std::istringstream in("0 1 1.0 -1\n");
    Graph g = read_edge_list(in, 0);
    CHECK(g.is_signed());
    CHECK(g.edges()[0].sign == -1);
  }
  {
    std::istringstream in("0 0 1.0\n");
    CHECK_THROWS_AS(read_edge_list(in, 0), ParseError);
  }
  {
    std::istringstream in("0 1\n1 0\n");
    CHECK_THROWS_AS(read_edge_list(in, 0), ParseError);
  }
  {
    std::istringstream in("# only comments\n");
    CHECK_THROWS_AS(read_edge_list(in, 0), ParseError);
  }
  Graph file = read_graph_file(std::string(LOVX_DATA_DIR) + "/petersen.el");
  CHECK(file.n() == 10);
  CHECK(file.edges().size() == 15);
  for (int i = 0; i < 10; ++i) CHECK(file.degree(i) == 3.0);
}

TEST_CASE("closed forms match the generic evaluators") {
  Rng rng(41);
  for (const Graph& g : {make_complete(3), make_path(4), make_petersen()}) {
    for (const auto& id : closed_form_ids()) {
      ClosedForm cf = closed_form(id, g);
      for (int t = 0; t < 40; ++t) {
        Vec x = random_point(g.n(), rng);
        double generic = eval_extension(cf.discrete, x).value;
        CHECK(cf.form(x) == doctest::Approx(generic).epsilon(1e-9));
      }
    }
  }
  // (#A)^2 at the all-ones point on three vertices.
  ClosedForm cp = closed_form("card-pow", make_complete(3), 2.0);
  CHECK(cp.form(Vec{1, 1, 1}) == doctest::Approx(9.0));
}

TEST_CASE("closed-form subgradients satisfy the Euler identity") {
  Rng rng(42);
  Graph g = make_path(4);
  for (const auto& id : closed_form_ids()) {
    ClosedForm cf = closed_form(id, g);
    if (!cf.form.subgrad) continue;
    for (int t = 0; t < 25; ++t) {
      Vec x = random_point(4, rng);
      Vec v = cf.form.grad(x);
      double dot = 0.0;
      for (int i = 0; i < 4; ++i) dot += v[i] * x[i];
      CHECK(dot == doctest::Approx(cf.form(x)).epsilon(1e-9));
    }
  }
}

TEST_CASE("indicator agreement across the catalog") {
  std::vector<Graph> graphs = {make_complete(3), make_path(4), make_cycle(5)};
  std::vector<std::string> ids = {"maxcut",         "mincut",      "cheeger",
                                  "independence",   "frustration", "modularity",
                                  "normalized-cut", "sparsest-cut", "isoperimetric",
                                  "vertex-boundary-int", "vertex-boundary-ext",
                                  "vertex-boundary-ver", "dual-cheeger", "vertex-cover"};
  for (const auto& g : graphs)
    for (const auto& id : ids) {
      ProblemInstance inst = instance_by_id(id, g, {{"k", 2}});
      // Modularity compares degree products, which are not exactly
      // representable ratios; everything else is integer-exact here.
      check_indicator_agreement(inst, id != "modularity" && id != "sparsest-cut");
    }
  // Edge-space instances.
  for (const auto& g : graphs) {
    check_indicator_agreement(matching_instance(g));
    check_indicator_agreement(cheeger_like_instance(g), false);
    ProblemInstance dir = dirichlet_cheeger_instance(g, 0b011);
    check_indicator_agreement(dir);
    ProblemInstance neu = neumann_cheeger_instance(g, 0b011);
    check_indicator_agreement(neu);
  }
}

TEST_CASE("exact graph quantities") {
  Graph k3 = make_complete(3), p3 = make_path(3), p4 = make_path(4);
  Graph c4 = make_cycle(4), c5 = make_cycle(5), k4 = make_complete(4);

  CHECK(exact_maxcut(k3) == 2.0);
  CHECK(exact_maxcut(c4) == 4.0);
  CHECK(exact_mincut(k3) == 2.0);
  CHECK(exact_mincut(p3) == 1.0);
  CHECK(exact_mincut(Graph(4, {{0, 1, 1.0, 1}, {2, 3, 1.0, 1}})) == 0.0);

  CHECK(exact_independence_number(k3) == 1.0);
  CHECK(exact_independence_number(p3) == 2.0);
  CHECK(exact_independence_number(c5) == 2.0);

  CHECK(exact_chromatic_number(k3) == 3.0);
  CHECK(exact_chromatic_number(p3) == 2.0);
  CHECK(exact_chromatic_number(c5) == 3.0);

  CHECK(exact_matching_number(k3) == 1.0);
  CHECK(exact_matching_number(p4) == 2.0);
  CHECK(exact_matching_number(c4) == 2.0);

  CHECK(exact_max_kcut(k3, 2) == 2.0);
  CHECK(exact_max_kcut(k3, 3) == 3.0);
  CHECK(exact_max_kcut(k4, 3) == 5.0);

  CHECK(exact_vertex_cover_number(k3) == 2.0);
  CHECK(exact_vertex_cover_number(make_star(3)) == 1.0);

  CHECK(exact_cheeger_constant(k3) == 1.0);
}

TEST_CASE("max k-cut equals maxcut at k = 2") {
  Rng rng(43);
  for (int t = 0; t < 20; ++t) {
    Graph g = random_connected_graph(5, rng);
    CHECK(exact_max_kcut(g, 2) == exact_maxcut(g));
  }
}

TEST_CASE("frustration index") {
  Graph neg_k3 = read_graph_file(std::string(LOVX_DATA_DIR) + "/neg_k3.el");
  CHECK(exact_frustration_index(neg_k3) == 1.0);
  Graph neg_c4 = read_graph_file(std::string(LOVX_DATA_DIR) + "/neg_c4.el");
  CHECK(exact_frustration_index(neg_c4) == 0.0);  // antibalanced even cycle
  Graph balanced = make_path(4);
  CHECK(exact_frustration_index(balanced) == 0.0);

  // Switching a vertex leaves the index unchanged.
  Rng rng(44);
  for (int t = 0; t < 50; ++t) {
    Graph g = random_signed_graph(6, rng);
    int v = rng.uniform_int(6);
    std::vector<Graph::Edge> switched = g.edges();
    for (auto& e : switched)
      if (e.u == v || e.v == v) e.sign = -e.sign;
    Graph h(6, switched);
    CHECK(exact_frustration_index(g) == exact_frustration_index(h));
  }

  // The quoted continuous form: |E-| plus the minimum of the signed ratio.
  ProblemInstance inst = frustration_instance(neg_k3);
  OracleResult res = oracle_optimum(inst);
  CHECK(inst.params.at("negative-weight") + res.optimum == exact_frustration_index(neg_k3));
}

TEST_CASE("modularity") {
  Graph g = read_graph_file(std::string(LOVX_DATA_DIR) + "/two_triangles_bridge.el");
  SetFunction q = modularity_function(g);
  CHECK(q.eval(SubsetId{0}) == 0.0);
  CHECK(q.eval(SubsetId{(1u << g.n()) - 1}) == doctest::Approx(0.0).epsilon(1e-12));
  double best = exact_modularity_max(g);
  CHECK(best > 0.0);
  CHECK(best == doctest::Approx(q.eval(SubsetId{0b000111})).epsilon(1e-12));

  // Oracle over the pair instance matches the powerset maximum.
  ProblemInstance inst = modularity_instance(g);
  CHECK(oracle_optimum(inst).optimum == doctest::Approx(best).epsilon(1e-9));
}

TEST_CASE("modularity frustration relation") {
  Rng rng(45);
  for (int t = 0; t < 8; ++t) {
    Graph g = random_connected_graph(5 + (t % 3), rng);
    const int n = g.n();
    // Signed graph on the adjusted weights w~_ij = w_ij - deg_i deg_j / vol.
    std::vector<Graph::Edge> edges;
    double neg_total = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        double w = g.weight(i, j) - g.degree(i) * g.degree(j) / g.volume();
        if (w == 0.0) continue;
        edges.push_back({i, j, std::fabs(w), w > 0 ? +1 : -1});
        if (w < 0) neg_total += -w;
      }
    Graph tilde(n, std::move(edges));
    double fr = exact_frustration_index(tilde);
    CHECK(2.0 * fr == doctest::Approx(2.0 * (neg_total - exact_modularity_max(g))).epsilon(1e-9));
  }
}

TEST_CASE("modularity box identity") {
  Graph g = make_path(4);
  ProblemInstance inst = modularity_instance(g);
  double best = exact_modularity_max(g);
  Rng rng(46);
  for (auto [a, b] : std::vector<std::pair<double, double>>{{1.0, 1.0}, {0.5, 2.0}}) {
    // max over [-a, b]^n of half the adjusted total-variation = (a+b) max Q.
    double max_seen = -1e100;
    for (SubsetId s = 0; s < 16; ++s) {
      Vec x(4, -a);
      for (int i = 0; i < 4; ++i)
        if (s >> i & 1) x[i] = b;
      max_seen = std::max(max_seen, 0.5 * (inst.F1(x) - inst.F2(x)));
    }
    for (int t = 0; t < 400; ++t) {
      Vec x(4);
      for (double& v : x) v = rng.uniform(-a, b);
      CHECK(0.5 * (inst.F1(x) - inst.F2(x)) <= max_seen + 1e-9);
    }
    CHECK(max_seen == doctest::Approx((a + b) * best).epsilon(1e-9));
  }
}

TEST_CASE("cheeger variants") {
  Graph k3 = make_complete(3), p3 = make_path(3);
  CHECK(oracle_optimum(normalized_cut_instance(k3)).optimum == 1.0);
  CHECK(oracle_optimum(isoperimetric_profile_instance(k3, 1)).optimum == 2.0);
  CHECK(oracle_optimum(cheeger_like_instance(p3)).optimum == doctest::Approx(1.5));

  // Dirichlet constant of the interior vertex of the path.
  ProblemInstance dir = dirichlet_cheeger_instance(p3, 0b010);
  CHECK(oracle_optimum(dir).optimum == doctest::Approx(1.0));

  // Neumann constant of the whole graph equals the Cheeger constant.
  ProblemInstance neu = neumann_cheeger_instance(k3, 0b111);
  CHECK(oracle_optimum(neu).optimum == doctest::Approx(exact_cheeger_constant(k3)));
}

TEST_CASE("vertex boundary instances and the Poincare sandwich") {
  Rng rng(47);
  for (const Graph& g : {make_path(4), make_cycle(5), make_petersen()}) {
    double h_int = oracle_optimum(vertex_boundary_instance(g, VertexBoundaryKind::Internal)).optimum;
    double h_ext = oracle_optimum(vertex_boundary_instance(g, VertexBoundaryKind::External)).optimum;
    double h_ver = oracle_optimum(vertex_boundary_instance(g, VertexBoundaryKind::Both)).optimum;
    CHECK(std::max(h_int, h_ext) <= h_ver + 1e-12);

    ProblemInstance inst = vertex_boundary_instance(g, VertexBoundaryKind::Both);
    auto poincare = inst.extra_forms.at("poincare-numerator");
    const int n = g.n();
    double estimate = std::numeric_limits<double>::infinity();
    auto quotient = [&](Vec x) {
      double mean = 0.0;
      for (double v : x) mean += v;
      mean /= n;
      double l1 = 0.0;
      for (double& v : x) {
        v -= mean;
        l1 += std::fabs(v);
      }
      return l1 > 1e-9 ? poincare(x) / l1 : std::numeric_limits<double>::infinity();
    };
    for (int t = 0; t < 2000; ++t) estimate = std::min(estimate, quotient(random_point(n, rng)));
    double indicator_value = std::numeric_limits<double>::infinity();
    for (SubsetId a = 1; a + 1 < (SubsetId{1} << n); ++a) {
      Vec x(n, 0.0);
      for (int i = 0; i < n; ++i) x[i] = (a >> i & 1) ? 1.0 : 0.0;
      double q = quotient(x);
      estimate = std::min(estimate, q);
      indicator_value = std::min(indicator_value, q);
    }
    CHECK(0.5 * std::max(h_int, h_ext) <= estimate + 1e-9);
    CHECK(h_ver >= indicator_value - 1e-9);
  }
}

TEST_CASE("independence forms agree on the optimum") {
  for (const Graph& g : {make_complete(3), make_path(4), make_cycle(5)}) {
    ProblemInstance diff = independence_instance(g, IndependenceForm::Difference);
    ProblemInstance prod = independence_instance(g, IndependenceForm::Product);
    double alpha = exact_independence_number(g);
    CHECK(oracle_optimum(diff).optimum == alpha);
    CHECK(oracle_optimum(prod).optimum == alpha);
  }
  CHECK_THROWS_AS(independence_instance(Graph(2, {{0, 1, 2.0, 1}})), DomainError);
}

TEST_CASE("matching ratio objective evaluates matchings") {
  Graph p4 = make_path(4);
  ProblemInstance inst = matching_instance(p4);
  auto ratio = inst.extra_forms.at("ratio-objective");
  // Indicator of the matching {0-1, 2-3} (edges 0 and 2 in the line graph).
  Vec y(3, 0.0);
  y[0] = 1.0;
  y[2] = 1.0;
  CHECK(ratio(y) == doctest::Approx(2.0));
  Vec single(3, 0.0);
  single[1] = 1.0;
  CHECK(ratio(single) == doctest::Approx(1.0));
}

TEST_CASE("vertex cover relaxation bounds the discrete optimum") {
  Rng rng(48);
  Graph k3 = make_complete(3);
  CHECK(exact_vertex_cover_number(k3) == 2.0);
  CHECK(vertex_cover_relaxation(k3, cardinality_function(3)) <= 2.0 + 1e-9);
  Graph star = make_star(3);
  CHECK(vertex_cover_relaxation(star, cardinality_function(4)) <= 1.0 + 1e-9);
  for (int t = 0; t < 20; ++t) {
    Graph g = random_connected_graph(5, rng);
    SetFunction cost = SetFunction::sum(cardinality_function(5),
                                        SetFunction::scale(cut_function(g), 0.5));
    double discrete = std::numeric_limits<double>::infinity();
    for (SubsetId a = 0; a < 32; ++a) {
      bool cover = true;
      for (const auto& e : g.edges())
        if (!((a >> e.u & 1) || (a >> e.v & 1))) cover = false;
      if (cover) discrete = std::min(discrete, cost.eval(a));
    }
    CHECK(vertex_cover_relaxation(g, cost, 400, t) <= discrete + 1e-9);
  }
}

TEST_CASE("multiway partition relaxation bounds the discrete optimum") {
  Graph p3 = make_path(3);
  auto prob = multiway_partition_instance(p3, cut_function(p3), {0, 2});
  // Every 2-terminal partition of the path pays the crossing edge from both
  // sides.
  SetFunction cost = prob.cost;
  OracleResult discrete = optimize_partitions(
      [&cost](const std::vector<SubsetId>& blocks) {
        double total = 0.0;
        for (SubsetId b : blocks) total += cost.eval(b);
        return total;
      },
      3, 2, OptSense::Min, PartitionConstraints{{0, 2}, false, true});
  CHECK(discrete.optimum == 2.0);
  CHECK(multiway_partition_relaxation(prob, 400) <= discrete.optimum + 1e-9);
  CHECK_THROWS_AS(multiway_partition_instance(p3, cut_function(p3), {0, 0}), DomainError);
}

TEST_CASE("chromatic instance continuous form") {
  Graph k3 = make_complete(3);
  ProblemInstance inst = chromatic_instance(k3);
  // Closed form matches the generic k-way disjoint-pair extension of the
  // discrete objective at random ternary tuples.
  Rng rng(49);
  for (int t = 0; t < 30; ++t) {
    Vec x = random_ternary(9, rng);
    double closed = inst.F1(x) - inst.F2(x);
    double generic = eval_kway_disjoint_pair(inst.f, x).value;
    CHECK(closed == doctest::Approx(generic).epsilon(1e-9));
  }
  // Also at generic continuous points.
  for (int t = 0; t < 30; ++t) {
    Vec x = random_point(9, rng);
    CHECK(inst.F1(x) - inst.F2(x) ==
          doctest::Approx(eval_kway_disjoint_pair(inst.f, x).value).epsilon(1e-9));
  }
  // Proper colorings attain the chromatic number; the ratio never dips below.
  for (int t = 0; t < 200; ++t) {
    Vec x = random_ternary(9, rng);
    double m = 0.0;
    for (double v : x) m = std::max(m, std::fabs(v));
    CHECK((inst.F1(x) - inst.F2(x)) / m >= 3.0 - 1e-9);
  }
}

TEST_CASE("maxcut p = 2 trigonometric identity") {
  Graph k3 = make_complete(3);
  ProblemInstance inst = maxcut_instance(k3, 2.0);
  Rng rng(50);
  // Cosine parametrization: the quarter scaling of the squared differences
  // equals the product-of-sines form.
  for (int t = 0; t < 100; ++t) {
    Vec theta = random_point(3, rng, -3.14, 3.14);
    Vec x(3);
    for (int i = 0; i < 3; ++i) x[i] = std::cos(theta[i]);
    double lhs = 0.25 * inst.F1(x);
    double rhs = 0.0;
    for (const auto& e : k3.edges()) {
      double a = std::sin((theta[e.u] - theta[e.v]) / 2.0);
      double b = std::sin((theta[e.u] + theta[e.v]) / 2.0);
      rhs += e.w * a * a * b * b;
    }
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
  }
  CHECK(0.25 * inst.F1(Vec{std::cos(0.0), std::cos(3.14159265358979), std::cos(0.0)}) ==
        doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("subadditive over superadditive ratio identity sampled") {
  // max over nonempty A of |cut(A)|^(1/p) / #A equals the continuous ratio;
  // sampled points never beat the discrete maximum and the optimal indicator
  // attains it.
  Rng rng(51);
  Graph g = make_path(4);
  const double p = 2.0;
  double best = 0.0;
  for (SubsetId a = 1; a < 16; ++a)
    best = std::max(best, std::pow(g.cut_weight(a), 1.0 / p) / popcount(a));
  SetFunction cut = cut_function(g);
  for (int t = 0; t < 500; ++t) {
    Vec x = random_point(4, rng, 0.0, 1.0);
    double num = 0.0;
    for (const auto& e : g.edges()) num += std::pow(std::fabs(x[e.u] - x[e.v]), p);
    num = std::pow(num, 1.0 / p);
    double den = x[0] + x[1] + x[2] + x[3];
    if (den > 1e-9) CHECK(num / den <= best + 1e-9);
  }
}

TEST_CASE("dual cheeger variant") {
  Graph k3 = make_complete(3);
  ProblemInstance inst = dual_cheeger_instance(k3);
  OracleResult res = oracle_optimum(inst);
  // Best pair ({0,1},{2}): two crossing edges over the full volume.
  CHECK(res.optimum == doctest::Approx(2.0 / 3.0));
}
