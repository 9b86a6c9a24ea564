#pragma once

#include <map>

#include "lovx/graph.hpp"
#include "lovx/lovasz.hpp"
#include "lovx/oracle.hpp"
#include "lovx/setfn.hpp"

namespace lovx {

/// Closed-form positively homogeneous piecewise-linear function with a
/// canonical subgradient selection satisfying <subgrad(x), x> = eval(x).
struct PLFunction {
  std::function<double(ConstSpan)> eval;
  std::function<Vec(ConstSpan)> subgrad;
  double degree = 1.0;

  bool is_zero() const { return !eval; }
  double operator()(ConstSpan x) const { return eval ? eval(x) : 0.0; }
  Vec grad(ConstSpan x) const { return subgrad ? subgrad(x) : Vec(x.size(), 0.0); }
};

// Building blocks shared by the catalog (weights w_e > 0 throughout).
PLFunction pl_zero();
PLFunction pl_scale(PLFunction f, double c);
PLFunction pl_add(PLFunction f, PLFunction g);
PLFunction pl_edge_tv(const Graph& g);                          // sum w |x_i - x_j|
PLFunction pl_edge_tv_signed(const Graph& g, int sign);         // over edges of one sign
PLFunction pl_edge_sum_abs(const Graph& g, int sign);           // sum w |x_i + x_j| over one sign
PLFunction pl_weighted_l1(Vec coeffs);                          // sum c_i |x_i|
PLFunction pl_linf(int n, double scale);                        // scale * max |x_i|
PLFunction pl_centered_l1(Vec weights);                         // min_t sum d_i |x_i - t|
PLFunction pl_all_pairs_tv(int n, double scale);                // sum_{i<j} |x_i - x_j|
PLFunction pl_complete_tv(Vec pair_coeffs, int n);              // sum_{i<j} c_ij |x_i - x_j|
PLFunction pl_neighborhood_span(const Graph& g, int mode);      // vertex-boundary extensions

/// One row of the extension catalog: the discrete function together with its
/// closed-form extension; `eval` must agree with the generic evaluator.
struct ClosedForm {
  std::string id;
  SetFunction discrete;
  PLFunction form;
};

/// Catalogued closed forms.  Powerset rows: cut, const, vol, vol-min-side,
/// split-pairs, card-pow, vol-pow, boundary-vertices.  Disjoint-pair rows:
/// pair-cut-sym, pair-cross-edges, pair-const, pair-vol, pair-vol-min-side,
/// pair-inside-edges, pair-card-times-inside-edges, pair-outside-card.
ClosedForm closed_form(const std::string& id, const Graph& g, double param = 0.0);
std::vector<std::string> closed_form_ids();

// ---------------------------------------------------------------------------
// Discrete objective factories
// ---------------------------------------------------------------------------

SetFunction cut_function(const Graph& g);               // |cut(A)|, powerset
SetFunction volume_function(const Graph& g);            // vol(A)
SetFunction cardinality_function(int n);                // #A
SetFunction constant_one(int n, DomainKind kind);       // 1 away from the all-empty argument
SetFunction pair_cut_sym_function(const Graph& g);      // |cut(A)| + |cut(B)|
SetFunction modularity_function(const Graph& g);        // Q(A), powerset

// ---------------------------------------------------------------------------
// Problem instances
// ---------------------------------------------------------------------------

/// A catalog problem: the discrete pair (f, g) with its feasible family, the
/// continuous pair in difference-of-convex form (F = F1 - F2, G = G1 - G2),
/// and the optimization sense.  Continuous and discrete sides agree at every
/// feasible indicator vector.
struct ProblemInstance {
  std::string id;
  Graph graph;
  DomainKind kind = DomainKind::DisjointPair;  // geometry of continuous points
  int dim = 0;                                 // length of a continuous point
  int blocks = 1;                              // k for k-way instances
  OptSense sense = OptSense::Min;

  SetFunction f, g;
  FeasibleDomain family;
  PLFunction F1, F2, G1, G2;

  /// Keeps solver iterates inside the feasible cone (e.g. centering so that
  /// max + min = 0); identity when absent.
  std::function<void(Vec&)> project_feasible;

  /// True when F1, F2, G1, G2 are exactly the `kind`-extensions of their
  /// indicator traces, so the continuous pieces are linear on the ternary
  /// triangulation (enables the exact inner step and eigen certification).
  bool dc_traces_exact = false;

  /// Additional named continuous reformulations (evaluator only).
  std::map<std::string, std::function<double(ConstSpan)>> extra_forms;
  std::map<std::string, double> params;

  double F(ConstSpan x) const { return F1(x) - (F2.is_zero() ? 0.0 : F2(x)); }
  double G(ConstSpan x) const { return G1(x) - (G2.is_zero() ? 0.0 : G2(x)); }
  double ratio(ConstSpan x) const { return F(x) / G(x); }
  Vec indicator(const SetTuple& t) const;
  double discrete_ratio(const SetTuple& t) const { return f.eval(t) / g.eval(t); }
};

ProblemInstance maxcut_instance(const Graph& g, double p = 1.0);
ProblemInstance mincut_instance(const Graph& g);
ProblemInstance max_kcut_instance(const Graph& g, int k, bool with_union_boundary = false);
/// Whole-graph Cheeger cut: cut(A) / min(vol A, vol (V\A)).
ProblemInstance cheeger_instance(const Graph& g);
/// Dirichlet isoperimetric constant of A: min over S inside A of |boundary S| / vol S.
ProblemInstance dirichlet_cheeger_instance(const Graph& g, SubsetId a);
/// Relative (Neumann) Cheeger constant of the subgraph closure of A.
ProblemInstance neumann_cheeger_instance(const Graph& g, SubsetId a);
enum class IndependenceForm { Product, Difference };
ProblemInstance independence_instance(const Graph& g, IndependenceForm form = IndependenceForm::Difference);
ProblemInstance matching_instance(const Graph& g);
ProblemInstance chromatic_instance(const Graph& g);
ProblemInstance frustration_instance(const Graph& g);
ProblemInstance modularity_instance(const Graph& g);
ProblemInstance normalized_cut_instance(const Graph& g);
/// mu given as symmetric pair weights (flattened upper triangle, i < j).
ProblemInstance sparsest_cut_instance(const Graph& g, const std::vector<double>& mu);
ProblemInstance isoperimetric_profile_instance(const Graph& g, int k);
enum class VertexBoundaryKind { Internal, External, Both };
ProblemInstance vertex_boundary_instance(const Graph& g, VertexBoundaryKind kind);
ProblemInstance cheeger_like_instance(const Graph& g);
ProblemInstance dual_cheeger_instance(const Graph& g);

struct VertexCoverProblem {
  ProblemInstance instance;       // constrained min of f over covers
  SetFunction cost;
};
VertexCoverProblem vertex_cover_instance(const Graph& g, SetFunction cost);

struct MultiwayPartitionProblem {
  Graph graph;
  SetFunction cost;               // submodular block cost
  std::vector<int> terminals;
};
MultiwayPartitionProblem multiway_partition_instance(const Graph& g, SetFunction cost,
                                                     std::vector<int> terminals);

/// Dispatch by problem id (CLI surface).  Supported ids:
/// maxcut mincut max-k-cut cheeger dirichlet-cheeger neumann-cheeger
/// independence matching chromatic frustration modularity normalized-cut
/// sparsest-cut isoperimetric vertex-boundary-int vertex-boundary-ext
/// vertex-boundary-ver cheeger-like dual-cheeger vertex-cover
ProblemInstance instance_by_id(const std::string& id, const Graph& g,
                               const std::map<std::string, double>& params = {});
std::vector<std::string> instance_ids();

/// Exact discrete optimum of an instance (enumeration over its declared
/// domain and family).
OracleResult oracle_optimum(const ProblemInstance& inst);

// Exact graph quantities used as ground truth by tests and the CLI.
double exact_maxcut(const Graph& g);
double exact_mincut(const Graph& g);
double exact_max_kcut(const Graph& g, int k);
double exact_independence_number(const Graph& g);
double exact_chromatic_number(const Graph& g);
double exact_matching_number(const Graph& g);
double exact_frustration_index(const Graph& g);  // frustrated-edge weight
double exact_modularity_max(const Graph& g);
double exact_cheeger_constant(const Graph& g);
double exact_vertex_cover_number(const Graph& g);

}  // namespace lovx
