#include "lovx/json_io.hpp"

#include <fstream>

namespace lovx {

Json tuple_to_json(const SetTuple& t, int n) {
  Json parts = Json::array();
  for (const auto& p : t.parts) {
    Json part;
    part["pos"] = subset_vertices(p.pos, n);
    part["neg"] = subset_vertices(p.neg, n);
    parts.push_back(std::move(part));
  }
  return parts;
}

Json oracle_to_json(const OracleResult& res, int n) {
  Json j;
  j["optimum"] = res.optimum;
  j["evaluations"] = res.evaluations;
  Json ws = Json::array();
  for (const auto& w : res.witnesses) ws.push_back(tuple_to_json(w, n));
  j["witnesses"] = ws;
  return j;
}

Json trace_to_json(const SolveTrace& trace, bool thin_iterates) {
  Json j;
  j["seed"] = trace.seed;
  j["termination"] = trace.termination;
  j["iterations"] = trace.iterates.size();
  j["final_ratio"] = trace.final_ratio;
  Json rs = Json::array();
  for (const auto& it : trace.iterates) rs.push_back(it.r);
  j["ratios"] = rs;
  if (!thin_iterates) {
    Json xs = Json::array();
    for (const auto& it : trace.iterates) xs.push_back(it.x);
    j["points"] = xs;
  }
  j["final_x"] = trace.final_x;
  return j;
}

Json certificate_to_json(const EigenCertificate& cert, int n) {
  Json j;
  j["accepted"] = cert.accepted;
  j["lambda"] = cert.lambda;
  j["eigenset"] = tuple_to_json(cert.eigenset, n);
  j["residual"] = cert.residual;
  j["witness"] = cert.witness;
  return j;
}

Json graph_meta_json(const Graph& g) {
  Json j;
  j["n"] = g.n();
  j["m"] = g.edges().size();
  j["signed"] = g.is_signed();
  j["volume"] = g.volume();
  return j;
}

Json instance_meta_json(const ProblemInstance& inst) {
  Json j;
  j["id"] = inst.id;
  j["kind"] = to_string(inst.kind);
  j["dim"] = inst.dim;
  j["blocks"] = inst.blocks;
  j["sense"] = inst.sense == OptSense::Min ? "min" : "max";
  j["graph"] = graph_meta_json(inst.graph);
  if (!inst.params.empty()) j["params"] = inst.params;
  return j;
}

SetFunction setfn_from_json(const Json& j) {
  if (!j.contains("n") || !j.contains("kind"))
    throw ParseError("set-function file needs 'n' and 'kind'", 0);
  int n = j.at("n").get<int>();
  DomainKind kind = domain_kind_from_string(j.at("kind").get<std::string>());
  std::uint64_t size;
  if (kind == DomainKind::Powerset)
    size = std::uint64_t{1} << n;
  else if (kind == DomainKind::DisjointPair)
    size = pow3(n);
  else
    throw ParseError("table files cover powerset and disjoint-pair kinds", 0);
  std::vector<double> values(size, 0.0);
  if (j.contains("values"))
    for (auto it = j.at("values").begin(); it != j.at("values").end(); ++it) {
      std::uint64_t idx = std::stoull(it.key());
      if (idx >= size) throw ParseError("table index out of range: " + it.key(), 0);
      values[idx] = it.value().get<double>();
    }
  return kind == DomainKind::Powerset ? SetFunction::from_powerset_table(n, std::move(values))
                                      : SetFunction::from_pair_table(n, std::move(values));
}

Json setfn_to_json(const SetFunction& f) {
  if (f.kind() != DomainKind::Powerset && f.kind() != DomainKind::DisjointPair)
    throw DomainError("only table-backed kinds serialize");
  f.densify();
  Json values;
  std::uint64_t size = f.kind() == DomainKind::Powerset ? (std::uint64_t{1} << f.n()) : pow3(f.n());
  for (std::uint64_t i = 0; i < size; ++i) {
    double v = f.kind() == DomainKind::Powerset ? f.at_mask(static_cast<SubsetId>(i)) : f.at_code(i);
    if (v != 0.0) values[std::to_string(i)] = v;
  }
  Json j;
  j["n"] = f.n();
  j["kind"] = to_string(f.kind());
  j["values"] = values;
  return j;
}

SetFunction setfn_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path, 0);
  Json j;
  in >> j;
  return setfn_from_json(j);
}

SetFnAsserts setfn_asserts_from_json(const Json& j) {
  SetFnAsserts out;
  if (j.contains("asserts")) {
    const Json& a = j.at("asserts");
    if (a.contains("submodular")) out.submodular = a.at("submodular").get<bool>();
    if (a.contains("bisubmodular")) out.bisubmodular = a.at("bisubmodular").get<bool>();
  }
  return out;
}

}  // namespace lovx
