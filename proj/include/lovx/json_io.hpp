#pragma once

#include <json.hpp>

#include "lovx/catalog.hpp"
#include "lovx/eigenpair.hpp"
#include "lovx/fracprog.hpp"

namespace lovx {

using Json = nlohmann::json;

Json tuple_to_json(const SetTuple& t, int n);
Json oracle_to_json(const OracleResult& res, int n);
Json trace_to_json(const SolveTrace& trace, bool thin_iterates = true);
Json certificate_to_json(const EigenCertificate& cert, int n);
Json graph_meta_json(const Graph& g);
Json instance_meta_json(const ProblemInstance& inst);

/// Table format: {"n": ..., "kind": "powerset"|"disjoint-pair",
/// "values": {"<index>": value, ...}, "asserts": {...}?} where the index is
/// the decimal subset mask (powerset) or the decimal ternary code
/// (disjoint-pair, digit 0/1/2 = out/pos/neg); missing entries are 0.
SetFunction setfn_from_json(const Json& j);
Json setfn_to_json(const SetFunction& f);
SetFunction setfn_from_file(const std::string& path);

/// Optional property assertions carried by a table file.
struct SetFnAsserts {
  std::optional<bool> submodular;
  std::optional<bool> bisubmodular;
};
SetFnAsserts setfn_asserts_from_json(const Json& j);

}  // namespace lovx
