// SPDX-License-Identifier: Apache-2.0
#ifndef BELLMONO_JSON_IO_HPP
#define BELLMONO_JSON_IO_HPP

#include <string>
#include <string_view>

#include <json.hpp>

#include "bellmono/hypergraph.hpp"
#include "bellmono/pauli.hpp"
#include "bellmono/relations.hpp"
#include "bellmono/simulator.hpp"
#include "bellmono/tightness.hpp"

namespace bellmono {

// All serialization goes through nlohmann's ordered-by-key json, so a given
// value always dumps to the same bytes; rationals travel as "p/q" strings and
// Pauli strings in their 1-indexed text form.
using Json = nlohmann::json;

// {"n": int, "edges": [[int, ...], ...]}
Json hypergraph_to_json(const Hypergraph& g);
Hypergraph hypergraph_from_json(const Json& j);

// {"groups": [["X1 X2", ...], ...]}. On parse, the register size is inferred
// from the highest qubit mentioned unless n > 0 pins it.
Json certificate_to_json(const PartitionCertificate& cert);
PartitionCertificate certificate_from_json(const Json& j, int n = 0);

// {"network": {...}, "coefficients": [{"edge": [...], "c": "p/q"}, ...],
//  "bound": "p/q", "provenance": [...], "status": "certified|conjectured"}.
// The status is a property of the derivation, not the in-memory value, so the
// writer takes it explicitly; derivation_certified computes the honest one.
Json relation_to_json(const MonogamyRelation& rel, std::string_view status);
MonogamyRelation relation_from_json(const Json& j);

// {"name": ..., "pattern": {...}, "bound": "p/q", "certificate": {...}|null}.
// A present certificate is re-verified on load; failure is a verification
// error, matching the catalog-load contract.
Json elementary_to_json(const ElementaryRelation& rel);
ElementaryRelation elementary_from_json(const Json& j);

// {"n": int, "components": [{"p": float, "amplitudes": [[re, im], ...]}, ...]}
Json ensemble_to_json(const QuantumEnsemble& e);
QuantumEnsemble ensemble_from_json(const Json& j);

// Verdict with the witness state embedded plus the run configuration (plane,
// seed, restarts, tolerances) so the output is reproducible standalone.
Json verdict_to_json(const TightnessVerdict& v, const TightnessConfig& cfg,
                     std::string_view relation_status);

Json obstruction_to_json(const ObstructionReport& report);

Json marginal_to_json(const MarginalLemmaReport& report);

// One decision per line: a header line with the run parameters, one compact
// line per search entry, and a trailing line with the final elementary set.
Json search_entry_to_json(const SearchEntry& entry);
std::string search_log_to_jsonl(const SearchLog& log);

// CSV dump: one header row naming the tensor's qubits, then a row per
// direction choice with per-qubit setting indices (1 or 2) and the value.
std::string tensor_to_csv(const CorrelationTensor& t);

// Canonical text form used for all file output: two-space indent, trailing
// newline. Identical values produce identical bytes.
std::string json_to_text(const Json& j);
Json json_from_text(std::string_view text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view content);
Json load_json_file(const std::string& path);

}  // namespace bellmono

#endif
