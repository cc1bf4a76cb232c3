// SPDX-License-Identifier: Apache-2.0
#include "bellmono/json_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "bellmono/errors.hpp"

namespace bellmono {

namespace {

const Json& field(const Json& j, const char* key) {
    if (!j.is_object()) throw parse_error(std::string("expected an object holding '") + key + "'");
    const auto it = j.find(key);
    if (it == j.end()) throw parse_error(std::string("missing field '") + key + "'");
    return *it;
}

int int_field(const Json& j, const char* key) {
    const Json& v = field(j, key);
    if (!v.is_number_integer()) throw parse_error(std::string("field '") + key + "' must be an integer");
    return v.get<int>();
}

double double_field(const Json& j, const char* key) {
    const Json& v = field(j, key);
    if (!v.is_number()) throw parse_error(std::string("field '") + key + "' must be a number");
    return v.get<double>();
}

std::string string_field(const Json& j, const char* key) {
    const Json& v = field(j, key);
    if (!v.is_string()) throw parse_error(std::string("field '") + key + "' must be a string");
    return v.get<std::string>();
}

const Json& array_field(const Json& j, const char* key) {
    const Json& v = field(j, key);
    if (!v.is_array()) throw parse_error(std::string("field '") + key + "' must be an array");
    return v;
}

std::vector<int> int_list(const Json& j, const char* what) {
    if (!j.is_array()) throw parse_error(std::string(what) + " must be an array of integers");
    std::vector<int> out;
    out.reserve(j.size());
    for (const Json& v : j) {
        if (!v.is_number_integer())
            throw parse_error(std::string(what) + " must contain only integers");
        out.push_back(v.get<int>());
    }
    return out;
}

// Shortest decimal that round-trips the exact double; CSV shares the property
// the JSON dumper already has.
std::string format_double(double x) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

Json settings_to_json(const SettingsAssignment& s) {
    Json out = Json::array();
    for (const auto& pair : s.angles) out.push_back({pair[0], pair[1]});
    return out;
}

}  // namespace

Json hypergraph_to_json(const Hypergraph& g) {
    return Json{{"n", g.n}, {"edges", g.edges}};
}

Hypergraph hypergraph_from_json(const Json& j) {
    const int n = int_field(j, "n");
    std::vector<std::vector<int>> edges;
    for (const Json& e : array_field(j, "edges")) edges.push_back(int_list(e, "edge"));
    return Hypergraph(n, std::move(edges));
}

Json certificate_to_json(const PartitionCertificate& cert) {
    Json groups = Json::array();
    for (const auto& group : cert.groups) {
        Json g = Json::array();
        for (const auto& obs : group) g.push_back(obs.to_string());
        groups.push_back(std::move(g));
    }
    return Json{{"groups", groups}};
}

PartitionCertificate certificate_from_json(const Json& j, int n) {
    const Json& groups = array_field(j, "groups");
    if (n == 0) {
        // Infer the register from the highest qubit mentioned (text is 1-indexed).
        for (const Json& group : groups) {
            if (!group.is_array()) throw parse_error("certificate groups must be arrays");
            for (const Json& obs : group) {
                if (!obs.is_string()) throw parse_error("certificate observables must be strings");
                const std::string text = obs.get<std::string>();
                for (size_t i = 0; i < text.size();) {
                    if (std::isdigit(static_cast<unsigned char>(text[i]))) {
                        int idx = 0;
                        const auto res =
                            std::from_chars(text.data() + i, text.data() + text.size(), idx);
                        n = std::max(n, idx);
                        i = static_cast<size_t>(res.ptr - text.data());
                    } else {
                        ++i;
                    }
                }
            }
        }
        if (n == 0) throw parse_error("certificate mentions no qubits; cannot infer the register");
    }
    PartitionCertificate cert;
    cert.n = n;
    for (const Json& group : groups) {
        if (!group.is_array()) throw parse_error("certificate groups must be arrays");
        std::vector<PauliString> parsed;
        for (const Json& obs : group) {
            if (!obs.is_string()) throw parse_error("certificate observables must be strings");
            parsed.push_back(pauli_parse(obs.get<std::string>(), n));
        }
        cert.groups.push_back(std::move(parsed));
    }
    return cert;
}

Json relation_to_json(const MonogamyRelation& rel, std::string_view status) {
    if (status != "certified" && status != "conjectured")
        throw domain_error("relation status must be 'certified' or 'conjectured'");
    if (rel.coefficients.size() != rel.network.edges.size())
        throw domain_error("coefficient count must match the edge count");
    Json coefficients = Json::array();
    for (size_t i = 0; i < rel.network.edges.size(); ++i)
        coefficients.push_back(
            {{"edge", rel.network.edges[i]}, {"c", rational_to_string(rel.coefficients[i])}});
    Json provenance = Json::array();
    for (const auto& piece : rel.pieces)
        provenance.push_back({{"relation", piece.relation_name},
                              {"weight", rational_to_string(piece.weight)},
                              {"edge_map", piece.embedding.edge_map},
                              {"vertex_map", piece.embedding.vertex_map}});
    return Json{{"network", hypergraph_to_json(rel.network)},
                {"coefficients", coefficients},
                {"bound", rational_to_string(rel.bound)},
                {"provenance", provenance},
                {"status", std::string(status)},
                {"method", rel.method}};
}

MonogamyRelation relation_from_json(const Json& j) {
    MonogamyRelation rel;
    rel.network = hypergraph_from_json(field(j, "network"));
    const size_t edge_count = rel.network.edges.size();
    rel.coefficients.assign(edge_count, Rational(0));
    std::vector<bool> seen(edge_count, false);
    for (const Json& entry : array_field(j, "coefficients")) {
        std::vector<int> edge = int_list(field(entry, "edge"), "coefficient edge");
        std::sort(edge.begin(), edge.end());
        const auto it = std::find(rel.network.edges.begin(), rel.network.edges.end(), edge);
        if (it == rel.network.edges.end())
            throw parse_error("coefficient entry references an edge not in the network");
        const size_t idx = static_cast<size_t>(it - rel.network.edges.begin());
        if (seen[idx]) throw parse_error("duplicate coefficient entry for an edge");
        seen[idx] = true;
        rel.coefficients[idx] = rational_from_string(string_field(entry, "c"));
        if (rel.coefficients[idx] < 0) throw parse_error("coefficients must be nonnegative");
    }
    if (!std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }))
        throw parse_error("every network edge needs a coefficient entry");
    rel.bound = rational_from_string(string_field(j, "bound"));
    const std::string status = string_field(j, "status");
    if (status != "certified" && status != "conjectured")
        throw parse_error("relation status must be 'certified' or 'conjectured'");
    if (j.contains("provenance")) {
        for (const Json& entry : array_field(j, "provenance")) {
            CoverPiece piece;
            piece.relation_name = string_field(entry, "relation");
            piece.weight = rational_from_string(string_field(entry, "weight"));
            piece.embedding.edge_map = int_list(field(entry, "edge_map"), "edge_map");
            piece.embedding.vertex_map = int_list(field(entry, "vertex_map"), "vertex_map");
            rel.pieces.push_back(std::move(piece));
        }
    }
    if (j.contains("method")) rel.method = string_field(j, "method");
    return rel;
}

Json elementary_to_json(const ElementaryRelation& rel) {
    return Json{{"name", rel.name},
                {"pattern", hypergraph_to_json(rel.pattern)},
                {"bound", rational_to_string(rel.bound)},
                {"certificate",
                 rel.certificate ? certificate_to_json(*rel.certificate) : Json(nullptr)}};
}

ElementaryRelation elementary_from_json(const Json& j) {
    ElementaryRelation rel;
    rel.name = string_field(j, "name");
    rel.pattern = hypergraph_from_json(field(j, "pattern"));
    rel.bound = rational_from_string(string_field(j, "bound"));
    const Json& cert = field(j, "certificate");
    if (!cert.is_null()) {
        rel.certificate = certificate_from_json(cert, rel.pattern.n);
        const auto report = verify_relation(rel);
        if (!report.pass)
            throw verification_error("certificate failed verification on load: " +
                                     report.failures.front());
    }
    return rel;
}

Json ensemble_to_json(const QuantumEnsemble& e) {
    Json components = Json::array();
    for (const auto& c : e.components) {
        Json amplitudes = Json::array();
        for (const Complex& amp : c.psi) amplitudes.push_back({amp.real(), amp.imag()});
        components.push_back({{"p", c.p}, {"amplitudes", amplitudes}});
    }
    return Json{{"n", e.n}, {"components", components}};
}

QuantumEnsemble ensemble_from_json(const Json& j) {
    const int n = int_field(j, "n");
    std::vector<WeightedState> components;
    for (const Json& c : array_field(j, "components")) {
        WeightedState w;
        w.p = double_field(c, "p");
        for (const Json& amp : array_field(c, "amplitudes")) {
            if (!amp.is_array() || amp.size() != 2 || !amp[0].is_number() || !amp[1].is_number())
                throw parse_error("amplitudes must be [re, im] pairs");
            w.psi.emplace_back(amp[0].get<double>(), amp[1].get<double>());
        }
        components.push_back(std::move(w));
    }
    return QuantumEnsemble(n, std::move(components));  // validates sizes and norms
}

Json verdict_to_json(const TightnessVerdict& v, const TightnessConfig& cfg,
                     std::string_view relation_status) {
    Json edge_settings = Json::array();
    for (const auto& s : v.witness.edge_settings) edge_settings.push_back(settings_to_json(s));
    return Json{{"relation", relation_to_json(v.relation, relation_status)},
                {"bound", v.bound},
                {"best_lhs", v.best_lhs},
                {"gap", v.gap},
                {"status", to_string(v.status)},
                {"witness",
                 {{"plane", v.witness.plane},
                  {"state", ensemble_to_json(v.witness.ensemble)},
                  {"edge_settings", edge_settings},
                  {"edge_values", v.witness.edge_values}}},
                {"config",
                 {{"plane", cfg.plane},
                  {"seed", cfg.seed},
                  {"restarts", cfg.restarts},
                  {"settings_restarts", cfg.settings_restarts},
                  {"max_rounds", cfg.max_rounds},
                  {"tight_tol", cfg.tight_tol}}}};
}

Json obstruction_to_json(const ObstructionReport& report) {
    Json x_pairs = Json::array();
    for (const auto& pair : report.x_pairs)
        x_pairs.push_back({pair[0].to_string(), pair[1].to_string()});
    Json checks = Json::array();
    for (const auto& check : report.checks)
        checks.push_back({{"description", check.description}, {"pass", check.pass}});
    return Json{{"h", report.h},
                {"n", report.n},
                {"x_pairs", x_pairs},
                {"m6_basis", {report.m6_basis[0].to_string(), report.m6_basis[1].to_string()}},
                {"m2h_basis", {report.m2h_basis[0].to_string(), report.m2h_basis[1].to_string()}},
                {"checks", checks},
                {"lemma_bound", report.lemma_bound},
                {"complementarity_budget", report.complementarity_budget},
                {"margin", report.margin},
                {"passed", report.passed()}};
}

Json marginal_to_json(const MarginalLemmaReport& report) {
    return Json{{"a_expect", report.a_expect},
                {"b_expect", report.b_expect},
                {"product_expect", report.product_expect},
                {"applicable", report.applicable},
                {"rhs", report.rhs},
                {"margin", report.margin},
                {"holds", report.holds}};
}

Json search_entry_to_json(const SearchEntry& entry) {
    Json j{{"n", entry.n},
           {"h", entry.h},
           {"index", entry.index},
           {"network", hypergraph_to_json(entry.network)},
           {"derived_bound", rational_to_string(entry.derived_bound)},
           {"best_lhs", entry.best_lhs},
           {"status", to_string(entry.status)},
           {"added", entry.added},
           {"note", entry.note}};
    if (entry.added) {
        j["snapped"] = entry.snapped;
        j["certified"] = entry.certified;
        j["conjectured_bound"] = rational_to_string(entry.conjectured_bound);
        j["relation_name"] = entry.relation_name;
        j["pruned"] = entry.pruned;
    }
    return j;
}

std::string search_log_to_jsonl(const SearchLog& log) {
    std::ostringstream os;
    const Json header{{"kind", "search-run"},
                      {"m", log.m},
                      {"n_max", log.n_max},
                      {"config",
                       {{"seed", log.config.seed},
                        {"plane", log.config.plane},
                        {"restarts", log.config.restarts},
                        {"max_rounds", log.config.max_rounds},
                        {"tight_tol", log.config.tight_tol},
                        {"h_max", log.config.h_max},
                        {"snap_max_denominator", log.config.snap_max_denominator},
                        {"snap_tol", log.config.snap_tol}}}};
    os << header.dump() << '\n';
    for (const auto& entry : log.entries) os << search_entry_to_json(entry).dump() << '\n';
    Json relations = Json::array();
    for (const auto& rel : log.elementary) relations.push_back(elementary_to_json(rel));
    const Json footer{{"kind", "elementary-set"}, {"relations", relations}};
    os << footer.dump() << '\n';
    return os.str();
}

std::string tensor_to_csv(const CorrelationTensor& t) {
    const int m = t.m();
    std::string out;
    for (int j = 0; j < m; ++j) {
        out += 'q';
        out += std::to_string(t.qubits[j]);
        out += ',';
    }
    out += "T\n";
    for (size_t dir = 0; dir < t.values.size(); ++dir) {
        for (int j = 0; j < m; ++j) {
            out += std::to_string(((dir >> (m - 1 - j)) & 1) + 1);
            out += ',';
        }
        out += format_double(t.values[dir]);
        out += '\n';
    }
    return out;
}

std::string json_to_text(const Json& j) { return j.dump(2) + "\n"; }

Json json_from_text(std::string_view text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw parse_error(std::string("invalid JSON: ") + e.what());
    }
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open '" + path + "' for reading");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw io_error("failed reading '" + path + "'");
    return buffer.str();
}

void write_text_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("cannot open '" + path + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw io_error("failed writing '" + path + "'");
}

Json load_json_file(const std::string& path) { return json_from_text(read_text_file(path)); }

}  // namespace bellmono
