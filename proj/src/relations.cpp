// SPDX-License-Identifier: Apache-2.0
#include "bellmono/relations.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "bellmono/errors.hpp"
#include "bellmono/linprog.hpp"

namespace bellmono {

namespace {

PartitionCertificate make_certificate(int n, const std::vector<std::vector<const char*>>& table) {
    PartitionCertificate cert;
    cert.n = n;
    for (const auto& row : table) {
        std::vector<PauliString> group;
        group.reserve(row.size());
        for (const char* letters : row) group.push_back(pauli_from_letters(letters));
        cert.groups.push_back(std::move(group));
    }
    return cert;
}

ElementaryRelation make_relation(std::string name, Hypergraph pattern,
                                 PartitionCertificate cert) {
    ElementaryRelation rel;
    rel.name = std::move(name);
    rel.pattern = std::move(pattern);
    rel.bound = cert.group_count();
    rel.certificate = std::move(cert);
    return rel;
}

void validate_embedding(const Hypergraph& network, const Hypergraph& pattern,
                        const Embedding& e) {
    if (e.edge_map.size() != pattern.edges.size() ||
        e.vertex_map.size() != static_cast<size_t>(pattern.n))
        throw domain_error("embedding map sizes do not match the pattern");
    std::set<int> vertex_images;
    for (int v : e.vertex_map) {
        if (v < 0 || v >= network.n) throw domain_error("embedding vertex out of range");
        if (!vertex_images.insert(v).second) throw domain_error("embedding vertex map not injective");
    }
    std::set<int> edge_images;
    for (size_t i = 0; i < pattern.edges.size(); ++i) {
        const int b = e.edge_map[i];
        if (b < 0 || b >= network.edge_count()) throw domain_error("embedding edge out of range");
        if (!edge_images.insert(b).second) throw domain_error("embedding edge map not injective");
        std::vector<int> image;
        image.reserve(pattern.edges[i].size());
        for (int pv : pattern.edges[i]) image.push_back(e.vertex_map[pv]);
        std::sort(image.begin(), image.end());
        if (image != network.edges[b])
            throw domain_error("embedding does not map a pattern edge onto a network edge");
    }
}

}  // namespace

std::vector<PauliString> plane_observable_cover(const Hypergraph& pattern) {
    if (pattern.edges.empty()) throw domain_error("pattern has no edges");
    std::vector<PauliString> cover;
    for (const auto& edge : pattern.edges) {
        const auto obs = plane_observables(edge, pattern.n);
        cover.insert(cover.end(), obs.begin(), obs.end());
    }
    return cover;
}

VerificationReport verify_relation(const ElementaryRelation& rel) {
    VerificationReport report;
    if (!rel.certificate.has_value()) {
        report.failures.push_back("relation '" + rel.name + "' carries no certificate");
        return report;
    }
    if (Rational(rel.certificate->group_count()) != rel.bound)
        report.failures.push_back("group count does not equal the stated bound");
    if (rel.certificate->n != rel.pattern.n)
        report.failures.push_back("certificate register size differs from the pattern");
    auto inner = verify_certificate(*rel.certificate, plane_observable_cover(rel.pattern));
    report.failures.insert(report.failures.end(), inner.failures.begin(), inner.failures.end());
    report.pass = report.failures.empty();
    return report;
}

ElementaryRelation single_edge_relation(int arity) {
    if (arity < 2 || arity > 10) throw domain_error("single-edge arity must be in [2, 10]");
    std::vector<int> edge(arity);
    for (int i = 0; i < arity; ++i) edge[i] = i;
    Hypergraph pattern(arity, {edge});
    // Pair each observable with its partner differing only at the first
    // qubit: 2^(arity-1) anti-commuting pairs.
    const auto obs = plane_observables(edge, arity);
    const size_t half = obs.size() / 2;
    PartitionCertificate cert;
    cert.n = arity;
    for (size_t i = 0; i < half; ++i) cert.groups.push_back({obs[i], obs[i + half]});
    return make_relation("single-" + std::to_string(arity), std::move(pattern), std::move(cert));
}

std::vector<ElementaryRelation> builtin_catalog() {
    std::vector<ElementaryRelation> catalog;

    catalog.push_back(make_relation(
        "vee", Hypergraph(3, {{0, 1}, {0, 2}}),
        make_certificate(3, {
            {"XXI", "XYI", "YIX", "YIY"},
            {"XIX", "XIY", "YXI", "YYI"},
        })));

    catalog.push_back(make_relation(
        "book", Hypergraph(4, {{0, 1, 2}, {0, 1, 3}}),
        make_certificate(4, {
            {"XXXI", "XXYI", "XYIX", "XYIY"},
            {"XYXI", "XYYI", "XXIX", "XXIY"},
            {"YXXI", "YXYI", "YYIX", "YYIY"},
            {"YYXI", "YYYI", "YXIX", "YXIY"},
        })));

    catalog.push_back(make_relation(
        "bowtie", Hypergraph(5, {{0, 1, 2}, {0, 3, 4}}),
        make_certificate(5, {
            {"XXXII", "XYXII", "YIIXY", "YIIYY"},
            {"YXYII", "YYYII", "XIIXX", "XIIYX"},
            {"XXYII", "XYYII", "YIIXX", "YIIYX"},
            {"YXXII", "YYXII", "XIIXY", "XIIYY"},
        })));

    catalog.push_back(make_relation(
        "square", Hypergraph(4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}),
        make_certificate(4, {
            {"XXYI", "XYIX", "XIXY", "IYYY", "YYXI", "YXIY", "YIYX", "IXXX"},
            {"XYXI", "YYIY", "YIXX", "IXXY", "YXYI", "XXIX", "XIYY", "IYYX"},
            {"YXXI", "XXIY", "YIYY", "IXYX", "XYYI", "YYIX", "XIXX", "IYXY"},
            {"YYYI", "YXIX", "XIYX", "IYXX", "XXXI", "XYIY", "YIXY", "IXYY"},
        })));

    catalog.push_back(make_relation(
        "triforce", Hypergraph(6, {{0, 1, 2}, {0, 2, 4}, {0, 3, 4}, {2, 4, 5}}),
        make_certificate(6, {
            {"XXXIII", "XYXIII", "XIYIYI", "YIXIXI", "YIIXYI", "YIIYYI", "IIYIXX", "IIYIXY"},
            {"XXYIII", "XYYIII", "XIXIXI", "YIYIYI", "YIIXXI", "YIIYXI", "IIXIYX", "IIXIYY"},
            {"YXXIII", "YYXIII", "XIXIYI", "YIYIXI", "XIIXXI", "XIIYXI", "IIYIYX", "IIYIYY"},
            {"YXYIII", "YYYIII", "XIYIXI", "YIXIYI", "XIIXYI", "XIIYYI", "IIXIXX", "IIXIXY"},
        })));

    const ElementaryRelation& square = catalog[3];
    catalog.push_back(lift_relation(square, square, "lifted-square"));

    return catalog;
}

ElementaryRelation lift_relation(const ElementaryRelation& a, const ElementaryRelation& b,
                                 std::string name) {
    if (!a.certified() || !b.certified())
        throw domain_error("lifting requires certified relations");
    if (a.bound != b.bound) throw domain_error("lifting requires equal bounds");

    const int n = 1 + a.pattern.n + b.pattern.n;
    const int offset_a = 1;
    const int offset_b = 1 + a.pattern.n;
    std::vector<std::vector<int>> edges;
    for (const auto& e : a.pattern.edges) {
        std::vector<int> lifted{0};
        for (int v : e) lifted.push_back(v + offset_a);
        edges.push_back(std::move(lifted));
    }
    for (const auto& e : b.pattern.edges) {
        std::vector<int> lifted{0};
        for (int v : e) lifted.push_back(v + offset_b);
        edges.push_back(std::move(lifted));
    }
    Hypergraph pattern(n, std::move(edges));

    auto shift_cert = [n](const PartitionCertificate& cert, int offset) {
        PartitionCertificate out;
        out.n = n;
        for (const auto& group : cert.groups) {
            std::vector<PauliString> shifted;
            shifted.reserve(group.size());
            for (const auto& o : group) shifted.push_back(shift_qubits(o, n, offset));
            out.groups.push_back(std::move(shifted));
        }
        return out;
    };
    auto lifted = lift_certificate(shift_cert(*a.certificate, offset_a),
                                   shift_cert(*b.certificate, offset_b), 0);
    return make_relation(std::move(name), std::move(pattern), std::move(lifted));
}

std::optional<ElementaryRelation> try_certify(const std::string& name, const Hypergraph& pattern,
                                              const Rational& bound, uint64_t node_budget) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    if (bound <= 0 || denominator(bound) != 1) return std::nullopt;
    const auto groups_wanted = numerator(bound);
    if (groups_wanted > 64) return std::nullopt;
    const auto cover = plane_observable_cover(pattern);
    if (cover.size() > 64) return std::nullopt;  // partition search cap
    const auto result =
        search_partition(cover, groups_wanted.convert_to<int>(), node_budget);
    if (!result.certificate.has_value()) return std::nullopt;
    auto rel = make_relation(name, pattern, *result.certificate);
    if (!verify_relation(rel).pass) throw internal_error("searched certificate failed verification");
    return rel;
}

Rational MonogamyRelation::coefficient_sum() const {
    Rational total(0);
    for (const auto& c : coefficients) total += c;
    return total;
}

MonogamyRelation as_monogamy(const ElementaryRelation& rel) {
    MonogamyRelation out;
    out.network = rel.pattern;
    out.coefficients.assign(rel.pattern.edges.size(), Rational(1));
    out.bound = rel.bound;
    out.method = "elementary";
    return out;
}

MonogamyRelation averaging_sum(const Hypergraph& network,
                               const std::vector<ElementaryRelation>& catalog,
                               const std::vector<CoverPiece>& pieces) {
    std::map<std::string, const ElementaryRelation*> by_name;
    for (const auto& rel : catalog) by_name.emplace(rel.name, &rel);

    MonogamyRelation out;
    out.network = network;
    out.coefficients.assign(network.edges.size(), Rational(0));
    out.pieces = pieces;
    out.method = "averaging-sum";
    for (const auto& piece : pieces) {
        const auto it = by_name.find(piece.relation_name);
        if (it == by_name.end())
            throw domain_error("unknown elementary relation '" + piece.relation_name + "'");
        if (piece.weight <= 0) throw domain_error("piece weights must be positive");
        const ElementaryRelation& rel = *it->second;
        validate_embedding(network, rel.pattern, piece.embedding);
        for (int edge_index : piece.embedding.edge_map)
            out.coefficients[edge_index] += piece.weight;
        out.bound += piece.weight * rel.bound;
    }
    return out;
}

MonogamyRelation pair_average(const Hypergraph& network) {
    // Weight-1 average over every adjacent pair of Bell tests.
    std::vector<ElementaryRelation> catalog = builtin_catalog();
    std::vector<CoverPiece> pieces;
    const int h = network.edge_count();
    for (int i = 0; i < h; ++i) {
        for (int j = i + 1; j < h; ++j) {
            const auto& ei = network.edges[i];
            const auto& ej = network.edges[j];
            std::vector<int> shared;
            std::set_intersection(ei.begin(), ei.end(), ej.begin(), ej.end(),
                                  std::back_inserter(shared));
            if (shared.empty()) continue;
            std::vector<int> only_i, only_j;
            std::set_difference(ei.begin(), ei.end(), shared.begin(), shared.end(),
                                std::back_inserter(only_i));
            std::set_difference(ej.begin(), ej.end(), shared.begin(), shared.end(),
                                std::back_inserter(only_j));

            CoverPiece piece;
            piece.embedding.edge_map = {i, j};
            piece.weight = 1;
            if (ei.size() == 2 && ej.size() == 2 && shared.size() == 1) {
                piece.relation_name = "vee";  // hub, then the two loose ends
                piece.embedding.vertex_map = {shared[0], only_i[0], only_j[0]};
            } else if (ei.size() == 3 && ej.size() == 3 && shared.size() == 1) {
                piece.relation_name = "bowtie";
                piece.embedding.vertex_map = {shared[0], only_i[0], only_i[1], only_j[0],
                                              only_j[1]};
            } else if (ei.size() == 3 && ej.size() == 3 && shared.size() == 2) {
                piece.relation_name = "book";
                piece.embedding.vertex_map = {shared[0], shared[1], only_i[0], only_j[0]};
            } else {
                throw coverage_error("no elementary bound for this adjacent pair shape");
            }
            pieces.push_back(std::move(piece));
        }
    }
    if (pieces.empty()) throw coverage_error("network has no adjacent pairs to average");
    auto out = averaging_sum(network, catalog, pieces);
    out.method = "pair-average";
    return out;
}

MonogamyRelation normalize_relation(const MonogamyRelation& raw) {
    Rational min_positive(0);
    for (const auto& c : raw.coefficients) {
        if (c < 0) throw domain_error("negative coefficient in relation");
        if (c > 0 && (min_positive == 0 || c < min_positive)) min_positive = c;
    }
    if (min_positive == 0) throw domain_error("relation constrains no edge");
    MonogamyRelation out = raw;
    out.bound = raw.bound / min_positive;
    for (auto& piece : out.pieces) piece.weight /= min_positive;
    for (auto& c : out.coefficients) {
        c /= min_positive;
        if (c > 1) c = 1;  // weakening: squared Bell values are nonnegative
    }
    out.method = raw.method + "/normalized";
    return out;
}

MonogamyRelation optimal_fractional_cover(const Hypergraph& network,
                                          const std::vector<ElementaryRelation>& catalog,
                                          const CoverOptions& opts) {
    if (network.edges.empty()) throw domain_error("network has no edges");

    std::vector<ElementaryRelation> effective = catalog;
    if (opts.inject_baselines) {
        std::set<int> arities;
        for (const auto& e : network.edges) arities.insert(static_cast<int>(e.size()));
        for (int arity : arities) {
            auto baseline = single_edge_relation(arity);
            const bool present =
                std::any_of(effective.begin(), effective.end(),
                            [&](const ElementaryRelation& r) { return r.name == baseline.name; });
            if (!present) effective.push_back(std::move(baseline));
        }
    }

    struct Instance {
        const ElementaryRelation* relation;
        Embedding embedding;
    };
    std::vector<Instance> instances;
    for (const auto& rel : effective) {
        if (rel.pattern.n > network.n) continue;
        for (auto& emb : find_embeddings(network, rel.pattern))
            instances.push_back({&rel, std::move(emb)});
        if (instances.size() > 20000) throw size_error("too many pattern placements to optimize");
    }
    if (instances.empty()) throw coverage_error("no catalog pattern embeds into the network");

    // Covering LP, solved through its dual so the slack basis starts feasible:
    // max sum_e y_e  s.t.  for each instance, sum over its image of y <= bound.
    LinearProgram lp;
    lp.num_vars = network.edge_count();
    lp.objective.assign(lp.num_vars, Rational(1));
    for (const auto& inst : instances) {
        std::vector<Rational> row(lp.num_vars, Rational(0));
        for (int edge_index : inst.embedding.edge_map) row[edge_index] = 1;
        lp.rows.push_back(std::move(row));
        lp.rhs.push_back(inst.relation->bound);
    }
    const auto sol = solve_max_lp(lp);
    if (sol.unbounded)
        throw coverage_error("some edge is covered by no pattern; its trade-off is unbounded");

    std::vector<CoverPiece> pieces;
    for (size_t i = 0; i < instances.size(); ++i) {
        if (sol.dual[i] == 0) continue;
        pieces.push_back({instances[i].relation->name, instances[i].embedding, sol.dual[i]});
    }
    auto raw = averaging_sum(network, effective, pieces);
    if (raw.bound != sol.value) throw internal_error("cover bound mismatch against the optimum");
    for (const auto& c : raw.coefficients)
        if (c < 1) throw internal_error("cover left an edge with coverage below 1");
    auto out = normalize_relation(raw);
    out.method = "fractional-cover";
    return out;
}

bool derivation_certified(const MonogamyRelation& rel,
                          const std::vector<ElementaryRelation>& catalog) {
    if (rel.pieces.empty()) return false;
    for (const auto& piece : rel.pieces) {
        const auto it = std::find_if(catalog.begin(), catalog.end(), [&](const auto& r) {
            return r.name == piece.relation_name;
        });
        if (it != catalog.end()) {
            if (!it->certified()) return false;
        } else if (piece.relation_name.rfind("single-", 0) != 0) {
            return false;  // injected baselines are the only names allowed off-catalog
        }
    }
    return true;
}

}  // namespace bellmono
