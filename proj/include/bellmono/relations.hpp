// SPDX-License-Identifier: Apache-2.0
#ifndef BELLMONO_RELATIONS_HPP
#define BELLMONO_RELATIONS_HPP

#include <optional>
#include <string>
#include <vector>

#include "bellmono/hypergraph.hpp"
#include "bellmono/pauli.hpp"
#include "bellmono/rational.hpp"

namespace bellmono {

// A reusable building block: on the pattern network, the sum of squared Bell
// values over its edges is at most `bound`. When the certificate is present,
// the bound is proven: the certificate partitions the in-plane observables of
// all pattern edges into `bound` pairwise anti-commuting groups, and each such
// group contributes at most 1 to the sum of squared expectations.
struct ElementaryRelation {
    std::string name;
    Hypergraph pattern;
    Rational bound;
    std::optional<PartitionCertificate> certificate;

    bool certified() const { return certificate.has_value(); }
};

// The in-plane observables of every pattern edge: exactly what an elementary
// certificate must cover (letters X/Y; relabeling the plane does not change
// the combinatorics).
std::vector<PauliString> plane_observable_cover(const Hypergraph& pattern);

// Structural checks for an elementary relation: certificate present, group
// count equal to the bound, and the certificate verifies against the cover.
VerificationReport verify_relation(const ElementaryRelation& rel);

// Baseline for a single Bell test with m observers: bound 2^(m-1), certified
// by pairing observables that differ only at the first qubit.
ElementaryRelation single_edge_relation(int arity);

// The named patterns with frozen certificates:
//   vee           two pair tests sharing an observer, bound 2
//   book          two triple tests sharing two observers, bound 4
//   bowtie        two triple tests sharing one observer, bound 4
//   square        all four triples on four observers, bound 4
//   triforce      a central triple plus three flaps, 6 observers, bound 4
//   lifted-square two squares joined through a pivot observer, bound 8
// Single-edge baselines are not listed; derivations inject them on demand.
std::vector<ElementaryRelation> builtin_catalog();

// Joins two certified relations through a fresh pivot observer: every edge
// gains the pivot, arity grows by one, the bound doubles. Requires equal
// bounds and certified inputs.
ElementaryRelation lift_relation(const ElementaryRelation& a, const ElementaryRelation& b,
                                 std::string name);

// Attempts to certify `pattern` at `bound` by searching for a partition into
// that many groups. Returns the certified relation, or nullopt if the search
// disproved it or ran out of budget (flag via the log side).
std::optional<ElementaryRelation> try_certify(const std::string& name, const Hypergraph& pattern,
                                              const Rational& bound,
                                              uint64_t node_budget = 50'000'000);

// One weighted placement of an elementary relation inside a network.
struct CoverPiece {
    std::string relation_name;
    Embedding embedding;
    Rational weight = 1;
};

// A derived trade-off on a network: sum over edges of coefficient * B^2 is at
// most `bound` for all quantum states (given the elementary inputs hold).
struct MonogamyRelation {
    Hypergraph network;
    std::vector<Rational> coefficients;  // aligned with network.edges
    Rational bound = 0;
    std::vector<CoverPiece> pieces;      // provenance of the averaging
    std::string method;

    Rational coefficient_sum() const;
};

// Views an elementary relation as a relation on its own pattern network with
// unit coefficients, e.g. to hand it to the tightness optimizer.
MonogamyRelation as_monogamy(const ElementaryRelation& rel);

// Assembles the weighted sum of elementary relation instances: coefficient of
// a network edge = total weight of the pieces whose image contains it; bound =
// sum of weight * elementary bound. Validates every embedding against the
// network and the named relation's pattern.
MonogamyRelation averaging_sum(const Hypergraph& network,
                               const std::vector<ElementaryRelation>& catalog,
                               const std::vector<CoverPiece>& pieces);

// The first-cut relation: every adjacent pair of edges, weight 1. Pair bounds
// come from the pattern the pair instantiates (vee 2; book/bowtie 4).
MonogamyRelation pair_average(const Hypergraph& network);

// Rescales so the smallest positive coefficient is 1, then weakens any larger
// coefficient down to 1 (valid since squared Bell values are nonnegative).
MonogamyRelation normalize_relation(const MonogamyRelation& raw);

struct CoverOptions {
    // Inject single-edge baselines so every network is coverable even where
    // no catalog pattern embeds.
    bool inject_baselines = true;
};

// The strongest derivable relation of the form sum B_e^2 <= bound: minimizes
// the averaged bound over fractional covers of the edge set by catalog
// instances, in exact arithmetic (LP optimum is certified by its dual). The
// result is normalized: every coefficient is 1.
MonogamyRelation optimal_fractional_cover(const Hypergraph& network,
                                          const std::vector<ElementaryRelation>& catalog,
                                          const CoverOptions& opts = {});

// True when the provenance is nonempty and every piece references a certified
// relation: a catalog member with a certificate, or a generated single-edge
// baseline (always certified). Uncovered provenance means the derived bound
// rests on a conjecture.
bool derivation_certified(const MonogamyRelation& rel,
                          const std::vector<ElementaryRelation>& catalog);

}  // namespace bellmono

#endif
