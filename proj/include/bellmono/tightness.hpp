// SPDX-License-Identifier: Apache-2.0
#ifndef BELLMONO_TIGHTNESS_HPP
#define BELLMONO_TIGHTNESS_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bellmono/hypergraph.hpp"
#include "bellmono/pauli.hpp"
#include "bellmono/rational.hpp"
#include "bellmono/relations.hpp"
#include "bellmono/simulator.hpp"

namespace bellmono {

enum class TightnessStatus { numerically_tight, gap_found, inconclusive };

std::string to_string(TightnessStatus s);

struct TightnessConfig {
    std::string plane = "xy";
    int restarts = 32;        // random starts after the deterministic seeds
    int max_rounds = 80;      // see-saw rounds per start
    uint64_t seed = 12345;
    double tight_tol = 1e-4;  // gap at or below this counts as numerically tight
    int settings_restarts = 2;  // per-round settings search effort (final pass is thorough)
};

// Best witness found: a pure state plus per-edge settings in the chosen plane.
struct TightnessWitness {
    QuantumEnsemble ensemble;
    std::vector<SettingsAssignment> edge_settings;  // aligned with network.edges
    std::vector<double> edge_values;                // Bell value per edge at the witness
    std::string plane = "xy";
};

struct TightnessVerdict {
    MonogamyRelation relation;
    double best_lhs = 0;
    double bound = 0;  // relation bound as a double
    TightnessWitness witness;
    TightnessStatus status = TightnessStatus::inconclusive;
    double gap = 0;  // bound - best_lhs; never below -1e-6 (else the relation is refuted)
};

// Maximizes sum_e coeff_e * B_e^2 over pure states and per-edge settings by
// alternating a per-edge settings search with a monotone state update (the
// Bell expression is linearized at the current settings' sign pattern, and the
// resulting operator sum is driven by shifted power iteration). Starts from
// GHZ-on-one-edge for every edge, the x-product state, two tree states with
// random amplitudes, then cfg.restarts random pure states. Throws a
// verification error if the best value exceeds the stated bound by more than
// 1e-6: that refutes the relation rather than measuring its tightness.
TightnessVerdict optimize_relation(const MonogamyRelation& rel, const TightnessConfig& cfg = {});

struct SearchConfig {
    int h_max = 0;  // cap on edges per network; 0 means the full C(n, m)
    uint64_t seed = 12345;
    int restarts = 6;    // lean optimizer restarts inside the loop
    int max_rounds = 60;
    double tight_tol = 1e-4;
    int snap_max_denominator = 8;  // conjectured bounds snap to small fractions
    double snap_tol = 1e-3;
    uint64_t enumeration_budget = 2'000'000;
    uint64_t certify_budget = 50'000'000;
    std::string plane = "xy";
};

// One loop decision: the network considered, the bound derived by fractional
// covering over the current elementary set, and what the optimizer concluded.
struct SearchEntry {
    int n = 0, h = 0, index = 0;  // enumeration coordinates within (n, h)
    Hypergraph network;
    Rational derived_bound;
    double best_lhs = 0;
    TightnessStatus status = TightnessStatus::inconclusive;
    bool added = false;      // a new elementary relation entered the set
    bool snapped = false;    // its bound snapped to a small fraction
    bool certified = false;  // an anti-commutation certificate was found for it
    Rational conjectured_bound;   // meaningful only when added
    std::string relation_name;    // name of the added relation
    std::vector<std::string> pruned;  // superseded relations removed from the set
    std::string note;
};

struct SearchLog {
    int n_max = 0, m = 0;
    SearchConfig config;
    std::vector<SearchEntry> entries;
    std::vector<ElementaryRelation> elementary;  // final set, pruning applied
};

// The brute-force loop over all hypergraphs with n vertices and h edges of
// arity m (n ascending from m+1, h ascending up to C(n, m), isolated vertices
// allowed): derive a bound by optimal fractional covering over the current
// elementary set, test it numerically, and on a gap add the conjectured
// tighter relation (bound snapped to a small rational, certificate searched)
// while removing superseded relations that embed into the new network with
// the same bound. Seeded with the two-edge relation sharing m-1 observers
// (vee for pairs, book for triples). Deterministic under cfg.seed.
SearchLog elementary_search(int n_max, int m, const SearchConfig& cfg = {});

// One pass/fail line of the symbolic obstruction verification.
struct ObstructionCheck {
    std::string description;
    bool pass = false;
};

// Symbolic contradiction for the cyclic network of h triple tests on 2h
// observers: saturating the averaged bound 2h forces every consecutive-pair
// group to split evenly, yet the product of two disjoint span observables
// must simultaneously have squared expectation >= (sqrt2 - 1)^2 (marginal
// lemma) and == 0 (it anti-commutes with the first two groups' quadruple).
struct ObstructionReport {
    int h = 0;  // odd, >= 5
    int n = 0;  // 2h qubits
    std::vector<std::array<PauliString, 2>> x_pairs;  // per-j consecutive-pair observables
    std::array<PauliString, 2> m6_basis;              // span observables on qubits {4,5,6}
    std::array<PauliString, 2> m2h_basis;             // span observables wrapping to qubit 0
    std::vector<ObstructionCheck> checks;
    double lemma_bound = 0;              // (sqrt2 - 1)^2
    double complementarity_budget = 1;   // cap on the anti-commuting family
    double margin = 0;                   // excess: 1/2 + 1/2 + lemma_bound - budget

    bool passed() const;
};

ObstructionReport cyclic_obstruction(int h);

// Marginal-versus-correlation check for dichotomic observables on disjoint
// qubits: <AB>^2 >= (|<A>| + |<B>| - 1)^2 whenever |<A>| + |<B>| >= 1.
struct MarginalLemmaReport {
    double a_expect = 0, b_expect = 0, product_expect = 0;
    bool applicable = false;  // |<A>| + |<B>| >= 1; otherwise the bound is vacuous
    double rhs = 0;           // (|<A>| + |<B>| - 1)^2 when applicable, else 0
    double margin = 0;        // <AB>^2 - rhs
    bool holds = true;        // vacuously true when not applicable
};

MarginalLemmaReport check_marginal_lemma(const QuantumEnsemble& e, const PauliString& a,
                                         const PauliString& b);

}  // namespace bellmono

#endif
