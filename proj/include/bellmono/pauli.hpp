// SPDX-License-Identifier: Apache-2.0
#ifndef BELLMONO_PAULI_HPP
#define BELLMONO_PAULI_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bellmono {

// Multi-qubit Pauli operator in symplectic form: i^phase * prod_q X_q^x Z_q^z,
// with Y stored as x=z=1 and a compensating factor of i in phase (Y = i X Z).
// Qubits are 0-indexed internally; the text form ("X1 Y3") is 1-indexed.
struct PauliString {
    int n = 0;
    uint64_t x_mask = 0;
    uint64_t z_mask = 0;
    int phase = 0;  // exponent of i, mod 4

    bool operator==(const PauliString& other) const = default;

    // Letter 'I','X','Y','Z' at qubit q.
    char letter(int q) const;
    // Qubits where the operator is not identity.
    uint64_t support() const { return x_mask | z_mask; }
    int weight() const;
    // Eigenvalues +-1; holds iff phase parity matches the Y count parity.
    bool is_hermitian() const;

    std::string to_string() const;
};

// Builds from one letter per qubit, e.g. "XYI" -> X on 0, Y on 1. The result
// equals the literal tensor product of the letters (phase = Y count mod 4).
PauliString pauli_from_letters(const std::string& letters);

// Parses the spaced 1-indexed form "X1 Y3 X4" over n qubits ("I" = identity).
PauliString pauli_parse(const std::string& text, int n);

// Zero iff the operators commute (symplectic form: count of qubits where both
// act and with different letters, mod 2).
bool commutes(const PauliString& a, const PauliString& b);

PauliString product(const PauliString& a, const PauliString& b);

// Same operator on a wider register, qubits shifted up by offset.
PauliString shift_qubits(const PauliString& p, int new_n, int offset);

// The 2^k in-plane observables on the given qubits (ascending), letters taken
// from the plane pair (default X/Y), ordered lexicographically with the first
// listed qubit most significant and axis1 < axis2.
std::vector<PauliString> plane_observables(const std::vector<int>& qubits, int n,
                                           char axis1 = 'X', char axis2 = 'Y');

// Grouping of observables into pairwise anti-commuting families. g groups
// certify sum of squared expectations <= g over the union.
struct PartitionCertificate {
    int n = 0;
    std::vector<std::vector<PauliString>> groups;

    int group_count() const { return static_cast<int>(groups.size()); }
    std::vector<PauliString> all_observables() const;
};

struct VerificationReport {
    bool pass = false;
    std::vector<std::string> failures;  // human-readable, pinpointing pairs/strings

    std::string to_string() const;
};

// Checks: every string Hermitian; within each group all pairs anti-commute;
// no observable repeated anywhere (compared by masks, phase ignored); the
// union equals required_cover exactly.
VerificationReport verify_certificate(const PartitionCertificate& cert,
                                      const std::vector<PauliString>& required_cover);

struct PartitionSearchResult {
    std::optional<PartitionCertificate> certificate;
    bool exhausted = false;  // true when the whole space was searched (proof of absence)
    uint64_t nodes = 0;
};

// Backtracking partition of the observables into at most max_groups pairwise
// anti-commuting groups. Deterministic given input order: each observable
// tries existing groups in creation order, then opens a new group. Stops at
// node_budget without a verdict (exhausted=false, no certificate).
PartitionSearchResult search_partition(const std::vector<PauliString>& observables,
                                       int max_groups, uint64_t node_budget = 50'000'000);

// Doubles a pair of certificates over disjoint registers: group i becomes
// {X_pivot a : a in A_i} u {Y_pivot b : b in B_i}, followed by the g partner
// groups with X_pivot and Y_pivot interchanged. Requires disjoint supports,
// equal group counts, pivot outside both supports.
PartitionCertificate lift_certificate(const PartitionCertificate& cert_a,
                                      const PartitionCertificate& cert_b, int pivot);

}  // namespace bellmono

#endif
