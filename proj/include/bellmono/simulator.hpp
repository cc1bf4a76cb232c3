// SPDX-License-Identifier: Apache-2.0
#ifndef BELLMONO_SIMULATOR_HPP
#define BELLMONO_SIMULATOR_HPP

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "bellmono/hypergraph.hpp"
#include "bellmono/pauli.hpp"

namespace bellmono {

using Complex = std::complex<double>;
using StateVector = std::vector<Complex>;

inline constexpr int kMaxSimQubits = 12;

struct WeightedState {
    double p = 1.0;
    StateVector psi;
};

// Finite mixture of pure states. Density matrices never appear; every mixed
// state in the analysis is an explicit small ensemble.
struct QuantumEnsemble {
    int n = 0;
    std::vector<WeightedState> components;

    QuantumEnsemble() = default;
    // Validates: n <= 12, probabilities positive summing to 1 (1e-9), every
    // component normalized (1e-9), amplitude counts 2^n.
    QuantumEnsemble(int n, std::vector<WeightedState> components);
    static QuantumEnsemble pure(int n, StateVector psi);
};

Complex inner_product(const StateVector& a, const StateVector& b);

// P |psi>, using the symplectic masks directly.
StateVector apply_pauli(const StateVector& psi, const PauliString& p);

// Ensemble average of a Hermitian Pauli observable.
double expectation(const QuantumEnsemble& e, const PauliString& p);

struct QubitAxes {
    std::array<double, 3> axis1{1, 0, 0};
    std::array<double, 3> axis2{0, 1, 0};
};

// Per-qubit measurement plane: settings are unit vectors cos(a)*axis1 +
// sin(a)*axis2. The named planes are "xy" (default) and "xz".
struct MeasurementPlane {
    std::string label = "xy";
    std::vector<QubitAxes> per_qubit;

    static MeasurementPlane xy(int n);
    static MeasurementPlane xz(int n);
    static MeasurementPlane named(const std::string& name, int n);
};

// Full-correlation tensor restricted to a plane: component index runs over
// axis choices with the first listed qubit most significant (0 = axis1).
struct CorrelationTensor {
    std::vector<int> qubits;     // sorted ascending
    std::vector<double> values;  // size 2^m

    int m() const { return static_cast<int>(qubits.size()); }
    double norm_sq() const;
};

CorrelationTensor correlation_tensor(const QuantumEnsemble& e, const std::vector<int>& qubits,
                                     const MeasurementPlane& plane);

// Two in-plane measurement angles per involved qubit, in tensor qubit order.
struct SettingsAssignment {
    std::vector<std::array<double, 2>> angles;
};

// Two-setting full-correlation Bell expression, normalized so every local
// model obeys B <= 1: B = 2^-m * sum over sign vectors s of
// |sum over setting choices k of prod_j s_j^(k_j) E(k)|.
double wwzb_value(const CorrelationTensor& t, const SettingsAssignment& s);

// Value plus the analytic gradient with respect to the 2m angles (flattened
// as [qubit0 setting0, qubit0 setting1, qubit1 setting0, ...]). At kinks of
// the absolute values a subgradient is returned.
std::pair<double, std::vector<double>> wwzb_value_and_gradient(const CorrelationTensor& t,
                                                               const SettingsAssignment& s);

struct BellOptConfig {
    int restarts = 32;
    int max_iters = 300;
    uint64_t seed = 12345;
};

struct BellOptResult {
    double value = 0;
    SettingsAssignment settings;
};

// Maximum of the Bell expression over in-plane settings: deterministic seeds
// (the exact two-qubit optimum from the tensor SVD; the graded families that
// are optimal for GHZ-type tensors) plus seeded random restarts, each polished
// by gradient ascent. Guarantees value <= sqrt(norm_sq) + 1e-6 (asserted).
BellOptResult max_bell_settings(const CorrelationTensor& t, const BellOptConfig& cfg = {});
BellOptResult max_bell_settings(const QuantumEnsemble& e, const std::vector<int>& qubits,
                                const MeasurementPlane& plane, const BellOptConfig& cfg = {});

// Coefficients c with B(settings) = sum_dir c[dir] * T[dir], the linearization
// of the Bell expression at the given settings (signs frozen). Exact identity.
std::vector<double> bell_linear_coefficients(const CorrelationTensor& t,
                                             const SettingsAssignment& s);

// Applies sum_dir coef[dir] * O_dir to psi, where O_dir is the product over
// the listed qubits of the plane axis operators picked by dir's bits.
StateVector apply_plane_combination(const StateVector& psi, int n, const std::vector<int>& qubits,
                                    const MeasurementPlane& plane,
                                    const std::vector<double>& coef);

// --- state catalog ---

QuantumEnsemble ghz_state(int n);
QuantumEnsemble x_product_state(int n);
QuantumEnsemble random_pure_state(int n, std::mt19937_64& rng);

// Star network state: qubit 0 is the hub, qubit 1 the entangled satellite
// (alpha|00> + beta|11> with alpha^2 = (1 + sqrt2 sin t)/2), remaining leaves
// |0>. leaf_noise maps a product-leaf qubit (2..n_leaves) to p in [0,1],
// mixing it to p|0><0| + (1-p) I/2. In the xz plane: B(0,1)^2 = 2 cos^2 t and
// B(0,j)^2 = 2 p_j^2 sin^2 t. Requires t in [0, pi/4].
QuantumEnsemble star_state(int n_leaves, double t, const std::map<int, double>& leaf_noise = {});

// Coefficients (a1,a2,a3,a4) of the four-qubit chain state
// a1|0000> + a2|1111> + a3|1100> + a4|0011> realizing the targets in region
// P1; at b13 = 1 the last two vanish. Exposed for boundary checks.
std::array<double, 4> chain_amplitudes(double b12, double b13, double b34);

// Regions of the (B12, B13, B34) trade-off body for the 4-qubit chain:
// P1: B12,B34 > 1;  P2: only B12 > 1;  P3: only B13 > 1;  P4: only B34 > 1;
// P5: all <= 1 (classical mixtures).
enum class ChainRegion { P1, P2, P3, P4, P5 };

struct ChainTargets {
    double b12 = 0, b13 = 0, b34 = 0;
};

// Throws a domain error if the targets violate the pairwise trade-off
// (b12^2 + b13^2 <= 2 and b13^2 + b34^2 <= 2) or fall outside [0, sqrt2].
ChainRegion classify_chain_region(const ChainTargets& t);

// State on 4 qubits achieving the targets exactly (in the xz plane), built
// per region; validates the targets against the declared region.
QuantumEnsemble chain_state(ChainRegion region, const ChainTargets& targets);

// Superposition (1/sqrt2) sum_e alpha_e |0 on e, 1 elsewhere> + (1/sqrt2)|1...1>
// over the network's hyperedges. Requires sum alpha^2 = 1 (1e-9).
QuantumEnsemble tree_state(const Hypergraph& network, const std::vector<double>& alphas);

}  // namespace bellmono

#endif
