// SPDX-License-Identifier: Apache-2.0
#include "bellmono/simulator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "bellmono/errors.hpp"

namespace bellmono {

namespace {

constexpr double kPi = 3.14159265358979323846;

int popcount64(uint64_t v) { return std::popcount(v); }

// Portable uniform double in [0, 1): fixed mapping from the raw 64-bit draw
// so seeded runs are reproducible independent of the standard library.
double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

void check_qubit_list(const std::vector<int>& qubits, int n) {
    if (qubits.empty()) throw domain_error("empty qubit list");
    for (size_t i = 0; i < qubits.size(); ++i) {
        if (qubits[i] < 0 || qubits[i] >= n) throw domain_error("qubit index out of range");
        if (i > 0 && qubits[i] <= qubits[i - 1])
            throw domain_error("qubit list must be strictly increasing");
    }
}

// In-place action of the single-qubit operator axis . sigma on qubit q.
void apply_axis(StateVector& v, int q, const std::array<double, 3>& u) {
    const uint64_t bit = uint64_t{1} << q;
    const Complex m00(u[2], 0), m01(u[0], -u[1]), m10(u[0], u[1]), m11(-u[2], 0);
    for (uint64_t base = 0; base < v.size(); ++base) {
        if (base & bit) continue;
        const Complex a = v[base];
        const Complex b = v[base | bit];
        v[base] = m00 * a + m01 * b;
        v[base | bit] = m10 * a + m11 * b;
    }
}

// Contracts the tensor axis at bit position pos with a 2x2 matrix:
// out[row] = sum_col mat[row][col] * in[col].
void mode_transform(std::vector<double>& a, int pos, const std::array<std::array<double, 2>, 2>& mat) {
    const uint32_t bit = uint32_t{1} << pos;
    for (uint32_t idx = 0; idx < a.size(); ++idx) {
        if (idx & bit) continue;
        const double lo = a[idx];
        const double hi = a[idx | bit];
        a[idx] = mat[0][0] * lo + mat[0][1] * hi;
        a[idx | bit] = mat[1][0] * lo + mat[1][1] * hi;
    }
}

void walsh_hadamard(std::vector<double>& a) {
    for (uint32_t bit = 1; bit < a.size(); bit <<= 1) {
        for (uint32_t idx = 0; idx < a.size(); ++idx) {
            if (idx & bit) continue;
            const double lo = a[idx];
            const double hi = a[idx | bit];
            a[idx] = lo + hi;
            a[idx | bit] = lo - hi;
        }
    }
}

std::array<std::array<double, 2>, 2> settings_matrix(const std::array<double, 2>& angles) {
    return {{{std::cos(angles[0]), std::sin(angles[0])},
             {std::cos(angles[1]), std::sin(angles[1])}}};
}

void check_settings(const CorrelationTensor& t, const SettingsAssignment& s) {
    if (s.angles.size() != t.qubits.size())
        throw domain_error("settings must list two angles per tensor qubit");
}

// Per-setting-choice correlations E(k), k indexed with the first qubit as the
// most significant bit; k_j picks the angle for qubit j.
std::vector<double> setting_correlations(const CorrelationTensor& t, const SettingsAssignment& s) {
    const int m = t.m();
    std::vector<double> a = t.values;
    for (int j = 0; j < m; ++j) mode_transform(a, m - 1 - j, settings_matrix(s.angles[j]));
    return a;
}

}  // namespace

QuantumEnsemble::QuantumEnsemble(int n_, std::vector<WeightedState> components_)
    : n(n_), components(std::move(components_)) {
    if (n < 1 || n > kMaxSimQubits) throw size_error("qubit count must be in [1, 12]");
    if (components.empty()) throw domain_error("ensemble needs at least one component");
    const size_t dim = size_t{1} << n;
    double total = 0;
    for (const auto& c : components) {
        if (c.p <= 0) throw domain_error("component probabilities must be positive");
        if (c.psi.size() != dim) throw domain_error("component dimension mismatch");
        double norm = 0;
        for (const Complex& amp : c.psi) norm += std::norm(amp);
        if (std::abs(norm - 1.0) > 1e-9) throw domain_error("component state not normalized");
        total += c.p;
    }
    if (std::abs(total - 1.0) > 1e-9) throw domain_error("component probabilities must sum to 1");
}

QuantumEnsemble QuantumEnsemble::pure(int n, StateVector psi) {
    return QuantumEnsemble(n, {WeightedState{1.0, std::move(psi)}});
}

Complex inner_product(const StateVector& a, const StateVector& b) {
    if (a.size() != b.size()) throw internal_error("inner product dimension mismatch");
    Complex acc = 0;
    for (size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
    return acc;
}

StateVector apply_pauli(const StateVector& psi, const PauliString& p) {
    if (psi.size() != (size_t{1} << p.n)) throw internal_error("pauli dimension mismatch");
    static const Complex kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    StateVector out(psi.size(), Complex(0, 0));
    for (uint64_t b = 0; b < psi.size(); ++b) {
        const int ph = (p.phase + 2 * (popcount64(p.z_mask & b) & 1)) & 3;
        out[b ^ p.x_mask] += kIPow[ph] * psi[b];
    }
    return out;
}

double expectation(const QuantumEnsemble& e, const PauliString& p) {
    if (p.n != e.n) throw domain_error("observable qubit count mismatch");
    if (!p.is_hermitian()) throw domain_error("expectation requires a Hermitian operator");
    double acc = 0;
    for (const auto& c : e.components) {
        const Complex val = inner_product(c.psi, apply_pauli(c.psi, p));
        if (std::abs(val.imag()) > 1e-9 * (1.0 + std::abs(val.real())))
            throw internal_error("Hermitian expectation came out complex");
        acc += c.p * val.real();
    }
    return acc;
}

MeasurementPlane MeasurementPlane::xy(int n) {
    MeasurementPlane plane;
    plane.label = "xy";
    plane.per_qubit.assign(n, QubitAxes{{1, 0, 0}, {0, 1, 0}});
    return plane;
}

MeasurementPlane MeasurementPlane::xz(int n) {
    MeasurementPlane plane;
    plane.label = "xz";
    plane.per_qubit.assign(n, QubitAxes{{1, 0, 0}, {0, 0, 1}});
    return plane;
}

MeasurementPlane MeasurementPlane::named(const std::string& name, int n) {
    if (name == "xy") return xy(n);
    if (name == "xz") return xz(n);
    throw domain_error("unknown measurement plane: " + name);
}

double CorrelationTensor::norm_sq() const {
    double acc = 0;
    for (double v : values) acc += v * v;
    return acc;
}

CorrelationTensor correlation_tensor(const QuantumEnsemble& e, const std::vector<int>& qubits,
                                     const MeasurementPlane& plane) {
    check_qubit_list(qubits, e.n);
    if (plane.per_qubit.size() != static_cast<size_t>(e.n))
        throw domain_error("plane must define axes for every qubit");
    const int m = static_cast<int>(qubits.size());
    CorrelationTensor t;
    t.qubits = qubits;
    t.values.assign(size_t{1} << m, 0.0);
    for (const auto& c : e.components) {
        for (uint32_t dir = 0; dir < t.values.size(); ++dir) {
            StateVector work = c.psi;
            for (int j = 0; j < m; ++j) {
                const QubitAxes& ax = plane.per_qubit[qubits[j]];
                const bool second = (dir >> (m - 1 - j)) & 1u;
                apply_axis(work, qubits[j], second ? ax.axis2 : ax.axis1);
            }
            const Complex val = inner_product(c.psi, work);
            if (std::abs(val.imag()) > 1e-9 * (1.0 + std::abs(val.real())))
                throw internal_error("correlation came out complex");
            t.values[dir] += c.p * val.real();
        }
    }
    return t;
}

double wwzb_value(const CorrelationTensor& t, const SettingsAssignment& s) {
    check_settings(t, s);
    std::vector<double> sectors = setting_correlations(t, s);
    walsh_hadamard(sectors);
    double acc = 0;
    for (double v : sectors) acc += std::abs(v);
    return acc / static_cast<double>(sectors.size());
}

std::pair<double, std::vector<double>> wwzb_value_and_gradient(const CorrelationTensor& t,
                                                               const SettingsAssignment& s) {
    check_settings(t, s);
    const int m = t.m();
    const double scale = 1.0 / static_cast<double>(size_t{1} << m);

    std::vector<double> sectors = setting_correlations(t, s);
    walsh_hadamard(sectors);
    double value = 0;
    std::vector<double> sign(sectors.size());
    for (size_t i = 0; i < sectors.size(); ++i) {
        value += std::abs(sectors[i]);
        sign[i] = sectors[i] > 1e-14 ? 1.0 : (sectors[i] < -1e-14 ? -1.0 : 0.0);
    }
    value *= scale;

    std::vector<double> grad(2 * m, 0.0);
    for (int j = 0; j < m; ++j) {
        for (int setting = 0; setting < 2; ++setting) {
            std::vector<double> a = t.values;
            for (int i = 0; i < m; ++i) {
                if (i != j) {
                    mode_transform(a, m - 1 - i, settings_matrix(s.angles[i]));
                    continue;
                }
                // Only the row belonging to this setting choice varies.
                std::array<std::array<double, 2>, 2> d{{{0, 0}, {0, 0}}};
                d[setting][0] = -std::sin(s.angles[j][setting]);
                d[setting][1] = std::cos(s.angles[j][setting]);
                mode_transform(a, m - 1 - i, d);
            }
            walsh_hadamard(a);
            double acc = 0;
            for (size_t i = 0; i < a.size(); ++i) acc += sign[i] * a[i];
            grad[2 * j + setting] = acc * scale;
        }
    }
    return {value, std::move(grad)};
}

std::vector<double> bell_linear_coefficients(const CorrelationTensor& t,
                                             const SettingsAssignment& s) {
    check_settings(t, s);
    const int m = t.m();
    const double scale = 1.0 / static_cast<double>(size_t{1} << m);

    std::vector<double> sectors = setting_correlations(t, s);
    walsh_hadamard(sectors);
    std::vector<double> weights(sectors.size());
    for (size_t i = 0; i < sectors.size(); ++i)
        weights[i] = sectors[i] > 1e-14 ? 1.0 : (sectors[i] < -1e-14 ? -1.0 : 0.0);

    // B = scale * sum_s sign_s * sum_k (-1)^{s.k} E(k): fold the signs back to
    // per-setting weights, then pull the settings matrices through transposed.
    walsh_hadamard(weights);
    for (double& w : weights) w *= scale;
    for (int j = 0; j < m; ++j) {
        const auto c = settings_matrix(s.angles[j]);
        const std::array<std::array<double, 2>, 2> ct{{{c[0][0], c[1][0]}, {c[0][1], c[1][1]}}};
        mode_transform(weights, m - 1 - j, ct);
    }
    return weights;
}

StateVector apply_plane_combination(const StateVector& psi, int n, const std::vector<int>& qubits,
                                    const MeasurementPlane& plane,
                                    const std::vector<double>& coef) {
    check_qubit_list(qubits, n);
    if (plane.per_qubit.size() != static_cast<size_t>(n))
        throw domain_error("plane must define axes for every qubit");
    const int m = static_cast<int>(qubits.size());
    if (coef.size() != (size_t{1} << m)) throw domain_error("coefficient count mismatch");
    StateVector out(psi.size(), Complex(0, 0));
    for (uint32_t dir = 0; dir < coef.size(); ++dir) {
        if (coef[dir] == 0.0) continue;
        StateVector work = psi;
        for (int j = 0; j < m; ++j) {
            const QubitAxes& ax = plane.per_qubit[qubits[j]];
            const bool second = (dir >> (m - 1 - j)) & 1u;
            apply_axis(work, qubits[j], second ? ax.axis2 : ax.axis1);
        }
        for (size_t i = 0; i < out.size(); ++i) out[i] += coef[dir] * work[i];
    }
    return out;
}

namespace {

// Backtracking gradient ascent from one seed; mutates angles toward a local
// maximum and returns the reached value.
double ascend(const CorrelationTensor& t, std::vector<double>& flat, int max_iters) {
    const int m = t.m();
    auto wrap = [&](const std::vector<double>& f) {
        SettingsAssignment s;
        s.angles.resize(m);
        for (int j = 0; j < m; ++j) s.angles[j] = {f[2 * j], f[2 * j + 1]};
        return s;
    };
    double step = 0.25;
    auto [value, grad] = wwzb_value_and_gradient(t, wrap(flat));
    for (int iter = 0; iter < max_iters; ++iter) {
        double gnorm = 0;
        for (double g : grad) gnorm += g * g;
        gnorm = std::sqrt(gnorm);
        if (gnorm < 1e-12) break;
        bool accepted = false;
        while (step >= 1e-13) {
            std::vector<double> trial = flat;
            for (size_t i = 0; i < trial.size(); ++i) trial[i] += step * grad[i] / gnorm;
            const double tv = wwzb_value(t, wrap(trial));
            if (tv > value + 1e-15) {
                flat = std::move(trial);
                value = tv;
                accepted = true;
                step = std::min(step * 2.0, 1.0);
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break;
        grad = wwzb_value_and_gradient(t, wrap(flat)).second;
    }
    return value;
}

// Exact two-qubit optimum from the singular value decomposition of the 2x2
// in-plane block; reaches the Frobenius norm of the block.
std::vector<double> chsh_seed(const CorrelationTensor& t) {
    const double t00 = t.values[0], t01 = t.values[1], t10 = t.values[2], t11 = t.values[3];
    // Right singular directions of T: eigenvectors of T^T T.
    const double m00 = t00 * t00 + t10 * t10;
    const double m11 = t01 * t01 + t11 * t11;
    const double m01 = t00 * t01 + t10 * t11;
    const double beta = 0.5 * std::atan2(2 * m01, m00 - m11);
    const std::array<double, 2> v1{std::cos(beta), std::sin(beta)};
    const std::array<double, 2> v2{-std::sin(beta), std::cos(beta)};
    auto apply_T = [&](const std::array<double, 2>& v) {
        return std::array<double, 2>{t00 * v[0] + t01 * v[1], t10 * v[0] + t11 * v[1]};
    };
    const auto u1 = apply_T(v1);
    const auto u2 = apply_T(v2);
    const double s1 = std::hypot(u1[0], u1[1]);
    const double s2 = std::hypot(u2[0], u2[1]);
    const double c = std::hypot(s1, s2);
    if (c < 1e-12) return {0, kPi / 2, 0, kPi / 2};
    const std::array<double, 2> n1 = s1 > 1e-12 ? std::array<double, 2>{u1[0] / s1, u1[1] / s1}
                                                : std::array<double, 2>{-u2[1] / s2, u2[0] / s2};
    const std::array<double, 2> n2 = s2 > 1e-12 ? std::array<double, 2>{u2[0] / s2, u2[1] / s2}
                                                : std::array<double, 2>{-n1[1], n1[0]};
    const std::array<double, 2> a{(s1 * n1[0] + s2 * n2[0]) / c, (s1 * n1[1] + s2 * n2[1]) / c};
    const std::array<double, 2> ap{(s1 * n1[0] - s2 * n2[0]) / c, (s1 * n1[1] - s2 * n2[1]) / c};
    return {std::atan2(a[1], a[0]), std::atan2(ap[1], ap[0]),
            std::atan2(v1[1], v1[0]), std::atan2(v2[1], v2[0])};
}

}  // namespace

BellOptResult max_bell_settings(const CorrelationTensor& t, const BellOptConfig& cfg) {
    const int m = t.m();
    if (m < 1 || m > kMaxSimQubits) throw size_error("tensor order out of range");
    if (t.values.size() != (size_t{1} << m)) throw domain_error("tensor component count mismatch");

    std::vector<std::vector<double>> seeds;
    std::vector<double> graded(2 * m);
    for (int j = 0; j < m; ++j) {
        graded[2 * j] = 0;
        graded[2 * j + 1] = kPi / 2;
    }
    seeds.push_back(graded);
    // Offsetting the first party by pi/4 is exact for GHZ-type tensors of even
    // order, where the aligned family is not.
    std::vector<double> offset = graded;
    offset[0] = kPi / 4;
    offset[1] = 3 * kPi / 4;
    seeds.push_back(offset);
    if (m == 2) seeds.push_back(chsh_seed(t));

    std::mt19937_64 rng(cfg.seed);
    for (int r = 0; r < cfg.restarts; ++r) {
        std::vector<double> s(2 * m);
        for (double& a : s) a = (2 * uniform01(rng) - 1) * kPi;
        seeds.push_back(std::move(s));
    }

    BellOptResult best;
    best.value = -1;
    for (auto& seed : seeds) {
        const double value = ascend(t, seed, cfg.max_iters);
        if (value > best.value) {
            best.value = value;
            best.settings.angles.resize(m);
            for (int j = 0; j < m; ++j) best.settings.angles[j] = {seed[2 * j], seed[2 * j + 1]};
        }
    }
    const double cap = std::sqrt(t.norm_sq());
    if (best.value > cap + 1e-6)
        throw internal_error("Bell value exceeded its tensor-norm bound");
    return best;
}

BellOptResult max_bell_settings(const QuantumEnsemble& e, const std::vector<int>& qubits,
                                const MeasurementPlane& plane, const BellOptConfig& cfg) {
    return max_bell_settings(correlation_tensor(e, qubits, plane), cfg);
}

QuantumEnsemble ghz_state(int n) {
    if (n < 1 || n > kMaxSimQubits) throw size_error("qubit count must be in [1, 12]");
    StateVector psi(size_t{1} << n, Complex(0, 0));
    const double r = 1.0 / std::sqrt(2.0);
    psi.front() = r;
    psi.back() = r;
    return QuantumEnsemble::pure(n, std::move(psi));
}

QuantumEnsemble x_product_state(int n) {
    if (n < 1 || n > kMaxSimQubits) throw size_error("qubit count must be in [1, 12]");
    const double amp = std::pow(2.0, -0.5 * n);
    return QuantumEnsemble::pure(n, StateVector(size_t{1} << n, Complex(amp, 0)));
}

QuantumEnsemble random_pure_state(int n, std::mt19937_64& rng) {
    if (n < 1 || n > kMaxSimQubits) throw size_error("qubit count must be in [1, 12]");
    StateVector psi(size_t{1} << n);
    double norm = 0;
    for (Complex& amp : psi) {
        // Box-Muller from the portable uniform, for reproducible streams.
        const double u1 = std::max(uniform01(rng), 1e-300);
        const double u2 = uniform01(rng);
        const double r = std::sqrt(-2.0 * std::log(u1));
        amp = Complex(r * std::cos(2 * kPi * u2), r * std::sin(2 * kPi * u2));
        norm += std::norm(amp);
    }
    norm = std::sqrt(norm);
    for (Complex& amp : psi) amp /= norm;
    return QuantumEnsemble::pure(n, std::move(psi));
}

namespace {

// Expands one qubit of every component to p|0><0| + (1-p) I/2 (branches keep
// the qubit or flip it); drops zero-probability branches.
void mix_leaf(std::vector<WeightedState>& comps, int q, double p) {
    if (p < -1e-12 || p > 1 + 1e-12) throw domain_error("noise parameter must lie in [0, 1]");
    p = std::clamp(p, 0.0, 1.0);
    std::vector<WeightedState> out;
    out.reserve(2 * comps.size());
    const uint64_t bit = uint64_t{1} << q;
    for (auto& c : comps) {
        const double keep = c.p * (1 + p) / 2;
        const double flip = c.p * (1 - p) / 2;
        if (flip > 0) {
            StateVector flipped(c.psi.size());
            for (uint64_t b = 0; b < c.psi.size(); ++b) flipped[b ^ bit] = c.psi[b];
            out.push_back({flip, std::move(flipped)});
        }
        if (keep > 0) out.push_back({keep, std::move(c.psi)});
    }
    comps = std::move(out);
    if (comps.size() > 1024) throw size_error("ensemble grew past 1024 components");
}

}  // namespace

QuantumEnsemble star_state(int n_leaves, double t, const std::map<int, double>& leaf_noise) {
    if (n_leaves < 1 || n_leaves + 1 > kMaxSimQubits) throw size_error("leaf count out of range");
    if (t < -1e-12 || t > kPi / 4 + 1e-12) throw domain_error("angle must lie in [0, pi/4]");
    const int n = n_leaves + 1;
    const double s = std::sqrt(2.0) * std::sin(std::clamp(t, 0.0, kPi / 4));
    const double alpha = std::sqrt((1 + s) / 2);
    const double beta = std::sqrt(std::max(0.0, (1 - s) / 2));
    StateVector psi(size_t{1} << n, Complex(0, 0));
    psi[0] = alpha;
    psi[3] = beta;  // hub and first leaf flipped together
    std::vector<WeightedState> comps{{1.0, std::move(psi)}};
    for (const auto& [q, p] : leaf_noise) {
        if (q < 2 || q > n_leaves) throw domain_error("noise only applies to product leaves");
        mix_leaf(comps, q, p);
    }
    return QuantumEnsemble(n, std::move(comps));
}

namespace {

constexpr double kRegionTol = 1e-9;

double clamp01_checked(double v, const char* what) {
    if (v < -1e-9 || v > 1 + 1e-9) throw domain_error(std::string(what) + " out of range");
    return std::clamp(v, 0.0, 1.0);
}

void check_chain_feasible(const ChainTargets& t) {
    const double root2 = std::sqrt(2.0);
    for (double b : {t.b12, t.b13, t.b34})
        if (b < -kRegionTol || b > root2 + kRegionTol)
            throw domain_error("pair targets must lie in [0, sqrt(2)]");
    if (t.b12 * t.b12 + t.b13 * t.b13 > 2 + 1e-6)
        throw domain_error("targets violate the shared-vertex trade-off at the first hub");
    if (t.b13 * t.b13 + t.b34 * t.b34 > 2 + 1e-6)
        throw domain_error("targets violate the shared-vertex trade-off at the second hub");
}

}  // namespace

std::array<double, 4> chain_amplitudes(double b12, double b13, double b34) {
    check_chain_feasible({b12, b13, b34});
    b13 = clamp01_checked(b13, "b13");
    if (1 - b13 * b13 < 1e-12) {
        if (std::abs(b12 - 1) > 1e-6 || std::abs(b34 - 1) > 1e-6)
            throw domain_error("b13 = 1 forces both outer pairs to 1");
        return {1, 0, 0, 0};
    }
    const double denom = 1 - b13 * b13;
    const double u = clamp01_checked((b12 * b12 - 1) / denom, "first pair target");
    const double v = clamp01_checked((b34 * b34 - 1) / denom, "second pair target");
    const double theta = 0.5 * (std::acos(std::sqrt(u)) + std::asin(std::sqrt(v)));
    const double phi = 0.5 * (std::asin(std::sqrt(v)) - std::acos(std::sqrt(u)));
    const double big = std::sqrt((1 + b13) / 2);
    const double small = std::sqrt((1 - b13) / 2);
    return {big * std::cos(phi), big * std::sin(phi), small * std::cos(theta),
            small * std::sin(theta)};
}

ChainRegion classify_chain_region(const ChainTargets& t) {
    check_chain_feasible(t);
    const double edge = 1 + 1e-12;
    if (t.b13 > edge) return ChainRegion::P3;
    if (t.b12 > edge && t.b34 > edge) return ChainRegion::P1;
    if (t.b12 > edge) return ChainRegion::P2;
    if (t.b34 > edge) return ChainRegion::P4;
    return ChainRegion::P5;
}

namespace {

QuantumEnsemble chain_state_p1(const ChainTargets& t) {
    const auto a = chain_amplitudes(t.b12, t.b13, t.b34);
    StateVector psi(16, Complex(0, 0));
    psi[0] = a[0];    // all four aligned low
    psi[15] = a[1];   // all four aligned high
    psi[3] = a[2];    // first pair flipped
    psi[12] = a[3];   // second pair flipped
    return QuantumEnsemble::pure(4, std::move(psi));
}

QuantumEnsemble chain_state_p2(const ChainTargets& t) {
    const double p = clamp01_checked(t.b34, "b34");
    double delta = 0;
    if (1 - t.b13 * t.b13 < 1e-12) {
        if (std::abs(t.b12 - 1) > 1e-6) throw domain_error("b13 = 1 forces b12 = 1");
    } else {
        const double u = clamp01_checked((t.b12 * t.b12 - 1) / (1 - t.b13 * t.b13), "b12 target");
        delta = std::acos(std::sqrt(u));
    }
    const double big = std::sqrt((1 + std::clamp(t.b13, 0.0, 1.0)) / 2);
    const double small = std::sqrt((1 - std::clamp(t.b13, 0.0, 1.0)) / 2);
    const double w1 = std::cos(delta / 2) * std::cos(delta / 2);
    const double w2 = 1 - w1;

    // Branch a: (big|00> + small|11>) on the entangled pair, third qubit low.
    // Branch b: (small|00> - big|11>), third qubit high. The fourth qubit
    // follows the third with bias p, giving the pair correlation b34 exactly.
    std::vector<WeightedState> comps;
    auto add = [&](double w, double amp0, double amp3, bool third_high, bool fourth_high) {
        if (w <= 0) return;
        StateVector psi(16, Complex(0, 0));
        const uint64_t extra = (third_high ? 4u : 0u) | (fourth_high ? 8u : 0u);
        psi[0 | extra] = amp0;
        psi[3 | extra] = amp3;
        comps.push_back({w, std::move(psi)});
    };
    add(w1 * (1 + p) / 2, big, small, false, false);
    add(w1 * (1 - p) / 2, big, small, false, true);
    add(w2 * (1 + p) / 2, small, -big, true, true);
    add(w2 * (1 - p) / 2, small, -big, true, false);
    return QuantumEnsemble(4, std::move(comps));
}

QuantumEnsemble chain_state_p3(const ChainTargets& t) {
    const double root2 = std::sqrt(2.0);
    const double ct = std::clamp(t.b13 / root2, 0.0, 1.0);
    const double ang = std::acos(ct);
    const double spread = 2 - t.b13 * t.b13;  // = 2 sin^2(ang)
    double p2 = 1, p4 = 1;
    if (spread < 1e-12) {
        if (t.b12 > 1e-6 || t.b34 > 1e-6)
            throw domain_error("b13 = sqrt(2) forces both outer pairs to 0");
    } else {
        p2 = clamp01_checked(t.b12 / std::sqrt(spread), "b12 target");
        p4 = clamp01_checked(t.b34 / std::sqrt(spread), "b34 target");
    }
    const double s = root2 * std::sin(ang);
    const double alpha = std::sqrt((1 + s) / 2);
    const double beta = std::sqrt(std::max(0.0, (1 - s) / 2));
    StateVector psi(16, Complex(0, 0));
    psi[0] = alpha;
    psi[5] = beta;  // both hubs flipped together
    std::vector<WeightedState> comps{{1.0, std::move(psi)}};
    mix_leaf(comps, 1, p2);
    mix_leaf(comps, 3, p4);
    return QuantumEnsemble(4, std::move(comps));
}

QuantumEnsemble chain_state_p5(const ChainTargets& t) {
    const double b12 = clamp01_checked(t.b12, "b12");
    const double b13 = clamp01_checked(t.b13, "b13");
    const double b34 = clamp01_checked(t.b34, "b34");
    // Basis-state mixture with the Markov structure 2 <- 1 -> 3 -> 4: each
    // link aligns with probability (1+b)/2, so each pair correlation is b.
    std::vector<WeightedState> comps;
    for (int z1 = 0; z1 < 2; ++z1)
        for (int s2 = 0; s2 < 2; ++s2)
            for (int s3 = 0; s3 < 2; ++s3)
                for (int s4 = 0; s4 < 2; ++s4) {
                    const double prob = 0.5 * (s2 ? (1 - b12) : (1 + b12)) / 2 *
                                        (s3 ? (1 - b13) : (1 + b13)) / 2 *
                                        (s4 ? (1 - b34) : (1 + b34)) / 2;
                    if (prob <= 0) continue;
                    const int bit1 = z1;
                    const int bit2 = z1 ^ s2;
                    const int bit3 = z1 ^ s3;
                    const int bit4 = bit3 ^ s4;
                    StateVector psi(16, Complex(0, 0));
                    psi[bit1 | (bit2 << 1) | (bit3 << 2) | (bit4 << 3)] = 1.0;
                    comps.push_back({prob, std::move(psi)});
                }
    return QuantumEnsemble(4, std::move(comps));
}

QuantumEnsemble swap_outer_pairs(const QuantumEnsemble& e) {
    // Relabels qubits 0<->2 and 1<->3.
    std::vector<WeightedState> comps;
    comps.reserve(e.components.size());
    for (const auto& c : e.components) {
        StateVector psi(c.psi.size());
        for (uint64_t b = 0; b < c.psi.size(); ++b) {
            const uint64_t swapped = ((b & 1) << 2) | ((b & 2) << 2) | ((b >> 2) & 3);
            psi[swapped] = c.psi[b];
        }
        comps.push_back({c.p, std::move(psi)});
    }
    return QuantumEnsemble(e.n, std::move(comps));
}

}  // namespace

QuantumEnsemble chain_state(ChainRegion region, const ChainTargets& targets) {
    check_chain_feasible(targets);
    const double lo = 1 - 1e-9;
    switch (region) {
        case ChainRegion::P1:
            if (targets.b12 < lo || targets.b34 < lo)
                throw domain_error("region P1 needs both outer pairs above 1");
            return chain_state_p1(targets);
        case ChainRegion::P2:
            if (targets.b12 < lo || targets.b34 > 1 + kRegionTol || targets.b13 > 1 + kRegionTol)
                throw domain_error("region P2 needs only the first pair above 1");
            return chain_state_p2(targets);
        case ChainRegion::P3:
            if (targets.b13 < lo) throw domain_error("region P3 needs the middle pair above 1");
            return chain_state_p3(targets);
        case ChainRegion::P4:
            if (targets.b34 < lo || targets.b12 > 1 + kRegionTol || targets.b13 > 1 + kRegionTol)
                throw domain_error("region P4 needs only the last pair above 1");
            return swap_outer_pairs(
                chain_state_p2(ChainTargets{targets.b34, targets.b13, targets.b12}));
        case ChainRegion::P5:
            return chain_state_p5(targets);
    }
    throw internal_error("unknown chain region");
}

QuantumEnsemble tree_state(const Hypergraph& network, const std::vector<double>& alphas) {
    if (network.n > kMaxSimQubits) throw size_error("network too large to simulate");
    if (alphas.size() != network.edges.size())
        throw domain_error("one amplitude per hyperedge required");
    double total = 0;
    for (double a : alphas) total += a * a;
    if (std::abs(total - 1.0) > 1e-9) throw domain_error("edge amplitudes must be normalized");
    const uint64_t full = (uint64_t{1} << network.n) - 1;
    StateVector psi(size_t{1} << network.n, Complex(0, 0));
    const double r = 1.0 / std::sqrt(2.0);
    psi[full] = r;
    for (size_t e = 0; e < network.edges.size(); ++e) {
        uint64_t mask = 0;
        for (int v : network.edges[e]) mask |= uint64_t{1} << v;
        psi[full ^ mask] += r * alphas[e];
    }
    return QuantumEnsemble::pure(network.n, std::move(psi));
}

}  // namespace bellmono
