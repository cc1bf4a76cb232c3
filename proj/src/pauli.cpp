// SPDX-License-Identifier: Apache-2.0
#include "bellmono/pauli.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <sstream>

#include "bellmono/errors.hpp"

namespace bellmono {

namespace {

constexpr int kMaxQubits = 63;

void check_n(int n) {
    if (n < 1 || n > kMaxQubits) throw domain_error("qubit count out of range");
}

int popcount(uint64_t v) { return std::popcount(v); }

}  // namespace

char PauliString::letter(int q) const {
    const bool x = (x_mask >> q) & 1;
    const bool z = (z_mask >> q) & 1;
    if (x && z) return 'Y';
    if (x) return 'X';
    if (z) return 'Z';
    return 'I';
}

int PauliString::weight() const { return popcount(support()); }

bool PauliString::is_hermitian() const {
    // dagger conjugates i^phase and flips every Y site (XZ -> ZX = -XZ), so
    // Hermitian iff phase parity equals the Y-count parity.
    return (phase & 1) == (popcount(x_mask & z_mask) & 1);
}

std::string PauliString::to_string() const {
    std::ostringstream os;
    // Each Y letter below carries its own factor of i; print only the leftover.
    switch ((phase - popcount(x_mask & z_mask)) & 3) {
        case 1: os << "i "; break;
        case 2: os << "- "; break;
        case 3: os << "-i "; break;
        default: break;
    }
    bool any = false;
    for (int q = 0; q < n; ++q) {
        const char c = letter(q);
        if (c == 'I') continue;
        if (any) os << ' ';
        os << c << (q + 1);
        any = true;
    }
    if (!any) os << 'I';
    return os.str();
}

PauliString pauli_from_letters(const std::string& letters) {
    const int n = static_cast<int>(letters.size());
    check_n(n);
    PauliString p;
    p.n = n;
    for (int q = 0; q < n; ++q) {
        switch (letters[q]) {
            case 'I': break;
            case 'X': p.x_mask |= uint64_t(1) << q; break;
            case 'Z': p.z_mask |= uint64_t(1) << q; break;
            case 'Y':
                p.x_mask |= uint64_t(1) << q;
                p.z_mask |= uint64_t(1) << q;
                p.phase = (p.phase + 1) & 3;
                break;
            default: throw parse_error(std::string("unknown Pauli letter '") + letters[q] + "'");
        }
    }
    return p;
}

PauliString pauli_parse(const std::string& text, int n) {
    check_n(n);
    PauliString p;
    p.n = n;
    std::istringstream is(text);
    std::string token;
    bool any = false;
    while (is >> token) {
        any = true;
        if (token == "I") continue;
        if (token.size() < 2) throw parse_error("bad Pauli token '" + token + "'");
        const char letter = token[0];
        int idx = 0;
        try {
            idx = std::stoi(token.substr(1));
        } catch (const std::exception&) {
            throw parse_error("bad qubit index in token '" + token + "'");
        }
        if (idx < 1 || idx > n) throw parse_error("qubit index out of range in '" + token + "'");
        const int q = idx - 1;
        if ((p.support() >> q) & 1) throw parse_error("qubit repeated in Pauli text");
        switch (letter) {
            case 'X': p.x_mask |= uint64_t(1) << q; break;
            case 'Z': p.z_mask |= uint64_t(1) << q; break;
            case 'Y':
                p.x_mask |= uint64_t(1) << q;
                p.z_mask |= uint64_t(1) << q;
                p.phase = (p.phase + 1) & 3;
                break;
            default: throw parse_error(std::string("unknown Pauli letter '") + letter + "'");
        }
    }
    if (!any) throw parse_error("empty Pauli text");
    return p;
}

bool commutes(const PauliString& a, const PauliString& b) {
    if (a.n != b.n) throw domain_error("Pauli qubit count mismatch");
    const int overlap = popcount(a.x_mask & b.z_mask) + popcount(a.z_mask & b.x_mask);
    return (overlap & 1) == 0;
}

PauliString product(const PauliString& a, const PauliString& b) {
    if (a.n != b.n) throw domain_error("Pauli qubit count mismatch");
    PauliString p;
    p.n = a.n;
    p.x_mask = a.x_mask ^ b.x_mask;
    p.z_mask = a.z_mask ^ b.z_mask;
    // Moving b's X block through a's Z block picks up (-1) per crossing.
    p.phase = (a.phase + b.phase + 2 * popcount(a.z_mask & b.x_mask)) & 3;
    return p;
}

PauliString shift_qubits(const PauliString& p, int new_n, int offset) {
    check_n(new_n);
    if (offset < 0 || p.n + offset > new_n) throw domain_error("shift out of range");
    PauliString out;
    out.n = new_n;
    out.x_mask = p.x_mask << offset;
    out.z_mask = p.z_mask << offset;
    out.phase = p.phase;
    return out;
}

std::vector<PauliString> plane_observables(const std::vector<int>& qubits, int n, char axis1,
                                           char axis2) {
    check_n(n);
    if (qubits.empty()) throw domain_error("empty qubit list");
    std::vector<int> q = qubits;
    std::sort(q.begin(), q.end());
    if (std::adjacent_find(q.begin(), q.end()) != q.end())
        throw domain_error("repeated qubit in observable list");
    if (q.front() < 0 || q.back() >= n) throw domain_error("qubit out of range");
    const int m = static_cast<int>(q.size());
    if (m > 20) throw size_error("too many qubits for a plane observable set");
    std::vector<PauliString> out;
    out.reserve(size_t(1) << m);
    for (uint32_t bits = 0; bits < (uint32_t(1) << m); ++bits) {
        std::string letters(n, 'I');
        for (int j = 0; j < m; ++j) {
            const bool second = (bits >> (m - 1 - j)) & 1;  // first qubit most significant
            letters[q[j]] = second ? axis2 : axis1;
        }
        out.push_back(pauli_from_letters(letters));
    }
    return out;
}

std::vector<PauliString> PartitionCertificate::all_observables() const {
    std::vector<PauliString> out;
    for (const auto& g : groups) out.insert(out.end(), g.begin(), g.end());
    return out;
}

std::string VerificationReport::to_string() const {
    if (pass) return "pass";
    std::ostringstream os;
    os << "fail:";
    for (const auto& f : failures) os << "\n  " << f;
    return os.str();
}

VerificationReport verify_certificate(const PartitionCertificate& cert,
                                      const std::vector<PauliString>& required_cover) {
    VerificationReport report;
    using Mask = std::pair<uint64_t, uint64_t>;
    std::map<Mask, std::string> seen;

    for (size_t gi = 0; gi < cert.groups.size(); ++gi) {
        const auto& group = cert.groups[gi];
        if (group.empty()) {
            report.failures.push_back("group " + std::to_string(gi) + " is empty");
            continue;
        }
        for (size_t i = 0; i < group.size(); ++i) {
            const auto& a = group[i];
            if (a.n != cert.n) {
                report.failures.push_back("group " + std::to_string(gi) + " string " +
                                          a.to_string() + " has wrong qubit count");
                continue;
            }
            if (!a.is_hermitian())
                report.failures.push_back("non-Hermitian observable " + a.to_string());
            const Mask mask{a.x_mask, a.z_mask};
            const auto [it, fresh] = seen.emplace(mask, a.to_string());
            if (!fresh)
                report.failures.push_back("duplicate observable " + a.to_string());
            for (size_t j = i + 1; j < group.size(); ++j) {
                if (commutes(a, group[j]))
                    report.failures.push_back("commuting pair in group " + std::to_string(gi) +
                                              ": " + a.to_string() + " , " +
                                              group[j].to_string());
            }
        }
    }

    std::map<Mask, std::string> cover;
    for (const auto& o : required_cover) cover.emplace(Mask{o.x_mask, o.z_mask}, o.to_string());
    for (const auto& [mask, name] : cover)
        if (!seen.count(mask)) report.failures.push_back("cover observable missing: " + name);
    for (const auto& [mask, name] : seen)
        if (!cover.count(mask)) report.failures.push_back("observable outside cover: " + name);

    report.pass = report.failures.empty();
    return report;
}

namespace {

struct PartitionSearch {
    const std::vector<PauliString>& obs;
    int max_groups;
    uint64_t budget;
    uint64_t nodes = 0;
    bool out_of_budget = false;
    std::vector<std::vector<int>> groups;  // indices into obs
    const int family_cap;                  // pairwise anti-commuting family size <= 2n+1

    PartitionSearch(const std::vector<PauliString>& o, int mg, uint64_t b)
        : obs(o), max_groups(mg), budget(b), family_cap(2 * (o.empty() ? 0 : o.front().n) + 1) {}

    bool place(size_t next) {
        if (next == obs.size()) return true;
        if (++nodes > budget) {
            out_of_budget = true;
            return false;
        }
        const auto& o = obs[next];
        // Index loop: recursion may grow the group vector and reseat it.
        const size_t group_count = groups.size();
        for (size_t gi = 0; gi < group_count; ++gi) {
            if (static_cast<int>(groups[gi].size()) >= family_cap) continue;
            bool ok = true;
            for (int idx : groups[gi]) {
                if (commutes(obs[idx], o)) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            groups[gi].push_back(static_cast<int>(next));
            if (place(next + 1)) return true;
            groups[gi].pop_back();
            if (out_of_budget) return false;
        }
        if (static_cast<int>(groups.size()) < max_groups) {
            groups.push_back({static_cast<int>(next)});
            if (place(next + 1)) return true;
            groups.pop_back();
        }
        return false;
    }
};

}  // namespace

PartitionSearchResult search_partition(const std::vector<PauliString>& observables, int max_groups,
                                       uint64_t node_budget) {
    if (observables.empty()) throw domain_error("no observables to partition");
    if (observables.size() > 64) throw size_error("partition search caps at 64 observables");
    if (max_groups < 1) throw domain_error("need at least one group");
    const int n = observables.front().n;
    for (const auto& o : observables) {
        if (o.n != n) throw domain_error("observables live on different registers");
        if (!o.is_hermitian()) throw domain_error("observable not Hermitian: " + o.to_string());
    }
    PartitionSearch search(observables, max_groups, node_budget);
    PartitionSearchResult result;
    const bool ok = search.place(0);
    result.nodes = search.nodes;
    result.exhausted = !search.out_of_budget;
    if (ok) {
        PartitionCertificate cert;
        cert.n = n;
        for (const auto& group : search.groups) {
            std::vector<PauliString> strings;
            strings.reserve(group.size());
            for (int idx : group) strings.push_back(observables[idx]);
            cert.groups.push_back(std::move(strings));
        }
        result.certificate = std::move(cert);
    }
    return result;
}

PartitionCertificate lift_certificate(const PartitionCertificate& cert_a,
                                      const PartitionCertificate& cert_b, int pivot) {
    if (cert_a.n != cert_b.n) throw domain_error("certificates live on different registers");
    if (cert_a.group_count() != cert_b.group_count())
        throw domain_error("certificates must have equal group counts");
    const int n = cert_a.n;
    if (pivot < 0 || pivot >= n) throw domain_error("pivot out of range");

    uint64_t support_a = 0, support_b = 0;
    for (const auto& g : cert_a.groups)
        for (const auto& o : g) support_a |= o.support();
    for (const auto& g : cert_b.groups)
        for (const auto& o : g) support_b |= o.support();
    if (support_a & support_b) throw domain_error("certificate supports overlap");
    if (((support_a | support_b) >> pivot) & 1)
        throw domain_error("pivot lies inside a certificate support");

    PauliString xp, yp;
    xp.n = yp.n = n;
    xp.x_mask = uint64_t(1) << pivot;
    yp.x_mask = yp.z_mask = uint64_t(1) << pivot;
    yp.phase = 1;

    PartitionCertificate out;
    out.n = n;
    const int g = cert_a.group_count();
    auto adjoin = [](const PauliString& pivot_op, const std::vector<PauliString>& group) {
        std::vector<PauliString> lifted;
        lifted.reserve(group.size());
        for (const auto& o : group) lifted.push_back(product(pivot_op, o));
        return lifted;
    };
    for (int i = 0; i < g; ++i) {
        auto group = adjoin(xp, cert_a.groups[i]);
        auto tail = adjoin(yp, cert_b.groups[i]);
        group.insert(group.end(), tail.begin(), tail.end());
        out.groups.push_back(std::move(group));
    }
    for (int i = 0; i < g; ++i) {
        auto group = adjoin(yp, cert_a.groups[i]);
        auto tail = adjoin(xp, cert_b.groups[i]);
        group.insert(group.end(), tail.begin(), tail.end());
        out.groups.push_back(std::move(group));
    }
    return out;
}

}  // namespace bellmono
