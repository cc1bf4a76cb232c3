// SPDX-License-Identifier: Apache-2.0
#include "bellmono/hypergraph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "bellmono/errors.hpp"

namespace bellmono {

namespace {

void normalize_edges(std::vector<std::vector<int>>& edges) {
    for (auto& e : edges) std::sort(e.begin(), e.end());
    std::sort(edges.begin(), edges.end());
}

long long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    long long r = 1;
    for (int i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r < 0 || r > (1LL << 62)) return 1LL << 62;  // saturate, caller only compares
    }
    return r;
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

Hypergraph::Hypergraph(int n_, std::vector<std::vector<int>> edges_) : n(n_), edges(std::move(edges_)) {
    if (n < 1) throw domain_error("vertex count must be positive");
    for (auto& e : edges) {
        if (e.size() < 2) throw domain_error("hyperedge arity must be at least 2");
        std::sort(e.begin(), e.end());
        if (std::adjacent_find(e.begin(), e.end()) != e.end())
            throw domain_error("hyperedge contains a repeated vertex");
        if (e.front() < 0 || e.back() >= n) throw domain_error("hyperedge vertex out of range");
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
        throw domain_error("duplicate hyperedge");
}

int Hypergraph::uniform_arity() const {
    if (edges.empty()) return 0;
    const size_t m = edges.front().size();
    for (const auto& e : edges)
        if (e.size() != m) return 0;
    return static_cast<int>(m);
}

bool Hypergraph::covers_all_vertices() const {
    std::vector<bool> seen(n, false);
    for (const auto& e : edges)
        for (int v : e) seen[v] = true;
    return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

bool Hypergraph::is_connected() const {
    if (n == 0) return true;
    if (!covers_all_vertices()) return false;
    UnionFind uf(n);
    for (const auto& e : edges)
        for (size_t i = 1; i < e.size(); ++i) uf.unite(e[0], e[i]);
    const int root = uf.find(0);
    for (int v = 1; v < n; ++v)
        if (uf.find(v) != root) return false;
    return true;
}

Hypergraph permute(const Hypergraph& g, const std::vector<int>& perm) {
    if (static_cast<int>(perm.size()) != g.n) throw domain_error("permutation size mismatch");
    std::vector<bool> hit(g.n, false);
    for (int p : perm) {
        if (p < 0 || p >= g.n || hit[p]) throw domain_error("not a permutation");
        hit[p] = true;
    }
    std::vector<std::vector<int>> edges = g.edges;
    for (auto& e : edges)
        for (int& v : e) v = perm[v];
    normalize_edges(edges);
    Hypergraph out;
    out.n = g.n;
    out.edges = std::move(edges);
    return out;
}

Hypergraph canonical_form(const Hypergraph& g) {
    if (g.n > 10) throw size_error("canonical_form caps at 10 vertices (factorial scan)");
    std::vector<int> perm(g.n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<int>> best = g.edges;
    normalize_edges(best);
    std::vector<std::vector<int>> candidate;
    while (std::next_permutation(perm.begin(), perm.end())) {
        candidate = g.edges;
        for (auto& e : candidate)
            for (int& v : e) v = perm[v];
        normalize_edges(candidate);
        if (candidate < best) best = candidate;
    }
    Hypergraph out;
    out.n = g.n;
    out.edges = std::move(best);
    return out;
}

std::vector<Hypergraph> enumerate_hypergraphs(int n, int h, int m, const EnumerateOptions& opts) {
    if (n < 1 || n > 8) throw size_error("enumerate_hypergraphs caps at 8 vertices");
    if (m < 2 || m > n) throw domain_error("arity must satisfy 2 <= m <= n");
    if (h < 1) throw domain_error("edge count must be positive");
    const long long cells = binomial(n, m);
    if (h > cells) throw domain_error("more edges requested than distinct hyperedges exist");
    if (binomial(static_cast<int>(cells), h) > opts.budget)
        throw size_error("enumeration budget exceeded; raise the budget or shrink n/h");

    // All candidate hyperedges, lexicographic.
    std::vector<std::vector<int>> all_edges;
    std::vector<int> pick(m);
    std::iota(pick.begin(), pick.end(), 0);
    while (true) {
        all_edges.push_back(pick);
        int i = m - 1;
        while (i >= 0 && pick[i] == n - m + i) --i;
        if (i < 0) break;
        ++pick[i];
        for (int j = i + 1; j < m; ++j) pick[j] = pick[j - 1] + 1;
    }

    std::set<std::vector<std::vector<int>>> seen;
    std::vector<int> comb(h);
    std::iota(comb.begin(), comb.end(), 0);
    const int cell_count = static_cast<int>(all_edges.size());
    while (true) {
        std::vector<std::vector<int>> edges;
        edges.reserve(h);
        for (int idx : comb) edges.push_back(all_edges[idx]);
        Hypergraph g;
        g.n = n;
        g.edges = std::move(edges);  // already sorted by construction
        if (!opts.require_coverage || g.covers_all_vertices()) {
            seen.insert(canonical_form(g).edges);
        }
        int i = h - 1;
        while (i >= 0 && comb[i] == cell_count - h + i) --i;
        if (i < 0) break;
        ++comb[i];
        for (int j = i + 1; j < h; ++j) comb[j] = comb[j - 1] + 1;
    }

    std::vector<Hypergraph> out;
    out.reserve(seen.size());
    for (const auto& edges : seen) {
        Hypergraph g;
        g.n = n;
        g.edges = edges;
        out.push_back(std::move(g));
    }
    return out;
}

int LineStructure::degree(int edge_index) const {
    int d = 0;
    for (const auto& link : links)
        if (std::find(link.members.begin(), link.members.end(), edge_index) != link.members.end()) ++d;
    return d;
}

LineStructure line_graph(const Hypergraph& g) {
    for (const auto& e : g.edges)
        if (e.size() != 2) throw domain_error("line_graph requires an arity-2 network");
    LineStructure ls;
    ls.base = g;
    const int h = g.edge_count();
    for (int i = 0; i < h; ++i) {
        for (int j = i + 1; j < h; ++j) {
            std::vector<int> common;
            std::set_intersection(g.edges[i].begin(), g.edges[i].end(), g.edges[j].begin(),
                                  g.edges[j].end(), std::back_inserter(common));
            if (!common.empty()) ls.links.push_back({{i, j}, "vee", Rational(1)});
        }
    }
    return ls;
}

namespace {

struct EmbedSearch {
    const Hypergraph& g;
    const Hypergraph& pattern;
    std::vector<int> vertex_map;       // pattern vertex -> base vertex, -1 unset
    std::vector<bool> base_vertex_used;
    std::vector<bool> base_edge_used;
    std::vector<int> edge_map;
    // image edge set (sorted) -> first embedding found
    std::map<std::vector<int>, Embedding> found;

    EmbedSearch(const Hypergraph& g_, const Hypergraph& p_)
        : g(g_), pattern(p_), vertex_map(p_.n, -1), base_vertex_used(g_.n, false),
          base_edge_used(g_.edges.size(), false), edge_map(p_.edges.size(), -1) {}

    void run() { extend(0); }

    void extend(size_t depth) {
        if (depth == pattern.edges.size()) {
            std::vector<int> image = edge_map;
            std::sort(image.begin(), image.end());
            found.emplace(std::move(image), Embedding{edge_map, vertex_map});
            return;
        }
        const auto& pe = pattern.edges[depth];
        for (int b = 0; b < g.edge_count(); ++b) {
            if (base_edge_used[b]) continue;
            const auto& be = g.edges[b];
            if (be.size() != pe.size()) continue;
            try_edge(depth, b, pe, be);
        }
    }

    void try_edge(size_t depth, int b, const std::vector<int>& pe, const std::vector<int>& be) {
        // Mapped pattern vertices must land inside be; the rest get assigned
        // to the remaining base vertices in every order.
        std::vector<int> unmapped;
        std::vector<bool> target_taken(be.size(), false);
        for (int pv : pe) {
            if (vertex_map[pv] < 0) {
                unmapped.push_back(pv);
                continue;
            }
            const auto it = std::find(be.begin(), be.end(), vertex_map[pv]);
            if (it == be.end()) return;
            target_taken[it - be.begin()] = true;
        }
        std::vector<int> free_targets;
        for (size_t i = 0; i < be.size(); ++i)
            if (!target_taken[i] && !base_vertex_used[be[i]]) free_targets.push_back(be[i]);
        if (free_targets.size() < unmapped.size()) return;
        // unmapped.size() == free_targets.size() here: |pe| == |be| and every
        // taken slot in be corresponds to exactly one mapped pattern vertex,
        // unless some be vertex is used elsewhere (then no assignment exists).
        if (free_targets.size() != unmapped.size()) return;

        std::sort(free_targets.begin(), free_targets.end());
        do {
            for (size_t i = 0; i < unmapped.size(); ++i) {
                vertex_map[unmapped[i]] = free_targets[i];
                base_vertex_used[free_targets[i]] = true;
            }
            base_edge_used[b] = true;
            edge_map[depth] = b;
            extend(depth + 1);
            edge_map[depth] = -1;
            base_edge_used[b] = false;
            for (size_t i = 0; i < unmapped.size(); ++i) {
                base_vertex_used[free_targets[i]] = false;
                vertex_map[unmapped[i]] = -1;
            }
        } while (std::next_permutation(free_targets.begin(), free_targets.end()));
    }
};

}  // namespace

std::vector<Embedding> find_embeddings(const Hypergraph& g, const Hypergraph& pattern) {
    if (pattern.edges.empty()) throw domain_error("pattern has no edges");
    EmbedSearch search(g, pattern);
    search.run();
    std::vector<Embedding> out;
    out.reserve(search.found.size());
    for (auto& [image, emb] : search.found) out.push_back(std::move(emb));
    return out;
}

Hypergraph cyclic_hypergraph(int h) {
    if (h < 2) throw domain_error("cyclic network needs at least 2 edges");
    const int n = 2 * h;
    std::vector<std::vector<int>> edges;
    edges.reserve(h);
    for (int j = 0; j < h; ++j) edges.push_back({2 * j, 2 * j + 1, (2 * j + 2) % n});
    return Hypergraph(n, std::move(edges));
}

std::string export_dot(const Hypergraph& g) {
    std::ostringstream os;
    os << "graph network {\n";
    for (int v = 0; v < g.n; ++v) os << "  v" << v << " [label=\"" << v << "\"];\n";
    int box = 0;
    for (const auto& e : g.edges) {
        if (e.size() == 2) {
            os << "  v" << e[0] << " -- v" << e[1] << ";\n";
        } else {
            os << "  e" << box << " [shape=box, label=\"e" << box << "\"];\n";
            for (int v : e) os << "  e" << box << " -- v" << v << ";\n";
            ++box;
        }
    }
    os << "}\n";
    return os.str();
}

std::string export_dot(const LineStructure& ls) {
    std::ostringstream os;
    os << "graph line_structure {\n";
    for (int i = 0; i < ls.base.edge_count(); ++i) {
        os << "  b" << i << " [label=\"B(";
        const auto& e = ls.base.edges[i];
        for (size_t k = 0; k < e.size(); ++k) os << (k ? "," : "") << e[k];
        os << ")\"];\n";
    }
    int box = 0;
    for (const auto& link : ls.links) {
        if (link.members.size() == 2) {
            os << "  b" << link.members[0] << " -- b" << link.members[1] << " [label=\""
               << link.pattern << "\"];\n";
        } else {
            os << "  l" << box << " [shape=box, label=\"" << link.pattern << "\"];\n";
            for (int m : link.members) os << "  l" << box << " -- b" << m << ";\n";
            ++box;
        }
    }
    os << "}\n";
    return os.str();
}

}  // namespace bellmono
