// SPDX-License-Identifier: Apache-2.0
#ifndef BELLMONO_HYPERGRAPH_HPP
#define BELLMONO_HYPERGRAPH_HPP

#include <string>
#include <vector>

#include "bellmono/rational.hpp"

namespace bellmono {

// A qubit network: n observers, hyperedges are the subsets jointly running one
// Bell test. Stored normalized: every edge sorted ascending, the edge list
// sorted lexicographically, no duplicate edges, no self-loops.
struct Hypergraph {
    int n = 0;
    std::vector<std::vector<int>> edges;

    Hypergraph() = default;
    // Normalizes and validates; throws domain errors on bad vertices,
    // arity < 2, or duplicate edges.
    Hypergraph(int n, std::vector<std::vector<int>> edges);

    bool operator==(const Hypergraph& other) const = default;

    int edge_count() const { return static_cast<int>(edges.size()); }
    // Common arity if every edge has the same size, else 0.
    int uniform_arity() const;
    // True when all n vertices lie in one connected component (an isolated
    // vertex therefore makes the hypergraph disconnected).
    bool is_connected() const;
    // True when every vertex appears in at least one edge.
    bool covers_all_vertices() const;
};

// Relabels vertices by perm (vertex v becomes perm[v]) and renormalizes.
Hypergraph permute(const Hypergraph& g, const std::vector<int>& perm);

// Lexicographically minimal edge list over all vertex permutations.
// Isomorphism-invariant and idempotent; n <= 10 enforced (factorial scan).
Hypergraph canonical_form(const Hypergraph& g);

struct EnumerateOptions {
    bool require_coverage = true;    // drop classes with isolated vertices
    long long budget = 2'000'000;    // max candidate edge subsets examined
};

// All isomorphism classes of hypergraphs with n vertices, h edges, uniform
// arity m, as canonical representatives in deterministic (lexicographic)
// order. Throws a size error if the candidate count exceeds the budget.
std::vector<Hypergraph> enumerate_hypergraphs(int n, int h, int m,
                                              const EnumerateOptions& opts = {});

// One pairwise link of a line structure: the indices (into base.edges) of the
// edges sharing an observer, tagged with the elementary pattern it instantiates.
struct LineLink {
    std::vector<int> members;
    std::string pattern;
    Rational weight = 1;
};

struct LineStructure {
    Hypergraph base;
    std::vector<LineLink> links;

    int link_count() const { return static_cast<int>(links.size()); }
    // Number of links containing the given edge of the base network.
    int degree(int edge_index) const;
};

// Classic line graph for an arity-2 network: one "vee" link per pair of edges
// sharing a vertex, weight 1. Throws if some edge is not arity 2.
LineStructure line_graph(const Hypergraph& g);

// Pattern-to-network embedding: pattern edge i lands on base edge edge_map[i],
// pattern vertex v on base vertex vertex_map[v]. Both maps are injective.
struct Embedding {
    std::vector<int> edge_map;
    std::vector<int> vertex_map;
};

// All embeddings of pattern into g, deduplicated by image edge set (one
// representative per set, deterministic), sorted by image edge set.
std::vector<Embedding> find_embeddings(const Hypergraph& g, const Hypergraph& pattern);

// Cyclic 3-uniform network on 2h vertices: edges {2j, 2j+1, 2j+2 mod 2h}.
// Consecutive edges overlap in exactly one vertex. Requires h >= 2.
Hypergraph cyclic_hypergraph(int h);

// Deterministic Graphviz text. Arity-2 edges render as plain graph edges;
// larger hyperedges as labeled box nodes joined to their vertices.
std::string export_dot(const Hypergraph& g);
std::string export_dot(const LineStructure& ls);

}  // namespace bellmono

#endif
