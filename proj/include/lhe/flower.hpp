#pragma once

#include "lhe/graph.hpp"

namespace lhe {

/// Flower graph layout: n center vertices forming a clique (colored +1),
/// each attached to its own disjoint m-clique petal (colored -1).
///
/// Canonical id layout: centers first (0..n-1), then petals grouped by owner,
/// so petal j of center i is vertex n + i*m + j. "The first k centers" always
/// means ids 0..k-1.
struct FlowerSpec {
    unsigned n = 1;  // center clique size
    unsigned m = 1;  // petal clique size

    /// The structural lemma below is only claimed for m >= n.
    bool lemma_applicable() const { return m >= n; }

    VertexId center(unsigned i) const { return i; }
    VertexId petal(unsigned i, unsigned j) const { return n + i * m + j; }
    std::size_t vertex_count() const {
        return static_cast<std::size_t>(n) * (m + 1);
    }
};

/// Throws std::invalid_argument when n == 0 or m == 0.
BicoloredGraph build_flower(const FlowerSpec& spec);

/// Appends a flower to an existing graph at a vertex-id offset; `graph` must
/// already contain the vertices. Used by builders that embed flowers.
void add_flower_edges(BicoloredGraph& graph, VertexId base,
                      const FlowerSpec& spec);
void paint_flower_colors(BicoloredGraph& graph, VertexId base,
                         const FlowerSpec& spec);

/// Verdicts for the five structural properties of the flower after applying
/// the transformation to the first k centers in ascending order:
///   1. centers 1..k have flipped color (now -1);
///   2. each center i < k is adjacent to all of petal(i+1);
///   3. the centers 1..k induce the path P_k;
///   4. no center i < k has an edge to any center > k;
///   5. the centers k..n induce the clique K_{n-k+1}.
/// (1-based center numbering as in the layout note above.)
struct FlowerLemmaReport {
    bool prefix_flipped = false;
    bool petal_links = false;
    bool prefix_path = false;
    bool no_forward_edges = false;
    bool suffix_clique = false;

    bool all() const {
        return prefix_flipped && petal_links && prefix_path &&
               no_forward_edges && suffix_clique;
    }
};

/// Evaluates the five properties on `graph`, which is expected to be the
/// result of applying the first k centers of build_flower(spec).
/// Throws std::invalid_argument when k is 0 or exceeds n.
FlowerLemmaReport check_flower_lemma(const BicoloredGraph& graph,
                                     const FlowerSpec& spec, unsigned k);

}  // namespace lhe
