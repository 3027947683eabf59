#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace lhe {

/// Vertex color: the two-valued state a vertex carries.
enum class Color : std::int8_t { minus_one = -1, plus_one = +1 };

inline int color_value(Color c) { return static_cast<int>(c); }
inline Color color_from_value(int v) {
    return v > 0 ? Color::plus_one : Color::minus_one;
}

using VertexId = std::uint32_t;

/// A schedule of vertices; the transformation is applied left to right.
using UpdateWord = std::vector<VertexId>;

/// Undirected simple graph with a {-1,+1} vertex coloring.
///
/// Vertex ids are dense in [0, vertex_count()). Adjacency lists are kept in
/// ascending order so iteration and serialization are deterministic. Values
/// are immutable in normal use: the transformation functions below return new
/// graphs (an in-place path exists for the word-application loop).
class BicoloredGraph {
public:
    BicoloredGraph() = default;
    explicit BicoloredGraph(std::size_t n, Color fill = Color::minus_one)
        : colors_(n, fill), adj_(n) {}
    explicit BicoloredGraph(std::vector<Color> colors)
        : colors_(std::move(colors)), adj_(colors_.size()) {}

    std::size_t vertex_count() const { return colors_.size(); }
    std::size_t edge_count() const;

    Color color(VertexId v) const { return colors_[v]; }
    void set_color(VertexId v, Color c) { colors_[v] = c; }

    bool has_vertex(VertexId v) const { return v < colors_.size(); }
    bool has_edge(VertexId u, VertexId v) const;

    /// Inserts edge uv. Returns false (and leaves the graph unchanged) when
    /// the edge already exists. Throws on self-loops or unknown vertices.
    bool add_edge(VertexId u, VertexId v);
    bool remove_edge(VertexId u, VertexId v);

    std::span<const VertexId> neighbors(VertexId v) const { return adj_[v]; }
    std::size_t degree(VertexId v) const { return adj_[v].size(); }

    /// Bulk construction: append without keeping lists sorted, then call
    /// finish_bulk_edges() once. Duplicates and self-loops are rejected there.
    void add_edge_bulk(VertexId u, VertexId v);
    void finish_bulk_edges();

    bool operator==(const BicoloredGraph&) const = default;

private:
    friend void apply_phi_in_place(BicoloredGraph& g, VertexId v);

    // Swaps in a prebuilt sorted row; symmetry is the caller's obligation.
    void replace_neighbors_unsafe(VertexId v, std::vector<VertexId>& row) {
        adj_[v].swap(row);
    }

    std::vector<Color> colors_;
    std::vector<std::vector<VertexId>> adj_;
};

/// Identity comparison (same vertex set, coloring, and edge set).
inline bool graph_equal(const BicoloredGraph& a, const BicoloredGraph& b) {
    return a == b;
}

/// One local homophily step at v, on a copy of the graph:
/// v takes the sign of the sum of its neighbors' colors (kept on a zero sum),
/// and every pair of old neighbors of v becomes adjacent iff equally colored.
/// Edges with an endpoint outside N(v), including all edges at v, are kept.
BicoloredGraph apply_phi(const BicoloredGraph& g, VertexId v);

/// In-place variant of apply_phi; observationally identical.
void apply_phi_in_place(BicoloredGraph& g, VertexId v);

/// Applies the word left to right. The empty word returns an equal graph.
BicoloredGraph apply_word(const BicoloredGraph& g, const UpdateWord& word);

/// All |word|+1 intermediate graphs, starting with the input.
std::vector<BicoloredGraph> apply_word_traced(const BicoloredGraph& g,
                                              const UpdateWord& word);

/// One decision-problem instance: does edge st exist after applying word?
struct LheInstance {
    BicoloredGraph graph;
    VertexId s = 0;
    VertexId t = 0;
    UpdateWord word;
};

/// Throws std::invalid_argument when the instance invariants are violated
/// (s == t, unknown vertices, word element out of range).
void validate_instance(const LheInstance& instance);

bool solve_lhe(const LheInstance& instance);

}  // namespace lhe
