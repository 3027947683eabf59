#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "lhe/graph.hpp"

namespace lhe {

enum class GadgetKind { Or, And, Dup };

using EdgeSlot = std::pair<VertexId, VertexId>;

/// A gadget: a bicolored graph fragment, its designated input/output edge
/// slots (edge present <=> TRUE), and the fixed update word that evaluates it.
///
/// Vertex ids are 0-based. The catalog:
///   OR : vertices 0..5, edges {(0,4),(2,4),(1,5),(3,5)}, all -1,
///        inputs (0,1),(2,3), output (4,5), word (0,3,1,2).
///   AND: vertices 0..6, edges {(0,4),(1,5),(2,6),(3,4)}, all -1,
///        inputs (0,1),(2,3), output (5,6), word (1,2,0,3,4).
///   DUP: vertices 0..10 plus an embedded flower F_{k,k+2} whose centers are
///        11..10+k; vertex 0 is adjacent to every center. Vertices 3, 4 and
///        the centers are +1, everything else -1. Input (0,1), outputs
///        (5,6) and (9,10), word (0, 1, 11..10+k, 2, 0, 3, 4, 3).
struct Gadget {
    GadgetKind kind = GadgetKind::Or;
    BicoloredGraph graph;
    std::vector<EdgeSlot> input_slots;
    std::vector<EdgeSlot> output_slots;
    UpdateWord word;
    unsigned k = 0;              // DUP only: flower center count
    VertexId flower_base = 0;    // DUP only
    std::size_t flower_count = 0;
};

Gadget build_or();
Gadget build_and();
/// Throws std::invalid_argument when k == 0.
Gadget build_duplicator(unsigned k);

struct TruthTableRow {
    std::vector<bool> inputs;
    std::vector<bool> outputs;
};

/// Simulated truth table over every input combination, plus the duplicator's
/// structural verdicts (held vacuously true for OR/AND).
struct GadgetReport {
    GadgetKind kind = GadgetKind::Or;
    std::vector<TruthTableRow> rows;
    bool truth_table_ok = false;      // matches OR / AND / identity x2
    bool outputs_disconnected = true; // no edge between the two output pairs
    bool flower_isolated = true;      // no flower-to-output edge
    bool outputs_negative = true;     // output vertices colored -1

    bool all_ok() const {
        return truth_table_ok && outputs_disconnected && flower_isolated &&
               outputs_negative;
    }
};

/// Runs the gadget on every input combination and reports the table.
///
/// For DUP, `extra_neighbors` fresh -1 pendant vertices are attached to
/// vertex 0 before the run, modelling edges accumulated from upstream
/// gadgets; requires extra_neighbors < k. OR/AND require extra_neighbors == 0.
GadgetReport verify_gadget(const Gadget& gadget, unsigned extra_neighbors = 0);

/// The Boolean function the gadget is meant to realize.
std::vector<bool> gadget_expected_outputs(GadgetKind kind,
                                          const std::vector<bool>& inputs);

// Catalog queries. These answer structural questions arithmetically, without
// materializing a gadget graph, which keeps the streaming compiler's working
// state small. build_or/build_and/build_duplicator are thin wrappers over the
// same data.
std::size_t gadget_vertex_count(GadgetKind kind, unsigned k);
std::size_t gadget_edge_count(GadgetKind kind, unsigned k);
Color gadget_vertex_color(GadgetKind kind, unsigned k, VertexId local);
UpdateWord gadget_word_locals(GadgetKind kind, unsigned k);
std::vector<EdgeSlot> gadget_input_slots_of(GadgetKind kind);
std::vector<EdgeSlot> gadget_output_slots_of(GadgetKind kind);

using EdgeVisitor = std::function<void(VertexId, VertexId)>;

/// Calls visit(a, b) for every catalog edge, each exactly once.
void for_each_gadget_edge(GadgetKind kind, unsigned k,
                          const EdgeVisitor& visit);
/// Calls visit(local, other) for every catalog neighbor of `local`.
void for_each_local_neighbor(GadgetKind kind, unsigned k, VertexId local,
                             const EdgeVisitor& visit);

}  // namespace lhe
