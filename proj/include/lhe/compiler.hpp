#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lhe/circuit.hpp"
#include "lhe/gadgets.hpp"
#include "lhe/graph.hpp"

namespace lhe {

/// Least k strictly above the accumulation bound 7n_and + 6n_or +
/// 9(n_and + n_or), i.e. 16*n_and + 15*n_or + 1. Throws std::overflow_error
/// when the result does not fit the practical range.
unsigned choose_k(std::size_t n_and, std::size_t n_or);

/// Duplicator flower size used for a compilation. All duplicators share one k.
struct ReductionParams {
    unsigned k = 3;

    /// Default policy: choose_k for the circuit, clamped up to 3 (the
    /// smallest k for which the duplicator functions; see the gadget tests).
    static ReductionParams for_circuit(const Circuit& circuit);

    /// Explicit k, bypassing the bound. Intended for large instances where
    /// the accumulation bound is far looser than the measured accumulation;
    /// pair with solve_with_robustness to check the real margin.
    static ReductionParams unchecked(unsigned k);
};

enum class PlacementRole { InputDup, GateGadget, TrailingDup };

std::string_view placement_role_name(PlacementRole role);

/// One placed gadget: which gate owns it, where its owned vertex ids live,
/// and where the producer pairs it was merged with sit.
struct PlacedGadget {
    PlacementRole role = PlacementRole::InputDup;
    GadgetKind kind = GadgetKind::Dup;
    GateId owner = 0;
    unsigned level = 0;
    unsigned sublayer = 0;  // 0 = gates (and input dups), 1 = trailing dups
    VertexId base = 0;      // first owned global id
    std::size_t owned = 0;
    unsigned n_slots = 0;             // merged input slots (locals 0..2n-1)
    EdgeSlot slot_global[2] = {};     // producer pair per merged slot
    std::size_t word_begin = 0;
    std::size_t word_len = 0;
};

struct Placement {
    unsigned k = 0;
    std::vector<PlacedGadget> gadgets;  // in schedule (= id block) order
    std::size_t vertex_count = 0;

    /// Inverse of the id layout: which gadget owns `global`, and as which
    /// catalog-local label.
    std::pair<std::size_t, VertexId> decode(VertexId global) const;
    VertexId local_to_global(std::size_t gadget_index, VertexId local) const;
};

struct CompileResult {
    LheInstance instance;
    Placement placement;
    ReductionParams params;
};

/// Builds the gadget network for a validated synchronous circuit: one
/// duplicator per input (its input edge present iff the assigned value is
/// TRUE), one gadget per gate followed by a trailing duplicator except at the
/// output gate, wires realized by identifying producer output pairs with
/// consumer input pairs, and the word concatenated in increasing level order.
/// (s, t) is the output gate's own output pair.
CompileResult compile(const Circuit& circuit, const Assignment& assignment,
                      std::optional<ReductionParams> params = std::nullopt);

/// Emits exactly the bytes of serialize() applied to compile()'s instance
/// document, but generates vertices, edges, word and target on the fly with
/// working state proportional to the circuit, not the instance.
void compile_streaming(const Circuit& circuit, const Assignment& assignment,
                       std::ostream& sink,
                       std::optional<ReductionParams> params = std::nullopt);

/// compile + solve. Contractually equal to evaluate(circuit, assignment).
bool end_to_end(const Circuit& circuit, const Assignment& assignment,
                std::optional<ReductionParams> params = std::nullopt);

/// Instrumented solve: additionally measures, at each duplicator's vertex-1
/// first firing, how many -1 colored neighbors it has accumulated beyond its
/// own gadget (upper-layer influence). The construction is sound while every
/// such count stays strictly below k; the simulation itself needs the
/// tighter margin count <= k-3, reported as `max_accumulated`.
struct RobustnessReport {
    bool answer = false;
    unsigned max_accumulated = 0;
    bool within_k = true;  // every measured count < k
};

RobustnessReport solve_with_robustness(const CompileResult& result);

/// The placement alone, without materializing the graph.
Placement compile_placement(const Circuit& circuit,
                            const Assignment& assignment,
                            std::optional<ReductionParams> params = std::nullopt);

/// Sidecar placement table: one `<global id> <owner> <role> <local>` row per
/// vertex. See docs/formats.md.
void write_placement_table(std::ostream& out, const Circuit& circuit,
                           const Placement& placement);

}  // namespace lhe
