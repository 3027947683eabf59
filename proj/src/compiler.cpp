#include "lhe/compiler.hpp"

#include <algorithm>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <unordered_map>

namespace lhe {

namespace {

constexpr unsigned kMinWorkingK = 3;  // smallest k the duplicator works for

std::size_t owned_count(GadgetKind kind, unsigned n_slots, unsigned k) {
    return gadget_vertex_count(kind, k) - 2 * n_slots;
}

// Locals 0..2*n_slots-1 are merged with producer vertices; the rest are owned
// and keep their relative order, so global order equals local order.
VertexId map_local(const PlacedGadget& g, VertexId local) {
    if (local < 2 * g.n_slots) {
        const EdgeSlot& pair = g.slot_global[local / 2];
        return (local % 2 == 0) ? pair.first : pair.second;
    }
    return g.base + (local - 2 * g.n_slots);
}

// Schedule + id layout + wiring. Everything downstream (materialized build,
// streaming emission, placement table, robustness probe) reads this plan.
struct CompilePlan {
    unsigned k = 0;
    Placement placement;
    std::size_t edge_count = 0;
    std::size_t word_len = 0;
    VertexId s = 0, t = 0;
    std::vector<bool> input_value;  // per gadget index; InputDup only
    // producer out vertex -> (consumer gadget index, consumer slot local)
    std::unordered_map<VertexId, std::vector<std::pair<std::size_t, VertexId>>>
        cross_edges;
};

CompilePlan build_plan(const Circuit& circuit, const Assignment& assignment,
                       std::optional<ReductionParams> params_opt) {
    {
        ValidationReport report = validate(circuit);
        if (!report.ok()) {
            throw std::invalid_argument(
                "compile requires a valid synchronous circuit: " +
                (report.messages.empty() ? std::string("invalid")
                                         : report.messages.front()));
        }
    }
    if (!assignment_total(circuit, assignment)) {
        throw std::invalid_argument("compile requires a total assignment");
    }

    CompilePlan plan;
    const ReductionParams params =
        params_opt ? *params_opt : ReductionParams::for_circuit(circuit);
    if (params.k == 0) throw std::invalid_argument("k must be positive");
    plan.k = params.k;
    plan.placement.k = params.k;

    const unsigned depth = circuit.depth();
    auto& gadgets = plan.placement.gadgets;

    // Port provider per gate: the gadget whose output pairs carry the gate's
    // value to consumers.
    std::vector<std::size_t> provider(circuit.gates.size(),
                                      std::numeric_limits<std::size_t>::max());
    std::vector<std::size_t> gate_gadget(circuit.gates.size(),
                                         std::numeric_limits<std::size_t>::max());

    auto add_gadget = [&](PlacementRole role, GadgetKind kind, GateId owner,
                          unsigned level, unsigned sublayer,
                          unsigned n_slots) -> std::size_t {
        PlacedGadget g;
        g.role = role;
        g.kind = kind;
        g.owner = owner;
        g.level = level;
        g.sublayer = sublayer;
        g.n_slots = n_slots;
        g.base = static_cast<VertexId>(plan.placement.vertex_count);
        g.owned = owned_count(kind, n_slots, plan.k);
        plan.placement.vertex_count += g.owned;
        if (plan.placement.vertex_count >
            std::numeric_limits<VertexId>::max()) {
            throw std::overflow_error("instance exceeds the vertex id range");
        }
        plan.edge_count += gadget_edge_count(kind, plan.k);
        g.word_begin = plan.word_len;
        g.word_len = kind == GadgetKind::Dup ? plan.k + 7
                     : kind == GadgetKind::And ? 5
                                               : 4;
        plan.word_len += g.word_len;
        gadgets.push_back(g);
        plan.input_value.push_back(false);
        return gadgets.size() - 1;
    };

    // Level 0: one duplicator per input, ascending gate id.
    for (std::size_t i = 0; i < circuit.gates.size(); ++i) {
        if (circuit.gates[i].kind != GateKind::Input) continue;
        std::size_t idx = add_gadget(PlacementRole::InputDup, GadgetKind::Dup,
                                     static_cast<GateId>(i), 0, 0, 0);
        provider[i] = idx;
        gate_gadget[i] = idx;
        plan.input_value[idx] = *assignment[i];
    }

    // Levels 1..depth: the level's gate gadgets, then its trailing
    // duplicators, both ascending gate id.
    for (unsigned level = 1; level <= depth; ++level) {
        for (std::size_t i = 0; i < circuit.gates.size(); ++i) {
            const Gate& gate = circuit.gates[i];
            if (gate.kind == GateKind::Input || gate.level != level) continue;
            GadgetKind kind = gate.kind == GateKind::And ? GadgetKind::And
                              : gate.kind == GateKind::Or ? GadgetKind::Or
                                                          : GadgetKind::Dup;
            unsigned n_slots = gate.kind == GateKind::Buf ? 1 : 2;
            std::size_t idx =
                add_gadget(PlacementRole::GateGadget, kind,
                           static_cast<GateId>(i), level, 0, n_slots);
            gate_gadget[i] = idx;
            if (gate.kind == GateKind::Buf) provider[i] = idx;
        }
        for (std::size_t i = 0; i < circuit.gates.size(); ++i) {
            const Gate& gate = circuit.gates[i];
            if (gate.kind == GateKind::Input || gate.kind == GateKind::Buf ||
                gate.level != level || i == circuit.output) {
                continue;
            }
            std::size_t idx =
                add_gadget(PlacementRole::TrailingDup, GadgetKind::Dup,
                           static_cast<GateId>(i), level, 1, 1);
            provider[i] = idx;
        }
    }

    // Wiring. Consumers claim a provider duplicator's (9,10) pair first and
    // (5,6) second: measured accumulation stays lower on (9,10), which keeps
    // long chains well inside the k margin.
    std::vector<unsigned> claims(gadgets.size(), 0);
    auto claim_port = [&](GateId pred) -> EdgeSlot {
        std::size_t p = provider[pred];
        const PlacedGadget& dup = gadgets[p];
        unsigned claim = claims[p]++;
        if (claim >= 2) throw std::logic_error("provider over-claimed");
        const auto slots = gadget_output_slots_of(GadgetKind::Dup);
        const EdgeSlot local = claim == 0 ? slots[1] : slots[0];
        return {map_local(dup, local.first), map_local(dup, local.second)};
    };

    for (std::size_t idx = 0; idx < gadgets.size(); ++idx) {
        PlacedGadget& g = gadgets[idx];
        if (g.role == PlacementRole::InputDup) continue;
        const Gate& gate = circuit.gates[g.owner];
        if (g.role == PlacementRole::GateGadget) {
            for (unsigned slot = 0; slot < g.n_slots; ++slot) {
                g.slot_global[slot] = claim_port(gate.preds[slot]);
            }
        } else {  // trailing duplicator: merged with its own gate's output
            const PlacedGadget& producer = gadgets[gate_gadget[g.owner]];
            const EdgeSlot out =
                gadget_output_slots_of(producer.kind).front();
            g.slot_global[0] = {map_local(producer, out.first),
                                map_local(producer, out.second)};
        }
        for (unsigned slot = 0; slot < g.n_slots; ++slot) {
            plan.cross_edges[g.slot_global[slot].first].push_back(
                {idx, static_cast<VertexId>(2 * slot)});
            plan.cross_edges[g.slot_global[slot].second].push_back(
                {idx, static_cast<VertexId>(2 * slot + 1)});
        }
    }

    // Extra initial edges: a TRUE input's duplicator gets its input edge.
    for (std::size_t idx = 0; idx < gadgets.size(); ++idx) {
        if (gadgets[idx].role == PlacementRole::InputDup &&
            plan.input_value[idx]) {
            ++plan.edge_count;
        }
    }

    // Target pair: the output gate's own gadget output pair.
    {
        const PlacedGadget& out_gadget = gadgets[gate_gadget[circuit.output]];
        const EdgeSlot out = gadget_output_slots_of(out_gadget.kind).front();
        plan.s = map_local(out_gadget, out.first);
        plan.t = map_local(out_gadget, out.second);
    }

    return plan;
}

UpdateWord plan_word(const CompilePlan& plan) {
    UpdateWord word;
    word.reserve(plan.word_len);
    for (const PlacedGadget& g : plan.placement.gadgets) {
        for (VertexId local : gadget_word_locals(g.kind, plan.k)) {
            word.push_back(map_local(g, local));
        }
    }
    return word;
}

}  // namespace

unsigned choose_k(std::size_t n_and, std::size_t n_or) {
    const unsigned long long value = 16ULL * n_and + 15ULL * n_or + 1ULL;
    if (value > std::numeric_limits<unsigned>::max()) {
        throw std::overflow_error("k bound overflows");
    }
    return static_cast<unsigned>(value);
}

ReductionParams ReductionParams::for_circuit(const Circuit& circuit) {
    return ReductionParams{std::max(
        choose_k(circuit.count(GateKind::And), circuit.count(GateKind::Or)),
        kMinWorkingK)};
}

ReductionParams ReductionParams::unchecked(unsigned k) {
    return ReductionParams{k};
}

std::string_view placement_role_name(PlacementRole role) {
    switch (role) {
        case PlacementRole::InputDup: return "input-dup";
        case PlacementRole::GateGadget: return "gate";
        case PlacementRole::TrailingDup: return "trailing-dup";
    }
    return "?";
}

std::pair<std::size_t, VertexId> Placement::decode(VertexId global) const {
    auto it = std::upper_bound(
        gadgets.begin(), gadgets.end(), global,
        [](VertexId v, const PlacedGadget& g) { return v < g.base; });
    if (it == gadgets.begin() || global >= vertex_count) {
        throw std::invalid_argument("global id out of range");
    }
    const std::size_t idx = static_cast<std::size_t>(it - gadgets.begin()) - 1;
    const PlacedGadget& g = gadgets[idx];
    return {idx, static_cast<VertexId>(global - g.base + 2 * g.n_slots)};
}

VertexId Placement::local_to_global(std::size_t gadget_index,
                                    VertexId local) const {
    return map_local(gadgets.at(gadget_index), local);
}

CompileResult compile(const Circuit& circuit, const Assignment& assignment,
                      std::optional<ReductionParams> params) {
    CompilePlan plan = build_plan(circuit, assignment, params);

    BicoloredGraph graph(plan.placement.vertex_count, Color::minus_one);
    for (std::size_t idx = 0; idx < plan.placement.gadgets.size(); ++idx) {
        const PlacedGadget& g = plan.placement.gadgets[idx];
        for (std::size_t i = 0; i < g.owned; ++i) {
            graph.set_color(
                g.base + static_cast<VertexId>(i),
                gadget_vertex_color(g.kind, plan.k,
                                    static_cast<VertexId>(i + 2 * g.n_slots)));
        }
        for_each_gadget_edge(g.kind, plan.k, [&](VertexId a, VertexId b) {
            graph.add_edge_bulk(map_local(g, a), map_local(g, b));
        });
        if (g.role == PlacementRole::InputDup && plan.input_value[idx]) {
            graph.add_edge_bulk(map_local(g, 0), map_local(g, 1));
        }
    }
    graph.finish_bulk_edges();

    CompileResult result;
    result.instance =
        LheInstance{std::move(graph), plan.s, plan.t, plan_word(plan)};
    result.placement = std::move(plan.placement);
    result.params = ReductionParams{plan.k};
    return result;
}

void compile_streaming(const Circuit& circuit, const Assignment& assignment,
                       std::ostream& sink,
                       std::optional<ReductionParams> params) {
    CompilePlan plan = build_plan(circuit, assignment, params);
    const auto& gadgets = plan.placement.gadgets;

    sink << "graph " << plan.placement.vertex_count << '\n';
    for (const PlacedGadget& g : gadgets) {
        for (std::size_t i = 0; i < g.owned; ++i) {
            const Color c = gadget_vertex_color(
                g.kind, plan.k, static_cast<VertexId>(i + 2 * g.n_slots));
            sink << (g.base + i) << ' '
                 << (c == Color::plus_one ? "+1" : "-1") << '\n';
        }
    }

    sink << "edges " << plan.edge_count << '\n';
    std::vector<VertexId> forward;
    for (std::size_t idx = 0; idx < gadgets.size(); ++idx) {
        const PlacedGadget& g = gadgets[idx];
        for (std::size_t i = 0; i < g.owned; ++i) {
            const VertexId u = g.base + static_cast<VertexId>(i);
            const VertexId local = static_cast<VertexId>(i + 2 * g.n_slots);
            forward.clear();
            for_each_local_neighbor(
                g.kind, plan.k, local, [&](VertexId, VertexId other) {
                    if (other < 2 * g.n_slots) return;  // producer side emits
                    const VertexId v = map_local(g, other);
                    if (v > u) forward.push_back(v);
                });
            if (g.role == PlacementRole::InputDup && plan.input_value[idx] &&
                local == 0) {
                forward.push_back(map_local(g, 1));
            }
            if (auto it = plan.cross_edges.find(u);
                it != plan.cross_edges.end()) {
                for (auto [consumer_idx, slot_local] : it->second) {
                    const PlacedGadget& consumer = gadgets[consumer_idx];
                    for_each_local_neighbor(
                        consumer.kind, plan.k, slot_local,
                        [&](VertexId, VertexId other) {
                            forward.push_back(map_local(consumer, other));
                        });
                }
            }
            std::sort(forward.begin(), forward.end());
            for (VertexId v : forward) sink << u << ' ' << v << '\n';
        }
    }

    sink << "word " << plan.word_len << '\n';
    bool first = true;
    for (const PlacedGadget& g : gadgets) {
        for (VertexId local : gadget_word_locals(g.kind, plan.k)) {
            if (!first) sink << ' ';
            sink << map_local(g, local);
            first = false;
        }
    }
    sink << '\n';
    sink << "target " << plan.s << ' ' << plan.t << '\n';
    if (!sink) throw std::runtime_error("sink write failed");
}

bool end_to_end(const Circuit& circuit, const Assignment& assignment,
                std::optional<ReductionParams> params) {
    return solve_lhe(compile(circuit, assignment, params).instance);
}

RobustnessReport solve_with_robustness(const CompileResult& result) {
    const Placement& placement = result.placement;
    // (word position of the vertex-0 firing) -> gadget index
    std::unordered_map<std::size_t, std::size_t> firing;
    for (std::size_t idx = 0; idx < placement.gadgets.size(); ++idx) {
        if (placement.gadgets[idx].kind == GadgetKind::Dup) {
            firing.emplace(placement.gadgets[idx].word_begin, idx);
        }
    }

    RobustnessReport report;
    BicoloredGraph graph = result.instance.graph;
    const UpdateWord& word = result.instance.word;
    for (std::size_t pos = 0; pos < word.size(); ++pos) {
        if (auto it = firing.find(pos); it != firing.end()) {
            const PlacedGadget& dup = placement.gadgets[it->second];
            const VertexId v1 = word[pos];
            const VertexId v2 = dup.n_slots > 0 ? dup.slot_global[0].second
                                                : dup.base + 1;
            unsigned accumulated = 0;
            for (VertexId u : graph.neighbors(v1)) {
                const bool own = (u >= dup.base && u < dup.base + dup.owned) ||
                                 u == v2;
                if (!own && graph.color(u) == Color::minus_one) ++accumulated;
            }
            report.max_accumulated =
                std::max(report.max_accumulated, accumulated);
            if (accumulated >= placement.k) report.within_k = false;
        }
        apply_phi_in_place(graph, word[pos]);
    }
    report.answer = graph.has_edge(result.instance.s, result.instance.t);
    return report;
}

Placement compile_placement(const Circuit& circuit,
                            const Assignment& assignment,
                            std::optional<ReductionParams> params) {
    return build_plan(circuit, assignment, params).placement;
}

void write_placement_table(std::ostream& out, const Circuit& circuit,
                           const Placement& placement) {
    out << "placement " << placement.vertex_count << '\n';
    for (const PlacedGadget& g : placement.gadgets) {
        for (std::size_t i = 0; i < g.owned; ++i) {
            out << (g.base + i) << ' ' << circuit.gates[g.owner].name << ' '
                << placement_role_name(g.role) << ' ' << (i + 2 * g.n_slots)
                << '\n';
        }
    }
}

}  // namespace lhe
