#include "lhe/gadgets.hpp"

#include <array>
#include <stdexcept>

#include "lhe/flower.hpp"

namespace lhe {

namespace {

constexpr VertexId kDupFlowerBase = 11;

constexpr std::array<EdgeSlot, 4> kOrEdges = {
    EdgeSlot{0, 4}, EdgeSlot{2, 4}, EdgeSlot{1, 5}, EdgeSlot{3, 5}};
constexpr std::array<EdgeSlot, 4> kAndEdges = {
    EdgeSlot{0, 4}, EdgeSlot{1, 5}, EdgeSlot{2, 6}, EdgeSlot{3, 4}};
// Duplicator edges outside the flower and off the vertex-0-to-center fan.
constexpr std::array<EdgeSlot, 10> kDupStaticEdges = {
    EdgeSlot{0, 2}, EdgeSlot{0, 3}, EdgeSlot{0, 5}, EdgeSlot{1, 4},
    EdgeSlot{1, 6}, EdgeSlot{2, 5}, EdgeSlot{3, 7}, EdgeSlot{3, 8},
    EdgeSlot{3, 9}, EdgeSlot{4, 10}};

FlowerSpec dup_flower(unsigned k) { return FlowerSpec{k, k + 2}; }

void require_dup_k(GadgetKind kind, unsigned k) {
    if (kind == GadgetKind::Dup && k == 0) {
        throw std::invalid_argument("duplicator requires k >= 1");
    }
}

Gadget build_from_catalog(GadgetKind kind, unsigned k) {
    Gadget g;
    g.kind = kind;
    g.k = kind == GadgetKind::Dup ? k : 0;
    const std::size_t n = gadget_vertex_count(kind, k);
    g.graph = BicoloredGraph(n, Color::minus_one);
    for (VertexId v = 0; v < n; ++v) {
        g.graph.set_color(v, gadget_vertex_color(kind, k, v));
    }
    for_each_gadget_edge(kind, k, [&](VertexId a, VertexId b) {
        g.graph.add_edge_bulk(a, b);
    });
    g.graph.finish_bulk_edges();
    g.word = gadget_word_locals(kind, k);
    g.input_slots = gadget_input_slots_of(kind);
    g.output_slots = gadget_output_slots_of(kind);
    if (kind == GadgetKind::Dup) {
        g.flower_base = kDupFlowerBase;
        g.flower_count = dup_flower(k).vertex_count();
    }
    return g;
}

}  // namespace

std::size_t gadget_vertex_count(GadgetKind kind, unsigned k) {
    switch (kind) {
        case GadgetKind::Or: return 6;
        case GadgetKind::And: return 7;
        case GadgetKind::Dup:
            require_dup_k(kind, k);
            return 11 + dup_flower(k).vertex_count();
    }
    return 0;
}

std::size_t gadget_edge_count(GadgetKind kind, unsigned k) {
    switch (kind) {
        case GadgetKind::Or:
        case GadgetKind::And: return 4;
        case GadgetKind::Dup: {
            require_dup_k(kind, k);
            const std::size_t kk = k;
            const std::size_t m = kk + 2;
            const std::size_t flower =
                kk * (kk - 1) / 2 + kk * (m * (m - 1) / 2 + m);
            return kDupStaticEdges.size() + kk + flower;
        }
    }
    return 0;
}

Color gadget_vertex_color(GadgetKind kind, unsigned k, VertexId local) {
    if (kind != GadgetKind::Dup) return Color::minus_one;
    if (local == 3 || local == 4) return Color::plus_one;
    if (local >= kDupFlowerBase && local < kDupFlowerBase + k) {
        return Color::plus_one;  // flower centers
    }
    return Color::minus_one;
}

UpdateWord gadget_word_locals(GadgetKind kind, unsigned k) {
    switch (kind) {
        case GadgetKind::Or: return {0, 3, 1, 2};
        case GadgetKind::And: return {1, 2, 0, 3, 4};
        case GadgetKind::Dup: {
            require_dup_k(kind, k);
            UpdateWord w = {0, 1};
            for (unsigned i = 0; i < k; ++i) w.push_back(kDupFlowerBase + i);
            for (VertexId v : {2, 0, 3, 4, 3}) w.push_back(v);
            return w;
        }
    }
    return {};
}

std::vector<EdgeSlot> gadget_input_slots_of(GadgetKind kind) {
    if (kind == GadgetKind::Dup) return {{0, 1}};
    return {{0, 1}, {2, 3}};
}

std::vector<EdgeSlot> gadget_output_slots_of(GadgetKind kind) {
    switch (kind) {
        case GadgetKind::Or: return {{4, 5}};
        case GadgetKind::And: return {{5, 6}};
        case GadgetKind::Dup: return {{5, 6}, {9, 10}};
    }
    return {};
}

void for_each_gadget_edge(GadgetKind kind, unsigned k,
                          const EdgeVisitor& visit) {
    switch (kind) {
        case GadgetKind::Or:
            for (auto [a, b] : kOrEdges) visit(a, b);
            return;
        case GadgetKind::And:
            for (auto [a, b] : kAndEdges) visit(a, b);
            return;
        case GadgetKind::Dup: {
            require_dup_k(kind, k);
            const FlowerSpec f = dup_flower(k);
            for (auto [a, b] : kDupStaticEdges) visit(a, b);
            for (unsigned i = 0; i < k; ++i) {
                visit(0, kDupFlowerBase + f.center(i));
            }
            for (unsigned i = 0; i < k; ++i) {
                for (unsigned j = i + 1; j < k; ++j) {
                    visit(kDupFlowerBase + f.center(i),
                          kDupFlowerBase + f.center(j));
                }
            }
            for (unsigned i = 0; i < k; ++i) {
                for (unsigned j = 0; j < f.m; ++j) {
                    visit(kDupFlowerBase + f.center(i),
                          kDupFlowerBase + f.petal(i, j));
                    for (unsigned l = j + 1; l < f.m; ++l) {
                        visit(kDupFlowerBase + f.petal(i, j),
                              kDupFlowerBase + f.petal(i, l));
                    }
                }
            }
            return;
        }
    }
}

void for_each_local_neighbor(GadgetKind kind, unsigned k, VertexId local,
                             const EdgeVisitor& visit) {
    auto from_table = [&](const auto& edges) {
        for (auto [a, b] : edges) {
            if (a == local) visit(local, b);
            if (b == local) visit(local, a);
        }
    };
    switch (kind) {
        case GadgetKind::Or: from_table(kOrEdges); return;
        case GadgetKind::And: from_table(kAndEdges); return;
        case GadgetKind::Dup: break;
    }

    require_dup_k(kind, k);
    const FlowerSpec f = dup_flower(k);
    if (local < kDupFlowerBase) {
        from_table(kDupStaticEdges);
        if (local == 0) {
            for (unsigned i = 0; i < k; ++i) {
                visit(local, kDupFlowerBase + f.center(i));
            }
        }
        return;
    }
    const VertexId fl = local - kDupFlowerBase;
    if (fl < k) {  // center i
        const unsigned i = fl;
        visit(local, 0);
        for (unsigned j = 0; j < k; ++j) {
            if (j != i) visit(local, kDupFlowerBase + f.center(j));
        }
        for (unsigned j = 0; j < f.m; ++j) {
            visit(local, kDupFlowerBase + f.petal(i, j));
        }
        return;
    }
    const unsigned i = (fl - k) / f.m;  // petal owner
    const unsigned j = (fl - k) % f.m;
    visit(local, kDupFlowerBase + f.center(i));
    for (unsigned l = 0; l < f.m; ++l) {
        if (l != j) visit(local, kDupFlowerBase + f.petal(i, l));
    }
}

Gadget build_or() { return build_from_catalog(GadgetKind::Or, 0); }

Gadget build_and() { return build_from_catalog(GadgetKind::And, 0); }

Gadget build_duplicator(unsigned k) {
    require_dup_k(GadgetKind::Dup, k);
    return build_from_catalog(GadgetKind::Dup, k);
}

std::vector<bool> gadget_expected_outputs(GadgetKind kind,
                                          const std::vector<bool>& inputs) {
    switch (kind) {
        case GadgetKind::Or:
            return {inputs.at(0) || inputs.at(1)};
        case GadgetKind::And:
            return {inputs.at(0) && inputs.at(1)};
        case GadgetKind::Dup:
            return {inputs.at(0), inputs.at(0)};
    }
    throw std::logic_error("unreachable");
}

GadgetReport verify_gadget(const Gadget& gadget, unsigned extra_neighbors) {
    if (gadget.kind == GadgetKind::Dup) {
        if (extra_neighbors >= gadget.k) {
            throw std::invalid_argument(
                "duplicator robustness requires extra_neighbors < k");
        }
    } else if (extra_neighbors != 0) {
        throw std::invalid_argument(
            "extra neighbors are only defined for the duplicator");
    }

    GadgetReport report;
    report.kind = gadget.kind;
    report.truth_table_ok = true;

    const std::size_t n_inputs = gadget.input_slots.size();
    const std::size_t base_n = gadget.graph.vertex_count();

    for (std::size_t combo = 0; combo < (1u << n_inputs); ++combo) {
        BicoloredGraph work(base_n + extra_neighbors, Color::minus_one);
        for (VertexId v = 0; v < base_n; ++v) {
            work.set_color(v, gadget.graph.color(v));
        }
        for (VertexId v = 0; v < base_n; ++v) {
            for (VertexId u : gadget.graph.neighbors(v)) {
                if (u > v) work.add_edge_bulk(v, u);
            }
        }
        for (unsigned p = 0; p < extra_neighbors; ++p) {
            work.add_edge_bulk(0, static_cast<VertexId>(base_n + p));
        }
        work.finish_bulk_edges();

        TruthTableRow row;
        for (std::size_t i = 0; i < n_inputs; ++i) {
            bool on = (combo >> i) & 1u;
            row.inputs.push_back(on);
            if (on) {
                work.add_edge(gadget.input_slots[i].first,
                              gadget.input_slots[i].second);
            }
        }

        BicoloredGraph out = apply_word(work, gadget.word);

        for (const auto& slot : gadget.output_slots) {
            row.outputs.push_back(out.has_edge(slot.first, slot.second));
        }
        if (row.outputs != gadget_expected_outputs(gadget.kind, row.inputs)) {
            report.truth_table_ok = false;
        }

        if (gadget.kind == GadgetKind::Dup) {
            const auto& [a1, a2] = gadget.output_slots[0];
            const auto& [b1, b2] = gadget.output_slots[1];
            for (VertexId x : {a1, a2}) {
                for (VertexId y : {b1, b2}) {
                    if (out.has_edge(x, y)) report.outputs_disconnected = false;
                }
            }
            for (VertexId o : {a1, a2, b1, b2}) {
                if (out.color(o) != Color::minus_one) {
                    report.outputs_negative = false;
                }
                for (VertexId u : out.neighbors(o)) {
                    if (u >= gadget.flower_base &&
                        u < gadget.flower_base + gadget.flower_count) {
                        report.flower_isolated = false;
                    }
                }
            }
        }

        report.rows.push_back(std::move(row));
    }
    return report;
}

}  // namespace lhe
