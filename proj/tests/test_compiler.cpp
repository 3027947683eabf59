#include "doctest.h"

#include <random>
#include <map>
#include <sstream>
#include <stdexcept>

#include "lhe/compiler.hpp"
#include "lhe/format.hpp"
#include "support/circuits.hpp"

using namespace lhe;
using lhe::testing::random_assignment;
using lhe::testing::random_tree_circuit;
using lhe::testing::small_circuit_corpus;

namespace {

struct PreparedCircuit {
    Circuit circuit;
    std::vector<Assignment> assignments;  // exhaustive over inputs
};

PreparedCircuit prepare(const std::string& netlist) {
    ParsedCircuit parsed = parse_netlist(netlist);
    PreparedCircuit out;
    out.circuit = synchronize(parsed.circuit);
    std::vector<std::size_t> inputs;
    for (std::size_t i = 0; i < out.circuit.gates.size(); ++i) {
        if (out.circuit.gates[i].kind == GateKind::Input) inputs.push_back(i);
    }
    REQUIRE(inputs.size() <= 4);
    for (std::size_t bits = 0; bits < (1u << inputs.size()); ++bits) {
        Assignment a(out.circuit.gates.size());
        for (std::size_t i = 0; i < inputs.size(); ++i) {
            a[inputs[i]] = ((bits >> i) & 1u) != 0;
        }
        out.assignments.push_back(std::move(a));
    }
    return out;
}

}  // namespace

TEST_CASE("choose_k is the least value above the accumulation bound") {
    CHECK(choose_k(0, 0) == 1);
    CHECK(choose_k(1, 0) == 17);
    CHECK(choose_k(2, 3) == 78);
    CHECK_THROWS_AS(choose_k(300'000'000, 0), std::overflow_error);
}

TEST_CASE("pass-through circuit compiles and solves to its input value") {
    PreparedCircuit pc = prepare("input x1\noutput x1\n");
    for (const Assignment& a : pc.assignments) {
        CHECK(end_to_end(pc.circuit, a) == evaluate(pc.circuit, a));
    }
}

TEST_CASE("single AND / OR gates agree with evaluate on all assignments") {
    for (const char* netlist :
         {"input x1\ninput x2\ng = AND x1 x2\noutput g\n",
          "input x1\ninput x2\ng = OR x1 x2\noutput g\n"}) {
        PreparedCircuit pc = prepare(netlist);
        REQUIRE(pc.assignments.size() == 4);
        for (const Assignment& a : pc.assignments) {
            CHECK(end_to_end(pc.circuit, a) == evaluate(pc.circuit, a));
        }
    }
}

TEST_CASE("depth-3 circuit matches evaluate exhaustively at the default k") {
    PreparedCircuit pc = prepare(
        "input a\ninput b\ninput c\ninput d\n"
        "g1 = AND a b\ng2 = AND c d\ng3 = OR g1 g2\noutput g3\n");
    REQUIRE(pc.assignments.size() == 16);
    for (const Assignment& a : pc.assignments) {
        CHECK(end_to_end(pc.circuit, a) == evaluate(pc.circuit, a));
    }
}

TEST_CASE("default parameters respect the bound inequality") {
    for (const auto& entry : small_circuit_corpus()) {
        PreparedCircuit pc = prepare(entry.netlist);
        CompileResult result =
            compile(pc.circuit, pc.assignments.front());
        const std::size_t n_and = pc.circuit.count(GateKind::And);
        const std::size_t n_or = pc.circuit.count(GateKind::Or);
        CHECK(static_cast<long long>(result.params.k) >
              16LL * static_cast<long long>(n_and) +
                  15LL * static_cast<long long>(n_or) - 1);
        CHECK(result.params.k >= 3);
    }
}

TEST_CASE("corpus: end_to_end equals evaluate on every assignment") {
    const ReductionParams params = ReductionParams::unchecked(48);
    for (const auto& entry : small_circuit_corpus()) {
        PreparedCircuit pc = prepare(entry.netlist);
        for (const Assignment& a : pc.assignments) {
            INFO(entry.name);
            CHECK(end_to_end(pc.circuit, a, params) ==
                  evaluate(pc.circuit, a));
        }
    }
}

TEST_CASE("random circuits: end_to_end equals evaluate") {
    std::mt19937 rng(424242);
    const ReductionParams params = ReductionParams::unchecked(24);
    for (int iter = 0; iter < 10; ++iter) {
        Circuit c = random_tree_circuit(rng, 20, 11);
        REQUIRE(validate(c).ok());
        for (int trial = 0; trial < 4; ++trial) {
            Assignment a = random_assignment(rng, c);
            CHECK(end_to_end(c, a, params) == evaluate(c, a));
        }
    }
}

TEST_CASE("schedule is monotone in level, gates before trailing dups") {
    PreparedCircuit pc = prepare(
        "input a\ninput b\ninput c\ninput d\n"
        "g1 = AND a b\ng2 = OR c d\ng3 = AND g1 g2\noutput g3\n");
    CompileResult result = compile(pc.circuit, pc.assignments.front());
    const auto& gadgets = result.placement.gadgets;
    for (std::size_t i = 1; i < gadgets.size(); ++i) {
        const auto key = [](const PlacedGadget& g) {
            return std::tuple{g.level, g.sublayer, g.owner};
        };
        CHECK(key(gadgets[i - 1]) < key(gadgets[i]));
        CHECK(gadgets[i - 1].word_begin + gadgets[i - 1].word_len ==
              gadgets[i].word_begin);
    }
    // every vertex of a level-l gadget precedes every level-(l+1) vertex in w
    for (std::size_t i = 0; i + 1 < gadgets.size(); ++i) {
        for (std::size_t j = i + 1; j < gadgets.size(); ++j) {
            if (gadgets[j].level > gadgets[i].level) {
                CHECK(gadgets[i].word_begin + gadgets[i].word_len <=
                      gadgets[j].word_begin);
            }
        }
    }
}

TEST_CASE("placement decodes every global id back to its owner") {
    PreparedCircuit pc = prepare(
        "input a\ninput b\ng1 = AND a b\noutput g1\n");
    CompileResult result = compile(pc.circuit, pc.assignments.back());
    const Placement& placement = result.placement;

    CHECK(placement.vertex_count == result.instance.graph.vertex_count());
    // owned blocks tile the id space
    VertexId expected_base = 0;
    for (const PlacedGadget& g : placement.gadgets) {
        CHECK(g.base == expected_base);
        expected_base += static_cast<VertexId>(g.owned);
    }
    CHECK(expected_base == placement.vertex_count);

    for (VertexId v = 0; v < placement.vertex_count; ++v) {
        auto [idx, local] = placement.decode(v);
        CHECK(placement.local_to_global(idx, local) == v);
    }
    CHECK_THROWS_AS(placement.decode(placement.vertex_count),
                    std::invalid_argument);

    // merged slots of the AND gadget resolve to the input dups' output pairs
    const PlacedGadget& gate = placement.gadgets.back();
    REQUIRE(gate.role == PlacementRole::GateGadget);
    for (unsigned slot = 0; slot < gate.n_slots; ++slot) {
        auto [pidx, plocal] =
            placement.decode(gate.slot_global[slot].first);
        CHECK(placement.gadgets[pidx].kind == GadgetKind::Dup);
        CHECK(placement.gadgets[pidx].level + 1 == gate.level);
    }
}

TEST_CASE("duplicator isolation carries over to compiled instances") {
    // The two output pairs of a duplicator stay disconnected unless both of
    // them feed the same downstream gate, whose own rewiring then connects
    // its four input vertices (see `same-pred-twice`). Flower isolation
    // holds unconditionally.
    const ReductionParams params = ReductionParams::unchecked(48);
    for (const auto& entry : small_circuit_corpus()) {
        PreparedCircuit pc = prepare(entry.netlist);
        for (std::size_t pick : {std::size_t{0}, pc.assignments.size() - 1}) {
            CompileResult result =
                compile(pc.circuit, pc.assignments[pick], params);
            const Placement& placement = result.placement;

            // producer dup -> consumer gadget -> number of ports claimed
            std::map<std::size_t, std::map<std::size_t, int>> claims;
            for (std::size_t idx = 0; idx < placement.gadgets.size(); ++idx) {
                const PlacedGadget& g = placement.gadgets[idx];
                if (g.role == PlacementRole::TrailingDup) continue;
                for (unsigned slot = 0; slot < g.n_slots; ++slot) {
                    auto [pidx, plocal] =
                        placement.decode(g.slot_global[slot].first);
                    if (placement.gadgets[pidx].kind == GadgetKind::Dup) {
                        ++claims[pidx][idx];
                    }
                }
            }

            BicoloredGraph final_graph =
                apply_word(result.instance.graph, result.instance.word);
            for (std::size_t idx = 0; idx < placement.gadgets.size(); ++idx) {
                const PlacedGadget& g = placement.gadgets[idx];
                if (g.kind != GadgetKind::Dup) continue;
                INFO(entry.name << " gadget " << idx);
                const VertexId outs[4] = {
                    placement.local_to_global(idx, 5),
                    placement.local_to_global(idx, 6),
                    placement.local_to_global(idx, 9),
                    placement.local_to_global(idx, 10)};

                bool both_ports_one_gate = false;
                if (auto it = claims.find(idx); it != claims.end()) {
                    for (const auto& [consumer, count] : it->second) {
                        if (count == 2) both_ports_one_gate = true;
                    }
                }
                if (!both_ports_one_gate) {
                    for (VertexId x : {outs[0], outs[1]}) {
                        for (VertexId y : {outs[2], outs[3]}) {
                            CHECK(!final_graph.has_edge(x, y));
                        }
                    }
                }

                const std::size_t flower =
                    static_cast<std::size_t>(params.k) * (params.k + 3);
                for (std::size_t fi = 0; fi < flower; ++fi) {
                    VertexId fv = placement.local_to_global(
                        idx, static_cast<VertexId>(11 + fi));
                    for (VertexId o : outs) CHECK(!final_graph.has_edge(fv, o));
                }
            }
        }
    }
}

TEST_CASE("measured accumulation stays inside the margin") {
    const ReductionParams params = ReductionParams::unchecked(48);
    for (const auto& entry : small_circuit_corpus()) {
        PreparedCircuit pc = prepare(entry.netlist);
        for (const Assignment& a : pc.assignments) {
            CompileResult result = compile(pc.circuit, a, params);
            RobustnessReport report = solve_with_robustness(result);
            INFO(entry.name);
            CHECK(report.within_k);
            CHECK(report.max_accumulated + 3 <= params.k);
            CHECK(report.answer == evaluate(pc.circuit, a));
        }
    }
}

TEST_CASE("streaming output is byte-identical to the materialized path") {
    const ReductionParams params = ReductionParams::unchecked(48);
    for (const auto& entry : small_circuit_corpus()) {
        PreparedCircuit pc = prepare(entry.netlist);
        for (std::size_t pick : {std::size_t{0}, pc.assignments.size() / 2}) {
            const Assignment& a = pc.assignments[pick];
            CompileResult result = compile(pc.circuit, a, params);
            std::string materialized =
                serialize(document_from_instance(result.instance));
            std::ostringstream streamed;
            compile_streaming(pc.circuit, a, streamed, params);
            INFO(entry.name);
            CHECK(streamed.str() == materialized);
        }
    }
}

TEST_CASE("streaming matches the materialized path on a random 60-gate run") {
    std::mt19937 rng(606060);
    Circuit c = random_tree_circuit(rng, 60, 31);
    Assignment a = random_assignment(rng, c);
    const ReductionParams params = ReductionParams::unchecked(12);
    CompileResult result = compile(c, a, params);
    std::string materialized =
        serialize(document_from_instance(result.instance));
    std::ostringstream streamed;
    compile_streaming(c, a, streamed, params);
    CHECK(streamed.str() == materialized);
}

TEST_CASE("robustness probe flags an undersized k") {
    // At k = 12 the deeper corpus entries accumulate 13 foreign edges at
    // some duplicator, which the measurement reports as a bound violation.
    PreparedCircuit pc = prepare(
        "input a\ninput b\ninput c\ninput d\n"
        "g1 = OR a b\ng2 = AND c d\ng3 = AND g1 g2\ng4 = OR g3 g3\n"
        "output g4\n");
    bool violated = false;
    for (const Assignment& a : pc.assignments) {
        RobustnessReport report = solve_with_robustness(
            compile(pc.circuit, a, ReductionParams::unchecked(12)));
        if (!report.within_k) violated = true;
    }
    CHECK(violated);
}

TEST_CASE("both compile paths reject bad inputs identically") {
    ParsedCircuit parsed =
        parse_netlist("input a\ninput b\ng = AND a b\noutput g\n");
    Assignment partial(parsed.circuit.gates.size());  // nothing assigned

    std::string first, second;
    try {
        compile(parsed.circuit, partial);
        FAIL("compile accepted a partial assignment");
    } catch (const std::invalid_argument& e) {
        first = e.what();
    }
    std::ostringstream sink;
    try {
        compile_streaming(parsed.circuit, partial, sink);
        FAIL("compile_streaming accepted a partial assignment");
    } catch (const std::invalid_argument& e) {
        second = e.what();
    }
    CHECK(first == second);
    CHECK(sink.str().empty());

    // non-synchronous circuits are rejected up front
    ParsedCircuit skip = parse_netlist(
        "input a\ninput b\ninput c\n"
        "g1 = AND b c\ng2 = OR a g1\noutput g2\n");
    Assignment full(skip.circuit.gates.size());
    for (auto& v : full) v = true;
    CHECK_THROWS_AS(compile(skip.circuit, full), std::invalid_argument);
}

TEST_CASE("compilation is deterministic") {
    PreparedCircuit pc = prepare(
        "input a\ninput b\ng1 = OR a b\ng2 = AND g1 g1\noutput g2\n");
    const Assignment& a = pc.assignments[1];
    std::string one =
        serialize(document_from_instance(compile(pc.circuit, a).instance));
    std::string two =
        serialize(document_from_instance(compile(pc.circuit, a).instance));
    CHECK(one == two);
}

TEST_CASE("placement table lists every vertex once") {
    PreparedCircuit pc = prepare("input x1\noutput x1\n");
    CompileResult result = compile(pc.circuit, pc.assignments.front());
    std::ostringstream out;
    write_placement_table(out, pc.circuit, result.placement);
    std::string text = out.str();
    std::size_t lines = static_cast<std::size_t>(
        std::count(text.begin(), text.end(), '\n'));
    CHECK(lines == result.placement.vertex_count + 1);  // header + rows
    CHECK(text.rfind("placement ", 0) == 0);
}

TEST_CASE("each gadget's word stays inside its own vertex set") {
    PreparedCircuit pc = prepare(
        "input a\ninput b\ninput c\ninput d\n"
        "g1 = AND a b\ng2 = OR c d\ng3 = AND g1 g2\noutput g3\n");
    CompileResult result = compile(pc.circuit, pc.assignments[5]);
    const Placement& placement = result.placement;
    for (std::size_t idx = 0; idx < placement.gadgets.size(); ++idx) {
        const PlacedGadget& g = placement.gadgets[idx];
        for (std::size_t p = g.word_begin; p < g.word_begin + g.word_len; ++p) {
            VertexId v = result.instance.word[p];
            bool owned = v >= g.base && v < g.base + g.owned;
            bool merged = false;
            for (unsigned slot = 0; slot < g.n_slots; ++slot) {
                merged |= v == g.slot_global[slot].first ||
                          v == g.slot_global[slot].second;
            }
            CHECK((owned || merged));
        }
    }
}
