#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lhe {

using GateId = std::uint32_t;

enum class GateKind { Input, And, Or, Buf };

std::string_view gate_kind_name(GateKind kind);
unsigned gate_fan_in(GateKind kind);  // Input 0, Buf 1, And/Or 2

struct Gate {
    std::string name;
    GateKind kind = GateKind::Input;
    GateId preds[2] = {0, 0};  // first fan_in(kind) entries are meaningful
    unsigned level = 0;        // longest path from an input

    bool operator==(const Gate&) const = default;
};

/// Monotone Boolean circuit, fan-in/out <= 2, one designated output gate.
/// Gates are stored in topological (definition) order; ids index `gates`.
/// BUF is an internal identity gate produced by synchronize().
struct Circuit {
    std::vector<Gate> gates;
    GateId output = 0;

    std::size_t count(GateKind kind) const;
    std::vector<unsigned> fan_outs() const;
    unsigned depth() const;  // level of the deepest gate

    bool operator==(const Circuit&) const = default;
};

/// Values for INPUT gates, indexed by gate id (entries for other gates are
/// ignored). Total when every input has a value.
using Assignment = std::vector<std::optional<bool>>;

bool assignment_total(const Circuit& circuit, const Assignment& assignment);

struct ParsedCircuit {
    Circuit circuit;
    Assignment assignment;  // inline `=0|1` values; possibly partial
};

/// Parses the netlist grammar (see docs/formats.md):
///   input <name>[=0|1]
///   <name> = AND <a> <b> | <name> = OR <a> <b> | <name> = BUF <a>
///   output <name>
/// Rejects duplicate or unknown names, fan-out > 2, a consumed output gate,
/// and missing/multiple output statements. Synchronicity is not checked here;
/// see validate() and synchronize().
ParsedCircuit parse_netlist(std::string_view text);

/// Assignment file: `<name>=0|1` per line, '#' comments. Overrides inline
/// values; names must be INPUT gates.
void apply_assignment_file(ParsedCircuit& parsed, std::string_view text);

/// Canonical netlist text; parse_netlist(print_netlist(c, a)) reproduces the
/// circuit structurally.
std::string print_netlist(const Circuit& circuit,
                          const Assignment& assignment = {});

struct ValidationReport {
    bool monotone = true;  // by construction: only INPUT/AND/OR/BUF exist
    bool acyclic = true;
    bool fan_in_ok = true;
    bool fan_out_ok = true;
    bool single_output = true;  // output id valid and has no consumers
    bool synchronous = true;    // every pred exactly one level below
    std::vector<std::string> messages;

    bool ok() const {
        return monotone && acyclic && fan_in_ok && fan_out_ok &&
               single_output && synchronous;
    }
};

/// Recomputes levels (longest path) and checks every structural condition.
ValidationReport validate(const Circuit& circuit);

/// Inserts BUF ladders so every wire spans exactly one level. Requires a
/// circuit that is valid except possibly for synchronicity; the result is
/// synchronous and computes the same function. Already-synchronous circuits
/// come back structurally unchanged.
Circuit synchronize(const Circuit& circuit);

/// Evaluates the output gate. Requires a total assignment.
bool evaluate(const Circuit& circuit, const Assignment& assignment);

/// Carries an assignment across a transformation like synchronize() that may
/// renumber gates: values follow INPUT gate names.
Assignment remap_assignment(const Circuit& from, const Assignment& values,
                            const Circuit& to);

}  // namespace lhe
