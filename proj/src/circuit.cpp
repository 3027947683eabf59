#include "lhe/circuit.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "line_scanner.hpp"

namespace lhe {

namespace {

using detail::LineScanner;

bool valid_identifier(std::string_view s) {
    if (s.empty()) return false;
    auto alpha = [](char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
    };
    auto alnum = [&](char c) { return alpha(c) || (c >= '0' && c <= '9'); };
    if (!alpha(s[0])) return false;
    return std::all_of(s.begin() + 1, s.end(), alnum);
}

void recompute_levels(Circuit& circuit) {
    for (std::size_t i = 0; i < circuit.gates.size(); ++i) {
        Gate& g = circuit.gates[i];
        g.level = 0;
        for (unsigned p = 0; p < gate_fan_in(g.kind); ++p) {
            if (g.preds[p] < i) {
                g.level = std::max(g.level, circuit.gates[g.preds[p]].level + 1);
            }
        }
    }
}

}  // namespace

std::string_view gate_kind_name(GateKind kind) {
    switch (kind) {
        case GateKind::Input: return "INPUT";
        case GateKind::And: return "AND";
        case GateKind::Or: return "OR";
        case GateKind::Buf: return "BUF";
    }
    return "?";
}

unsigned gate_fan_in(GateKind kind) {
    switch (kind) {
        case GateKind::Input: return 0;
        case GateKind::Buf: return 1;
        case GateKind::And:
        case GateKind::Or: return 2;
    }
    return 0;
}

std::size_t Circuit::count(GateKind kind) const {
    return static_cast<std::size_t>(
        std::count_if(gates.begin(), gates.end(),
                      [&](const Gate& g) { return g.kind == kind; }));
}

std::vector<unsigned> Circuit::fan_outs() const {
    std::vector<unsigned> out(gates.size(), 0);
    for (const Gate& g : gates) {
        for (unsigned p = 0; p < gate_fan_in(g.kind); ++p) {
            if (g.preds[p] < gates.size()) ++out[g.preds[p]];
        }
    }
    return out;
}

unsigned Circuit::depth() const {
    unsigned d = 0;
    for (const Gate& g : gates) d = std::max(d, g.level);
    return d;
}

bool assignment_total(const Circuit& circuit, const Assignment& assignment) {
    for (std::size_t i = 0; i < circuit.gates.size(); ++i) {
        if (circuit.gates[i].kind == GateKind::Input) {
            if (i >= assignment.size() || !assignment[i].has_value()) {
                return false;
            }
        }
    }
    return true;
}

ParsedCircuit parse_netlist(std::string_view text) {
    LineScanner sc(text);
    ParsedCircuit parsed;
    std::unordered_map<std::string, GateId> names;
    std::optional<GateId> output;

    auto lookup = [&](std::string_view name) -> GateId {
        auto it = names.find(std::string(name));
        if (it == names.end()) {
            throw parse_error(sc.line(),
                              "unknown gate '" + std::string(name) + "'");
        }
        return it->second;
    };
    auto define = [&](std::string_view name) -> GateId {
        if (!valid_identifier(name)) {
            throw parse_error(sc.line(),
                              "invalid identifier '" + std::string(name) + "'");
        }
        auto [it, inserted] =
            names.emplace(std::string(name),
                          static_cast<GateId>(parsed.circuit.gates.size()));
        if (!inserted) {
            throw parse_error(sc.line(),
                              "duplicate gate name '" + std::string(name) + "'");
        }
        return it->second;
    };

    for (auto tokens = sc.next(); !tokens.empty(); tokens = sc.next()) {
        if (tokens[0] == "input") {
            if (tokens.size() != 2) {
                throw parse_error(sc.line(), "expected 'input <name>[=0|1]'");
            }
            std::string_view rest = tokens[1];
            std::optional<bool> value;
            if (auto eq = rest.find('='); eq != std::string_view::npos) {
                std::string_view v = rest.substr(eq + 1);
                if (v == "0") value = false;
                else if (v == "1") value = true;
                else throw parse_error(sc.line(), "input value must be 0 or 1");
                rest = rest.substr(0, eq);
            }
            define(rest);
            parsed.circuit.gates.push_back(
                Gate{std::string(rest), GateKind::Input, {0, 0}, 0});
            parsed.assignment.push_back(value);
        } else if (tokens[0] == "output") {
            if (tokens.size() != 2) {
                throw parse_error(sc.line(), "expected 'output <name>'");
            }
            if (output) {
                throw parse_error(sc.line(), "multiple output statements");
            }
            output = lookup(tokens[1]);
        } else {
            // <name> = AND|OR <a> <b>   or   <name> = BUF <a>
            if (tokens.size() < 4 || tokens[1] != "=") {
                throw parse_error(sc.line(), "expected '<name> = <OP> ...'");
            }
            GateKind kind;
            if (tokens[2] == "AND") kind = GateKind::And;
            else if (tokens[2] == "OR") kind = GateKind::Or;
            else if (tokens[2] == "BUF") kind = GateKind::Buf;
            else {
                throw parse_error(sc.line(), "unknown operation '" +
                                                 std::string(tokens[2]) + "'");
            }
            unsigned arity = gate_fan_in(kind);
            if (tokens.size() != 3 + arity) {
                throw parse_error(sc.line(),
                                  std::string(gate_kind_name(kind)) +
                                      " takes " + std::to_string(arity) +
                                      " operand(s)");
            }
            Gate g;
            g.kind = kind;
            for (unsigned p = 0; p < arity; ++p) {
                g.preds[p] = lookup(tokens[3 + p]);
            }
            g.name = std::string(tokens[0]);
            define(tokens[0]);
            parsed.circuit.gates.push_back(std::move(g));
            parsed.assignment.push_back(std::nullopt);
        }
    }

    if (!output) throw parse_error(sc.line(), "missing output statement");
    parsed.circuit.output = *output;
    recompute_levels(parsed.circuit);

    auto fan = parsed.circuit.fan_outs();
    for (std::size_t i = 0; i < fan.size(); ++i) {
        if (fan[i] > 2) {
            throw parse_error(0, "gate '" + parsed.circuit.gates[i].name +
                                     "' feeds " + std::to_string(fan[i]) +
                                     " consumers (fan-out limit is 2)");
        }
    }
    if (fan[parsed.circuit.output] != 0) {
        throw parse_error(0, "output gate '" +
                                 parsed.circuit.gates[parsed.circuit.output].name +
                                 "' must not feed other gates");
    }
    return parsed;
}

void apply_assignment_file(ParsedCircuit& parsed, std::string_view text) {
    std::unordered_map<std::string, GateId> inputs;
    for (std::size_t i = 0; i < parsed.circuit.gates.size(); ++i) {
        if (parsed.circuit.gates[i].kind == GateKind::Input) {
            inputs.emplace(parsed.circuit.gates[i].name,
                           static_cast<GateId>(i));
        }
    }
    LineScanner sc(text);
    for (auto tokens = sc.next(); !tokens.empty(); tokens = sc.next()) {
        if (tokens.size() != 1) {
            throw parse_error(sc.line(), "expected '<name>=0|1'");
        }
        std::string_view tok = tokens[0];
        auto eq = tok.find('=');
        if (eq == std::string_view::npos) {
            throw parse_error(sc.line(), "expected '<name>=0|1'");
        }
        std::string name(tok.substr(0, eq));
        std::string_view v = tok.substr(eq + 1);
        auto it = inputs.find(name);
        if (it == inputs.end()) {
            throw parse_error(sc.line(), "'" + name + "' is not an input");
        }
        if (v == "0") parsed.assignment[it->second] = false;
        else if (v == "1") parsed.assignment[it->second] = true;
        else throw parse_error(sc.line(), "value must be 0 or 1");
    }
}

std::string print_netlist(const Circuit& circuit,
                          const Assignment& assignment) {
    std::ostringstream out;
    // definition order, so parsing the result reproduces the gate ids
    for (std::size_t i = 0; i < circuit.gates.size(); ++i) {
        const Gate& g = circuit.gates[i];
        if (g.kind == GateKind::Input) {
            out << "input " << g.name;
            if (i < assignment.size() && assignment[i].has_value()) {
                out << '=' << (*assignment[i] ? '1' : '0');
            }
        } else {
            out << g.name << " = " << gate_kind_name(g.kind);
            for (unsigned p = 0; p < gate_fan_in(g.kind); ++p) {
                out << ' ' << circuit.gates[g.preds[p]].name;
            }
        }
        out << '\n';
    }
    out << "output " << circuit.gates[circuit.output].name << '\n';
    return std::move(out).str();
}

ValidationReport validate(const Circuit& circuit) {
    ValidationReport report;
    auto note = [&](bool& flag, const std::string& msg) {
        flag = false;
        report.messages.push_back(msg);
    };

    if (circuit.gates.empty() || circuit.output >= circuit.gates.size()) {
        note(report.single_output, "output gate id is invalid");
        return report;
    }

    for (std::size_t i = 0; i < circuit.gates.size(); ++i) {
        const Gate& g = circuit.gates[i];
        for (unsigned p = 0; p < gate_fan_in(g.kind); ++p) {
            if (g.preds[p] >= i) {
                note(report.acyclic, "gate '" + g.name +
                                         "' references a not-yet-defined gate");
            }
        }
    }
    if (!report.acyclic) return report;  // levels undefined below

    Circuit leveled = circuit;
    recompute_levels(leveled);

    for (std::size_t i = 0; i < leveled.gates.size(); ++i) {
        const Gate& g = leveled.gates[i];
        for (unsigned p = 0; p < gate_fan_in(g.kind); ++p) {
            if (leveled.gates[g.preds[p]].level + 1 != g.level) {
                note(report.synchronous,
                     "gate '" + g.name + "' (level " +
                         std::to_string(g.level) + ") consumes '" +
                         leveled.gates[g.preds[p]].name + "' (level " +
                         std::to_string(leveled.gates[g.preds[p]].level) + ")");
            }
        }
    }

    auto fan = circuit.fan_outs();
    for (std::size_t i = 0; i < fan.size(); ++i) {
        if (fan[i] > 2) {
            note(report.fan_out_ok,
                 "gate '" + circuit.gates[i].name + "' has fan-out " +
                     std::to_string(fan[i]));
        }
    }
    if (fan[circuit.output] != 0) {
        note(report.single_output, "output gate has consumers");
    }
    return report;
}

Circuit synchronize(const Circuit& circuit) {
    {
        ValidationReport pre = validate(circuit);
        if (!pre.acyclic || !pre.fan_in_ok || !pre.fan_out_ok ||
            !pre.single_output) {
            throw std::invalid_argument(
                "synchronize requires a structurally valid circuit" +
                (pre.messages.empty() ? std::string()
                                      : ": " + pre.messages.front()));
        }
    }

    Circuit src = circuit;
    recompute_levels(src);

    Circuit out;
    out.gates.reserve(src.gates.size());
    std::unordered_set<std::string> used_names;
    for (const Gate& g : src.gates) used_names.insert(g.name);

    std::vector<GateId> remap(src.gates.size());
    // Per-source BUF ladders: ladder[p][r] is the gate carrying p's value at
    // level(p) + r + 1. Built on demand, reused by later consumers.
    std::vector<std::vector<GateId>> ladder(src.gates.size());

    auto fresh_name = [&](const std::string& base) {
        std::string name = base;
        unsigned n = 0;
        while (used_names.count(name)) name = base + "_" + std::to_string(++n);
        used_names.insert(name);
        return name;
    };

    auto tap = [&](GateId old_pred, unsigned rungs_needed) -> GateId {
        if (rungs_needed == 0) return remap[old_pred];
        auto& rungs = ladder[old_pred];
        while (rungs.size() < rungs_needed) {
            GateId below =
                rungs.empty() ? remap[old_pred] : rungs.back();
            Gate buf;
            buf.kind = GateKind::Buf;
            buf.preds[0] = below;
            buf.name = fresh_name(src.gates[old_pred].name + "_buf" +
                                  std::to_string(rungs.size() + 1));
            out.gates.push_back(std::move(buf));
            rungs.push_back(static_cast<GateId>(out.gates.size() - 1));
        }
        return rungs[rungs_needed - 1];
    };

    for (std::size_t i = 0; i < src.gates.size(); ++i) {
        const Gate& g = src.gates[i];
        Gate copy = g;
        for (unsigned p = 0; p < gate_fan_in(g.kind); ++p) {
            unsigned gap = g.level - src.gates[g.preds[p]].level;
            copy.preds[p] = tap(g.preds[p], gap - 1);
        }
        out.gates.push_back(std::move(copy));
        remap[i] = static_cast<GateId>(out.gates.size() - 1);
    }
    out.output = remap[src.output];
    recompute_levels(out);
    return out;
}

Assignment remap_assignment(const Circuit& from, const Assignment& values,
                            const Circuit& to) {
    std::unordered_map<std::string, std::optional<bool>> by_name;
    for (std::size_t i = 0; i < from.gates.size() && i < values.size(); ++i) {
        if (from.gates[i].kind == GateKind::Input) {
            by_name[from.gates[i].name] = values[i];
        }
    }
    Assignment out(to.gates.size());
    for (std::size_t i = 0; i < to.gates.size(); ++i) {
        if (to.gates[i].kind != GateKind::Input) continue;
        if (auto it = by_name.find(to.gates[i].name); it != by_name.end()) {
            out[i] = it->second;
        }
    }
    return out;
}

bool evaluate(const Circuit& circuit, const Assignment& assignment) {
    if (!assignment_total(circuit, assignment)) {
        throw std::invalid_argument("assignment is not total over the inputs");
    }
    std::vector<char> value(circuit.gates.size(), 0);
    for (std::size_t i = 0; i < circuit.gates.size(); ++i) {
        const Gate& g = circuit.gates[i];
        switch (g.kind) {
            case GateKind::Input:
                value[i] = *assignment[i] ? 1 : 0;
                break;
            case GateKind::Buf:
                value[i] = value[g.preds[0]];
                break;
            case GateKind::And:
                value[i] = value[g.preds[0]] && value[g.preds[1]];
                break;
            case GateKind::Or:
                value[i] = value[g.preds[0]] || value[g.preds[1]];
                break;
        }
    }
    return value[circuit.output] != 0;
}

}  // namespace lhe
