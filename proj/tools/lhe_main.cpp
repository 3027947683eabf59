// lhe: bicolored-graph rewriting under the local homophily rule, the gadget
// catalog, and the circuit-to-instance compiler, behind one CLI.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "lhe/circuit.hpp"
#include "lhe/compiler.hpp"
#include "lhe/flower.hpp"
#include "lhe/format.hpp"
#include "lhe/gadgets.hpp"
#include "lhe/graph.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInput = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return std::move(buf).str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

void write_dot_frames(const std::string& dir,
                      const std::vector<lhe::BicoloredGraph>& frames) {
    std::filesystem::create_directories(dir);
    char name[32];
    for (std::size_t i = 0; i < frames.size(); ++i) {
        std::snprintf(name, sizeof(name), "frame_%04zu.dot", i);
        write_file((std::filesystem::path(dir) / name).string(),
                   lhe::to_dot(frames[i]));
    }
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
    } else {
        write_file(out_path, text);
    }
}

struct SimulateOptions {
    std::string input;
    std::string out_path;
    std::string dot_dir;
    std::string json_path;
    bool trace = false;
};

int run_simulate(const SimulateOptions& opt) {
    lhe::GraphDocument doc = lhe::parse_graph_document(read_file(opt.input));
    const lhe::UpdateWord word = doc.word.value_or(lhe::UpdateWord{});

    lhe::BicoloredGraph final_graph;
    if (opt.trace || !opt.dot_dir.empty()) {
        auto frames = lhe::apply_word_traced(doc.graph, word);
        if (!opt.dot_dir.empty()) write_dot_frames(opt.dot_dir, frames);
        if (opt.trace) {
            std::string text;
            for (std::size_t i = 0; i < frames.size(); ++i) {
                text += "# step " + std::to_string(i) + "\n";
                text += lhe::serialize(frames[i]);
            }
            emit(text, opt.out_path);
        }
        final_graph = std::move(frames.back());
    } else {
        final_graph = lhe::apply_word(doc.graph, word);
    }
    if (!opt.json_path.empty()) {
        write_file(opt.json_path,
                   lhe::to_json(lhe::GraphDocument{final_graph, {}, {}}));
    }
    if (!opt.trace) emit(lhe::serialize(final_graph), opt.out_path);
    return kExitOk;
}

int run_solve(const std::string& input) {
    lhe::GraphDocument doc = lhe::parse_graph_document(read_file(input));
    lhe::LheInstance instance = lhe::instance_from_document(doc);
    std::cout << (lhe::solve_lhe(instance) ? "true" : "false") << '\n';
    return kExitOk;
}

struct CompileOptions {
    std::string netlist;
    std::string assignment_path;
    std::string out_path;
    std::string placement_path;
    bool stream = false;
    bool params = false;
    unsigned k_override = 0;
};

int run_compile(const CompileOptions& opt) {
    lhe::ParsedCircuit parsed = lhe::parse_netlist(read_file(opt.netlist));
    if (!opt.assignment_path.empty()) {
        lhe::apply_assignment_file(parsed, read_file(opt.assignment_path));
    }
    if (!lhe::assignment_total(parsed.circuit, parsed.assignment)) {
        throw std::invalid_argument(
            "assignment is not total; pass --assignment or inline values");
    }
    const std::size_t gates_before = parsed.circuit.gates.size();
    lhe::Circuit circuit = lhe::synchronize(parsed.circuit);
    lhe::Assignment assignment =
        lhe::remap_assignment(parsed.circuit, parsed.assignment, circuit);

    std::optional<lhe::ReductionParams> params;
    if (opt.k_override > 0) {
        params = lhe::ReductionParams::unchecked(opt.k_override);
    }

    if (opt.params) {
        lhe::Placement placement =
            lhe::compile_placement(circuit, assignment, params);
        std::size_t vertices = placement.vertex_count;
        std::size_t edges = 0;
        std::size_t word_len = 0;
        for (const auto& g : placement.gadgets) {
            edges += lhe::gadget_edge_count(g.kind, placement.k);
            word_len += g.word_len;
        }
        for (std::size_t i = 0; i < circuit.gates.size(); ++i) {
            if (circuit.gates[i].kind == lhe::GateKind::Input &&
                assignment[i].value_or(false)) {
                ++edges;
            }
        }
        std::cout << "k " << placement.k << '\n'
                  << "and-gates " << circuit.count(lhe::GateKind::And) << '\n'
                  << "or-gates " << circuit.count(lhe::GateKind::Or) << '\n'
                  << "buffers " << circuit.count(lhe::GateKind::Buf)
                  << " (inserted " << (circuit.gates.size() - gates_before)
                  << ")\n"
                  << "gadgets " << placement.gadgets.size() << '\n'
                  << "vertices " << vertices << '\n'
                  << "edges " << edges << '\n'
                  << "word-length " << word_len << '\n';
        if (opt.out_path.empty()) return kExitOk;
    }

    if (opt.stream) {
        if (opt.out_path.empty()) {
            lhe::compile_streaming(circuit, assignment, std::cout, params);
        } else {
            std::ofstream out(opt.out_path, std::ios::binary);
            if (!out) {
                throw std::runtime_error("cannot open '" + opt.out_path + "'");
            }
            lhe::compile_streaming(circuit, assignment, out, params);
        }
        if (!opt.placement_path.empty()) {
            std::ofstream out(opt.placement_path, std::ios::binary);
            lhe::write_placement_table(
                out, circuit,
                lhe::compile_placement(circuit, assignment, params));
        }
        return kExitOk;
    }

    lhe::CompileResult result = lhe::compile(circuit, assignment, params);
    emit(lhe::serialize(lhe::document_from_instance(result.instance)),
         opt.out_path);
    std::string placement_path = opt.placement_path;
    if (placement_path.empty() && !opt.out_path.empty()) {
        placement_path = opt.out_path + ".placement";
    }
    if (!placement_path.empty()) {
        std::ofstream out(placement_path, std::ios::binary);
        lhe::write_placement_table(out, circuit, result.placement);
    }
    return kExitOk;
}

struct GadgetOptions {
    std::string kind;
    unsigned k = 5;
    unsigned extra = 0;
    std::string inputs;
    std::string dot_dir;
    bool trace = false;
};

int run_gadget(const GadgetOptions& opt) {
    lhe::Gadget gadget;
    if (opt.kind == "or") gadget = lhe::build_or();
    else if (opt.kind == "and") gadget = lhe::build_and();
    else gadget = lhe::build_duplicator(opt.k);

    if (opt.inputs.empty()) {
        std::cout << lhe::serialize(
            lhe::GraphDocument{gadget.graph, gadget.word, {}});
        lhe::GadgetReport report = lhe::verify_gadget(gadget, opt.extra);
        std::cout << "truth-table" << (opt.extra ? " (extra-neighbors " +
                                                       std::to_string(opt.extra) +
                                                       ")"
                                                 : "")
                  << ":\n";
        for (const auto& row : report.rows) {
            std::cout << "  ";
            for (bool b : row.inputs) std::cout << (b ? '1' : '0');
            std::cout << " -> ";
            for (bool b : row.outputs) std::cout << (b ? '1' : '0');
            std::cout << '\n';
        }
        std::cout << "matches-function " << (report.truth_table_ok ? "yes" : "no")
                  << '\n';
        if (gadget.kind == lhe::GadgetKind::Dup) {
            std::cout << "outputs-disconnected "
                      << (report.outputs_disconnected ? "yes" : "no") << '\n'
                      << "flower-isolated "
                      << (report.flower_isolated ? "yes" : "no") << '\n'
                      << "outputs-negative "
                      << (report.outputs_negative ? "yes" : "no") << '\n';
        }
        return kExitOk;
    }

    if (opt.inputs.size() != gadget.input_slots.size() ||
        opt.inputs.find_first_not_of("01") != std::string::npos) {
        throw std::invalid_argument("--inputs wants " +
                                    std::to_string(gadget.input_slots.size()) +
                                    " bits of 0/1");
    }
    lhe::BicoloredGraph work = gadget.graph;
    for (std::size_t i = 0; i < opt.inputs.size(); ++i) {
        if (opt.inputs[i] == '1') {
            work.add_edge(gadget.input_slots[i].first,
                          gadget.input_slots[i].second);
        }
    }
    auto frames = lhe::apply_word_traced(work, gadget.word);
    if (!opt.dot_dir.empty()) write_dot_frames(opt.dot_dir, frames);
    if (opt.trace) {
        for (std::size_t i = 0; i < frames.size(); ++i) {
            std::cout << "# step " << i << "\n" << lhe::serialize(frames[i]);
        }
    } else {
        std::cout << lhe::serialize(frames.back());
    }
    std::cout << "outputs ";
    for (const auto& slot : gadget.output_slots) {
        std::cout << (frames.back().has_edge(slot.first, slot.second) ? '1'
                                                                      : '0');
    }
    std::cout << '\n';
    return kExitOk;
}

struct FlowerOptions {
    unsigned n = 1;
    unsigned m = 1;
    unsigned k = 0;
    std::string dot_path;
};

int run_flower(const FlowerOptions& opt) {
    lhe::FlowerSpec spec{opt.n, opt.m};
    lhe::BicoloredGraph flower = lhe::build_flower(spec);
    if (opt.k == 0) {
        if (!opt.dot_path.empty()) write_file(opt.dot_path, lhe::to_dot(flower));
        std::cout << lhe::serialize(flower);
        return kExitOk;
    }
    lhe::UpdateWord word;
    for (unsigned i = 0; i < opt.k; ++i) word.push_back(spec.center(i));
    lhe::BicoloredGraph after = lhe::apply_word(flower, word);
    if (!opt.dot_path.empty()) write_file(opt.dot_path, lhe::to_dot(after));
    std::cout << lhe::serialize(after);
    lhe::FlowerLemmaReport report = lhe::check_flower_lemma(after, spec, opt.k);
    std::cout << "lemma-applicable " << (spec.lemma_applicable() ? "yes" : "no")
              << '\n'
              << "prefix-flipped " << (report.prefix_flipped ? "yes" : "no")
              << '\n'
              << "petal-links " << (report.petal_links ? "yes" : "no") << '\n'
              << "prefix-path " << (report.prefix_path ? "yes" : "no") << '\n'
              << "no-forward-edges "
              << (report.no_forward_edges ? "yes" : "no") << '\n'
              << "suffix-clique " << (report.suffix_clique ? "yes" : "no")
              << '\n';
    return kExitOk;
}

int run_roundtrip(const std::string& input, bool netlist) {
    const std::string text = read_file(input);
    if (netlist) {
        lhe::ParsedCircuit parsed = lhe::parse_netlist(text);
        std::cout << lhe::print_netlist(parsed.circuit, parsed.assignment);
    } else {
        std::cout << lhe::serialize(lhe::parse_graph_document(text));
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"local homophily on bicolored graphs: simulate, solve, "
                 "compile circuits, verify gadgets"};
    app.require_subcommand(1);

    SimulateOptions sim;
    auto* simulate = app.add_subcommand(
        "simulate", "apply a document's update word and print the result");
    simulate->add_option("input", sim.input, "graph document")->required();
    simulate->add_flag("--trace", sim.trace, "print every intermediate step");
    simulate->add_option("--dot", sim.dot_dir,
                         "write DOT frames frame_%04d.dot to this directory");
    simulate->add_option("--json", sim.json_path, "write final graph as JSON");
    simulate->add_option("--out", sim.out_path, "write output here");

    std::string solve_input;
    auto* solve = app.add_subcommand(
        "solve", "decide whether the target edge exists after the word");
    solve->add_option("input", solve_input, "graph document with word and target")
        ->required();

    CompileOptions comp;
    auto* compile = app.add_subcommand(
        "compile", "compile a monotone circuit netlist to an instance");
    compile->add_option("netlist", comp.netlist, "netlist file")->required();
    compile->add_option("--assignment", comp.assignment_path,
                        "assignment file (name=0|1 per line)");
    compile->add_option("--out", comp.out_path, "write the instance here");
    compile->add_option("--placement", comp.placement_path,
                        "write the placement table here");
    compile->add_flag("--stream", comp.stream, "stream the instance");
    compile->add_flag("--params", comp.params, "print size parameters");
    compile->add_option("--k", comp.k_override,
                        "duplicator flower size (default: bound-derived)")
        ->check(CLI::Range(1, 1000000000));

    GadgetOptions gad;
    auto* gadget = app.add_subcommand("gadget", "emit and verify a gadget");
    gadget->add_option("kind", gad.kind, "or | and | dup")
        ->required()
        ->check(CLI::IsMember({"or", "and", "dup"}));
    gadget->add_option("--k", gad.k, "duplicator flower size (default 5)");
    gadget->add_option("--extra", gad.extra,
                       "pendant -1 neighbors on vertex 0 (dup only)");
    gadget->add_option("--inputs", gad.inputs, "input bits, e.g. 10");
    gadget->add_flag("--trace", gad.trace, "print every step");
    gadget->add_option("--dot", gad.dot_dir, "write DOT frames here");

    FlowerOptions flo;
    auto* flower = app.add_subcommand("flower", "emit a flower graph");
    flower->add_option("--n", flo.n, "center clique size")->required();
    flower->add_option("--m", flo.m, "petal clique size")->required();
    flower->add_option("--k", flo.k,
                       "apply the first k centers and print the report");
    flower->add_option("--dot", flo.dot_path, "write DOT here");

    std::string rt_input;
    bool rt_netlist = false;
    auto* roundtrip = app.add_subcommand(
        "roundtrip", "parse and re-serialize a document canonically");
    roundtrip->add_option("input", rt_input, "file")->required();
    roundtrip->add_flag("--netlist", rt_netlist, "treat input as a netlist");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (simulate->parsed()) return run_simulate(sim);
        if (solve->parsed()) return run_solve(solve_input);
        if (compile->parsed()) return run_compile(comp);
        if (gadget->parsed()) return run_gadget(gad);
        if (flower->parsed()) return run_flower(flo);
        if (roundtrip->parsed()) return run_roundtrip(rt_input, rt_netlist);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    }
    return kExitUsage;
}
