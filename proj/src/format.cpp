#include "lhe/format.hpp"

#include <ostream>
#include <sstream>
#include <vector>

#include "json.hpp"
#include "line_scanner.hpp"

namespace lhe {

namespace {

using detail::LineScanner;
using detail::parse_number;

VertexId parse_vertex(const LineScanner& sc, std::string_view token,
                      std::size_t n) {
    if (n == 0) throw parse_error(sc.line(), "vertex id in an empty graph");
    return static_cast<VertexId>(parse_number(sc, token, n - 1));
}

Color parse_color(const LineScanner& sc, std::string_view token) {
    if (token == "+1") return Color::plus_one;
    if (token == "-1") return Color::minus_one;
    throw parse_error(sc.line(),
                      "expected color +1 or -1, got '" + std::string(token) + "'");
}

}  // namespace

void serialize_to(std::ostream& out, const GraphDocument& doc) {
    const BicoloredGraph& g = doc.graph;
    const std::size_t n = g.vertex_count();
    out << "graph " << n << '\n';
    for (std::size_t v = 0; v < n; ++v) {
        out << v << ' '
            << (g.color(static_cast<VertexId>(v)) == Color::plus_one ? "+1"
                                                                     : "-1")
            << '\n';
    }
    out << "edges " << g.edge_count() << '\n';
    for (std::size_t u = 0; u < n; ++u) {
        for (VertexId v : g.neighbors(static_cast<VertexId>(u))) {
            if (v > u) out << u << ' ' << v << '\n';
        }
    }
    if (doc.word) {
        out << "word " << doc.word->size() << '\n';
        if (!doc.word->empty()) {
            for (std::size_t i = 0; i < doc.word->size(); ++i) {
                out << (i ? " " : "") << (*doc.word)[i];
            }
            out << '\n';
        }
    }
    if (doc.target) {
        out << "target " << doc.target->first << ' ' << doc.target->second
            << '\n';
    }
}

std::string serialize(const GraphDocument& doc) {
    std::ostringstream out;
    serialize_to(out, doc);
    return std::move(out).str();
}

std::string serialize(const BicoloredGraph& graph) {
    return serialize(GraphDocument{graph, std::nullopt, std::nullopt});
}

GraphDocument parse_graph_document(std::string_view text) {
    LineScanner sc(text);

    auto tokens = sc.next();
    if (tokens.empty()) throw parse_error(sc.line() + 1, "empty document");
    if (tokens.size() != 2 || tokens[0] != "graph") {
        throw parse_error(sc.line(), "expected header 'graph <n>'");
    }
    const auto n =
        static_cast<std::size_t>(parse_number(sc, tokens[1], 100'000'000));

    std::vector<Color> colors(n, Color::minus_one);
    for (std::size_t i = 0; i < n; ++i) {
        tokens = sc.next();
        if (tokens.size() != 2) {
            throw parse_error(sc.line(), "expected vertex record '<id> <color>'");
        }
        if (parse_number(sc, tokens[0], n - 1) != i) {
            throw parse_error(sc.line(), "vertex ids must be 0.." +
                                             std::to_string(n - 1) +
                                             " in ascending order");
        }
        colors[i] = parse_color(sc, tokens[1]);
    }

    GraphDocument doc;
    doc.graph = BicoloredGraph(std::move(colors));

    tokens = sc.next();
    if (tokens.size() != 2 || tokens[0] != "edges") {
        throw parse_error(sc.line(), "expected 'edges <m>'");
    }
    const auto m = parse_number(sc, tokens[1], 10'000'000'000ULL);
    for (std::uint64_t i = 0; i < m; ++i) {
        tokens = sc.next();
        if (tokens.size() != 2) {
            throw parse_error(sc.line(), "expected edge '<u> <v>'");
        }
        VertexId u = parse_vertex(sc, tokens[0], n);
        VertexId v = parse_vertex(sc, tokens[1], n);
        if (u == v) throw parse_error(sc.line(), "self-loop rejected");
        if (!doc.graph.add_edge(u, v)) {
            throw parse_error(sc.line(), "duplicate edge");
        }
    }

    tokens = sc.next();
    if (!tokens.empty() && tokens[0] == "word") {
        if (tokens.size() != 2) throw parse_error(sc.line(), "expected 'word <len>'");
        const auto len = parse_number(sc, tokens[1], 1'000'000'000ULL);
        UpdateWord word;
        word.reserve(len);
        if (len > 0) {
            tokens = sc.next();
            if (tokens.size() != len) {
                throw parse_error(sc.line(), "expected " + std::to_string(len) +
                                                 " word entries on one line");
            }
            for (auto tok : tokens) word.push_back(parse_vertex(sc, tok, n));
        }
        doc.word = std::move(word);
        tokens = sc.next();
    }

    if (!tokens.empty() && tokens[0] == "target") {
        if (tokens.size() != 3) {
            throw parse_error(sc.line(), "expected 'target <s> <t>'");
        }
        VertexId s = parse_vertex(sc, tokens[1], n);
        VertexId t = parse_vertex(sc, tokens[2], n);
        if (s == t) throw parse_error(sc.line(), "target requires s != t");
        doc.target = {s, t};
        tokens = sc.next();
    }

    if (!tokens.empty()) {
        throw parse_error(sc.line(),
                          "unexpected content '" + std::string(tokens[0]) + "'");
    }
    return doc;
}

LheInstance instance_from_document(const GraphDocument& doc) {
    if (!doc.word) throw parse_error(0, "document has no word section");
    if (!doc.target) throw parse_error(0, "document has no target section");
    return LheInstance{doc.graph, doc.target->first, doc.target->second,
                       *doc.word};
}

GraphDocument document_from_instance(const LheInstance& instance) {
    return GraphDocument{instance.graph, instance.word,
                         std::make_pair(instance.s, instance.t)};
}

std::string to_dot(const BicoloredGraph& graph, std::string_view name) {
    std::ostringstream out;
    out << "graph " << name << " {\n";
    out << "  node [style=filled];\n";
    for (std::size_t v = 0; v < graph.vertex_count(); ++v) {
        out << "  " << v << " [fillcolor="
            << (graph.color(static_cast<VertexId>(v)) == Color::plus_one
                    ? "white"
                    : "gray")
            << "];\n";
    }
    for (std::size_t u = 0; u < graph.vertex_count(); ++u) {
        for (VertexId v : graph.neighbors(static_cast<VertexId>(u))) {
            if (v > u) out << "  " << u << " -- " << v << ";\n";
        }
    }
    out << "}\n";
    return std::move(out).str();
}

std::string to_json(const GraphDocument& doc) {
    nlohmann::json j;
    const BicoloredGraph& g = doc.graph;
    j["vertices"] = g.vertex_count();
    auto colors = nlohmann::json::array();
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        colors.push_back(color_value(g.color(static_cast<VertexId>(v))));
    }
    j["colors"] = std::move(colors);
    auto edges = nlohmann::json::array();
    for (std::size_t u = 0; u < g.vertex_count(); ++u) {
        for (VertexId v : g.neighbors(static_cast<VertexId>(u))) {
            if (v > u) edges.push_back({u, v});
        }
    }
    j["edges"] = std::move(edges);
    if (doc.word) j["word"] = *doc.word;
    if (doc.target) j["target"] = {doc.target->first, doc.target->second};
    return j.dump(2) + "\n";
}

}  // namespace lhe
