#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include "lhe/graph.hpp"

namespace lhe {

/// Thrown on malformed graph documents and netlists; line() is 1-based,
/// 0 for document-level problems with no specific line.
class parse_error : public std::runtime_error {
public:
    parse_error(std::size_t line, const std::string& message)
        : std::runtime_error(
              line == 0 ? message
                        : "line " + std::to_string(line) + ": " + message),
          line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// A graph document: the graph plus the optional word and target sections.
struct GraphDocument {
    BicoloredGraph graph;
    std::optional<UpdateWord> word;
    std::optional<std::pair<VertexId, VertexId>> target;
};

/// Canonical text form. Sorted vertices and edges, one grammar, no
/// environment-dependent bytes: serializing equal documents yields equal
/// strings. See docs/formats.md for the grammar.
std::string serialize(const GraphDocument& doc);
std::string serialize(const BicoloredGraph& graph);
void serialize_to(std::ostream& out, const GraphDocument& doc);

GraphDocument parse_graph_document(std::string_view text);

/// Builds an LheInstance from a document carrying word and target sections.
/// Throws parse_error when either section is missing.
LheInstance instance_from_document(const GraphDocument& doc);
GraphDocument document_from_instance(const LheInstance& instance);

/// DOT export (export-only): +1 vertices filled white, -1 filled gray,
/// deterministic vertex order.
std::string to_dot(const BicoloredGraph& graph, std::string_view name = "lhe");

/// JSON export (export-only).
std::string to_json(const GraphDocument& doc);

}  // namespace lhe
