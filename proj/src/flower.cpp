#include "lhe/flower.hpp"

#include <stdexcept>

namespace lhe {

namespace {

void require_spec(const FlowerSpec& spec) {
    if (spec.n == 0 || spec.m == 0) {
        throw std::invalid_argument("flower requires n >= 1 and m >= 1");
    }
}

}  // namespace

void paint_flower_colors(BicoloredGraph& graph, VertexId base,
                         const FlowerSpec& spec) {
    for (unsigned i = 0; i < spec.n; ++i) {
        graph.set_color(base + spec.center(i), Color::plus_one);
        for (unsigned j = 0; j < spec.m; ++j) {
            graph.set_color(base + spec.petal(i, j), Color::minus_one);
        }
    }
}

void add_flower_edges(BicoloredGraph& graph, VertexId base,
                      const FlowerSpec& spec) {
    for (unsigned i = 0; i < spec.n; ++i) {
        for (unsigned j = i + 1; j < spec.n; ++j) {
            graph.add_edge_bulk(base + spec.center(i), base + spec.center(j));
        }
    }
    for (unsigned i = 0; i < spec.n; ++i) {
        for (unsigned j = 0; j < spec.m; ++j) {
            graph.add_edge_bulk(base + spec.center(i), base + spec.petal(i, j));
            for (unsigned l = j + 1; l < spec.m; ++l) {
                graph.add_edge_bulk(base + spec.petal(i, j),
                                    base + spec.petal(i, l));
            }
        }
    }
}

BicoloredGraph build_flower(const FlowerSpec& spec) {
    require_spec(spec);
    BicoloredGraph graph(spec.vertex_count());
    paint_flower_colors(graph, 0, spec);
    add_flower_edges(graph, 0, spec);
    graph.finish_bulk_edges();
    return graph;
}

FlowerLemmaReport check_flower_lemma(const BicoloredGraph& graph,
                                     const FlowerSpec& spec, unsigned k) {
    require_spec(spec);
    if (k == 0 || k > spec.n) {
        throw std::invalid_argument("flower lemma requires 0 < k <= n");
    }

    FlowerLemmaReport report;

    report.prefix_flipped = true;
    for (unsigned i = 0; i < k; ++i) {
        report.prefix_flipped &=
            graph.color(spec.center(i)) == Color::minus_one;
    }

    report.petal_links = true;
    for (unsigned i = 0; i + 1 < k; ++i) {
        for (unsigned j = 0; j < spec.m; ++j) {
            report.petal_links &=
                graph.has_edge(spec.center(i), spec.petal(i + 1, j));
        }
    }

    report.prefix_path = true;
    for (unsigned i = 0; i < k; ++i) {
        for (unsigned j = i + 1; j < k; ++j) {
            bool expect = (j == i + 1);
            report.prefix_path &=
                graph.has_edge(spec.center(i), spec.center(j)) == expect;
        }
    }

    report.no_forward_edges = true;
    for (unsigned i = 0; i + 1 < k; ++i) {
        for (unsigned j = k; j < spec.n; ++j) {
            report.no_forward_edges &=
                !graph.has_edge(spec.center(i), spec.center(j));
        }
    }

    report.suffix_clique = true;
    for (unsigned i = k - 1; i < spec.n; ++i) {
        for (unsigned j = i + 1; j < spec.n; ++j) {
            report.suffix_clique &=
                graph.has_edge(spec.center(i), spec.center(j));
        }
    }

    return report;
}

}  // namespace lhe
