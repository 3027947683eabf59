#include "doctest.h"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "lhe/flower.hpp"
#include "lhe/graph.hpp"
#include "support/oracles.hpp"

using namespace lhe;
using lhe::testing::MatrixGraph;
using lhe::testing::naive_phi;
using lhe::testing::random_graph;

namespace {

// Structural sanity: symmetric sorted adjacency, no self-loops.
void check_well_formed(const BicoloredGraph& g) {
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        VertexId prev = 0;
        bool first = true;
        for (VertexId u : g.neighbors(v)) {
            CHECK(u != v);
            if (!first) CHECK(prev < u);
            prev = u;
            first = false;
            CHECK(g.has_edge(u, v));
        }
    }
}

BicoloredGraph star_k13(Color center, Color l1, Color l2, Color l3) {
    BicoloredGraph g(4);
    g.set_color(0, center);
    g.set_color(1, l1);
    g.set_color(2, l2);
    g.set_color(3, l3);
    g.add_edge(0, 1);
    g.add_edge(0, 2);
    g.add_edge(0, 3);
    return g;
}

}  // namespace

TEST_CASE("apply_phi on an isolated vertex changes nothing") {
    BicoloredGraph g(3);
    g.set_color(1, Color::plus_one);
    g.add_edge(1, 2);
    BicoloredGraph out = apply_phi(g, 0);  // vertex 0 has no neighbors
    CHECK(graph_equal(out, g));
}

TEST_CASE("apply_phi at a flower center flips it on the first step") {
    // F_{6,8}: center 0 has 5 same-colored center neighbors and 8 opposite
    // petal neighbors, so the majority is -1 and the color flips.
    BicoloredGraph g = build_flower(FlowerSpec{6, 8});
    CHECK(g.color(0) == Color::plus_one);
    BicoloredGraph out = apply_phi(g, 0);
    CHECK(out.color(0) == Color::minus_one);
}

TEST_CASE("apply_phi on the K_{1,3} star rewires leaves by color") {
    BicoloredGraph g = star_k13(Color::plus_one, Color::plus_one,
                                Color::plus_one, Color::minus_one);
    BicoloredGraph out = apply_phi(g, 0);
    CHECK(out.color(0) == Color::plus_one);  // sum = +1
    CHECK(out.has_edge(1, 2));               // same-colored leaves join
    CHECK(!out.has_edge(1, 3));
    CHECK(!out.has_edge(2, 3));
    // edges at the center itself are untouched
    for (VertexId leaf : {1u, 2u, 3u}) CHECK(out.has_edge(0, leaf));

    // cross-check against the brute-force oracle
    MatrixGraph expect = naive_phi(MatrixGraph::from(g), 0);
    CHECK(graph_equal(out, expect.to_graph()));
}

TEST_CASE("zero-sum ties keep the old color") {
    BicoloredGraph g(3);
    g.set_color(0, Color::plus_one);
    g.set_color(1, Color::plus_one);
    g.set_color(2, Color::minus_one);
    g.add_edge(0, 1);
    g.add_edge(0, 2);
    BicoloredGraph out = apply_phi(g, 0);  // +1 -1 = 0
    CHECK(out.color(0) == Color::plus_one);

    g.set_color(0, Color::minus_one);
    out = apply_phi(g, 0);
    CHECK(out.color(0) == Color::minus_one);
}

TEST_CASE("apply_phi matches the brute-force oracle on random graphs") {
    std::mt19937 rng(20260809);
    std::uniform_int_distribution<std::size_t> size(1, 6);
    for (int iter = 0; iter < 2000; ++iter) {
        BicoloredGraph g = random_graph(rng, size(rng));
        std::uniform_int_distribution<VertexId> pick(
            0, static_cast<VertexId>(g.vertex_count() - 1));
        VertexId v = pick(rng);
        BicoloredGraph fast = apply_phi(g, v);
        MatrixGraph slow = naive_phi(MatrixGraph::from(g), v);
        CHECK(graph_equal(fast, slow.to_graph()));
        check_well_formed(fast);
    }
}

TEST_CASE("apply_phi changes only v's color and edges inside old N(v)") {
    std::mt19937 rng(7);
    for (int iter = 0; iter < 300; ++iter) {
        BicoloredGraph g = random_graph(rng, 8, 0.4);
        std::uniform_int_distribution<VertexId> pick(0, 7);
        VertexId v = pick(rng);
        std::vector<VertexId> nbhd(g.neighbors(v).begin(),
                                   g.neighbors(v).end());
        auto in_nbhd = [&](VertexId x) {
            return std::find(nbhd.begin(), nbhd.end(), x) != nbhd.end();
        };
        BicoloredGraph out = apply_phi(g, v);
        CHECK(out.vertex_count() == g.vertex_count());
        for (VertexId u = 0; u < 8; ++u) {
            if (u != v) CHECK(out.color(u) == g.color(u));
            for (VertexId w = u + 1; w < 8; ++w) {
                if (!(in_nbhd(u) && in_nbhd(w))) {
                    CHECK(out.has_edge(u, w) == g.has_edge(u, w));
                }
            }
        }
        // the rewired neighborhood splits into two cliques by color
        for (VertexId u : nbhd) {
            for (VertexId w : nbhd) {
                if (u < w) {
                    CHECK(out.has_edge(u, w) == (g.color(u) == g.color(w)));
                }
            }
        }
    }
}

TEST_CASE("apply_word folds left to right; empty word is the identity") {
    std::mt19937 rng(99);
    BicoloredGraph g = random_graph(rng, 7);
    CHECK(graph_equal(apply_word(g, {}), g));

    UpdateWord word = {3, 1, 4, 1, 5};
    BicoloredGraph manual = g;
    for (VertexId v : word) manual = apply_phi(manual, v);
    CHECK(graph_equal(apply_word(g, word), manual));

    // determinism: equal inputs, equal outputs
    CHECK(graph_equal(apply_word(g, word), apply_word(g, word)));
}

TEST_CASE("apply_word_traced covers every step") {
    std::mt19937 rng(5);
    BicoloredGraph g = random_graph(rng, 6);
    CHECK(apply_word_traced(g, {}).size() == 1);
    CHECK(graph_equal(apply_word_traced(g, {})[0], g));

    UpdateWord word = {0, 2, 4};
    auto trace = apply_word_traced(g, word);
    REQUIRE(trace.size() == word.size() + 1);
    CHECK(graph_equal(trace.front(), g));
    CHECK(graph_equal(trace.back(), apply_word(g, word)));
    for (std::size_t i = 0; i < word.size(); ++i) {
        CHECK(graph_equal(trace[i + 1], apply_phi(trace[i], word[i])));
    }
}

TEST_CASE("unknown vertices are rejected") {
    BicoloredGraph g(3);
    CHECK_THROWS_AS(apply_phi(g, 3), std::invalid_argument);
    CHECK_THROWS_AS(apply_word(g, {0, 7}), std::invalid_argument);
    CHECK_THROWS_AS(g.add_edge(0, 5), std::invalid_argument);
    CHECK_THROWS_AS(g.add_edge(1, 1), std::invalid_argument);
}

TEST_CASE("graph_equal is identity comparison") {
    BicoloredGraph g(3);
    g.add_edge(0, 1);
    BicoloredGraph same = g;
    CHECK(graph_equal(g, same));

    BicoloredGraph recolored = g;
    recolored.set_color(2, Color::plus_one);
    CHECK(!graph_equal(g, recolored));

    BicoloredGraph rewired = g;
    rewired.add_edge(1, 2);
    CHECK(!graph_equal(g, rewired));
}

TEST_CASE("solve_lhe answers edge presence after the word") {
    BicoloredGraph g(4);
    g.add_edge(0, 1);
    CHECK(solve_lhe(LheInstance{g, 0, 1, {}}));
    CHECK(!solve_lhe(LheInstance{g, 0, 2, {}}));

    LheInstance bad{g, 2, 2, {}};
    CHECK_THROWS_AS(solve_lhe(bad), std::invalid_argument);
    LheInstance bad_word{g, 0, 1, {9}};
    CHECK_THROWS_AS(solve_lhe(bad_word), std::invalid_argument);
}
