#include "lhe/graph.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace lhe {

namespace {

void require_vertex(const BicoloredGraph& g, VertexId v) {
    if (!g.has_vertex(v)) {
        throw std::invalid_argument("unknown vertex id " + std::to_string(v));
    }
}

bool sorted_contains(const std::vector<VertexId>& xs, VertexId v) {
    return std::binary_search(xs.begin(), xs.end(), v);
}

void sorted_insert(std::vector<VertexId>& xs, VertexId v) {
    xs.insert(std::lower_bound(xs.begin(), xs.end(), v), v);
}

bool sorted_erase(std::vector<VertexId>& xs, VertexId v) {
    auto it = std::lower_bound(xs.begin(), xs.end(), v);
    if (it == xs.end() || *it != v) return false;
    xs.erase(it);
    return true;
}

}  // namespace

std::size_t BicoloredGraph::edge_count() const {
    std::size_t total = 0;
    for (const auto& row : adj_) total += row.size();
    return total / 2;
}

bool BicoloredGraph::has_edge(VertexId u, VertexId v) const {
    if (u >= adj_.size() || v >= adj_.size()) return false;
    if (degree(u) > degree(v)) std::swap(u, v);
    return sorted_contains(adj_[u], v);
}

bool BicoloredGraph::add_edge(VertexId u, VertexId v) {
    require_vertex(*this, u);
    require_vertex(*this, v);
    if (u == v) throw std::invalid_argument("self-loop rejected");
    if (sorted_contains(adj_[u], v)) return false;
    sorted_insert(adj_[u], v);
    sorted_insert(adj_[v], u);
    return true;
}

bool BicoloredGraph::remove_edge(VertexId u, VertexId v) {
    require_vertex(*this, u);
    require_vertex(*this, v);
    if (!sorted_erase(adj_[u], v)) return false;
    sorted_erase(adj_[v], u);
    return true;
}

void BicoloredGraph::add_edge_bulk(VertexId u, VertexId v) {
    require_vertex(*this, u);
    require_vertex(*this, v);
    if (u == v) throw std::invalid_argument("self-loop rejected");
    adj_[u].push_back(v);
    adj_[v].push_back(u);
}

void BicoloredGraph::finish_bulk_edges() {
    for (std::size_t v = 0; v < adj_.size(); ++v) {
        auto& row = adj_[v];
        std::sort(row.begin(), row.end());
        if (std::adjacent_find(row.begin(), row.end()) != row.end()) {
            throw std::invalid_argument("duplicate edge at vertex " +
                                        std::to_string(v));
        }
    }
}

void apply_phi_in_place(BicoloredGraph& g, VertexId v) {
    require_vertex(g, v);

    // Snapshot the old neighborhood; v's own list is never touched below.
    const std::vector<VertexId> nbhd(g.neighbors(v).begin(),
                                     g.neighbors(v).end());

    long long sum = 0;
    for (VertexId u : nbhd) sum += color_value(g.color(u));

    // Split N(v) by (old) color; colors of u != v do not change.
    std::vector<VertexId> plus, minus;
    plus.reserve(nbhd.size());
    minus.reserve(nbhd.size());
    for (VertexId u : nbhd) {
        (g.color(u) == Color::plus_one ? plus : minus).push_back(u);
    }

    // Each x in N(v) keeps its edges outside N(v) and ends adjacent exactly
    // to its same-colored fellows inside N(v).
    std::vector<VertexId> merged;
    for (VertexId x : nbhd) {
        const auto& group = g.color(x) == Color::plus_one ? plus : minus;
        const auto old_row = g.neighbors(x);
        merged.clear();
        merged.reserve(old_row.size() + group.size());
        auto it_old = old_row.begin();
        auto it_grp = group.begin();
        // Merge: old neighbors not in N(v), plus the group minus x itself.
        while (it_old != old_row.end() || it_grp != group.end()) {
            if (it_grp == group.end() ||
                (it_old != old_row.end() && *it_old < *it_grp)) {
                if (!std::binary_search(nbhd.begin(), nbhd.end(), *it_old)) {
                    merged.push_back(*it_old);
                }
                ++it_old;
            } else if (it_old == old_row.end() || *it_grp < *it_old) {
                if (*it_grp != x) merged.push_back(*it_grp);
                ++it_grp;
            } else {  // equal: old neighbor that stays in the same group
                if (*it_grp != x) merged.push_back(*it_grp);
                ++it_old;
                ++it_grp;
            }
        }
        g.replace_neighbors_unsafe(x, merged);
    }

    if (sum != 0) {
        g.set_color(v, sum > 0 ? Color::plus_one : Color::minus_one);
    }
}

BicoloredGraph apply_phi(const BicoloredGraph& g, VertexId v) {
    BicoloredGraph out = g;
    apply_phi_in_place(out, v);
    return out;
}

BicoloredGraph apply_word(const BicoloredGraph& g, const UpdateWord& word) {
    BicoloredGraph out = g;
    for (VertexId v : word) apply_phi_in_place(out, v);
    return out;
}

std::vector<BicoloredGraph> apply_word_traced(const BicoloredGraph& g,
                                              const UpdateWord& word) {
    std::vector<BicoloredGraph> trace;
    trace.reserve(word.size() + 1);
    trace.push_back(g);
    for (VertexId v : word) {
        trace.push_back(apply_phi(trace.back(), v));
    }
    return trace;
}

void validate_instance(const LheInstance& instance) {
    require_vertex(instance.graph, instance.s);
    require_vertex(instance.graph, instance.t);
    if (instance.s == instance.t) {
        throw std::invalid_argument("instance requires s != t");
    }
    for (VertexId v : instance.word) require_vertex(instance.graph, v);
}

bool solve_lhe(const LheInstance& instance) {
    validate_instance(instance);
    BicoloredGraph final_graph = apply_word(instance.graph, instance.word);
    return final_graph.has_edge(instance.s, instance.t);
}

}  // namespace lhe
