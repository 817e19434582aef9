#pragma once

#include <vector>

#include "chordwise/graph.hpp"
#include "chordwise/vertex_set.hpp"

namespace chordwise {

// Lexicographic breadth-first search. Returns the visit order beginning at
// `start`; ties (equal labels) are broken towards the smallest vertex id.
// The visit order read backwards is a perfect elimination order whenever the
// graph is chordal, i.e. the returned sequence is a reverse elimination
// order: position 0 is eliminated last.
std::vector<int> lex_bfs(const Graph& g, int start);

// True iff `order` is a perfect elimination order: for every vertex, its
// neighbors placed later in `order` form a clique. Throws NotAPermutation if
// `order` is not a permutation of the vertices.
bool is_perfect_elimination(const Graph& g, const std::vector<int>& order);

bool is_chordal(const Graph& g);

// Maximal cliques of a chordal graph, sorted lexicographically by their
// ascending member sequences. Throws NotChordal. A chordal graph has at most
// n maximal cliques.
std::vector<VertexSet> maximal_cliques(const Graph& g);

// Connected components of g with the vertices in `excluded` removed.
// label[v] is the smallest vertex id in v's component, or -1 if v is
// excluded. `count` is the number of components.
struct ComponentLabels {
    std::vector<int> label;
    int count = 0;

    bool same_component(int u, int v) const {
        return label[static_cast<std::size_t>(u)] >= 0 &&
               label[static_cast<std::size_t>(u)] == label[static_cast<std::size_t>(v)];
    }
};

ComponentLabels components_excluding(const Graph& g, const VertexSet& excluded);

// True iff the graph stays chordal after adding one extra vertex adjacent to
// every member of `discrete`. With discrete empty this reduces to chordality.
bool is_strongly_decomposable(const Graph& g, const VertexSet& discrete);

}  // namespace chordwise
