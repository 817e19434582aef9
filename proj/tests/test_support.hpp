#pragma once

#include <algorithm>
#include <random>
#include <utility>
#include <vector>

#include "chordwise/graph.hpp"
#include "chordwise/vertex_set.hpp"

namespace chordwise::test {

inline Graph make_graph(int n, const std::vector<std::pair<int, int>>& edges) {
    Graph g(n);
    for (auto [u, v] : edges) g.add_edge(u, v);
    return g;
}

inline Graph path_graph(int n) {
    Graph g(n);
    for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
    return g;
}

inline Graph cycle_graph(int n) {
    Graph g = path_graph(n);
    if (n >= 3) g.add_edge(n - 1, 0);
    return g;
}

// Star with the given center; every other vertex is a leaf.
inline Graph star_graph(int n, int center) {
    Graph g(n);
    for (int v = 0; v < n; ++v)
        if (v != center) g.add_edge(center, v);
    return g;
}

inline Graph random_graph(std::mt19937_64& rng, int n, double p) {
    Graph g(n);
    std::bernoulli_distribution coin(p);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (coin(rng)) g.add_edge(u, v);
    return g;
}

// Chordality by definition: no vertex subset induces a chordless cycle of
// length >= 4. A subset induces one exactly when the induced subgraph is
// connected and 2-regular. Exponential; for cross-checking small graphs only.
inline bool brute_is_chordal(const Graph& g) {
    int n = g.vertex_count();
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        if (__builtin_popcount(mask) < 4) continue;
        std::vector<int> vs;
        for (int v = 0; v < n; ++v)
            if (mask & (1u << v)) vs.push_back(v);
        bool two_regular = true;
        for (int u : vs) {
            int deg = 0;
            for (int v : vs)
                if (g.has_edge(u, v)) ++deg;
            if (deg != 2) {
                two_regular = false;
                break;
            }
        }
        if (!two_regular) continue;
        // Connected 2-regular induced subgraph = induced cycle.
        std::vector<int> stack{vs[0]};
        VertexSet seen(n);
        seen.insert(vs[0]);
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int v : vs)
                if (g.has_edge(u, v) && !seen.contains(v)) {
                    seen.insert(v);
                    stack.push_back(v);
                }
        }
        if (static_cast<std::size_t>(seen.size()) == vs.size()) return false;
    }
    return true;
}

// All maximal cliques by subset enumeration; sorted lexicographically.
inline std::vector<VertexSet> brute_cliques(const Graph& g) {
    int n = g.vertex_count();
    std::vector<VertexSet> complete;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::vector<int> vs;
        for (int v = 0; v < n; ++v)
            if (mask & (1u << v)) vs.push_back(v);
        bool ok = true;
        for (std::size_t i = 0; i < vs.size() && ok; ++i)
            for (std::size_t j = i + 1; j < vs.size() && ok; ++j)
                if (!g.has_edge(vs[i], vs[j])) ok = false;
        if (!ok) continue;
        VertexSet s(n);
        for (int v : vs) s.insert(v);
        complete.push_back(s);
    }
    std::vector<VertexSet> maximal;
    for (const VertexSet& c : complete) {
        bool contained = false;
        for (const VertexSet& d : complete)
            if (c != d && c.is_subset_of(d)) contained = true;
        if (!contained) maximal.push_back(c);
    }
    std::sort(maximal.begin(), maximal.end());
    return maximal;
}

inline std::vector<std::pair<int, int>> pairs_of(const std::vector<int>& a,
                                                 const std::vector<int>& b) {
    std::vector<std::pair<int, int>> out;
    for (int x : a)
        for (int y : b) out.emplace_back(std::min(x, y), std::max(x, y));
    return out;
}

inline VertexSet vs_of(int n, std::initializer_list<int> members) {
    VertexSet s(n);
    for (int v : members) s.insert(v);
    return s;
}

}  // namespace chordwise::test
