#include "chordwise/chordal.hpp"

#include <algorithm>
#include <list>

#include "chordwise/errors.hpp"

namespace chordwise {

std::vector<int> lex_bfs(const Graph& g, int start) {
    const int n = g.vertex_count();
    assert(n >= 1 && start >= 0 && start < n);

    // Partition refinement. All vertices in one class share the same label
    // with respect to the already visited vertices; classes are kept in
    // decreasing label order and each class stays in ascending id order, so
    // the front vertex of the front class is the unique lex-BFS choice with
    // smallest-id tie-breaking.
    std::list<std::vector<int>> classes;
    if (n > 1) {
        std::vector<int> rest;
        rest.reserve(static_cast<std::size_t>(n) - 1);
        for (int v = 0; v < n; ++v)
            if (v != start) rest.push_back(v);
        classes.push_back(std::move(rest));
    }
    classes.push_front({start});

    std::vector<int> order;
    order.reserve(static_cast<std::size_t>(n));
    while (!classes.empty()) {
        std::vector<int>& front = classes.front();
        int v = front.front();
        front.erase(front.begin());
        if (front.empty()) classes.pop_front();
        order.push_back(v);

        const VertexSet& nb = g.neighbors(v);
        for (auto it = classes.begin(); it != classes.end(); ++it) {
            std::vector<int> in, out;
            for (int u : *it) (nb.contains(u) ? in : out).push_back(u);
            if (in.empty() || out.empty()) continue;
            *it = std::move(out);
            classes.insert(it, std::move(in));
        }
    }
    return order;
}

bool is_perfect_elimination(const Graph& g, const std::vector<int>& order) {
    const int n = g.vertex_count();
    if (static_cast<int>(order.size()) != n)
        throw NotAPermutation("elimination order has wrong length");
    std::vector<int> pos(static_cast<std::size_t>(n), -1);
    for (int i = 0; i < n; ++i) {
        int v = order[static_cast<std::size_t>(i)];
        if (v < 0 || v >= n || pos[static_cast<std::size_t>(v)] != -1)
            throw NotAPermutation("elimination order is not a permutation of the vertices");
        pos[static_cast<std::size_t>(v)] = i;
    }

    // For each vertex v, let L be its later-ordered neighbors and u the
    // earliest of them; checking L \ {u} ⊆ N(u) for every v is equivalent to
    // every L being a clique (induction backwards along the order).
    VertexSet remaining(n);
    for (int v = 0; v < n; ++v) remaining.insert(v);
    for (int i = 0; i < n; ++i) {
        int v = order[static_cast<std::size_t>(i)];
        remaining.erase(v);
        VertexSet later = g.neighbors(v) & remaining;
        if (later.empty()) continue;
        int u = -1, best = n + 1;
        later.for_each([&](int w) {
            if (pos[static_cast<std::size_t>(w)] < best) {
                best = pos[static_cast<std::size_t>(w)];
                u = w;
            }
        });
        later.erase(u);
        if (!later.is_subset_of(g.neighbors(u))) return false;
    }
    return true;
}

bool is_chordal(const Graph& g) {
    if (g.vertex_count() == 0) return true;
    std::vector<int> visit = lex_bfs(g, 0);
    std::reverse(visit.begin(), visit.end());
    return is_perfect_elimination(g, visit);
}

std::vector<VertexSet> maximal_cliques(const Graph& g) {
    const int n = g.vertex_count();
    if (n == 0) return {};
    if (!is_chordal(g)) throw NotChordal("maximal_cliques requires a chordal graph");

    std::vector<int> elim = lex_bfs(g, 0);
    std::reverse(elim.begin(), elim.end());

    // Candidate cliques: each vertex together with its later-ordered
    // neighbors. Candidates are pairwise distinct; drop the non-maximal ones.
    std::vector<VertexSet> cand;
    cand.reserve(static_cast<std::size_t>(n));
    VertexSet remaining(n);
    for (int v = 0; v < n; ++v) remaining.insert(v);
    for (int v : elim) {
        remaining.erase(v);
        cand.push_back((g.neighbors(v) & remaining).plus(v));
    }

    std::vector<VertexSet> out;
    for (std::size_t i = 0; i < cand.size(); ++i) {
        bool subsumed = false;
        for (std::size_t j = 0; j < cand.size() && !subsumed; ++j)
            if (i != j && cand[i].is_proper_subset_of(cand[j])) subsumed = true;
        if (!subsumed) out.push_back(cand[i]);
    }
    std::sort(out.begin(), out.end());
    return out;
}

ComponentLabels components_excluding(const Graph& g, const VertexSet& excluded) {
    const int n = g.vertex_count();
    ComponentLabels cl;
    cl.label.assign(static_cast<std::size_t>(n), -1);
    std::vector<int> stack;
    for (int s = 0; s < n; ++s) {
        if (excluded.contains(s) || cl.label[static_cast<std::size_t>(s)] != -1) continue;
        // s is the smallest vertex of its component: all smaller vertices are
        // excluded or already labeled.
        ++cl.count;
        cl.label[static_cast<std::size_t>(s)] = s;
        stack.push_back(s);
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            g.neighbors(v).for_each([&](int u) {
                if (!excluded.contains(u) && cl.label[static_cast<std::size_t>(u)] == -1) {
                    cl.label[static_cast<std::size_t>(u)] = s;
                    stack.push_back(u);
                }
            });
        }
    }
    return cl;
}

bool is_strongly_decomposable(const Graph& g, const VertexSet& discrete) {
    const int n = g.vertex_count();
    assert(discrete.universe() == n);
    Graph aug(n + 1);
    for (auto [u, v] : g.edges()) aug.add_edge(u, v);
    discrete.for_each([&](int v) { aug.add_edge(v, n); });
    return is_chordal(aug);
}

}  // namespace chordwise
