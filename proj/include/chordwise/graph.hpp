#pragma once

#include <cassert>
#include <string>
#include <utility>
#include <vector>

#include "chordwise/vertex_set.hpp"

namespace chordwise {

// Simple undirected graph on vertices [0, n) with bitset adjacency rows.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n) : n_(n), adj_(static_cast<std::size_t>(n), VertexSet(n)) {}

    static Graph complete(int n) {
        Graph g(n);
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
        return g;
    }

    int vertex_count() const { return n_; }
    int edge_count() const { return m_; }

    bool has_edge(int u, int v) const {
        assert(u >= 0 && u < n_ && v >= 0 && v < n_);
        if (u == v) return false;
        return adj_[static_cast<std::size_t>(u)].contains(v);
    }

    void add_edge(int u, int v) {
        assert(u != v && !has_edge(u, v));
        adj_[static_cast<std::size_t>(u)].insert(v);
        adj_[static_cast<std::size_t>(v)].insert(u);
        ++m_;
    }

    void remove_edge(int u, int v) {
        assert(has_edge(u, v));
        adj_[static_cast<std::size_t>(u)].erase(v);
        adj_[static_cast<std::size_t>(v)].erase(u);
        --m_;
    }

    const VertexSet& neighbors(int v) const {
        assert(v >= 0 && v < n_);
        return adj_[static_cast<std::size_t>(v)];
    }

    int degree(int v) const { return neighbors(v).size(); }

    // Edges in ascending (u, v) order with u < v.
    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> out;
        out.reserve(static_cast<std::size_t>(m_));
        for (int u = 0; u < n_; ++u)
            for (int v = adj_[static_cast<std::size_t>(u)].next(u); v >= 0;
                 v = adj_[static_cast<std::size_t>(u)].next(v))
                out.emplace_back(u, v);
        return out;
    }

    bool operator==(const Graph& o) const { return n_ == o.n_ && m_ == o.m_ && adj_ == o.adj_; }
    bool operator!=(const Graph& o) const { return !(*this == o); }

    // Canonical textual encoding of the edge set; used as a loop-guard key.
    std::string edge_signature() const {
        std::string s = std::to_string(n_) + ":";
        for (auto [u, v] : edges()) {
            s += std::to_string(u);
            s += '-';
            s += std::to_string(v);
            s += ';';
        }
        return s;
    }

private:
    int n_ = 0;
    int m_ = 0;
    std::vector<VertexSet> adj_;
};

}  // namespace chordwise
