#pragma once

#include <cstdint>
#include <list>
#include <map>
#include <set>
#include <tuple>
#include <utility>
#include <vector>

#include "chordwise/chordal.hpp"
#include "chordwise/graph.hpp"
#include "chordwise/vertex_set.hpp"

namespace chordwise {

// Stable clique identifier. Ids are assigned monotonically by a CliqueGraph
// and never reused, so handles held elsewhere stay unambiguous across
// incremental updates.
using CliqueId = std::int32_t;

// Unordered clique pair stored as (smaller id, larger id).
using EdgeKey = std::pair<CliqueId, CliqueId>;

inline EdgeKey make_edge_key(CliqueId a, CliqueId b) {
    return a < b ? EdgeKey{a, b} : EdgeKey{b, a};
}

// Binary trie keyed by the n-bit membership string of a separator, vertex 0
// at the root. Each leaf holds the clique-graph edges carrying that
// separator; insertion prepends, removal is O(1) through the handle returned
// at insert time, lookup walks n levels.
class SeparatorIndex {
public:
    struct Handle {
        int leaf = -1;
        std::list<EdgeKey>::iterator it;
    };

    explicit SeparatorIndex(int universe) : universe_(universe) { nodes_.emplace_back(); }

    Handle insert(const VertexSet& sep, EdgeKey e);
    void remove(const Handle& h);

    // Edges whose separator equals `sep`, most recently inserted first.
    // Null when no edge with this separator exists.
    const std::list<EdgeKey>* lookup(const VertexSet& sep) const;

private:
    struct Node {
        int child[2] = {-1, -1};
        std::list<EdgeKey> edges;  // populated at leaves only
    };

    int universe_;
    std::vector<Node> nodes_;
};

// The clique graph of a chordal graph g: one node per maximal clique, and an
// edge between two cliques exactly when their intersection separates the two
// residuals in g. Every edge stores its separator (the intersection of its
// endpoints) and is registered in a SeparatorIndex.
class CliqueGraph {
public:
    struct EdgeData {
        VertexSet separator;
        SeparatorIndex::Handle index_handle;
    };

    explicit CliqueGraph(int universe) : universe_(universe), index_(universe) {}

    // Builds the clique graph from scratch. Clique ids are assigned 0..k-1 in
    // lexicographic clique order. Throws NotChordal.
    static CliqueGraph build(const Graph& g);

    int universe() const { return universe_; }
    int node_count() const { return static_cast<int>(nodes_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    const std::map<CliqueId, VertexSet>& nodes() const { return nodes_; }
    const std::map<EdgeKey, EdgeData>& edges() const { return edges_; }

    bool has_node(CliqueId c) const { return nodes_.count(c) != 0; }
    bool has_edge(CliqueId a, CliqueId b) const { return edges_.count(make_edge_key(a, b)) != 0; }

    const VertexSet& clique(CliqueId c) const;
    const VertexSet& separator(CliqueId a, CliqueId b) const;
    const std::set<CliqueId>& neighbors(CliqueId c) const;

    CliqueId add_node(const VertexSet& members);
    void remove_node(CliqueId c);  // drops incident edges

    // Adds the edge (a, b); the separator is the intersection of the two
    // cliques. The caller is responsible for only adding valid edges.
    void add_edge(CliqueId a, CliqueId b);
    void remove_edge(CliqueId a, CliqueId b);

    // Trie lookup; null when no edge carries this separator.
    const std::list<EdgeKey>* index_lookup(const VertexSet& sep) const {
        return index_.lookup(sep);
    }

    // Canonical views, independent of id assignment.
    std::vector<VertexSet> clique_list() const;  // sorted lexicographically
    std::vector<std::pair<VertexSet, VertexSet>> edge_list_by_cliques() const;
    bool equivalent_to(const CliqueGraph& o) const;

    // Full consistency check against g: node set equals maximal_cliques(g),
    // an edge exists exactly between separated clique pairs, stored
    // separators equal the intersections, neighbor-edge transitivity holds
    // (two edges at a node with nested separators imply the closing edge),
    // and the index agrees. Throws InternalInconsistency.
    void validate(const Graph& g) const;

private:
    int universe_;
    CliqueId next_id_ = 0;
    std::map<CliqueId, VertexSet> nodes_;
    std::map<EdgeKey, EdgeData> edges_;
    std::map<CliqueId, std::set<CliqueId>> adj_;
    SeparatorIndex index_;
};

// True iff c1 ∩ c2 separates c1 ∖ s from c2 ∖ s in g.
bool edge_valid(const Graph& g, const VertexSet& c1, const VertexSet& c2);

// A junction tree: maximum-weight spanning tree of the clique graph with
// separator sizes as weights. Model components are bridged by empty
// separators, so the result is always a single tree and the separator list
// has clique_count - 1 entries (a multiset; duplicates are meaningful).
struct JunctionTree {
    std::vector<VertexSet> cliques;
    // (index into cliques, index into cliques, separator), in pick order.
    std::vector<std::tuple<int, int, VertexSet>> edges;
    std::vector<VertexSet> separators;
};

// Deterministic: Kruskal over edges sorted by separator size descending,
// ties broken by the smaller (CliqueId, CliqueId) pair.
JunctionTree junction_tree(const CliqueGraph& cg);

}  // namespace chordwise
