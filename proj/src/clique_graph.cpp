#include "chordwise/clique_graph.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <string>

#include "chordwise/errors.hpp"

namespace chordwise {

SeparatorIndex::Handle SeparatorIndex::insert(const VertexSet& sep, EdgeKey e) {
    assert(sep.universe() == universe_);
    int node = 0;
    for (int v = 0; v < universe_; ++v) {
        int bit = sep.contains(v) ? 1 : 0;
        if (nodes_[static_cast<std::size_t>(node)].child[bit] == -1) {
            nodes_[static_cast<std::size_t>(node)].child[bit] = static_cast<int>(nodes_.size());
            nodes_.emplace_back();
        }
        node = nodes_[static_cast<std::size_t>(node)].child[bit];
    }
    auto& lst = nodes_[static_cast<std::size_t>(node)].edges;
    lst.push_front(e);
    return Handle{node, lst.begin()};
}

void SeparatorIndex::remove(const Handle& h) {
    assert(h.leaf >= 0 && h.leaf < static_cast<int>(nodes_.size()));
    nodes_[static_cast<std::size_t>(h.leaf)].edges.erase(h.it);
}

const std::list<EdgeKey>* SeparatorIndex::lookup(const VertexSet& sep) const {
    assert(sep.universe() == universe_);
    int node = 0;
    for (int v = 0; v < universe_; ++v) {
        node = nodes_[static_cast<std::size_t>(node)].child[sep.contains(v) ? 1 : 0];
        if (node == -1) return nullptr;
    }
    return &nodes_[static_cast<std::size_t>(node)].edges;
}

const VertexSet& CliqueGraph::clique(CliqueId c) const {
    auto it = nodes_.find(c);
    assert(it != nodes_.end());
    return it->second;
}

const VertexSet& CliqueGraph::separator(CliqueId a, CliqueId b) const {
    auto it = edges_.find(make_edge_key(a, b));
    assert(it != edges_.end());
    return it->second.separator;
}

const std::set<CliqueId>& CliqueGraph::neighbors(CliqueId c) const {
    auto it = adj_.find(c);
    assert(it != adj_.end());
    return it->second;
}

CliqueId CliqueGraph::add_node(const VertexSet& members) {
    assert(members.universe() == universe_);
    CliqueId id = next_id_++;
    nodes_.emplace(id, members);
    adj_.emplace(id, std::set<CliqueId>{});
    return id;
}

void CliqueGraph::remove_node(CliqueId c) {
    auto it = adj_.find(c);
    assert(it != adj_.end());
    std::vector<CliqueId> nb(it->second.begin(), it->second.end());
    for (CliqueId o : nb) remove_edge(c, o);
    adj_.erase(c);
    nodes_.erase(c);
}

void CliqueGraph::add_edge(CliqueId a, CliqueId b) {
    assert(a != b && has_node(a) && has_node(b) && !has_edge(a, b));
    EdgeKey key = make_edge_key(a, b);
    VertexSet sep = clique(a) & clique(b);
    auto handle = index_.insert(sep, key);
    edges_.emplace(key, EdgeData{std::move(sep), handle});
    adj_[a].insert(b);
    adj_[b].insert(a);
}

void CliqueGraph::remove_edge(CliqueId a, CliqueId b) {
    auto it = edges_.find(make_edge_key(a, b));
    assert(it != edges_.end());
    index_.remove(it->second.index_handle);
    edges_.erase(it);
    adj_[a].erase(b);
    adj_[b].erase(a);
}

bool edge_valid(const Graph& g, const VertexSet& c1, const VertexSet& c2) {
    VertexSet sep = c1 & c2;
    VertexSet r1 = c1 - sep;
    VertexSet r2 = c2 - sep;
    if (r1.empty() || r2.empty()) return false;
    // Each residual is a clique, hence lies in a single component of g - sep.
    ComponentLabels cl = components_excluding(g, sep);
    return !cl.same_component(r1.first(), r2.first());
}

CliqueGraph CliqueGraph::build(const Graph& g) {
    CliqueGraph cg(g.vertex_count());
    std::vector<VertexSet> cliques = maximal_cliques(g);
    std::vector<CliqueId> ids;
    ids.reserve(cliques.size());
    for (const VertexSet& c : cliques) ids.push_back(cg.add_node(c));

    // Group candidate pairs by their intersection so each distinct separator
    // needs a single component computation.
    std::map<VertexSet, std::vector<EdgeKey>> by_sep;
    for (std::size_t i = 0; i < cliques.size(); ++i)
        for (std::size_t j = i + 1; j < cliques.size(); ++j)
            by_sep[cliques[i] & cliques[j]].push_back({ids[i], ids[j]});

    for (const auto& [sep, pairs] : by_sep) {
        ComponentLabels cl = components_excluding(g, sep);
        for (EdgeKey e : pairs) {
            VertexSet r1 = cg.clique(e.first) - sep;
            VertexSet r2 = cg.clique(e.second) - sep;
            if (!cl.same_component(r1.first(), r2.first())) cg.add_edge(e.first, e.second);
        }
    }
    return cg;
}

std::vector<VertexSet> CliqueGraph::clique_list() const {
    std::vector<VertexSet> out;
    out.reserve(nodes_.size());
    for (const auto& [id, c] : nodes_) out.push_back(c);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::pair<VertexSet, VertexSet>> CliqueGraph::edge_list_by_cliques() const {
    std::vector<std::pair<VertexSet, VertexSet>> out;
    out.reserve(edges_.size());
    for (const auto& [key, data] : edges_) {
        const VertexSet& x = clique(key.first);
        const VertexSet& y = clique(key.second);
        out.emplace_back(std::min(x, y), std::max(x, y));
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool CliqueGraph::equivalent_to(const CliqueGraph& o) const {
    return clique_list() == o.clique_list() && edge_list_by_cliques() == o.edge_list_by_cliques();
}

void CliqueGraph::validate(const Graph& g) const {
    auto fail = [](const std::string& msg) { throw InternalInconsistency("clique graph: " + msg); };

    if (node_count() > std::max(1, g.vertex_count())) fail("more cliques than vertices");

    std::vector<VertexSet> expect = maximal_cliques(g);
    if (clique_list() != expect) fail("node set differs from the maximal cliques");

    for (const auto& [key, data] : edges_) {
        if (!has_node(key.first) || !has_node(key.second)) fail("edge with missing endpoint");
        const VertexSet& c1 = clique(key.first);
        const VertexSet& c2 = clique(key.second);
        if (data.separator != (c1 & c2)) fail("stored separator is not the intersection");
        if (!edge_valid(g, c1, c2)) fail("edge fails the separation property");
        const std::list<EdgeKey>* lst = index_lookup(data.separator);
        if (!lst || std::find(lst->begin(), lst->end(), key) == lst->end())
            fail("edge missing from the separator index");
    }

    // Completeness: every separated clique pair must be an edge.
    std::vector<CliqueId> ids;
    for (const auto& [id, c] : nodes_) ids.push_back(id);
    for (std::size_t i = 0; i < ids.size(); ++i)
        for (std::size_t j = i + 1; j < ids.size(); ++j)
            if (!has_edge(ids[i], ids[j]) && edge_valid(g, clique(ids[i]), clique(ids[j])))
                fail("separated clique pair without an edge");

    // Transitivity: edges (c1,c2) and (c2,c3) with c1∩c2 ⊂ c2∩c3 imply the
    // edge (c1,c3).
    for (const auto& [id2, nbs] : adj_) {
        for (CliqueId id1 : nbs)
            for (CliqueId id3 : nbs) {
                if (id1 >= id3) continue;
                const VertexSet& s12 = separator(id1, id2);
                const VertexSet& s23 = separator(id2, id3);
                bool implied = s12.is_proper_subset_of(s23) || s23.is_proper_subset_of(s12);
                if (implied && !has_edge(id1, id3)) fail("missing transitive edge");
            }
    }
}

namespace {

struct Dsu {
    std::vector<int> parent;
    explicit Dsu(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) { return parent[static_cast<std::size_t>(x)] == x
                                 ? x
                                 : parent[static_cast<std::size_t>(x)] =
                                       find(parent[static_cast<std::size_t>(x)]); }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[static_cast<std::size_t>(a)] = b;
        return true;
    }
};

}  // namespace

JunctionTree junction_tree(const CliqueGraph& cg) {
    JunctionTree jt;
    std::map<CliqueId, int> slot;
    for (const auto& [id, c] : cg.nodes()) {
        slot[id] = static_cast<int>(jt.cliques.size());
        jt.cliques.push_back(c);
    }

    std::vector<EdgeKey> keys;
    keys.reserve(cg.edges().size());
    for (const auto& [key, data] : cg.edges()) keys.push_back(key);
    std::stable_sort(keys.begin(), keys.end(), [&](const EdgeKey& a, const EdgeKey& b) {
        int wa = cg.edges().at(a).separator.size();
        int wb = cg.edges().at(b).separator.size();
        if (wa != wb) return wa > wb;
        return a < b;
    });

    Dsu dsu(jt.cliques.size());
    for (const EdgeKey& key : keys) {
        int a = slot[key.first], b = slot[key.second];
        if (!dsu.unite(a, b)) continue;
        const VertexSet& sep = cg.edges().at(key).separator;
        jt.edges.emplace_back(a, b, sep);
        jt.separators.push_back(sep);
    }
    return jt;
}

}  // namespace chordwise
