#include "chordwise/engine.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <set>
#include <string>
#include <unordered_set>

#include "chordwise/chordal.hpp"
#include "chordwise/errors.hpp"

namespace chordwise {

namespace {

// Ascending (a, b) pairs, a < b.
std::vector<std::pair<int, int>> sorted_pairs(const std::set<std::pair<int, int>>& s) {
    return {s.begin(), s.end()};
}

}  // namespace

std::vector<std::pair<int, int>> eligible_additions(const CliqueGraph& cg, const Graph& g) {
    std::set<std::pair<int, int>> found;
    for (const auto& [key, data] : cg.edges()) {
        const VertexSet& c1 = cg.clique(key.first);
        const VertexSet& c2 = cg.clique(key.second);
        c1.for_each([&](int x) {
            c2.for_each([&](int y) {
                if (x != y && !g.has_edge(x, y)) found.insert(std::minmax(x, y));
            });
        });
    }
    return sorted_pairs(found);
}

DeleteEligibility delete_eligibility(const CliqueGraph& cg, const Graph& g) {
    int n = g.vertex_count();
    DeleteEligibility de;
    de.membership_count.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0));
    for (const auto& [id, members] : cg.nodes()) {
        auto mv = members.members();
        for (std::size_t i = 0; i < mv.size(); ++i)
            for (std::size_t j = i + 1; j < mv.size(); ++j) {
                ++de.membership_count[static_cast<std::size_t>(mv[i])][static_cast<std::size_t>(mv[j])];
                ++de.membership_count[static_cast<std::size_t>(mv[j])][static_cast<std::size_t>(mv[i])];
            }
    }
    return de;
}

std::vector<std::pair<int, int>> eligible_deletions(const CliqueGraph& cg, const Graph& g) {
    DeleteEligibility de = delete_eligibility(cg, g);
    std::vector<std::pair<int, int>> out;
    for (auto [u, v] : g.edges())
        if (de.deletable(u, v)) out.emplace_back(u, v);
    return out;
}

StepwiseEngine::StepwiseEngine(Graph g, FaultInjection faults)
    : g_(std::move(g)), cg_(CliqueGraph::build(g_)), faults_(faults) {
    int n = g_.vertex_count();
    elig_.assign(static_cast<std::size_t>(n), VertexSet(n));
    witness_.assign(static_cast<std::size_t>(n),
                    std::vector<EdgeKey>(static_cast<std::size_t>(n), EdgeKey{-1, -1}));
    init_eligibility();
}

void StepwiseEngine::init_eligibility() {
    int n = g_.vertex_count();
    for (int v = 0; v < n; ++v) elig_[static_cast<std::size_t>(v)].clear();
    for (const auto& [key, data] : cg_.edges()) {
        const VertexSet& c1 = cg_.clique(key.first);
        const VertexSet& c2 = cg_.clique(key.second);
        c1.for_each([&](int x) {
            c2.for_each([&](int y) {
                if (x != y && !g_.has_edge(x, y)) set_pair(x, y, key);
            });
        });
    }
}

void StepwiseEngine::set_pair(int a, int b, EdgeKey witness) {
    elig_[static_cast<std::size_t>(a)].insert(b);
    elig_[static_cast<std::size_t>(b)].insert(a);
    witness_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = witness;
    witness_[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] = witness;
}

void StepwiseEngine::clear_pair(int a, int b) {
    elig_[static_cast<std::size_t>(a)].erase(b);
    elig_[static_cast<std::size_t>(b)].erase(a);
}

bool StepwiseEngine::witness_ok(const EdgeKey& e, int a, int b) const {
    if (!cg_.has_node(e.first) || !cg_.has_node(e.second) || !cg_.has_edge(e.first, e.second))
        return false;
    const VertexSet& c1 = cg_.clique(e.first);
    const VertexSet& c2 = cg_.clique(e.second);
    return (c1.contains(a) && c2.contains(b)) || (c1.contains(b) && c2.contains(a));
}

bool StepwiseEngine::addition_eligible(int a, int b) const {
    if (a == b || g_.has_edge(a, b)) return false;
    return elig_[static_cast<std::size_t>(a)].contains(b);
}

std::vector<std::pair<int, int>> StepwiseEngine::eligible_additions() const {
    std::vector<std::pair<int, int>> out;
    int n = g_.vertex_count();
    for (int a = 0; a < n; ++a)
        for (int b = elig_[static_cast<std::size_t>(a)].next(a); b >= 0;
             b = elig_[static_cast<std::size_t>(a)].next(b))
            out.emplace_back(a, b);
    return out;
}

EdgeKey StepwiseEngine::addition_witness(int a, int b) {
    if (!addition_eligible(a, b))
        throw NotEligible("pair (" + std::to_string(a) + ", " + std::to_string(b) +
                          ") is not eligible for addition");
    EdgeKey w = witness_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
    if (witness_ok(w, a, b)) return w;
    // Stored handle went stale; any edge certifying the pair carries the same
    // (unique) minimal separator, so take the first one found.
    for (const auto& [key, data] : cg_.edges()) {
        const VertexSet& c1 = cg_.clique(key.first);
        const VertexSet& c2 = cg_.clique(key.second);
        if ((c1.contains(a) && c2.contains(b)) || (c1.contains(b) && c2.contains(a))) {
            set_pair(a, b, key);
            return key;
        }
    }
    throw InternalInconsistency("eligibility matrix lists pair (" + std::to_string(a) + ", " +
                                std::to_string(b) + ") but no clique-graph edge certifies it");
}

const VertexSet& StepwiseEngine::addition_separator(int a, int b) {
    EdgeKey w = addition_witness(a, b);
    return cg_.separator(w.first, w.second);
}

DeleteEligibility StepwiseEngine::delete_eligibility() const {
    return chordwise::delete_eligibility(cg_, g_);
}

std::vector<std::pair<int, int>> StepwiseEngine::eligible_deletions() const {
    return chordwise::eligible_deletions(cg_, g_);
}

const VertexSet& StepwiseEngine::deletion_clique(int a, int b) const {
    if (!g_.has_edge(a, b))
        throw NotEligible("edge (" + std::to_string(a) + ", " + std::to_string(b) +
                          ") is not in the model");
    const VertexSet* found = nullptr;
    for (const auto& [id, members] : cg_.nodes()) {
        if (members.contains(a) && members.contains(b)) {
            if (found)
                throw NotEligible("edge (" + std::to_string(a) + ", " + std::to_string(b) +
                                  ") lies in more than one maximal clique");
            found = &members;
        }
    }
    if (!found)
        throw InternalInconsistency("model edge not covered by any maximal clique");
    return *found;
}

AddOutcome StepwiseEngine::apply_add(int a, int b) {
    if (a > b) std::swap(a, b);
    if (a == b || a < 0 || b >= g_.vertex_count())
        throw NotEligible("invalid vertex pair");
    if (g_.has_edge(a, b))
        throw AreAdjacent("edge (" + std::to_string(a) + ", " + std::to_string(b) +
                          ") is already in the model");

    EdgeKey we = addition_witness(a, b);  // throws NotEligible
    CliqueId ca_id = cg_.clique(we.first).contains(a) ? we.first : we.second;
    CliqueId cb_id = (ca_id == we.first) ? we.second : we.first;
    // Copies: the originals may be absorbed below.
    VertexSet c_a = cg_.clique(ca_id);
    VertexSet c_b = cg_.clique(cb_id);
    VertexSet s_ab = c_a & c_b;

    AddOutcome out;
    out.separator = s_ab;
    out.witness_a = c_a;
    out.witness_b = c_b;

    // Reachability with the separator removed, in the graph before the new
    // edge: drives staleness tests and the eligibility-matrix update.
    ComponentLabels labels = components_excluding(g_, s_ab);
    int comp_a = labels.label[static_cast<std::size_t>(a)];
    int comp_b = labels.label[static_cast<std::size_t>(b)];
    if (comp_a < 0 || comp_b < 0 || comp_a == comp_b)
        throw InternalInconsistency("witness separator does not separate the endpoints");
    int n = g_.vertex_count();
    VertexSet reach_a(n), reach_b(n);
    for (int v = 0; v < n; ++v) {
        if (labels.label[static_cast<std::size_t>(v)] == comp_a) reach_a.insert(v);
        if (labels.label[static_cast<std::size_t>(v)] == comp_b) reach_b.insert(v);
    }

    // Stale pass: an edge carrying this separator dies exactly when its two
    // residual sides lie in the endpoint components about to be merged.
    {
        std::vector<EdgeKey> carrying;
        if (const auto* lst = cg_.index_lookup(s_ab)) carrying.assign(lst->begin(), lst->end());
        for (const EdgeKey& e : carrying) {
            if (faults_.skip_stale_edge_removal && e != we) continue;
            auto side = [&](CliqueId c, int comp) {
                bool hit = false;
                (cg_.clique(c) - s_ab).for_each([&](int v) {
                    if (labels.label[static_cast<std::size_t>(v)] == comp) hit = true;
                });
                return hit;
            };
            bool stale = (side(e.first, comp_a) && side(e.second, comp_b)) ||
                         (side(e.first, comp_b) && side(e.second, comp_a));
            if (stale) {
                cg_.remove_edge(e.first, e.second);
                out.removed_edges.push_back(e);
            }
        }
    }

    g_.add_edge(a, b);
    VertexSet c_ab = s_ab;
    c_ab.insert(a);
    c_ab.insert(b);
    CliqueId cab_id = cg_.add_node(c_ab);
    out.new_clique = cab_id;

    std::vector<EdgeKey> added;
    auto connect = [&](CliqueId x) {
        if (x == cab_id || cg_.has_edge(cab_id, x)) return;
        cg_.add_edge(cab_id, x);
        added.push_back(make_edge_key(cab_id, x));
    };
    connect(ca_id);
    connect(cb_id);

    // One pass per endpoint: re-attach the witness clique's neighborhood to
    // the new clique, then cliques meeting it exactly in separator+endpoint.
    auto attach_side = [&](CliqueId side_id, int v_self, const VertexSet& reach_other) {
        VertexSet target = s_ab;
        target.insert(v_self);
        std::vector<CliqueId> nbrs(cg_.neighbors(side_id).begin(), cg_.neighbors(side_id).end());
        for (CliqueId other : nbrs) {
            if (other == cab_id) continue;
            if ((cg_.clique(other) & cg_.clique(side_id)).is_proper_subset_of(target))
                connect(other);
        }
        for (const auto& [id, members] : cg_.nodes()) {
            if (id == cab_id || (members & c_ab) != target) continue;
            bool separated = true;
            (members - target).for_each([&](int v) {
                if (reach_other.contains(v)) separated = false;
            });
            if (separated) connect(id);
        }
    };
    attach_side(ca_id, a, reach_b);
    attach_side(cb_id, b, reach_a);

    // Eligibility: the added pair is spent; pairs whose certifying edges all
    // just died span the merged components; new edges at the new clique open
    // pairs against the endpoints.
    clear_pair(a, b);
    reach_a.for_each([&](int x) { elig_[static_cast<std::size_t>(x)] -= reach_b; });
    reach_b.for_each([&](int y) { elig_[static_cast<std::size_t>(y)] -= reach_a; });
    for (const EdgeKey& e : added) {
        CliqueId other_id = (e.first == cab_id) ? e.second : e.first;
        const VertexSet& other = cg_.clique(other_id);
        const VertexSet& sep = cg_.separator(e.first, e.second);
        for (int v : {a, b}) {
            if (sep.contains(v)) continue;
            (other - sep).for_each([&](int x) {
                if (x != v && !g_.has_edge(x, v)) set_pair(x, v, e);
            });
        }
    }

    // Absorption: a witness clique contained in the new one stops being
    // maximal. Every surviving edge of the dead node was mirrored onto the
    // new clique above, so witnesses can be re-pointed mechanically.
    auto absorb = [&](CliqueId dead) {
        cg_.remove_node(dead);
        for (int x = 0; x < n; ++x)
            for (int y = elig_[static_cast<std::size_t>(x)].next(x); y >= 0;
                 y = elig_[static_cast<std::size_t>(x)].next(y)) {
                EdgeKey& w = witness_[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)];
                if (w.first == dead || w.second == dead) {
                    CliqueId other = (w.first == dead) ? w.second : w.first;
                    EdgeKey fixed = make_edge_key(cab_id, other);
                    witness_[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = fixed;
                    witness_[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)] = fixed;
                }
            }
    };
    if (c_a.is_subset_of(c_ab)) {
        out.absorbed_a = true;
        absorb(ca_id);
    }
    if (c_b.is_subset_of(c_ab)) {
        out.absorbed_b = true;
        absorb(cb_id);
    }

    for (const EdgeKey& e : added)
        if (cg_.has_edge(e.first, e.second)) out.added_edges.push_back(e);

    if (validate_steps_) cg_.validate(g_);
    return out;
}

DeleteOutcome StepwiseEngine::apply_delete(int a, int b) {
    if (a > b) std::swap(a, b);
    VertexSet c = deletion_clique(a, b);  // throws NotEligible
    CliqueId cid = -1;
    for (const auto& [id, members] : cg_.nodes())
        if (members == c) cid = id;

    VertexSet sep = c;
    sep.erase(a);
    sep.erase(b);
    VertexSet side_a = c;
    side_a.erase(b);
    VertexSet side_b = c;
    side_b.erase(a);

    DeleteOutcome out;
    out.containing_clique = c;
    out.separator = sep;

    g_.remove_edge(a, b);

    // Each split half stays maximal unless an existing clique swallows it.
    bool kept_a = true, kept_b = true;
    for (const auto& [id, members] : cg_.nodes()) {
        if (id == cid) continue;
        if (side_a.is_subset_of(members)) kept_a = false;
        if (side_b.is_subset_of(members)) kept_b = false;
    }
    cg_.remove_node(cid);
    if (kept_a) {
        cg_.add_node(side_a);
        out.new_cliques.push_back(side_a);
    }
    if (kept_b) {
        cg_.add_node(side_b);
        out.new_cliques.push_back(side_b);
    }
    out.kept_a_side = kept_a;
    out.kept_b_side = kept_b;

    // Removing a model edge only makes separation easier, so surviving edges
    // stay valid; missing pairs are re-tested grouped by intersection (one
    // component scan per distinct candidate separator).
    std::vector<CliqueId> ids;
    ids.reserve(cg_.nodes().size());
    for (const auto& [id, members] : cg_.nodes()) ids.push_back(id);
    std::map<VertexSet, std::vector<EdgeKey>> candidates;
    for (std::size_t i = 0; i < ids.size(); ++i)
        for (std::size_t j = i + 1; j < ids.size(); ++j) {
            if (cg_.has_edge(ids[i], ids[j])) continue;
            candidates[cg_.clique(ids[i]) & cg_.clique(ids[j])].push_back(
                make_edge_key(ids[i], ids[j]));
        }
    for (const auto& [inter, pairs] : candidates) {
        ComponentLabels labels = components_excluding(g_, inter);
        for (const EdgeKey& e : pairs) {
            int ra = (cg_.clique(e.first) - inter).first();
            int rb = (cg_.clique(e.second) - inter).first();
            if (!labels.same_component(ra, rb)) cg_.add_edge(e.first, e.second);
        }
    }

    init_eligibility();
    if (validate_steps_) cg_.validate(g_);
    return out;
}

namespace {

struct Choice {
    std::pair<int, int> pair;
    double delta = 0.0;
};

}  // namespace

RunResult run_selection(const Graph& g0, const Dataset& data, const SelectionConfig& config) {
    if (data.n_columns() != g0.vertex_count())
        throw ColumnMismatch("dataset has " + std::to_string(data.n_columns()) +
                             " columns but the graph has " + std::to_string(g0.vertex_count()) +
                             " vertices");

    StepwiseEngine eng(g0);
    EntropyCache cache;
    ScoreState score =
        ScoreState::from_junction_tree(junction_tree(eng.clique_graph()), data, cache);

    RunResult rr;
    rr.h_model_start = score.h_model;

    struct AddMemo {
        VertexSet sep;
        double delta;
    };
    struct DelMemo {
        VertexSet clique;
        double delta;
    };
    std::map<std::pair<int, int>, AddMemo> add_memo;
    std::map<std::pair<int, int>, DelMemo> del_memo;
    std::unordered_set<std::string> applied;  // loop guard over (state, action) pairs

    int step_no = 0;
    std::size_t round_evals = 0;
    bool halted = false;  // loop guard tripped

    // Best addition by largest delta, ties to the smaller pair. Cached deltas
    // are reused only while the pair's separator is unchanged.
    auto best_add = [&]() -> std::optional<Choice> {
        round_evals = 0;
        std::optional<Choice> best;
        for (auto [a, b] : eng.eligible_additions()) {
            const VertexSet& sep = eng.addition_separator(a, b);
            if (config.max_clique_size && sep.size() + 2 > *config.max_clique_size) continue;
            auto it = add_memo.find({a, b});
            double d;
            if (it != add_memo.end() && it->second.sep == sep) {
                d = it->second.delta;
            } else {
                d = add_delta(cache, data, sep, a, b);
                add_memo[{a, b}] = {sep, d};
                ++round_evals;
            }
            if (!best || d > best->delta || (d == best->delta && std::pair{a, b} < best->pair))
                best = Choice{{a, b}, d};
        }
        return best;
    };

    // Cheapest deletion by smallest delta, ties to the smaller pair.
    auto best_del = [&]() -> std::optional<Choice> {
        round_evals = 0;
        std::optional<Choice> best;
        for (auto [a, b] : eng.eligible_deletions()) {
            const VertexSet& cl = eng.deletion_clique(a, b);
            auto it = del_memo.find({a, b});
            double d;
            if (it != del_memo.end() && it->second.clique == cl) {
                d = it->second.delta;
            } else {
                d = delete_delta(cache, data, cl, a, b);
                del_memo[{a, b}] = {cl, d};
                ++round_evals;
            }
            if (!best || d < best->delta || (d == best->delta && std::pair{a, b} < best->pair))
                best = Choice{{a, b}, d};
        }
        return best;
    };

    auto guard = [&](StepAction act, std::pair<int, int> p) {
        std::string key = eng.graph().edge_signature() + (act == StepAction::add ? "|a|" : "|d|") +
                          std::to_string(p.first) + "," + std::to_string(p.second);
        if (!applied.insert(key).second) halted = true;
        return !halted;
    };

    auto record_step = [&](StepAction act, const Choice& c, const VertexSet& sep, int da0, int db0,
                           double wall) {
        StepRecord rec;
        rec.step = ++step_no;
        rec.action = act;
        rec.va = c.pair.first;
        rec.vb = c.pair.second;
        rec.separator = sep;
        rec.delta = c.delta;
        rec.entropies_computed = cache.step_misses();
        rec.entropy_sets_computed = cache.step_missed_sets();
        rec.deltas_evaluated = round_evals;
        rec.h_model_after = score.h_model;
        rec.degree_a_before = da0;
        rec.degree_b_before = db0;
        rec.degree_a_after = eng.graph().degree(c.pair.first);
        rec.degree_b_after = eng.graph().degree(c.pair.second);
        rr.steps.push_back(std::move(rec));
        rr.step_wall_s.push_back(wall);
    };

    // One phase of same-action steps; returns how many were applied.
    auto run_phase = [&](StepAction act) {
        int applied_here = 0;
        while (step_no < config.max_steps && !halted) {
            cache.begin_step();
            std::optional<Choice> c = act == StepAction::add ? best_add() : best_del();
            if (!c) break;
            if (act == StepAction::add && c->delta < config.min_delta) break;
            if (act == StepAction::remove && c->delta > config.min_delta) break;
            if (!guard(act, c->pair)) break;
            auto [a, b] = c->pair;
            int da0 = eng.graph().degree(a), db0 = eng.graph().degree(b);
            auto t0 = std::chrono::steady_clock::now();
            VertexSet sep(eng.graph().vertex_count());
            if (act == StepAction::add) {
                AddOutcome o = eng.apply_add(a, b);
                sep = o.separator;
                VertexSet c_ab = o.separator;
                c_ab.insert(a);
                c_ab.insert(b);
                apply_junction_diff(score, o.witness_a, o.witness_b, c_ab, o.separator, cache,
                                    data, a, b);
            } else {
                DeleteOutcome o = eng.apply_delete(a, b);
                sep = o.separator;
                apply_delete_diff(score, o.containing_clique, a, b, o.kept_a_side, o.kept_b_side,
                                  cache, data);
            }
            double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            record_step(act, *c, sep, da0, db0, wall);
            ++applied_here;
        }
        return applied_here;
    };

    switch (config.mode) {
        case SelectionConfig::Mode::forward:
            run_phase(StepAction::add);
            break;
        case SelectionConfig::Mode::backward:
            run_phase(StepAction::remove);
            break;
        case SelectionConfig::Mode::alternating:
            while (!halted && step_no < config.max_steps) {
                int moved = run_phase(StepAction::add) + run_phase(StepAction::remove);
                if (moved == 0) break;
            }
            break;
    }

    rr.final_graph = eng.graph();
    rr.score = std::move(score);
    return rr;
}

}  // namespace chordwise
