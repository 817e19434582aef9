#include "chordwise/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <queue>

#include "chordwise/chordal.hpp"
#include "chordwise/entropy.hpp"
#include "chordwise/errors.hpp"

namespace chordwise {

std::vector<std::pair<int, int>> brute_eligible_additions(const Graph& g) {
    std::vector<std::pair<int, int>> out;
    Graph work = g;
    int n = g.vertex_count();
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            if (work.has_edge(a, b)) continue;
            work.add_edge(a, b);
            if (is_chordal(work)) out.emplace_back(a, b);
            work.remove_edge(a, b);
        }
    return out;
}

std::vector<std::pair<int, int>> brute_eligible_deletions(const Graph& g) {
    std::vector<VertexSet> cliques = maximal_cliques(g);
    std::vector<std::pair<int, int>> out;
    for (auto [a, b] : g.edges()) {
        int containing = 0;
        for (const VertexSet& c : cliques)
            if (c.contains(a) && c.contains(b)) ++containing;
        if (containing == 1) out.emplace_back(a, b);
    }
    return out;
}

namespace {

// Neighborhood of b's component in g - N[a]; a minimal a-b separator.
VertexSet close_separator(const Graph& g, int a, int b) {
    int n = g.vertex_count();
    VertexSet excluded = g.neighbors(a);
    excluded.insert(a);
    ComponentLabels labels = components_excluding(g, excluded);
    int comp_b = labels.label[static_cast<std::size_t>(b)];
    VertexSet sep(n);
    g.neighbors(a).for_each([&](int s) {
        bool touches = false;
        g.neighbors(s).for_each([&](int v) {
            if (labels.label[static_cast<std::size_t>(v)] == comp_b) touches = true;
        });
        if (touches) sep.insert(s);
    });
    return sep;
}

}  // namespace

VertexSet brute_minimal_separator(const Graph& g, int a, int b) {
    if (g.has_edge(a, b))
        throw AreAdjacent("vertices " + std::to_string(a) + " and " + std::to_string(b) +
                          " are adjacent and have no separator");
    VertexSet from_a = close_separator(g, a, b);
    VertexSet from_b = close_separator(g, b, a);
    if (from_a == from_b) return from_a;
    return from_a.lex_compare(from_b) < 0 ? from_a : from_b;
}

Graph random_chordal_graph(std::mt19937_64& rng, int n, double density) {
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    std::shuffle(order.begin(), order.end(), rng);

    Graph g(n);
    std::bernoulli_distribution coin(std::clamp(density, 0.0, 1.0));
    for (std::size_t i = 0; i < order.size(); ++i)
        for (std::size_t j = i + 1; j < order.size(); ++j)
            if (coin(rng)) g.add_edge(order[i], order[j]);

    // Elimination fill-in: make each vertex's later neighborhood a clique.
    std::vector<std::size_t> pos(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < order.size(); ++i) pos[static_cast<std::size_t>(order[i])] = i;
    for (std::size_t i = 0; i < order.size(); ++i) {
        int v = order[i];
        std::vector<int> later;
        g.neighbors(v).for_each([&](int u) {
            if (pos[static_cast<std::size_t>(u)] > i) later.push_back(u);
        });
        for (std::size_t x = 0; x < later.size(); ++x)
            for (std::size_t y = x + 1; y < later.size(); ++y)
                if (!g.has_edge(later[x], later[y])) g.add_edge(later[x], later[y]);
    }
    return g;
}

Dataset random_categorical_dataset(std::mt19937_64& rng, int n_cols, std::size_t n_rows,
                                   int max_domain, double dependence) {
    std::vector<std::string> names;
    names.reserve(static_cast<std::size_t>(n_cols));
    for (int c = 0; c < n_cols; ++c) names.push_back("c" + std::to_string(c));

    std::vector<int> domain(static_cast<std::size_t>(n_cols), 1);
    if (max_domain >= 2) {
        std::uniform_int_distribution<int> dsize(2, max_domain);
        for (int c = 0; c < n_cols; ++c) domain[static_cast<std::size_t>(c)] = dsize(rng);
    }

    std::bernoulli_distribution copy_prev(std::clamp(dependence, 0.0, 1.0));
    std::vector<std::vector<std::string>> rows(n_rows);
    for (std::size_t r = 0; r < n_rows; ++r) {
        std::vector<int> vals(static_cast<std::size_t>(n_cols));
        for (int c = 0; c < n_cols; ++c) {
            int d = domain[static_cast<std::size_t>(c)];
            std::uniform_int_distribution<int> val(0, d - 1);
            if (c > 0 && copy_prev(rng))
                vals[static_cast<std::size_t>(c)] = vals[static_cast<std::size_t>(c - 1)] % d;
            else
                vals[static_cast<std::size_t>(c)] = val(rng);
        }
        rows[r].reserve(static_cast<std::size_t>(n_cols));
        for (int c = 0; c < n_cols; ++c)
            rows[r].push_back("v" + std::to_string(vals[static_cast<std::size_t>(c)]));
    }
    return Dataset::from_rows(std::move(names), rows);
}

bool has_running_intersection(const JunctionTree& jt) {
    std::size_t k = jt.cliques.size();
    if (k <= 1) return true;
    std::vector<std::vector<int>> adj(k);
    for (const auto& [x, y, sep] : jt.edges) {
        adj[static_cast<std::size_t>(x)].push_back(y);
        adj[static_cast<std::size_t>(y)].push_back(x);
    }
    for (std::size_t i = 0; i < k; ++i) {
        // BFS tree from i with parent pointers.
        std::vector<int> parent(k, -2);
        parent[i] = -1;
        std::queue<int> q;
        q.push(static_cast<int>(i));
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int v : adj[static_cast<std::size_t>(u)])
                if (parent[static_cast<std::size_t>(v)] == -2) {
                    parent[static_cast<std::size_t>(v)] = u;
                    q.push(v);
                }
        }
        for (std::size_t j = i + 1; j < k; ++j) {
            if (parent[j] == -2) return false;  // not a single tree
            VertexSet inter = jt.cliques[i] & jt.cliques[j];
            for (int at = static_cast<int>(j); at != static_cast<int>(i);
                 at = parent[static_cast<std::size_t>(at)])
                if (!inter.is_subset_of(jt.cliques[static_cast<std::size_t>(at)])) return false;
        }
    }
    return true;
}

OracleReport verify_trajectory(std::uint64_t seed, const TrajectoryOptions& opt) {
    std::mt19937_64 rng(seed);
    Graph start = random_chordal_graph(rng, opt.n, opt.start_density);
    StepwiseEngine eng(start, opt.faults);

    std::optional<Dataset> data;
    EntropyCache cache;
    std::optional<ScoreState> score;
    if (opt.check_scores) {
        data = random_categorical_dataset(rng, opt.n, opt.data_rows, opt.max_domain,
                                          opt.data_dependence);
        score = ScoreState::from_junction_tree(junction_tree(eng.clique_graph()), *data, cache);
    }

    auto fail = [](int step, std::string why) {
        return OracleReport{false, step, std::move(why)};
    };

    auto check_state = [&](int step) -> std::optional<OracleReport> {
        const Graph& cur = eng.graph();
        if (eng.eligible_additions() != brute_eligible_additions(cur))
            return fail(step, "eligible additions diverge from reference");
        if (eng.eligible_deletions() != brute_eligible_deletions(cur))
            return fail(step, "eligible deletions diverge from reference");
        CliqueGraph fresh = CliqueGraph::build(cur);
        if (!eng.clique_graph().equivalent_to(fresh))
            return fail(step, "clique graph diverges from a fresh rebuild");
        try {
            eng.clique_graph().validate(cur);
        } catch (const Error& e) {
            return fail(step, std::string("clique-graph invariant violated: ") + e.what());
        }
        JunctionTree jt = junction_tree(eng.clique_graph());
        if (!has_running_intersection(jt))
            return fail(step, "junction tree violates running intersection");
        if (static_cast<int>(jt.cliques.size()) > std::max(1, cur.vertex_count()))
            return fail(step, "junction tree has more cliques than vertices");
        if (opt.check_separators)
            for (auto [a, b] : eng.eligible_additions())
                if (eng.addition_separator(a, b) != brute_minimal_separator(cur, a, b))
                    return fail(step, "pair separator diverges from reference for (" +
                                          std::to_string(a) + ", " + std::to_string(b) + ")");
        if (score) {
            double scratch = model_entropy(jt, *data, cache);
            double tol = 1e-9 * std::max(1.0, std::fabs(scratch));
            if (std::fabs(score->h_model - scratch) > tol)
                return fail(step, "incremental model entropy diverges from scratch recompute");
        }
        return std::nullopt;
    };

    if (auto r = check_state(0)) return *r;

    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int s = 1; s <= opt.steps; ++s) {
        auto adds = brute_eligible_additions(eng.graph());
        auto dels = brute_eligible_deletions(eng.graph());
        bool do_add;
        if (adds.empty() && dels.empty()) break;
        if (adds.empty())
            do_add = false;
        else if (dels.empty())
            do_add = true;
        else
            do_add = unit(rng) < opt.add_bias;

        try {
            if (do_add) {
                auto [a, b] = adds[std::uniform_int_distribution<std::size_t>(
                    0, adds.size() - 1)(rng)];
                AddOutcome o = eng.apply_add(a, b);
                if (score) {
                    VertexSet c_ab = o.separator;
                    c_ab.insert(a);
                    c_ab.insert(b);
                    apply_junction_diff(*score, o.witness_a, o.witness_b, c_ab, o.separator,
                                        cache, *data, a, b);
                }
            } else {
                auto [a, b] = dels[std::uniform_int_distribution<std::size_t>(
                    0, dels.size() - 1)(rng)];
                DeleteOutcome o = eng.apply_delete(a, b);
                if (score)
                    apply_delete_diff(*score, o.containing_clique, a, b, o.kept_a_side,
                                      o.kept_b_side, cache, *data);
            }
        } catch (const Error& e) {
            return fail(s, std::string("engine threw: ") + e.what());
        }
        if (auto r = check_state(s)) return *r;
    }
    return {};
}

}  // namespace chordwise
