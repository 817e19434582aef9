// Acceptance harness: executes every release criterion and prints one
// verdict line each. Exit code is the number of failed criteria.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "chordwise/chordal.hpp"
#include "chordwise/clique_graph.hpp"
#include "chordwise/dataset.hpp"
#include "chordwise/engine.hpp"
#include "chordwise/entropy.hpp"
#include "chordwise/errors.hpp"
#include "chordwise/graph.hpp"
#include "chordwise/oracle.hpp"
#include "test_support.hpp"

using namespace chordwise;
using chordwise::test::random_graph;

namespace {

// Pinned tolerances. Exact-equality criteria use none.
constexpr double kDeltaFloor = -1e-12;        // forward deltas may round this far below zero
constexpr double kMonotoneSlack = 1e-12;      // per-step slack for the H_model descent check
constexpr double kScoreRelTol = 1e-9;         // incremental vs scratch model entropy
constexpr double kMaxScalingExponent = 2.5;   // fitted growth of per-step addition time

struct Criterion {
    std::string title;
    bool pass = true;
    std::string detail;

    void fail(const std::string& why) {
        pass = false;
        if (detail.size() < 300) {
            if (!detail.empty()) detail += "; ";
            detail += why;
        }
    }
};

double now_s() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

// Maps an oracle divergence to the criterion it falsifies; 0 = structural
// failure that indicts all maintenance criteria.
int criterion_for(const std::string& reason) {
    auto has = [&](const char* s) { return reason.find(s) != std::string::npos; };
    if (has("eligible additions")) return 1;
    if (has("eligible deletions")) return 2;
    if (has("clique graph") || has("clique-graph") || has("pair separator")) return 3;
    if (has("junction tree")) return 4;
    if (has("model entropy")) return 5;
    return 0;
}

void attribute(std::vector<Criterion>& crit, std::uint64_t seed, const OracleReport& rep) {
    std::string why = "seed " + std::to_string(seed) + " step " +
                      std::to_string(rep.failed_step) + ": " + rep.reason;
    int c = criterion_for(rep.reason);
    if (c == 0) {
        for (int i : {1, 2, 3, 4}) crit[static_cast<std::size_t>(i)].fail(why);
    } else {
        crit[static_cast<std::size_t>(c)].fail(why);
    }
}

// --- criterion 9 support -------------------------------------------------

double mean_apply_seconds(std::mt19937_64& rng, int n, int steps) {
    StepwiseEngine engine{Graph(n)};
    double total = 0.0;
    int done = 0;
    for (int s = 0; s < steps; ++s) {
        std::vector<std::pair<int, int>> adds = engine.eligible_additions();
        if (adds.empty()) break;
        auto [a, b] = adds[rng() % adds.size()];
        double t0 = now_s();
        engine.apply_add(a, b);
        total += now_s() - t0;
        ++done;
    }
    return total / std::max(1, done);
}

double fitted_exponent(const std::vector<int>& ns, const std::vector<double>& ts) {
    // Least-squares slope of ln t against ln n.
    std::size_t m = ns.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < m; ++i) {
        double x = std::log(static_cast<double>(ns[i]));
        double y = std::log(ts[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double dm = static_cast<double>(m);
    return (dm * sxy - sx * sy) / (dm * sxx - sx * sx);
}

// --- criterion 10 support ------------------------------------------------

struct DisjointSets {
    std::vector<int> parent;
    explicit DisjointSets(int n) : parent(static_cast<std::size_t>(n)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int v) {
        while (parent[static_cast<std::size_t>(v)] != v) v = parent[static_cast<std::size_t>(v)];
        return v;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[static_cast<std::size_t>(b)] = a;
        return true;
    }
};

// Maximum-MI spanning forest by Kruskal: MI descending, ties on the smaller
// pair, negative (rounded) MI skipped. Uses the same entropy code as the
// engine so both sides see bit-identical values.
std::set<std::pair<int, int>> kruskal_mi_forest(const Dataset& data) {
    int n = data.n_columns();
    EntropyCache cache;
    struct Cand {
        double mi;
        int a, b;
    };
    std::vector<Cand> cands;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            cands.push_back({add_delta(cache, data, VertexSet(n), a, b), a, b});
    std::stable_sort(cands.begin(), cands.end(), [](const Cand& x, const Cand& y) {
        if (x.mi != y.mi) return x.mi > y.mi;
        return std::pair{x.a, x.b} < std::pair{y.a, y.b};
    });
    DisjointSets dsu(n);
    std::set<std::pair<int, int>> picked;
    for (const Cand& c : cands) {
        if (c.mi < 0.0) continue;
        if (dsu.unite(c.a, c.b)) picked.insert({c.a, c.b});
    }
    return picked;
}

std::set<std::pair<int, int>> edge_set(const Graph& g) {
    std::set<std::pair<int, int>> out;
    for (int u = 0; u < g.vertex_count(); ++u)
        for (int v = u + 1; v < g.vertex_count(); ++v)
            if (g.has_edge(u, v)) out.insert({u, v});
    return out;
}

}  // namespace

int main() {
    std::vector<Criterion> crit(12);
    crit[1].title = "addition eligibility equals the exhaustive oracle on every trajectory step";
    crit[2].title = "deletion eligibility equals the exhaustive oracle on every trajectory step";
    crit[3].title = "maintained clique graph equals a fresh rebuild, invariants and separators included";
    crit[4].title = "junction trees keep running intersection with at most n cliques";
    crit[5].title = "incremental model entropy tracks scratch recomputation (rel tol 1e-9)";
    crit[6].title = "forward deltas stay above -1e-12 and H_model never increases";
    crit[7].title = "entropy-cache misses respect the per-step budgets in both directions";
    crit[8].title = "the first step from the null model evaluates exactly n(n-1)/2 deltas";
    crit[9].title = "per-step addition cost grows with exponent <= 2.5";
    crit[10].title = "pair-limited selection reproduces the maximum-MI spanning forest";
    crit[11].title = "strong-decomposability test agrees with explicit star augmentation";

    double t_total = now_s();

    // ---- trajectory phases: criteria 1-5 --------------------------------
    {
        TrajectoryOptions addheavy;
        addheavy.steps = 30;
        addheavy.start_density = 0.3;
        addheavy.add_bias = 1.0;
        for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
            addheavy.n = 2 + static_cast<int>(seed % 11);
            OracleReport rep = verify_trajectory(seed, addheavy);
            if (!rep.ok) attribute(crit, seed, rep);
        }

        TrajectoryOptions delheavy;
        delheavy.steps = 30;
        delheavy.start_density = 0.6;
        delheavy.add_bias = 0.15;
        for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
            delheavy.n = 2 + static_cast<int>(seed % 11);
            OracleReport rep = verify_trajectory(seed + 100000, delheavy);
            if (!rep.ok) attribute(crit, seed + 100000, rep);
        }
        for (int c : {1, 2, 3, 4})
            if (crit[static_cast<std::size_t>(c)].pass)
                crit[static_cast<std::size_t>(c)].detail =
                    "2000 trajectories (addition- and deletion-heavy), n 2-12";
    }

    {
        TrajectoryOptions scored;
        scored.steps = 25;
        scored.add_bias = 0.55;
        scored.check_scores = true;
        scored.check_separators = false;  // covered above; keep this phase lean
        for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
            scored.n = 3 + static_cast<int>(seed % 8);
            scored.data_rows = 100 + (seed % 5) * 100;
            scored.max_domain = 2 + static_cast<int>(seed % 2);
            OracleReport rep = verify_trajectory(seed + 200000, scored);
            if (!rep.ok) attribute(crit, seed + 200000, rep);
        }
        if (crit[5].pass)
            crit[5].detail = "1000 scored trajectories, n 3-10, up to 500 rows";
    }

    // ---- criterion 6: forward monotonicity ------------------------------
    {
        std::mt19937_64 rng(600);
        int runs = 0, steps_seen = 0;
        for (int r = 0; r < 300; ++r) {
            int n = 3 + static_cast<int>(rng() % 7);
            Dataset data =
                random_categorical_dataset(rng, n, 150 + (rng() % 4) * 50, 3, 0.6);
            SelectionConfig cfg;
            cfg.min_delta = 0.0;
            RunResult res = run_selection(Graph(n), data, cfg);
            double h_prev = res.h_model_start;
            for (const StepRecord& s : res.steps) {
                ++steps_seen;
                if (s.delta < kDeltaFloor)
                    crit[6].fail("run " + std::to_string(r) + " step " +
                                 std::to_string(s.step) + ": delta " + std::to_string(s.delta));
                if (s.h_model_after > h_prev + kMonotoneSlack)
                    crit[6].fail("run " + std::to_string(r) + " step " +
                                 std::to_string(s.step) + ": H_model rose");
                h_prev = s.h_model_after;
            }
            ++runs;
        }
        if (crit[6].pass)
            crit[6].detail = std::to_string(runs) + " forward runs, " +
                             std::to_string(steps_seen) + " accepted steps";
    }

    // ---- criterion 7: entropy budgets -----------------------------------
    {
        // Forward: misses at step k are bounded through the degrees recorded
        // before step k-1 (the looser published bound).
        std::mt19937_64 rng(700);
        int checked = 0;
        for (int r = 0; r < 200; ++r) {
            int n = 4 + static_cast<int>(rng() % 7);
            Dataset data =
                random_categorical_dataset(rng, n, 200 + (rng() % 3) * 100, 3, 0.7);
            SelectionConfig cfg;
            cfg.min_delta = 1e-6;
            RunResult res = run_selection(Graph(n), data, cfg);
            for (std::size_t k = 1; k < res.steps.size(); ++k) {
                const StepRecord& prev = res.steps[k - 1];
                std::size_t budget =
                    2 * static_cast<std::size_t>(n - prev.degree_a_before) +
                    2 * static_cast<std::size_t>(n - prev.degree_b_before);
                ++checked;
                if (res.steps[k].entropies_computed > budget)
                    crit[7].fail("forward run " + std::to_string(r) + " step " +
                                 std::to_string(k + 1) + ": " +
                                 std::to_string(res.steps[k].entropies_computed) + " > " +
                                 std::to_string(budget));
            }
        }

        if (crit[7].pass)
            crit[7].detail = std::to_string(checked) + " forward steps within budget";

        // Backward, warm cache: saturate forward with a shared cache, then
        // delete greedily; from the second deletion on, every miss must be
        // the previous separator minus one vertex.
        std::mt19937_64 brng(701);
        int back_checked = 0;
        for (int r = 0; r < 40; ++r) {
            int n = 4 + static_cast<int>(brng() % 5);
            Dataset data =
                random_categorical_dataset(brng, n, 150 + (brng() % 3) * 100, 3, 0.6);
            EntropyCache cache;
            StepwiseEngine engine{Graph(n)};
            // Forward warm-up to the saturated model, scoring every candidate.
            while (true) {
                std::vector<std::pair<int, int>> adds = engine.eligible_additions();
                if (adds.empty()) break;
                std::pair<int, int> best{-1, -1};
                double best_delta = 0.0;
                for (auto [a, b] : adds) {
                    double d = add_delta(cache, data, engine.addition_separator(a, b), a, b);
                    if (best.first < 0 || d > best_delta) {
                        best = {a, b};
                        best_delta = d;
                    }
                }
                engine.apply_add(best.first, best.second);
            }
            // Greedy backward to the null model.
            bool have_prev = false;
            VertexSet prev_sep(n);
            int round = 0;
            while (true) {
                std::vector<std::pair<int, int>> dels = engine.eligible_deletions();
                if (dels.empty()) break;
                ++round;
                cache.begin_step();
                std::pair<int, int> best{-1, -1};
                double best_delta = 0.0;
                for (auto [a, b] : dels) {
                    double d = delete_delta(cache, data, engine.deletion_clique(a, b), a, b);
                    if (best.first < 0 || d < best_delta) {
                        best = {a, b};
                        best_delta = d;
                    }
                }
                if (have_prev) {
                    ++back_checked;
                    std::size_t allowed =
                        prev_sep.size() == 0 ? 0 : static_cast<std::size_t>(prev_sep.size() - 1);
                    if (cache.step_misses() > allowed)
                        crit[7].fail("backward run " + std::to_string(r) + " round " +
                                     std::to_string(round) + ": " +
                                     std::to_string(cache.step_misses()) + " misses > " +
                                     std::to_string(allowed));
                    for (const VertexSet& s : cache.step_missed_sets())
                        if (!(s.is_subset_of(prev_sep) && s.size() + 1 == prev_sep.size()))
                            crit[7].fail("backward run " + std::to_string(r) + " round " +
                                         std::to_string(round) +
                                         ": miss not of the separator-minus-one form");
                }
                DeleteOutcome out = engine.apply_delete(best.first, best.second);
                prev_sep = out.separator;
                have_prev = true;
            }
        }
        if (crit[7].pass)
            crit[7].detail += " and " + std::to_string(back_checked) + " warm backward rounds";
    }

    // ---- criterion 8: first-step delta count ----------------------------
    {
        std::mt19937_64 rng(800);
        int checked = 0;
        for (int n = 3; n <= 10; ++n) {
            for (int rep = 0; rep < 3; ++rep) {
                Dataset data = random_categorical_dataset(rng, n, 120, 3, 0.5);
                SelectionConfig cfg;
                cfg.max_steps = 1;
                cfg.min_delta = -1.0;  // force the step even without signal
                RunResult res = run_selection(Graph(n), data, cfg);
                ++checked;
                std::size_t want = static_cast<std::size_t>(n) * (n - 1) / 2;
                if (res.steps.size() != 1 || res.steps[0].deltas_evaluated != want)
                    crit[8].fail("n=" + std::to_string(n) + ": evaluated " +
                                 (res.steps.empty()
                                      ? std::string("none")
                                      : std::to_string(res.steps[0].deltas_evaluated)) +
                                 ", expected " + std::to_string(want));
            }
        }
        if (crit[8].pass) crit[8].detail = std::to_string(checked) + " null-model starts, n 3-10";
    }

    // ---- criterion 9: scaling -------------------------------------------
    {
        std::mt19937_64 rng(900);
        std::vector<int> sizes = {50, 100, 200, 400};
        std::vector<double> times;
        for (int n : sizes) {
            double best = 0.0;
            for (int rep = 0; rep < 3; ++rep) {
                double t = mean_apply_seconds(rng, n, 2 * n);
                if (rep == 0 || t < best) best = t;
            }
            times.push_back(best);
        }
        double k = fitted_exponent(sizes, times);
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "fitted exponent %.2f over n=50..400 (means %.1f/%.1f/%.1f/%.1f us)", k,
                      times[0] * 1e6, times[1] * 1e6, times[2] * 1e6, times[3] * 1e6);
        crit[9].detail = buf;
        if (!(k <= kMaxScalingExponent)) crit[9].fail("exponent above 2.5");
    }

    // ---- criterion 10: spanning-forest equivalence ----------------------
    {
        std::mt19937_64 rng(1000);
        int runs = 0;
        for (int r = 0; r < 120; ++r) {
            int n = 4 + static_cast<int>(rng() % 5);
            Dataset data =
                random_categorical_dataset(rng, n, 120 + (rng() % 4) * 60, 3, 0.6);
            SelectionConfig cfg;
            cfg.min_delta = 0.0;
            cfg.max_clique_size = 2;
            RunResult res = run_selection(Graph(n), data, cfg);
            if (edge_set(res.final_graph) != kruskal_mi_forest(data))
                crit[10].fail("dataset " + std::to_string(r) + ": edge sets differ");
            ++runs;
        }
        if (crit[10].pass) crit[10].detail = std::to_string(runs) + " datasets, n 4-8";
    }

    // ---- criterion 11: strong decomposability ---------------------------
    {
        std::mt19937_64 rng(1100);
        int runs = 0;
        std::uniform_real_distribution<double> dens(0.1, 0.7);
        for (int r = 0; r < 1000; ++r) {
            int n = 2 + static_cast<int>(rng() % 9);
            Graph g = random_graph(rng, n, dens(rng));
            VertexSet discrete(n);
            for (int v = 0; v < n; ++v)
                if (rng() % 2) discrete.insert(v);

            Graph star(n + 1);
            for (int u = 0; u < n; ++u)
                for (int v = u + 1; v < n; ++v)
                    if (g.has_edge(u, v)) star.add_edge(u, v);
            discrete.for_each([&](int v) { star.add_edge(v, n); });

            if (is_strongly_decomposable(g, discrete) != is_chordal(star))
                crit[11].fail("pair " + std::to_string(r) + " disagrees");
            ++runs;
        }
        if (crit[11].pass) crit[11].detail = std::to_string(runs) + " (graph, subset) pairs";
    }

    // ---- report ---------------------------------------------------------
    int failures = 0;
    for (int c = 1; c <= 11; ++c) {
        const Criterion& k = crit[static_cast<std::size_t>(c)];
        if (!k.pass) ++failures;
        std::printf("[%s] %02d %s%s%s\n", k.pass ? "PASS" : "FAIL", c, k.title.c_str(),
                    k.detail.empty() ? "" : " -- ", k.detail.c_str());
    }
    std::printf("acceptance: %d/11 criteria passed in %.1fs\n", 11 - failures,
                now_s() - t_total);
    return failures;
}
