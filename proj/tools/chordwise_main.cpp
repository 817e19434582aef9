#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "chordwise/chordal.hpp"
#include "chordwise/dataset.hpp"
#include "chordwise/engine.hpp"
#include "chordwise/errors.hpp"
#include "chordwise/manifest.hpp"
#include "chordwise/oracle.hpp"

namespace {

using namespace chordwise;

Dataset load_dataset(const std::string& path) {
    if (path == "-") return Dataset::from_csv(std::cin);
    return Dataset::from_csv_file(path);
}

// Whitespace-separated vertex-id pairs; '#' starts a comment to end of line.
Graph load_init_graph(const std::string& path, int n) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open init-edges file: " + path);
    std::vector<long long> ids;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        long long v;
        while (ls >> v) ids.push_back(v);
        if (ls.fail() && !ls.eof())
            throw IoError("init-edges line " + std::to_string(lineno) + ": invalid token");
    }
    if (ids.size() % 2 != 0) throw IoError("init-edges: odd number of vertex ids");
    Graph g(n);
    for (std::size_t i = 0; i < ids.size(); i += 2) {
        long long u = ids[i], v = ids[i + 1];
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw IoError("init-edges: vertex id out of range [0, " + std::to_string(n) + ")");
        if (u == v) throw IoError("init-edges: self-loop on vertex " + std::to_string(u));
        if (g.has_edge(static_cast<int>(u), static_cast<int>(v)))
            throw IoError("init-edges: duplicate edge (" + std::to_string(u) + ", " +
                          std::to_string(v) + ")");
        g.add_edge(static_cast<int>(u), static_cast<int>(v));
    }
    if (!is_chordal(g))
        throw NotChordal("init-edges graph is not chordal; cannot start selection from it");
    return g;
}

void write_output(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open output file: " + path);
    out << text;
    if (!out) throw IoError("failed writing output file: " + path);
}

int run(int argc, char** argv) {
    CLI::App app{"Greedy structure learning for decomposable graphical models"};
    app.require_subcommand(0, 1);

    std::string input;
    std::string mode = "forward";
    int max_steps = std::numeric_limits<int>::max();
    double min_delta = 1e-9;
    std::optional<int> max_clique_size;
    std::string format = "json";
    std::string out_path = "-";
    bool timings = false;
    std::string init_edges;

    app.add_option("input", input, "CSV dataset ('-' for stdin)");
    app.add_option("--mode", mode, "Selection mode")
        ->check(CLI::IsMember({"forward", "backward", "alternating"}));
    app.add_option("--max-steps", max_steps, "Stop after this many edge changes");
    app.add_option("--min-delta", min_delta,
                   "Entropy threshold: additions need delta >= this, removals <= this");
    app.add_option("--max-clique-size", max_clique_size, "Skip additions exceeding this clique size");
    app.add_option("--format", format, "Output format: json, dot or tsv-trace");
    app.add_option("--out", out_path, "Output path ('-' for stdout)");
    app.add_flag("--timings", timings, "Include per-step wall times in the JSON manifest");
    app.add_option("--init-edges", init_edges, "Start from this edge list (must be chordal)");

    auto* verify = app.add_subcommand(
        "verify", "Replay a random trajectory against the brute-force oracle");
    std::uint64_t seed = 1;
    int vn = 8, vsteps = 25;
    bool vscores = false;
    verify->add_option("--seed", seed, "Trajectory seed");
    verify->add_option("--n", vn, "Vertex count")->check(CLI::PositiveNumber);
    verify->add_option("--steps", vsteps, "Edge changes to replay");
    verify->add_flag("--scores", vscores, "Also cross-check incremental scoring");

    CLI11_PARSE(app, argc, argv);

    if (verify->parsed()) {
        TrajectoryOptions opt;
        opt.n = vn;
        opt.steps = vsteps;
        opt.check_scores = vscores;
        OracleReport rep = verify_trajectory(seed, opt);
        if (!rep.ok) {
            std::cerr << "divergence at step " << rep.failed_step << ": " << rep.reason << "\n";
            return 2;
        }
        std::cout << "ok: trajectory (seed=" << seed << ", n=" << vn << ", steps=" << vsteps
                  << ") matches the reference\n";
        return 0;
    }

    if (input.empty()) throw IoError("no input dataset given (use '-' for stdin)");
    OutputFormat fmt = parse_format(format);
    Dataset data = load_dataset(input);

    SelectionConfig config;
    if (mode == "backward") config.mode = SelectionConfig::Mode::backward;
    if (mode == "alternating") config.mode = SelectionConfig::Mode::alternating;
    config.max_steps = max_steps;
    config.min_delta = min_delta;
    config.max_clique_size = max_clique_size;

    Graph g0(data.n_columns());
    if (!init_edges.empty())
        g0 = load_init_graph(init_edges, data.n_columns());
    else if (config.mode == SelectionConfig::Mode::backward)
        g0 = Graph::complete(data.n_columns());

    RunResult result = run_selection(g0, data, config);
    RunManifest manifest = RunManifest::from_run(input, data, config, result, timings);
    write_output(out_path, render(manifest, result, data, fmt));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const chordwise::InternalInconsistency& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    } catch (const chordwise::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
