#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "chordwise/dataset.hpp"
#include "chordwise/engine.hpp"
#include "chordwise/graph.hpp"

namespace chordwise {

enum class OutputFormat { json, dot, tsv };

// "json" | "dot" | "tsv-trace"; throws UnknownFormat otherwise.
OutputFormat parse_format(const std::string& name);

// Complete, self-describing record of one selection run: inputs, settings,
// the per-step trace and the final model. Serializes to stable JSON; wall
// times are opt-in so default output depends only on the inputs.
struct RunManifest {
    struct Column {
        std::string name;
        int domain_size = 0;
        bool operator==(const Column&) const = default;
    };
    struct Step {
        int step = 0;
        std::string action;  // "add" | "remove"
        int v_a = -1, v_b = -1;
        std::vector<int> separator;
        double delta = 0.0;
        std::uint64_t entropies_computed = 0;
        std::uint64_t deltas_evaluated = 0;
        double h_model_after = 0.0;
        bool operator==(const Step&) const = default;
    };

    std::string input;
    std::vector<Column> columns;
    std::string mode;
    int max_steps = 0;
    double min_delta = 0.0;
    std::optional<int> max_clique_size;
    double h_model_start = 0.0;
    std::vector<Step> steps;
    std::vector<std::pair<int, int>> final_edges;
    std::vector<std::vector<int>> final_cliques;     // sorted lexicographically
    std::vector<std::vector<int>> final_separators;  // multiset, sorted
    double h_model_final = 0.0;
    std::optional<std::vector<double>> step_wall_s;  // present only when timing was requested

    bool operator==(const RunManifest&) const = default;

    static RunManifest from_run(const std::string& input_name, const Dataset& data,
                                const SelectionConfig& config, const RunResult& result,
                                bool with_timings);

    nlohmann::ordered_json to_json() const;
    static RunManifest from_json(const nlohmann::ordered_json& j);
};

// 2-space indented JSON with a trailing newline.
std::string to_json_text(const RunManifest& m);

// Graphviz rendering of the final graph; vertices labelled by column name.
std::string to_dot(const Graph& g, const Dataset& data);

// Tab-separated step trace. Header:
// step action v_a v_b separator delta entropies_computed H_model
std::string to_tsv_trace(const RunResult& result);

std::string render(const RunManifest& m, const RunResult& result, const Dataset& data,
                   OutputFormat format);

}  // namespace chordwise
