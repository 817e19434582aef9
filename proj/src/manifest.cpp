#include "chordwise/manifest.hpp"

#include <algorithm>
#include <cstdio>

#include "chordwise/errors.hpp"

namespace chordwise {

namespace {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string mode_name(SelectionConfig::Mode m) {
    switch (m) {
        case SelectionConfig::Mode::forward: return "forward";
        case SelectionConfig::Mode::backward: return "backward";
        case SelectionConfig::Mode::alternating: return "alternating";
    }
    return "forward";
}

std::vector<int> set_members(const VertexSet& s) { return s.members(); }

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '\\' || c == '"') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

}  // namespace

OutputFormat parse_format(const std::string& name) {
    if (name == "json") return OutputFormat::json;
    if (name == "dot") return OutputFormat::dot;
    if (name == "tsv-trace") return OutputFormat::tsv;
    throw UnknownFormat("unknown output format \"" + name +
                        "\" (expected json, dot or tsv-trace)");
}

RunManifest RunManifest::from_run(const std::string& input_name, const Dataset& data,
                                  const SelectionConfig& config, const RunResult& result,
                                  bool with_timings) {
    RunManifest m;
    m.input = input_name;
    for (int c = 0; c < data.n_columns(); ++c)
        m.columns.push_back({data.column_name(c), data.domain_size(c)});
    m.mode = mode_name(config.mode);
    m.max_steps = config.max_steps;
    m.min_delta = config.min_delta;
    m.max_clique_size = config.max_clique_size;
    m.h_model_start = result.h_model_start;
    for (const StepRecord& r : result.steps) {
        Step s;
        s.step = r.step;
        s.action = r.action == StepAction::add ? "add" : "remove";
        s.v_a = r.va;
        s.v_b = r.vb;
        s.separator = set_members(r.separator);
        s.delta = r.delta;
        s.entropies_computed = r.entropies_computed;
        s.deltas_evaluated = r.deltas_evaluated;
        s.h_model_after = r.h_model_after;
        m.steps.push_back(std::move(s));
    }
    m.final_edges = result.final_graph.edges();
    for (const VertexSet& c : result.score.cliques) m.final_cliques.push_back(set_members(c));
    std::sort(m.final_cliques.begin(), m.final_cliques.end());
    for (const auto& [sep, count] : result.score.separators)
        for (int i = 0; i < count; ++i) m.final_separators.push_back(set_members(sep));
    std::sort(m.final_separators.begin(), m.final_separators.end());
    m.h_model_final = result.score.h_model;
    if (with_timings) m.step_wall_s = result.step_wall_s;
    return m;
}

nlohmann::ordered_json RunManifest::to_json() const {
    nlohmann::ordered_json j;
    j["input"] = input;
    j["columns"] = nlohmann::ordered_json::array();
    for (const Column& c : columns)
        j["columns"].push_back({{"name", c.name}, {"domain_size", c.domain_size}});
    j["config"] = {{"mode", mode},
                   {"max_steps", max_steps},
                   {"min_delta", min_delta}};
    if (max_clique_size)
        j["config"]["max_clique_size"] = *max_clique_size;
    j["h_model_start"] = h_model_start;
    j["steps"] = nlohmann::ordered_json::array();
    for (const Step& s : steps) {
        nlohmann::ordered_json js{{"step", s.step},
                                  {"action", s.action},
                                  {"v_a", s.v_a},
                                  {"v_b", s.v_b},
                                  {"separator", s.separator},
                                  {"delta", s.delta},
                                  {"entropies_computed", s.entropies_computed},
                                  {"deltas_evaluated", s.deltas_evaluated},
                                  {"h_model_after", s.h_model_after}};
        j["steps"].push_back(std::move(js));
    }
    j["final_model"] = {{"edges", final_edges},
                        {"cliques", final_cliques},
                        {"separators", final_separators},
                        {"h_model", h_model_final}};
    if (step_wall_s) j["step_wall_s"] = *step_wall_s;
    return j;
}

RunManifest RunManifest::from_json(const nlohmann::ordered_json& j) {
    RunManifest m;
    m.input = j.at("input").get<std::string>();
    for (const auto& jc : j.at("columns"))
        m.columns.push_back({jc.at("name").get<std::string>(), jc.at("domain_size").get<int>()});
    const auto& cfg = j.at("config");
    m.mode = cfg.at("mode").get<std::string>();
    m.max_steps = cfg.at("max_steps").get<int>();
    m.min_delta = cfg.at("min_delta").get<double>();
    if (cfg.contains("max_clique_size")) m.max_clique_size = cfg.at("max_clique_size").get<int>();
    m.h_model_start = j.at("h_model_start").get<double>();
    for (const auto& js : j.at("steps")) {
        Step s;
        s.step = js.at("step").get<int>();
        s.action = js.at("action").get<std::string>();
        s.v_a = js.at("v_a").get<int>();
        s.v_b = js.at("v_b").get<int>();
        s.separator = js.at("separator").get<std::vector<int>>();
        s.delta = js.at("delta").get<double>();
        s.entropies_computed = js.at("entropies_computed").get<std::uint64_t>();
        s.deltas_evaluated = js.at("deltas_evaluated").get<std::uint64_t>();
        s.h_model_after = js.at("h_model_after").get<double>();
        m.steps.push_back(std::move(s));
    }
    const auto& fin = j.at("final_model");
    m.final_edges = fin.at("edges").get<std::vector<std::pair<int, int>>>();
    m.final_cliques = fin.at("cliques").get<std::vector<std::vector<int>>>();
    m.final_separators = fin.at("separators").get<std::vector<std::vector<int>>>();
    m.h_model_final = fin.at("h_model").get<double>();
    if (j.contains("step_wall_s")) m.step_wall_s = j.at("step_wall_s").get<std::vector<double>>();
    return m;
}

std::string to_json_text(const RunManifest& m) { return m.to_json().dump(2) + "\n"; }

std::string to_dot(const Graph& g, const Dataset& data) {
    std::string out = "graph model {\n";
    for (int v = 0; v < g.vertex_count(); ++v) {
        std::string label = v < data.n_columns() ? data.column_name(v) : std::to_string(v);
        out += "  " + std::to_string(v) + " [label=\"" + dot_escape(label) + "\"];\n";
    }
    for (auto [u, v] : g.edges())
        out += "  " + std::to_string(u) + " -- " + std::to_string(v) + ";\n";
    out += "}\n";
    return out;
}

std::string to_tsv_trace(const RunResult& result) {
    std::string out = "step\taction\tv_a\tv_b\tseparator\tdelta\tentropies_computed\tH_model\n";
    for (const StepRecord& r : result.steps) {
        out += std::to_string(r.step);
        out += '\t';
        out += r.action == StepAction::add ? "add" : "remove";
        out += '\t';
        out += std::to_string(r.va);
        out += '\t';
        out += std::to_string(r.vb);
        out += '\t';
        out += r.separator.to_string();
        out += '\t';
        out += format_double(r.delta);
        out += '\t';
        out += std::to_string(r.entropies_computed);
        out += '\t';
        out += format_double(r.h_model_after);
        out += '\n';
    }
    return out;
}

std::string render(const RunManifest& m, const RunResult& result, const Dataset& data,
                   OutputFormat format) {
    switch (format) {
        case OutputFormat::json: return to_json_text(m);
        case OutputFormat::dot: return to_dot(result.final_graph, data);
        case OutputFormat::tsv: return to_tsv_trace(result);
    }
    return {};
}

}  // namespace chordwise
