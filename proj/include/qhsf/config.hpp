#pragma once

/**
 * @file config.hpp
 * @brief Run configuration (JSON): tier, quadrature overrides, spectral grids, q, seed, output
 *        directory, test functions and symbol. Unknown keys are rejected so typos surface early.
 */

#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "json.hpp"
#include "qhsf/errors.hpp"
#include "qhsf/littlewood_paley.hpp"
#include "qhsf/quadrature.hpp"
#include "qhsf/spectral_grid.hpp"

namespace qhsf {

struct RunConfig {
    Tier tier = Tier::standard;
    nlohmann::json quadrature = nlohmann::json::object();  // overrides on top of the tier preset
    GridShape grid = GridShape::default_shape();
    GridShape calibration_grid = GridShape::inversion_shape();
    int q = 1;
    std::uint64_t seed = 0;
    std::string output_dir = "qhsf_out";
    std::string calibration_file = "calibration.json";  // relative to output_dir unless absolute
    nlohmann::json function = {{"name", "gaussian"}, {"a", 1.0}, {"b", 1.0}};
    nlohmann::json second_function = {{"name", "gaussian"}, {"a", 1.5}, {"b", 0.7}};
    nlohmann::json reference = {{"name", "gaussian"}, {"a", 1.0}, {"b", 1.0}};
    nlohmann::json symbol = {{"name", "constant"}, {"value", 1.0}};
    int lp_j_min = -12;
    int lp_j_max = 12;
    std::vector<int> kernel_scales = {0, 1};

    [[nodiscard]] QuadratureConfig quadrature_config() const {
        QuadratureConfig c = QuadratureConfig::for_tier(tier);
        if (quadrature.empty()) return c;
        nlohmann::json j = c;
        j.merge_patch(quadrature);
        return j.get<QuadratureConfig>();
    }
    [[nodiscard]] QuadratureSpec spec() const { return build_spec(quadrature_config()); }
    [[nodiscard]] LPPartition partition() const { return lp_build(lp_j_min, lp_j_max); }

    void validate() const {
        if (q < 1) throw InputError("config: q must be >= 1");
        grid.validate();
        calibration_grid.validate();
        (void)spec();
        (void)partition();
        if (output_dir.empty()) throw InputError("config: output_dir must not be empty");
    }
};

inline void to_json(nlohmann::json& j, const RunConfig& c) {
    j = nlohmann::json{{"tier", to_string(c.tier)},
                       {"quadrature", c.quadrature},
                       {"grid", c.grid},
                       {"calibration_grid", c.calibration_grid},
                       {"q", c.q},
                       {"seed", c.seed},
                       {"output_dir", c.output_dir},
                       {"calibration_file", c.calibration_file},
                       {"function", c.function},
                       {"second_function", c.second_function},
                       {"reference", c.reference},
                       {"symbol", c.symbol},
                       {"lp_j_min", c.lp_j_min},
                       {"lp_j_max", c.lp_j_max},
                       {"kernel_scales", c.kernel_scales}};
}

inline void from_json(const nlohmann::json& j, RunConfig& c) {
    if (!j.is_object()) throw InputError("config: top level must be a JSON object");
    static const std::set<std::string> known{"tier",          "quadrature",     "grid",       "calibration_grid",
                                             "q",             "seed",           "output_dir", "calibration_file",
                                             "function",      "second_function", "reference", "symbol",
                                             "lp_j_min",      "lp_j_max",       "kernel_scales"};
    for (const auto& [k, v] : j.items())
        if (!known.count(k)) throw InputError("config: unknown key '" + k + "'");
    c = RunConfig{};
    try {
        if (j.contains("tier")) c.tier = parse_tier(j.at("tier").get<std::string>());
        if (j.contains("quadrature")) c.quadrature = j.at("quadrature");
        if (j.contains("grid")) c.grid = j.at("grid").get<GridShape>();
        if (j.contains("calibration_grid")) c.calibration_grid = j.at("calibration_grid").get<GridShape>();
        c.q = j.value("q", c.q);
        c.seed = j.value("seed", c.seed);
        c.output_dir = j.value("output_dir", c.output_dir);
        c.calibration_file = j.value("calibration_file", c.calibration_file);
        if (j.contains("function")) c.function = j.at("function");
        if (j.contains("second_function")) c.second_function = j.at("second_function");
        if (j.contains("reference")) c.reference = j.at("reference");
        if (j.contains("symbol")) c.symbol = j.at("symbol");
        c.lp_j_min = j.value("lp_j_min", c.lp_j_min);
        c.lp_j_max = j.value("lp_j_max", c.lp_j_max);
        c.kernel_scales = j.value("kernel_scales", c.kernel_scales);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("config: ") + e.what());
    }
    c.validate();
}

inline RunConfig parse_config(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(std::string("config parse error: ") + e.what());
    }
    return j.get<RunConfig>();
}

inline RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("config: cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

}  // namespace qhsf
