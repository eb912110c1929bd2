#pragma once

/**
 * @file cli.hpp
 * @brief Commands behind the `qhsf` executable: invariants | transform | isft | convolve | multiplier | calibrate.
 *        Exit codes: 0 success, 1 assertion/numeric failure, 2 bad input or configuration.
 */

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "qhsf/config.hpp"
#include "qhsf/suites.hpp"

namespace qhsf {

struct CliOptions {
    std::string command;
    std::string config_path;
    std::optional<std::string> tier;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<std::string> function;  // name or JSON object
    std::vector<std::string> params;      // key=value overrides for the function
    std::optional<std::string> symbol;    // name or JSON object
    std::optional<std::string> input;     // isft: spectral CSV
    bool roundtrip = false;
    bool refine = false;
};

enum ExitCode { exit_ok = 0, exit_failure = 1, exit_bad_input = 2 };

namespace detail {

inline nlohmann::json named_or_json(const std::string& s, const char* what) {
    if (!s.empty() && s.front() == '{') {
        try {
            return nlohmann::json::parse(s);
        } catch (const nlohmann::json::parse_error& e) {
            throw InputError(std::string(what) + ": " + e.what());
        }
    }
    return nlohmann::json{{"name", s}};
}

inline void write_text(const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw InputError("cannot write '" + p.string() + "'");
    out << text;
}

inline void write_json(const std::filesystem::path& p, const nlohmann::json& j) { write_text(p, j.dump(2) + "\n"); }

inline std::filesystem::path output_dir(const RunConfig& c) {
    std::filesystem::path d(c.output_dir);
    std::filesystem::create_directories(d);
    return d;
}

inline std::filesystem::path calibration_path(const RunConfig& c) {
    std::filesystem::path p(c.calibration_file);
    return p.is_absolute() ? p : std::filesystem::path(c.output_dir) / p;
}

/// Ray samples of a radial function (ray, homogeneous norm) for CSV output.
inline std::string ray_samples_csv(const std::function<cplx(const GroupPoint&)>& f, double max_norm = 3.0, int count = 31) {
    std::ostringstream os;
    os << "ray,norm,re,im\n";
    static const char* names[] = {"u", "t", "mixed"};
    int r = 0;
    for (Ray ray : {Ray::u_axis, Ray::t_axis, Ray::mixed}) {
        for (int i = 0; i < count; ++i) {
            const double s = max_norm * i / (count - 1);
            const cplx v = f(ray_point(ray, s));
            os << names[r] << ',' << fmt_double(s) << ',' << fmt_double(v.real()) << ',' << fmt_double(v.imag()) << '\n';
        }
        ++r;
    }
    return os.str();
}

}  // namespace detail

/// Configuration from file (or defaults) with command-line overrides applied.
inline RunConfig resolve_config(const CliOptions& o) {
    RunConfig c = o.config_path.empty() ? RunConfig{} : load_config(o.config_path);
    if (o.tier) c.tier = parse_tier(*o.tier);
    if (o.seed) c.seed = *o.seed;
    if (o.out) c.output_dir = *o.out;
    if (o.function) c.function = detail::named_or_json(*o.function, "--function");
    for (const auto& kv : o.params) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0) throw InputError("--param expects key=value, got '" + kv + "'");
        const std::string key = kv.substr(0, eq), val = kv.substr(eq + 1);
        try {
            c.function[key] = nlohmann::json::parse(val);
        } catch (const nlohmann::json::parse_error&) {
            c.function[key] = val;
        }
    }
    if (o.symbol) c.symbol = detail::named_or_json(*o.symbol, "--symbol");
    c.validate();
    return c;
}

struct CalibrationRecord {
    PlancherelFit fit;
    RepCalibration rep;
    nlohmann::json fingerprint;
    bool reused = false;
    nlohmann::json refinement = nullptr;
};

inline nlohmann::json calibration_fingerprint(const RunConfig& c) {
    return nlohmann::json{{"reference", c.reference},
                          {"grid", c.calibration_grid},
                          {"quadrature", c.quadrature_config()},
                          {"q", c.q},
                          {"seed", c.seed}};
}

inline nlohmann::json calibration_json(const CalibrationRecord& r) {
    nlohmann::json j{{"c", r.fit.weight.c},
                     {"a", r.fit.weight.a},
                     {"mu", "n+1"},
                     {"rep_coefficients", r.rep.best},
                     {"residuals",
                      {{"plancherel_fitted", r.fit.fitted_error},
                       {"plancherel_initial", r.fit.initial_error},
                       {"rep_homomorphism", r.rep.best_residual},
                       {"rep_canonical_triple", r.rep.canonical_residual}}},
                     {"plancherel_fit", r.fit},
                     {"rep_calibration", r.rep},
                     {"fingerprint", r.fingerprint}};
    if (!r.refinement.is_null()) j["refinement"] = r.refinement;
    return j;
}

/// Reads a calibration file when it matches the configuration's fingerprint.
inline std::optional<CalibrationRecord> read_calibration(const RunConfig& c) {
    const auto path = detail::calibration_path(c);
    if (!std::filesystem::exists(path)) return std::nullopt;
    std::ifstream in(path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError("calibration file '" + path.string() + "': " + e.what());
    }
    if (j.value("fingerprint", nlohmann::json()) != calibration_fingerprint(c)) return std::nullopt;
    CalibrationRecord r;
    try {
        r.fit.weight = {j.at("c").get<double>(), j.at("a").get<double>(), true};
        r.fit.fitted_error = j.at("residuals").at("plancherel_fitted").get<double>();
        r.fit.initial_error = j.at("residuals").at("plancherel_initial").get<double>();
        r.fit.reference = c.reference.value("name", "");
        const auto rc = j.at("rep_coefficients").get<std::vector<double>>();
        if (rc.size() != 3) throw InputError("calibration file: rep_coefficients must have 3 entries");
        r.rep.best = {rc[0], rc[1], rc[2]};
        r.rep.best_residual = j.at("residuals").at("rep_homomorphism").get<double>();
        r.rep.canonical_residual = j.at("residuals").value("rep_canonical_triple", 0.0);
    } catch (const nlohmann::json::exception& e) {
        throw InputError("calibration file '" + path.string() + "': " + e.what());
    }
    r.fingerprint = j.at("fingerprint");
    r.reused = true;
    if (j.contains("refinement")) r.refinement = j.at("refinement");
    return r;
}

inline CalibrationRecord run_calibration(const RunConfig& c, bool refine, std::ostream& log) {
    CalibrationRecord r;
    const QuadratureSpec spec = c.spec();
    const RadialFunction ref = function_from_json(c.reference);
    r.fit = calibrate_plancherel(ref, make_grid(c.calibration_grid), spec);
    r.rep = calibrate_rep(Vec3{0.3, -0.5, 0.8}, c.seed);
    r.fingerprint = calibration_fingerprint(c);
    log << "calibrated: c=" << r.fit.weight.c << " a=" << r.fit.weight.a << " round-trip error " << r.fit.fitted_error
        << "\n";
    if (refine) {
        const PlancherelFit fine = calibrate_plancherel(ref, make_grid(c.calibration_grid.refined()), spec);
        const double dc = (fine.weight.c - r.fit.weight.c) / r.fit.weight.c;
        const double da = (fine.weight.a - r.fit.weight.a) / r.fit.weight.a;
        r.refinement = {{"grid", c.calibration_grid.refined()},
                        {"c", fine.weight.c},
                        {"a", fine.weight.a},
                        {"fitted_error", fine.fitted_error},
                        {"drift_c", dc},
                        {"drift_a", da}};
        log << "refined grid: c=" << fine.weight.c << " a=" << fine.weight.a << " drift c " << dc << ", a " << da << "\n";
    }
    return r;
}

/// Calibration from the file when it matches the configuration, otherwise a fresh fit (persisted).
inline CalibrationRecord load_or_calibrate(const RunConfig& c, std::ostream& log, bool refine = false) {
    if (auto r = read_calibration(c); r && (!refine || !r->refinement.is_null())) {
        log << "reusing calibration from " << detail::calibration_path(c).string() << "\n";
        return *r;
    }
    CalibrationRecord r = run_calibration(c, refine, log);
    detail::output_dir(c);
    detail::write_json(detail::calibration_path(c), calibration_json(r));
    return r;
}

inline int cmd_invariants(const RunConfig& c, std::ostream& log) {
    SuiteContext ctx(c);
    const Report rep = run_invariants(ctx);
    const auto dir = detail::output_dir(c);
    detail::write_json(dir / "invariants_report.json", rep);
    for (const auto& ch : rep.checks) {
        log << "[" << to_string(ch.status) << "] " << ch.name << ": " << ch.value;
        if (!ch.comparison.empty()) log << " " << ch.comparison << " " << ch.threshold;
        if (ch.status == Status::fail && !ch.detail.empty()) log << " (" << ch.detail << ")";
        log << "\n";
    }
    log << rep.count(Status::pass) << " passed, " << rep.count(Status::fail) << " failed, " << rep.count(Status::report)
        << " report-only (" << rep.wall_time << " s)\n";
    return rep.all_passed() ? exit_ok : exit_failure;
}

inline int cmd_transform(const RunConfig& c, bool roundtrip, std::ostream& log) {
    const RadialFunction f = function_from_json(c.function);
    const QuadratureSpec spec = c.spec();
    const SpectralGrid S = sft(f, make_grid(c.grid), spec);
    const auto dir = detail::output_dir(c);
    std::ostringstream csv;
    write_spectral_csv(csv, S);
    detail::write_text(dir / "transform.csv", csv.str());
    nlohmann::json meta{{"function", c.function},
                        {"grid", grid_metadata(S)},
                        {"tier", to_string(c.tier)},
                        {"quadrature", c.quadrature_config()},
                        {"seed", c.seed}};
    if (roundtrip) {
        const CalibrationRecord cal = load_or_calibrate(c, log);
        const InverseSft inv(sft(f, make_grid(c.calibration_grid), spec), cal.fit.weight);
        const double e = roundtrip_error(f, inv);
        meta["roundtrip_relative_l2_error"] = e;
        meta["roundtrip"] = {{"relative_l2_error", e}, {"grid", c.calibration_grid}, {"weight", cal.fit.weight}};
        log << "round-trip relative L2 error " << e << "\n";
    }
    detail::write_json(dir / "transform_meta.json", meta);
    log << "wrote " << (dir / "transform.csv").string() << " (" << S.n_nodes() * S.n_count() << " rows)\n";
    return exit_ok;
}

/// Parses a spectral CSV and checks it against the configured grid.
inline SpectralGrid read_spectral_csv(std::istream& in, const SpectralGrid& like) {
    SpectralGrid S = like.like();
    std::string line;
    if (!std::getline(in, line) || line != "lambda_x,lambda_y,lambda_z,n,re,im")
        throw InputError("spectral CSV: unexpected header");
    std::size_t row = 0;
    const std::size_t rows = S.n_nodes() * S.n_count();
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (row >= rows) throw InputError("spectral CSV: more rows than the configured grid");
        std::istringstream ls(line);
        std::string cell;
        std::vector<double> v;
        while (std::getline(ls, cell, ',')) {
            try {
                v.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw InputError("spectral CSV: bad number '" + cell + "' in row " + std::to_string(row + 1));
            }
        }
        if (v.size() != 6) throw InputError("spectral CSV: expected 6 columns in row " + std::to_string(row + 1));
        const std::size_t node = row / S.n_count(), ir = node / S.n_dirs(), id = node % S.n_dirs();
        const int n = static_cast<int>(row % S.n_count());
        const Vec3 l = S.lambda(ir, id);
        const double scale = std::max(1.0, norm(l));
        if (norm(Vec3{v[0], v[1], v[2]} - l) > 1e-12 * scale || static_cast<int>(v[3]) != n)
            throw InputError("spectral CSV: row " + std::to_string(row + 1) + " does not match the configured grid");
        S.at(ir, id, n) = {v[4], v[5]};
        ++row;
    }
    if (row != rows) throw InputError("spectral CSV: fewer rows than the configured grid");
    return S;
}

inline int cmd_isft(const RunConfig& c, const std::optional<std::string>& input, std::ostream& log) {
    const auto dir = detail::output_dir(c);
    const std::filesystem::path path = input ? std::filesystem::path(*input) : dir / "transform.csv";
    std::ifstream in(path);
    if (!in) throw InputError("isft: cannot open '" + path.string() + "'");
    const SpectralGrid S = read_spectral_csv(in, make_grid(c.grid));
    const CalibrationRecord cal = load_or_calibrate(c, log);
    const InverseSft inv(S, cal.fit.weight);
    detail::write_text(dir / "isft.csv", detail::ray_samples_csv([&](const GroupPoint& g) { return inv(g); }));
    detail::write_json(dir / "isft_meta.json", {{"input", path.string()}, {"grid", grid_metadata(S)}, {"weight", cal.fit.weight}});
    log << "wrote " << (dir / "isft.csv").string() << "\n";
    return exit_ok;
}

inline int cmd_convolve(const RunConfig& c, std::ostream& log) {
    const RadialFunction f = function_from_json(c.function), g = function_from_json(c.second_function);
    const QuadratureSpec spec = c.spec();
    const SpectralGrid G = make_grid(c.grid);
    const SpectralGrid conv = convolution_transform(f, g, G, spec);
    const double residual = grid_max_abs_diff(conv, grid_product(sft(f, G, spec), sft(g, G, spec)));
    const auto dir = detail::output_dir(c);
    std::ostringstream csv;
    write_spectral_csv(csv, conv);
    detail::write_text(dir / "convolve.csv", csv.str());
    detail::write_json(dir / "convolve_meta.json", {{"f", c.function},
                                                     {"g", c.second_function},
                                                     {"grid", grid_metadata(conv)},
                                                     {"convolution_theorem_residual", residual}});
    log << "convolution theorem residual " << residual << "\n";
    return exit_ok;
}

inline int cmd_multiplier(const RunConfig& c, std::ostream& log) {
    const Symbol m = symbol_from_json(c.symbol);
    const RadialFunction f = function_from_json(c.function);
    const QuadratureSpec spec = c.spec();
    const CalibrationRecord cal = load_or_calibrate(c, log);
    const SpectralMap map = SpectralMap::from_oracle(std::max(KernelPlan{}.n_max, c.calibration_grid.n_max));
    const LPPartition part = c.partition();
    const auto dir = detail::output_dir(c);

    const MultiplierResult T = apply_multiplier(m, f, make_grid(c.calibration_grid), cal.fit.weight, map, spec);
    detail::write_text(dir / "multiplier_samples.csv", detail::ray_samples_csv([&](const GroupPoint& g) { return T(g); }));

    const HormanderReport h1 = hormander_dyadic_norm(m, 1), hQ = hormander_dyadic_norm(m, 10);
    const MihlinReport mi = mihlin_sup_norm(m, 6);
    std::vector<KernelGrid> kernels;
    nlohmann::json fits = nlohmann::json::array();
    for (int j : c.kernel_scales) {
        kernels.push_back(dyadic_kernel(m, j, part, map, cal.fit.weight));
        fits.push_back(kernel_decay_report(kernels.back(), {6, 11, 16}, 10));
    }
    std::ostringstream kcsv;
    write_kernel_csv(kcsv, kernels);
    detail::write_text(dir / "kernel.csv", kcsv.str());
    const DirectDiscrepancy d = multiplier_direct_discrepancy(m, f, make_grid(c.grid), map, spec);
    detail::write_json(dir / "multiplier_report.json", {{"symbol", m.descriptor},
                                                         {"function", c.function},
                                                         {"hormander_dim1", h1},
                                                         {"hormander_dimQ", hQ},
                                                         {"mihlin", mi},
                                                         {"kernel_fits", fits},
                                                         {"symbol_sup_on_grid", T.symbol_sup},
                                                         {"direct_integral_discrepancy", d},
                                                         {"weight", cal.fit.weight}});
    log << "Hormander (dim 1) " << h1.value << (h1.divergent ? " [divergence flagged]" : "") << "; Mihlin " << mi.value
        << (mi.divergent ? " [divergence flagged]" : "") << "\n";
    return exit_ok;
}

inline int cmd_calibrate(const RunConfig& c, bool refine, std::ostream& log) {
    const CalibrationRecord r = load_or_calibrate(c, log, refine);
    const auto dir = detail::output_dir(c);
    nlohmann::json rep{{"reused", r.reused},
                       {"calibration_file", detail::calibration_path(c).string()},
                       {"c", r.fit.weight.c},
                       {"a", r.fit.weight.a},
                       {"rep_coefficients", r.rep.best}};
    if (!r.refinement.is_null()) rep["refinement"] = r.refinement;
    detail::write_json(dir / "calibrate_report.json", rep);
    return exit_ok;
}

/// Dispatches a command; maps exceptions to exit codes and prints diagnostics to err.
inline int run_command(const CliOptions& o, std::ostream& log, std::ostream& err) {
    try {
        const RunConfig c = resolve_config(o);
        if (c.q != 1 && o.command != "invariants")
            throw InputError("only q = 1 is supported by the transform and multiplier commands");
        if (o.command == "invariants") return cmd_invariants(c, log);
        if (o.command == "transform") return cmd_transform(c, o.roundtrip, log);
        if (o.command == "isft") return cmd_isft(c, o.input, log);
        if (o.command == "convolve") return cmd_convolve(c, log);
        if (o.command == "multiplier") return cmd_multiplier(c, log);
        if (o.command == "calibrate") return cmd_calibrate(c, o.refine, log);
        throw InputError("unknown command '" + o.command + "'");
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return exit_bad_input;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return exit_bad_input;
    } catch (const std::exception& e) {
        err << "failure: " << e.what() << "\n";
        return exit_failure;
    }
}

}  // namespace qhsf
