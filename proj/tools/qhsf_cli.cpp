// qhsf: command-line driver (invariants | transform | isft | convolve | multiplier | calibrate).

#include <iostream>

#include "CLI11.hpp"
#include "qhsf.hpp"

int main(int argc, char** argv) {
    qhsf::CliOptions o;
    CLI::App app{"Spherical analysis on the quaternionic Heisenberg group"};
    app.add_option("command", o.command, "invariants | transform | isft | convolve | multiplier | calibrate")
        ->required()
        ->check(CLI::IsMember({"invariants", "transform", "isft", "convolve", "multiplier", "calibrate"}));
    app.add_option("--config", o.config_path, "JSON run configuration");
    app.add_option("--tier", o.tier, "quadrature tier: fast | standard | strict");
    app.add_option("--seed", o.seed, "seed for randomized suites");
    app.add_option("--out", o.out, "output directory");
    app.add_option("--function", o.function, "test function: name or JSON object");
    app.add_option("--param", o.params, "function parameter key=value (repeatable)");
    app.add_option("--symbol", o.symbol, "multiplier symbol: name or JSON object");
    app.add_option("--input", o.input, "isft: spectral CSV (default <out>/transform.csv)");
    app.add_flag("--roundtrip", o.roundtrip, "transform: invert and record the relative L2 error");
    app.add_flag("--refine", o.refine, "calibrate: refit on the doubled grid and report drift");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? qhsf::exit_ok : qhsf::exit_bad_input;
    }
    return qhsf::run_command(o, std::cout, std::cerr);
}
