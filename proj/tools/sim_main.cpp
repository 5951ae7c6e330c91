#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "homsim/config.hpp"
#include "homsim/errors.hpp"

namespace {

// Exit codes: 0 success, 1 oracle mismatch, 2 configuration error,
// 3 numerical error.

struct Cli {
    std::string mode;
    std::string config_path;
    std::optional<std::string> out;
    std::optional<double> tol;
    std::optional<double> d_min, d_max, d_step;
    std::optional<double> r, t;
    std::optional<std::string> sign;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-photon interference coincidence-rate simulator"};
    Cli cli;
    app.add_option("mode", cli.mode,
                   "run mode: sweep | symmetry-check | polar-sweep | oracle-compare")
        ->required();
    app.add_option("--config", cli.config_path, "JSON run configuration file")->required();
    app.add_option("--out", cli.out, "output path (overrides config)");
    app.add_option("--tol", cli.tol, "tolerance (overrides config)");
    app.add_option("--d-min", cli.d_min, "scan start (overrides config)");
    app.add_option("--d-max", cli.d_max, "scan end (overrides config)");
    app.add_option("--d-step", cli.d_step, "scan step (overrides config)");
    app.add_option("--R", cli.r, "splitter reflectivity (overrides config)");
    app.add_option("--T", cli.t, "splitter transmissivity (overrides config)");
    app.add_option("--sign", cli.sign, "pairing sign: singlet | triplet (overrides config)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        homsim::RunMode mode = homsim::parse_mode(cli.mode);
        homsim::RunConfig cfg = homsim::load_config_file(cli.config_path);
        cfg.mode = mode;  // the positional wins over any config "mode"

        homsim::Overrides ov;
        ov.output = cli.out;
        ov.tolerance = cli.tol;
        ov.d_min = cli.d_min;
        ov.d_max = cli.d_max;
        ov.d_step = cli.d_step;
        ov.splitter_r = cli.r;
        ov.splitter_t = cli.t;
        ov.sign = cli.sign;
        homsim::apply_overrides(cfg, ov);

        return homsim::run(cfg);
    } catch (const homsim::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const homsim::DomainError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const homsim::PreconditionError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return 3;
    }
}
