#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "homsim/biphoton.hpp"
#include "homsim/polarization.hpp"

namespace homsim {

enum class RunMode { Sweep, SymmetryCheck, PolarSweep, OracleCompare };

RunMode parse_mode(const std::string& name);     // ConfigError on unknown mode
std::string mode_name(RunMode mode);

// One resolved run: spectrum, splitter, scan range, and mode-specific knobs.
// Produced by parse_config + apply_overrides; validate() enforces the
// cross-field rules (step > 0, tolerance in (0, 1e-2], output where needed)
// and throws ConfigError naming the offending field.
struct RunConfig {
    RunMode mode = RunMode::Sweep;
    JointSpectrum spectrum = JointSpectrum::symmetric_gaussian(10.0, 1.0);
    double splitter_r = 0.5;
    double splitter_t = 0.5;
    double d_min = -4.0;
    double d_max = 4.0;
    double d_step = 0.25;
    double tolerance = 1e-8;
    PairingSign sign = PairingSign::Singlet;
    std::vector<std::pair<double, double>> theta_pairs;  // default {(0, pi/2)}
    std::string output;                                  // empty: reports go to stdout

    void validate() const;
    std::vector<double> d_values() const;  // inclusive range, deterministic count
};

// Command-line values that take precedence over the config file.
struct Overrides {
    std::optional<std::string> output;
    std::optional<double> tolerance;
    std::optional<double> d_min, d_max, d_step;
    std::optional<double> splitter_r, splitter_t;
    std::optional<std::string> sign;
};

RunConfig parse_config_text(const std::string& json_text, const std::string& origin);
RunConfig load_config_file(const std::string& path);
void apply_overrides(RunConfig& cfg, const Overrides& ov);

// Executes one run. Returns 0 on success and 1 when oracle-compare exceeds
// its tolerance; configuration problems throw ConfigError and numerical ones
// NumericalConsistencyError/QuadratureError, which the binary maps to exit
// codes 2 and 3. CSV and report files are written atomically (temp + rename).
int run(const RunConfig& cfg);

void write_text_atomically(const std::string& path, const std::string& text);

}  // namespace homsim
