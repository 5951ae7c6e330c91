#include "homsim/config.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "homsim/errors.hpp"
#include "homsim/oracles.hpp"

namespace homsim {

namespace fs = std::filesystem;
using nlohmann::json;

RunMode parse_mode(const std::string& name) {
    if (name == "sweep") return RunMode::Sweep;
    if (name == "symmetry-check") return RunMode::SymmetryCheck;
    if (name == "polar-sweep") return RunMode::PolarSweep;
    if (name == "oracle-compare") return RunMode::OracleCompare;
    throw ConfigError("mode: unknown mode '" + name +
                      "' (expected sweep, symmetry-check, polar-sweep or oracle-compare)");
}

std::string mode_name(RunMode mode) {
    switch (mode) {
        case RunMode::Sweep: return "sweep";
        case RunMode::SymmetryCheck: return "symmetry-check";
        case RunMode::PolarSweep: return "polar-sweep";
        case RunMode::OracleCompare: return "oracle-compare";
    }
    return "?";
}

namespace {

double need_number(const json& obj, const std::string& scope, const std::string& key) {
    if (!obj.contains(key)) throw ConfigError(scope + "." + key + ": missing required field");
    if (!obj[key].is_number()) throw ConfigError(scope + "." + key + ": expected a number");
    return obj[key].get<double>();
}

double opt_number(const json& obj, const std::string& scope, const std::string& key,
                  double fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number()) throw ConfigError(scope + "." + key + ": expected a number");
    return obj[key].get<double>();
}

void reject_unknown(const json& obj, const std::string& scope,
                    const std::set<std::string>& known) {
    for (const auto& item : obj.items()) {
        if (!known.count(item.key())) {
            throw ConfigError(scope.empty() ? item.key() + ": unknown field"
                                            : scope + "." + item.key() + ": unknown field");
        }
    }
}

JointSpectrum parse_spectrum(const json& spec) {
    if (!spec.is_object()) throw ConfigError("spectrum: expected an object");
    if (!spec.contains("family")) throw ConfigError("spectrum.family: missing required field");
    if (!spec["family"].is_string()) throw ConfigError("spectrum.family: expected a string");
    const std::string family = spec["family"].get<std::string>();
    const double sigma = opt_number(spec, "spectrum", "sigma", 1.0);

    if (family == "symmetric_gaussian") {
        reject_unknown(spec, "spectrum", {"family", "omega", "sigma"});
        return JointSpectrum::symmetric_gaussian(opt_number(spec, "spectrum", "omega", 10.0),
                                                 sigma);
    }
    if (family == "asymmetric_gaussian") {
        reject_unknown(spec, "spectrum", {"family", "omega", "omega_tilde", "y", "sigma"});
        const double omega = opt_number(spec, "spectrum", "omega", 10.0);
        if (spec.contains("omega_tilde") && spec.contains("y")) {
            throw ConfigError("spectrum.y: mutually exclusive with spectrum.omega_tilde");
        }
        double omega_tilde;
        if (spec.contains("omega_tilde")) {
            omega_tilde = need_number(spec, "spectrum", "omega_tilde");
        } else if (spec.contains("y")) {
            omega_tilde = omega * (1.0 - need_number(spec, "spectrum", "y"));
        } else {
            throw ConfigError("spectrum.omega_tilde: missing (or give spectrum.y)");
        }
        return JointSpectrum::asymmetric_gaussian(omega, omega_tilde, sigma);
    }
    if (family == "time_shifted") {
        reject_unknown(spec, "spectrum", {"family", "omega", "sigma", "time_shift"});
        return JointSpectrum::time_shifted(opt_number(spec, "spectrum", "omega", 10.0), sigma,
                                           need_number(spec, "spectrum", "time_shift"));
    }
    if (family == "regularized_spdc") {
        reject_unknown(spec, "spectrum", {"family", "omega0", "sigma", "epsilon"});
        return JointSpectrum::regularized_spdc(need_number(spec, "spectrum", "omega0"), sigma,
                                               opt_number(spec, "spectrum", "epsilon", 0.0));
    }
    if (family == "symmetric_basis_pair") {
        reject_unknown(spec, "spectrum", {"family", "omega", "omega_tilde", "width"});
        return JointSpectrum::symmetric_basis_pair(
            need_number(spec, "spectrum", "omega"), need_number(spec, "spectrum", "omega_tilde"),
            opt_number(spec, "spectrum", "width", 0.01));
    }
    if (family == "tabulated") {
        reject_unknown(spec, "spectrum", {"family", "file"});
        if (!spec.contains("file") || !spec["file"].is_string()) {
            throw ConfigError("spectrum.file: tabulated spectra need a grid file path");
        }
        try {
            return JointSpectrum::tabulated_from_file(spec["file"].get<std::string>());
        } catch (const DomainError& e) {
            throw ConfigError("spectrum.file: " + std::string(e.what()));
        }
    }
    throw ConfigError("spectrum.family: unknown family '" + family + "'");
}

}  // namespace

void RunConfig::validate() const {
    if (!(d_step > 0.0)) throw ConfigError("d_step: must be positive");
    if (!(d_min <= d_max)) throw ConfigError("d_min: must not exceed d_max");
    if (!(tolerance > 0.0 && tolerance <= 1e-2)) {
        throw ConfigError("tolerance: must lie in (0, 1e-2]");
    }
    try {
        BeamSplitter bs(splitter_r, splitter_t);
    } catch (const InvalidBeamSplitterError& e) {
        throw ConfigError("splitter: " + std::string(e.what()));
    }
    const bool wants_csv = mode == RunMode::Sweep || mode == RunMode::PolarSweep;
    if (wants_csv && output.empty()) {
        throw ConfigError("output: required for CSV-producing modes");
    }
    if (mode == RunMode::PolarSweep && theta_pairs.empty()) {
        throw ConfigError("theta_pairs: polar-sweep needs at least one analyzer pair");
    }
}

std::vector<double> RunConfig::d_values() const {
    std::vector<double> out;
    const long n = std::lround(std::floor((d_max - d_min) / d_step + 1e-9));
    out.reserve(static_cast<std::size_t>(n + 1));
    for (long i = 0; i <= n; ++i) {
        out.push_back(d_min + static_cast<double>(i) * d_step);
    }
    return out;
}

RunConfig parse_config_text(const std::string& json_text, const std::string& origin) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(origin + ": not valid JSON: " + e.what());
    }
    if (!root.is_object()) throw ConfigError(origin + ": top level must be an object");
    reject_unknown(root, "",
                   {"mode", "spectrum", "splitter", "d_min", "d_max", "d_step", "tolerance",
                    "sign", "theta_pairs", "output"});

    RunConfig cfg;
    if (root.contains("mode")) {
        if (!root["mode"].is_string()) throw ConfigError("mode: expected a string");
        cfg.mode = parse_mode(root["mode"].get<std::string>());
    }
    if (!root.contains("spectrum")) throw ConfigError("spectrum: missing required field");
    cfg.spectrum = parse_spectrum(root["spectrum"]);

    if (root.contains("splitter")) {
        const json& bs = root["splitter"];
        if (!bs.is_object()) throw ConfigError("splitter: expected an object");
        reject_unknown(bs, "splitter", {"R", "T"});
        cfg.splitter_r = opt_number(bs, "splitter", "R", 0.5);
        cfg.splitter_t = opt_number(bs, "splitter", "T", 0.5);
    }
    cfg.d_min = opt_number(root, "", "d_min", cfg.d_min);
    cfg.d_max = opt_number(root, "", "d_max", cfg.d_max);
    cfg.d_step = opt_number(root, "", "d_step", cfg.d_step);
    cfg.tolerance = opt_number(root, "", "tolerance", cfg.tolerance);
    if (root.contains("sign")) {
        if (!root["sign"].is_string()) throw ConfigError("sign: expected a string");
        const std::string s = root["sign"].get<std::string>();
        if (s == "singlet") cfg.sign = PairingSign::Singlet;
        else if (s == "triplet") cfg.sign = PairingSign::Triplet;
        else throw ConfigError("sign: expected 'singlet' or 'triplet'");
    }
    if (root.contains("theta_pairs")) {
        if (!root["theta_pairs"].is_array()) {
            throw ConfigError("theta_pairs: expected an array of [theta1, theta2] pairs");
        }
        for (const auto& item : root["theta_pairs"]) {
            if (!item.is_array() || item.size() != 2 || !item[0].is_number() ||
                !item[1].is_number()) {
                throw ConfigError("theta_pairs: each entry must be [theta1, theta2]");
            }
            cfg.theta_pairs.emplace_back(item[0].get<double>(), item[1].get<double>());
        }
    }
    if (root.contains("output")) {
        if (!root["output"].is_string()) throw ConfigError("output: expected a string");
        cfg.output = root["output"].get<std::string>();
    }
    if (cfg.theta_pairs.empty()) cfg.theta_pairs.emplace_back(0.0, M_PI / 2.0);
    return cfg;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path);
}

void apply_overrides(RunConfig& cfg, const Overrides& ov) {
    if (ov.output) cfg.output = *ov.output;
    if (ov.tolerance) cfg.tolerance = *ov.tolerance;
    if (ov.d_min) cfg.d_min = *ov.d_min;
    if (ov.d_max) cfg.d_max = *ov.d_max;
    if (ov.d_step) cfg.d_step = *ov.d_step;
    if (ov.splitter_r) cfg.splitter_r = *ov.splitter_r;
    if (ov.splitter_t) cfg.splitter_t = *ov.splitter_t;
    if (ov.sign) {
        if (*ov.sign == "singlet") cfg.sign = PairingSign::Singlet;
        else if (*ov.sign == "triplet") cfg.sign = PairingSign::Triplet;
        else throw ConfigError("sign: expected 'singlet' or 'triplet'");
    }
}

void write_text_atomically(const std::string& path, const std::string& text) {
    const fs::path target(path);
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ConfigError("output: cannot open " + tmp.string() + " for writing");
        out << text;
        out.flush();
        if (!out) throw ConfigError("output: write failed for " + tmp.string());
    }
    fs::rename(tmp, target);
}

namespace {

BiphotonSystem system_from(const RunConfig& cfg) {
    return BiphotonSystem{cfg.spectrum, SpectralDensity::unit(),
                          BeamSplitter(cfg.splitter_r, cfg.splitter_t), Geometry{},
                          cfg.tolerance};
}

void emit_report(const RunConfig& cfg, const json& report) {
    const std::string text = report.dump(2) + "\n";
    if (cfg.output.empty()) {
        std::cout << text;
    } else {
        write_text_atomically(cfg.output, text);
    }
}

int run_sweep(const RunConfig& cfg) {
    const CoincidenceCurve curve = sweep(system_from(cfg), cfg.d_values());
    write_text_atomically(cfg.output, curve.to_csv_string());
    return 0;
}

int run_symmetry_check(const RunConfig& cfg) {
    const BiphotonSystem sys = system_from(cfg);
    const QuadratureGrid grid = auto_grid(sys.spectrum, 0.0, sys.tolerance);
    const double n = spectral_norm_on(sys, grid);
    const double asym = asymmetry_norm(sys);
    const double rate0 = rate_spectral(sys, 0.0);
    const bool symmetric = asym < cfg.tolerance * n && rate0 < cfg.tolerance * n;

    json report;
    report["mode"] = mode_name(cfg.mode);
    report["spec"] = sys.spectrum.describe();
    report["normalization"] = 2.0 * n;
    report["asymmetry_norm"] = asym;
    report["rate_at_zero"] = rate0;
    report["tolerance"] = cfg.tolerance;
    report["verdict"] = symmetric ? "symmetric" : "asymmetric";
    emit_report(cfg, report);
    return 0;
}

int run_polar_sweep(const RunConfig& cfg) {
    const PolarizedBiphoton pb{cfg.spectrum, cfg.sign, cfg.tolerance};

    const BiphotonSystem sys = system_from(cfg);
    const std::vector<double> ds = cfg.d_values();
    double d_max = 0.0;
    for (double d : ds) d_max = std::max(d_max, std::abs(d));
    const QuadratureGrid grid = auto_grid(pb.spectrum, d_max, pb.tolerance);
    const double n = spectral_norm_on(sys, grid);
    const double sign = pb.sign == PairingSign::Singlet ? -1.0 : 1.0;

    std::vector<PolarPoint> rows;
    rows.reserve(cfg.theta_pairs.size() * ds.size());
    for (const auto& tp : cfg.theta_pairs) {
        const AnalyzerPair pair(tp.first, tp.second);
        const double x = xi(pair);
        for (double d : ds) {
            const double k = overlap_kernel_on(sys, grid, d);
            double e = 2.0 * n - 2.0 * sign * k;
            if (e < 0.0) e = 0.0;
            PolarPoint p;
            p.theta1 = pair.theta1;
            p.theta2 = pair.theta2;
            p.xi = x;
            p.d = d;
            p.eta = e;
            p.rate = x * e;
            rows.push_back(p);
        }
    }
    std::ostringstream out;
    const std::string desc = pb.spectrum.describe() + "; sign=" +
                             (pb.sign == PairingSign::Singlet ? "singlet" : "triplet");
    write_polar_csv(out, rows, 2.0 * n, desc);
    write_text_atomically(cfg.output, out.str());
    return 0;
}

int run_oracle_compare(const RunConfig& cfg) {
    const BiphotonSystem sys = system_from(cfg);
    const SpectrumKind kind = sys.spectrum.kind();
    if (kind != SpectrumKind::SymmetricGaussianProduct &&
        kind != SpectrumKind::AsymmetricGaussianProduct &&
        kind != SpectrumKind::TimeShiftedProduct) {
        throw ConfigError("spectrum.family: oracle-compare covers the Gaussian families only");
    }
    if (!sys.splitter.is_balanced()) {
        throw ConfigError("splitter: oracle-compare is defined for the balanced splitter");
    }

    const CoincidenceCurve curve = sweep(sys, cfg.d_values());
    const double sigma = sys.spectrum.sigma();
    double curve_scale = 0.0, max_dev = 0.0;
    std::vector<std::pair<double, double>> oracle_points;
    for (const auto& p : curve.points()) {
        double oracle = 0.0;
        switch (kind) {
            case SpectrumKind::SymmetricGaussianProduct:
                oracle = symmetric_gaussian_rc(sigma, p.d);
                break;
            case SpectrumKind::AsymmetricGaussianProduct: {
                const double omega = sys.spectrum.omega();
                const double y = 1.0 - sys.spectrum.omega_tilde() / omega;
                oracle = asymmetric_gaussian_rc(omega, y, sigma, p.d);
                break;
            }
            case SpectrumKind::TimeShiftedProduct:
                oracle = symmetric_gaussian_rc(sigma, p.d + sys.spectrum.time_shift());
                break;
            default:
                break;
        }
        curve_scale = std::max(curve_scale, std::abs(oracle));
        max_dev = std::max(max_dev, std::abs(p.rate_normalized - oracle));
    }
    const double relative = max_dev / std::max(curve_scale, 1e-300);
    const bool pass = relative <= cfg.tolerance;

    json report;
    report["mode"] = mode_name(cfg.mode);
    report["spec"] = sys.spectrum.describe();
    report["points"] = curve.points().size();
    report["max_relative_deviation"] = relative;
    report["tolerance"] = cfg.tolerance;
    report["pass"] = pass;
    emit_report(cfg, report);
    return pass ? 0 : 1;
}

}  // namespace

int run(const RunConfig& cfg) {
    cfg.validate();
    switch (cfg.mode) {
        case RunMode::Sweep: return run_sweep(cfg);
        case RunMode::SymmetryCheck: return run_symmetry_check(cfg);
        case RunMode::PolarSweep: return run_polar_sweep(cfg);
        case RunMode::OracleCompare: return run_oracle_compare(cfg);
    }
    throw ConfigError("mode: unrecognized run mode");
}

}  // namespace homsim
