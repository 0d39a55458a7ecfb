// ringdist: evaluate, verify, sample, and approximate internodal distance
// distributions between a disk (sphere) and its concentric annulus (shell).
//
// Exit codes: 0 success, 1 verification failure, 2 usage error,
// 3 numerical failure.

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ringdist/approx.hpp"
#include "ringdist/closed_form.hpp"
#include "ringdist/error.hpp"
#include "ringdist/montecarlo.hpp"
#include "ringdist/verify.hpp"

namespace {

using nlohmann::ordered_json;
using namespace ringdist;

constexpr const char* kVersion = "1.0.0";

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kUsage = 2, kNumerical = 3 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Geometry {
    int dim = 2;
    std::string scenario = "s1";
    double r1 = 0.0;
    double r2 = 0.0;

    RegionPair pair() const { return RegionPair(dim == 2 ? Dimension::TwoD : Dimension::ThreeD, r1, r2); }
    Scenario scen() const { return scenario == "s1" ? Scenario::S1 : Scenario::S2; }
    ordered_json to_json() const { return {{"dim", dim}, {"scenario", scenario}, {"r1", r1}, {"r2", r2}}; }
};

void add_geometry(CLI::App* cmd, Geometry& g, bool radii_required = true) {
    cmd->add_option("--dim", g.dim, "Dimension")->check(CLI::IsMember({2, 3}))->required();
    cmd->add_option("--scenario", g.scenario, "s1: uniform inner node, s2: random-waypoint inner node")
        ->check(CLI::IsMember({"s1", "s2"}))
        ->required();
    auto* r1 = cmd->add_option("--r1", g.r1, "Disk/sphere radius (m)");
    auto* r2 = cmd->add_option("--r2", g.r2, "Outer annulus/shell radius (m)");
    if (radii_required) {
        r1->required();
        r2->required();
    }
}

/// Fixed 17-significant-digit formatting, independent of locale.
std::string fmt17(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

std::string timestamp_utc() {
    std::time_t t = 0;
    if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) {
        t = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
    } else {
        t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    }
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

ordered_json metadata(const std::string& command, ordered_json params, std::optional<std::uint64_t> seed = {}) {
    ordered_json meta;
    meta["tool"] = "ringdist";
    meta["version"] = kVersion;
    meta["command"] = command;
    meta["parameters"] = std::move(params);
    meta["seed"] = seed ? ordered_json(*seed) : ordered_json(nullptr);
    meta["generator"] = seed ? ordered_json(std::string(SplitMix64::kName)) : ordered_json(nullptr);
    meta["timestamp"] = timestamp_utc();
    meta["kl_log_base"] = "e";
    return meta;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw UsageError("cannot open output file: " + path);
    }
    out << text;
    if (!out) {
        throw UsageError("failed writing output file: " + path);
    }
}

/// CSV goes to `path`; its metadata to `path.meta.json` (skipped for stdout).
void write_csv_with_meta(const std::string& path, const std::string& csv, const ordered_json& meta) {
    write_text(path, csv);
    if (!path.empty() && path != "-") {
        write_text(path + ".meta.json", meta.dump(2) + "\n");
    }
}

// Merges `key=value` lines from --config into argv. Flags already given on
// the command line win over file values.
std::vector<std::string> expand_config(std::vector<std::string> args) {
    std::string config_path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            config_path = args[i + 1];
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
            break;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            config_path = args[i].substr(9);
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
            break;
        }
    }
    if (config_path.empty()) {
        return args;
    }
    std::ifstream in(config_path);
    if (!in) {
        throw UsageError("cannot read config file: " + config_path);
    }
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    auto given = [&](const std::string& key) {
        const std::string flag = "--" + key;
        return std::any_of(args.begin(), args.end(),
                           [&](const std::string& a) { return a == flag || a.rfind(flag + "=", 0) == 0; });
    };
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line.substr(0, line.find('#')));
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw UsageError(config_path + ":" + std::to_string(lineno) + ": expected key=value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!given(key)) {
            args.push_back("--" + key + "=" + value);
        }
    }
    return args;
}

int cmd_pdf(const Geometry& g, std::size_t grid, const std::string& out, const std::string& format) {
    if (grid < 2) {
        throw UsageError("--grid must be at least 2");
    }
    const PiecewisePdf pdf(g.pair(), g.scen());
    const double support = pdf.support();
    std::vector<double> rs(grid);
    std::vector<double> fs(grid);
    for (std::size_t i = 0; i < grid; ++i) {
        rs[i] = i + 1 == grid ? support : support * static_cast<double>(i) / static_cast<double>(grid - 1);
        fs[i] = pdf(rs[i]);
    }
    ordered_json params = g.to_json();
    params["grid"] = grid;
    params["format"] = format;
    const ordered_json meta = metadata("pdf", params);
    if (format == "json") {
        ordered_json doc;
        doc["meta"] = meta;
        doc["support"] = {0.0, support};
        ordered_json points = ordered_json::array();
        for (std::size_t i = 0; i < grid; ++i) {
            points.push_back({{"r", rs[i]}, {"pdf", fs[i]}});
        }
        doc["points"] = std::move(points);
        write_text(out, doc.dump(2) + "\n");
        return kOk;
    }
    std::string csv = "r,pdf\n";
    for (std::size_t i = 0; i < grid; ++i) {
        csv += fmt17(rs[i]) + "," + fmt17(fs[i]) + "\n";
    }
    write_csv_with_meta(out, csv, meta);
    return kOk;
}

int cmd_verify(const Geometry& g, std::size_t points, double tol) {
    if (points < 1) {
        throw UsageError("--points must be positive");
    }
    if (!(tol >= 0.0)) {
        throw UsageError("--tol must be non-negative");
    }
    const PiecewisePdf pdf(g.pair(), g.scen());
    const Deviation dev = compare_with_oracle(pdf, points);
    const bool ok = dev.max_abs <= tol;
    std::cout << "points: " << dev.points << "\n"
              << "max_abs_deviation: " << fmt17(dev.max_abs) << "\n"
              << "worst_r: " << fmt17(dev.worst_r) << "\n"
              << "tolerance: " << fmt17(tol) << "\n"
              << "result: " << (ok ? "PASS" : "FAIL") << "\n";
    return ok ? kOk : kVerifyFailed;
}

int cmd_sample(const Geometry& g, const SampleConfig& cfg, const std::string& out) {
    cfg.validate();
    const RegionPair pair = g.pair();
    std::vector<double> samples = sample_distances(pair, g.scen(), cfg);
    const EmpiricalDistribution hist = empirical_pdf(samples, cfg, pair.max_distance());

    std::sort(samples.begin(), samples.end());
    const PiecewisePdf pdf(pair, g.scen());
    const std::vector<double> cdf = eval_cdf_sorted(pdf, samples);
    const double ks = ks_statistic(samples, cdf);

    std::string csv = "bin_lo,bin_hi,density\n";
    for (std::size_t b = 0; b < hist.densities.size(); ++b) {
        csv += fmt17(hist.bin_edges[b]) + "," + fmt17(hist.bin_edges[b + 1]) + "," + fmt17(hist.densities[b]) + "\n";
    }
    ordered_json params = g.to_json();
    params["n"] = cfg.n;
    params["bins"] = cfg.bins;
    ordered_json meta = metadata("sample", params, cfg.seed);
    meta["ks_statistic"] = ks;
    meta["ks_critical_1pct"] = ks_critical_1pct(cfg.n);
    write_csv_with_meta(out, csv, meta);
    std::cout << "ks_statistic: " << fmt17(ks) << "\n"
              << "ks_critical_1pct: " << fmt17(ks_critical_1pct(cfg.n)) << "\n";
    return kOk;
}

int cmd_fit_beta(const Geometry& g) {
    const PiecewisePdf pdf(g.pair(), g.scen());
    const BetaParams fit = fit_beta(pdf);
    ordered_json doc;
    doc["alpha"] = fit.alpha;
    doc["beta"] = fit.beta;
    doc["scale"] = fit.scale;
    doc["mean"] = fit.mean();
    doc["variance"] = fit.variance();
    doc["meta"] = metadata("fit-beta", g.to_json());
    std::cout << doc.dump(2) << "\n";
    return kOk;
}

int cmd_kl_sweep(const Geometry& g, double lo, double hi, double step, double level, const std::string& out) {
    if (!(lo > 1.0) || !(hi > lo)) {
        throw UsageError("kl-sweep requires 1 < --ratio-min < --ratio-max");
    }
    if (!(step > 0.0)) {
        throw UsageError("--step must be positive");
    }
    const std::vector<double> ratios = ratio_grid(lo, hi, step);
    const KLCurve curve = kl_sweep(g.dim == 2 ? Dimension::TwoD : Dimension::ThreeD, g.scen(), ratios);
    std::string csv = "ratio,kl_nats\n";
    for (std::size_t i = 0; i < curve.ratios.size(); ++i) {
        csv += fmt17(curve.ratios[i]) + "," + fmt17(curve.kl[i]) + "\n";
    }
    ordered_json params = {{"dim", g.dim}, {"scenario", g.scenario}, {"r1", 1.0}, {"ratio_min", lo},
                           {"ratio_max", hi}, {"step", step}, {"level", level}};
    write_csv_with_meta(out, csv, metadata("kl-sweep", params));
    const auto crossing = threshold_crossing(curve, level);
    std::cout << "crossing: " << (crossing ? fmt17(*crossing) : std::string("none")) << "\n";
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Internodal distance distributions for concentric disk-annulus and sphere-shell regions"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    app.add_option("--config", "key=value file; command-line flags take precedence");

    Geometry geom;

    std::size_t grid = 101;
    std::string out;
    std::string format = "csv";
    auto* pdf_cmd = app.add_subcommand("pdf", "Evaluate the exact density on a uniform grid");
    add_geometry(pdf_cmd, geom);
    pdf_cmd->add_option("--grid", grid, "Number of grid points over [0, r1+r2]");
    pdf_cmd->add_option("--out", out, "Output path ('-' for stdout)");
    pdf_cmd->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));

    std::size_t points = 512;
    double tol = 1e-8;
    auto* verify_cmd = app.add_subcommand("verify", "Compare the closed form with the conditioning integral");
    add_geometry(verify_cmd, geom);
    verify_cmd->add_option("--points", points);
    verify_cmd->add_option("--tol", tol);

    SampleConfig cfg;
    auto* sample_cmd = app.add_subcommand("sample", "Monte Carlo histogram of the distance");
    add_geometry(sample_cmd, geom);
    sample_cmd->add_option("--n", cfg.n, "Number of realizations")->required();
    sample_cmd->add_option("--seed", cfg.seed, "64-bit seed")->required();
    sample_cmd->add_option("--bins", cfg.bins, "Histogram bins");
    sample_cmd->add_option("--out", out, "Output path ('-' for stdout)")->required();

    auto* fit_cmd = app.add_subcommand("fit-beta", "Moment-matched beta approximation");
    add_geometry(fit_cmd, geom);

    double ratio_min = 1.1;
    double ratio_max = 10.0;
    double step = 0.1;
    double level = 1e-2;
    auto* kl_cmd = app.add_subcommand("kl-sweep", "KL divergence of the beta fit against r2/r1");
    add_geometry(kl_cmd, geom, false);
    kl_cmd->add_option("--ratio-min", ratio_min);
    kl_cmd->add_option("--ratio-max", ratio_max);
    kl_cmd->add_option("--step", step);
    kl_cmd->add_option("--level", level, "Crossing level (nats)");
    kl_cmd->add_option("--out", out, "Output path ('-' for stdout)")->required();

    try {
        std::vector<std::string> args(argv + 1, argv + argc);
        args = expand_config(std::move(args));
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }

    try {
        if (*pdf_cmd) {
            return cmd_pdf(geom, grid, out, format);
        }
        if (*verify_cmd) {
            return cmd_verify(geom, points, tol);
        }
        if (*sample_cmd) {
            return cmd_sample(geom, cfg, out);
        }
        if (*fit_cmd) {
            return cmd_fit_beta(geom);
        }
        if (*kl_cmd) {
            return cmd_kl_sweep(geom, ratio_min, ratio_max, step, level, out);
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kNumerical;
    }
    return kUsage;
}
