// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "ringdist/approx.hpp"
#include "ringdist/closed_form.hpp"
#include "ringdist/montecarlo.hpp"
#include "ringdist/parallel.hpp"
#include "ringdist/quadrature.hpp"
#include "ringdist/verify.hpp"

using namespace ringdist;
namespace fs = std::filesystem;

namespace {

constexpr Dimension kDims[] = {Dimension::TwoD, Dimension::ThreeD};
constexpr Scenario kScenarios[] = {Scenario::S1, Scenario::S2};
constexpr double kRatios[] = {1.2, 1.5, 2.0, 2.5, 3.0, 3.2, 4.0, 5.0, 7.0, 10.0};
constexpr double kRadii[] = {1.0, 3.0};

struct Config {
    Dimension dim;
    Scenario s;
    double r1;
    double r2;
};

std::vector<Config> grid_configs() {
    std::vector<Config> out;
    for (const auto dim : kDims) {
        for (const auto s : kScenarios) {
            for (const double r1 : kRadii) {
                for (const double ratio : kRatios) {
                    out.push_back({dim, s, r1, ratio * r1});
                }
            }
        }
    }
    return out;
}

std::string describe(const Config& c) {
    std::ostringstream os;
    os << to_string(c.dim) << " " << to_string(c.s) << " r1=" << c.r1 << " r2=" << c.r2;
    return os.str();
}

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3e", v);
    return buf;
}

int failures = 0;

void report(int id, const std::string& name, bool ok, const std::string& summary) {
    std::cout << "[" << (ok ? "PASS" : "FAIL") << "] criterion " << id << " " << name << ": " << summary << std::endl;
    failures += ok ? 0 : 1;
}

void detail(const std::string& line) { std::cout << "    " << line << "\n"; }

void oracle_equivalence() {
    const auto configs = grid_configs();
    const auto start = std::chrono::steady_clock::now();
    double worst = 0.0;
    std::string where;
    for (const auto& c : configs) {
        const PiecewisePdf pdf(RegionPair(c.dim, c.r1, c.r2), c.s);
        const auto dev = compare_with_oracle(pdf, 512);
        if (dev.max_abs >= worst) {
            worst = dev.max_abs;
            where = describe(c) + " at r=" + std::to_string(dev.worst_r);
        }
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report(1, "oracle equivalence", worst <= 1e-8,
           "max |closed form - quadrature| = " + sci(worst) + " (tol 1e-8) over " + std::to_string(configs.size()) +
               " configurations x 512 points in " + std::to_string(seconds) + " s");
    detail("worst: " + where);
}

void normalization_continuity() {
    const auto configs = grid_configs();
    double mass_err = 0.0;
    double jump = 0.0;
    std::string mass_where;
    std::string jump_where;
    for (const auto& c : configs) {
        const PiecewisePdf pdf(RegionPair(c.dim, c.r1, c.r2), c.s);
        const auto& bp = pdf.breakpoints();
        double mass = 0.0;
        for (std::size_t i = 0; i < PiecewisePdf::kBranches; ++i) {
            mass += adaptive_quadrature([&](double r) { return pdf.branch_value(i, r); }, bp[i], bp[i + 1], 1e-12);
        }
        if (std::abs(mass - 1.0) >= mass_err) {
            mass_err = std::abs(mass - 1.0);
            mass_where = describe(c);
        }
        for (std::size_t i = 1; i < PiecewisePdf::kBranches; ++i) {
            const double left = pdf.branch_value(i - 1, bp[i]);
            const double right = pdf.branch_value(i, bp[i]);
            const double rel = std::abs(left - right) / std::max(1.0, std::abs(left));
            if (rel >= jump) {
                jump = rel;
                jump_where = describe(c) + " at r=" + std::to_string(bp[i]);
            }
        }
    }
    report(2, "normalization and continuity", mass_err <= 1e-8 && jump <= 1e-9,
           "max |mass - 1| = " + sci(mass_err) + " (tol 1e-8), max branch mismatch = " + sci(jump) + " (tol 1e-9)");
    detail("worst mass: " + mass_where);
    detail("worst mismatch: " + jump_where);
}

void beta_fits() {
    struct Case {
        Scenario s;
        double r2;
        double alpha;
        double beta;
    };
    const Case cases[] = {
        {Scenario::S1, 2.0, 3.419, 2.832},
        {Scenario::S1, 3.5, 3.537, 2.735},
        {Scenario::S2, 2.0, 4.589, 3.951},
        {Scenario::S2, 3.5, 3.993, 3.140},
    };
    bool ok = true;
    double worst = 0.0;
    std::vector<std::string> lines;
    for (const auto& c : cases) {
        const auto fit = fit_beta(PiecewisePdf(RegionPair(Dimension::TwoD, 1.0, c.r2), c.s));
        const double err = std::max(std::abs(fit.alpha - c.alpha), std::abs(fit.beta - c.beta));
        worst = std::max(worst, err);
        ok = ok && err <= 0.01;
        std::ostringstream os;
        os.precision(5);
        os << "2d " << to_string(c.s) << " r2=" << c.r2 << ": alpha=" << fit.alpha << " beta=" << fit.beta
           << " (expected " << c.alpha << ", " << c.beta << ")";
        lines.push_back(os.str());
    }
    report(3, "beta fits", ok, "max parameter error = " + sci(worst) + " (tol 0.01)");
    for (const auto& l : lines) {
        detail(l);
    }
}

void kl_thresholds() {
    struct Case {
        Dimension dim;
        Scenario s;
        double expected;
    };
    const Case cases[] = {
        {Dimension::TwoD, Scenario::S1, 7.0},
        {Dimension::TwoD, Scenario::S2, 5.0},
        {Dimension::ThreeD, Scenario::S1, 5.5},
        {Dimension::ThreeD, Scenario::S2, 3.5},
    };
    const auto grid = ratio_grid(1.1, 10.0, 0.1);
    bool crossings_ok = true;
    std::vector<std::string> lines;
    std::vector<KLCurve> curves;
    for (const auto& c : cases) {
        curves.push_back(kl_sweep(c.dim, c.s, grid));
        const auto x = threshold_crossing(curves.back(), 1e-2);
        const bool ok = x && std::abs(*x - c.expected) <= 0.5;
        crossings_ok = crossings_ok && ok;
        std::ostringstream os;
        os << to_string(c.dim) << " " << to_string(c.s) << ": crossing " << (x ? std::to_string(*x) : "none")
           << " (expected " << c.expected << " +/- 0.5)";
        lines.push_back(os.str());
    }

    // Ordering in 2-D: curves[1] is s2, curves[0] is s1.
    std::vector<double> violations;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (curves[1].kl[i] < curves[0].kl[i]) {
            violations.push_back(grid[i]);
        }
    }
    const bool ordering_ok = violations.empty();
    report(4, "KL thresholds", crossings_ok && ordering_ok,
           std::string("crossings ") + (crossings_ok ? "within tolerance" : "out of tolerance") +
               ", 2d ordering KL(s2) >= KL(s1) " +
               (ordering_ok ? "holds" : "violated at " + std::to_string(violations.size()) + " of " +
                                            std::to_string(grid.size()) + " ratios"));
    for (const auto& l : lines) {
        detail(l);
    }
    if (!ordering_ok) {
        std::ostringstream os;
        os << "ordering violated at r2/r1 =";
        for (const double v : violations) {
            os << " " << v;
        }
        detail(os.str());
        for (const double r : {1.5, 2.5, 3.5, 5.0}) {
            const auto it = std::find_if(grid.begin(), grid.end(), [&](double g) { return std::abs(g - r) < 1e-9; });
            const auto k = static_cast<std::size_t>(it - grid.begin());
            std::ostringstream os2;
            os2 << "r2/r1=" << r << ": KL(s1)=" << sci(curves[0].kl[k]) << " KL(s2)=" << sci(curves[1].kl[k]);
            detail(os2.str());
        }
    }
}

// True when the sequence rises to a single peak and then falls.
bool unimodal(const std::vector<double>& v) {
    const auto peak = static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
    for (std::size_t i = 1; i <= peak; ++i) {
        if (v[i] < v[i - 1]) {
            return false;
        }
    }
    for (std::size_t i = peak + 1; i < v.size(); ++i) {
        if (v[i] > v[i - 1]) {
            return false;
        }
    }
    return true;
}

void monte_carlo() {
    bool ok = true;
    std::vector<std::string> lines;
    std::uint64_t seed = 1001;
    for (const auto dim : kDims) {
        for (const auto s : kScenarios) {
            for (const double ratio : {2.0, 3.5}) {
                const RegionPair pair(dim, 1.0, ratio);
                const PiecewisePdf pdf(pair, s);
                const SampleConfig cfg{seed++, 100000, 32};
                auto xs = sample_distances(pair, s, cfg);
                std::sort(xs.begin(), xs.end());
                const double ks = ks_statistic(xs, eval_cdf_sorted(pdf, xs));
                const double crit = ks_critical_1pct(cfg.n);

                const bool support = xs.front() >= 0.0 && xs.back() <= pair.max_distance();
                const auto hist = empirical_pdf(xs, cfg, pair.max_distance());
                const auto F = eval_cdf_sorted(pdf, hist.bin_edges);
                std::vector<double> exact(cfg.bins);
                for (std::size_t i = 0; i < cfg.bins; ++i) {
                    exact[i] = (F[i + 1] - F[i]) / hist.bin_width(i);
                }
                const auto mode = [](const std::vector<double>& v) {
                    return static_cast<long>(std::max_element(v.begin(), v.end()) - v.begin());
                };
                const bool shape = unimodal(exact) && std::abs(mode(exact) - mode(hist.densities)) <= 1;

                const bool pass = ks < crit && support && shape;
                ok = ok && pass;
                std::ostringstream os;
                os << to_string(dim) << " " << to_string(s) << " r2/r1=" << ratio << " seed=" << cfg.seed
                   << ": KS=" << sci(ks) << " (crit " << sci(crit) << "), support " << (support ? "ok" : "BAD")
                   << ", unimodal " << (shape ? "ok" : "BAD");
                lines.push_back(os.str());
            }
        }
    }
    report(5, "Monte Carlo agreement", ok, "KS below the 1% critical value with correct support and a single mode");
    for (const auto& l : lines) {
        detail(l);
    }
}

void corollaries() {
    double worst_boundary = 0.0;
    const double R = 1.0;
    struct Limit {
        Dimension dim;
        Scenario s;
        CorollaryKind kind;
    };
    const Limit limits[] = {
        {Dimension::TwoD, Scenario::S1, CorollaryKind::Disk2DS1Boundary},
        {Dimension::TwoD, Scenario::S2, CorollaryKind::Disk2DS2Boundary},
        {Dimension::ThreeD, Scenario::S1, CorollaryKind::Sphere3DS1Boundary},
        {Dimension::ThreeD, Scenario::S2, CorollaryKind::Sphere3DS2Boundary},
    };
    for (const auto& lim : limits) {
        const PiecewisePdf pdf(RegionPair(lim.dim, R, R * (1.0 + 1e-4)), lim.s);
        for (int i = 0; i <= 1000; ++i) {
            const double r = R * (0.1 + 1.8 * i / 1000.0);
            const double expected = corollary_pdf(lim.kind, R, r);
            worst_boundary = std::max(worst_boundary, std::abs(pdf(r) - expected) / expected);
        }
    }

    double worst_full = 0.0;
    for (const auto dim : kDims) {
        for (const auto s : kScenarios) {
            const double r2 = 1.0;
            const double r1 = 1e-4 * r2;
            const PiecewisePdf pdf(RegionPair(dim, r1, r2), s);
            const auto kind = dim == Dimension::TwoD ? CorollaryKind::FullDisk2D : CorollaryKind::FullSphere3D;
            const auto& bp = pdf.breakpoints();
            for (int i = 1; i < 1000; ++i) {
                const double r = bp[1] + (bp[2] - bp[1]) * i / 1000.0;
                const double expected = corollary_pdf(kind, r2, r);
                worst_full = std::max(worst_full, std::abs(pdf(r) - expected) / expected);
            }
        }
    }

    double worst_sparse = 0.0;
    std::size_t sparse_configs = 0;
    for (const auto& c : grid_configs()) {
        const RegionPair pair(c.dim, c.r1, c.r2);
        const PiecewisePdf pdf(pair, c.s);
        if (pdf.regime().unified != UnifiedRegime::SparseR2gt3R1) {
            continue;
        }
        ++sparse_configs;
        const auto& bp = pdf.breakpoints();
        for (int i = 0; i <= 200; ++i) {
            const double r = bp[1] + (bp[2] - bp[1]) * i / 200.0;
            const double expected = c.dim == Dimension::TwoD
                                        ? 2.0 * r / (c.r2 * c.r2 - c.r1 * c.r1)
                                        : 3.0 * r * r / (std::pow(c.r2, 3) - std::pow(c.r1, 3));
            worst_sparse = std::max(worst_sparse, std::abs(pdf.branch_value(1, r) - expected) / expected);
        }
    }

    const bool ok = worst_boundary <= 1e-2 && worst_full <= 1e-3 && worst_sparse <= 4.0 * 2.220446049250313e-16;
    report(6, "corollary limits", ok,
           "boundary limit rel err = " + sci(worst_boundary) + " (tol 1e-2), full-region limit rel err = " +
               sci(worst_full) + " (tol 1e-3), sparse middle branch rel err = " + sci(worst_sparse) + " over " +
               std::to_string(sparse_configs) + " configurations (machine precision)");
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Runs the CLI with `args`, writing into `dir`; returns every produced file
// plus stdout, concatenated with their names.
std::string cli_outputs(const std::string& env, const std::string& args, const fs::path& dir) {
    fs::remove_all(dir);
    fs::create_directories(dir);
    const std::string cmd = "cd \"" + dir.string() + "\" && " + env + " \"" RINGDIST_CLI_PATH "\" " + args +
                            " > stdout.txt 2> stderr.txt";
    const int status = std::system(cmd.c_str());
    if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
        return "exit status " + std::to_string(status);
    }
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir)) {
        files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    std::string all;
    for (const auto& f : files) {
        all += f.filename().string() + "\n" + slurp(f);
    }
    return all;
}

void determinism() {
    const fs::path root = fs::temp_directory_path() / ("ringdist_acceptance_" + std::to_string(::getpid()));
    const char* commands[] = {
        "sample --dim 2 --scenario s2 --r1 1 --r2 3.5 --n 100000 --seed 42 --out hist.csv",
        "sample --dim 3 --scenario s1 --r1 1 --r2 2 --n 100000 --seed 7 --bins 64 --out hist.csv",
        "pdf --dim 3 --scenario s2 --r1 1 --r2 2.5 --grid 257 --out pdf.csv",
        "pdf --dim 2 --scenario s1 --r1 1 --r2 2 --grid 33 --format json --out pdf.json",
        "kl-sweep --dim 2 --scenario s2 --out kl.csv",
        "fit-beta --dim 3 --scenario s1 --r1 1 --r2 4",
    };
    bool ok = true;
    std::vector<std::string> lines;
    for (const char* args : commands) {
        const std::string base = "SOURCE_DATE_EPOCH=1700000000";
        const auto first = cli_outputs(base + " RINGDIST_THREADS=1", args, root / "a");
        const auto second = cli_outputs(base + " RINGDIST_THREADS=1", args, root / "b");
        const auto threaded = cli_outputs(base + " RINGDIST_THREADS=4", args, root / "c");
        const bool same = first == second && first == threaded && first.rfind("exit status", 0) != 0;
        ok = ok && same;
        lines.push_back(std::string(same ? "identical" : "DIFFERENT") + ": " + args);
    }
    fs::remove_all(root);
    report(7, "determinism", ok, "repeat runs and thread counts {1, 4} give byte-identical outputs");
    for (const auto& l : lines) {
        detail(l);
    }
}

}  // namespace

int main() {
    const std::vector<std::function<void()>> criteria = {oracle_equivalence, normalization_continuity, beta_fits,
                                                         kl_thresholds,      monte_carlo,              corollaries,
                                                         determinism};
    for (const auto& run : criteria) {
        try {
            run();
        } catch (const std::exception& e) {
            std::cout << "[FAIL] criterion raised: " << e.what() << std::endl;
            ++failures;
        }
    }
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << "\n";
    return failures == 0 ? 0 : 1;
}
