#include "ringdist/approx.hpp"

#include <cmath>
#include <string>

#include "ringdist/error.hpp"
#include "ringdist/parallel.hpp"
#include "ringdist/quadrature.hpp"

namespace ringdist {

namespace {

constexpr double kDensityFloor = 1e-15;

double log_beta_function(double a, double b) { return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b); }

}  // namespace

BetaParams fit_beta(const PiecewisePdf& pdf) {
    const double scale = pdf.support();
    const double m = moments(pdf, 1) / scale;
    const double v = moments(pdf, 2) / (scale * scale) - m * m;
    const double bound = m * (1.0 - m);
    if (!(v > 0.0) || !(v < bound)) {
        throw FitError("fit_beta: variance " + std::to_string(v) + " not in (0, m(1-m) = " + std::to_string(bound) +
                       ")");
    }
    const double common = bound / v - 1.0;
    return BetaParams{m * common, (1.0 - m) * common, scale};
}

double beta_pdf(const BetaParams& p, double r) {
    if (std::isnan(r) || r < 0.0 || r > p.scale) {
        return 0.0;
    }
    const double x = r / p.scale;
    if (x == 0.0 || x == 1.0) {
        const double exponent = x == 0.0 ? p.alpha : p.beta;
        if (exponent > 1.0) {
            return 0.0;
        }
        if (exponent == 1.0) {
            return std::exp(-log_beta_function(p.alpha, p.beta)) / p.scale;
        }
        return HUGE_VAL;
    }
    const double log_density =
        (p.alpha - 1.0) * std::log(x) + (p.beta - 1.0) * std::log1p(-x) - log_beta_function(p.alpha, p.beta);
    return std::exp(log_density) / p.scale;
}

namespace {

double kl_term(double f, const BetaParams& p, double r) {
    if (!(f > kDensityFloor)) {
        return 0.0;
    }
    const double g = beta_pdf(p, r);
    if (!(g > 0.0)) {
        throw DivergenceError("kl_divergence: approximation vanishes at r=" + std::to_string(r));
    }
    return f * std::log(f / g);
}

double clamp_round_off(double kl) { return kl < 0.0 && kl >= -1e-12 ? 0.0 : kl; }

}  // namespace

double kl_divergence(const PiecewisePdf& pdf, const BetaParams& p) {
    const auto& bp = pdf.breakpoints();
    double total = 0.0;
    for (std::size_t i = 0; i < PiecewisePdf::kBranches; ++i) {
        if (!(bp[i + 1] > bp[i])) {
            continue;
        }
        total += adaptive_quadrature([&](double r) { return kl_term(pdf.branch_value(i, r), p, r); }, bp[i],
                                     bp[i + 1], 1e-12);
    }
    return clamp_round_off(total);
}

double kl_divergence(const std::function<double(double)>& f, std::span<const double> breaks, const BetaParams& p) {
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        if (!(breaks[i + 1] >= breaks[i])) {
            throw DomainError("kl_divergence: breaks must be ascending");
        }
        total += adaptive_quadrature([&](double r) { return kl_term(f(r), p, r); }, breaks[i], breaks[i + 1], 1e-12);
    }
    return clamp_round_off(total);
}

KLCurve kl_sweep(Dimension dim, Scenario s, std::span<const double> ratios) {
    for (std::size_t i = 0; i < ratios.size(); ++i) {
        if (!(ratios[i] > 1.0) || (i > 0 && !(ratios[i] > ratios[i - 1]))) {
            throw ConfigError("kl_sweep: ratios must exceed 1 and increase strictly");
        }
    }
    KLCurve curve{std::vector<double>(ratios.begin(), ratios.end()), std::vector<double>(ratios.size())};
    parallel_for(ratios.size(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const PiecewisePdf pdf(RegionPair(dim, 1.0, ratios[i]), s);
            curve.kl[i] = kl_divergence(pdf, fit_beta(pdf));
        }
    });
    return curve;
}

std::vector<double> ratio_grid(double lo, double hi, double step) {
    if (!(step > 0.0) || !(hi >= lo)) {
        throw ConfigError("ratio_grid: need step > 0 and hi >= lo");
    }
    std::vector<double> out;
    // Index-based so that accumulated round-off cannot drop the last point.
    for (std::size_t k = 0;; ++k) {
        const double x = lo + static_cast<double>(k) * step;
        if (x >= hi - 1e-9 * step) {
            out.push_back(hi);
            break;
        }
        out.push_back(x);
    }
    return out;
}

std::optional<double> threshold_crossing(const KLCurve& curve, double level) {
    if (!(level > 0.0)) {
        throw ConfigError("threshold_crossing: level must be positive");
    }
    for (std::size_t i = 0; i + 1 < curve.kl.size(); ++i) {
        const double a = curve.kl[i];
        const double b = curve.kl[i + 1];
        if (a < level && b >= level) {
            const double t = (level - a) / (b - a);
            return curve.ratios[i] + t * (curve.ratios[i + 1] - curve.ratios[i]);
        }
    }
    return std::nullopt;
}

}  // namespace ringdist
