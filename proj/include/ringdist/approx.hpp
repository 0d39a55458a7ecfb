#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "ringdist/closed_form.hpp"

namespace ringdist {

/// Beta law on [0, scale]: x = r / scale follows Beta(alpha, beta).
struct BetaParams {
    double alpha = 1.0;
    double beta = 1.0;
    double scale = 1.0;

    double mean() const { return alpha / (alpha + beta); }
    double variance() const {
        const double s = alpha + beta;
        return alpha * beta / (s * s * (s + 1.0));
    }
};

/// Moment-matched beta on [0, r1 + r2]. Throws FitError when the normalized
/// variance is not below m (1 - m).
BetaParams fit_beta(const PiecewisePdf& pdf);

/// Density in r (per unit length), evaluated in the log domain.
double beta_pdf(const BetaParams& p, double r);

/// KL(f || g) in nats, f the exact density and g the beta approximation.
/// Only points with f > 1e-15 contribute. Throws DivergenceError when g
/// vanishes where f does not.
double kl_divergence(const PiecewisePdf& pdf, const BetaParams& p);

/// KL(f || g) for a density f that is smooth between consecutive `breaks`.
double kl_divergence(const std::function<double(double)>& f, std::span<const double> breaks, const BetaParams& p);

struct KLCurve {
    std::vector<double> ratios;
    std::vector<double> kl;
};

/// KL of the fitted beta for r1 = 1 and r2 = ratio, for each ratio.
KLCurve kl_sweep(Dimension dim, Scenario s, std::span<const double> ratios);

/// Ratios from lo to hi (inclusive, within half a step) in increments of step.
std::vector<double> ratio_grid(double lo, double hi, double step);

/// First upward crossing of `level`, linearly interpolated between the
/// bracketing ratios. std::nullopt when the curve never crosses.
std::optional<double> threshold_crossing(const KLCurve& curve, double level);

}  // namespace ringdist
