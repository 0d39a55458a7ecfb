#include "ringdist/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ringdist/error.hpp"
#include "ringdist/parallel.hpp"

namespace ringdist {

void SampleConfig::validate() const {
    if (n < 1) {
        throw ConfigError("sample: n must be at least 1");
    }
    if (bins < 8) {
        throw ConfigError("sample: bins must be at least 8");
    }
}

double distance_from_uniforms(const RegionPair& pair, Scenario s, double u_inner, double u_outer, double u_angle) {
    const double r1 = pair.r1();
    const double r2 = pair.r2();
    const double inner = inner_radial_ppf(pair, s, u_inner);
    double outer = 0.0;
    double cos_angle = 0.0;
    if (pair.dim() == Dimension::TwoD) {
        outer = std::sqrt(r1 * r1 + u_outer * (r2 * r2 - r1 * r1));
        cos_angle = std::cos(2.0 * std::numbers::pi * u_angle);
    } else {
        const double r1c = r1 * r1 * r1;
        outer = std::cbrt(r1c + u_outer * (r2 * r2 * r2 - r1c));
        cos_angle = 2.0 * u_angle - 1.0;
    }
    outer = std::clamp(outer, r1, r2);
    const double sq = inner * inner + outer * outer - 2.0 * inner * outer * cos_angle;
    return std::clamp(std::sqrt(std::max(sq, 0.0)), 0.0, r1 + r2);
}

double sample_distance(const RegionPair& pair, Scenario s, SplitMix64& rng) {
    const double u_inner = rng.uniform();
    const double u_outer = rng.uniform();
    const double u_angle = rng.uniform();
    return distance_from_uniforms(pair, s, u_inner, u_outer, u_angle);
}

std::vector<double> sample_distances(const RegionPair& pair, Scenario s, const SampleConfig& cfg) {
    cfg.validate();
    std::vector<double> out(cfg.n);
    parallel_for(cfg.n, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            auto rng = SplitMix64::substream(cfg.seed, i);
            out[i] = sample_distance(pair, s, rng);
        }
    });
    return out;
}

std::vector<std::uint64_t> histogram_counts(std::span<const double> samples, std::size_t bins, double support) {
    if (!(support > 0.0) || bins == 0) {
        throw ConfigError("histogram: support and bin count must be positive");
    }
    std::vector<std::uint64_t> counts(bins, 0);
    for (const double x : samples) {
        if (std::isnan(x) || x < 0.0 || x > support) {
            throw DataError("histogram: sample " + std::to_string(x) + " outside [0, " + std::to_string(support) + "]");
        }
        auto bin = static_cast<std::size_t>(x / support * static_cast<double>(bins));
        counts[std::min(bin, bins - 1)] += 1;
    }
    return counts;
}

EmpiricalDistribution empirical_pdf(std::span<const double> samples, const SampleConfig& cfg, double support) {
    if (samples.empty()) {
        throw DataError("empirical_pdf: no samples");
    }
    if (cfg.bins < 8) {
        throw ConfigError("empirical_pdf: bins must be at least 8");
    }
    const auto counts = histogram_counts(samples, cfg.bins, support);
    EmpiricalDistribution dist;
    dist.n = samples.size();
    dist.bin_edges.resize(cfg.bins + 1);
    for (std::size_t i = 0; i <= cfg.bins; ++i) {
        dist.bin_edges[i] = support * static_cast<double>(i) / static_cast<double>(cfg.bins);
    }
    dist.densities.resize(cfg.bins);
    const double n = static_cast<double>(dist.n);
    for (std::size_t i = 0; i < cfg.bins; ++i) {
        dist.densities[i] = static_cast<double>(counts[i]) / (n * dist.bin_width(i));
    }
    return dist;
}

double ks_statistic(std::span<const double> sorted_samples, const std::function<double(double)>& cdf) {
    std::vector<double> values(sorted_samples.size());
    std::transform(sorted_samples.begin(), sorted_samples.end(), values.begin(), cdf);
    return ks_statistic(sorted_samples, values);
}

double ks_statistic(std::span<const double> sorted_samples, std::span<const double> cdf_at_samples) {
    if (sorted_samples.empty()) {
        throw DataError("ks_statistic: no samples");
    }
    if (cdf_at_samples.size() != sorted_samples.size()) {
        throw DataError("ks_statistic: one cdf value per sample required");
    }
    const double n = static_cast<double>(sorted_samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < cdf_at_samples.size(); ++i) {
        const double f = cdf_at_samples[i];
        const double above = static_cast<double>(i + 1) / n - f;
        const double below = f - static_cast<double>(i) / n;
        d = std::max({d, std::abs(above), std::abs(below)});
    }
    return d;
}

double ks_critical_1pct(std::size_t n) { return 1.63 / std::sqrt(static_cast<double>(n)); }

}  // namespace ringdist
