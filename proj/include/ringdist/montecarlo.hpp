#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "ringdist/geometry.hpp"

namespace ringdist {

/// SplitMix64 (Steele, Lea, Flood). Small, fast, and trivially splittable by
/// seeding: every realization gets its own generator via substream().
class SplitMix64 {
  public:
    using result_type = std::uint64_t;

    static constexpr std::string_view kName = "splitmix64/substream-per-realization";

    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return ~result_type{0}; }

    result_type operator()() noexcept {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    /// Independent generator for realization `index` of the run seeded with
    /// `seed`. Depends only on (seed, index), so results do not change with
    /// the number of worker threads.
    static SplitMix64 substream(std::uint64_t seed, std::uint64_t index) noexcept {
        SplitMix64 mixer(seed ^ (index * 0xd1b54a32d192ed03ULL));
        mixer();
        return SplitMix64(mixer() ^ index);
    }

  private:
    std::uint64_t state_;
};

struct SampleConfig {
    std::uint64_t seed = 0;
    std::size_t n = 100000;
    std::size_t bins = 256;

    /// Throws ConfigError unless n >= 1 and bins >= 8.
    void validate() const;
};

/// One internodal distance. Draws the inner radius by inversion, the outer
/// radius uniformly over the annulus/shell, and the included angle uniformly
/// on the circle (or its cosine uniformly on [-1, 1] in 3-D).
double sample_distance(const RegionPair& pair, Scenario s, SplitMix64& rng);

/// Same draw with the three uniforms supplied by the caller.
double distance_from_uniforms(const RegionPair& pair, Scenario s, double u_inner, double u_outer, double u_angle);

/// cfg.n distances; element i uses SplitMix64::substream(cfg.seed, i).
/// Runs on worker_count() threads with identical output for any count.
std::vector<double> sample_distances(const RegionPair& pair, Scenario s, const SampleConfig& cfg);

struct EmpiricalDistribution {
    std::vector<double> bin_edges;
    std::vector<double> densities;
    std::size_t n = 0;

    double bin_width(std::size_t i) const { return bin_edges[i + 1] - bin_edges[i]; }
};

/// Equal-width histogram on [0, support], normalized to unit mass. Throws
/// DataError for an empty sample or a value outside [0, support].
EmpiricalDistribution empirical_pdf(std::span<const double> samples, const SampleConfig& cfg, double support);

/// Raw bin counts, for merging partial histograms.
std::vector<std::uint64_t> histogram_counts(std::span<const double> samples, std::size_t bins, double support);

/// Kolmogorov-Smirnov statistic sup |F_n - F| for ascending samples.
double ks_statistic(std::span<const double> sorted_samples, const std::function<double(double)>& cdf);

/// Same statistic with F already evaluated at each sample (see eval_cdf_sorted).
double ks_statistic(std::span<const double> sorted_samples, std::span<const double> cdf_at_samples);

/// Asymptotic two-sided critical value at the 1% level, 1.63 / sqrt(n).
double ks_critical_1pct(std::size_t n);

}  // namespace ringdist
