#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "ringdist/geometry.hpp"

namespace ringdist {

/// A coefficient that depends on the distance r.
using RadialCoefficient = std::function<double(double)>;

/// q1..q12 of the unified (r2 <= 3 r1) planar form. Index n is 1-based.
struct UnifiedCoefficients2D {
    std::array<RadialCoefficient, 12> q;
    double operator()(int n, double r) const { return q.at(static_cast<std::size_t>(n - 1))(r); }
};

/// p1..p6 of the sparse (r2 > 3 r1) planar form. Index n is 1-based.
struct SparseCoefficients2D {
    std::array<RadialCoefficient, 6> p;
    double operator()(int n, double r) const { return p.at(static_cast<std::size_t>(n - 1))(r); }
};

/// Polynomial coefficients of the spatial forms, indexed by power of r.
/// `a` and `c` hold in both regimes; `b` exists only when r2 <= 3 r1.
/// Polynomial coefficients by power of r. Held in extended precision since
/// the outer branch cancels heavily near r1 + r2.
struct Coefficients3D {
    using Table = std::array<long double, 10>;
    Table a{};
    std::optional<Table> b;
    Table c{};
};

UnifiedCoefficients2D unified_coefficients_2d(const RegionPair& pair, Scenario s);
SparseCoefficients2D sparse_coefficients_2d(const RegionPair& pair, Scenario s);
Coefficients3D coefficients_3d(const RegionPair& pair, Scenario s);

/// Exact density of the internodal distance as a three-branch piecewise
/// function. Immutable after construction and safe to share across threads.
///
/// Branch i covers [breakpoints[i], breakpoints[i+1]); the last branch is
/// closed at r1 + r2. Breakpoints are [0, r2-r1, 2r1, r1+r2] in the unified
/// regime and [0, 2r1, r2-r1, r1+r2] in the sparse one. They coincide (and
/// the middle branch is empty) exactly at r2 = 3 r1.
class PiecewisePdf {
  public:
    static constexpr std::size_t kBranches = 3;

    PiecewisePdf(const RegionPair& pair, Scenario s);

    const RegionPair& pair() const noexcept { return pair_; }
    Scenario scenario() const noexcept { return scenario_; }
    const Regime& regime() const noexcept { return regime_; }
    const std::array<double, kBranches + 1>& breakpoints() const noexcept { return breakpoints_; }
    double support() const noexcept { return pair_.max_distance(); }

    /// Density at r. Zero beyond r1 + r2; throws DomainError for NaN or r < 0.
    double operator()(double r) const;

    /// Index of the branch whose interval contains r (r inside the support).
    std::size_t branch_index(double r) const;

    /// Formula of branch i evaluated at r, regardless of interval membership.
    /// Used to check continuity at breakpoints.
    double branch_value(std::size_t i, double r) const;

    const std::optional<UnifiedCoefficients2D>& unified_2d() const noexcept { return unified_2d_; }
    const std::optional<SparseCoefficients2D>& sparse_2d() const noexcept { return sparse_2d_; }
    const std::optional<Coefficients3D>& poly_3d() const noexcept { return poly_3d_; }

  private:
    double planar_branch(std::size_t i, double r) const;
    double spatial_branch(std::size_t i, double r) const;

    RegionPair pair_;
    Scenario scenario_;
    Regime regime_;
    std::array<double, kBranches + 1> breakpoints_{};
    std::optional<UnifiedCoefficients2D> unified_2d_;
    std::optional<SparseCoefficients2D> sparse_2d_;
    std::optional<Coefficients3D> poly_3d_;
};

inline PiecewisePdf build_pdf(const RegionPair& pair, Scenario s) { return PiecewisePdf(pair, s); }

double eval_pdf(const PiecewisePdf& pdf, double r);

/// P(distance <= r), integrated branch by branch to 1e-10 absolute.
double eval_cdf(const PiecewisePdf& pdf, double r);

/// eval_cdf at every point of an ascending sequence, accumulating the
/// integral between neighbours instead of restarting from zero.
std::vector<double> eval_cdf_sorted(const PiecewisePdf& pdf, std::span<const double> ascending);

/// E[r^n]. n = 0 returns the total mass.
double moments(const PiecewisePdf& pdf, int n);

/// Limiting laws. The *Boundary kinds put the outer node on the circle or
/// sphere of the given radius (r1 = r2 = radius); the Full kinds put it
/// anywhere in the disk or ball (r1 = 0).
enum class CorollaryKind {
    Disk2DS1Boundary,
    Disk2DS2Boundary,
    Sphere3DS1Boundary,
    Sphere3DS2Boundary,
    FullDisk2D,
    FullSphere3D,
};

/// Zero outside the support of the chosen law.
double corollary_pdf(CorollaryKind kind, double radius, double r);

}  // namespace ringdist
