#pragma once

#include <string_view>

namespace ringdist {

enum class Dimension { TwoD = 2, ThreeD = 3 };

/// S1: inner node uniform in the disk/sphere.
/// S2: inner node follows the stationary random-waypoint law (zero pause).
/// The outer node is uniform in the annulus/shell in both.
enum class Scenario { S1, S2 };

std::string_view to_string(Dimension dim);
std::string_view to_string(Scenario s);

/// Disk (sphere) of radius r1 and the concentric annulus (shell) r1 < |x| < r2.
class RegionPair {
  public:
    /// Throws ConfigError unless 0 < r1 < r2 and both are finite.
    RegionPair(Dimension dim, double r1, double r2);

    Dimension dim() const noexcept { return dim_; }
    double r1() const noexcept { return r1_; }
    double r2() const noexcept { return r2_; }

    /// Annulus area (2-D) or shell volume (3-D).
    double outer_measure() const noexcept { return measure_; }

    /// Largest possible internodal distance, r1 + r2.
    double max_distance() const noexcept { return r1_ + r2_; }

    friend bool operator==(const RegionPair&, const RegionPair&) = default;

  private:
    Dimension dim_;
    double r1_;
    double r2_;
    double measure_;
};

enum class UnifiedRegime { UnifiedR2le3R1, SparseR2gt3R1 };
enum class OracleRegime { R2le2R1, R2in2to3R1, R2gt3R1 };

struct Regime {
    UnifiedRegime unified;
    OracleRegime oracle;

    friend bool operator==(const Regime&, const Regime&) = default;
};

/// Boundaries are inclusive on the lower side: r2 == 2 r1 is R2le2R1 and
/// r2 == 3 r1 is still unified.
Regime classify_regime(const RegionPair& pair);

/// How the radius-r locus around the inner node meets the annulus/shell.
enum class IntersectionCase {
    G0Outside,
    G1InnerOnly,
    G2BothBoundaries,
    G3Contained,
    G4OuterOnly,
};

std::string_view to_string(IntersectionCase c);

/// Radial density of the inner node at distance rho from the centre. Zero
/// beyond r1; throws DomainError for negative rho.
double inner_radial_pdf(const RegionPair& pair, Scenario s, double rho);

/// Cumulative of inner_radial_pdf.
double inner_radial_cdf(const RegionPair& pair, Scenario s, double rho);

/// Inverse of inner_radial_cdf. Closed form except for the 3-D RWP law, which
/// is solved by bisection to |F(rho) - u| <= 1e-12.
double inner_radial_ppf(const RegionPair& pair, Scenario s, double u);

/// Half-angle of the locus arc (cap) that lies inside the circle (sphere) of
/// the given radius, measured from the direction towards the centre. The
/// arccos argument is clamped to [-1, 1]. rho and r must be positive.
double theta_inner(double rho, double r, double r1);
double theta_outer(double rho, double r, double r2);

/// sqrt((r^2 - (r2-r1)^2) ((r1+r2)^2 - r^2)), radicand clamped at zero.
double kappa(double r, double r1, double r2);

IntersectionCase intersection_case(const RegionPair& pair, double rho, double r);

/// Density of r given the inner node sits at distance rho. `c` must equal
/// intersection_case(pair, rho, r); a mismatch raises InternalError.
double conditional_pdf(const RegionPair& pair, IntersectionCase c, double rho, double r);

/// Evaluates the formula for case `c` without checking that (rho, r) actually
/// falls in that case. Used where the case is known from an interval table.
double case_formula(const RegionPair& pair, IntersectionCase c, double rho, double r);

/// Convenience: classifies and evaluates in one step.
double conditional_pdf(const RegionPair& pair, double rho, double r);

}  // namespace ringdist
