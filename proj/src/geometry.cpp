#include "ringdist/geometry.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <cmath>
#include <numbers>
#include <string>

#include "ringdist/error.hpp"

namespace ringdist {

namespace {

constexpr double kPi = std::numbers::pi;

// Triangle with sides a, b, c. Excesses u_x = (sum of the other two) - x,
// evaluated in Kahan's order so the same three sides always give the same
// rounded factors regardless of argument order.
struct TriangleFactors {
    double perimeter;
    double ua;
    double ub;
    double uc;
};

TriangleFactors triangle_factors(double a, double b, double c) {
    std::array<double, 3> sides{a, b, c};
    std::sort(sides.begin(), sides.end(), std::greater<>());
    const double x = sides[0];
    const double y = sides[1];
    const double z = sides[2];
    const double ux = z - (x - y);
    const double uy = z + (x - y);
    const double uz = x + (y - z);
    auto excess_of = [&](double side) {
        if (side == x) {
            return ux;
        }
        return side == y ? uy : uz;
    };
    return {x + (y + z), excess_of(a), excess_of(b), excess_of(c)};
}

// Angle between sides rho and r opposite the side `opposite`, clamped to
// [0, pi] when the three lengths do not close a triangle.
double triangle_angle(double rho, double r, double opposite) {
    const auto t = triangle_factors(rho, r, opposite);
    const double num = std::max(t.ua, 0.0) * std::max(t.ub, 0.0);
    const double den = t.perimeter * std::max(t.uc, 0.0);
    return 2.0 * std::atan2(std::sqrt(num), std::sqrt(den));
}

void require_positive(double rho, double r) {
    if (!(rho > 0.0) || !(r > 0.0)) {
        throw DomainError("theta: rho and r must be positive (got rho=" + std::to_string(rho) +
                          ", r=" + std::to_string(r) + ")");
    }
}

// Cumulative of the 3-D RWP radial law in t = rho / r1.
double rwp3_cdf(double t) {
    const double t3 = t * t * t;
    const double t5 = t3 * t * t;
    const double t7 = t5 * t * t;
    return 35.0 / 72.0 * (7.0 * t3 - 34.0 * t5 / 5.0 + 13.0 * t7 / 7.0);
}

}  // namespace

std::string_view to_string(Dimension dim) { return dim == Dimension::TwoD ? "2d" : "3d"; }

std::string_view to_string(Scenario s) { return s == Scenario::S1 ? "s1" : "s2"; }

std::string_view to_string(IntersectionCase c) {
    switch (c) {
        case IntersectionCase::G0Outside: return "g0";
        case IntersectionCase::G1InnerOnly: return "g1";
        case IntersectionCase::G2BothBoundaries: return "g2";
        case IntersectionCase::G3Contained: return "g3";
        case IntersectionCase::G4OuterOnly: return "g4";
    }
    return "?";
}

RegionPair::RegionPair(Dimension dim, double r1, double r2) : dim_(dim), r1_(r1), r2_(r2), measure_(0.0) {
    if (!std::isfinite(r1) || !std::isfinite(r2) || !(r1 > 0.0) || !(r1 < r2)) {
        throw ConfigError("region requires 0 < r1 < r2 (got r1=" + std::to_string(r1) +
                          ", r2=" + std::to_string(r2) + ")");
    }
    if (dim == Dimension::TwoD) {
        measure_ = kPi * (r2 * r2 - r1 * r1);
    } else {
        measure_ = 4.0 / 3.0 * kPi * (r2 * r2 * r2 - r1 * r1 * r1);
    }
    if (!(measure_ > 0.0)) {
        throw ConfigError("region has zero area/volume");
    }
}

Regime classify_regime(const RegionPair& pair) {
    const double r1 = pair.r1();
    const double r2 = pair.r2();
    Regime regime{};
    regime.unified = r2 <= 3.0 * r1 ? UnifiedRegime::UnifiedR2le3R1 : UnifiedRegime::SparseR2gt3R1;
    if (r2 <= 2.0 * r1) {
        regime.oracle = OracleRegime::R2le2R1;
    } else if (r2 <= 3.0 * r1) {
        regime.oracle = OracleRegime::R2in2to3R1;
    } else {
        regime.oracle = OracleRegime::R2gt3R1;
    }
    return regime;
}

double inner_radial_pdf(const RegionPair& pair, Scenario s, double rho) {
    if (std::isnan(rho) || rho < 0.0) {
        throw DomainError("inner_radial_pdf: rho must be non-negative");
    }
    const double r1 = pair.r1();
    if (rho > r1) {
        return 0.0;
    }
    const double t = rho / r1;
    if (pair.dim() == Dimension::TwoD) {
        return s == Scenario::S1 ? 2.0 * t / r1 : 4.0 * t / r1 * (1.0 - t * t);
    }
    const double t2 = t * t;
    if (s == Scenario::S1) {
        return 3.0 * t2 / r1;
    }
    return 35.0 / 72.0 * (21.0 * t2 - 34.0 * t2 * t2 + 13.0 * t2 * t2 * t2) / r1;
}

double inner_radial_cdf(const RegionPair& pair, Scenario s, double rho) {
    if (std::isnan(rho) || rho < 0.0) {
        throw DomainError("inner_radial_cdf: rho must be non-negative");
    }
    if (rho >= pair.r1()) {
        return 1.0;
    }
    const double t = rho / pair.r1();
    const double t2 = t * t;
    if (pair.dim() == Dimension::TwoD) {
        return s == Scenario::S1 ? t2 : 2.0 * t2 - t2 * t2;
    }
    return s == Scenario::S1 ? t2 * t : rwp3_cdf(t);
}

double inner_radial_ppf(const RegionPair& pair, Scenario s, double u) {
    if (!(u >= 0.0 && u <= 1.0)) {
        throw DomainError("inner_radial_ppf: u must lie in [0, 1]");
    }
    const double r1 = pair.r1();
    if (pair.dim() == Dimension::TwoD) {
        if (s == Scenario::S1) {
            return r1 * std::sqrt(u);
        }
        // F(t) = 2t^2 - t^4  =>  t^2 = 1 - sqrt(1 - u)
        return r1 * std::sqrt(1.0 - std::sqrt(1.0 - u));
    }
    if (s == Scenario::S1) {
        return r1 * std::cbrt(u);
    }
    if (u == 0.0 || u == 1.0) {
        return r1 * u;
    }
    // Bisect to the resolution of a double. That meets |F - u| <= 1e-12 with
    // a wide margin and also pins rho near the origin, where F is flat.
    double lo = 0.0;
    double hi = 1.0;
    double mid = 0.5;
    for (int it = 0; it < 200; ++it) {
        mid = 0.5 * (lo + hi);
        if (!(mid > lo && mid < hi)) {
            break;
        }
        (rwp3_cdf(mid) < u ? lo : hi) = mid;
    }
    mid = std::abs(rwp3_cdf(lo) - u) <= std::abs(rwp3_cdf(hi) - u) ? lo : hi;
    if (std::abs(rwp3_cdf(mid) - u) > 1e-12) {
        throw NumericalError("inner_radial_ppf: bisection did not reach |F - u| <= 1e-12");
    }
    return r1 * mid;
}

double theta_inner(double rho, double r, double r1) {
    require_positive(rho, r);
    return triangle_angle(rho, r, r1);
}

double theta_outer(double rho, double r, double r2) {
    require_positive(rho, r);
    return triangle_angle(rho, r, r2);
}

double kappa(double r, double r1, double r2) {
    const double lo = r2 - r1;
    const double hi = r1 + r2;
    // Small slack absorbs breakpoints computed in a different order.
    const double slack = 1e-12 * hi;
    if (std::isnan(r) || r < lo - slack || r > hi + slack) {
        throw DomainError("kappa: r outside [r2 - r1, r1 + r2]");
    }
    const auto t = triangle_factors(r, r1, r2);
    const double radicand = t.perimeter * std::max(t.ua, 0.0) * std::max(t.ub, 0.0) * std::max(t.uc, 0.0);
    return std::sqrt(radicand);
}

IntersectionCase intersection_case(const RegionPair& pair, double rho, double r) {
    const double r1 = pair.r1();
    const double r2 = pair.r2();
    if (r <= r1 - rho || r >= r2 + rho) {
        return IntersectionCase::G0Outside;
    }
    const bool crosses_inner = std::abs(r1 - rho) < r && r < r1 + rho;
    const bool crosses_outer = r2 - rho < r;
    if (crosses_inner && crosses_outer) {
        return IntersectionCase::G2BothBoundaries;
    }
    if (crosses_inner) {
        return IntersectionCase::G1InnerOnly;
    }
    if (crosses_outer) {
        return IntersectionCase::G4OuterOnly;
    }
    return IntersectionCase::G3Contained;
}

double case_formula(const RegionPair& pair, IntersectionCase c, double rho, double r) {
    const double measure = pair.outer_measure();
    if (pair.dim() == Dimension::TwoD) {
        const double scale = 2.0 * r / measure;
        switch (c) {
            case IntersectionCase::G0Outside: return 0.0;
            case IntersectionCase::G1InnerOnly: return scale * (kPi - theta_inner(rho, r, pair.r1()));
            case IntersectionCase::G2BothBoundaries:
                return scale * (theta_outer(rho, r, pair.r2()) - theta_inner(rho, r, pair.r1()));
            case IntersectionCase::G3Contained: return scale * kPi;
            case IntersectionCase::G4OuterOnly: return scale * theta_outer(rho, r, pair.r2());
        }
    } else {
        const double scale = 2.0 * kPi * r * r / measure;
        switch (c) {
            case IntersectionCase::G0Outside: return 0.0;
            case IntersectionCase::G1InnerOnly: return scale * (1.0 + std::cos(theta_inner(rho, r, pair.r1())));
            case IntersectionCase::G2BothBoundaries:
                return scale * (std::cos(theta_inner(rho, r, pair.r1())) - std::cos(theta_outer(rho, r, pair.r2())));
            case IntersectionCase::G3Contained: return 2.0 * scale;
            case IntersectionCase::G4OuterOnly: return scale * (1.0 - std::cos(theta_outer(rho, r, pair.r2())));
        }
    }
    throw InternalError("case_formula: unknown intersection case");
}

double conditional_pdf(const RegionPair& pair, IntersectionCase c, double rho, double r) {
    const IntersectionCase actual = intersection_case(pair, rho, r);
    if (actual != c) {
        throw InternalError("conditional_pdf: case " + std::string(to_string(c)) + " requested but (rho, r) is " +
                            std::string(to_string(actual)));
    }
    return case_formula(pair, c, rho, r);
}

double conditional_pdf(const RegionPair& pair, double rho, double r) {
    return case_formula(pair, intersection_case(pair, rho, r), rho, r);
}

}  // namespace ringdist
