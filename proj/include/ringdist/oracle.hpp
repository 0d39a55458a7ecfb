#pragma once

#include <cstddef>
#include <vector>

#include "ringdist/geometry.hpp"

namespace ringdist {

/// An rho-limit that moves with r.
enum class RhoLimit { Zero, R1, R1MinusR, R2MinusR, RMinusR1, RMinusR2 };

double evaluate_limit(RhoLimit limit, const RegionPair& pair, double r);

struct RhoSegment {
    RhoLimit lo;
    RhoLimit hi;
    IntersectionCase g;
};

struct RInterval {
    double r_lo;
    double r_hi;
    std::vector<RhoSegment> segments;

    bool empty() const noexcept { return !(r_hi > r_lo); }
};

/// Integration plan for the conditioning integral: a tiling of [0, r1+r2]
/// into r-intervals, each carrying the rho-segments and the conditional
/// density that applies on each. Empty intervals at regime boundaries are
/// kept so that the plan has the same shape as its table.
struct IntervalPlan {
    OracleRegime regime;
    std::vector<RInterval> intervals;

    std::vector<double> breakpoints() const;

    /// Interval containing r (lower-closed; the last is closed at r1 + r2).
    /// Returns intervals.size() when r lies outside the support.
    std::size_t locate(double r) const;
};

IntervalPlan build_plan(const RegionPair& pair);

/// f_r(r) by integrating g(rho, r) f_rho(rho) over the plan's rho-segments to
/// 1e-11 absolute per segment. Throws NumericalError when a segment fails to
/// converge within the subdivision budget.
double numeric_pdf(const RegionPair& pair, const IntervalPlan& plan, Scenario s, double r);

inline double numeric_pdf(const RegionPair& pair, Scenario s, double r) {
    return numeric_pdf(pair, build_plan(pair), s, r);
}

}  // namespace ringdist
