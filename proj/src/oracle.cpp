#include "ringdist/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ringdist/error.hpp"
#include "ringdist/quadrature.hpp"

namespace ringdist {

namespace {

using L = RhoLimit;
using G = IntersectionCase;

RInterval interval(double lo, double hi, std::vector<RhoSegment> segs) { return RInterval{lo, hi, std::move(segs)}; }

// One function per interval table; rows are r-intervals, columns rho-segments.
std::vector<RInterval> table_r2_le_2r1(double r1, double r2) {
    const double mid = 0.5 * (r1 + r2);
    return {
        interval(0.0, r2 - r1, {{L::Zero, L::R1MinusR, G::G0Outside}, {L::R1MinusR, L::R1, G::G1InnerOnly}}),
        interval(r2 - r1, r1,
                 {{L::Zero, L::R1MinusR, G::G0Outside},
                  {L::R1MinusR, L::R2MinusR, G::G1InnerOnly},
                  {L::R2MinusR, L::R1, G::G2BothBoundaries}}),
        interval(r1, mid,
                 {{L::Zero, L::RMinusR1, G::G3Contained},
                  {L::RMinusR1, L::R2MinusR, G::G1InnerOnly},
                  {L::R2MinusR, L::R1, G::G2BothBoundaries}}),
        interval(mid, r2,
                 {{L::Zero, L::R2MinusR, G::G3Contained},
                  {L::R2MinusR, L::RMinusR1, G::G4OuterOnly},
                  {L::RMinusR1, L::R1, G::G2BothBoundaries}}),
        interval(r2, 2.0 * r1,
                 {{L::Zero, L::RMinusR2, G::G0Outside},
                  {L::RMinusR2, L::RMinusR1, G::G4OuterOnly},
                  {L::RMinusR1, L::R1, G::G2BothBoundaries}}),
        interval(2.0 * r1, r1 + r2, {{L::Zero, L::RMinusR2, G::G0Outside}, {L::RMinusR2, L::R1, G::G4OuterOnly}}),
    };
}

std::vector<RInterval> table_r2_in_2r1_3r1(double r1, double r2) {
    const double mid = 0.5 * (r1 + r2);
    return {
        interval(0.0, r1, {{L::Zero, L::R1MinusR, G::G0Outside}, {L::R1MinusR, L::R1, G::G1InnerOnly}}),
        interval(r1, r2 - r1, {{L::Zero, L::RMinusR1, G::G3Contained}, {L::RMinusR1, L::R1, G::G1InnerOnly}}),
        interval(r2 - r1, mid,
                 {{L::Zero, L::RMinusR1, G::G3Contained},
                  {L::RMinusR1, L::R2MinusR, G::G1InnerOnly},
                  {L::R2MinusR, L::R1, G::G2BothBoundaries}}),
        interval(mid, 2.0 * r1,
                 {{L::Zero, L::R2MinusR, G::G3Contained},
                  {L::R2MinusR, L::RMinusR1, G::G4OuterOnly},
                  {L::RMinusR1, L::R1, G::G2BothBoundaries}}),
        interval(2.0 * r1, r2, {{L::Zero, L::R2MinusR, G::G3Contained}, {L::R2MinusR, L::R1, G::G4OuterOnly}}),
        interval(r2, r1 + r2, {{L::Zero, L::RMinusR2, G::G0Outside}, {L::RMinusR2, L::R1, G::G4OuterOnly}}),
    };
}

std::vector<RInterval> table_r2_gt_3r1(double r1, double r2) {
    return {
        interval(0.0, r1, {{L::Zero, L::R1MinusR, G::G0Outside}, {L::R1MinusR, L::R1, G::G1InnerOnly}}),
        interval(r1, 2.0 * r1, {{L::Zero, L::RMinusR1, G::G3Contained}, {L::RMinusR1, L::R1, G::G1InnerOnly}}),
        interval(2.0 * r1, r2 - r1, {{L::Zero, L::R1, G::G3Contained}}),
        interval(r2 - r1, r2, {{L::Zero, L::R2MinusR, G::G3Contained}, {L::R2MinusR, L::R1, G::G4OuterOnly}}),
        interval(r2, r1 + r2, {{L::Zero, L::RMinusR2, G::G0Outside}, {L::RMinusR2, L::R1, G::G4OuterOnly}}),
    };
}

}  // namespace

double evaluate_limit(RhoLimit limit, const RegionPair& pair, double r) {
    const double r1 = pair.r1();
    const double r2 = pair.r2();
    double v = 0.0;
    switch (limit) {
        case L::Zero: v = 0.0; break;
        case L::R1: v = r1; break;
        case L::R1MinusR: v = r1 - r; break;
        case L::R2MinusR: v = r2 - r; break;
        case L::RMinusR1: v = r - r1; break;
        case L::RMinusR2: v = r - r2; break;
    }
    return std::clamp(v, 0.0, r1);
}

std::vector<double> IntervalPlan::breakpoints() const {
    std::vector<double> bp;
    bp.reserve(intervals.size() + 1);
    for (const auto& iv : intervals) {
        bp.push_back(iv.r_lo);
    }
    if (!intervals.empty()) {
        bp.push_back(intervals.back().r_hi);
    }
    return bp;
}

std::size_t IntervalPlan::locate(double r) const {
    if (intervals.empty() || r < intervals.front().r_lo || r > intervals.back().r_hi) {
        return intervals.size();
    }
    for (std::size_t i = intervals.size(); i-- > 0;) {
        if (!intervals[i].empty() && r >= intervals[i].r_lo) {
            return i;
        }
    }
    return 0;
}

IntervalPlan build_plan(const RegionPair& pair) {
    const Regime regime = classify_regime(pair);
    IntervalPlan plan{regime.oracle, {}};
    switch (regime.oracle) {
        case OracleRegime::R2le2R1: plan.intervals = table_r2_le_2r1(pair.r1(), pair.r2()); break;
        case OracleRegime::R2in2to3R1: plan.intervals = table_r2_in_2r1_3r1(pair.r1(), pair.r2()); break;
        case OracleRegime::R2gt3R1: plan.intervals = table_r2_gt_3r1(pair.r1(), pair.r2()); break;
    }
    return plan;
}

double numeric_pdf(const RegionPair& pair, const IntervalPlan& plan, Scenario s, double r) {
    if (std::isnan(r) || r < 0.0) {
        throw DomainError("numeric_pdf: r must be non-negative");
    }
    const std::size_t idx = plan.locate(r);
    if (idx == plan.intervals.size() || r == 0.0) {
        return 0.0;
    }
    double total = 0.0;
    for (const auto& seg : plan.intervals[idx].segments) {
        if (seg.g == IntersectionCase::G0Outside) {
            continue;
        }
        const double lo = evaluate_limit(seg.lo, pair, r);
        const double hi = evaluate_limit(seg.hi, pair, r);
        if (!(hi > lo)) {
            continue;
        }
        auto integrand = [&](double rho) {
            return case_formula(pair, seg.g, rho, r) * inner_radial_pdf(pair, s, rho);
        };
        try {
            total += adaptive_quadrature(integrand, lo, hi, 1e-11);
        } catch (const NumericalError&) {
            throw NumericalError(std::string("numeric_pdf: segment ") + std::string(to_string(seg.g)) +
                                     " did not converge at r=" + std::to_string(r),
                                 lo, hi);
        }
    }
    return total;
}

}  // namespace ringdist
