#pragma once

#include <cstddef>
#include <vector>

#include "ringdist/closed_form.hpp"
#include "ringdist/oracle.hpp"

namespace ringdist {

struct Deviation {
    double max_abs = 0.0;
    double worst_r = 0.0;
    std::size_t points = 0;
};

/// n evaluation points at bin centres of [0, r1+r2], nudged at least 1e-9
/// away from every closed-form and table breakpoint.
std::vector<double> interior_points(const PiecewisePdf& pdf, const IntervalPlan& plan, std::size_t n);

/// Largest |closed form - conditioning integral| over interior_points().
/// Evaluated in parallel; the result does not depend on the thread count.
Deviation compare_with_oracle(const PiecewisePdf& pdf, std::size_t n);

}  // namespace ringdist
