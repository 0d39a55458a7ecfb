#include "ringdist/verify.hpp"

#include <cmath>

#include "ringdist/parallel.hpp"

namespace ringdist {

std::vector<double> interior_points(const PiecewisePdf& pdf, const IntervalPlan& plan, std::size_t n) {
    constexpr double kOffset = 1e-9;
    std::vector<double> breaks = plan.breakpoints();
    breaks.insert(breaks.end(), pdf.breakpoints().begin(), pdf.breakpoints().end());
    const double support = pdf.support();
    std::vector<double> pts(n);
    for (std::size_t i = 0; i < n; ++i) {
        double r = support * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
        for (const double b : breaks) {
            if (std::abs(r - b) < kOffset) {
                r = (b + kOffset < support) ? b + kOffset : b - kOffset;
            }
        }
        pts[i] = r;
    }
    return pts;
}

Deviation compare_with_oracle(const PiecewisePdf& pdf, std::size_t n) {
    const IntervalPlan plan = build_plan(pdf.pair());
    const std::vector<double> pts = interior_points(pdf, plan, n);
    std::vector<double> dev(n);
    parallel_for(n, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            dev[i] = std::abs(pdf(pts[i]) - numeric_pdf(pdf.pair(), plan, pdf.scenario(), pts[i]));
        }
    });
    Deviation out;
    out.points = n;
    for (std::size_t i = 0; i < n; ++i) {
        if (dev[i] > out.max_abs || std::isnan(dev[i])) {
            out.max_abs = dev[i];
            out.worst_r = pts[i];
        }
    }
    return out;
}

}  // namespace ringdist
