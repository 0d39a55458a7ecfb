#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "ringdist/error.hpp"

namespace ringdist {

struct QuadratureOptions {
    double abs_tol = 1e-11;
    /// Stop also when error <= rel_tol * |value|. Zero disables it.
    double rel_tol = 0.0;
    std::size_t max_panels = std::size_t{1} << 20;
};

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
    std::size_t panels = 0;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK qk15).
// Both rules are open, so the integrand is never evaluated at panel ends.
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double lo;
    double hi;
    double value;
    double error;
    friend bool operator<(const Panel& a, const Panel& b) { return a.error < b.error; }
};

template <class F>
Panel gauss_kronrod15(F& f, double lo, double hi) {
    const double centre = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const double fc = f(centre);
    double kronrod = fc * kKronrodWeights[7];
    double gauss = fc * kGaussWeights[3];
    double abs_sum = std::abs(kronrod);
    std::array<double, 7> f1{};
    std::array<double, 7> f2{};
    for (std::size_t j = 0; j < 7; ++j) {
        const double dx = half * kKronrodNodes[j];
        f1[j] = f(centre - dx);
        f2[j] = f(centre + dx);
        const double pair = f1[j] + f2[j];
        kronrod += kKronrodWeights[j] * pair;
        abs_sum += kKronrodWeights[j] * (std::abs(f1[j]) + std::abs(f2[j]));
        if (j % 2 == 1) {
            gauss += kGaussWeights[j / 2] * pair;
        }
    }
    const double mean = 0.5 * kronrod;
    double asc = kKronrodWeights[7] * std::abs(fc - mean);
    for (std::size_t j = 0; j < 7; ++j) {
        asc += kKronrodWeights[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
    }
    double err = std::abs((kronrod - gauss) * half);
    const double resasc = asc * std::abs(half);
    const double resabs = abs_sum * std::abs(half);
    if (resasc != 0.0 && err != 0.0) {
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    }
    constexpr double kEps = 2.220446049250313e-16;
    if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps)) {
        err = std::max(50.0 * kEps * resabs, err);
    }
    return Panel{lo, hi, kronrod * half, err};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (7/15) integration: the panel with the
/// largest error estimate is halved until the summed estimate meets the
/// tolerance. Throws NumericalError once max_panels is exceeded.
template <class F>
QuadratureResult integrate(F&& f, double lo, double hi, const QuadratureOptions& opts = {}) {
    if (std::isnan(lo) || std::isnan(hi) || lo > hi) {
        throw DomainError("integrate: requires lo <= hi");
    }
    if (lo == hi) {
        return {};
    }
    std::vector<detail::Panel> heap;
    heap.push_back(detail::gauss_kronrod15(f, lo, hi));
    double value = heap.front().value;
    double error = heap.front().error;
    // Panels too narrow to split in double precision.
    std::vector<detail::Panel> frozen;
    double frozen_error = 0.0;
    std::size_t panels = 1;
    auto converged = [&] {
        const double live = error - frozen_error;
        return live <= opts.abs_tol || live <= opts.rel_tol * std::abs(value);
    };
    while (true) {
        if (converged() || heap.empty()) {
            // Running sums drift; confirm against a fresh total before stopping.
            value = 0.0;
            error = 0.0;
            frozen_error = 0.0;
            for (const auto& p : heap) {
                value += p.value;
                error += p.error;
            }
            for (const auto& p : frozen) {
                value += p.value;
                error += p.error;
                frozen_error += p.error;
            }
            if (converged() || heap.empty()) {
                break;
            }
        }
        if (panels >= opts.max_panels) {
            throw NumericalError("integrate: subdivision budget exceeded", lo, hi);
        }
        std::pop_heap(heap.begin(), heap.end());
        const detail::Panel worst = heap.back();
        heap.pop_back();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (!(mid > worst.lo && mid < worst.hi)) {
            frozen.push_back(worst);
            frozen_error += worst.error;
            continue;
        }
        const detail::Panel left = detail::gauss_kronrod15(f, worst.lo, mid);
        const detail::Panel right = detail::gauss_kronrod15(f, mid, worst.hi);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push_back(left);
        std::push_heap(heap.begin(), heap.end());
        heap.push_back(right);
        std::push_heap(heap.begin(), heap.end());
        ++panels;
    }
    return {value, error, panels};
}

/// Integral of f over [lo, hi] to an absolute error estimate of tol.
template <class F>
double adaptive_quadrature(F&& f, double lo, double hi, double tol) {
    QuadratureOptions opts;
    opts.abs_tol = tol;
    return integrate(std::forward<F>(f), lo, hi, opts).value;
}

}  // namespace ringdist
