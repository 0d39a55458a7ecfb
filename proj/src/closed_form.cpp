#include "ringdist/closed_form.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ringdist/error.hpp"
#include "ringdist/quadrature.hpp"

namespace ringdist {

namespace {

constexpr double kPi = std::numbers::pi;

RadialCoefficient constant(double v) {
    return [v](double) { return v; };
}

double horner(const Coefficients3D::Table& coeffs, double r) {
    const long double x = r;
    long double acc = 0.0L;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        acc = acc * x + *it;
    }
    return static_cast<double>(acc);
}

}  // namespace

UnifiedCoefficients2D unified_coefficients_2d(const RegionPair& pair, Scenario s) {
    const double r1 = pair.r1();
    const double r2 = pair.r2();
    const double r1sq = r1 * r1;
    const double r2sq = r2 * r2;
    UnifiedCoefficients2D c;
    auto& q = c.q;
    if (s == Scenario::S1) {
        q[0] = [](double r) { return r; };
        q[1] = constant(-2.0 * r1);
        q[2] = [r1](double r) { return r * r1; };
        q[3] = constant(-2.0 * r1sq);
        q[4] = [r2](double r) { return -r * r2; };
        q[5] = constant(r2sq);
        q[6] = constant(r1sq);
        q[7] = constant(0.0);
    } else {
        q[0] = [r1sq](double r) { return -r * (2.0 * r1sq + r * r) / (2.0 * r1sq); };
        q[1] = [r1, r1sq](double r) { return -2.0 * (r1sq - r * r) / r1; };
        q[2] = [r1, r1sq](double r) { return -r * (2.0 * r1sq + r * r) / (2.0 * r1); };
        q[3] = [r1sq](double r) { return -2.0 * (r1sq - r * r); };
        q[4] = constant(0.0);
        q[5] = [r1sq, r2sq](double r) { return -r2sq * (2.0 * r * r - 2.0 * r1sq + r2sq) / r1sq; };
        q[6] = constant(r1sq);
        q[7] = [r1sq, r2sq](double r) { return (r * r - 3.0 * r1sq + 5.0 * r2sq) / (4.0 * r1sq); };
    }
    // q9..q12 repeat q5..q8.
    for (std::size_t i = 8; i < 12; ++i) {
        q[i] = q[i - 4];
    }
    return c;
}

SparseCoefficients2D sparse_coefficients_2d(const RegionPair& pair, Scenario s) {
    const double r1 = pair.r1();
    const double r2 = pair.r2();
    const double r1sq = r1 * r1;
    const double r2sq = r2 * r2;
    SparseCoefficients2D c;
    auto& p = c.p;
    if (s == Scenario::S1) {
        p[0] = [](double r) { return r; };
        p[1] = constant(-2.0 * r1);
        p[2] = [r2](double r) { return -r * r2; };
        p[3] = constant(r2sq);
        p[4] = constant(r1sq);
        p[5] = constant(0.0);
    } else {
        p[0] = [r1sq](double r) { return -r * (2.0 * r1sq + r * r) / (2.0 * r1sq); };
        p[1] = [r1](double r) { return -2.0 * (r1 * r1 - r * r) / r1; };
        p[2] = constant(0.0);
        p[3] = [r1sq, r2sq](double r) { return r2sq * (2.0 * r1sq - 2.0 * r * r - r2sq) / r1sq; };
        p[4] = constant(r1sq);
        p[5] = [r1sq, r2sq](double r) { return (r * r - 3.0 * r1sq + 5.0 * r2sq) / (4.0 * r1sq); };
    }
    return c;
}

Coefficients3D coefficients_3d(const RegionPair& pair, Scenario s) {
    const long double r1 = pair.r1();
    const long double r2 = pair.r2();
    const long double r1p2 = r1 * r1;
    const long double r1p3 = r1p2 * r1;
    const long double r1p4 = r1p3 * r1;
    const long double r1p5 = r1p4 * r1;
    const long double r1p7 = r1p5 * r1p2;
    const long double r2p2 = r2 * r2;
    const long double r2p3 = r2p2 * r2;
    const long double r2p4 = r2p3 * r2;
    const long double r2p5 = r2p4 * r2;
    const long double r2p7 = r2p5 * r2p2;
    // Shared denominators: r1^3 - r2^3 and r1^2 + r1 r2 + r2^2.
    const long double dc = r1p3 - r2p3;
    const long double sq = r1p2 + r1 * r2 + r2p2;
    const long double sum = r1 + r2;
    const long double diff = r1 - r2;

    Coefficients3D k;
    Coefficients3D::Table b{};
    if (s == Scenario::S1) {
        k.a[3] = -9.0 / (4.0 * r1 * dc);
        k.a[5] = 3.0 / (16.0 * r1p3 * dc);

        k.c[1] = 9.0 * diff * sum * sum / (16.0 * r1p3 * sq);
        k.c[2] = -3.0 * (r1p3 + r2p3) / (2.0 * r1p3 * dc);
        k.c[3] = 9.0 * (r1p2 + r2p2) / (8.0 * r1p3 * dc);
        k.c[5] = -3.0 / (16.0 * r1p3 * dc);

        b[1] = k.c[1];
        b[2] = 3.0 / (2.0 * r1p3);
        b[3] = -9.0 * sum / (8.0 * r1p3 * sq);
    } else {
        k.a[4] = -35.0 / (18.0 * r1p2 * dc);
        k.a[5] = -35.0 / (16.0 * r1p3 * dc);
        k.a[6] = 455.0 / (144.0 * r1p4 * dc);
        k.a[7] = -287.0 / (288.0 * r1p5 * dc);
        k.a[9] = 65.0 / (2304.0 * r1p7 * dc);

        k.c[1] = 35.0 * diff * diff * sum * sum * sum * (29.0 * r1p2 - 13.0 * r2p2) / (2304.0 * r1p7 * sq);
        k.c[2] = -(72.0 * r1p7 + 245.0 * r1p4 * r2p3 - 238.0 * r1p2 * r2p5 + 65.0 * r2p7) / (48.0 * r1p7 * dc);
        k.c[3] = 35.0 * sum * (25.0 * r1p4 + 88.0 * r1p2 * r2p2 - 65.0 * r2p4) / (576.0 * r1p7 * sq);
        k.c[4] = 35.0 * (17.0 * r1p2 * r2p3 - 13.0 * r2p5) / (72.0 * r1p7 * dc);
        k.c[5] = -35.0 * (7.0 * r1p4 + 34.0 * r1p2 * r2p2 - 65.0 * r2p4) / (384.0 * r1p7 * dc);
        k.c[6] = -455.0 * r2p3 / (144.0 * r1p7 * dc);
        k.c[7] = 7.0 * (17.0 * r1p2 + 65.0 * r2p2) / (576.0 * r1p7 * dc);
        k.c[9] = -65.0 / (2304.0 * r1p7 * dc);

        b[1] = k.c[1];
        b[2] = diff *
               (72.0 * r1p5 + 144.0 * r1p4 * r2 + 216.0 * r1p3 * r2p2 + 43.0 * r1p2 * r2p3 - 130.0 * r1 * r2p4 -
                65.0 * r2p5) /
               (48.0 * r1p7 * sq);
        b[3] = k.c[3];
        b[4] = -35.0 * (4.0 * r1p4 + 4.0 * r1p3 * r2 + 4.0 * r1p2 * r2p2 - 13.0 * r1 * r2p3 - 13.0 * r2p4) /
               (72.0 * r1p7 * sq);
        b[5] = -35.0 * sum * (31.0 * r1p2 + 65.0 * r2p2) / (384.0 * r1p7 * sq);
        b[6] = 455.0 / (144.0 * r1p7);
        b[7] = -455.0 * sum / (576.0 * r1p7 * sq);
    }
    if (classify_regime(pair).unified == UnifiedRegime::UnifiedR2le3R1) {
        k.b = b;
    }
    return k;
}

PiecewisePdf::PiecewisePdf(const RegionPair& pair, Scenario s)
    : pair_(pair), scenario_(s), regime_(classify_regime(pair)) {
    const double r1 = pair.r1();
    const double r2 = pair.r2();
    const bool unified = regime_.unified == UnifiedRegime::UnifiedR2le3R1;
    breakpoints_ = unified ? std::array<double, 4>{0.0, r2 - r1, 2.0 * r1, r1 + r2}
                           : std::array<double, 4>{0.0, 2.0 * r1, r2 - r1, r1 + r2};
    if (pair.dim() == Dimension::TwoD) {
        if (unified) {
            unified_2d_ = unified_coefficients_2d(pair, s);
        } else {
            sparse_2d_ = sparse_coefficients_2d(pair, s);
        }
    } else {
        poly_3d_ = coefficients_3d(pair, s);
    }
}

std::size_t PiecewisePdf::branch_index(double r) const {
    for (std::size_t i = kBranches - 1; i > 0; --i) {
        if (r >= breakpoints_[i]) {
            return i;
        }
    }
    return 0;
}

double PiecewisePdf::operator()(double r) const {
    if (std::isnan(r) || r < 0.0) {
        throw DomainError("eval_pdf: r must be a non-negative number");
    }
    if (r > support()) {
        return 0.0;
    }
    return branch_value(branch_index(r), r);
}

double PiecewisePdf::branch_value(std::size_t i, double r) const {
    if (i >= kBranches) {
        throw DomainError("branch_value: branch index out of range");
    }
    return pair_.dim() == Dimension::TwoD ? planar_branch(i, r) : spatial_branch(i, r);
}

double PiecewisePdf::planar_branch(std::size_t i, double r) const {
    if (r == 0.0) {
        return 0.0;
    }
    const double r1 = pair_.r1();
    const double r2 = pair_.r2();
    const double area = pair_.outer_measure();
    // phi0 = theta1(r1, r), phi1 = theta1(r2, r), phi2 = theta2(r1, r).
    auto phi0 = [&] { return theta_inner(r1, r, r1); };
    auto phi1 = [&] { return theta_inner(r2, r, r1); };
    auto phi2 = [&] { return theta_outer(r1, r, r2); };
    const double k = (i == 0 || r <= r2 - r1) ? 0.0 : kappa(r, r1, r2);

    if (unified_2d_) {
        const auto& q = *unified_2d_;
        if (i == 0) {
            const double p0 = phi0();
            return 2.0 * r / (area * r1) * (kPi * r1 + q(1, r) * std::sin(p0) + q(2, r) * p0);
        }
        const double p1 = phi1();
        const double p2 = phi2();
        const int base = i == 1 ? 5 : 9;
        const double outer_terms =
            q(base, r) * std::sin(p1) + q(base + 1, r) * p1 + q(base + 2, r) * p2 + q(base + 3, r) * k;
        double inner_terms = 0.0;
        if (i == 1) {
            const double p0 = phi0();
            inner_terms = q(3, r) * std::sin(p0) + q(4, r) * p0;
        }
        return 2.0 * r / (area * r1 * r1) * (inner_terms + outer_terms);
    }

    const auto& p = *sparse_2d_;
    switch (i) {
        case 0: {
            const double p0 = phi0();
            return 2.0 * r / (area * r1) * (kPi * r1 + p(1, r) * std::sin(p0) + p(2, r) * p0);
        }
        case 1: return 2.0 * r / (r2 * r2 - r1 * r1);
        default: {
            const double p1 = phi1();
            const double p2 = phi2();
            return 2.0 * r / (area * r1 * r1) *
                   (p(3, r) * std::sin(p1) + p(4, r) * p1 + p(5, r) * p2 + p(6, r) * k);
        }
    }
}

double PiecewisePdf::spatial_branch(std::size_t i, double r) const {
    const auto& k = *poly_3d_;
    switch (i) {
        case 0: return horner(k.a, r);
        case 1:
            if (k.b) {
                return horner(*k.b, r);
            }
            return 3.0 * r * r / (std::pow(pair_.r2(), 3) - std::pow(pair_.r1(), 3));
        default: return horner(k.c, r);
    }
}

double eval_pdf(const PiecewisePdf& pdf, double r) { return pdf(r); }

double eval_cdf(const PiecewisePdf& pdf, double r) {
    if (std::isnan(r)) {
        throw DomainError("eval_cdf: r is NaN");
    }
    const auto& bp = pdf.breakpoints();
    const double upper = std::min(r, pdf.support());
    double total = 0.0;
    for (std::size_t i = 0; i < PiecewisePdf::kBranches; ++i) {
        const double lo = bp[i];
        const double hi = std::min(bp[i + 1], upper);
        if (hi <= lo) {
            break;
        }
        total += adaptive_quadrature([&](double x) { return pdf.branch_value(i, x); }, lo, hi, 1e-10 / 3.0);
    }
    return total;
}

std::vector<double> eval_cdf_sorted(const PiecewisePdf& pdf, std::span<const double> ascending) {
    const auto& bp = pdf.breakpoints();
    std::vector<double> out;
    out.reserve(ascending.size());
    double prev = 0.0;
    double acc = 0.0;
    for (const double x : ascending) {
        if (std::isnan(x) || x < prev) {
            throw DomainError("eval_cdf_sorted: points must be ascending and non-negative");
        }
        const double target = std::min(x, pdf.support());
        // Integrate [prev, target], split at any breakpoints in between.
        double lo = prev;
        while (lo < target) {
            const std::size_t i = pdf.branch_index(lo);
            const double hi = std::min(target, bp[i + 1]);
            if (hi > lo) {
                acc += adaptive_quadrature([&](double t) { return pdf.branch_value(i, t); }, lo, hi, 1e-13);
            }
            lo = hi;
            if (i + 1 == PiecewisePdf::kBranches) {
                break;
            }
        }
        prev = std::max(prev, target);
        out.push_back(acc);
    }
    return out;
}

double moments(const PiecewisePdf& pdf, int n) {
    if (n < 0) {
        throw DomainError("moments: order must be non-negative");
    }
    const auto& bp = pdf.breakpoints();
    QuadratureOptions opts;
    opts.abs_tol = 1e-15;
    opts.rel_tol = 1e-10;
    double total = 0.0;
    for (std::size_t i = 0; i < PiecewisePdf::kBranches; ++i) {
        if (bp[i + 1] <= bp[i]) {
            continue;
        }
        total += integrate([&](double x) { return std::pow(x, n) * pdf.branch_value(i, x); }, bp[i], bp[i + 1], opts)
                     .value;
    }
    return total;
}

double corollary_pdf(CorollaryKind kind, double radius, double r) {
    if (!(radius > 0.0)) {
        throw DomainError("corollary_pdf: radius must be positive");
    }
    const bool boundary = kind != CorollaryKind::FullDisk2D && kind != CorollaryKind::FullSphere3D;
    const double upper = boundary ? 2.0 * radius : radius;
    if (std::isnan(r) || r < 0.0 || r > upper) {
        return 0.0;
    }
    const double R = radius;
    switch (kind) {
        case CorollaryKind::Disk2DS1Boundary: return 2.0 * r / (kPi * R * R) * std::acos(r / (2.0 * R));
        case CorollaryKind::Disk2DS2Boundary:
            return 4.0 * r * r * (std::sqrt(std::max(0.0, 4.0 * R * R - r * r)) - r * std::acos(r / (2.0 * R))) /
                   (kPi * std::pow(R, 4));
        case CorollaryKind::Sphere3DS1Boundary: return 3.0 * r * r * (2.0 * R - r) / (4.0 * std::pow(R, 4));
        case CorollaryKind::Sphere3DS2Boundary: {
            const double d = r - R;
            return 35.0 * r * r * r * (2.0 * R - r) * (2.0 * R - r) * (25.0 * R * R - 13.0 * d * d) /
                   (864.0 * std::pow(R, 8));
        }
        case CorollaryKind::FullDisk2D: return 2.0 * r / (R * R);
        case CorollaryKind::FullSphere3D: return 3.0 * r * r / (R * R * R);
    }
    throw InternalError("corollary_pdf: unknown kind");
}

}  // namespace ringdist
