#include <cmath>
#include <numbers>

#include "kerr/errors.hpp"
#include "kerr/negativity.hpp"

namespace kerr {

namespace {

struct Sums {
    double total = 0.0;
    double abs = 0.0;
};

// Trapezoid sums over every `stride`-th sample in each direction.
Sums trapezoid(const WignerGrid& w, int stride) {
    const int nx = (w.spec.nx - 1) / stride + 1;
    const int np = (w.spec.np - 1) / stride + 1;
    Sums s;
    for (int k = 0; k < np; ++k) {
        const double wk = (k == 0 || k == np - 1) ? 0.5 : 1.0;
        double row = 0.0, row_abs = 0.0;
        for (int j = 0; j < nx; ++j) {
            const double wj = (j == 0 || j == nx - 1) ? 0.5 : 1.0;
            const double v = w.at(j * stride, k * stride);
            row += wj * v;
            row_abs += wj * std::abs(v);
        }
        s.total += wk * row;
        s.abs += wk * row_abs;
    }
    const double cell = stride * w.spec.dx() * stride * w.spec.dp();
    s.total *= cell;
    s.abs *= cell;
    return s;
}

bool under_resolved(double fine, double coarse) {
    // Trapezoid error falls by 4 on halving the step, so the fine error is about a third of the gap.
    return std::abs(fine - coarse) / 3.0 > 1e-3 * std::max(1.0, std::abs(fine));
}

NegativityReport make_report(const Sums& s) {
    NegativityReport r;
    r.total_mass = s.total;
    r.abs_mass = s.abs;
    r.value = s.abs - s.total;
    r.non_normalized = std::abs(s.total - 1.0) > 1e-3;
    return r;
}

Sums polar_sums(const PolarField& w, double r_min, double r_max, double phi_min, double phi_max, int nr, int nphi) {
    const double dr = (r_max - r_min) / nr;
    const double dphi = (phi_max - phi_min) / nphi;
    Sums s;
    for (int i = 0; i < nr; ++i) {
        const double r = r_min + (i + 0.5) * dr;
        double ring = 0.0, ring_abs = 0.0;
        for (int j = 0; j < nphi; ++j) {
            const double v = w(r, phi_min + (j + 0.5) * dphi);
            if (!std::isfinite(v)) throw InputError("negativity_polar: non-finite sample");
            ring += v;
            ring_abs += std::abs(v);
        }
        s.total += r * ring;
        s.abs += r * ring_abs;
    }
    s.total *= dr * dphi;
    s.abs *= dr * dphi;
    return s;
}

}  // namespace

NegativityReport negativity_grid(const WignerGrid& w) {
    w.spec.validate();
    if (w.values.size() != w.spec.size()) throw InputError("negativity_grid: value count does not match grid");
    for (double v : w.values) {
        if (!std::isfinite(v)) throw InputError("negativity_grid: non-finite sample");
    }
    NegativityReport r = make_report(trapezoid(w, 1));
    if (w.spec.nx >= 5 && w.spec.np >= 5) {
        const Sums coarse = trapezoid(w, 2);
        r.resolution_flag = under_resolved(r.value, coarse.abs - coarse.total);
    } else {
        r.resolution_flag = true;
    }
    return r;
}

NegativityReport negativity_polar(const PolarField& w, double r_min, double r_max, double phi_min, double phi_max, int nr,
                                  int nphi) {
    if (!(r_min >= 0.0 && r_max > r_min)) throw DomainError("negativity_polar: need 0 <= r_min < r_max");
    if (!(phi_max > phi_min)) throw DomainError("negativity_polar: need phi_min < phi_max");
    if (nr < 2 || nphi < 2) throw DomainError("negativity_polar: need at least 2 cells per direction");
    NegativityReport r = make_report(polar_sums(w, r_min, r_max, phi_min, phi_max, nr, nphi));
    const Sums coarse = polar_sums(w, r_min, r_max, phi_min, phi_max, nr / 2, nphi / 2);
    r.resolution_flag = under_resolved(r.value, coarse.abs - coarse.total);
    return r;
}

int strong_dist_limit(double alpha0, double epsilon) {
    if (!(epsilon > 0.0 && epsilon <= 0.5)) throw DomainError("strong_dist_limit: epsilon must lie in (0, 1/2]");
    if (!(alpha0 > 0.0)) throw DomainError("strong_dist_limit: alpha0 must be > 0");
    const int bound = static_cast<int>(std::floor(std::numbers::sqrt2 * std::numbers::pi * std::pow(alpha0, 0.5 - epsilon)));
    int n = bound - 1;
    if (n % 2 == 0) --n;
    return n > 0 ? n : 0;
}

double d_min(int N, double alpha0) {
    if (N < 3 || N % 2 == 0) throw DomainError("d_min: N must be odd and >= 3");
    const double pi = std::numbers::pi;
    return 2.0 * alpha0 * std::sin(pi / (2.0 * N)) * std::sin(pi / N);
}

KittenBounds kitten_negativity_bounds(int N, double alpha0, double epsilon) {
    if (N < 3 || N % 2 == 0) throw DomainError("kitten_negativity_bounds: N must be odd and >= 3");
    const double pi = std::numbers::pi;
    const double a2 = alpha0 * alpha0;
    const double lead = 2.0 * (N - 1.0) / pi;
    const double s1 = std::sin(1.0 / N);
    const double whisker = 8.0 * (N - 1.0) / (3.0 * pi) * std::exp(-8.0 * a2 * s1 * s1);
    const double sa = std::sin(pi / (2.0 * N)), sb = std::sin(pi / N);
    const double overlap = 0.25 * (N + 1.0) * (N * N + N - 2.0) * std::exp(-2.0 * a2 * sa * sa * sb * sb);
    KittenBounds b;
    b.upper = lead + whisker;
    b.lower = lead - whisker - overlap;
    b.strongly_distinguishable = N <= strong_dist_limit(alpha0, epsilon);
    return b;
}

}  // namespace kerr
