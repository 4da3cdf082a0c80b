#include <cmath>
#include <limits>
#include <numbers>

#include "kerr/errors.hpp"
#include "kerr/kernel.hpp"
#include "kerr/specfun.hpp"
#include "kerr/states.hpp"

namespace kerr {

namespace {

constexpr double kSeriesTol = 1e-13;

int default_modes(double alpha0) { return static_cast<int>(std::ceil(4.0 * alpha0)); }

// Sums Re[t_0] + 2 Re[sum_{m>0} t_m]; the m < 0 terms are conjugates.
template <class Term>
double sum_symmetric(Term term, int m_max, double alpha0, const char* who) {
    double total = term(0).real();
    if (m_max > 0) {
        double last = 0.0;
        for (int m = 1; m <= m_max; ++m) {
            const cplx t = term(m);
            total += 2.0 * t.real();
            last = 2.0 * std::abs(t);
        }
        if (last > kSeriesTol) {
            throw TruncationError(std::string(who) + ": last term " + std::to_string(last) + " above tolerance at m_max " +
                                  std::to_string(m_max));
        }
        return total;
    }
    const int m_min = default_modes(alpha0);
    const int m_cap = m_min + 4000;
    int quiet = 0;
    for (int m = 1;; ++m) {
        const cplx t = term(m);
        total += 2.0 * t.real();
        if (m >= m_min && 2.0 * std::abs(t) < kSeriesTol) {
            if (++quiet == 3) break;
        } else {
            quiet = 0;
        }
        if (m > m_cap) throw TruncationError(std::string(who) + ": series did not converge");
    }
    return total;
}

// exp(log_mag) * I_m(z) with I_m evaluated in scaled form.
cplx scaled_bessel_term(int m, cplx z, cplx log_mag) {
    const cplx is = specfun::bessel_i_scaled(m, z);
    if (is == 0.0) return 0.0;
    return std::exp(log_mag + std::abs(z.real())) * is;
}

}  // namespace

ModeKernel mode_kernel(int m, double kt, const SystemParams& params, Variant variant) {
    const double g = params.g();
    const double a2 = params.alpha0 * params.alpha0;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    ModeKernel k;
    k.variant = variant;
    k.m = m;
    if (variant == Variant::quantum) {
        const cplx w(g, m);
        k.log_pref = a2 * (w + g) * specfun::one_minus_exp_over(w, kt);
        k.chi = 2.0;
        k.b = 4.0 * params.alpha0 * std::exp(-0.5 * w * kt);
        if (g > 0.0) {
            k.kappa_m = w / g;
            k.Q_m = cplx(0.5, m / (4.0 * g));
        }
    } else {
        const cplx w(g, 2.0 * m);
        const cplx u = 0.5 * kt * std::sqrt(g * w);
        const cplx e2 = std::exp(-2.0 * u);
        const cplx h = specfun::one_minus_exp_over(2.0 * u, 1.0);  // sinh(u) e^{-u} / u
        // D = e^u * dt with cosh u = e^u (1 + e2)/2 and sinh(u)/kappa_m = e^u (g t/2) h
        const cplx dt = 0.5 * (1.0 + e2) + 0.5 * g * kt * h;
        k.log_pref = cplx(0.5 * g * kt, 0.5 * m * kt) - u - std::log(dt) + 2.0 * a2 * g * kt * h / dt;
        k.chi = (0.5 * (1.0 + e2) + 0.5 * w * kt * h) / dt + 1.0;
        k.b = 4.0 * params.alpha0 * std::exp(-u) / dt;
        if (g > 0.0) {
            k.kappa_m = std::sqrt(w / g);
            k.Q_m = 0.5;
        }
    }
    if (g > 0.0) {
        const cplx u = 0.5 * g * kt * k.kappa_m;
        k.f_m = (4.0 * k.Q_m - 1.0) * std::sinh(u) + k.kappa_m * std::cosh(u);
    } else {
        k.kappa_m = k.Q_m = k.f_m = cplx(nan, nan);
    }
    return k;
}

double series_angle(double phi, double kt, const SystemParams& params) {
    return 0.5 * std::fmod(kt, 4.0 * std::numbers::pi) - (phi - params.phi0);
}

double exact_open_wigner_polar(double r, double phi, double kt, const SystemParams& params, int m_max, Variant variant) {
    params.validate();
    if (r < 0.0) throw DomainError("exact_open_wigner_polar: r must be >= 0");
    if (kt < 0.0) throw DomainError("exact_open_wigner_polar: kappa t must be >= 0");
    const double psi = series_angle(phi, kt, params);
    const double base = -2.0 * params.alpha0 * params.alpha0;
    auto term = [&](int m) -> cplx {
        const ModeKernel k = mode_kernel(m, kt, params, variant);
        return scaled_bessel_term(m, k.b * r, base + k.log_pref - k.chi * r * r + cplx(0.0, m * psi));
    };
    return 2.0 / std::numbers::pi * sum_symmetric(term, m_max, params.alpha0, "exact_open_wigner_polar");
}

double bessel_exact_wigner_polar(double r, double phi, double kt, const SystemParams& params, int l_max) {
    params.validate();
    if (r < 0.0) throw DomainError("bessel_exact_wigner_polar: r must be >= 0");
    if (kt < 0.0) throw DomainError("bessel_exact_wigner_polar: kappa t must be >= 0");
    const double g = params.g();
    const double r0 = params.alpha0;
    const double ang = phi - params.phi0 - 0.5 * std::fmod(kt, 4.0 * std::numbers::pi);
    const double base = -2.0 * (r - r0) * (r - r0) - 4.0 * r * r0;
    auto term = [&](int l) -> cplx {
        const cplx w(g, l);
        const cplx fr = specfun::one_minus_exp_over(w, kt);
        const cplx one_minus_e = w * fr;
        const cplx z = 4.0 * r * r0 * std::exp(-0.5 * w * kt);
        return scaled_bessel_term(l, z, base + r0 * r0 * one_minus_e + g * r0 * r0 * fr + cplx(0.0, -l * ang));
    };
    return 2.0 / std::numbers::pi * sum_symmetric(term, l_max, params.alpha0, "bessel_exact_wigner_polar");
}

}  // namespace kerr
