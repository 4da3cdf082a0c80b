#include <cmath>
#include <numbers>

#include "kerr/airy.hpp"
#include "kerr/errors.hpp"
#include "kerr/specfun.hpp"

namespace kerr {

namespace {

// e^y minus its Taylor polynomial of degree n-1.
double exp_remainder(double y, int n) {
    if (std::abs(y) > 1.0) {
        double poly = 0.0, term = 1.0;
        for (int k = 0; k < n; ++k) {
            poly += term;
            term *= y / (k + 1.0);
        }
        return std::exp(y) - poly;
    }
    double term = 1.0;
    for (int k = 1; k <= n; ++k) term *= y / k;
    double s = 0.0;
    for (int k = n; k < n + 40; ++k) {
        s += term;
        if (std::abs(term) < 1e-18 * std::abs(s)) break;
        term *= y / (k + 1.0);
    }
    return s;
}

// Ai(z) e^{e} without overflow for large positive z.
double airy_times_exp(double z, double e) {
    if (z > 0.0) {
        const double zeta = 2.0 / 3.0 * z * std::sqrt(z);
        return specfun::airy_ai_scaled(z) * std::exp(e - zeta);
    }
    return specfun::airy_ai(z) * std::exp(e);
}

}  // namespace

double cubic_thermal_wigner(double x, double p, double chi, double nbar) {
    if (chi == 0.0) throw SingularParameterError("cubic_thermal_wigner: chi = 0, use the Gaussian limit");
    if (!(nbar >= 0.0)) throw DomainError("cubic_thermal_wigner: nbar must be >= 0");
    const double s = 1.0 + 2.0 * nbar;
    const double e = 4.0 * nbar * (1.0 + nbar) / s * x * x + (s * s * s + 6.0 * s * chi * p) / (6.0 * chi * chi);
    const double z = (1.0 + 4.0 * nbar * (1.0 + nbar) + 4.0 * chi * (p + chi * x * x)) / std::pow(2.0 * chi, 4.0 / 3.0);
    const double pref = std::pow(2.0, 2.0 / 3.0) / (std::sqrt(std::numbers::pi * s) * std::cbrt(std::abs(chi)));
    return pref * airy_times_exp(z, e);
}

AiryParams airy_params(double r, double phi, double kt, const SystemParams& params, AiryFrame frame) {
    params.validate();
    if (!(r > 0.0)) throw DomainError("airy_params: r must be > 0");
    if (!(kt >= 0.0)) throw DomainError("airy_params: kappa t must be >= 0");
    if (params.alpha0 > 0.0 && kt > 0.5 / params.alpha0 + 1e-12) {
        throw DomainError("airy_params: kappa t outside the window kappa t <= 0.5/alpha0");
    }
    const double r0 = params.alpha0;
    const double t = kt;
    const double g = frame == AiryFrame::open ? params.g() : 0.0;
    const double y = g * t;
    // Loss shape functions, each tending to 1 at y = 0:
    //   a = (6 - 6e^y + 6y + 3y^2 + 2y^3)/y^3, b = 2(1 - e^y + y + y^2)/y^2,
    //   c = -(1 - e^{-y} - 2y e^{-y})/y.
    double a = 1.0, b = 1.0, c = 1.0;
    if (y > 0.0) {
        a = 1.0 - 6.0 * exp_remainder(y, 4) / (y * y * y);
        b = 1.0 - 2.0 * exp_remainder(y, 3) / (y * y);
        c = (2.0 * y * std::exp(-y) + std::expm1(-y)) / y;
    }
    const double ey = std::exp(-y);
    const double praw = ey / (48.0 * r0) *
                        (-3.0 * t * std::exp(1.5 * y) / r + 4.0 * r * r0 * r0 * t * t * t * std::exp(0.5 * y) -
                         8.0 * r0 * r0 * r0 * t * t * t * a);
    const double qraw = ey / (8.0 * r0) *
                        (std::exp(1.5 * y) / r + 4.0 * r * r0 * r0 * t * t * std::exp(0.5 * y) - 4.0 * r0 * r0 * r0 * t * t * b);
    // The form is not 2 pi periodic: take the branch of phi nearest the rotated mean.
    const double centre = 0.75 * t - 2.0 * r0 * r0 * t * std::exp(-y) + r0 * r0 * t * c;
    const double rel = std::remainder(phi - params.phi0 - centre, 2.0 * std::numbers::pi) + centre;
    const double sraw = -rel + 0.75 * t - 2.0 * r * r0 * t * std::exp(-0.5 * y) + r0 * r0 * t * c;
    if (praw == 0.0) throw SingularParameterError("airy_params: p = 0");
    const double cr = std::cbrt(3.0 * praw);
    AiryParams out;
    out.frame = frame;
    out.p = praw;
    out.q = cplx(0.0, qraw / (cr * cr));
    out.s = sraw / cr;
    return out;
}

double open_airy_wigner(double r, double phi, double kt, const SystemParams& params) {
    const AiryParams ap = airy_params(r, phi, kt, params, AiryFrame::open);
    const double r0 = params.alpha0;
    const double y = params.g() * kt;
    const double dr = r - r0 * std::exp(-0.5 * y);
    if (std::abs(dr) > 3.0) throw DomainError("open_airy_wigner: r outside the Gaussian annulus |r - r0 e^{-gt/2}| <= 3");
    const cplx q = ap.q, s = ap.s;
    const cplx arg = s - q * q;
    const cplx phase = cplx(0.0, 1.0) * q * (2.0 * q * q / 3.0 - s);
    const double c = std::abs(std::cbrt(3.0 * ap.p.real()));
    const double z = arg.real();
    double log_scale = -2.0 * dr * dr + 0.25 * y;
    double ai;
    if (z > 0.0) {
        ai = specfun::airy_ai_scaled(z);
        log_scale -= 2.0 / 3.0 * z * std::sqrt(z);
    } else {
        ai = specfun::airy_ai(z);
    }
    const cplx w = std::sqrt(2.0 / (std::numbers::pi * r * r0)) * std::exp(cplx(log_scale, 0.0) + phase) * ai / c;
    const double resid = std::abs(w.imag()) + std::abs(arg.imag()) * std::abs(w);
    if (resid > 1e-6 * std::max(std::abs(w), 1e-300)) throw ConsistencyError("open_airy_wigner: imaginary residue");
    return w.real();
}

double damping_factor(double nbar, double chi_eff) {
    if (!(chi_eff > 0.0)) throw DomainError("damping_factor: chi_eff must be > 0");
    if (!(nbar >= 0.0)) throw DomainError("damping_factor: nbar must be >= 0");
    const double s = 1.0 + 2.0 * nbar;
    return std::exp(-s * s * s / (12.0 * chi_eff * chi_eff));
}

double undamped_negativity_bound(double chi_eff, double nbar) {
    if (!(chi_eff > 0.0)) throw DomainError("undamped_negativity_bound: chi_eff must be > 0");
    return std::pow(2.0, 5.0 / 3.0) * std::pow(chi_eff, 2.0 / 3.0) / (1.0 + 2.0 * nbar);
}

double undamped_negativity(double chi_eff, double nbar) {
    if (!(chi_eff > 0.0)) throw DomainError("undamped_negativity: chi_eff must be > 0");
    // With u = 2^{2/3} p'/chi^{1/3} the integral is 2 int_{-inf}^0 e^{lambda u} max(-Ai(u), 0) du.
    const double lambda = (1.0 + 2.0 * nbar) / std::pow(2.0 * chi_eff, 2.0 / 3.0);
    const double lo = -(40.0 / lambda + 10.0);
    const double h = 1e-3;
    const int n = static_cast<int>(std::ceil(-lo / h));
    double s = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double u = -i * h;
        const double wgt = (i == 0 || i == n) ? 0.5 : 1.0;
        s += wgt * std::exp(lambda * u) * std::max(-specfun::airy_ai(u), 0.0);
    }
    return 2.0 * s * h;
}

double cubic_thermal_negativity(double chi, double nbar) {
    const double c = std::abs(chi);
    return damping_factor(nbar, c) * undamped_negativity(c, nbar);
}

}  // namespace kerr
