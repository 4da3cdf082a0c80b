#include <cmath>
#include <numbers>

#include "kerr/errors.hpp"
#include "kerr/gaussian.hpp"

namespace kerr {

namespace {

// e^{-y} - (1+y) e^{-2y}, divided by y^2; tends to 1/2.
double cpp_shape(double y) {
    if (y > 0.5) return (std::exp(-y) - (1.0 + y) * std::exp(-2.0 * y)) / (y * y);
    // e^{-y} * sum_{k>=2} (-1)^k (k-1) y^{k-2} / k!
    double s = 0.0, term = 0.5;
    for (int k = 2; k < 40; ++k) {
        s += term;
        term *= -y * k / ((k + 1.0) * (k - 1.0));
        if (std::abs(term) < 1e-18 * std::abs(s)) break;
    }
    return std::exp(-y) * s;
}

// (D - 1/4) / (alpha0^2 t)^2 = e^{-y} (2 f(y)/y^2 - e^{-y}) with f = 1 - (1+y) e^{-y}.
double excess_shape(double y) {
    if (y > 0.5) {
        const double f = -std::expm1(-y) - y * std::exp(-y);
        return std::exp(-y) * (2.0 * f / (y * y) - std::exp(-y));
    }
    // sum_{k>=3} (-1)^k (k-1)(2-k) y^{k-2} / k!
    double s = 0.0, fact = 6.0, yp = y;
    for (int k = 3; k < 40; ++k) {
        const double term = ((k % 2) ? -1.0 : 1.0) * (k - 1.0) * (2.0 - k) * yp / fact;
        s += term;
        if (std::abs(term) < 1e-18 * std::abs(s)) break;
        yp *= y;
        fact *= k + 1.0;
    }
    return std::exp(-y) * s;
}

}  // namespace

double CovarianceState::excess() const { return std::isnan(det_excess) ? det() - 0.25 : det_excess; }

double CovarianceState::var_major() const {
    const double h = 0.5 * (c_xx + c_pp);
    return h + std::sqrt(std::max(h * h - det(), 0.0));
}

double CovarianceState::var_minor() const { return det() / var_major(); }

CovarianceState covariance(double kt, const SystemParams& params) {
    params.validate();
    if (!(kt >= 0.0) || !std::isfinite(kt)) throw DomainError("covariance: kappa t must be finite and >= 0");
    const double g = params.g();
    const double y = g * kt;
    const double a = params.alpha0 * params.alpha0 * kt;
    CovarianceState s;
    s.t = kt;
    s.c_xx = 0.5;
    s.c_pp = 0.5 + 4.0 * a * a * cpp_shape(y);
    s.c_xp = -a * std::exp(-y);
    s.det_excess = a * a * excess_shape(y);
    // The mean rotates at |<a>|^2: the -1 of the Kerr frequency cancels
    // against the vacuum-fluctuation average of |a|^2 a.
    const double radius = std::numbers::sqrt2 * params.alpha0 * std::exp(-0.5 * y);
    const double phase = params.phi0 - params.alpha0 * params.alpha0 * (y > 1e-8 ? -std::expm1(-y) / g : kt * (1.0 - 0.5 * y));
    s.mean_x = radius * std::cos(phase);
    s.mean_p = radius * std::sin(phase);
    return s;
}

double thermal_photons(const CovarianceState& s) {
    const double e = s.excess();
    if (e < -1e-9) throw ConsistencyError("thermal_photons: covariance violates the uncertainty bound");
    if (e <= 0.0) return 0.0;
    return e / (std::sqrt(0.25 + e) + 0.5);
}

Squeezing squeezing(const CovarianceState& s) {
    const double nbar = thermal_photons(s);
    Squeezing q;
    q.r = 0.5 * std::log(s.var_major() / (nbar + 0.5));
    q.theta = 0.5 * std::atan2(2.0 * s.c_xp, s.c_xx - s.c_pp);
    return q;
}

RegimeTimes regime_times(const SystemParams& params, double c_g) {
    params.validate();
    if (params.alpha0 < 2.0) throw DomainError("regime_times: needs alpha0 >= 2");
    if (!(c_g > 0.0)) throw DomainError("regime_times: c_g must be > 0");
    return {c_g * std::pow(params.alpha0, -1.5), 2.0 * std::numbers::pi / n_max(params.alpha0)};
}

double gaussian_wigner(const CovarianceState& s, double x, double p) {
    const double ang = std::atan2(s.mean_p, s.mean_x);
    const double dx = x - s.mean_x, dp = p - s.mean_p;
    // into the mean frame
    const double u = std::cos(ang) * dx + std::sin(ang) * dp;
    const double v = -std::sin(ang) * dx + std::cos(ang) * dp;
    const double d = s.det();
    const double q = (s.c_pp * u * u - 2.0 * s.c_xp * u * v + s.c_xx * v * v) / d;
    return std::exp(-0.5 * q) / (2.0 * std::numbers::pi * std::sqrt(d));
}

}  // namespace kerr
