#include <cmath>
#include <numbers>

#include "kerr/errors.hpp"
#include "kerr/specfun.hpp"

namespace kerr::specfun {

namespace {

// Ratio sum|t_k| / |sum t_k| above which the power series is abandoned.
constexpr double kMaxCancellation = 1e3;

struct SeriesResult {
    cplx value;
    double cancellation;
};

SeriesResult series_scaled(int l, cplx z, int max_terms) {
    if (z == cplx(0.0, 0.0)) return {l == 0 ? cplx(1.0) : cplx(0.0), 1.0};
    const cplx h = 0.5 * z;
    const cplx h2 = h * h;
    cplx term = 1.0, sum = 1.0;
    double abs_sum = 1.0;
    for (int k = 1; k < max_terms; ++k) {
        term *= h2 / (static_cast<double>(k) * static_cast<double>(k + l));
        sum += term;
        abs_sum += std::abs(term);
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    const cplx logpref = static_cast<double>(l) * std::log(h) - std::lgamma(l + 1.0) - std::abs(z.real());
    return {std::exp(logpref) * sum, abs_sum / std::max(std::abs(sum), 1e-300)};
}

}  // namespace

cplx bessel_i_scaled_series(int l, cplx z, int max_terms) {
    return series_scaled(std::abs(l), z, max_terms).value;
}

cplx bessel_i_scaled_asymptotic(int l, cplx z, bool* converged) {
    l = std::abs(l);
    double sign = 1.0;
    if (z.real() < 0.0) {
        z = -z;
        if (l % 2) sign = -1.0;
    }
    const double nu2 = 4.0 * l * l;
    cplx s1 = 1.0, s2 = 1.0;
    cplx zk = 1.0;
    double a = 1.0;
    double last = 1e300;
    bool ok = false;
    for (int k = 1; k < 200; ++k) {
        a *= (nu2 - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (8.0 * k);
        zk *= z;
        const cplx term = a / zk;
        const double mag = std::abs(term);
        if (mag > last) break;
        s1 += (k % 2 ? -term : term);
        s2 += term;
        last = mag;
        if (mag < 1e-16 * std::min(std::abs(s1), std::abs(s2)) || a == 0.0) {
            ok = true;
            break;
        }
    }
    if (converged) *converged = ok;
    const cplx root = std::sqrt(2.0 * std::numbers::pi * z);
    const double re = z.real();
    cplx out = std::exp(cplx(0.0, z.imag())) * s1 / root;
    if (re < 40.0) {
        const double parity = (l % 2) ? -1.0 : 1.0;
        const cplx branch = (z.imag() >= 0.0) ? cplx(0.0, 1.0) : cplx(0.0, -1.0);
        out += branch * parity * std::exp(-2.0 * re) * std::exp(cplx(0.0, -z.imag())) * s2 / root;
    }
    return sign * out;
}

cplx bessel_i_scaled_quadrature(int l, cplx z) {
    l = std::abs(l);
    // Periodic trapezoid for (1/pi) int_0^pi e^{z cos t} cos(l t) dt; the
    // aliasing error is bounded by I_{M-l}, negligible for this M.
    const int m = 2 * static_cast<int>(std::ceil(l + std::abs(z) + 40.0));
    const double shift = std::abs(z.real());
    cplx sum = 0.0;
    for (int j = 0; j < m; ++j) {
        const double t = 2.0 * std::numbers::pi * j / m;
        sum += std::exp(z * std::cos(t) - shift) * std::cos(static_cast<double>(l) * t);
    }
    return sum / static_cast<double>(m);
}

cplx bessel_i_scaled(int l, cplx z, const EvalPolicy& pol) {
    pol.validate();
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw DomainError("bessel_i: non-finite argument");
    }
    l = std::abs(l);
    const double az = std::abs(z);
    if (az > pol.asymptotic_switch && static_cast<double>(l) * l < 0.5 * az) {
        bool ok = false;
        const cplx v = bessel_i_scaled_asymptotic(l, z, &ok);
        if (ok) return v;
    }
    if (az <= pol.asymptotic_switch || static_cast<double>(l) * l >= 0.5 * az) {
        const SeriesResult s = series_scaled(l, z, pol.max_terms);
        if (s.cancellation < kMaxCancellation) return s.value;
    }
    return bessel_i_scaled_quadrature(l, z);
}

cplx bessel_i(int l, cplx z, const EvalPolicy& pol) {
    const cplx s = bessel_i_scaled(l, z, pol);
    const double re = std::abs(z.real());
    if (re > 700.0) throw RangeError("bessel_i: overflow, use bessel_i_scaled");
    const cplx v = s * std::exp(re);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw RangeError("bessel_i: overflow");
    return v;
}

}  // namespace kerr::specfun
