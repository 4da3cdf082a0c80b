#include <cmath>
#include <numbers>

#include "kerr/errors.hpp"
#include "kerr/moments.hpp"
#include "kerr/specfun.hpp"

namespace kerr {

namespace {

void check_time(double kt, const char* who) {
    if (!(kt >= 0.0) || !std::isfinite(kt)) throw DomainError(std::string(who) + ": kappa t must be finite and >= 0");
}

// Unnormalised closed form for p >= q, in the series frame.
cplx series_moment(int p, int q, double kt, const SystemParams& params, Variant variant) {
    const int m = p - q;
    const ModeKernel k = mode_kernel(m, kt, params, variant);
    const cplx delta = k.delta();
    const cplx z = delta * delta / (4.0 * k.chi);
    const cplx hyp = specfun::kummer_m_reg(-static_cast<double>(q), m + 1.0, z);
    if (hyp == 0.0) return 0.0;
    if (m > 0 && delta == 0.0) return 0.0;
    // i^{-m} (delta/2)^m is real-scaled: (-i)^m (i b / 2)^m = (b/2)^m
    cplx log_v = std::log(4.0) - 2.0 * params.alpha0 * params.alpha0 + k.log_pref + std::lgamma(p + 1.0) -
                 std::log(2.0) - (p + 1.0) * std::log(k.chi) - z;
    if (m > 0) log_v += static_cast<double>(m) * std::log(0.5 * k.b);
    const cplx v = std::exp(log_v) * hyp;
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw RangeError("symmetric_moment: overflow");
    return v;
}

}  // namespace

double classical_moment(int n, double kt, const SystemParams& params) {
    params.validate();
    check_time(kt, "classical_moment");
    if (n < 1) throw DomainError("classical_moment: n must be >= 1");
    const double s = n * kt;
    const double d = 1.0 + 0.25 * s * s;
    return std::pow(params.alpha0, n) / d * std::exp(-0.5 * s * s * params.alpha0 * params.alpha0 / d);
}

double quantum_moment_abs(int n, double kt, const SystemParams& params) {
    params.validate();
    check_time(kt, "quantum_moment_abs");
    if (n < 1) throw DomainError("quantum_moment_abs: n must be >= 1");
    const double g = params.g();
    const double a2 = params.alpha0 * params.alpha0;
    const double nt = n * kt;
    const double osc = std::exp(-g * kt) * (std::cos(nt) + g / n * std::sin(nt));
    const double expo = -n * n * a2 * (1.0 - osc) / (n * n + g * g);
    return std::pow(params.alpha0, n) * std::exp(-0.5 * n * g * kt + expo);
}

double surviving_fraction(const SystemParams& params) {
    params.validate();
    if (params.alpha0 < 2.0) throw DomainError("surviving_fraction: needs alpha0 >= 2");
    const double n = n_max(params.alpha0);
    const double g = params.g();
    const double a2 = params.alpha0 * params.alpha0;
    const double pi = std::numbers::pi;
    const double num = -n * n * a2 * (-std::expm1(-2.0 * pi * g / n)) - pi * (g * g * g + n * n * g);
    return std::exp(num / (g * g + n * n));
}

cplx symmetric_moment(int p, int q, double kt, const SystemParams& params, Variant variant) {
    params.validate();
    check_time(kt, "symmetric_moment");
    if (p < 0 || q < 0) throw DomainError("symmetric_moment: orders must be >= 0");
    if (p < q) return std::conj(symmetric_moment(q, p, kt, params, variant));
    const cplx norm = series_moment(0, 0, kt, params, variant);
    const cplx v = series_moment(p, q, kt, params, variant) / norm;
    // back to the physical frame: reflection, Kerr-frame phase and the initial phase
    const double ang = (q - p) * (0.5 * std::fmod(kt, 4.0 * std::numbers::pi) + params.phi0);
    return std::polar(1.0, ang) * std::conj(v);
}

double quadrature_expectation(int n, double kt, const SystemParams& params, Variant variant) {
    if (n < 1 || n > 8) throw DomainError("quadrature_expectation: n must be in [1, 8]");
    cplx s = 0.0;
    double binom = 1.0;
    for (int k = 0; k <= n; ++k) {
        s += binom * symmetric_moment(k, n - k, kt, params, variant);
        binom = binom * (n - k) / (k + 1.0);
    }
    return s.real() * std::pow(2.0, -0.5 * n);
}

}  // namespace kerr
