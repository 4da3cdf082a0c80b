#include <cmath>
#include <numbers>

#include "kerr/errors.hpp"
#include "kerr/specfun.hpp"

namespace kerr::specfun {

namespace {

constexpr double kAi0 = 0.355028053887817239260;   // Ai(0)
constexpr double kAip0 = 0.258819403792806798405;  // -Ai'(0)

// Below this the Maclaurin series is used for positive arguments; above it
// the series cancels and the Macdonald-function integral takes over.
constexpr double kPositiveSeriesLimit = 2.0;

// u_k coefficients of the Airy asymptotic expansions.
double u_coeff(int k) {
    double u = 1.0;
    for (int j = 1; j <= k; ++j) {
        u *= (6.0 * j - 5.0) * (6.0 * j - 3.0) * (6.0 * j - 1.0) / ((2.0 * j - 1.0) * 216.0 * j);
    }
    return u;
}

// Ai(x) e^{zeta} for x > 0 via Ai = sqrt(x/3) K_{1/3}(zeta) / pi and the
// integral K_nu(zeta) = int_0^inf exp(-zeta cosh t) cosh(nu t) dt.
double airy_scaled_integral(double x) {
    const double zeta = 2.0 / 3.0 * x * std::sqrt(x);
    const double h = 0.05;
    double sum = 0.5;  // t = 0 term, e^0 * cosh(0) / 2
    for (int j = 1;; ++j) {
        const double t = j * h;
        const double e = std::exp(-zeta * (std::cosh(t) - 1.0));
        const double term = e * std::cosh(t / 3.0);
        sum += term;
        if (term < 1e-18 * sum) break;
    }
    return std::sqrt(x / 3.0) / std::numbers::pi * h * sum;
}

}  // namespace

double airy_ai_series(double x, int max_terms) {
    const double x3 = x * x * x;
    double f = 1.0, g = x;
    double a = 1.0, b = x;
    for (int k = 1; k < max_terms; ++k) {
        a *= x3 / ((3.0 * k - 1.0) * (3.0 * k));
        b *= x3 / ((3.0 * k) * (3.0 * k + 1.0));
        f += a;
        g += b;
        if (std::abs(a) < 1e-18 * std::abs(f) && std::abs(b) < 1e-18 * (std::abs(g) + 1e-300)) break;
    }
    return kAi0 * f - kAip0 * g;
}

static double airy_asymptotic_core(double x) {
    const double ax = std::abs(x);
    if (ax == 0.0) throw DomainError("airy_ai_asymptotic: x must be nonzero");
    const double zeta = 2.0 / 3.0 * ax * std::sqrt(ax);
    const double pref = 1.0 / (std::sqrt(std::numbers::pi) * std::pow(ax, 0.25));
    if (x > 0.0) {
        double sum = 0.0, zk = 1.0, last = 1e300;
        for (int k = 0; k < 80; ++k) {
            const double term = u_coeff(k) / zk;
            if (std::abs(term) > last) break;
            sum += (k % 2 ? -term : term);
            last = std::abs(term);
            if (last < 1e-17 * std::abs(sum)) break;
            zk *= zeta;
        }
        return 0.5 * pref * sum;
    }
    // Ai(-z) ~ pref [cos(zeta - pi/4) S_even + sin(zeta - pi/4) S_odd]
    double se = 0.0, so = 0.0, last = 1e300;
    double zk = 1.0;
    for (int k = 0; k < 120; ++k) {
        const double term = u_coeff(k) / zk;
        if (std::abs(term) > last) break;
        last = std::abs(term);
        const int sign = ((k / 2) % 2) ? -1 : 1;
        if (k % 2 == 0) {
            se += sign * term;
        } else {
            so += sign * term;
        }
        if (last < 1e-17) break;
        zk *= zeta;
    }
    const double ph = zeta - std::numbers::pi / 4.0;
    return pref * (std::cos(ph) * se + std::sin(ph) * so);
}

double airy_ai_asymptotic(double x) {
    if (x > 0.0) return airy_asymptotic_core(x) * std::exp(-2.0 / 3.0 * x * std::sqrt(x));
    return airy_asymptotic_core(x);
}

double airy_ai(double x, const EvalPolicy& pol) {
    pol.validate();
    if (!std::isfinite(x)) throw DomainError("airy_ai: non-finite argument");
    if (x >= pol.asymptotic_switch) return airy_ai_asymptotic(x);
    if (x <= -pol.asymptotic_switch) return airy_ai_asymptotic(x);
    if (x > kPositiveSeriesLimit) {
        const double zeta = 2.0 / 3.0 * x * std::sqrt(x);
        return airy_scaled_integral(x) * std::exp(-zeta);
    }
    return airy_ai_series(x, pol.max_terms);
}

double airy_ai_scaled(double x, const EvalPolicy& pol) {
    if (x <= 0.0) return airy_ai(x, pol);
    const double zeta = 2.0 / 3.0 * x * std::sqrt(x);
    if (x >= pol.asymptotic_switch) return airy_asymptotic_core(x);
    if (x > kPositiveSeriesLimit) return airy_scaled_integral(x);
    return airy_ai_series(x, pol.max_terms) * std::exp(zeta);
}

}  // namespace kerr::specfun
