#include "kerr/specfun.hpp"

#include <cmath>

#include "kerr/errors.hpp"

namespace kerr::specfun {

void EvalPolicy::validate() const {
    if (!(rel_tol > 0.0) || max_terms < 1) {
        throw DomainError("EvalPolicy requires rel_tol > 0 and max_terms >= 1");
    }
}

EvalPolicy bessel_policy() { return EvalPolicy{1e-15, 2000, 30.0}; }

EvalPolicy airy_policy() { return EvalPolicy{1e-15, 400, 8.0}; }

double laguerre_assoc(int n, int k, double x) {
    if (n < 0) throw DomainError("laguerre_assoc: n must be nonnegative");
    if (k < -n) throw DomainError("laguerre_assoc: k must be >= -n");
    if (n == 0) return 1.0;
    double lm1 = 1.0;
    double l = 1.0 + k - x;
    for (int j = 1; j < n; ++j) {
        const double next = ((2.0 * j + k + 1.0 - x) * l - (j + k) * lm1) / (j + 1.0);
        lm1 = l;
        l = next;
    }
    if (!std::isfinite(l)) throw RangeError("laguerre_assoc: overflow");
    return l;
}

double gamma_fn(double x) {
    if (x <= 0.0 && x == std::floor(x)) throw PoleError("gamma_fn: pole at nonpositive integer");
    const double g = std::tgamma(x);
    if (!std::isfinite(g)) throw RangeError("gamma_fn: overflow");
    return g;
}

double log_gamma(double x) {
    if (x <= 0.0 && x == std::floor(x)) throw PoleError("log_gamma: pole at nonpositive integer");
    return std::lgamma(x);
}

double erfc(double x) { return std::erfc(x); }

cplx sinhc(cplx u) {
    if (std::abs(u) < 1e-4) {
        const cplx u2 = u * u;
        return 1.0 + u2 / 6.0 * (1.0 + u2 / 20.0 * (1.0 + u2 / 42.0));
    }
    return std::sinh(u) / u;
}

cplx one_minus_exp_over(cplx w, double t) {
    const cplx x = w * t;
    if (std::abs(x) < 1e-4) {
        // series of (1 - e^{-x})/x
        return t * (1.0 - x / 2.0 + x * x / 6.0 - x * x * x / 24.0);
    }
    return (1.0 - std::exp(-x)) / w;
}

}  // namespace kerr::specfun
