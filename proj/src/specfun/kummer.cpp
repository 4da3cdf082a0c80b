#include <cmath>

#include "kerr/errors.hpp"
#include "kerr/specfun.hpp"

namespace kerr::specfun {

namespace {

bool is_nonpositive_integer(double v) { return v <= 0.0 && v == std::floor(v); }

// sum_k (a)_k z^k / ((b)_k k!) for b not a nonpositive integer, multiplied by
// 1/Gamma(b). Terminates automatically when a is a nonpositive integer.
template <class T>
T kummer_series(double a, double b, T z, const EvalPolicy& pol) {
    T term = 1.0, sum = 1.0;
    const bool terminating = is_nonpositive_integer(a);
    const int nmax = terminating ? static_cast<int>(-a) : pol.max_terms;
    bool converged = terminating;
    for (int k = 0; k < nmax; ++k) {
        term *= (a + k) / ((b + k) * (k + 1.0)) * z;
        sum += term;
        if (!terminating && std::abs(term) <= pol.rel_tol * std::abs(sum) && k > std::abs(z)) {
            converged = true;
            break;
        }
    }
    if (!converged) throw RangeError("kummer_m_reg: series did not converge");
    // 1/Gamma(b) with sign handled for negative non-integer b.
    const double inv_gamma = 1.0 / std::tgamma(b);
    T out = sum * inv_gamma;
    if (!std::isfinite(std::abs(out))) throw RangeError("kummer_m_reg: overflow");
    return out;
}

template <class T>
T kummer_impl(double a, double b, T z, const EvalPolicy& pol) {
    pol.validate();
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(std::abs(z))) {
        throw DomainError("kummer_m_reg: non-finite input");
    }
    if (is_nonpositive_integer(b)) {
        // M(a,-n,z)/Gamma(-n) = (a)_{n+1} z^{n+1}/(n+1)! * M(a+n+1, n+2, z)/Gamma(n+2)
        const int n = static_cast<int>(-b);
        T pref = 1.0;
        for (int k = 0; k <= n; ++k) pref *= (a + k) * z / (k + 1.0);
        if (std::abs(pref) == 0.0) return T(0.0);
        return pref * kummer_impl(a + n + 1.0, static_cast<double>(n + 2), z, pol);
    }
    if (is_nonpositive_integer(a)) return kummer_series(a, b, z, pol);
    if (std::real(z) < 0.0) {
        // Kummer transformation M(a,b,z) = e^z M(b-a,b,-z) avoids cancellation.
        return std::exp(z) * kummer_series(b - a, b, T(-z), pol);
    }
    return kummer_series(a, b, z, pol);
}

}  // namespace

double kummer_m_reg(double a, double b, double z, const EvalPolicy& pol) {
    return kummer_impl<double>(a, b, z, pol);
}

cplx kummer_m_reg(double a, double b, cplx z, const EvalPolicy& pol) {
    return kummer_impl<cplx>(a, b, z, pol);
}

}  // namespace kerr::specfun
