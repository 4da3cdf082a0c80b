#pragma once

#include <complex>
#include <vector>

namespace kerr::specfun {

using cplx = std::complex<double>;

/** Controls for series/asymptotic evaluation. */
struct EvalPolicy {
    double rel_tol = 1e-15;
    int max_terms = 1000;
    double asymptotic_switch = 30.0;

    void validate() const;
};

EvalPolicy bessel_policy();
EvalPolicy airy_policy();

/** L_n^k(x) by the three-term recurrence. Requires n >= 0 and k >= -n. */
double laguerre_assoc(int n, int k, double x);

/** Airy function Ai(x). */
double airy_ai(double x, const EvalPolicy& pol = airy_policy());

/**
 * Ai(x) * exp(2/3 x^{3/2}) for x > 0 and Ai(x) for x <= 0. Lets callers
 * combine the decay of Ai with large exponential prefactors.
 */
double airy_ai_scaled(double x, const EvalPolicy& pol = airy_policy());

/** Ai by Maclaurin series only (used as an oracle and in crossover checks). */
double airy_ai_series(double x, int max_terms = 400);

/** Ai by its large-|x| asymptotic expansion only. */
double airy_ai_asymptotic(double x);

/** Modified Bessel I_l(z) for integer order and complex argument. */
cplx bessel_i(int l, cplx z, const EvalPolicy& pol = bessel_policy());

/** exp(-|Re z|) * I_l(z). */
cplx bessel_i_scaled(int l, cplx z, const EvalPolicy& pol = bessel_policy());

/** Individual branches of bessel_i_scaled, exposed for crossover tests. */
cplx bessel_i_scaled_series(int l, cplx z, int max_terms = 2000);
cplx bessel_i_scaled_asymptotic(int l, cplx z, bool* converged = nullptr);
cplx bessel_i_scaled_quadrature(int l, cplx z);

/** Regularized confluent hypergeometric M(a,b,z)/Gamma(b). */
double kummer_m_reg(double a, double b, double z, const EvalPolicy& pol = EvalPolicy{});
cplx kummer_m_reg(double a, double b, cplx z, const EvalPolicy& pol = EvalPolicy{});

double gamma_fn(double x);
double log_gamma(double x);
double erfc(double x);

/** sinh(u)/u with the removable singularity at 0 handled. */
cplx sinhc(cplx u);

/** (1 - exp(-w t)) / w with the w -> 0 limit t. */
cplx one_minus_exp_over(cplx w, double t);

}  // namespace kerr::specfun
