#pragma once

#include <complex>

#include "kerr/kernel.hpp"
#include "kerr/states.hpp"

namespace kerr {

/** Mode kernel entering the closed-form symmetric moments. */
using MomentKernelParams = ModeKernel;

/** |<alpha^n>| of the classical (Liouville) flow of the initial Gaussian. */
double classical_moment(int n, double kt, const SystemParams& params);

/** |<a^n>|(t) of the open quantum evolution. */
double quantum_moment_abs(int n, double kt, const SystemParams& params);

/** Fraction of the first distinguishable kitten recurrence that survives the loss. */
double surviving_fraction(const SystemParams& params);

/**
 * Symmetrically ordered <{a^dag^p a^q}> from the polar series, normalised so
 * that (0,0) is 1. For p < q the conjugate of (q,p) is returned.
 */
cplx symmetric_moment(int p, int q, double kt, const SystemParams& params, Variant variant = Variant::quantum);

/** <X^n> with X = (a + a^dag)/sqrt2, n <= 8. */
double quadrature_expectation(int n, double kt, const SystemParams& params, Variant variant = Variant::quantum);

}  // namespace kerr
