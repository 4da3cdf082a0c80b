#pragma once

#include <complex>

#include "kerr/states.hpp"

namespace kerr {

/**
 * Per-mode kernel of the polar Bessel series. Mode m of the Wigner function
 * is exp(log_pref - chi r^2) e^{i m psi} I_m(b r) times (2/pi) e^{-2 alpha0^2},
 * where psi is the series angle. Written through w and u so that every
 * field stays finite at gamma = 0.
 */
struct ModeKernel {
    Variant variant = Variant::quantum;
    int m = 0;
    cplx log_pref;
    cplx chi;
    cplx b;
    /** delta_m = i b, the argument scale after rotating I_m into J_m. */
    cplx delta() const { return cplx(0.0, 1.0) * b; }

    /** The loss-normalised kappa_m, Q_m and f_m(t). NaN when gamma = 0. */
    cplx kappa_m, Q_m, f_m;
};

ModeKernel mode_kernel(int m, double kt, const SystemParams& params, Variant variant);

/** Series angle for the physical polar angle phi at time kt. */
double series_angle(double phi, double kt, const SystemParams& params);

}  // namespace kerr
