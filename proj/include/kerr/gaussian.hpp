#pragma once

#include <limits>

#include "kerr/states.hpp"

namespace kerr {

/**
 * Short-time Gaussian state in the mean frame: X along the mean amplitude,
 * P along the tangent. Vacuum variance is 1/2. mean_x, mean_p are the mean
 * in lab quadratures.
 */
struct CovarianceState {
    double c_xx = 0.5, c_pp = 0.5, c_xp = 0.0;
    double mean_x = 0.0, mean_p = 0.0;
    double t = 0.0;
    /** D - 1/4 evaluated without cancellation when known; NaN otherwise. */
    double det_excess = std::numeric_limits<double>::quiet_NaN();

    double det() const { return c_xx * c_pp - c_xp * c_xp; }
    double excess() const;
    /** Variances along the major (+) and minor (-) axes. */
    double var_major() const;
    double var_minor() const;
};

CovarianceState covariance(double kt, const SystemParams& params);

/** n_bar = sqrt(D) - 1/2. */
double thermal_photons(const CovarianceState& s);

struct Squeezing {
    double r = 0.0;
    /** Angle of the major axis from the X axis of the mean frame. */
    double theta = 0.0;
};

Squeezing squeezing(const CovarianceState& s);

struct RegimeTimes {
    double t_gaussian = 0.0;
    double t_kitten = 0.0;
};

/** kappa t_g = c_g alpha0^{-3/2} and kappa t_k = 2 pi / N_max. */
RegimeTimes regime_times(const SystemParams& params, double c_g = 1.0);

/** Gaussian Wigner value in the quadrature measure at lab quadratures (x, p). */
double gaussian_wigner(const CovarianceState& s, double x, double p);

}  // namespace kerr
