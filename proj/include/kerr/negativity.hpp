#pragma once

#include <functional>

#include "kerr/states.hpp"

namespace kerr {

struct NegativityReport {
    double value = 0.0;
    double total_mass = 0.0;
    double abs_mass = 0.0;
    /** Set when halving the resolution moves the value by more than the tolerance. */
    bool resolution_flag = false;
    /** Set when total_mass is farther than 1e-3 from 1. */
    bool non_normalized = false;
};

/**
 * Negativity int|W| - int W of a grid in the quadrature measure, by the
 * composite trapezoid rule. The resolution check compares against the grid
 * subsampled by two.
 */
NegativityReport negativity_grid(const WignerGrid& w);

using PolarField = std::function<double(double r, double phi)>;

/**
 * Negativity of an analytic Wigner function in the alpha measure over the
 * annulus sector [r_min, r_max] x [phi_min, phi_max], midpoint rule on
 * nr x nphi cells. The resolution check repeats the sum on half as many cells.
 */
NegativityReport negativity_polar(const PolarField& w, double r_min, double r_max, double phi_min, double phi_max, int nr,
                                  int nphi);

/** Largest odd N below floor(sqrt2 pi alpha0^{1/2 - eps}); 0 if there is none. */
int strong_dist_limit(double alpha0, double epsilon);

/** Minimum distance 2 alpha0 sin(pi/2N) sin(pi/N) between kitten components and whiskers. */
double d_min(int N, double alpha0);

struct KittenBounds {
    double lower = 0.0;
    double upper = 0.0;
    /** False when N exceeds strong_dist_limit(alpha0, epsilon); the bounds are then unreliable. */
    bool strongly_distinguishable = true;
};

KittenBounds kitten_negativity_bounds(int N, double alpha0, double epsilon = 0.1);

}  // namespace kerr
