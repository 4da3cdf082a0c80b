#include <doctest.h>

#include <cmath>
#include <numbers>

#include "kerr/errors.hpp"
#include "kerr/gaussian.hpp"
#include "langevin_oracle.hpp"

using namespace kerr;

TEST_CASE("position variance stays at the vacuum value") {
    SystemParams p;
    p.alpha0 = 5.0;
    p.gamma = 0.3;
    for (double t : {0.0, 0.001, 0.02, 0.5, 3.0}) CHECK(covariance(t, p).c_xx == 0.5);
}

TEST_CASE("initial state is the vacuum-width coherent state") {
    SystemParams p;
    p.alpha0 = 3.0;
    p.phi0 = 0.5;
    const CovarianceState s = covariance(0.0, p);
    CHECK(s.c_pp == 0.5);
    CHECK(s.c_xp == 0.0);
    CHECK(thermal_photons(s) == 0.0);
    CHECK(squeezing(s).r == doctest::Approx(0.0));
    CHECK(s.mean_x == doctest::Approx(3.0 * std::numbers::sqrt2 * std::cos(0.5)));
}

TEST_CASE("closed evolution stays pure while squeezing grows") {
    SystemParams p;
    p.alpha0 = 4.0;
    double prev = 0.0;
    for (double t : {0.001, 0.005, 0.02}) {
        const CovarianceState s = covariance(t, p);
        CHECK(std::abs(s.excess()) < 1e-14);
        const double r = squeezing(s).r;
        CHECK(r > prev);
        prev = r;
    }
}

TEST_CASE("thermal photon number follows the small-time law") {
    SystemParams p;
    p.alpha0 = 6.0;
    p.gamma = 0.05;
    // gamma t <= 0.01 and kappa t alpha0^{3/2} <= 0.3
    for (double t : {0.002, 0.01, 0.02}) {
        const double law = p.gamma / 3.0 * t * t * t * std::pow(p.alpha0, 4);
        CHECK(thermal_photons(covariance(t, p)) == doctest::Approx(law).epsilon(0.05));
    }
}

TEST_CASE("uncertainty bound holds") {
    SystemParams p;
    p.alpha0 = 10.0;
    for (double g : {0.0, 0.1, 2.0, 40.0}) {
        p.gamma = g;
        for (double t : {1e-5, 1e-3, 0.1, 1.0}) CHECK(covariance(t, p).det() >= 0.25 - 1e-12);
    }
}

TEST_CASE("covariances match linearised Langevin trajectories") {
    SystemParams p;
    p.alpha0 = 3.0;
    p.gamma = 0.8;
    const double t = 0.15;
    const CovarianceState s = covariance(t, p);
    const auto mc = oracle::langevin_covariance(p.alpha0, p.gamma, t, 20000, 200);
    CHECK(std::abs(mc.c_xx - s.c_xx) < 3.0 * mc.se_xx);
    CHECK(std::abs(mc.c_pp - s.c_pp) < 3.0 * mc.se_pp);
    CHECK(std::abs(mc.c_xp - s.c_xp) < 3.0 * mc.se_xp);
}

TEST_CASE("Gaussian Wigner function has unit mass") {
    SystemParams p;
    p.alpha0 = 2.0;
    p.gamma = 0.4;
    const CovarianceState s = covariance(0.05, p);
    double sum = 0.0;
    const double h = 0.02;
    for (double x = -8.0; x < 8.0; x += h) {
        for (double q = -8.0; q < 8.0; q += h) sum += gaussian_wigner(s, x, q);
    }
    CHECK(sum * h * h == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("regime times") {
    SystemParams p;
    p.alpha0 = 4.0;
    const RegimeTimes rt = regime_times(p);
    CHECK(rt.t_gaussian == doctest::Approx(1.0 / 8.0));
    CHECK(rt.t_kitten == doctest::Approx(2.0 * std::numbers::pi / 8.0));
    p.alpha0 = 1.0;
    CHECK_THROWS_AS(regime_times(p), DomainError);
}
