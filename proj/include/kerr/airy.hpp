#pragma once

#include <string>
#include <vector>

#include "kerr/states.hpp"

namespace kerr {

/**
 * Wigner function (quadrature measure) of the cubic gate exp(-i chi X^3/3)
 * applied to a thermal state with nbar photons.
 */
double cubic_thermal_wigner(double x, double p, double chi, double nbar);

enum class AiryFrame { open, closed_limit };

/**
 * Parameters of the Airy approximation at (r, phi). q is purely imaginary,
 * s real. closed_limit evaluates the gamma -> 0 expressions.
 */
struct AiryParams {
    cplx p, q, s;
    AiryFrame frame = AiryFrame::open;
};

AiryParams airy_params(double r, double phi, double kt, const SystemParams& params, AiryFrame frame = AiryFrame::open);

/** Airy-approximated Wigner function (alpha measure) in polar coordinates. */
double open_airy_wigner(double r, double phi, double kt, const SystemParams& params);

/** exp(-(1 + 2 nbar)^3 / (12 chi^2)). */
double damping_factor(double nbar, double chi_eff);

/** 2^{5/3} chi^{2/3} / (1 + 2 nbar). */
double undamped_negativity_bound(double chi_eff, double nbar);

/** The undamped negativity by quadrature over the negative lobes of Ai. */
double undamped_negativity(double chi_eff, double nbar);

/** Negativity of cubic_thermal_wigner from the damping factor and undamped part. */
double cubic_thermal_negativity(double chi, double nbar);

struct CircuitModel {
    double c_g = 0.5;
    double c_a = 0.5;
    double k = 1.0;
    double p_exp = 1.0;

    void validate() const;
    /** gamma/kappa = k alpha0^p_exp. */
    double loss_ratio(double alpha0) const;
};

/** chi_eff = (3 c_a / sqrt2) exp(-c_a gamma / (2 kappa alpha0)) e^{3r}, r taken at kappa t_g. */
double effective_nonlinearity(const CircuitModel& model, const SystemParams& params);

struct CircuitRow {
    double alpha0 = 0.0;
    double gamma_over_kappa = 0.0;
    double nbar = 0.0;
    double squeezing_r = 0.0;
    double chi_eff = 0.0;
    double damping = 0.0;
    double bound = 0.0;
    std::string classification;
};

std::vector<CircuitRow> circuit_negativity_profile(const CircuitModel& model, const std::vector<double>& alpha0s);

}  // namespace kerr
