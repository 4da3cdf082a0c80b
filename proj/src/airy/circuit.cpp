#include <cmath>
#include <numbers>

#include "kerr/airy.hpp"
#include "kerr/errors.hpp"
#include "kerr/gaussian.hpp"

namespace kerr {

void CircuitModel::validate() const {
    if (!(c_g > 0.0 && c_g <= 1.0)) throw DomainError("circuit: c_g must lie in (0, 1]");
    if (!(c_a > 0.0 && c_a <= 1.0)) throw DomainError("circuit: c_a must lie in (0, 1]");
    if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("circuit: k must be > 0");
    if (!std::isfinite(p_exp)) throw DomainError("circuit: p_exp must be finite");
}

double CircuitModel::loss_ratio(double alpha0) const { return k * std::pow(alpha0, p_exp); }

namespace {

struct Stage {
    double nbar;
    double r;
};

// Gaussian stage up to kappa t_g.
Stage gaussian_stage(const CircuitModel& model, const SystemParams& params) {
    const double ktg = model.c_g * std::pow(params.alpha0, -1.5);
    const CovarianceState s = covariance(ktg, params);
    return {thermal_photons(s), squeezing(s).r};
}

double chi_from_stage(const CircuitModel& model, const SystemParams& params, double r) {
    return 3.0 * model.c_a / std::numbers::sqrt2 * std::exp(-model.c_a * params.g() / (2.0 * params.alpha0) + 3.0 * r);
}

}  // namespace

double effective_nonlinearity(const CircuitModel& model, const SystemParams& params) {
    model.validate();
    params.validate();
    if (!(params.alpha0 > 0.0)) throw DomainError("effective_nonlinearity: alpha0 must be > 0");
    return chi_from_stage(model, params, gaussian_stage(model, params).r);
}

std::vector<CircuitRow> circuit_negativity_profile(const CircuitModel& model, const std::vector<double>& alpha0s) {
    model.validate();
    std::vector<CircuitRow> rows;
    rows.reserve(alpha0s.size());
    for (double a0 : alpha0s) {
        if (!(a0 > 0.0)) throw DomainError("circuit_negativity_profile: alpha0 must be > 0");
        SystemParams params;
        params.alpha0 = a0;
        params.gamma = model.loss_ratio(a0);
        const Stage st = gaussian_stage(model, params);
        CircuitRow row;
        row.alpha0 = a0;
        row.gamma_over_kappa = params.gamma;
        row.nbar = st.nbar;
        row.squeezing_r = st.r;
        row.chi_eff = chi_from_stage(model, params, st.r);
        row.damping = row.chi_eff > 0.0 ? damping_factor(st.nbar, row.chi_eff) : 0.0;
        row.bound = row.chi_eff > 0.0 ? undamped_negativity_bound(row.chi_eff, st.nbar) : 0.0;
        row.classification = model.p_exp <= 1.0 ? "robust" : "suppressed";
        rows.push_back(row);
    }
    return rows;
}

}  // namespace kerr
