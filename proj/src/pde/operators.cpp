#include <cmath>
#include <numbers>

#include "kerr/pde.hpp"

namespace kerr {

std::string to_string(OperatorLabel label) {
    switch (label) {
        case OperatorLabel::full_cartesian:
            return "full-cartesian";
        case OperatorLabel::twa:
            return "twa";
        case OperatorLabel::lindblad_only:
            return "lindblad-only";
        case OperatorLabel::ngmf:
            return "ngmf";
    }
    return "unknown";
}

namespace {

Field constant(double c) {
    if (c == 0.0) return nullptr;
    return [c](double, double) { return c; };
}

}  // namespace

PdeOperator moyal_operator(const SystemParams& params, OperatorLabel label) {
    params.validate();
    if (label == OperatorLabel::ngmf) return ngmf_operator(params);
    const double g = params.g();
    PdeOperator op;
    op.label = label;
    // Loss: (g/2)(d_x x + d_p p) W + (g/4)(d_xx + d_pp) W in non-conservative form.
    op.f_xx = constant(0.25 * g);
    op.f_pp = constant(0.25 * g);
    op.f_0 = constant(g);
    if (label == OperatorLabel::lindblad_only) {
        op.f_x = [g](double x, double) { return 0.5 * g * x; };
        op.f_p = [g](double, double p) { return 0.5 * g * p; };
        op.note = "loss drift and diffusion only";
        return op;
    }
    // Kerr flow d alpha/dt = -i (|alpha|^2 - 1) alpha with |alpha|^2 = (x^2 + p^2)/2.
    op.f_x = [g](double x, double p) { return -(0.5 * (x * x + p * p) - 1.0) * p + 0.5 * g * x; };
    op.f_p = [g](double x, double p) { return (0.5 * (x * x + p * p) - 1.0) * x + 0.5 * g * p; };
    if (label == OperatorLabel::twa) {
        op.note = "Kerr Liouville flow with loss, third-order terms dropped";
        return op;
    }
    op.f_xxx = [](double, double p) { return p / 8.0; };
    op.f_xpp = [](double, double p) { return p / 8.0; };
    op.f_xxp = [](double x, double) { return -x / 8.0; };
    op.f_ppp = [](double x, double) { return -x / 8.0; };
    op.note = "Kerr Moyal bracket with loss";
    return op;
}

PdeOperator ngmf_operator(const SystemParams& params, bool corrected_drift) {
    params.validate();
    const double g = params.g();
    const double x0 = std::numbers::sqrt2 * params.alpha0;
    const double centre = corrected_drift ? -x0 : x0;
    PdeOperator op;
    op.label = OperatorLabel::ngmf;
    op.f_p = [g, x0](double x, double p) { return x0 * x0 * x - x0 + 0.5 * x0 * (3.0 * x * x + p * p) + 0.5 * g * p; };
    op.f_x = [g, x0, centre](double x, double p) { return -x0 * x * p + 0.5 * g * (x - centre); };
    op.f_xx = constant(0.25 * g);
    op.f_pp = constant(0.25 * g);
    op.f_0 = constant(g);
    op.f_xxp = constant(-x0 / 8.0);
    op.f_ppp = constant(-x0 / 8.0);
    op.note = corrected_drift ? "loss drift centred at X = -X0 (decay of the mean amplitude towards vacuum)"
                              : "loss drift centred at X = +X0 (uncorrected)";
    return op;
}

}  // namespace kerr
