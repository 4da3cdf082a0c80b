#include <cmath>
#include <numbers>

#include "kerr/errors.hpp"
#include "kerr/states.hpp"

namespace kerr {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

void check_normalized(const std::vector<CoherentComponent>& comps) {
    if (comps.empty()) throw DomainError("superposition needs at least one component");
    const double n = superposition_norm(comps);
    if (std::abs(n - 1.0) > 1e-6) throw DomainError("superposition is not normalised (Gram norm " + std::to_string(n) + ")");
}

// Log of the amplitude-dependent factor of pair_constant.
cplx pair_exponent(const CoherentComponent& a, const CoherentComponent& b) {
    return -a.amplitude * std::conj(b.amplitude) - 0.5 * std::norm(a.amplitude) - 0.5 * std::norm(b.amplitude);
}

// c_k c_l^* <alpha_l|alpha_k> without the Gaussian envelope in alpha.
cplx pair_constant(const CoherentComponent& a, const CoherentComponent& b) {
    return a.weight * std::conj(b.weight) * std::exp(pair_exponent(a, b));
}

}  // namespace

WignerGrid coherent_wigner(const SystemParams& params, const GridSpec& grid) {
    params.validate();
    grid.validate();
    const cplx a0 = params.initial_amplitude();
    const double xc = kSqrt2 * a0.real(), pc = kSqrt2 * a0.imag();
    const double width = 5.0 / kSqrt2;
    if (grid.x_min > xc - width || grid.x_max < xc + width || grid.p_min > pc - width || grid.p_max < pc + width) {
        throw BoundaryMassError("coherent_wigner: grid must span 5 vacuum widths around the mean");
    }
    WignerGrid w(grid);
    for (int k = 0; k < grid.np; ++k) {
        const double dp = grid.p(k) - pc;
        for (int j = 0; j < grid.nx; ++j) {
            const double dx = grid.x(j) - xc;
            w.at(j, k) = std::exp(-dx * dx - dp * dp) / std::numbers::pi;
        }
    }
    if (w.edge_fraction() > 1e-8) throw BoundaryMassError("coherent_wigner: edge samples exceed 1e-8 of peak");
    return w;
}

int n_max(double alpha0) {
    if (!(alpha0 >= 0.0) || !std::isfinite(alpha0)) throw DomainError("n_max: alpha0 must be finite and >= 0");
    return static_cast<int>(std::floor(2.0 * std::numbers::pi * alpha0 / 3.0));
}

std::vector<CoherentComponent> kitten_coefficients(const KittenSpec& spec) {
    if (spec.N < 1) throw DomainError("kitten needs N >= 1");
    const int n = spec.N;
    const double ratio = static_cast<double>(spec.M) / n;
    const double norm = 1.0 / std::sqrt(static_cast<double>(n));
    std::vector<CoherentComponent> out;
    out.reserve(n);
    for (int k = 0; k < n; ++k) {
        double phase, angle;
        if (n % 2 == 0) {
            phase = ratio * std::numbers::pi * k * k;
            angle = (2.0 * k + 1.0) * std::numbers::pi / n;
        } else {
            phase = ratio * std::numbers::pi * k * (k - 1.0);
            angle = 2.0 * std::numbers::pi * k / n;
        }
        out.push_back({norm * std::polar(1.0, phase), std::polar(spec.alpha0, angle)});
    }
    return out;
}

double superposition_norm(const std::vector<CoherentComponent>& comps) {
    cplx s = 0.0;
    for (const auto& a : comps) {
        for (const auto& b : comps) {
            s += std::conj(b.weight) * a.weight *
                 std::exp(-0.5 * std::norm(a.amplitude) - 0.5 * std::norm(b.amplitude) + std::conj(b.amplitude) * a.amplitude);
        }
    }
    return s.real();
}

double superposition_wigner(const std::vector<CoherentComponent>& comps, cplx alpha) {
    check_normalized(comps);
    cplx s = 0.0;
    for (const auto& a : comps) {
        for (const auto& b : comps) {
            s += pair_constant(a, b) *
                 std::exp(-2.0 * std::norm(alpha) + 2.0 * a.amplitude * std::conj(alpha) + 2.0 * alpha * std::conj(b.amplitude));
        }
    }
    s *= 2.0 / std::numbers::pi;
    if (std::abs(s.imag()) > 1e-8) throw ConsistencyError("superposition_wigner: imaginary residue");
    return s.real();
}

WignerGrid superposition_wigner_grid(const std::vector<CoherentComponent>& comps, const GridSpec& grid) {
    check_normalized(comps);
    grid.validate();
    WignerGrid w(grid);
    const int n = static_cast<int>(comps.size());
    std::vector<cplx> fx(grid.nx), fp(grid.np);
    // In quadratures each pair term factorises into an x factor and a p
    // factor; the Gaussian maxima are moved into the pair constant so no
    // intermediate overflows.
    for (int a = 0; a < n; ++a) {
        for (int b = a; b < n; ++b) {
            const cplx sx = kSqrt2 * (comps[a].amplitude + std::conj(comps[b].amplitude));
            const cplx sp = cplx(0.0, kSqrt2) * (std::conj(comps[b].amplitude) - comps[a].amplitude);
            const double mx = 0.25 * sx.real() * sx.real();
            const double mp = 0.25 * sp.real() * sp.real();
            for (int j = 0; j < grid.nx; ++j) {
                const double x = grid.x(j);
                fx[j] = std::exp(-x * x + sx * x - mx);
            }
            for (int k = 0; k < grid.np; ++k) {
                const double p = grid.p(k);
                fp[k] = std::exp(-p * p + sp * p - mp);
            }
            cplx c = comps[a].weight * std::conj(comps[b].weight) * std::exp(pair_exponent(comps[a], comps[b]) + mx + mp) /
                     std::numbers::pi;
            if (b != a) c *= 2.0;  // (a,b) and (b,a) are complex conjugates
            for (int k = 0; k < grid.np; ++k) {
                const cplx ck = c * fp[k];
                double* row = &w.values[static_cast<std::size_t>(k) * grid.nx];
                for (int j = 0; j < grid.nx; ++j) row[j] += (ck * fx[j]).real();
            }
        }
    }
    return w;
}

}  // namespace kerr
