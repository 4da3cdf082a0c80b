#include <algorithm>
#include <cmath>
#include <numbers>

#include "kerr/errors.hpp"
#include "kerr/specfun.hpp"
#include "kerr/states.hpp"

namespace kerr {

namespace {

void check_cutoff(const SystemParams& params, int n_cut) {
    const double need = params.alpha0 * params.alpha0 + 8.0 * params.alpha0;
    if (n_cut < 1 || n_cut < need) {
        throw CutoffError("n_cut " + std::to_string(n_cut) + " below alpha0^2 + 8 alpha0 = " + std::to_string(need));
    }
}

// Poisson amplitudes e^{-|a|^2/2} a^n / sqrt(n!) for a = alpha0 e^{i phi0}.
std::vector<cplx> coherent_amplitudes(const SystemParams& params, int n_cut) {
    std::vector<cplx> c(n_cut);
    const double a = params.alpha0;
    for (int n = 0; n < n_cut; ++n) {
        double logmag;
        if (a == 0.0) {
            logmag = (n == 0) ? 0.0 : -INFINITY;
        } else {
            logmag = -0.5 * a * a + n * std::log(a) - 0.5 * std::lgamma(n + 1.0);
        }
        c[n] = std::polar(std::exp(logmag), n * params.phi0);
    }
    return c;
}

}  // namespace

int default_n_cut(double alpha0) { return static_cast<int>(std::ceil(alpha0 * alpha0 + 8.0 * alpha0 + 20.0)); }

double FockVector::norm2() const {
    double s = 0.0;
    for (const auto& c : coeffs) s += std::norm(c);
    return s;
}

void FockDensity::check(double tail_tol) const {
    const int n = n_cut();
    for (int i = 0; i < n; ++i) {
        if (rho(i, i).real() < -1e-12) throw ConsistencyError("density: negative diagonal entry");
        for (int j = 0; j < i; ++j) {
            if (std::abs(rho(i, j) - std::conj(rho(j, i))) > 1e-12) throw ConsistencyError("density: not Hermitian");
        }
    }
    const double tr = trace().real();
    if (tr < 1.0 - tail_tol || tr > 1.0 + 1e-12) throw ConsistencyError("density: trace outside [1 - tail_tol, 1]");
}

cplx weyl_symbol_nm(int n, int m, cplx alpha) {
    if (n < 0 || m < 0) throw DomainError("weyl_symbol_nm: indices must be nonnegative");
    if (m < n) return std::conj(weyl_symbol_nm(m, n, alpha));
    const int l = m - n;
    const double r = std::abs(alpha);
    const double r2 = r * r;
    const double lag = specfun::laguerre_assoc(n, l, 4.0 * r2);
    if (l > 0 && r == 0.0) return 0.0;
    double logmag = 0.5 * (std::lgamma(n + 1.0) - std::lgamma(m + 1.0)) - 2.0 * r2;
    if (l > 0) logmag += l * std::log(2.0 * r);
    const double mag = std::exp(logmag) * lag * (n % 2 ? -1.0 : 1.0);
    if (!std::isfinite(mag)) throw RangeError("weyl_symbol_nm: overflow");
    const double phase = -l * std::arg(alpha);
    return 2.0 / std::numbers::pi * std::polar(1.0, phase) * mag;
}

FockVector closed_evolution_coeffs(const SystemParams& params, double kt, int n_cut) {
    params.validate();
    check_cutoff(params, n_cut);
    FockVector v;
    v.coeffs = coherent_amplitudes(params, n_cut);
    for (int n = 0; n < n_cut; ++n) {
        const double ph = -0.5 * n * (n - 1.0) * std::fmod(kt, 4.0 * std::numbers::pi);
        v.coeffs[n] *= std::polar(1.0, ph);
    }
    return v;
}

FockDensity pure_density(const FockVector& v) {
    const int n = v.n_cut();
    FockDensity d;
    d.rho.resize(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) d.rho(i, j) = v.coeffs[i] * std::conj(v.coeffs[j]);
    }
    return d;
}

FockDensity open_density_matrix(const SystemParams& params, double kt, int n_cut) {
    params.validate();
    check_cutoff(params, n_cut);
    if (kt < 0.0) throw DomainError("open_density_matrix: kappa t must be >= 0");
    const double g = params.g();
    const double a2 = params.alpha0 * params.alpha0;
    const std::vector<cplx> c = coherent_amplitudes(params, n_cut);
    const double tmod = std::fmod(kt, 4.0 * std::numbers::pi);
    FockDensity d;
    d.rho.resize(n_cut, n_cut);
    for (int n = 0; n < n_cut; ++n) {
        for (int m = 0; m < n_cut; ++m) {
            const int l = n - m;
            const cplx w(g, static_cast<double>(l));
            const double kerr_phase = -0.5 * tmod * (n * (n - 1.0) - m * (m - 1.0));
            const cplx expo = cplx(-0.5 * g * kt * (n + m), kerr_phase) + g * a2 * specfun::one_minus_exp_over(w, kt);
            d.rho(n, m) = c[n] * std::conj(c[m]) * std::exp(expo);
        }
    }
    return d;
}

double density_wigner_point(const FockDensity& d, cplx alpha) {
    const int nc = d.n_cut();
    const double r = std::abs(alpha);
    const double x = 4.0 * r * r;
    const double phi = std::arg(alpha);
    // S_n^l = (-1)^n sqrt(n!/(n+l)!) (2r)^l L_n^l(4r^2) e^{-2r^2}, generated by
    // the Laguerre recurrence rescaled so that no factor overflows.
    double total = 0.0;
    for (int l = 0; l < nc; ++l) {
        double logs0 = -2.0 * r * r - 0.5 * std::lgamma(l + 1.0);
        if (l > 0) {
            if (r == 0.0) break;
            logs0 += l * std::log(2.0 * r);
        }
        if (logs0 < -740.0) continue;
        double s_prev = 0.0;
        double s = std::exp(logs0);
        cplx acc = d.rho(l, 0) * s;
        for (int n = 0; n + l + 1 < nc; ++n) {
            const double next = -((2.0 * n + l + 1.0 - x) * s + std::sqrt(n * (n + static_cast<double>(l))) * s_prev) /
                                std::sqrt((n + 1.0) * (n + l + 1.0));
            s_prev = s;
            s = next;
            acc += d.rho(n + 1 + l, n + 1) * s;
        }
        if (l == 0) {
            total += acc.real();
        } else {
            total += 2.0 * (std::polar(1.0, -l * phi) * acc).real();
        }
    }
    if (!std::isfinite(total)) throw RangeError("density_wigner_point: overflow");
    return 2.0 / std::numbers::pi * total;
}

WignerGrid density_to_wigner(const FockDensity& d, const GridSpec& grid) {
    grid.validate();
    // The synthesis pairs rho_nm with rho_mn, so its imaginary residue is
    // exactly the anti-Hermitian part of rho.
    double residue = 0.0, scale = 0.0;
    for (int i = 0; i < d.n_cut(); ++i) {
        scale = std::max(scale, std::abs(d.rho(i, i)));
        for (int j = 0; j < i; ++j) residue = std::max(residue, std::abs(d.rho(i, j) - std::conj(d.rho(j, i))));
    }
    if (residue > 1e-8 * std::max(scale, 1e-300)) throw ConsistencyError("density_to_wigner: imaginary residue");
    WignerGrid w(grid);
    const double s2 = std::numbers::sqrt2;
    for (int k = 0; k < grid.np; ++k) {
        for (int j = 0; j < grid.nx; ++j) {
            // quadrature measure: W_xp = W_alpha / 2
            w.at(j, k) = 0.5 * density_wigner_point(d, cplx(grid.x(j) / s2, grid.p(k) / s2));
        }
    }
    return w;
}

}  // namespace kerr
