#pragma once

// Reference solution of the lossy Kerr master equation, built without the
// library's closed forms. The Kerr term is diagonal and photon loss only
// couples rho_{n,n+l} to rho_{n+1,n+l+1}, so each band l evolves under its own
// small generator, exponentiated exactly.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <unsupported/Eigen/MatrixFunctions>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;

inline Eigen::VectorXcd coherent(double alpha0, double phi0, int n_cut) {
    Eigen::VectorXcd c(n_cut);
    const cplx a = std::polar(alpha0, phi0);
    cplx term = std::exp(-0.5 * alpha0 * alpha0);
    for (int n = 0; n < n_cut; ++n) {
        c(n) = term;
        term *= a / std::sqrt(n + 1.0);
    }
    return c;
}

inline Eigen::MatrixXcd lindblad_density(double alpha0, double phi0, double g, double kt, int n_cut) {
    const Eigen::VectorXcd c = coherent(alpha0, phi0, n_cut);
    const Eigen::MatrixXcd rho0 = c * c.adjoint();
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(n_cut, n_cut);
    const cplx I(0.0, 1.0);
    for (int l = 0; l < n_cut; ++l) {
        const int m = n_cut - l;
        Eigen::MatrixXcd L = Eigen::MatrixXcd::Zero(m, m);
        for (int n = 0; n < m; ++n) {
            const double hn = 0.5 * n * (n - 1.0), hm = 0.5 * (n + l) * (n + l - 1.0);
            L(n, n) = -I * (hn - hm) - 0.5 * g * (2.0 * n + l);
            if (n + 1 < m) L(n, n + 1) = g * std::sqrt((n + 1.0) * (n + l + 1.0));
        }
        Eigen::VectorXcd v(m);
        for (int n = 0; n < m; ++n) v(n) = rho0(n, n + l);
        const Eigen::MatrixXcd E = (L * kt).exp();
        const Eigen::VectorXcd out = E * v;
        for (int n = 0; n < m; ++n) {
            rho(n, n + l) = out(n);
            rho(n + l, n) = std::conj(out(n));
        }
    }
    return rho;
}

inline Eigen::MatrixXcd annihilation(int n_cut) {
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n_cut, n_cut);
    for (int n = 1; n < n_cut; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

// <{a^dag^p a^q}>: the average over every distinct ordering of the factors.
inline cplx symmetrized_expectation(const Eigen::MatrixXcd& rho, int p, int q) {
    const int n = static_cast<int>(rho.rows());
    const Eigen::MatrixXcd a = annihilation(n);
    const Eigen::MatrixXcd ad = a.adjoint();
    std::vector<int> word(p + q, 0);
    for (int i = 0; i < q; ++i) word[p + i] = 1;
    cplx sum = 0.0;
    int count = 0;
    do {
        Eigen::MatrixXcd op = Eigen::MatrixXcd::Identity(n, n);
        for (int f : word) op = op * (f ? a : ad);
        sum += (rho * op).trace();
        ++count;
    } while (std::next_permutation(word.begin(), word.end()));
    return sum / static_cast<double>(count);
}

}  // namespace oracle
