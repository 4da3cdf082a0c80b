#pragma once

#include <Eigen/Dense>
#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

namespace kerr {

using cplx = std::complex<double>;

/**
 * Physical parameters of the lossy Kerr oscillator. Public interfaces take
 * times as kappa*t and use gamma/kappa, so only the ratio matters.
 */
struct SystemParams {
    double alpha0 = 2.0;
    double kappa = 1.0;
    double gamma = 0.0;
    double phi0 = 0.0;

    double g() const { return gamma / kappa; }
    cplx initial_amplitude() const;
    void validate() const;
};

/** Uniform cell-centred sampling of a rectangle in quadrature space. */
struct GridSpec {
    int nx = 0;
    int np = 0;
    double x_min = 0, x_max = 0, p_min = 0, p_max = 0;

    double dx() const { return (x_max - x_min) / nx; }
    double dp() const { return (p_max - p_min) / np; }
    double x(int j) const { return x_min + (j + 0.5) * dx(); }
    double p(int k) const { return p_min + (k + 0.5) * dp(); }
    std::size_t size() const { return static_cast<std::size_t>(nx) * np; }
    void validate() const;

    /** Square grid of half-width `half` centred at (xc, pc) with spacing close to `step`. */
    static GridSpec centered(double xc, double pc, double half, double step);
    static GridSpec box(double x_min, double x_max, double p_min, double p_max, double step_x, double step_p);
};

/**
 * Wigner function samples in the quadrature measure (x = sqrt2 Re alpha,
 * p = sqrt2 Im alpha), normalised so the integral over dx dp is 1. The value
 * at (x_j, p_k) is stored at index k*nx + j.
 */
struct WignerGrid {
    GridSpec spec;
    std::vector<double> values;

    WignerGrid() = default;
    explicit WignerGrid(const GridSpec& s) : spec(s), values(s.size(), 0.0) {}

    double& at(int j, int k) { return values[static_cast<std::size_t>(k) * spec.nx + j]; }
    double at(int j, int k) const { return values[static_cast<std::size_t>(k) * spec.nx + j]; }

    /** Composite trapezoidal integral over dx dp. */
    double integral() const;
    double max_abs() const;
    /** Largest |W| on the outermost ring of samples relative to max|W|. */
    double edge_fraction() const;
};

/** CSV with header `x,p,w`, rows ordered with x fastest. */
void write_csv(const WignerGrid& w, std::ostream& os);
void write_csv(const WignerGrid& w, const std::string& path);
WignerGrid read_csv(std::istream& is);
WignerGrid read_csv(const std::string& path);

/** Little-endian dump: int64 nx, int64 np, x_min, x_max, p_min, p_max, values. */
void write_binary(const WignerGrid& w, std::ostream& os);
void write_binary(const WignerGrid& w, const std::string& path);
WignerGrid read_binary(std::istream& is);
WignerGrid read_binary(const std::string& path);

struct FockVector {
    std::vector<cplx> coeffs;
    int n_cut() const { return static_cast<int>(coeffs.size()); }
    double norm2() const;
};

struct FockDensity {
    Eigen::MatrixXcd rho;
    int n_cut() const { return static_cast<int>(rho.rows()); }
    cplx trace() const { return rho.trace(); }
    /** Throws ConsistencyError if Hermiticity, trace or diagonal bounds fail. */
    void check(double tail_tol) const;
};

struct KittenSpec {
    int N = 1;
    int M = 1;
    double alpha0 = 2.0;
};

struct CoherentComponent {
    cplx weight;
    cplx amplitude;
};

/** Default Fock cutoff ceil(alpha0^2 + 8 alpha0 + 20). */
int default_n_cut(double alpha0);

/** Coherent-state Wigner function sampled on a grid. */
WignerGrid coherent_wigner(const SystemParams& params, const GridSpec& grid);

/** Largest distinguishable kitten order, floor(2 pi alpha0 / 3). */
int n_max(double alpha0);

std::vector<CoherentComponent> kitten_coefficients(const KittenSpec& spec);

/** Norm <psi|psi> of a coherent superposition from its Gram matrix. */
double superposition_norm(const std::vector<CoherentComponent>& comps);

/** Wigner value (alpha measure, peak 2/pi for a coherent state) of a coherent superposition. */
double superposition_wigner(const std::vector<CoherentComponent>& comps, cplx alpha);

WignerGrid superposition_wigner_grid(const std::vector<CoherentComponent>& comps, const GridSpec& grid);

/** Weyl symbol of |n><m| in the alpha measure. */
cplx weyl_symbol_nm(int n, int m, cplx alpha);

FockVector closed_evolution_coeffs(const SystemParams& params, double kt, int n_cut);

FockDensity pure_density(const FockVector& v);

FockDensity open_density_matrix(const SystemParams& params, double kt, int n_cut);

/** W(alpha) = sum rho_nm W_{m,n}(alpha), alpha measure. */
double density_wigner_point(const FockDensity& rho, cplx alpha);

WignerGrid density_to_wigner(const FockDensity& rho, const GridSpec& grid);

enum class Variant { quantum, twa };

/**
 * Polar Bessel-series Wigner function (alpha measure) of the evolved
 * coherent state. m_max <= 0 selects the default ceil(4 alpha0) with
 * last-term monitoring.
 */
double exact_open_wigner_polar(double r, double phi, double kt, const SystemParams& params, int m_max = 0,
                               Variant variant = Variant::quantum);

/** The same Wigner function from the Fock-to-Bessel resummed series. */
double bessel_exact_wigner_polar(double r, double phi, double kt, const SystemParams& params, int l_max = 0);

}  // namespace kerr
