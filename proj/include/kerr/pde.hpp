#pragma once

#include <Eigen/Sparse>
#include <array>
#include <functional>
#include <string>
#include <vector>

#include "kerr/states.hpp"

namespace kerr {

enum class OperatorLabel { full_cartesian, twa, lindblad_only, ngmf };

std::string to_string(OperatorLabel label);

/** A coefficient field; an empty function means identically zero. */
using Field = std::function<double(double x, double p)>;

/**
 * dW/dt = f_x W_x + f_p W_p + f_xx W_xx + f_xp W_xp + f_pp W_pp
 *       + f_xxx W_xxx + f_xxp W_xxp + f_xpp W_xpp + f_ppp W_ppp + f_0 W.
 */
struct PdeOperator {
    OperatorLabel label = OperatorLabel::full_cartesian;
    Field f_x, f_p, f_xx, f_xp, f_pp, f_xxx, f_xxp, f_xpp, f_ppp, f_0;
    /** Free-form provenance of the coefficients, copied into run metadata. */
    std::string note;

    bool has_third_order() const { return f_xxx || f_xxp || f_xpp || f_ppp; }
};

/** Five-point central row for derivative order 1, 2 or 3 at offsets -2..2. */
std::array<double, 5> stencil(int order, double spacing);

/** Sparse Jacobian G on a grid with row index mu = k*nx + j. */
struct BandedSystem {
    GridSpec grid;
    Eigen::SparseMatrix<double, Eigen::RowMajor> G;

    int n() const { return static_cast<int>(G.rows()); }
    int max_row_nonzeros() const;
};

/** Dirichlet-zero closure: stencil points outside the grid contribute nothing. */
BandedSystem assemble_jacobian(const PdeOperator& op, const GridSpec& grid);

/** Full Moyal plus Lindblad operator in lab quadratures, or its twa / lindblad-only reductions. */
PdeOperator moyal_operator(const SystemParams& params, OperatorLabel label = OperatorLabel::full_cartesian);

/**
 * Mean-frame operator of the non-Gaussian mean-field regime with X0 = sqrt2 alpha0.
 * With corrected_drift the loss drift is centred on -X0 (decay towards vacuum);
 * otherwise it is centred on +X0.
 */
PdeOperator ngmf_operator(const SystemParams& params, bool corrected_drift = true);

enum class Preconditioner { lu, ilut };

struct SolverConfig {
    /** Macro step in kappa t; each step is a trapezoidal half step followed by BDF2. */
    double dt = 1e-3;
    int nt = 100;
    double linear_tol = 1e-10;
    int max_iterations = 200;
    /** Abort when the share of |W| mass on the two outermost rings exceeds this. */
    double mass_guard = 1e-6;
    /** Store every save_every-th frame (0 keeps only the final frame). */
    int save_every = 0;
    Preconditioner preconditioner = Preconditioner::lu;

    void validate() const;
};

struct StepDiagnostics {
    double t = 0.0;
    double mass = 0.0;
    double boundary_fraction = 0.0;
    int iterations = 0;
    double residual = 0.0;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<WignerGrid> frames;
    std::vector<StepDiagnostics> diagnostics;
};

/** Called after each macro step with the step index (1-based), time and state. */
using StepObserver = std::function<void(int step, double t, const WignerGrid& w)>;

Trajectory trbdf2_evolve(const WignerGrid& w0, const BandedSystem& sys, const SolverConfig& cfg,
                         const StepObserver& observer = nullptr);

/** Share of sum |W| carried by the two outermost rings of the grid. */
double boundary_fraction(const WignerGrid& w);

/**
 * Largest jump between neighbouring samples relative to max|W|. Values near
 * or above 1 mean fringes are not resolved by the grid.
 */
double resolution_ratio(const WignerGrid& w);

/** Sidecar text with operator label, note, config and residual history. */
std::string run_metadata(const PdeOperator& op, const GridSpec& grid, const SolverConfig& cfg, const Trajectory& traj);

}  // namespace kerr
