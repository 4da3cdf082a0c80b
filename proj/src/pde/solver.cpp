#include <Eigen/IterativeLinearSolvers>
#include <Eigen/UmfPackSupport>
#include <cmath>
#include <memory>
#include <sstream>

#include "kerr/errors.hpp"
#include "kerr/pde.hpp"

namespace kerr {

namespace {

using ColMatrix = Eigen::SparseMatrix<double, Eigen::ColMajor>;

// Preconditioner adaptor for BiCGSTAB: either an exact sparse LU of the
// step matrix or an incomplete LU.
class StepPreconditioner {
public:
    StepPreconditioner() = default;

    void setup(const ColMatrix& a, Preconditioner kind) {
        kind_ = kind;
        if (kind == Preconditioner::lu) {
            lu_ = std::make_shared<Eigen::UmfPackLU<ColMatrix>>();
            lu_->compute(a);
            if (lu_->info() != Eigen::Success) throw SolverError("sparse LU factorization failed");
        } else {
            ilut_ = std::make_shared<Eigen::IncompleteLUT<double>>();
            ilut_->setDroptol(1e-6);
            ilut_->setFillfactor(20);
            ilut_->compute(a);
            if (ilut_->info() != Eigen::Success) throw SolverError("incomplete LU factorization failed");
        }
    }

    // Interface required by Eigen's iterative solvers.
    template <typename MatType>
    StepPreconditioner& analyzePattern(const MatType&) { return *this; }
    template <typename MatType>
    StepPreconditioner& factorize(const MatType&) { return *this; }
    template <typename MatType>
    StepPreconditioner& compute(const MatType&) { return *this; }
    Eigen::ComputationInfo info() const { return Eigen::Success; }

    template <typename Rhs>
    Eigen::VectorXd solve(const Rhs& b) const {
        if (kind_ == Preconditioner::lu) return lu_->solve(b);
        return ilut_->solve(b);
    }

private:
    Preconditioner kind_ = Preconditioner::lu;
    std::shared_ptr<Eigen::UmfPackLU<ColMatrix>> lu_;
    std::shared_ptr<Eigen::IncompleteLUT<double>> ilut_;
};

struct StepSolver {
    ColMatrix a;
    Eigen::BiCGSTAB<ColMatrix, StepPreconditioner> solver;

    StepSolver(const ColMatrix& g, double c, const SolverConfig& cfg) {
        ColMatrix id(g.rows(), g.cols());
        id.setIdentity();
        a = id - c * g;
        a.makeCompressed();
        solver.preconditioner().setup(a, cfg.preconditioner);
        solver.compute(a);
        solver.setTolerance(cfg.linear_tol);
        solver.setMaxIterations(cfg.max_iterations);
    }

    void solve(const Eigen::VectorXd& rhs, Eigen::VectorXd& x, StepDiagnostics& d) {
        x = solver.solveWithGuess(rhs, x);
        if (solver.info() != Eigen::Success) {
            throw SolverError("implicit solve did not reach tolerance (residual " + std::to_string(solver.error()) + ")");
        }
        d.iterations += static_cast<int>(solver.iterations());
        d.residual = std::max(d.residual, solver.error());
    }
};

}  // namespace

void SolverConfig::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("solver: dt must be > 0");
    if (nt < 0) throw DomainError("solver: nt must be >= 0");
    if (!(linear_tol > 0.0)) throw DomainError("solver: linear_tol must be > 0");
    if (max_iterations < 1) throw DomainError("solver: max_iterations must be >= 1");
    if (!(mass_guard > 0.0)) throw DomainError("solver: mass_guard must be > 0");
    if (save_every < 0) throw DomainError("solver: save_every must be >= 0");
}

double boundary_fraction(const WignerGrid& w) {
    const int nx = w.spec.nx, np = w.spec.np;
    double edge = 0.0, total = 0.0;
    for (int k = 0; k < np; ++k) {
        for (int j = 0; j < nx; ++j) {
            const double a = std::abs(w.at(j, k));
            total += a;
            if (j < 2 || k < 2 || j >= nx - 2 || k >= np - 2) edge += a;
        }
    }
    return total > 0.0 ? edge / total : 0.0;
}

double resolution_ratio(const WignerGrid& w) {
    const double peak = w.max_abs();
    if (peak == 0.0) return 0.0;
    double jump = 0.0;
    for (int k = 0; k < w.spec.np; ++k) {
        for (int j = 0; j < w.spec.nx; ++j) {
            if (j + 1 < w.spec.nx) jump = std::max(jump, std::abs(w.at(j + 1, k) - w.at(j, k)));
            if (k + 1 < w.spec.np) jump = std::max(jump, std::abs(w.at(j, k + 1) - w.at(j, k)));
        }
    }
    return jump / peak;
}

Trajectory trbdf2_evolve(const WignerGrid& w0, const BandedSystem& sys, const SolverConfig& cfg,
                         const StepObserver& observer) {
    cfg.validate();
    const GridSpec& gs = w0.spec;
    if (gs.nx != sys.grid.nx || gs.np != sys.grid.np || static_cast<std::size_t>(sys.n()) != gs.size()) {
        throw DomainError("trbdf2_evolve: Jacobian assembled on a different grid");
    }
    Trajectory traj;
    traj.times.push_back(0.0);
    traj.frames.push_back(w0);
    if (cfg.nt == 0) return traj;

    const ColMatrix g = sys.G;
    const bool zero_operator = g.nonZeros() == 0;
    std::unique_ptr<StepSolver> trap, bdf;
    if (!zero_operator) {
        trap = std::make_unique<StepSolver>(g, 0.25 * cfg.dt, cfg);
        bdf = std::make_unique<StepSolver>(g, cfg.dt / 3.0, cfg);
    }

    WignerGrid cur = w0;
    Eigen::Map<Eigen::VectorXd> w(cur.values.data(), static_cast<Eigen::Index>(cur.values.size()));
    Eigen::VectorXd half = w, rhs;
    for (int step = 1; step <= cfg.nt; ++step) {
        StepDiagnostics d;
        d.t = step * cfg.dt;
        if (!zero_operator) {
            // trapezoid over dt/2, then BDF2 over the two half steps
            rhs = w + (0.25 * cfg.dt) * (g * w);
            half = w;
            trap->solve(rhs, half, d);
            rhs = (4.0 / 3.0) * half - (1.0 / 3.0) * w;
            Eigen::VectorXd next = half;
            bdf->solve(rhs, next, d);
            w = next;
        }
        d.mass = cur.integral();
        d.boundary_fraction = boundary_fraction(cur);
        traj.diagnostics.push_back(d);
        if (observer) observer(step, d.t, cur);
        const bool keep = step == cfg.nt || (cfg.save_every > 0 && step % cfg.save_every == 0);
        if (keep) {
            traj.times.push_back(d.t);
            traj.frames.push_back(cur);
        }
        if (d.boundary_fraction > cfg.mass_guard) {
            if (!keep) {
                traj.times.push_back(d.t);
                traj.frames.push_back(cur);
            }
            throw LeakageError("boundary mass fraction " + std::to_string(d.boundary_fraction) + " above guard at kappa t " +
                               std::to_string(d.t));
        }
    }
    return traj;
}

std::string run_metadata(const PdeOperator& op, const GridSpec& grid, const SolverConfig& cfg, const Trajectory& traj) {
    std::ostringstream os;
    os.precision(17);
    os << "operator = " << to_string(op.label) << "\n";
    os << "note = " << op.note << "\n";
    os << "grid = " << grid.nx << " x " << grid.np << " on [" << grid.x_min << ", " << grid.x_max << "] x [" << grid.p_min
       << ", " << grid.p_max << "]\n";
    os << "dt = " << cfg.dt << "\nnt = " << cfg.nt << "\nlinear_tol = " << cfg.linear_tol
       << "\nmass_guard = " << cfg.mass_guard << "\n";
    os << "preconditioner = " << (cfg.preconditioner == Preconditioner::lu ? "lu" : "ilut") << "\n";
    os << "# step t mass boundary_fraction iterations residual\n";
    for (std::size_t i = 0; i < traj.diagnostics.size(); ++i) {
        const auto& d = traj.diagnostics[i];
        os << i + 1 << " " << d.t << " " << d.mass << " " << d.boundary_fraction << " " << d.iterations << " " << d.residual
           << "\n";
    }
    return os.str();
}

}  // namespace kerr
