#include <atomic>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <limits>
#include <numbers>
#include <spdlog/spdlog.h>
#include <thread>

#include "kerr/airy.hpp"
#include "kerr/cli.hpp"
#include "kerr/errors.hpp"
#include "kerr/gaussian.hpp"
#include "kerr/moments.hpp"
#include "kerr/negativity.hpp"
#include "kerr/pde.hpp"

namespace kerr::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Raised in strict mode when a soft check fails; reported like a guard trip.
class GuardTrip : public Error {
public:
    using Error::Error;
};

struct Context {
    const RunConfig& cfg;
    fs::path out;
    RunOptions opts;
    json manifest;
    std::vector<std::string> warnings;

    void output(const std::string& name) { manifest["outputs"].push_back(name); }
    void warn(const std::string& msg) {
        spdlog::warn("{}", msg);
        warnings.push_back(msg);
    }
};

// Fans fn(i) for i < n out over worker threads; results land at fixed indices.
template <class T, class Fn>
std::vector<T> parallel_map(int n, int threads, Fn fn) {
    std::vector<T> out(n);
    std::vector<std::exception_ptr> errs(n);
    std::atomic<int> next{0};
    auto worker = [&] {
        for (int i = next++; i < n; i = next++) {
            try {
                out[i] = fn(i);
            } catch (...) {
                errs[i] = std::current_exception();
            }
        }
    };
    const int nw = std::max(1, std::min(threads, n));
    std::vector<std::jthread> pool;
    for (int t = 1; t < nw; ++t) pool.emplace_back(worker);
    worker();
    pool.clear();
    for (auto& e : errs) {
        if (e) std::rethrow_exception(e);
    }
    return out;
}

GridSpec lab_grid(const RunConfig& cfg, double alpha0) {
    const double half = cfg.grid_half > 0.0 ? cfg.grid_half : std::numbers::sqrt2 * alpha0 + 6.0;
    return GridSpec::centered(0.0, 0.0, half, cfg.grid_step);
}

int cutoff(const RunConfig& cfg, double alpha0) { return cfg.n_cut > 0 ? cfg.n_cut : default_n_cut(alpha0); }

void write_frame(Context& ctx, const WignerGrid& w, const std::string& stem) {
    write_csv(w, (ctx.out / (stem + ".csv")).string());
    ctx.output(stem + ".csv");
    if (ctx.cfg.heatmap) {
        emit_heatmap(w, ctx.out / (stem + ".ppm"));
        ctx.output(stem + ".ppm");
    }
}

void check_report(Context& ctx, const NegativityReport& r, double t) {
    if (r.resolution_flag) ctx.warn("negativity not resolved at kappa t " + std::to_string(t));
}

const std::vector<std::string> kNegHeader = {"t", "negativity", "total_mass", "abs_mass", "resolution_flag"};

void neg_row(CsvWriter& csv, double t, const NegativityReport& r) {
    csv << t << r.value << r.total_mass << r.abs_mass << (r.resolution_flag ? 1 : 0);
    csv.end_row();
}

struct ExactFrame {
    WignerGrid w;
    NegativityReport rep;
};

ExactFrame exact_frame(const RunConfig& cfg, const SystemParams& params, double t) {
    const FockDensity rho = open_density_matrix(params, t, cutoff(cfg, params.alpha0));
    ExactFrame f;
    f.w = density_to_wigner(rho, lab_grid(cfg, params.alpha0));
    f.rep = negativity_grid(f.w);
    return f;
}

void run_evolve_exact(Context& ctx) {
    const auto times = ctx.cfg.times();
    const SystemParams params = ctx.cfg.params();
    auto frames = parallel_map<ExactFrame>(static_cast<int>(times.size()), ctx.opts.threads,
                                           [&](int i) { return exact_frame(ctx.cfg, params, times[i]); });
    CsvWriter csv(ctx.out / "negativity.csv", kNegHeader);
    ctx.output("negativity.csv");
    for (std::size_t i = 0; i < times.size(); ++i) {
        neg_row(csv, times[i], frames[i].rep);
        check_report(ctx, frames[i].rep, times[i]);
    }
    write_frame(ctx, frames.back().w, "wigner_final");
}

Preconditioner preconditioner(const RunConfig& cfg) {
    return cfg.preconditioner == "ilut" ? Preconditioner::ilut : Preconditioner::lu;
}

// Evolves with the given operator, sampling negativity t_steps times up to t_stop.
// Returns the negativity samples; leakage is rethrown after partial output is flushed.
std::vector<std::pair<double, NegativityReport>> run_pde(Context& ctx, const PdeOperator& op, const WignerGrid& w0,
                                                         const std::string& stem) {
    const RunConfig& cfg = ctx.cfg;
    const BandedSystem sys = assemble_jacobian(op, w0.spec);
    SolverConfig sc;
    sc.dt = cfg.dt;
    sc.nt = static_cast<int>(std::lround(cfg.t_stop / cfg.dt));
    sc.preconditioner = preconditioner(cfg);
    sc.mass_guard = ctx.opts.strict ? cfg.mass_guard : 1.0;
    const int stride = std::max(1, sc.nt / std::max(1, cfg.t_steps));

    std::vector<std::pair<double, NegativityReport>> samples;
    samples.emplace_back(0.0, negativity_grid(w0));
    WignerGrid last = w0;
    bool warned = false;
    auto observer = [&](int step, double t, const WignerGrid& w) {
        if (!warned && boundary_fraction(w) > cfg.mass_guard) {
            ctx.warn("boundary mass fraction above mass_guard at kappa t " + std::to_string(t));
            warned = true;
        }
        if (step % stride == 0 || step == sc.nt) {
            samples.emplace_back(t, negativity_grid(w));
            last = w;
        }
    };
    Trajectory traj;
    std::exception_ptr err;
    try {
        traj = trbdf2_evolve(w0, sys, sc, observer);
    } catch (const LeakageError&) {
        err = std::current_exception();
    }

    CsvWriter csv(ctx.out / (stem + "_negativity.csv"), kNegHeader);
    ctx.output(stem + "_negativity.csv");
    for (const auto& [t, r] : samples) {
        neg_row(csv, t, r);
        check_report(ctx, r, t);
    }
    write_frame(ctx, last, stem + "_final");
    {
        std::ofstream meta(ctx.out / (stem + "_metadata.txt"));
        meta << run_metadata(op, w0.spec, sc, traj);
        ctx.output(stem + "_metadata.txt");
    }
    json diag = json::array();
    for (const auto& d : traj.diagnostics) {
        diag.push_back({{"t", d.t}, {"mass", d.mass}, {"boundary_fraction", d.boundary_fraction},
                        {"iterations", d.iterations}, {"residual", d.residual}});
    }
    ctx.manifest["diagnostics"][stem] = diag;
    ctx.manifest["jacobian_max_row_nonzeros"] = sys.max_row_nonzeros();
    if (err) std::rethrow_exception(err);
    return samples;
}

void run_evolve_pde(Context& ctx) {
    const SystemParams params = ctx.cfg.params();
    const WignerGrid w0 = coherent_wigner(params, lab_grid(ctx.cfg, params.alpha0));
    run_pde(ctx, moyal_operator(params, OperatorLabel::full_cartesian), w0, "pde");
}

WignerGrid vacuum_grid(const GridSpec& gs) {
    WignerGrid w(gs);
    for (int k = 0; k < gs.np; ++k) {
        for (int j = 0; j < gs.nx; ++j) w.at(j, k) = std::exp(-gs.x(j) * gs.x(j) - gs.p(k) * gs.p(k)) / std::numbers::pi;
    }
    return w;
}

void run_evolve_ngmf(Context& ctx) {
    const RunConfig& cfg = ctx.cfg;
    const GridSpec gs = GridSpec::box(cfg.ngmf_x_min, cfg.ngmf_x_max, -cfg.ngmf_p_half, cfg.ngmf_p_half, cfg.grid_step,
                                      cfg.grid_step);
    run_pde(ctx, ngmf_operator(cfg.params()), vacuum_grid(gs), "ngmf");
}

std::string kitten_verdict(int N, int nmax) {
    if (N == nmax) return "first distinguishable";
    return N < nmax ? "distinguishable" : "not distinguishable";
}

void run_kitten(Context& ctx) {
    const RunConfig& cfg = ctx.cfg;
    const int N = cfg.kitten_n;
    const int nmax = n_max(cfg.alpha0);
    const double kt = 2.0 * std::numbers::pi * cfg.kitten_m / N;
    const WignerGrid w = superposition_wigner_grid(kitten_coefficients({N, cfg.kitten_m, cfg.alpha0}), lab_grid(cfg, cfg.alpha0));
    const NegativityReport rep = negativity_grid(w);
    check_report(ctx, rep, kt);
    double dmin = kNaN, lower = kNaN, upper = kNaN;
    int strong = 1;
    if (N >= 3 && N % 2 == 1) {
        dmin = d_min(N, cfg.alpha0);
        const KittenBounds b = kitten_negativity_bounds(N, cfg.alpha0, cfg.epsilon);
        lower = b.lower;
        upper = b.upper;
        strong = b.strongly_distinguishable ? 1 : 0;
        if (!b.strongly_distinguishable) ctx.warn("kitten N exceeds the strong distinguishability limit; bounds unreliable");
    }
    CsvWriter csv(ctx.out / "kitten.csv", {"alpha0", "N", "M", "kappa_t", "n_max", "verdict", "strong_limit", "d_min",
                                           "lower_bound", "upper_bound", "strongly_distinguishable", "negativity",
                                           "total_mass", "resolution_flag"});
    ctx.output("kitten.csv");
    csv << cfg.alpha0 << N << cfg.kitten_m << kt << nmax << kitten_verdict(N, nmax)
        << strong_dist_limit(cfg.alpha0, cfg.epsilon) << dmin << lower << upper << strong << rep.value << rep.total_mass
        << (rep.resolution_flag ? 1 : 0);
    csv.end_row();
    write_frame(ctx, w, "kitten_wigner");
}

void run_moments(Context& ctx) {
    const RunConfig& cfg = ctx.cfg;
    const SystemParams params = cfg.params();
    CsvWriter csv(ctx.out / "moments.csv", {"t", "classical_abs", "quantum_abs", "quantum_re", "quantum_im", "twa_re",
                                            "twa_im"});
    ctx.output("moments.csv");
    const int n = cfg.moment_p - cfg.moment_q;
    for (double t : cfg.times()) {
        const cplx q = symmetric_moment(cfg.moment_p, cfg.moment_q, t, params, Variant::quantum);
        const cplx c = symmetric_moment(cfg.moment_p, cfg.moment_q, t, params, Variant::twa);
        const int order = std::abs(n);
        csv << t << classical_moment(order, t, params) << quantum_moment_abs(order, t, params) << q.real() << q.imag()
            << c.real() << c.imag();
        csv.end_row();
    }
    if (cfg.alpha0 >= 2.0) ctx.manifest["summary"]["surviving_fraction"] = surviving_fraction(params);
}

void run_gaussian(Context& ctx) {
    const SystemParams params = ctx.cfg.params();
    CsvWriter csv(ctx.out / "gaussian.csv", {"t", "c_xx", "c_pp", "c_xp", "det_excess", "nbar", "squeezing_r",
                                             "squeezing_theta", "mean_x", "mean_p"});
    ctx.output("gaussian.csv");
    for (double t : ctx.cfg.times()) {
        const CovarianceState s = covariance(t, params);
        const Squeezing sq = squeezing(s);
        csv << t << s.c_xx << s.c_pp << s.c_xp << s.excess() << thermal_photons(s) << sq.r << sq.theta << s.mean_x
            << s.mean_p;
        csv.end_row();
    }
    const RegimeTimes rt = regime_times(params, ctx.cfg.c_g);
    ctx.manifest["summary"]["t_gaussian"] = rt.t_gaussian;
    ctx.manifest["summary"]["t_kitten"] = rt.t_kitten;
}

// Airy-route negativity over the annulus |r - r0 e^{-gt/2}| <= 3 and one turn around the mean.
NegativityReport airy_negativity(const SystemParams& params, double t) {
    const double rc = params.alpha0 * std::exp(-0.5 * params.g() * t);
    const double centre = params.phi0 - params.alpha0 * params.alpha0 * t;
    const double r_min = std::max(rc - 3.0, 1e-6);
    return negativity_polar([&](double r, double phi) { return open_airy_wigner(r, phi, t, params); }, r_min, rc + 3.0,
                            centre - std::numbers::pi, centre + std::numbers::pi, 600, 4000);
}

bool airy_valid(const SystemParams& params, double t) { return t > 0.0 && t <= 0.5 / params.alpha0; }

void run_airy(Context& ctx) {
    const RunConfig& cfg = ctx.cfg;
    const SystemParams params = cfg.params();
    {
        CsvWriter csv(ctx.out / "airy_negativity.csv", kNegHeader);
        ctx.output("airy_negativity.csv");
        for (double t : cfg.times()) {
            if (!airy_valid(params, t)) continue;
            const NegativityReport r = airy_negativity(params, t);
            neg_row(csv, t, r);
            check_report(ctx, r, t);
        }
    }
    const double s = 1.0 + 2.0 * cfg.nbar;
    const double pmin = -std::max(20.0, 8.0 * std::cbrt(cfg.chi)), pmax = 4.0 + s;
    const GridSpec gs = GridSpec::box(-6.0, 6.0, pmin, pmax, cfg.grid_step, cfg.grid_step);
    WignerGrid w(gs);
    for (int k = 0; k < gs.np; ++k) {
        for (int j = 0; j < gs.nx; ++j) w.at(j, k) = cubic_thermal_wigner(gs.x(j), gs.p(k), cfg.chi, cfg.nbar);
    }
    const NegativityReport rep = negativity_grid(w);
    check_report(ctx, rep, 0.0);
    CsvWriter csv(ctx.out / "cubic.csv", {"chi", "nbar", "grid_negativity", "grid_mass", "negativity", "damping",
                                          "undamped", "undamped_bound"});
    ctx.output("cubic.csv");
    const double c = std::abs(cfg.chi);
    csv << cfg.chi << cfg.nbar << rep.value << rep.total_mass << cubic_thermal_negativity(cfg.chi, cfg.nbar)
        << damping_factor(cfg.nbar, c) << undamped_negativity(c, cfg.nbar) << undamped_negativity_bound(c, cfg.nbar);
    csv.end_row();
    write_frame(ctx, w, "cubic_wigner");
}

void run_circuit(Context& ctx) {
    const RunConfig& cfg = ctx.cfg;
    CircuitModel model;
    model.c_g = cfg.c_g;
    model.c_a = cfg.c_a;
    model.k = cfg.k;
    model.p_exp = cfg.p_exp;
    CsvWriter csv(ctx.out / "circuit.csv", {"alpha0", "gamma_over_kappa", "nbar", "squeezing_r", "chi_eff", "damping",
                                            "bound", "classification"});
    ctx.output("circuit.csv");
    for (const CircuitRow& r : circuit_negativity_profile(model, cfg.alpha0_list)) {
        csv << r.alpha0 << r.gamma_over_kappa << r.nbar << r.squeezing_r << r.chi_eff << r.damping << r.bound
            << r.classification;
        csv.end_row();
    }
}

void run_negativity_scan(Context& ctx) {
    const RunConfig& cfg = ctx.cfg;
    const auto times = cfg.times();
    const int nt = static_cast<int>(times.size());
    const int na = static_cast<int>(cfg.alpha0_list.size());
    auto reports = parallel_map<NegativityReport>(na * nt, ctx.opts.threads, [&](int i) {
        SystemParams p = cfg.params();
        p.alpha0 = cfg.alpha0_list[i / nt];
        return exact_frame(cfg, p, times[i % nt]).rep;
    });
    CsvWriter csv(ctx.out / "negativity_scan.csv", {"alpha0", "t", "negativity", "total_mass", "abs_mass",
                                                    "resolution_flag"});
    ctx.output("negativity_scan.csv");
    json peaks = json::array();
    for (int a = 0; a < na; ++a) {
        double peak = 0.0, t_peak = 0.0;
        for (int j = 0; j < nt; ++j) {
            const NegativityReport& r = reports[a * nt + j];
            csv << cfg.alpha0_list[a] << times[j] << r.value << r.total_mass << r.abs_mass << (r.resolution_flag ? 1 : 0);
            csv.end_row();
            check_report(ctx, r, times[j]);
            if (r.value > peak) {
                peak = r.value;
                t_peak = times[j];
            }
        }
        peaks.push_back({{"alpha0", cfg.alpha0_list[a]}, {"peak_negativity", peak}, {"t_peak", t_peak}});
    }
    ctx.manifest["summary"]["peaks"] = peaks;
}

void run_validate(Context& ctx) {
    const RunConfig& cfg = ctx.cfg;
    const SystemParams params = cfg.params();
    const auto times = cfg.times();
    auto exact = parallel_map<NegativityReport>(static_cast<int>(times.size()), ctx.opts.threads,
                                                [&](int i) { return exact_frame(cfg, params, times[i]).rep; });
    RunConfig pde_cfg = cfg;
    pde_cfg.t_steps = std::max(1, cfg.t_steps);
    Context pde_ctx{pde_cfg, ctx.out, ctx.opts, json::object(), {}};
    const WignerGrid w0 = coherent_wigner(params, lab_grid(cfg, params.alpha0));
    std::vector<std::pair<double, NegativityReport>> pde;
    std::exception_ptr err;
    try {
        pde = run_pde(pde_ctx, moyal_operator(params, OperatorLabel::full_cartesian), w0, "pde");
    } catch (const LeakageError&) {
        err = std::current_exception();
    }
    for (auto& o : pde_ctx.manifest["outputs"]) ctx.output(o.get<std::string>());
    ctx.manifest["diagnostics"] = pde_ctx.manifest["diagnostics"];
    for (auto& w : pde_ctx.warnings) ctx.warnings.push_back(w);

    CsvWriter csv(ctx.out / "validate.csv", {"t", "exact", "pde", "airy"});
    ctx.output("validate.csv");
    double peak = 0.0, d_pde = 0.0, d_airy = 0.0, d_pde_airy = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double t = times[i];
        double pv = kNaN;
        for (const auto& [tp, r] : pde) {
            if (std::abs(tp - t) < 0.5 * cfg.dt) pv = r.value;
        }
        const double av = airy_valid(params, t) ? airy_negativity(params, t).value : kNaN;
        const double ev = exact[i].value;
        peak = std::max(peak, ev);
        if (std::isfinite(pv)) d_pde = std::max(d_pde, std::abs(pv - ev));
        if (std::isfinite(av)) d_airy = std::max(d_airy, std::abs(av - ev));
        if (std::isfinite(av) && std::isfinite(pv)) d_pde_airy = std::max(d_pde_airy, std::abs(av - pv));
        csv << t << ev << pv << av;
        csv.end_row();
    }
    ctx.manifest["summary"] = {{"peak_exact", peak},
                               {"max_dev_exact_pde", d_pde},
                               {"max_dev_exact_airy", d_airy},
                               {"max_dev_pde_airy", d_pde_airy}};
    if (err) std::rethrow_exception(err);
}

bool is_guard(const std::exception_ptr& e) {
    try {
        std::rethrow_exception(e);
    } catch (const LeakageError&) {
        return true;
    } catch (const TruncationError&) {
        return true;
    } catch (const BoundaryMassError&) {
        return true;
    } catch (const CutoffError&) {
        return true;
    } catch (const GuardTrip&) {
        return true;
    } catch (...) {
        return false;
    }
}

}  // namespace

int run(const RunConfig& cfg, const fs::path& out_dir, const RunOptions& opts) {
    cfg.validate();
    fs::create_directories(out_dir);
    Context ctx{cfg, out_dir, opts, json::object(), {}};
    ctx.manifest["command"] = cfg.command;
    ctx.manifest["version"] = kVersion;
    ctx.manifest["config_hash"] = config_hash(cfg);
    ctx.manifest["config"] = cfg.canonical();
    ctx.manifest["outputs"] = json::array();

    static const std::map<std::string, void (*)(Context&)> commands = {
        {"evolve-exact", run_evolve_exact}, {"evolve-pde", run_evolve_pde},
        {"evolve-ngmf", run_evolve_ngmf},   {"kitten", run_kitten},
        {"moments", run_moments},           {"gaussian", run_gaussian},
        {"airy", run_airy},                 {"circuit", run_circuit},
        {"negativity-scan", run_negativity_scan}, {"validate", run_validate},
    };

    int status = exit_ok;
    try {
        commands.at(cfg.command)(ctx);
        if (opts.strict && !ctx.warnings.empty()) throw GuardTrip("strict mode: " + ctx.warnings.front());
        ctx.manifest["status"] = "complete";
    } catch (...) {
        const auto e = std::current_exception();
        std::string what = "unknown error";
        try {
            std::rethrow_exception(e);
        } catch (const std::exception& ex) {
            what = ex.what();
        } catch (...) {
        }
        status = is_guard(e) ? exit_guard : exit_failure;
        ctx.manifest["status"] = status == exit_guard ? "partial" : "failed";
        ctx.manifest["error"] = what;
        spdlog::error("{}: {}", cfg.command, what);
    }
    ctx.manifest["warnings"] = ctx.warnings;
    std::ofstream m(out_dir / "manifest.json");
    m << ctx.manifest.dump(2) << "\n";
    return status;
}

}  // namespace kerr::cli
