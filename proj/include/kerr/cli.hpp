#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "kerr/states.hpp"

namespace kerr::cli {

/**
 * One run. Parsed from flat `key = value` text; `#` starts a comment.
 * Every key has a default, unknown keys are rejected.
 */
struct RunConfig {
    std::string command;

    double alpha0 = 2.0;
    double gamma = 0.0;  // gamma / kappa
    double phi0 = 0.0;

    double t_start = 0.0;
    double t_stop = 1.0;
    int t_steps = 10;

    // Quadrature grid. half <= 0 picks a size from alpha0.
    double grid_half = 0.0;
    double grid_step = 0.1;
    int n_cut = 0;

    // PDE solver
    double dt = 1e-3;
    double mass_guard = 1e-3;
    std::string preconditioner = "lu";
    double ngmf_x_min = -6.0, ngmf_x_max = 4.0, ngmf_p_half = 16.0;

    // kitten
    int kitten_n = 3;
    int kitten_m = 1;
    double epsilon = 0.1;

    // moments
    int moment_p = 1;
    int moment_q = 0;

    // airy / circuit
    double chi = 2.0;
    double nbar = 0.01;
    double c_g = 0.5;
    double c_a = 0.5;
    double k = 1.0;
    double p_exp = 1.0;

    std::vector<double> alpha0_list = {2.0, 3.0, 4.0};
    bool heatmap = true;

    SystemParams params() const;
    std::vector<double> times() const;
    void validate() const;
    /** Canonical `key = value` text with every field, in a fixed order. */
    std::string canonical() const;
};

RunConfig parse_config(std::istream& is);
RunConfig parse_config_text(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

/** FNV-1a 64 of the canonical text, as 16 hex digits. */
std::string config_hash(const RunConfig& cfg);

struct RunOptions {
    int threads = 1;
    bool strict = false;
};

enum ExitStatus : int { exit_ok = 0, exit_failure = 1, exit_config = 2, exit_guard = 3 };

/** Runs the configured command into out_dir and writes manifest.json. */
int run(const RunConfig& cfg, const std::filesystem::path& out_dir, const RunOptions& opts);

/**
 * Signed diverging P6 raster (blue negative, white zero, red positive, p
 * increasing upwards) plus `<path>.scale` with min, max and zero level.
 */
void emit_heatmap(const WignerGrid& w, const std::filesystem::path& path);

/** Decodes a raster written by emit_heatmap back to its quantised values. */
WignerGrid read_heatmap(const std::filesystem::path& path, const GridSpec& spec);

/** CSV writer with a fixed header; doubles are printed with %.17g. */
class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);

    CsvWriter& operator<<(double v);
    CsvWriter& operator<<(int v);
    CsvWriter& operator<<(const std::string& v);
    /** Writes the pending cells; throws if their count differs from the header. */
    void end_row();

private:
    std::ofstream os_;
    std::size_t width_;
    std::vector<std::string> row_;
};

}  // namespace kerr::cli
