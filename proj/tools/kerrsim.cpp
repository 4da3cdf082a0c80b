#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include "kerr/cli.hpp"
#include "kerr/errors.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Lossy Kerr oscillator phase-space simulations"};
    std::string config_path;
    std::string out_dir = "out";
    kerr::cli::RunOptions opts;
    app.add_option("--config", config_path, "run configuration (key = value)")->required();
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--threads", opts.threads, "worker threads for sweeps")->check(CLI::PositiveNumber);
    app.add_flag("--strict", opts.strict, "treat numerical warnings as fatal");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kerr::cli::exit_config;
    }

    kerr::cli::RunConfig cfg;
    try {
        cfg = kerr::cli::load_config(config_path);
    } catch (const kerr::ConfigError& e) {
        spdlog::error("config: {}", e.what());
        return kerr::cli::exit_config;
    }
    spdlog::info("{} -> {} (config {})", cfg.command, out_dir, kerr::cli::config_hash(cfg));
    return kerr::cli::run(cfg, out_dir, opts);
}
