#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "kerr/cli.hpp"
#include "kerr/errors.hpp"

namespace kerr::cli {

namespace {

const std::set<std::string> kCommands = {"evolve-exact", "evolve-pde", "evolve-ngmf", "kitten",          "moments",
                                         "gaussian",     "airy",       "circuit",     "negativity-scan", "validate"};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out)) {
        throw ConfigError(key + ": expected a number, got '" + v + "'");
    }
    return out;
}

int to_int(const std::string& key, const std::string& v) {
    int out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size()) throw ConfigError(key + ": expected an integer, got '" + v + "'");
    return out;
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw ConfigError(key + ": expected true or false, got '" + v + "'");
}

std::vector<double> to_list(const std::string& key, const std::string& v) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(to_double(key, trim(item)));
    if (out.empty()) throw ConfigError(key + ": empty list");
    return out;
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

using Setter = std::function<void(RunConfig&, const std::string&, const std::string&)>;

#define KERR_NUM(name) {#name, [](RunConfig& c, const std::string& k, const std::string& v) { c.name = to_double(k, v); }}
#define KERR_INT(name) {#name, [](RunConfig& c, const std::string& k, const std::string& v) { c.name = to_int(k, v); }}

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = {
        {"command", [](RunConfig& c, const std::string&, const std::string& v) { c.command = v; }},
        KERR_NUM(alpha0),
        KERR_NUM(gamma),
        KERR_NUM(phi0),
        KERR_NUM(t_start),
        KERR_NUM(t_stop),
        KERR_INT(t_steps),
        KERR_NUM(grid_half),
        KERR_NUM(grid_step),
        KERR_INT(n_cut),
        KERR_NUM(dt),
        KERR_NUM(mass_guard),
        {"preconditioner", [](RunConfig& c, const std::string&, const std::string& v) { c.preconditioner = v; }},
        KERR_NUM(ngmf_x_min),
        KERR_NUM(ngmf_x_max),
        KERR_NUM(ngmf_p_half),
        KERR_INT(kitten_n),
        KERR_INT(kitten_m),
        KERR_NUM(epsilon),
        KERR_INT(moment_p),
        KERR_INT(moment_q),
        KERR_NUM(chi),
        KERR_NUM(nbar),
        KERR_NUM(c_g),
        KERR_NUM(c_a),
        KERR_NUM(k),
        KERR_NUM(p_exp),
        {"alpha0_list", [](RunConfig& c, const std::string& k, const std::string& v) { c.alpha0_list = to_list(k, v); }},
        {"heatmap", [](RunConfig& c, const std::string& k, const std::string& v) { c.heatmap = to_bool(k, v); }},
    };
    return table;
}

#undef KERR_NUM
#undef KERR_INT

}  // namespace

SystemParams RunConfig::params() const {
    SystemParams p;
    p.alpha0 = alpha0;
    p.kappa = 1.0;
    p.gamma = gamma;
    p.phi0 = phi0;
    return p;
}

std::vector<double> RunConfig::times() const {
    std::vector<double> out;
    if (t_steps == 0) {
        out.push_back(t_start);
        return out;
    }
    for (int i = 0; i <= t_steps; ++i) out.push_back(t_start + (t_stop - t_start) * i / t_steps);
    return out;
}

void RunConfig::validate() const {
    if (!kCommands.count(command)) throw ConfigError("command: unknown or missing '" + command + "'");
    try {
        params().validate();
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    if (t_steps < 0) throw ConfigError("t_steps must be >= 0");
    if (t_start < 0.0 || t_stop < t_start) throw ConfigError("need 0 <= t_start <= t_stop");
    if (!(grid_step > 0.0)) throw ConfigError("grid_step must be > 0");
    if (n_cut < 0) throw ConfigError("n_cut must be >= 0");
    if (!(dt > 0.0)) throw ConfigError("dt must be > 0");
    if (!(mass_guard > 0.0)) throw ConfigError("mass_guard must be > 0");
    if (preconditioner != "lu" && preconditioner != "ilut") throw ConfigError("preconditioner must be lu or ilut");
    if (!(ngmf_x_max > ngmf_x_min) || !(ngmf_p_half > 0.0)) throw ConfigError("ngmf box is empty");
    if (kitten_n < 1) throw ConfigError("kitten_n must be >= 1");
    if (!(epsilon > 0.0 && epsilon <= 0.5)) throw ConfigError("epsilon must lie in (0, 1/2]");
    if (moment_p < 0 || moment_q < 0) throw ConfigError("moment orders must be >= 0");
    if (!(nbar >= 0.0)) throw ConfigError("nbar must be >= 0");
    for (double a : alpha0_list) {
        if (!(a > 0.0)) throw ConfigError("alpha0_list entries must be > 0");
    }
}

std::string RunConfig::canonical() const {
    std::ostringstream os;
    auto num = [&](const char* key, double v) { os << key << " = " << fmt_double(v) << "\n"; };
    os << "command = " << command << "\n";
    num("alpha0", alpha0);
    num("gamma", gamma);
    num("phi0", phi0);
    num("t_start", t_start);
    num("t_stop", t_stop);
    os << "t_steps = " << t_steps << "\n";
    num("grid_half", grid_half);
    num("grid_step", grid_step);
    os << "n_cut = " << n_cut << "\n";
    num("dt", dt);
    num("mass_guard", mass_guard);
    os << "preconditioner = " << preconditioner << "\n";
    num("ngmf_x_min", ngmf_x_min);
    num("ngmf_x_max", ngmf_x_max);
    num("ngmf_p_half", ngmf_p_half);
    os << "kitten_n = " << kitten_n << "\n";
    os << "kitten_m = " << kitten_m << "\n";
    num("epsilon", epsilon);
    os << "moment_p = " << moment_p << "\n";
    os << "moment_q = " << moment_q << "\n";
    num("chi", chi);
    num("nbar", nbar);
    num("c_g", c_g);
    num("c_a", c_a);
    num("k", k);
    num("p_exp", p_exp);
    os << "alpha0_list = ";
    for (std::size_t i = 0; i < alpha0_list.size(); ++i) os << (i ? "," : "") << fmt_double(alpha0_list[i]);
    os << "\nheatmap = " << (heatmap ? "true" : "false") << "\n";
    return os.str();
}

RunConfig parse_config(std::istream& is) {
    RunConfig cfg;
    std::set<std::string> seen;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const auto it = setters().find(key);
        if (it == setters().end()) throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        if (!seen.insert(key).second) throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
        it->second(cfg, key, value);
    }
    cfg.validate();
    return cfg;
}

RunConfig parse_config_text(const std::string& text) {
    std::istringstream is(text);
    return parse_config(is);
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config " + path.string());
    return parse_config(f);
}

std::string config_hash(const RunConfig& cfg) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : cfg.canonical()) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace kerr::cli
