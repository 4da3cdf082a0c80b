#include <bit>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <cstdio>

#include "kerr/errors.hpp"
#include "kerr/states.hpp"

namespace kerr {

static_assert(std::endian::native == std::endian::little, "binary grid format assumes a little-endian host");

cplx SystemParams::initial_amplitude() const { return std::polar(alpha0, phi0); }

void SystemParams::validate() const {
    if (!std::isfinite(alpha0) || alpha0 < 0.0) throw DomainError("alpha0 must be finite and >= 0");
    if (!(kappa > 0.0) || !std::isfinite(kappa)) throw DomainError("kappa must be > 0");
    if (!(gamma >= 0.0) || !std::isfinite(gamma / kappa)) throw DomainError("gamma must be >= 0 and finite");
    if (!std::isfinite(phi0)) throw DomainError("phi0 must be finite");
}

void GridSpec::validate() const {
    if (nx <= 0 || np <= 0) throw DomainError("grid needs nx, np > 0");
    if (!(x_max > x_min) || !(p_max > p_min)) throw DomainError("grid bounds must be increasing");
}

GridSpec GridSpec::centered(double xc, double pc, double half, double step) {
    const int n = static_cast<int>(std::ceil(2.0 * half / step - 1e-9));
    return GridSpec{n, n, xc - half, xc + half, pc - half, pc + half};
}

GridSpec GridSpec::box(double x_min, double x_max, double p_min, double p_max, double step_x, double step_p) {
    const int nx = static_cast<int>(std::ceil((x_max - x_min) / step_x - 1e-9));
    const int np = static_cast<int>(std::ceil((p_max - p_min) / step_p - 1e-9));
    return GridSpec{nx, np, x_min, x_max, p_min, p_max};
}

double WignerGrid::integral() const {
    const int nx = spec.nx, np = spec.np;
    double sum = 0.0;
    for (int k = 0; k < np; ++k) {
        const double wk = (k == 0 || k == np - 1) ? 0.5 : 1.0;
        double row = 0.0;
        for (int j = 0; j < nx; ++j) {
            const double wj = (j == 0 || j == nx - 1) ? 0.5 : 1.0;
            row += wj * at(j, k);
        }
        sum += wk * row;
    }
    return sum * spec.dx() * spec.dp();
}

double WignerGrid::max_abs() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
}

double WignerGrid::edge_fraction() const {
    const double peak = max_abs();
    if (peak == 0.0) return 0.0;
    double e = 0.0;
    for (int j = 0; j < spec.nx; ++j) e = std::max({e, std::abs(at(j, 0)), std::abs(at(j, spec.np - 1))});
    for (int k = 0; k < spec.np; ++k) e = std::max({e, std::abs(at(0, k)), std::abs(at(spec.nx - 1, k))});
    return e / peak;
}

void write_csv(const WignerGrid& w, std::ostream& os) {
    os << "x,p,w\n";
    char buf[96];
    for (int k = 0; k < w.spec.np; ++k) {
        for (int j = 0; j < w.spec.nx; ++j) {
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", w.spec.x(j), w.spec.p(k), w.at(j, k));
            os << buf;
        }
    }
}

void write_csv(const WignerGrid& w, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw InputError("cannot open " + path);
    write_csv(w, f);
}

WignerGrid read_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != "x,p,w") throw InputError("csv: missing x,p,w header");
    std::vector<double> xs, ps, ws;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        double x, p, v;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &x, &p, &v) != 3) throw InputError("csv: bad row");
        xs.push_back(x);
        ps.push_back(p);
        ws.push_back(v);
    }
    if (ws.empty()) throw InputError("csv: no data");
    int nx = 1;
    while (nx < static_cast<int>(ps.size()) && ps[nx] == ps[0]) ++nx;
    if (ws.size() % nx) throw InputError("csv: ragged grid");
    const int np = static_cast<int>(ws.size() / nx);
    GridSpec s;
    s.nx = nx;
    s.np = np;
    const double dx = nx > 1 ? (xs[nx - 1] - xs[0]) / (nx - 1) : 1.0;
    const double dp = np > 1 ? (ps.back() - ps[0]) / (np - 1) : 1.0;
    s.x_min = xs[0] - 0.5 * dx;
    s.x_max = xs[nx - 1] + 0.5 * dx;
    s.p_min = ps[0] - 0.5 * dp;
    s.p_max = ps.back() + 0.5 * dp;
    WignerGrid w(s);
    w.values = std::move(ws);
    return w;
}

WignerGrid read_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw InputError("cannot open " + path);
    return read_csv(f);
}

void write_binary(const WignerGrid& w, std::ostream& os) {
    const std::int64_t dims[2] = {w.spec.nx, w.spec.np};
    const double bounds[4] = {w.spec.x_min, w.spec.x_max, w.spec.p_min, w.spec.p_max};
    os.write(reinterpret_cast<const char*>(dims), sizeof dims);
    os.write(reinterpret_cast<const char*>(bounds), sizeof bounds);
    os.write(reinterpret_cast<const char*>(w.values.data()),
             static_cast<std::streamsize>(w.values.size() * sizeof(double)));
}

void write_binary(const WignerGrid& w, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot open " + path);
    write_binary(w, f);
}

WignerGrid read_binary(std::istream& is) {
    std::int64_t dims[2];
    double bounds[4];
    if (!is.read(reinterpret_cast<char*>(dims), sizeof dims) || !is.read(reinterpret_cast<char*>(bounds), sizeof bounds)) {
        throw InputError("binary grid: truncated header");
    }
    GridSpec s{static_cast<int>(dims[0]), static_cast<int>(dims[1]), bounds[0], bounds[1], bounds[2], bounds[3]};
    s.validate();
    WignerGrid w(s);
    if (!is.read(reinterpret_cast<char*>(w.values.data()), static_cast<std::streamsize>(w.values.size() * sizeof(double)))) {
        throw InputError("binary grid: truncated data");
    }
    return w;
}

WignerGrid read_binary(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot open " + path);
    return read_binary(f);
}

}  // namespace kerr
