#include <cmath>
#include <cstdio>
#include <fstream>

#include "kerr/cli.hpp"
#include "kerr/errors.hpp"

namespace kerr::cli {

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header)
    : os_(path), width_(header.size()) {
    if (!os_) throw InputError("cannot open " + path.string());
    for (std::size_t i = 0; i < header.size(); ++i) os_ << (i ? "," : "") << header[i];
    os_ << "\n";
}

CsvWriter& CsvWriter::operator<<(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    row_.emplace_back(buf);
    return *this;
}

CsvWriter& CsvWriter::operator<<(int v) {
    row_.push_back(std::to_string(v));
    return *this;
}

CsvWriter& CsvWriter::operator<<(const std::string& v) {
    row_.push_back(v);
    return *this;
}

void CsvWriter::end_row() {
    if (row_.size() != width_) throw ConsistencyError("csv row has " + std::to_string(row_.size()) + " cells, header has " + std::to_string(width_));
    for (std::size_t i = 0; i < row_.size(); ++i) os_ << (i ? "," : "") << row_[i];
    os_ << "\n";
    row_.clear();
    if (!os_) throw InputError("csv write failed");
}

// Levels run from -255 (full blue) through 0 (white) to 255 (full red).
void emit_heatmap(const WignerGrid& w, const std::filesystem::path& path) {
    w.spec.validate();
    const double vmax = w.max_abs();
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot open " + path.string());
    f << "P6\n" << w.spec.nx << " " << w.spec.np << "\n255\n";
    for (int k = w.spec.np - 1; k >= 0; --k) {
        for (int j = 0; j < w.spec.nx; ++j) {
            const int level = vmax > 0.0 ? static_cast<int>(std::lround(255.0 * w.at(j, k) / vmax)) : 0;
            unsigned char px[3];
            if (level >= 0) {
                px[0] = 255;
                px[1] = px[2] = static_cast<unsigned char>(255 - level);
            } else {
                px[0] = px[1] = static_cast<unsigned char>(255 + level);
                px[2] = 255;
            }
            f.write(reinterpret_cast<const char*>(px), 3);
        }
    }
    if (!f) throw InputError("heatmap write failed");
    double lo = 0.0, hi = 0.0;
    if (!w.values.empty()) {
        lo = hi = w.values[0];
        for (double v : w.values) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    std::ofstream s(path.string() + ".scale");
    char buf[160];
    std::snprintf(buf, sizeof buf, "min %.17g\nmax %.17g\nzero_level 0\nscale %.17g\n", lo, hi, vmax);
    s << buf;
    if (!s) throw InputError("heatmap scale write failed");
}

WignerGrid read_heatmap(const std::filesystem::path& path, const GridSpec& spec) {
    std::ifstream s(path.string() + ".scale");
    if (!s) throw InputError("cannot open " + path.string() + ".scale");
    double vmax = 0.0;
    std::string key;
    while (s >> key) {
        double v;
        s >> v;
        if (key == "scale") vmax = v;
    }
    std::ifstream f(path, std::ios::binary);
    std::string magic;
    int nx = 0, np = 0, depth = 0;
    f >> magic >> nx >> np >> depth;
    f.get();
    if (!f || magic != "P6" || depth != 255) throw InputError("heatmap: not a P6 raster");
    if (nx != spec.nx || np != spec.np) throw InputError("heatmap: size does not match grid");
    WignerGrid w(spec);
    for (int k = np - 1; k >= 0; --k) {
        for (int j = 0; j < nx; ++j) {
            unsigned char px[3];
            if (!f.read(reinterpret_cast<char*>(px), 3)) throw InputError("heatmap: truncated raster");
            const int level = px[0] == 255 ? 255 - px[1] : -(255 - px[0]);
            w.at(j, k) = vmax * level / 255.0;
        }
    }
    return w;
}

}  // namespace kerr::cli
