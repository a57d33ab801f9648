#include "levydim/trajectory.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "levydim/csv.hpp"

namespace levydim {

namespace {

void put_f64_le(std::ostream& os, double x) {
    auto bits = std::bit_cast<std::uint64_t>(x);
    char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((bits >> (8 * i)) & 0xff);
    os.write(b, 8);
}

double get_f64_le(std::istream& is) {
    char b[8];
    is.read(b, 8);
    if (!is) throw std::runtime_error("trajectory: unexpected end of file");
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) {
        bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(b[i])) << (8 * i);
    }
    return std::bit_cast<double>(bits);
}

// Number of grid points (including t = 0) for the given step/horizon.
std::size_t grid_size(double step, double horizon) {
    if (!(step > 0.0) || !(horizon > 0.0)) return 0;
    const auto k = static_cast<std::size_t>(std::ceil(horizon / step - 1e-9));
    return k + 1;
}

} // namespace

void Trajectory::push_back(double t, std::span<const double> w) {
    if (static_cast<int>(w.size()) != dim) {
        throw std::invalid_argument("trajectory: point dimension mismatch");
    }
    times.push_back(t);
    points.insert(points.end(), w.begin(), w.end());
}

Trajectory interpolate(const Trajectory& traj, int resolution) {
    if (resolution < 1) {
        throw std::invalid_argument("interpolate: resolution must be >= 1");
    }
    if (traj.size() * static_cast<std::size_t>(traj.dim) != traj.points.size()) {
        throw std::invalid_argument("interpolate: inconsistent trajectory buffers");
    }
    Trajectory out;
    out.dim = traj.dim;
    out.step = traj.step / resolution;
    out.horizon = traj.horizon;
    out.seed = traj.seed;
    out.truncated = traj.truncated;
    if (traj.size() == 0) return out;

    const std::size_t n = traj.size();
    const auto d = static_cast<std::size_t>(traj.dim);
    out.times.reserve((n - 1) * static_cast<std::size_t>(resolution) + 1);
    out.points.reserve(out.times.capacity() * d);
    std::vector<double> buf(d);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double t0 = traj.times[i];
        const double t1 = traj.times[i + 1];
        const auto p0 = traj.point(i);
        const auto p1 = traj.point(i + 1);
        for (int j = 0; j < resolution; ++j) {
            const double frac = static_cast<double>(j) / resolution;
            if (j == 0) {
                out.push_back(t0, p0); // exact endpoint, no arithmetic
                continue;
            }
            for (std::size_t c = 0; c < d; ++c) {
                buf[c] = p0[c] + frac * (p1[c] - p0[c]);
            }
            out.push_back(t0 + frac * (t1 - t0), buf);
        }
    }
    out.push_back(traj.times[n - 1], traj.point(n - 1));
    return out;
}

void save_trajectory(const Trajectory& traj, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("trajectory: cannot open " + path + " for writing");
    put_f64_le(os, static_cast<double>(traj.dim));
    put_f64_le(os, static_cast<double>(traj.size()));
    put_f64_le(os, traj.step);
    put_f64_le(os, traj.horizon);
    put_f64_le(os, static_cast<double>(traj.seed));
    for (double x : traj.points) put_f64_le(os, x);
    if (!os) throw std::runtime_error("trajectory: write to " + path + " failed");
}

Trajectory load_trajectory(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("trajectory: cannot open " + path);
    const double dim_f = get_f64_le(is);
    const double count_f = get_f64_le(is);
    Trajectory traj;
    traj.step = get_f64_le(is);
    traj.horizon = get_f64_le(is);
    traj.seed = static_cast<std::uint64_t>(get_f64_le(is));
    if (!(dim_f >= 1.0) || dim_f != std::floor(dim_f)) {
        throw std::runtime_error("trajectory: corrupt header (dim) in " + path);
    }
    if (!(count_f >= 0.0) || count_f != std::floor(count_f)) {
        throw std::runtime_error("trajectory: corrupt header (count) in " + path);
    }
    traj.dim = static_cast<int>(dim_f);
    const auto count = static_cast<std::size_t>(count_f);
    traj.times.resize(count);
    for (std::size_t k = 0; k < count; ++k) {
        traj.times[k] = std::min(static_cast<double>(k) * traj.step, traj.horizon);
    }
    traj.points.resize(count * static_cast<std::size_t>(traj.dim));
    for (double& x : traj.points) x = get_f64_le(is);
    traj.truncated = count < grid_size(traj.step, traj.horizon);
    return traj;
}

void write_trajectory_csv(const Trajectory& traj, std::ostream& os) {
    std::vector<std::string> row;
    row.reserve(static_cast<std::size_t>(traj.dim) + 1);
    row.push_back("t");
    for (int c = 0; c < traj.dim; ++c) row.push_back("w" + std::to_string(c));
    write_csv_row(os, row);
    for (std::size_t i = 0; i < traj.size(); ++i) {
        row.clear();
        row.push_back(format_double(traj.times[i]));
        for (double x : traj.point(i)) row.push_back(format_double(x));
        write_csv_row(os, row);
    }
}

} // namespace levydim
