// Discrete-time trajectories in R^d and their (de)serialization.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace levydim {

struct Trajectory {
    int dim = 0;
    std::vector<double> times;
    std::vector<double> points; // row-major, times.size() * dim entries

    // provenance
    double step = 0.0;    // grid spacing used by the generator
    double horizon = 0.0; // requested end time
    std::uint64_t seed = 0;
    bool truncated = false; // generator stopped early (divergence cap)

    std::size_t size() const { return times.size(); }

    std::span<const double> point(std::size_t i) const {
        return {points.data() + i * static_cast<std::size_t>(dim),
                static_cast<std::size_t>(dim)};
    }

    void push_back(double t, std::span<const double> w);
};

// Refine each interval into `resolution` equal substeps by linear
// interpolation; endpoints are preserved exactly and resolution = 1 returns
// an identical copy.  Output size is (size() - 1) * resolution + 1.
Trajectory interpolate(const Trajectory& traj, int resolution);

// Binary format: a fixed header of five little-endian IEEE f64 values
//   {dim, point_count, step, horizon, seed}
// followed by point_count * dim little-endian f64 coordinates, row-major.
// Times are not stored; the loader rebuilds t_k = min(k * step, horizon).
// The seed survives the f64 round-trip only up to 2^53; it is provenance
// metadata, not load-bearing state.  A trajectory is flagged truncated on
// load when point_count is smaller than the grid implied by step/horizon.
void save_trajectory(const Trajectory& traj, const std::string& path);
Trajectory load_trajectory(const std::string& path);

// CSV with header "t,w0,...,w{d-1}".
void write_trajectory_csv(const Trajectory& traj, std::ostream& os);

} // namespace levydim
