// Binary-labelled datasets and the two-component Gaussian-mixture generator.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "levydim/rng.hpp"

namespace levydim {

struct Dataset {
    int dim = 0;
    std::vector<double> features; // n x dim, row-major
    std::vector<int> labels;      // entries in {-1, +1}
    std::string provenance;       // generator spec, human-readable
    std::uint64_t seed = 0;

    std::size_t size() const { return labels.size(); }

    std::span<const double> row(std::size_t i) const {
        return {features.data() + i * static_cast<std::size_t>(dim),
                static_cast<std::size_t>(dim)};
    }
};

// Two-class Gaussian mixture: y ~ uniform on {-1, +1}; the class means
// m_{-1}, m_{+1} ~ N(0, 25 I_d) are drawn once per dataset and
// x | y ~ N(m_y, 100 I_d).
Dataset gen_mixture_dataset(int d, std::size_t n, RngStream& rng);

// Uniform draw of n indices from {0, ..., total-1} without replacement, in
// draw order (partial Fisher-Yates).
std::vector<std::size_t> sample_indices(std::size_t total, std::size_t n, RngStream& rng);

// Uniform subsample of n rows without replacement (row order is the draw
// order, not the source order).
Dataset sample_subset(const Dataset& data, std::size_t n, RngStream& rng);

// Columnar binary format mirroring the trajectory files: little-endian f64
// header {dim, n, seed}, then n rows of dim features followed by the label.
void save_dataset(const Dataset& data, const std::string& path);
Dataset load_dataset(const std::string& path);

// CSV with header "x0,...,x{d-1},y".
void write_dataset_csv(const Dataset& data, std::ostream& os);

} // namespace levydim
