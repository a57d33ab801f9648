#include "levydim/dataset.hpp"

#include <bit>
#include <cmath>
#include <fstream>
#include <numeric>
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
    if (!is) throw std::runtime_error("dataset: unexpected end of file");
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) {
        bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(b[i])) << (8 * i);
    }
    return std::bit_cast<double>(bits);
}

} // namespace

Dataset gen_mixture_dataset(int d, std::size_t n, RngStream& rng) {
    if (d < 1) throw std::invalid_argument("dataset: feature dimension must be >= 1");
    if (n < 1) throw std::invalid_argument("dataset: need at least one sample");

    const auto ud = static_cast<std::size_t>(d);
    std::vector<double> mean_neg(ud), mean_pos(ud);
    for (double& m : mean_neg) m = 5.0 * rng.gaussian();
    for (double& m : mean_pos) m = 5.0 * rng.gaussian();

    Dataset data;
    data.dim = d;
    data.seed = rng.seed();
    data.provenance = "mixture(d=" + std::to_string(d) + ",n=" + std::to_string(n) + ")";
    data.features.resize(n * ud);
    data.labels.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const int y = rng.uniform() < 0.5 ? -1 : 1;
        data.labels[i] = y;
        const auto& mean = y < 0 ? mean_neg : mean_pos;
        double* row = data.features.data() + i * ud;
        for (std::size_t c = 0; c < ud; ++c) row[c] = mean[c] + 10.0 * rng.gaussian();
    }
    return data;
}

std::vector<std::size_t> sample_indices(std::size_t total, std::size_t n, RngStream& rng) {
    if (n < 1 || n > total) {
        throw std::invalid_argument("dataset: subset size out of range");
    }
    std::vector<std::size_t> idx(total);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    // partial Fisher-Yates: first n entries are a uniform sample w/o replacement
    for (std::size_t j = 0; j < n; ++j) {
        const auto r = j + rng.uniform_index(total - j);
        std::swap(idx[j], idx[r]);
    }
    idx.resize(n);
    return idx;
}

Dataset sample_subset(const Dataset& data, std::size_t n, RngStream& rng) {
    const std::vector<std::size_t> idx = sample_indices(data.size(), n, rng);

    Dataset sub;
    sub.dim = data.dim;
    sub.seed = rng.seed();
    sub.provenance = data.provenance + ";subset(n=" + std::to_string(n) + ")";
    const auto ud = static_cast<std::size_t>(data.dim);
    sub.features.resize(n * ud);
    sub.labels.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        const auto src = idx[j];
        sub.labels[j] = data.labels[src];
        const auto row = data.row(src);
        std::copy(row.begin(), row.end(), sub.features.begin() + j * ud);
    }
    return sub;
}

void save_dataset(const Dataset& data, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("dataset: cannot open " + path + " for writing");
    put_f64_le(os, static_cast<double>(data.dim));
    put_f64_le(os, static_cast<double>(data.size()));
    put_f64_le(os, static_cast<double>(data.seed));
    for (std::size_t i = 0; i < data.size(); ++i) {
        for (double x : data.row(i)) put_f64_le(os, x);
        put_f64_le(os, static_cast<double>(data.labels[i]));
    }
    if (!os) throw std::runtime_error("dataset: write to " + path + " failed");
}

Dataset load_dataset(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("dataset: cannot open " + path);
    const double dim_f = get_f64_le(is);
    const double n_f = get_f64_le(is);
    Dataset data;
    data.seed = static_cast<std::uint64_t>(get_f64_le(is));
    if (!(dim_f >= 1.0) || dim_f != std::floor(dim_f) || !(n_f >= 1.0) || n_f != std::floor(n_f)) {
        throw std::runtime_error("dataset: corrupt header in " + path);
    }
    data.dim = static_cast<int>(dim_f);
    const auto n = static_cast<std::size_t>(n_f);
    const auto ud = static_cast<std::size_t>(data.dim);
    data.provenance = "file(" + path + ")";
    data.features.resize(n * ud);
    data.labels.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t c = 0; c < ud; ++c) data.features[i * ud + c] = get_f64_le(is);
        const double y = get_f64_le(is);
        if (y != 1.0 && y != -1.0) {
            throw std::runtime_error("dataset: label outside {-1,+1} in " + path);
        }
        data.labels[i] = static_cast<int>(y);
    }
    return data;
}

void write_dataset_csv(const Dataset& data, std::ostream& os) {
    std::vector<std::string> row;
    row.reserve(static_cast<std::size_t>(data.dim) + 1);
    for (int c = 0; c < data.dim; ++c) row.push_back("x" + std::to_string(c));
    row.push_back("y");
    write_csv_row(os, row);
    for (std::size_t i = 0; i < data.size(); ++i) {
        row.clear();
        for (double x : data.row(i)) row.push_back(format_double(x));
        row.push_back(std::to_string(data.labels[i]));
        write_csv_row(os, row);
    }
}

} // namespace levydim
