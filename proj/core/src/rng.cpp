#include "levydim/rng.hpp"

#include <cmath>

namespace levydim {

std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

std::uint64_t derive_child_seed(std::uint64_t master_seed, std::string_view task_path) {
    return splitmix64(master_seed ^ fnv1a64(task_path));
}

double RngStream::gaussian() {
    if (has_spare_gauss_) {
        has_spare_gauss_ = false;
        return spare_gauss_;
    }
    double u, v, s;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double fac = std::sqrt(-2.0 * std::log(s) / s);
    spare_gauss_ = v * fac;
    has_spare_gauss_ = true;
    return u * fac;
}

} // namespace levydim
