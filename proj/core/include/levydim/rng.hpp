// Deterministic random streams with hierarchical seed derivation.
//
// All sampling primitives are hand-rolled on top of the raw mt19937_64
// output so that results are bit-identical across standard libraries
// (std::uniform_real_distribution and friends are not portable).
#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace levydim {

// FNV-1a over the bytes of `s`.
std::uint64_t fnv1a64(std::string_view s);

// One round of the splitmix64 mixing function.
std::uint64_t splitmix64(std::uint64_t x);

// Child seed for a named subtask: splitmix64(master ^ fnv1a64(task_path)).
// Distinct paths give independent-looking streams; the derivation is pure,
// so re-running a single subtask reproduces its stream exactly.
std::uint64_t derive_child_seed(std::uint64_t master_seed, std::string_view task_path);

class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64() { return engine_(); }

    // Uniform on [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform on the open interval (0, 1); safe as a log/denominator argument.
    double uniform_open() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    // Uniform on [a, b).
    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    // Unbiased uniform draw from {0, ..., bound-1} by rejection.
    std::uint64_t uniform_index(std::uint64_t bound) {
        const std::uint64_t threshold = -bound % bound; // 2^64 mod bound
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x < threshold);
        return x % bound;
    }

    // Exp(1), strictly positive.
    double exponential() { return -std::log(uniform_open()); }

    // Standard normal via the Marsaglia polar method (pairs are cached).
    double gaussian();

    // Independent stream for a named subtask, derived from this stream's
    // base seed only (not its current state), so subtask order is irrelevant.
    RngStream child(std::string_view task_path) const {
        return RngStream(derive_child_seed(seed_, task_path));
    }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
    double spare_gauss_ = 0.0;
    bool has_spare_gauss_ = false;
};

} // namespace levydim
