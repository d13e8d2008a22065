#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "affine/models.hpp"

namespace affine {

// Counter-based generator (Philox 4x32, 10 rounds). Each (seed, stream) pair
// is an independent substream, so per-path streams keyed by path index give
// results that do not depend on how paths are split across threads.
class Philox4x32 {
 public:
    Philox4x32(std::uint64_t seed, std::uint64_t stream);

    std::uint32_t next_u32();
    std::uint64_t next_u64();
    // strictly inside (0, 1), safe to pass to log()
    double uniform();

    // one keyed block cipher application, exposed for known-answer checks
    static std::array<std::uint32_t, 4> apply(
        std::array<std::uint32_t, 4> counter, std::array<std::uint32_t, 2> key);

 private:
    void refill();

    std::array<std::uint32_t, 2> key_;
    std::uint64_t block_ = 0;
    std::uint32_t stream_lo_ = 0;
    std::uint32_t stream_hi_ = 0;
    std::array<std::uint32_t, 4> buf_{};
    int pos_ = 4;
};

double sample_normal(Philox4x32& rng);
double sample_exponential(Philox4x32& rng, double rate);
double sample_gamma(Philox4x32& rng, double shape, double scale);
std::uint64_t sample_poisson(Philox4x32& rng, double mean);

struct SimConfig {
    NamedModel model;
    double r0 = 0.0;
    double horizon = 0.0;
    std::uint64_t n_paths = 0;
    std::uint64_t seed = 0;
};

// Terminal short rates from exact transition sampling (no discretization
// bias). n_threads = 0 uses the hardware concurrency; the output is
// bit-identical for every thread count.
std::vector<double> simulate_terminal(const SimConfig& cfg,
                                      unsigned n_threads = 0);

struct LogMgfEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
};

// log of the sample mean of exp(u r) with a delta-method standard error
LogMgfEstimate empirical_log_mgf(std::span<const double> sample, double u);

}  // namespace affine
