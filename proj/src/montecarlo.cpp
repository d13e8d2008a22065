#include "affine/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace affine {
namespace {

constexpr std::uint32_t kMult0 = 0xD2511F53u;
constexpr std::uint32_t kMult1 = 0xCD9E8D57u;
constexpr std::uint32_t kBump0 = 0x9E3779B9u;
constexpr std::uint32_t kBump1 = 0xBB67AE85u;
constexpr double kTwoPi = 6.283185307179586;

inline void mul_hi_lo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi,
                      std::uint32_t& lo) {
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

}  // namespace

std::array<std::uint32_t, 4> Philox4x32::apply(
    std::array<std::uint32_t, 4> counter, std::array<std::uint32_t, 2> key) {
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            key[0] += kBump0;
            key[1] += kBump1;
        }
        std::uint32_t hi0, lo0, hi1, lo1;
        mul_hi_lo(kMult0, counter[0], hi0, lo0);
        mul_hi_lo(kMult1, counter[2], hi1, lo1);
        counter = {hi1 ^ counter[1] ^ key[0], lo1, hi0 ^ counter[3] ^ key[1],
                   lo0};
    }
    return counter;
}

Philox4x32::Philox4x32(std::uint64_t seed, std::uint64_t stream)
    : key_{static_cast<std::uint32_t>(seed),
           static_cast<std::uint32_t>(seed >> 32)},
      stream_lo_(static_cast<std::uint32_t>(stream)),
      stream_hi_(static_cast<std::uint32_t>(stream >> 32)) {}

void Philox4x32::refill() {
    buf_ = apply({static_cast<std::uint32_t>(block_),
                  static_cast<std::uint32_t>(block_ >> 32), stream_lo_,
                  stream_hi_},
                 key_);
    ++block_;
    pos_ = 0;
}

std::uint32_t Philox4x32::next_u32() {
    if (pos_ == 4) refill();
    return buf_[pos_++];
}

std::uint64_t Philox4x32::next_u64() {
    const std::uint64_t lo = next_u32();
    const std::uint64_t hi = next_u32();
    return lo | (hi << 32);
}

double Philox4x32::uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double sample_normal(Philox4x32& rng) {
    const double u1 = rng.uniform();
    const double u2 = rng.uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

double sample_exponential(Philox4x32& rng, double rate) {
    return -std::log(rng.uniform()) / rate;
}

double sample_gamma(Philox4x32& rng, double shape, double scale) {
    if (!(shape > 0.0) || !(scale > 0.0))
        throw DomainError("gamma sampler needs positive shape and scale");
    // Marsaglia-Tsang squeeze; shapes below one are boosted then thinned.
    double boost = 1.0;
    if (shape < 1.0) {
        boost = std::pow(rng.uniform(), 1.0 / shape);
        shape += 1.0;
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = sample_normal(rng);
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = rng.uniform();
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) return boost * d * v * scale;
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v)))
            return boost * d * v * scale;
    }
}

std::uint64_t sample_poisson(Philox4x32& rng, double mean) {
    if (!(mean >= 0.0) || !std::isfinite(mean))
        throw DomainError("Poisson sampler needs a finite nonnegative mean");
    // product method per chunk; chunking keeps exp(-mean) well above
    // the underflow threshold
    std::uint64_t total = 0;
    while (mean > 0.0) {
        const double chunk = std::min(mean, 300.0);
        mean -= chunk;
        const double limit = std::exp(-chunk);
        double p = 1.0;
        std::uint64_t k = 0;
        do {
            ++k;
            p *= rng.uniform();
        } while (p > limit);
        total += k - 1;
    }
    return total;
}

namespace {

// exact transition of the square-root diffusion over dt: a scaled
// noncentral chi-square, drawn as a Poisson mixture of gammas
double cir_step(Philox4x32& rng, double r, double a, double theta,
                double sigma, double dt) {
    const double decay = std::exp(-a * dt);
    const double scale = sigma * sigma * (1.0 - decay) / (4.0 * a);
    const double dof = 4.0 * a * theta / (sigma * sigma);
    const double noncentrality = r * decay / scale;
    const std::uint64_t n = sample_poisson(rng, noncentrality / 2.0);
    return scale * sample_gamma(rng, dof / 2.0 + static_cast<double>(n), 2.0);
}

struct PathSampler {
    double r0;
    double horizon;
    Philox4x32& rng;

    double operator()(const Vasicek& m) const {
        const double decay = std::exp(-m.lambda * horizon);
        const double sd = m.sigma * std::sqrt((1.0 - decay * decay) /
                                              (2.0 * m.lambda));
        return m.theta + (r0 - m.theta) * decay + sd * sample_normal(rng);
    }

    double operator()(const CIR& m) const {
        return cir_step(rng, r0, m.a, m.theta, m.sigma, horizon);
    }

    double operator()(const JCIR& m) const {
        const std::uint64_t n = sample_poisson(rng, m.c * horizon);
        std::vector<double> times(n);
        for (double& t : times) t = horizon * rng.uniform();
        std::sort(times.begin(), times.end());
        double r = r0;
        double prev = 0.0;
        for (double t : times) {
            if (t > prev) r = cir_step(rng, r, m.a, m.theta, m.sigma, t - prev);
            r += sample_exponential(rng, m.nu);
            prev = t;
        }
        if (horizon > prev)
            r = cir_step(rng, r, m.a, m.theta, m.sigma, horizon - prev);
        return r;
    }

    double operator()(const GammaOU& m) const {
        double r = r0 * std::exp(-m.lambda * horizon);
        const std::uint64_t n =
            sample_poisson(rng, m.lambda * m.k * horizon);
        // arrival times need not be sorted: the discounted sum is symmetric
        for (std::uint64_t j = 0; j < n; ++j) {
            const double tau = horizon * rng.uniform();
            r += std::exp(-m.lambda * (horizon - tau)) *
                 sample_exponential(rng, 1.0 / m.theta);
        }
        return r;
    }
};

}  // namespace

std::vector<double> simulate_terminal(const SimConfig& cfg,
                                      unsigned n_threads) {
    if (cfg.n_paths < 1) throw ParameterError("n_paths must be at least 1");
    if (!(cfg.horizon > 0.0) || !std::isfinite(cfg.horizon))
        throw ParameterError("horizon must be positive and finite");
    const AffineParams affine = to_affine(cfg.model);
    if (!std::isfinite(cfg.r0) ||
        (affine.state_space == StateSpace::NonnegativeReals && cfg.r0 < 0.0))
        throw DomainError("initial rate outside the state space");

    std::vector<double> out(cfg.n_paths);
    auto run_range = [&cfg, &out](std::uint64_t lo, std::uint64_t hi) {
        for (std::uint64_t i = lo; i < hi; ++i) {
            Philox4x32 rng(cfg.seed, i);
            out[i] = std::visit(PathSampler{cfg.r0, cfg.horizon, rng},
                                cfg.model);
        }
    };

    unsigned workers = n_threads ? n_threads : std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
    if (workers > cfg.n_paths) workers = static_cast<unsigned>(cfg.n_paths);
    if (workers == 1) {
        run_range(0, cfg.n_paths);
        return out;
    }

    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::exception_ptr first_error;
    std::mutex error_mutex;
    const std::uint64_t base = cfg.n_paths / workers;
    const std::uint64_t rem = cfg.n_paths % workers;
    std::uint64_t lo = 0;
    for (unsigned w = 0; w < workers; ++w) {
        const std::uint64_t hi = lo + base + (w < rem ? 1 : 0);
        pool.emplace_back([&run_range, &first_error, &error_mutex, lo, hi] {
            try {
                run_range(lo, hi);
            } catch (...) {
                std::lock_guard<std::mutex> guard(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
        lo = hi;
    }
    for (std::thread& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
    return out;
}

LogMgfEstimate empirical_log_mgf(std::span<const double> sample, double u) {
    if (sample.empty()) throw ParameterError("empty sample");
    if (!std::isfinite(u) || u > 0.0)
        throw DomainError("log-mgf comparisons use u <= 0");
    if (u == 0.0) return {0.0, 0.0};

    const double n = static_cast<double>(sample.size());
    double mean = 0.0;
    for (double r : sample) mean += std::exp(u * r);
    mean /= n;
    double ss = 0.0;
    for (double r : sample) {
        const double d = std::exp(u * r) - mean;
        ss += d * d;
    }
    const double sd = sample.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
    return {std::log(mean), sd / (mean * std::sqrt(n))};
}

}  // namespace affine
