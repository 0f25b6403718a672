// Counter-based random number generation for reproducible parallel Monte
// Carlo. The engine is Philox4x32-10 (key = 64-bit user seed, counter =
// 64-bit stream id and 64-bit block index), so realization i draws from the
// stream (seed, i) and results are identical whether realizations run
// serially, in parallel, or in any order. All samplers are implemented here
// rather than via <random> distributions, whose output is
// implementation-defined.
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace beamplan {

/// One block of the Philox4x32-10 bijection.
inline std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                               std::array<std::uint32_t, 2> key) {
    constexpr std::uint32_t kMul0 = 0xD2511F53u;
    constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
    constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
    constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

    auto round = [](std::array<std::uint32_t, 4> c, std::array<std::uint32_t, 2> k) {
        std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * c[0];
        std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * c[2];
        std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
        std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
        std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
        std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
        return std::array<std::uint32_t, 4>{hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    };

    counter = round(counter, key);
    for (int i = 1; i < 10; ++i) {
        key[0] += kWeyl0;
        key[1] += kWeyl1;
        counter = round(counter, key);
    }
    return counter;
}

/// Independent random stream (seed, stream_id) with the samplers Monte
/// Carlo needs. Copyable value type; draw order is part of the contract.
class RandomStream {
  public:
    RandomStream(std::uint64_t seed, std::uint64_t stream_id)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          stream_lo_(static_cast<std::uint32_t>(stream_id)),
          stream_hi_(static_cast<std::uint32_t>(stream_id >> 32)) {}

    std::uint64_t next_u64() {
        if (buffer_pos_ >= 2) refill();
        return buffer_[buffer_pos_++];
    }

    /// Uniform double in [0, 1), 53-bit resolution.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform01(); }

    /// Exponential with the given mean; uses 1-u so the log argument is in (0, 1].
    double exponential(double mean) { return -mean * std::log1p(-uniform01()); }

    /// Standard normal via Box-Muller (second deviate cached).
    double normal() {
        if (has_cached_normal_) {
            has_cached_normal_ = false;
            return cached_normal_;
        }
        double u1 = 1.0 - uniform01();
        double u2 = uniform01();
        double radius = std::sqrt(-2.0 * std::log(u1));
        double angle = 2.0 * 3.14159265358979323846 * u2;
        cached_normal_ = radius * std::sin(angle);
        has_cached_normal_ = true;
        return radius * std::cos(angle);
    }

    /// Gamma(shape, scale) via Marsaglia-Tsang squeeze; shape < 1 boosted
    /// through Gamma(shape + 1) * U^(1/shape).
    double gamma(double shape, double scale) {
        if (!(shape > 0.0) || !(scale > 0.0))
            throw std::domain_error("gamma parameters must be positive");
        if (shape < 1.0) {
            double u = 1.0 - uniform01();
            return gamma(shape + 1.0, scale) * std::pow(u, 1.0 / shape);
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        while (true) {
            double x = normal();
            double t = 1.0 + c * x;
            if (t <= 0.0) continue;
            double v = t * t * t;
            double u = 1.0 - uniform01();
            double x2 = x * x;
            if (u < 1.0 - 0.0331 * x2 * x2) return d * v * scale;
            if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v * scale;
        }
    }

  private:
    void refill() {
        auto block = philox4x32({static_cast<std::uint32_t>(block_index_),
                                 static_cast<std::uint32_t>(block_index_ >> 32), stream_lo_,
                                 stream_hi_},
                                key_);
        buffer_[0] = (static_cast<std::uint64_t>(block[1]) << 32) | block[0];
        buffer_[1] = (static_cast<std::uint64_t>(block[3]) << 32) | block[2];
        buffer_pos_ = 0;
        ++block_index_;
    }

    std::array<std::uint32_t, 2> key_;
    std::uint32_t stream_lo_, stream_hi_;
    std::uint64_t block_index_ = 0;
    std::array<std::uint64_t, 2> buffer_{};
    int buffer_pos_ = 2;
    double cached_normal_ = 0.0;
    bool has_cached_normal_ = false;
};

}  // namespace beamplan
