#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace specest {

// Counter-based generator: the state walks a fixed odd stride and every
// output is a finalizer hash of the counter (splitmix64 constants). Streams
// derived through split() are pairwise independent for distinct indices, so
// Monte-Carlo repetitions can run in any order or in parallel and still
// reproduce bit-identically. The constants are part of the output contract;
// do not change them.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    static std::uint64_t mix(std::uint64_t x) {
        x += 0x9E3779B97F4A7C15ULL;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
        return x ^ (x >> 31);
    }

    // Stream seed for sub-stream `index` of `master`.
    static std::uint64_t split(std::uint64_t master, std::uint64_t index) {
        return mix(master ^ mix(index ^ 0xA5A5A5A5A5A5A5A5ULL));
    }

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t x = state_;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
        return x ^ (x >> 31);
    }

    // Uniform on (0, 1]: zero never appears, so logs are safe.
    double next_unit() {
        return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller; the spare value is cached.
    double next_gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = next_unit();
        double u2 = next_unit();
        double radius = std::sqrt(-2.0 * std::log(u1));
        double angle = 2.0 * std::numbers::pi * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace specest
