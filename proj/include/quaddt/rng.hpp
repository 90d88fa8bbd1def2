#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace quaddt {

/// Small deterministic generator (splitmix64). Used instead of the std
/// distributions so that seeded outputs are byte-identical across standard
/// library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Uniform integer in [lo, hi], inclusive.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        const auto scaled = static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next()) * span) >> 64);
        return lo + static_cast<std::int64_t>(scaled);
    }

    bool coin() { return (next() & 1) != 0; }

    /// Box-Muller normal deviate (two raw draws per call).
    double gaussian(double mean, double sd) {
        const double u1 = static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;  // (0,1]
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        return mean + sd * r * std::cos(2.0 * std::numbers::pi * u2);
    }

private:
    std::uint64_t state_;
};

}  // namespace quaddt
