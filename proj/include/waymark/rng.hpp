#pragma once

#include <cstdint>
#include <random>

namespace waymark
{

/// Seeded generator with a fully specified output sequence: the engine is
/// std::mt19937_64 and the uniform and Gaussian transforms are implemented
/// here rather than left to the standard library's distributions.
class Rng
{
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1) with 53 random bits.
    double uniform();
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Standard normal via Box-Muller; the second variate is cached.
    double gaussian();
    double gaussian(double stddev) { return stddev * gaussian(); }

private:
    std::mt19937_64 engine_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

} // namespace waymark
