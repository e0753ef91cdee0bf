#pragma once

// Portable seeded random source.
//
// Engine: std::mt19937_64 seeded with the 64-bit seed directly. Its output
// sequence is fixed by the C++ standard, so it is reproducible across
// platforms. The standard distributions are not, so the transforms below are
// written out:
//
//   uniform01()  = (x >> 11) * 2^-53                          in [0, 1)
//   normal()     = Box-Muller, cosine branch only:
//                  u1 = 1 - uniform01(), u2 = uniform01()
//                  z  = sqrt(-2 ln u1) * cos(2 pi u2)
//
// Each normal() consumes exactly two engine outputs.

#include <cstdint>
#include <random>

namespace schedlat {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }
    double uniform01();
    double uniform(double lo, double hi);
    double normal();

private:
    std::mt19937_64 engine_;
};

} // namespace schedlat
