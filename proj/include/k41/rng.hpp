#pragma once

#include <cstdint>

namespace k41::rng {

/// Counter-based deterministic stream: every value is a pure function of
/// (seed, counter words), so generation order and thread layout never
/// change results.
std::uint64_t hash_counter(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                           std::uint64_t c, std::uint64_t d);

/// Uniform double in [0,1) from a counter.
double uniform01(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                 std::uint64_t c, std::uint64_t d);

/// Standard normal pair via Box-Muller on two counter draws.
void gaussian_pair(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                   std::uint64_t c, std::uint64_t d, double* g0, double* g1);

}  // namespace k41::rng
