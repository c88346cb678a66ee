#include "k41/rng.hpp"

#include <cmath>

namespace k41::rng {

namespace {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t hash_counter(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                           std::uint64_t c, std::uint64_t d) {
  std::uint64_t h = splitmix64(seed ^ 0x243f6a8885a308d3ULL);
  h = splitmix64(h ^ a);
  h = splitmix64(h ^ b);
  h = splitmix64(h ^ c);
  h = splitmix64(h ^ d);
  return h;
}

double uniform01(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                 std::uint64_t c, std::uint64_t d) {
  // 53 high bits -> [0,1)
  return static_cast<double>(hash_counter(seed, a, b, c, d) >> 11) *
         (1.0 / 9007199254740992.0);
}

void gaussian_pair(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                   std::uint64_t c, std::uint64_t d, double* g0, double* g1) {
  const double pi = 3.14159265358979323846;
  double u1 = uniform01(seed, a, b, c, d);
  double u2 = uniform01(seed, a, b, c, d + 0x5bf0a8b1ULL);
  if (u1 < 1e-300) u1 = 1e-300;
  double r = std::sqrt(-2.0 * std::log(u1));
  *g0 = r * std::cos(2.0 * pi * u2);
  *g1 = r * std::sin(2.0 * pi * u2);
}

}  // namespace k41::rng
