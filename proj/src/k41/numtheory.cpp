#include "k41/numtheory.hpp"

#include <cmath>
#include <stdexcept>

namespace k41::nt {

std::uint64_t isqrt64(std::uint64_t n) {
  if (n == 0) return 0;
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  // sqrt can be off by one ulp at 1e10+ scales; fix up exactly.
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

bool is_perfect_square(std::uint64_t n, std::uint64_t* root) {
  // quick residue filter: squares mod 64 take only 12 values
  static const bool sq_mod64[64] = {
      true,  true,  false, false, true,  false, false, false, false, true,
      false, false, false, false, false, false, true,  true,  false, false,
      false, false, false, false, false, true,  false, false, false, false,
      false, false, false, true,  false, false, true,  false, false, false,
      false, true,  false, false, false, false, false, false, false, true,
      false, false, false, false, false, false, false, true,  false, false,
      false, false, false, false};
  if (!sq_mod64[n & 63]) return false;
  std::uint64_t r = isqrt64(n);
  if (r * r != n) return false;
  if (root) *root = r;
  return true;
}

bool is_sum_of_three_squares(std::uint64_t n) {
  while ((n & 3u) == 0 && n != 0) n >>= 2;
  return (n & 7u) != 7u;
}

namespace {

// Orbit size of an ordered representation class 0 <= x <= y <= z under
// coordinate permutations and sign flips.
std::int64_t orbit_size(std::uint64_t x, std::uint64_t y, std::uint64_t z) {
  std::int64_t perms;
  if (x == y && y == z)
    perms = 1;
  else if (x == y || y == z)
    perms = 3;
  else
    perms = 6;
  int nonzero = (x != 0) + (y != 0) + (z != 0);
  return perms * (std::int64_t{1} << nonzero);
}

}  // namespace

std::int64_t r3(std::uint64_t n) {
  if (n == 0) return 1;
  if (!is_sum_of_three_squares(n)) return 0;
  std::int64_t count = 0;
  for (std::uint64_t x = 0; 3 * x * x <= n; ++x) {
    std::uint64_t rem_x = n - x * x;
    for (std::uint64_t y = x; 2 * y * y <= rem_x; ++y) {
      std::uint64_t rem = rem_x - y * y;
      std::uint64_t z;
      if (is_perfect_square(rem, &z)) {
        // loop bounds guarantee z >= y
        count += orbit_size(x, y, z);
      }
    }
  }
  return count;
}

double c_ratio_from_count(std::int64_t count, std::uint64_t n) {
  const double pi = 3.14159265358979323846;
  return static_cast<double>(count) /
         (8.0 * pi * pi * pi * std::sqrt(static_cast<double>(n)));
}

double c_ratio(std::uint64_t n) { return c_ratio_from_count(r3(n), n); }

Box3Table::Box3Table(std::uint64_t n_max) : n_max_(n_max) {
  bits_.assign(n_max / 64 + 1, 0);
  for (std::uint64_t n = 0; n <= n_max; ++n) {
    if (is_sum_of_three_squares(n)) bits_[n >> 6] |= (std::uint64_t{1} << (n & 63));
  }
}

void Box3Table::populate_r3() {
  if (!r3_.empty()) return;
  r3_.assign(n_max_ + 1, 0);
  for (std::uint64_t x = 0; 3 * x * x <= n_max_; ++x) {
    for (std::uint64_t y = x; x * x + 2 * y * y <= n_max_; ++y) {
      std::uint64_t base = x * x + y * y;
      for (std::uint64_t z = y; base + z * z <= n_max_; ++z) {
        r3_[base + z * z] += orbit_size(x, y, z);
      }
    }
  }
}

double shell_sum_ratio(std::uint64_t n, double rel_width, const Box3Table& table) {
  if (n < 1 || rel_width <= 0.0 || rel_width >= 1.0)
    throw std::invalid_argument("shell_sum_ratio: need n >= 1 and 0 < rel_width < 1");
  const double sn = std::sqrt(static_cast<double>(n));
  const double lo = (1.0 - rel_width) * sn;
  const double hi = (1.0 + rel_width) * sn;
  auto n_lo = static_cast<std::uint64_t>(std::ceil(lo * lo));
  auto n_hi = static_cast<std::uint64_t>(std::floor(hi * hi));
  if (n_hi > table.n_max())
    throw std::out_of_range("shell_sum_ratio: table too small for band");
  double sum = 0.0;
  for (std::uint64_t m = std::max<std::uint64_t>(n_lo, 1); m <= n_hi; ++m) {
    double sm = std::sqrt(static_cast<double>(m));
    if (std::abs(sm - sn) > rel_width * sn) continue;  // exact band check
    if (table.contains(m)) sum += 1.0 / sm;
  }
  return sum / (rel_width * sn);
}

double shell_sum_ratio_unrestricted(std::uint64_t n, double rel_width) {
  const double sn = std::sqrt(static_cast<double>(n));
  const double lo = (1.0 - rel_width) * sn;
  const double hi = (1.0 + rel_width) * sn;
  auto n_lo = static_cast<std::uint64_t>(std::ceil(lo * lo));
  auto n_hi = static_cast<std::uint64_t>(std::floor(hi * hi));
  double sum = 0.0;
  for (std::uint64_t m = std::max<std::uint64_t>(n_lo, 1); m <= n_hi; ++m) {
    double sm = std::sqrt(static_cast<double>(m));
    if (std::abs(sm - sn) > rel_width * sn) continue;
    sum += 1.0 / sm;
  }
  return sum / (rel_width * sn);
}

GapStats stokes_gap_stats(std::uint64_t n_max, double L) {
  if (n_max < 10) throw std::invalid_argument("stokes_gap_stats: n_max >= 10");
  const double two_pi = 2.0 * 3.14159265358979323846;
  GapStats g;
  g.min_sq_gap = 1e300;
  g.max_sq_gap = 0.0;
  std::uint64_t prev = 1;  // first nonzero element of Box3
  for (std::uint64_t n = 2; n <= n_max; ++n) {
    if (!is_sum_of_three_squares(n)) continue;
    // K_j^2 = (2 pi / L)^2 n, so (K_{j+1}^2 - K_j^2) L^2 = (2 pi)^2 (n - prev)
    double gap = two_pi * two_pi * static_cast<double>(n - prev);
    g.min_sq_gap = std::min(g.min_sq_gap, gap);
    g.max_sq_gap = std::max(g.max_sq_gap, gap);
    prev = n;
  }
  (void)L;  // gaps are reported pre-multiplied by L^2; L cancels
  return g;
}

std::pair<std::uint64_t, double> c_ratio_max_scan(std::uint64_t n_max) {
  Box3Table table(n_max);
  table.populate_r3();
  std::uint64_t best_n = 1;
  double best = 0.0;
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    if (!table.contains(n)) continue;
    double c = c_ratio_from_count(table.r3(n), n);
    if (c > best) {
      best = c;
      best_n = n;
    }
  }
  return {best_n, best};
}

}  // namespace k41::nt
