#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace k41::nt {

/// Integer square root, exact for all 64-bit inputs.
std::uint64_t isqrt64(std::uint64_t n);

/// True iff n is a perfect square; the root is written to *root when given.
bool is_perfect_square(std::uint64_t n, std::uint64_t* root = nullptr);

/// Gauss-Legendre three-squares criterion: n is a sum of three squares
/// iff n != 4^p (8q+7). Strips factors of 4, tests the residue mod 8.
bool is_sum_of_three_squares(std::uint64_t n);

/// Exact count of lattice points z in Z^3 with |z|^2 = n, signs and
/// permutations counted separately. Two nested loops over 0<=x<=y<=z
/// with an integer perfect-square test on the remainder; O(n) worst case.
/// For n ~ 1e10 expect minutes of runtime.
std::int64_t r3(std::uint64_t n);

/// r3(n) / (8 pi^3 sqrt(n)).
double c_ratio(std::uint64_t n);
double c_ratio_from_count(std::int64_t count, std::uint64_t n);

/// Membership table for the sum-of-three-squares set with lazily
/// populated representation counts. Bit array keeps 1e6-scale scans
/// in megabytes.
class Box3Table {
 public:
  explicit Box3Table(std::uint64_t n_max);

  std::uint64_t n_max() const { return n_max_; }
  bool contains(std::uint64_t n) const {
    return (bits_[n >> 6] >> (n & 63)) & 1u;
  }

  /// Fills the r3 array by enumerating 0<=x<=y<=z with x^2+y^2+z^2 <= n_max
  /// and accumulating orbit sizes. O(n_max^{3/2}) total.
  void populate_r3();
  bool r3_populated() const { return !r3_.empty(); }
  std::int64_t r3(std::uint64_t n) const { return r3_[n]; }

 private:
  std::uint64_t n_max_;
  std::vector<std::uint64_t> bits_;
  std::vector<std::int64_t> r3_;
};

/// Figure-1 style shell sum: (1/(rel_width*sqrt(n))) * sum of 1/sqrt(n')
/// over n' in Box3 with |sqrt(n') - sqrt(n)| <= rel_width*sqrt(n).
/// With rel_width = 1/10 this is the plotted quantity.
double shell_sum_ratio(std::uint64_t n, double rel_width, const Box3Table& table);

/// Same sum without the Box3 restriction (tends to 4 as n grows).
double shell_sum_ratio_unrestricted(std::uint64_t n, double rel_width);

struct GapStats {
  double min_sq_gap = 0.0;  // min over j of (K_{j+1}^2 - K_j^2) * L^2
  double max_sq_gap = 0.0;  // max of the same
};

/// Scans consecutive elements of the Stokes spectrum up to 2 pi L^{-1} sqrt(n_max).
/// By the mod-8 gap property max_sq_gap <= 3 (2 pi)^2 and min_sq_gap >= (2 pi)^2.
GapStats stokes_gap_stats(std::uint64_t n_max, double L);

/// Max of c_ratio over 1 <= n <= n_max; returns {argmax, max value}.
std::pair<std::uint64_t, double> c_ratio_max_scan(std::uint64_t n_max);

}  // namespace k41::nt
