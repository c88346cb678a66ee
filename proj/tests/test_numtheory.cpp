#include <cmath>
#include <cstdint>

#include "doctest.h"
#include "k41/numtheory.hpp"

using namespace k41;

namespace {

// independent oracle: full triple-loop enumeration of |z|^2 = n
std::int64_t r3_brute(std::int64_t n) {
  std::int64_t count = 0;
  std::int64_t s = static_cast<std::int64_t>(std::sqrt(double(n))) + 1;
  for (std::int64_t x = -s; x <= s; ++x)
    for (std::int64_t y = -s; y <= s; ++y)
      for (std::int64_t z = -s; z <= s; ++z)
        if (x * x + y * y + z * z == n) ++count;
  return count;
}

}  // namespace

TEST_CASE("three-squares membership") {
  CHECK(nt::is_sum_of_three_squares(0));
  CHECK(nt::is_sum_of_three_squares(3));
  CHECK_FALSE(nt::is_sum_of_three_squares(7));
  CHECK_FALSE(nt::is_sum_of_three_squares(112));  // 4^2 * 7
  CHECK(nt::is_sum_of_three_squares(1));
  CHECK(nt::is_sum_of_three_squares(2));
  CHECK_FALSE(nt::is_sum_of_three_squares(15));
  CHECK_FALSE(nt::is_sum_of_three_squares(4ull * 4 * 4 * (8 * 11 + 7)));
}

TEST_CASE("r3 exact counts") {
  CHECK(nt::r3(0) == 1);
  CHECK(nt::r3(1) == 6);
  CHECK(nt::r3(2) == 12);
  CHECK(nt::r3(7) == 0);
  for (std::uint64_t n : {3ull, 4ull, 5ull, 9ull, 16ull, 25ull, 33ull, 169ull, 1000ull})
    CHECK(nt::r3(n) == r3_brute(static_cast<std::int64_t>(n)));
}

TEST_CASE("membership equals positivity of r3 up to 1e4") {
  nt::Box3Table table(10000);
  table.populate_r3();
  for (std::uint64_t n = 0; n <= 10000; ++n) {
    if (table.contains(n) != (table.r3(n) > 0)) {
      CAPTURE(n);
      CHECK(table.contains(n) == (table.r3(n) > 0));
      return;
    }
  }
  CHECK(true);
  // sieve agrees with the two-loop routine on a sample
  for (std::uint64_t n : {17ull, 100ull, 4096ull, 9999ull})
    CHECK(table.r3(n) == nt::r3(n));
}

TEST_CASE("r3(4n) == r3(n) for n <= 1e3") {
  nt::Box3Table table(4000);
  table.populate_r3();
  for (std::uint64_t n = 1; n <= 1000; ++n) {
    if (table.r3(4 * n) != table.r3(n)) {
      CAPTURE(n);
      CHECK(table.r3(4 * n) == table.r3(n));
      return;
    }
  }
  CHECK(true);
}

TEST_CASE("gap property: Box3 hits every {n+1..n+3} window, scan to 1e6") {
  nt::Box3Table table(1000000 + 3);
  for (std::uint64_t n = 0; n <= 1000000; ++n) {
    if (!table.contains(n)) continue;
    bool hit = table.contains(n + 1) || table.contains(n + 2) || table.contains(n + 3);
    if (!hit) {
      CAPTURE(n);
      CHECK(hit);
      return;
    }
  }
  CHECK(true);
}

TEST_CASE("lattice point count: sum r3(n) ~ (4 pi / 3) N^{3/2}") {
  const std::uint64_t N = 100000;
  nt::Box3Table table(N);
  table.populate_r3();
  long double sum = 0;
  for (std::uint64_t n = 0; n <= N; ++n) sum += table.r3(n);
  const double pi = 3.14159265358979323846;
  double expected = 4.0 * pi / 3.0 * std::pow(double(N), 1.5);
  CHECK(std::abs(double(sum) / expected - 1.0) < 0.02);
}

TEST_CASE("c_ratio basics") {
  CHECK(nt::c_ratio(7) == 0.0);
  // r3(1) = 6: C(1) = 6 / (8 pi^3)
  const double pi = 3.14159265358979323846;
  CHECK(nt::c_ratio(1) == doctest::Approx(6.0 / (8.0 * pi * pi * pi)));
  auto [n_at, cmax] = nt::c_ratio_max_scan(10000);
  CHECK(cmax < 0.1);
  CHECK(cmax > 0.0);
  CHECK(nt::c_ratio(n_at) == doctest::Approx(cmax));
}

TEST_CASE("shell_sum_ratio matches direct enumeration") {
  nt::Box3Table table(20000);
  // independent re-derivation at n = 100, rel 0.1: band n' in [81, 121]
  double sum = 0.0;
  for (std::uint64_t m = 81; m <= 121; ++m) {
    if (std::abs(std::sqrt(double(m)) - 10.0) > 1.0) continue;
    if (nt::is_sum_of_three_squares(m)) sum += 1.0 / std::sqrt(double(m));
  }
  double expect = sum / (0.1 * 10.0);
  CHECK(nt::shell_sum_ratio(100, 0.1, table) == doctest::Approx(expect));
  // n = 2: band holds only n' = 2, ratio = 10/2 = 5
  CHECK(nt::shell_sum_ratio(2, 0.1, table) == doctest::Approx(5.0));
  // unrestricted sum tends to 4
  CHECK(nt::shell_sum_ratio_unrestricted(10000, 0.1) == doctest::Approx(4.0).epsilon(0.02));
}

TEST_CASE("stokes gap stats") {
  const double pi = 3.14159265358979323846;
  auto g1 = nt::stokes_gap_stats(100, 1.0);
  CHECK(g1.max_sq_gap <= 3.0 * 4.0 * pi * pi + 1e-9);
  CHECK(g1.min_sq_gap == doctest::Approx(4.0 * pi * pi));
  // reported gaps are L^2-normalized, so L drops out
  auto g2 = nt::stokes_gap_stats(10000, 2.0);
  CHECK(g2.min_sq_gap == doctest::Approx(g1.min_sq_gap));
  CHECK(g2.max_sq_gap <= 3.0 * 4.0 * pi * pi + 1e-9);
}
