#include <cmath>
#include <complex>

#include "doctest.h"
#include "k41/quadrature.hpp"

using namespace k41;

TEST_CASE("gauss16 integrates smooth functions") {
  // degree-31 exactness covers any polynomial we throw at it
  auto f = [](double x) { return 5 * x * x * x * x - 2 * x + 1; };
  CHECK(quad::gauss16(f, -1.0, 2.0) == doctest::Approx(33.0 / 1.0 - 0.0).epsilon(1e-13));
  double exact = std::exp(1.0) - 1.0;
  CHECK(quad::gauss16([](double x) { return std::exp(x); }, 0.0, 1.0) ==
        doctest::Approx(exact).epsilon(1e-14));
}

TEST_CASE("oscillatory panels resolve sin") {
  double v = quad::integrate_oscillatory([](double x) { return std::sin(x); },
                                         0.0, 40.0 * 3.14159265358979323846,
                                         3.14159265358979323846);
  CHECK(std::abs(v) < 1e-12);
  double w = quad::integrate_oscillatory(
      [](double x) { return std::sin(10.0 * x) * std::sin(10.0 * x); }, 0.0,
      2.0 * 3.14159265358979323846, 3.14159265358979323846 / 10.0);
  CHECK(w == doctest::Approx(3.14159265358979323846).epsilon(1e-12));
}

TEST_CASE("complex exponential integral vs quadrature oracle") {
  // E1(z) = int_1^inf e^{-z t} / t dt
  auto oracle = [](std::complex<double> z) {
    std::complex<double> acc{0.0, 0.0};
    // integrate far enough that e^{-Re z * T} is negligible
    double T = 1.0 + 60.0 / z.real();
    int n = 40000;
    double h = (T - 1.0) / n;
    for (int i = 0; i < n; ++i) {
      double a = 1.0 + i * h, b = a + h;
      // Simpson per panel
      auto f = [&](double t) { return std::exp(-z * t) / t; };
      acc += h / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b));
    }
    return acc;
  };
  for (std::complex<double> z :
       {std::complex<double>{2.0, 0.0}, {0.5, 1.0}, {1.0, -3.0}, {3.0, 8.0}, {6.0, -2.0}}) {
    auto got = quad::exp_e1(z);
    auto want = oracle(z);
    CHECK(std::abs(got - want) < 1e-8 * (1.0 + std::abs(want)));
  }
  // real value cross-check (Abramowitz & Stegun table): E1(1) = 0.2193839344
  CHECK(quad::exp_e1({1.0, 0.0}).real() == doctest::Approx(0.21938393439552).epsilon(1e-10));
  CHECK(quad::exp_e1({2.0, 0.0}).real() == doctest::Approx(0.04890051070806).epsilon(1e-10));
}

TEST_CASE("series/continued-fraction branches agree at the switch") {
  for (double im : {-2.0, 0.5, 3.5}) {
    auto a = quad::exp_e1({3.9, im});
    auto b = quad::exp_e1({4.1, im});
    // smooth function: neighbors differ by O(derivative * 0.2)
    CHECK(std::abs(a - b) < 0.2 * std::abs(a) + 0.05);
  }
}

TEST_CASE("kahan sum keeps grouped reductions consistent") {
  quad::KahanSum a;
  double plain = 0.0;
  for (int i = 0; i < 1000000; ++i) {
    double x = 1e-8 * ((i % 17) - 8) + 1.0;
    a.add(x);
    plain += x;
  }
  CHECK(a.value() == doctest::Approx(plain).epsilon(1e-9));
}
