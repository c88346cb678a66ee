#include "k41/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace k41::quad {

namespace {

// Abscissas/weights for 16-point Gauss-Legendre on [-1,1].
const double kGL16X[8] = {
    0.0950125098376374401853193, 0.2816035507792589132304605,
    0.4580167776572273863424194, 0.6178762444026437484466718,
    0.7554044083550030338951012, 0.8656312023878317438804679,
    0.9445750230732325760779884, 0.9894009349916499325961542};
const double kGL16W[8] = {
    0.1894506104550684962853967, 0.1826034150449235888667637,
    0.1691565193950025381893121, 0.1495959888165767320815017,
    0.1246289712555338720524763, 0.0951585116824927848099251,
    0.0622535239386478928628438, 0.0271524594117540948517806};

}  // namespace

double gauss16(const std::function<double(double)>& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double s = 0.0;
  for (int i = 0; i < 8; ++i) {
    s += kGL16W[i] * (f(mid + half * kGL16X[i]) + f(mid - half * kGL16X[i]));
  }
  return s * half;
}

double integrate_panels(const std::function<double(double)>& f, double a,
                        double b, int n_panels) {
  if (n_panels < 1) n_panels = 1;
  const double h = (b - a) / n_panels;
  KahanSum acc;
  for (int i = 0; i < n_panels; ++i) {
    acc.add(gauss16(f, a + i * h, a + (i + 1) * h));
  }
  return acc.value();
}

double integrate_oscillatory(const std::function<double(double)>& f, double a,
                             double b, double max_width, int min_panels) {
  if (b <= a) return 0.0;
  int n = min_panels;
  if (max_width > 0.0) {
    double need = std::ceil((b - a) / max_width);
    if (need > 2e8) throw std::runtime_error("integrate_oscillatory: panel budget exceeded");
    n = std::max<int>(n, static_cast<int>(need));
  }
  return integrate_panels(f, a, b, n);
}

std::complex<double> exp_e1(std::complex<double> z) {
  if (z.real() <= 0.0 && z.imag() == 0.0)
    throw std::domain_error("exp_e1: need Re z > 0 or z off the negative axis");
  const double euler = 0.57721566490153286060651209;
  if (std::abs(z) <= 4.0) {
    // E1(z) = -gamma - log z + sum_{k>=1} (-1)^{k+1} z^k / (k k!)
    std::complex<double> sum = 0.0;
    std::complex<double> term = 1.0;
    for (int k = 1; k <= 64; ++k) {
      term *= -z / static_cast<double>(k);
      std::complex<double> add = -term / static_cast<double>(k);
      sum += add;
      if (std::abs(add) < 1e-18 * (1.0 + std::abs(sum))) break;
    }
    return -euler - std::log(z) + sum;
  }
  // Modified Lentz continued fraction:
  // E1(z) = e^{-z} / (z + 1/(1 + 1/(z + 2/(1 + 2/(z + ...)))))
  const double tiny = 1e-300;
  std::complex<double> b = z + 1.0;
  std::complex<double> c = 1.0 / tiny;
  std::complex<double> d = 1.0 / b;
  std::complex<double> h = d;
  for (int i = 1; i <= 200; ++i) {
    double a = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    std::complex<double> del = c * d;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) break;
  }
  return h * std::exp(-z);
}

}  // namespace k41::quad
