#include "k41/oseen.hpp"

#include <cmath>
#include <stdexcept>

#include "k41/quadrature.hpp"

namespace k41::oseen {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

std::pair<double, double> velocity(double gamma, double nu, double t, double x,
                                   double y) {
  if (t <= 0.0) throw std::domain_error("oseen: t must be positive");
  const double s = std::sqrt(nu * t);
  const double xi = x / s, eta = y / s;
  const double r2 = xi * xi + eta * eta;
  double f;  // (1 - e^{-r^2/4}) / r^2, continuous at 0 with value 1/4
  if (r2 < 1e-8) {
    f = 0.25 - r2 / 32.0;
  } else {
    f = (1.0 - std::exp(-r2 / 4.0)) / r2;
  }
  const double c = gamma / (2.0 * kPi) * f / s;
  return {-eta * c, xi * c};
}

PlaneField sample_plane(double gamma, double nu, double t, int M) {
  PlaneField p;
  p.M = M;
  p.gamma = gamma;
  p.nu = nu;
  p.t = t;
  p.ux.assign(static_cast<std::size_t>(M) * M, 0.0);
  p.uy.assign(static_cast<std::size_t>(M) * M, 0.0);
  const double h = 2.0 / M;
  for (int i = 0; i < M; ++i) {
    double x = -1.0 + (i + 0.5) * h;  // cell centers
    for (int j = 0; j < M; ++j) {
      double y = -1.0 + (j + 0.5) * h;
      if (x * x + y * y >= 1.0) continue;
      auto [ux, uy] = velocity(gamma, nu, t, x, y);
      p.ux[static_cast<std::size_t>(i) * M + j] = ux;
      p.uy[static_cast<std::size_t>(i) * M + j] = uy;
    }
  }
  return p;
}

double cylinder_l1(const PlaneField& p) {
  const double cell = (2.0 / p.M) * (2.0 / p.M);
  quad::KahanSum s;
  for (std::size_t i = 0; i < p.ux.size(); ++i)
    s.add(std::sqrt(p.ux[i] * p.ux[i] + p.uy[i] * p.uy[i]));
  return s.value() * cell;  // height factor is 1
}

double cylinder_l2sq(const PlaneField& p) {
  const double cell = (2.0 / p.M) * (2.0 / p.M);
  quad::KahanSum s;
  for (std::size_t i = 0; i < p.ux.size(); ++i)
    s.add(p.ux[i] * p.ux[i] + p.uy[i] * p.uy[i]);
  return s.value() * cell;
}

double volume_on_window(double gamma, double nu, double t, int M, int n_time) {
  if (n_time < 2) throw std::invalid_argument("volume_on_window: n_time >= 2");
  // trapezoid over log-spaced times in [t/2, t]
  std::vector<double> times(n_time), l1sq(n_time), l2sq(n_time);
  const double lo = std::log(0.5 * t), hi = std::log(t);
  for (int i = 0; i < n_time; ++i) {
    times[i] = std::exp(lo + (hi - lo) * i / (n_time - 1));
    PlaneField p = sample_plane(gamma, nu, times[i], M);
    double l1 = cylinder_l1(p);
    l1sq[i] = l1 * l1;
    l2sq[i] = cylinder_l2sq(p);
  }
  double num = 0.0, den = 0.0;
  for (int i = 0; i + 1 < n_time; ++i) {
    double w = 0.5 * (times[i + 1] - times[i]);
    num += w * (l1sq[i] + l1sq[i + 1]);
    den += w * (l2sq[i] + l2sq[i + 1]);
  }
  return num / den;
}

double cylinder_volume() { return kPi; }

}  // namespace k41::oseen
