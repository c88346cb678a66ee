#pragma once

#include <complex>
#include <functional>

namespace k41::quad {

/// Compensated (Kahan) accumulator; keeps grouped reductions agreeing
/// to ~1e-15 relative regardless of term count.
class KahanSum {
 public:
  void add(double x) {
    double y = x - c_;
    double t = s_ + y;
    c_ = (t - s_) - y;
    s_ = t;
  }
  double value() const { return s_; }

 private:
  double s_ = 0.0;
  double c_ = 0.0;
};

/// 16-point Gauss-Legendre rule on [a,b].
double gauss16(const std::function<double(double)>& f, double a, double b);

/// Splits [a,b] into n equal panels, 16-point GL each, compensated sum.
double integrate_panels(const std::function<double(double)>& f, double a,
                        double b, int n_panels);

/// Integrates f over [a,b] with panel width <= max_width (at least
/// min_panels panels). Meant for oscillatory integrands: pass
/// max_width = pi/ell to resolve each half-period of sin(ell K).
double integrate_oscillatory(const std::function<double(double)>& f, double a,
                             double b, double max_width, int min_panels = 1);

/// Exponential integral E1(z) for complex z with Re z > 0.
/// Power series near the origin, modified Lentz continued fraction
/// otherwise.
std::complex<double> exp_e1(std::complex<double> z);

}  // namespace k41::quad
