#pragma once

#include <array>
#include <functional>
#include <utility>
#include <vector>

#include "k41/field.hpp"
#include "k41/spectrum.hpp"

namespace k41::structfn {

/// Spectrum profiles for the second-order structure-function study.
///   ideal_53: K^{-5/3} on [1, R], 0 elsewhere.
///   real_53:  K^2 below 1, K^{-5/3} on [1, R], R^{-5/3} e^{-delta (K-R)} above.
///   tabulated: piecewise-linear (K, Edag) samples, trapezoid in K.
struct SpectrumProfile {
  enum class Kind { ideal_53, real_53, tabulated };
  Kind kind = Kind::ideal_53;
  double R = 1e3;
  double delta = 1e-3;
  std::vector<std::pair<double, double>> tab;

  static SpectrumProfile ideal(double R);
  static SpectrumProfile real(double R, double delta);
  static SpectrumProfile tabulated(std::vector<std::pair<double, double>> samples);

  double eval(double K) const;
  /// int Edag dK (total energy of the profile).
  double total_energy() const;
  /// int K^2 Edag dK.
  double second_moment() const;
};

/// S2(ell) = 4 pi int_0^inf (1 - sin(ell K)/(ell K)) Edag(K) dK via
/// oscillation-aware panel quadrature; the exponential tail of real_53
/// uses the closed form through the complex exponential integral.
double s2_from_spectrum(const SpectrumProfile& p, double ell);

/// Discrete analogue on the Stokes spectrum: 4 pi sum (1 - sinc(K ell))
/// Edag(K) mu({K}).
double s2_from_shells(const std::vector<spectrum::Shell>& shells, double ell);

/// ell d/d ell log S2 - 2/3 (central difference, h = 1e-3 in log ell).
double local_slope_precision(const SpectrumProfile& p, double ell);

struct ValidityWindow {
  double ell_lo = 0.0;
  double ell_hi = 0.0;
  bool empty = true;
  double decades() const;
};

/// Largest contiguous ell-interval where |local_slope_precision| <=
/// tol * (2/3), scanned on a log grid (ppd points per decade).
ValidityWindow validity_window(const SpectrumProfile& p, double tol,
                               double ell_min = 1e-4, double ell_max = 10.0,
                               int ppd = 40);

/// Radial Fourier pair: lambda^2 G(lambda) = 4 pi int F(r) S(r lambda) dr
/// and r^2 F(r) = (1/2 pi^2) int G(l) S(r l) dl, S(s) = s sin s.
double radial_fourier(const std::function<double(double)>& F, double lambda,
                      double r_max);
double radial_fourier_inverse(const std::function<double(double)>& G, double r,
                              double lambda_max);

/// chi_delta(K) = K^{-1} e^{-delta K} / log^2(2 + K).
double corrector_chi(double delta, double K);

struct CorrectorFit {
  double prefactor = 0.0;    // c in c K^{-5/3}, log-log LSQ over [1, 1/delta]
  double max_rel_err = 0.0;  // max |chi/(c K^{-5/3}) - 1| on the fit range
  double decades = 0.0;      // width of the contiguous 25%-agreement window
  double window_lo = 0.0;
  double window_hi = 0.0;
};

CorrectorFit corrector_fit(double delta);

/// Direct-space structure function of order p in {2,3} on a periodic grid.
/// Shifts are exact (Fourier phase factors); directions come from a
/// deterministic spherical set (6/12/32 point designs, Fibonacci otherwise).
/// Returns the sphere-integrated value: int_{S^2} <...>_x dtheta.
/// p = 2: rho/2 |u(x+l theta) - u(x)|^2 ; p = 3: ((u(x+l theta)-u(x)).theta)^3 * rho-free
double s_p_direct(const field::SpectralField& f, double ell, int p, int n_dirs);

/// The deterministic direction set used by s_p_direct.
std::vector<std::array<double, 3>> direction_set(int n_dirs);

}  // namespace k41::structfn
