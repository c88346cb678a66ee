#pragma once

#include <cstdint>
#include <vector>

#include "k41/field.hpp"

namespace k41::spectrum {

/// One shell of the discrete Stokes spectrum Sigma* = {2 pi L^-1 sqrt(n)}.
/// mu_weight is the atom mu({K}) = (2 pi L^-1)(2 pi / (K L)).
struct Shell {
  std::uint64_t n = 0;
  double K = 0.0;
  double Edag = 0.0;
  double mu_weight = 0.0;
};

/// E_dagger on the lattice shells of a field, keyed by exact integer n.
/// Shells are kept up to the largest one carrying energy (interior shells
/// with zero energy included).
struct ShellSpectrum {
  double L = 0.0;
  double mean_energy = 0.0;  // (int rho u dx)^2
  std::vector<Shell> shells;

  /// sum of Edag * mu over all shells (plus mean term = total energy).
  double integral_E() const;
  /// sum of K^2 Edag * mu (equals eps / (2 nu) for the source field).
  double integral_K2E() const;
};

/// Time-averaged spectrum plus the window scalars the analysis needs.
struct AveragedSpectrum {
  double L = 0.0;
  double nu = 0.0;
  double T0 = 0.0, T1 = 0.0;
  double Ebar = 0.0;         // mean energy
  double epsbar = 0.0;       // mean dissipation
  double mean_energy = 0.0;  // time average of (int rho u)^2
  double E0 = 0.0, E1 = 0.0;
  std::vector<Shell> shells;  // Edag = time-averaged E_dagger

  double integral_E() const;
  double integral_K2E() const;
};

/// E_dagger(K) = (2 pi)^-2 rho (K/L) sum_{|k|=K} |u_hat(k)|^2, shells
/// grouped by the exact integer n = (|k| L / 2 pi)^2.
ShellSpectrum spectrum_discrete(const field::SpectralField& f);

/// mu-weighted average of E_dagger over the band {kappa : |kappa - K| <= delta}
/// (the experimental value E*_delta). Throws std::runtime_error when the band
/// holds no shell of s; impossible for delta >= 3 (2 pi)^2 / (2 K L^2) by the
/// mod-8 gap property.
double shell_average(const std::vector<Shell>& shells, double K, double delta);

/// rho/(4 delta) L^-3 sum_{S_delta(K)} |u_hat|^2, the raw experimental
/// normalization; equals (band sum of Edag mu) / (4 delta).
double shell_band_raw(const std::vector<Shell>& shells, double K, double delta);

// ---------------------------------------------------------------------------
// smooth cutoff spectrum
// ---------------------------------------------------------------------------

/// The default C-infinity cutoff: chi = 1 for r <= 1/2, 0 for r >= 2,
/// and phi(1-s)/(phi(1-s)+phi(1+s)) with phi(x) = e^{-1/x}, s = log2(2r) - 1
/// in between. Published here so psi = -2 r chi chi' is reproducible.
double chi_default(double r);
double chi_default_prime(double r);
/// psi(r) = -2 r chi(r) chi'(r), rescaled so that int psi dr / r = 1 exactly.
double psi_default(double r);

/// Discrete analogue of the smooth-cutoff spectrum:
/// (rho / K) L^-3 sum_k psi(|k|/K) |u_hat(k)|^2.
double smooth_spectrum(const field::SpectralField& f, double K);

// ---------------------------------------------------------------------------
// time averages
// ---------------------------------------------------------------------------

struct TimeSample {
  double t = 0.0;
  double nu = 0.0;
  ShellSpectrum spec;
  double E = 0.0;
  double eps = 0.0;
};

/// Trapezoidal average over the (possibly non-uniform) sample times.
/// Requires at least two samples.
AveragedSpectrum time_average(const std::vector<TimeSample>& samples);

/// Trapezoid of scalar samples y(t) over t; convenience for tests.
double trapezoid(const std::vector<double>& t, const std::vector<double>& y);

}  // namespace k41::spectrum
