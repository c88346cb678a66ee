#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

namespace k41::field {

using cplx = std::complex<double>;

/// Truncated Fourier representation of a 3-component velocity field on
/// T^3 = R^3/(L Z)^3. Coefficients store u_hat(k) = int e^{-ik.x} u dx
/// over the standard FFT index layout (non-negative frequencies first,
/// then negative), k = (2 pi / L) m with integer m.
struct SpectralField {
  int N = 0;
  double L = 0.0;
  double nu = 0.0;
  double t = 0.0;
  bool divergence_free = false;
  std::array<std::vector<cplx>, 3> coeffs;

  std::size_t idx(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * N + j) * N + k;
  }
  /// Signed integer frequency for array index i.
  int freq(int i) const { return i < N / 2 ? i : i - N; }
  /// Array index holding signed frequency m (-N/2 <= m < N/2).
  int index_of(int m) const { return m >= 0 ? m : m + N; }

  cplx& at(int c, int i, int j, int k) { return coeffs[c][idx(i, j, k)]; }
  const cplx& at(int c, int i, int j, int k) const { return coeffs[c][idx(i, j, k)]; }
};

/// Uniform-grid samples of the same field, units length/time.
struct PhysicalField {
  int N = 0;
  double L = 0.0;
  double t = 0.0;
  std::array<std::vector<double>, 3> values;

  std::size_t idx(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * N + j) * N + k;
  }
};

SpectralField make_spectral(int N, double L, double nu, double t = 0.0);

// ---------------------------------------------------------------------------
// transforms
// ---------------------------------------------------------------------------

PhysicalField to_physical(const SpectralField& f);
SpectralField to_spectral(const PhysicalField& p, double nu);

/// Forward/backward c2c transforms of a single scalar array (FFT layout).
void fft_forward(int N, double L, const std::vector<cplx>& grid, std::vector<cplx>& hat);
void fft_backward(int N, double L, const std::vector<cplx>& hat, std::vector<cplx>& grid);

// ---------------------------------------------------------------------------
// functionals (all "per unit of mass": rho = L^-3)
// ---------------------------------------------------------------------------

/// ||u||_{L^2}^2 = L^-3 sum |u_hat|^2 (Parseval).
double l2sq_norm(const SpectralField& f);
/// ||grad u||_{L^2}^2 = L^-3 sum |k|^2 |u_hat|^2.
double grad_l2sq_norm(const SpectralField& f);
/// E(t) = rho ||u||^2.
double energy(const SpectralField& f);
/// eps(t) = 2 rho nu ||grad u||^2.
double dissipation(const SpectralField& f);
/// (int rho u dx)^2, the mean-flow energy missed by the spectrum.
double mean_energy(const SpectralField& f);
/// int |u| dx by uniform grid quadrature.
double l1_norm(const SpectralField& f);
double l1_norm(const PhysicalField& p);
/// rho * grid sum of |u|^2 (L/N)^3; Parseval oracle for energy().
double energy_grid(const PhysicalField& p);
double max_abs_velocity(const PhysicalField& p);

// ---------------------------------------------------------------------------
// structure checks
// ---------------------------------------------------------------------------

double hermitian_defect(const SpectralField& f);
/// max_k |k . u_hat| / (K_rms * max|u_hat|); 0 for divergence-free fields.
double divergence_rel(const SpectralField& f);
void enforce_hermitian(SpectralField& f);
void zero_nyquist(SpectralField& f);

SpectralField leray_project(const SpectralField& f);

/// u_lambda(t,x) = lambda u(lambda^2 t, lambda x): relabels L -> L/lambda,
/// t -> t/lambda^2 and scales coefficients by lambda^-2.
SpectralField rescale(const SpectralField& f, double lambda);

// ---------------------------------------------------------------------------
// generators
// ---------------------------------------------------------------------------

/// u = A cos(k.x) e with k = (2 pi / L) m; e need not be unit, is
/// projected orthogonal to m when project_dir is set.
SpectralField gen_single_mode(double A, std::array<int, 3> m,
                              std::array<double, 3> e, int N, double L,
                              double nu, bool project_dir = true);

/// u = A (cos X sin Y sin Z, -sin X cos Y sin Z, 0), X = 2 pi x / L etc.
/// Divergence-free by exact cancellation, zero mean.
SpectralField gen_taylor_green(double A, int N, double L, double nu);

/// Broadband random divergence-free field: Gaussian mode amplitudes
/// shaped by `shape(n)` over shells n = |m|^2, counter-based stream.
SpectralField gen_random_field(std::uint64_t seed, int N, double L, double nu,
                               const std::function<double(std::uint64_t)>& shape,
                               int m_max = 0, bool zero_mean = true);

/// Random-phase field whose discrete spectrum matches target(K) exactly on
/// every lattice shell (rescaled shell by shell). Throws std::runtime_error
/// if target(K) > 0 on a shell with no lattice point.
SpectralField gen_random_spectrum(const std::function<double(double)>& target,
                                  std::uint64_t seed, int N, double L, double nu);

// ---------------------------------------------------------------------------
// products (shared by the integrator and the cascade flux)
// ---------------------------------------------------------------------------

/// Fourier coefficients of u_i u_j, ordered (11,22,33,12,13,23), returned on
/// the N-lattice. pad = true evaluates the product on a 2N grid so the
/// retained modes are exact (no aliasing); pad = false multiplies on the
/// N grid after a 2/3-rule mask of the inputs.
std::array<std::vector<cplx>, 6> tensor_product_hat(const SpectralField& f, bool pad);

/// 2/3-rule mask: zeroes modes with any |m_i| > N/3.
void dealias_23(SpectralField& f);

/// Heat kernel e^{nu t Delta} delta_0 on R^3: closed-form norms.
double heat_kernel_l1(double nu, double t);
double heat_kernel_l2sq(double nu, double t);

}  // namespace k41::field
