#pragma once

#include <string>
#include <vector>

#include "k41/evolve.hpp"
#include "k41/field.hpp"
#include "k41/spectrum.hpp"

namespace k41::analysis {

enum class Domain { T3, R3 };

/// One theorem-derived inequality: lhs <= rhs (or as documented per id).
/// Verdicts record failures, they never throw.
struct Verdict {
  std::string id;
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;
  double slack = 1.0;
};

struct K41Report {
  double vol = 0.0;
  double k_minus = 0.0, k_plus = 0.0;
  double reynolds = 0.0;  // (k_plus/k_minus)^{4/3}
  double gamma = 0.0;
  double alpha = 0.0;
  double k_d = 0.0, k_c = 0.0;
  double r_lambda = 0.0;
  double transfer_time = 0.0;
  double E0 = 0.0, E1 = 0.0, Ebar = 0.0, epsbar = 0.0;
  double c_n_minus = 0.0;  // C(n_-) of the low-frequency hypothesis
  bool is_k41 = false;
  double k41_C = 0.0;
  std::vector<Verdict> verdicts;
};

/// Scalar time-line of a history (trapezoid quadratures on sample times).
struct HistoryStats {
  double T0 = 0.0, T1 = 0.0;
  double E0 = 0.0, E1 = 0.0;
  double Ebar = 0.0, epsbar = 0.0;
  double int_abs_eps_fluct = 0.0;  // int |eps - epsbar| dt
  double sup_grad_sq = 0.0;        // sup_t ||grad u||^2
  double sup_omega_sq = 0.0;       // sup_t ||omega||^2 = 2 sup ||grad u||^2
  double int_omega_sq = 0.0;       // int ||omega||^2 dt
  double u0_l2sq = 0.0;            // ||u(T0)||_{L^2}^2
  double mean_energy = 0.0;        // (int rho u)^2 (constant for solutions)
};

HistoryStats compute_history_stats(const evolve::FlowHistory& h);

/// Vol(u;[T0,T1]) = <||u||_1^2> / <||u||_2^2>; +inf flag via the bool.
struct VolumeResult {
  double value = 0.0;
  bool degenerate = false;  // <||u||^2> = 0, value set to +inf
};
VolumeResult volume(const evolve::FlowHistory& h);

/// Closed-form volume of the R^3 heat kernel e^{nu t Delta} delta_0.
double heat_kernel_volume(double nu, double T0, double T1);

struct K41TestResult {
  bool is_k41 = false;
  double C = 0.0;
};
/// C = (int K^2 Ebar dmu) / (int_{K >= vol^{-1/3}} K^2 Ebar dmu); K41 iff C < 2.
K41TestResult k41_test(const spectrum::AveragedSpectrum& avg, double vol);

struct InertialRange {
  double k_minus = 0.0, k_plus = 0.0;
  double reynolds = 0.0, gamma = 0.0;
};
/// K_- per the periodic low-frequency rule, K_+ the largest shell keeping
/// the consecutive-shell slope within gamma_max of -5/3 and at least half
/// the enstrophy inside [K_-, K_+]. Throws std::runtime_error if no
/// admissible K_+ exists.
InertialRange detect_inertial_range(const spectrum::AveragedSpectrum& avg,
                                    double vol, double gamma_max);

struct KolmogorovScales {
  double alpha = 0.0;
  double k_d = 0.0;
  double k_c = 0.0;
  double r_lambda = 0.0;
};
/// alpha at K_+ with delta = K_+/10 shell width; K_d, K_c, R_lambda from it.
KolmogorovScales kolmogorov_scales(const spectrum::AveragedSpectrum& avg, double k_plus);

/// Numeric bounds of the inertial-range theorem plus the C(n_-) hypothesis.
std::vector<Verdict> range_bound_verdicts(const K41Report& r, Domain dom,
                                          double slack = 1.0);

/// Shell-wise low-frequency bound Ebar(K) <= Vol K^2 Ebar_energy * C(n);
/// reports the max ratio, plus the first violating shell if any.
std::vector<Verdict> low_freq_verdict(const spectrum::AveragedSpectrum& avg,
                                      double vol, double slack = 1.0);

struct EnvelopeFit {
  double delta_fit = 0.0;  // decay rate from the two-parameter log fit
  double C_fit = 0.0;      // prefactor from the one-parameter fit at fixed delta(t)
  Verdict verdict;
};
/// High-frequency envelope at the final sample: fits
/// log Edag(K) ~ log(C E0 K Vol / L) - delta K over the upper half of the
/// nonzero shells; the verdict checks max_K Edag / envelope at the
/// theorem's delta(t) against a factor-10 allowance.
EnvelopeFit high_freq_envelope(const evolve::FlowHistory& h, double C0 = 1.0,
                               double slack = 1.0);

/// T(u0; omega) = (alpha^3 nu^2 / rho) int ||omega||^2 dt / ||u0||^4.
double transfer_time(const HistoryStats& s, double alpha, double nu, double L);

std::vector<Verdict> intermittency_verdicts(const HistoryStats& s,
                                            const K41Report& r, Domain dom,
                                            double slack = 1.0);

std::vector<Verdict> timescale_verdicts(const HistoryStats& s, const K41Report& r,
                                        double vol_t3, double nu, double slack = 1.0);

std::vector<Verdict> analyticity_verdicts(const HistoryStats& s, const K41Report& r,
                                          double nu, Domain dom, double C0 = 1.0,
                                          double slack = 1.0);

/// Cascade flux 2 rho (S_K S_K (u x u) | grad u) with the sharp cutoff
/// S_K = 1_{|k|<=K}; positive = forward cascade. Exact (padded) products.
double cascade_flux(const field::SpectralField& f, double K);
/// Same contraction from precomputed exact products (u_i u_j)^.
double cascade_flux_from_products(const field::SpectralField& f,
                                  const std::array<std::vector<field::cplx>, 6>& T,
                                  double K);

/// d/dt of the low-pass energy sum_{0<|k|<=K} rho L^-3 |u_hat|^2 evaluated
/// through the projected right-hand side (viscous + advection); used by the
/// scale-by-scale budget test.
double dlowpass_energy_dt(const field::SpectralField& f, double K);
/// 2 rho nu ||grad S_K u||^2.
double lowpass_dissipation(const field::SpectralField& f, double K);

/// Full pipeline: averaged spectrum + stats -> report with all verdicts.
struct AnalyzeOptions {
  double gamma_max = 0.5;
  double slack = 1.0;
  Domain domain = Domain::T3;
  double C0 = 1.0;
};
K41Report analyze(const evolve::FlowHistory& h, const AnalyzeOptions& opt);

}  // namespace k41::analysis
