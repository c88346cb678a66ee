#include "k41/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "k41/quadrature.hpp"

namespace k41::spectrum {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;
}  // namespace

double ShellSpectrum::integral_E() const {
  quad::KahanSum s;
  for (const auto& sh : shells) s.add(sh.Edag * sh.mu_weight);
  return s.value();
}

double ShellSpectrum::integral_K2E() const {
  quad::KahanSum s;
  for (const auto& sh : shells) s.add(sh.K * sh.K * sh.Edag * sh.mu_weight);
  return s.value();
}

double AveragedSpectrum::integral_E() const {
  quad::KahanSum s;
  for (const auto& sh : shells) s.add(sh.Edag * sh.mu_weight);
  return s.value();
}

double AveragedSpectrum::integral_K2E() const {
  quad::KahanSum s;
  for (const auto& sh : shells) s.add(sh.K * sh.K * sh.Edag * sh.mu_weight);
  return s.value();
}

ShellSpectrum spectrum_discrete(const field::SpectralField& f) {
  ShellSpectrum out;
  out.L = f.L;
  out.mean_energy = field::mean_energy(f);
  const double rho = 1.0 / (f.L * f.L * f.L);
  const double k0 = kTwoPi / f.L;

  std::map<std::uint64_t, quad::KahanSum> sums;
  for (int i = 0; i < f.N; ++i) {
    for (int j = 0; j < f.N; ++j) {
      for (int k = 0; k < f.N; ++k) {
        std::int64_t mi = f.freq(i), mj = f.freq(j), mk = f.freq(k);
        std::uint64_t n = static_cast<std::uint64_t>(mi * mi + mj * mj + mk * mk);
        if (n == 0) continue;
        std::size_t id = f.idx(i, j, k);
        double e = std::norm(f.coeffs[0][id]) + std::norm(f.coeffs[1][id]) +
                   std::norm(f.coeffs[2][id]);
        if (e != 0.0) sums[n].add(e);
      }
    }
  }
  std::uint64_t n_top = 0;
  for (const auto& [n, s] : sums)
    if (s.value() > 0.0) n_top = std::max(n_top, n);
  if (n_top == 0) return out;  // zero field -> empty spectrum

  for (std::uint64_t n = 1; n <= n_top; ++n) {
    double K = k0 * std::sqrt(static_cast<double>(n));
    auto it = sums.find(n);
    bool lattice_present = it != sums.end();
    // interior shells of Sigma* without lattice points cannot occur below
    // 3 (N/2-1)^2; shells with points but zero energy are kept as zeros.
    if (!lattice_present) {
      // keep only true Sigma* members (sum of three squares)
      std::uint64_t m = n;
      while ((m & 3u) == 0 && m != 0) m >>= 2;
      if ((m & 7u) == 7u) continue;
    }
    Shell sh;
    sh.n = n;
    sh.K = K;
    sh.Edag = lattice_present
                  ? (1.0 / (kTwoPi * kTwoPi)) * rho * (K / f.L) * it->second.value()
                  : 0.0;
    sh.mu_weight = (kTwoPi / f.L) * (kTwoPi / (K * f.L));
    out.shells.push_back(sh);
  }
  return out;
}

double shell_average(const std::vector<Shell>& shells, double K, double delta) {
  if (delta <= 0.0 || delta >= K)
    throw std::invalid_argument("shell_average: need 0 < delta < K");
  quad::KahanSum num, den;
  bool any = false;
  for (const auto& sh : shells) {
    if (std::abs(sh.K / K - 1.0) > delta / K) continue;
    num.add(sh.Edag * sh.mu_weight);
    den.add(sh.mu_weight);
    any = true;
  }
  if (!any) throw std::runtime_error("shell_average: empty band");
  return num.value() / den.value();
}

double shell_band_raw(const std::vector<Shell>& shells, double K, double delta) {
  quad::KahanSum num;
  for (const auto& sh : shells) {
    if (std::abs(sh.K / K - 1.0) > delta / K) continue;
    num.add(sh.Edag * sh.mu_weight);
  }
  return num.value() / (4.0 * delta);
}

// ---------------------------------------------------------------------------
// smooth cutoff
// ---------------------------------------------------------------------------

namespace {

double phi_bump(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }

double smoothstep_down(double s) {
  // 1 at s=-1, 0 at s=+1, C-infinity
  double a = phi_bump(1.0 - s);
  double b = phi_bump(1.0 + s);
  return a / (a + b);
}

double psi_raw_eval(double r) {
  return -2.0 * r * chi_default(r) * chi_default_prime(r);
}

double psi_norm_constant() {
  static double c = [] {
    // int_0^infty -2 chi chi' dr = [ -chi^2 ] = 1 analytically; quadrature
    // rescale kills the residual roundoff.
    return quad::integrate_panels(
        [](double r) { return psi_raw_eval(r) / r; }, 0.5, 2.0, 64);
  }();
  return c;
}

}  // namespace

double chi_default(double r) {
  if (r <= 0.5) return 1.0;
  if (r >= 2.0) return 0.0;
  double s = std::log2(2.0 * r) - 1.0;  // maps [1/2, 2] to [-1, 1]
  return smoothstep_down(s);
}

double chi_default_prime(double r) {
  if (r <= 0.5 || r >= 2.0) return 0.0;
  // analytic derivative of smoothstep_down(log2(2r) - 1)
  double s = std::log2(2.0 * r) - 1.0;
  double a = phi_bump(1.0 - s);
  double b = phi_bump(1.0 + s);
  double ap = (1.0 - s) > 0 ? a / ((1.0 - s) * (1.0 - s)) * (-1.0) : 0.0;
  double bp = (1.0 + s) > 0 ? b / ((1.0 + s) * (1.0 + s)) : 0.0;
  double dds = (ap * (a + b) - a * (ap + bp)) / ((a + b) * (a + b));
  double dsdr = 1.0 / (r * std::log(2.0));
  return dds * dsdr;
}

double psi_default(double r) {
  if (r <= 0.5 || r >= 2.0) return 0.0;
  return psi_raw_eval(r) / psi_norm_constant();
}

double smooth_spectrum(const field::SpectralField& f, double K) {
  if (K <= 0.0) throw std::invalid_argument("smooth_spectrum: K > 0");
  const double rho = 1.0 / (f.L * f.L * f.L);
  const double k0 = kTwoPi / f.L;
  quad::KahanSum s;
  for (int i = 0; i < f.N; ++i) {
    for (int j = 0; j < f.N; ++j) {
      for (int k = 0; k < f.N; ++k) {
        std::int64_t mi = f.freq(i), mj = f.freq(j), mk = f.freq(k);
        double n = double(mi * mi + mj * mj + mk * mk);
        if (n == 0.0) continue;
        double r = k0 * std::sqrt(n) / K;
        if (r <= 0.5 || r >= 2.0) continue;
        std::size_t id = f.idx(i, j, k);
        double e = std::norm(f.coeffs[0][id]) + std::norm(f.coeffs[1][id]) +
                   std::norm(f.coeffs[2][id]);
        s.add(psi_default(r) * e);
      }
    }
  }
  return rho / K * s.value() / (f.L * f.L * f.L);
}

// ---------------------------------------------------------------------------
// time averages
// ---------------------------------------------------------------------------

double trapezoid(const std::vector<double>& t, const std::vector<double>& y) {
  if (t.size() != y.size() || t.size() < 2)
    throw std::invalid_argument("trapezoid: need matching arrays, size >= 2");
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < t.size(); ++i)
    s += 0.5 * (t[i + 1] - t[i]) * (y[i] + y[i + 1]);
  return s;
}

AveragedSpectrum time_average(const std::vector<TimeSample>& samples) {
  if (samples.size() < 2)
    throw std::runtime_error("time_average: need at least two samples");
  for (std::size_t i = 0; i + 1 < samples.size(); ++i)
    if (!(samples[i].t < samples[i + 1].t))
      throw std::runtime_error("time_average: sample times must increase");

  AveragedSpectrum avg;
  avg.L = samples.front().spec.L;
  avg.nu = samples.front().nu;
  avg.T0 = samples.front().t;
  avg.T1 = samples.back().t;
  avg.E0 = samples.front().E;
  avg.E1 = samples.back().E;
  const double delta = avg.T1 - avg.T0;

  std::vector<double> t(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) t[i] = samples[i].t;

  // trapezoid weights on the sample times, normalized to sum to 1
  std::vector<double> w(samples.size(), 0.0);
  for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
    double h = 0.5 * (t[i + 1] - t[i]) / delta;
    w[i] += h;
    w[i + 1] += h;
  }

  std::map<std::uint64_t, Shell> acc;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    avg.Ebar += w[i] * samples[i].E;
    avg.epsbar += w[i] * samples[i].eps;
    avg.mean_energy += w[i] * samples[i].spec.mean_energy;
    for (const auto& sh : samples[i].spec.shells) {
      auto& slot = acc[sh.n];
      slot.n = sh.n;
      slot.K = sh.K;
      slot.mu_weight = sh.mu_weight;
      slot.Edag += w[i] * sh.Edag;
    }
  }
  avg.shells.reserve(acc.size());
  for (auto& [n, sh] : acc) avg.shells.push_back(sh);
  std::sort(avg.shells.begin(), avg.shells.end(),
            [](const Shell& a, const Shell& b) { return a.n < b.n; });
  return avg;
}

}  // namespace k41::spectrum
