#include "k41/structfn.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "k41/quadrature.hpp"

namespace k41::structfn {

namespace {

constexpr double kPi = 3.14159265358979323846;

/// 1 - sin(x)/x without cancellation near 0.
double one_minus_sinc(double x) {
  double ax = std::abs(x);
  if (ax < 0.1) {
    double x2 = x * x;
    return x2 / 6.0 * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0 * (1.0 - x2 / 72.0)));
  }
  return 1.0 - std::sin(x) / x;
}

}  // namespace

SpectrumProfile SpectrumProfile::ideal(double R) {
  SpectrumProfile p;
  p.kind = Kind::ideal_53;
  p.R = R;
  return p;
}

SpectrumProfile SpectrumProfile::real(double R, double delta) {
  SpectrumProfile p;
  p.kind = Kind::real_53;
  p.R = R;
  p.delta = delta;
  return p;
}

SpectrumProfile SpectrumProfile::tabulated(std::vector<std::pair<double, double>> samples) {
  SpectrumProfile p;
  p.kind = Kind::tabulated;
  p.tab = std::move(samples);
  std::sort(p.tab.begin(), p.tab.end());
  return p;
}

double SpectrumProfile::eval(double K) const {
  switch (kind) {
    case Kind::ideal_53:
      return (K >= 1.0 && K <= R) ? std::pow(K, -5.0 / 3.0) : 0.0;
    case Kind::real_53:
      if (K <= 0.0) return 0.0;
      if (K <= 1.0) return K * K;
      if (K <= R) return std::pow(K, -5.0 / 3.0);
      return std::pow(R, -5.0 / 3.0) * std::exp(-delta * (K - R));
    case Kind::tabulated: {
      if (tab.empty() || K < tab.front().first || K > tab.back().first) return 0.0;
      auto it = std::lower_bound(tab.begin(), tab.end(), std::make_pair(K, -1e300));
      if (it == tab.begin()) return it->second;
      auto lo = it - 1;
      double w = (K - lo->first) / (it->first - lo->first);
      return lo->second * (1.0 - w) + it->second * w;
    }
  }
  return 0.0;
}

double SpectrumProfile::total_energy() const {
  switch (kind) {
    case Kind::ideal_53:
      return 1.5 * (1.0 - std::pow(R, -2.0 / 3.0));
    case Kind::real_53:
      return 1.0 / 3.0 + 1.5 * (1.0 - std::pow(R, -2.0 / 3.0)) +
             std::pow(R, -5.0 / 3.0) / delta;
    case Kind::tabulated: {
      double s = 0.0;
      for (std::size_t i = 0; i + 1 < tab.size(); ++i)
        s += 0.5 * (tab[i + 1].first - tab[i].first) * (tab[i].second + tab[i + 1].second);
      return s;
    }
  }
  return 0.0;
}

double SpectrumProfile::second_moment() const {
  switch (kind) {
    case Kind::ideal_53:
      return 0.75 * (std::pow(R, 4.0 / 3.0) - 1.0);
    case Kind::real_53: {
      double tail = std::pow(R, -5.0 / 3.0) *
                    (R * R / delta + 2.0 * R / (delta * delta) + 2.0 / (delta * delta * delta));
      return 0.2 + 0.75 * (std::pow(R, 4.0 / 3.0) - 1.0) + tail;
    }
    case Kind::tabulated: {
      double s = 0.0;
      for (std::size_t i = 0; i + 1 < tab.size(); ++i) {
        double k0 = tab[i].first, k1 = tab[i + 1].first;
        s += 0.5 * (k1 - k0) * (k0 * k0 * tab[i].second + k1 * k1 * tab[i + 1].second);
      }
      return s;
    }
  }
  return 0.0;
}

namespace {

// int_a^b (1 - sinc(ell K)) g(K) dK with panels resolving the sinc.
double osc_integral(const std::function<double(double)>& g, double ell, double a,
                    double b, int min_panels = 8) {
  if (b <= a) return 0.0;
  auto f = [&](double K) { return one_minus_sinc(ell * K) * g(K); };
  double width = ell > 0.0 ? kPi / ell : b - a;
  return quad::integrate_oscillatory(f, a, b, width, min_panels);
}

// exponential tail: int_R^inf (1 - sinc(ell K)) A e^{-delta (K-R)} dK
double tail_integral(double A, double R, double delta, double ell) {
  // plain part: A / delta ; sinc part via the complex exponential integral:
  // int_R^inf e^{-delta(K-R)} sin(ell K)/(ell K) dK
  //   = (e^{delta R}/ell) Im E1((delta - i ell) R)
  std::complex<double> z{delta * R, -ell * R};
  double sinc_part = std::exp(delta * R) / ell * quad::exp_e1(z).imag();
  return A * (1.0 / delta - sinc_part);
}

}  // namespace

double s2_from_spectrum(const SpectrumProfile& p, double ell) {
  if (ell <= 0.0) throw std::invalid_argument("s2_from_spectrum: ell > 0");
  double integral = 0.0;
  switch (p.kind) {
    case SpectrumProfile::Kind::ideal_53:
      integral = osc_integral([&](double K) { return p.eval(K); }, ell, 1.0, p.R);
      break;
    case SpectrumProfile::Kind::real_53: {
      integral = osc_integral([&](double K) { return K * K; }, ell, 0.0, 1.0);
      integral += osc_integral([&](double K) { return std::pow(K, -5.0 / 3.0); },
                               ell, 1.0, p.R);
      integral += tail_integral(std::pow(p.R, -5.0 / 3.0), p.R, p.delta, ell);
      break;
    }
    case SpectrumProfile::Kind::tabulated: {
      if (p.tab.size() < 2) return 0.0;
      integral = osc_integral([&](double K) { return p.eval(K); }, ell,
                              p.tab.front().first, p.tab.back().first);
      break;
    }
  }
  return 4.0 * kPi * integral;
}

double s2_from_shells(const std::vector<spectrum::Shell>& shells, double ell) {
  quad::KahanSum s;
  for (const auto& sh : shells)
    s.add(one_minus_sinc(ell * sh.K) * sh.Edag * sh.mu_weight);
  return 4.0 * kPi * s.value();
}

double local_slope_precision(const SpectrumProfile& p, double ell) {
  const double h = 1e-3;
  double up = s2_from_spectrum(p, ell * std::exp(h));
  double dn = s2_from_spectrum(p, ell * std::exp(-h));
  if (up <= 0.0 || dn <= 0.0)
    throw std::runtime_error("local_slope_precision: S2 not positive");
  return (std::log(up) - std::log(dn)) / (2.0 * h) - 2.0 / 3.0;
}

double ValidityWindow::decades() const {
  return empty ? 0.0 : std::log10(ell_hi / ell_lo);
}

ValidityWindow validity_window(const SpectrumProfile& p, double tol,
                               double ell_min, double ell_max, int ppd) {
  if (tol <= 0.0) throw std::invalid_argument("validity_window: tol > 0");
  const double bound = tol * (2.0 / 3.0);
  const int n = static_cast<int>(std::ceil(std::log10(ell_max / ell_min) * ppd)) + 1;
  ValidityWindow best;
  int run_start = -1;
  std::vector<double> grid(n);
  for (int i = 0; i < n; ++i)
    grid[i] = ell_min * std::pow(10.0, static_cast<double>(i) / ppd);
  for (int i = 0; i <= n; ++i) {
    bool ok = false;
    if (i < n && grid[i] <= ell_max * (1.0 + 1e-12)) {
      double prec = local_slope_precision(p, grid[i]);
      ok = std::abs(prec) <= bound;
    }
    if (ok && run_start < 0) run_start = i;
    if (!ok && run_start >= 0) {
      double lo = grid[run_start], hi = grid[i - 1];
      if (best.empty || std::log(hi / lo) > std::log(best.ell_hi / best.ell_lo)) {
        best.empty = false;
        best.ell_lo = lo;
        best.ell_hi = hi;
      }
      run_start = -1;
    }
  }
  return best;
}

double radial_fourier(const std::function<double(double)>& F, double lambda,
                      double r_max) {
  // lambda^2 G = 4 pi int F(r) (r lambda) sin(r lambda) dr
  auto f = [&](double r) { return F(r) * r * lambda * std::sin(r * lambda); };
  double width = lambda > 0.0 ? kPi / lambda : r_max;
  double integral = quad::integrate_oscillatory(f, 0.0, r_max, width, 16);
  return 4.0 * kPi * integral / (lambda * lambda);
}

double radial_fourier_inverse(const std::function<double(double)>& G, double r,
                              double lambda_max) {
  auto f = [&](double l) { return G(l) * r * l * std::sin(r * l); };
  double width = r > 0.0 ? kPi / r : lambda_max;
  double integral = quad::integrate_oscillatory(f, 0.0, lambda_max, width, 16);
  return integral / (2.0 * kPi * kPi * r * r);
}

double corrector_chi(double delta, double K) {
  if (delta <= 0.0 || K <= 0.0)
    throw std::invalid_argument("corrector_chi: delta > 0, K > 0");
  double lg = std::log(2.0 + K);
  return std::exp(-delta * K) / (K * lg * lg);
}

CorrectorFit corrector_fit(double delta) {
  const int ppd = 200;
  // log-log LSQ of chi against c K^{-5/3} over the fit range [1, 1/delta]
  const double fit_lo = 1.0, fit_hi = 1.0 / delta;
  const int nfit = static_cast<int>(std::ceil(std::log10(fit_hi / fit_lo) * ppd)) + 1;
  double acc = 0.0;
  for (int i = 0; i < nfit; ++i) {
    double K = fit_lo * std::pow(10.0, static_cast<double>(i) / ppd);
    if (K > fit_hi) K = fit_hi;
    acc += std::log(corrector_chi(delta, K)) + (5.0 / 3.0) * std::log(K);
  }
  CorrectorFit out;
  out.prefactor = std::exp(acc / nfit);

  auto rel_err = [&](double K) {
    return std::abs(corrector_chi(delta, K) /
                        (out.prefactor * std::pow(K, -5.0 / 3.0)) -
                    1.0);
  };
  for (int i = 0; i < nfit; ++i) {
    double K = fit_lo * std::pow(10.0, static_cast<double>(i) / ppd);
    if (K > fit_hi) K = fit_hi;
    out.max_rel_err = std::max(out.max_rel_err, rel_err(K));
  }

  // contiguous 25% window containing the fit range, scanned outwards
  const double tol = 0.25;
  const double scan_lo = 1e-4, scan_hi = 100.0 / delta;
  const int n = static_cast<int>(std::ceil(std::log10(scan_hi / scan_lo) * ppd)) + 1;
  double best_lo = 0.0, best_hi = 0.0;
  int run_start = -1;
  for (int i = 0; i <= n; ++i) {
    double K = scan_lo * std::pow(10.0, static_cast<double>(i) / ppd);
    bool ok = i < n && rel_err(K) <= tol;
    if (ok && run_start < 0) run_start = i;
    if (!ok && run_start >= 0) {
      double lo = scan_lo * std::pow(10.0, static_cast<double>(run_start) / ppd);
      double hi = scan_lo * std::pow(10.0, static_cast<double>(i - 1) / ppd);
      if (hi / lo > best_hi / std::max(best_lo, 1e-300) || best_lo == 0.0) {
        best_lo = lo;
        best_hi = hi;
      }
      run_start = -1;
    }
  }
  out.window_lo = best_lo;
  out.window_hi = best_hi;
  out.decades = best_lo > 0.0 ? std::log10(best_hi / best_lo) : 0.0;
  return out;
}

// ---------------------------------------------------------------------------
// direct-space structure functions
// ---------------------------------------------------------------------------

std::vector<std::array<double, 3>> direction_set(int n_dirs) {
  if (n_dirs < 6) throw std::invalid_argument("direction_set: n_dirs >= 6");
  std::vector<std::array<double, 3>> dirs;
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  auto push_norm = [&](double x, double y, double z) {
    double n = std::sqrt(x * x + y * y + z * z);
    dirs.push_back({x / n, y / n, z / n});
  };
  if (n_dirs == 6) {
    for (int c = 0; c < 3; ++c)
      for (int s : {-1, 1}) {
        std::array<double, 3> d{0, 0, 0};
        d[c] = s;
        dirs.push_back(d);
      }
    return dirs;
  }
  if (n_dirs == 12 || n_dirs == 32) {
    for (int s1 : {-1, 1})
      for (int s2 : {-1, 1}) {
        push_norm(0, s1, s2 * phi);
        push_norm(s1, s2 * phi, 0);
        push_norm(s1 * phi, 0, s2);
      }
    if (n_dirs == 32) {
      for (int s1 : {-1, 1})
        for (int s2 : {-1, 1})
          for (int s3 : {-1, 1}) push_norm(s1, s2, s3);
      for (int s1 : {-1, 1})
        for (int s2 : {-1, 1}) {
          push_norm(0, s1 / phi, s2 * phi);
          push_norm(s1 / phi, s2 * phi, 0);
          push_norm(s1 * phi, 0, s2 / phi);
        }
    }
    return dirs;
  }
  // Fibonacci sphere, seedless and reproducible
  for (int i = 0; i < n_dirs; ++i) {
    double z = 1.0 - 2.0 * (i + 0.5) / n_dirs;
    double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    double a = 2.0 * kPi * i / (phi * phi);
    dirs.push_back({r * std::cos(a), r * std::sin(a), z});
  }
  return dirs;
}

double s_p_direct(const field::SpectralField& f, double ell, int p, int n_dirs) {
  if (p != 2 && p != 3) throw std::invalid_argument("s_p_direct: p in {2,3}");
  if (ell > f.L / 2.0 + 1e-12) throw std::invalid_argument("s_p_direct: ell <= L/2");
  auto dirs = direction_set(n_dirs);

  field::PhysicalField base = field::to_physical(f);
  const double rho = 1.0 / (f.L * f.L * f.L);
  const double h3 = (f.L / f.N) * (f.L / f.N) * (f.L / f.N);
  const double k0 = 2.0 * kPi / f.L;

  quad::KahanSum dir_acc;
  field::SpectralField shifted = f;
  std::vector<field::cplx> grid;
  for (const auto& th : dirs) {
    // u(x + ell theta) has coefficients u_hat(k) e^{i k . ell theta}
    for (int i = 0; i < f.N; ++i) {
      for (int j = 0; j < f.N; ++j) {
        for (int k = 0; k < f.N; ++k) {
          double phase = k0 * ell *
                         (f.freq(i) * th[0] + f.freq(j) * th[1] + f.freq(k) * th[2]);
          field::cplx rot{std::cos(phase), std::sin(phase)};
          std::size_t id = f.idx(i, j, k);
          for (int c = 0; c < 3; ++c) shifted.coeffs[c][id] = f.coeffs[c][id] * rot;
        }
      }
    }
    field::PhysicalField sp = field::to_physical(shifted);
    quad::KahanSum acc;
    if (p == 2) {
      for (std::size_t i = 0; i < base.values[0].size(); ++i) {
        double dx = sp.values[0][i] - base.values[0][i];
        double dy = sp.values[1][i] - base.values[1][i];
        double dz = sp.values[2][i] - base.values[2][i];
        acc.add(dx * dx + dy * dy + dz * dz);
      }
      dir_acc.add(0.5 * rho * acc.value() * h3);
    } else {
      for (std::size_t i = 0; i < base.values[0].size(); ++i) {
        double d = (sp.values[0][i] - base.values[0][i]) * th[0] +
                   (sp.values[1][i] - base.values[1][i]) * th[1] +
                   (sp.values[2][i] - base.values[2][i]) * th[2];
        acc.add(d * d * d);
      }
      // (S3)-style: space average over the box, sphere-integrated below
      dir_acc.add(acc.value() * h3 / (f.L * f.L * f.L));
    }
  }
  return 4.0 * kPi * dir_acc.value() / dirs.size();
}

}  // namespace k41::structfn
