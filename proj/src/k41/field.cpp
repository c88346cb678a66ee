#include "k41/field.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>

#include "k41/quadrature.hpp"
#include "k41/rng.hpp"

namespace k41::field {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Cached c2c plans per grid size. FFTW_ESTIMATE keeps plan selection (and
// therefore floating-point results) reproducible run to run.
struct PlanPair {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
};

PlanPair& plans_for(int N) {
  static std::map<int, PlanPair> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(N);
  if (it != cache.end()) return it->second;
  std::vector<cplx> a(static_cast<std::size_t>(N) * N * N);
  std::vector<cplx> b(a.size());
  PlanPair p;
  p.fwd = fftw_plan_dft_3d(N, N, N, reinterpret_cast<fftw_complex*>(a.data()),
                           reinterpret_cast<fftw_complex*>(b.data()),
                           FFTW_FORWARD, FFTW_ESTIMATE);
  p.bwd = fftw_plan_dft_3d(N, N, N, reinterpret_cast<fftw_complex*>(a.data()),
                           reinterpret_cast<fftw_complex*>(b.data()),
                           FFTW_BACKWARD, FFTW_ESTIMATE);
  return cache.emplace(N, p).first->second;
}

void run_plan(fftw_plan plan, const std::vector<cplx>& in, std::vector<cplx>& out) {
  out.resize(in.size());
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(
                             const_cast<cplx*>(in.data())),
                   reinterpret_cast<fftw_complex*>(out.data()));
}

}  // namespace

SpectralField make_spectral(int N, double L, double nu, double t) {
  if (N < 8 || N % 2 != 0) throw std::invalid_argument("SpectralField: N must be even, >= 8");
  SpectralField f;
  f.N = N;
  f.L = L;
  f.nu = nu;
  f.t = t;
  for (auto& c : f.coeffs) c.assign(static_cast<std::size_t>(N) * N * N, cplx{0.0, 0.0});
  return f;
}

void fft_forward(int N, double L, const std::vector<cplx>& grid, std::vector<cplx>& hat) {
  run_plan(plans_for(N).fwd, grid, hat);
  const double scale = (L / N) * (L / N) * (L / N);
  for (auto& v : hat) v *= scale;
}

void fft_backward(int N, double L, const std::vector<cplx>& hat, std::vector<cplx>& grid) {
  run_plan(plans_for(N).bwd, hat, grid);
  const double scale = 1.0 / (L * L * L);
  for (auto& v : grid) v *= scale;
}

PhysicalField to_physical(const SpectralField& f) {
  PhysicalField p;
  p.N = f.N;
  p.L = f.L;
  p.t = f.t;
  std::vector<cplx> grid;
  for (int c = 0; c < 3; ++c) {
    fft_backward(f.N, f.L, f.coeffs[c], grid);
    p.values[c].resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) p.values[c][i] = grid[i].real();
  }
  return p;
}

SpectralField to_spectral(const PhysicalField& p, double nu) {
  SpectralField f = make_spectral(p.N, p.L, nu, p.t);
  std::vector<cplx> grid(p.values[0].size());
  for (int c = 0; c < 3; ++c) {
    for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = cplx{p.values[c][i], 0.0};
    fft_forward(p.N, p.L, grid, f.coeffs[c]);
  }
  zero_nyquist(f);
  return f;
}

double l2sq_norm(const SpectralField& f) {
  quad::KahanSum s;
  for (const auto& c : f.coeffs)
    for (const auto& v : c) s.add(std::norm(v));
  return s.value() / (f.L * f.L * f.L);
}

double grad_l2sq_norm(const SpectralField& f) {
  const double k0sq = (2.0 * kPi / f.L) * (2.0 * kPi / f.L);
  quad::KahanSum s;
  for (int i = 0; i < f.N; ++i) {
    for (int j = 0; j < f.N; ++j) {
      for (int k = 0; k < f.N; ++k) {
        double mi = f.freq(i), mj = f.freq(j), mk = f.freq(k);
        double n = mi * mi + mj * mj + mk * mk;
        if (n == 0.0) continue;
        std::size_t id = f.idx(i, j, k);
        double e = std::norm(f.coeffs[0][id]) + std::norm(f.coeffs[1][id]) +
                   std::norm(f.coeffs[2][id]);
        s.add(k0sq * n * e);
      }
    }
  }
  return s.value() / (f.L * f.L * f.L);
}

double energy(const SpectralField& f) { return l2sq_norm(f) / (f.L * f.L * f.L); }

double dissipation(const SpectralField& f) {
  return 2.0 * f.nu * grad_l2sq_norm(f) / (f.L * f.L * f.L);
}

double mean_energy(const SpectralField& f) {
  const double rho = 1.0 / (f.L * f.L * f.L);
  double s = 0.0;
  for (int c = 0; c < 3; ++c) {
    double m = f.coeffs[c][0].real() * rho;
    s += m * m;
  }
  return s;
}

double l1_norm(const PhysicalField& p) {
  const double h3 = (p.L / p.N) * (p.L / p.N) * (p.L / p.N);
  quad::KahanSum s;
  for (std::size_t i = 0; i < p.values[0].size(); ++i) {
    double a = p.values[0][i], b = p.values[1][i], c = p.values[2][i];
    s.add(std::sqrt(a * a + b * b + c * c));
  }
  return s.value() * h3;
}

double l1_norm(const SpectralField& f) { return l1_norm(to_physical(f)); }

double energy_grid(const PhysicalField& p) {
  const double h3 = (p.L / p.N) * (p.L / p.N) * (p.L / p.N);
  quad::KahanSum s;
  for (std::size_t i = 0; i < p.values[0].size(); ++i) {
    double a = p.values[0][i], b = p.values[1][i], c = p.values[2][i];
    s.add(a * a + b * b + c * c);
  }
  return s.value() * h3 / (p.L * p.L * p.L);
}

double max_abs_velocity(const PhysicalField& p) {
  double m = 0.0;
  for (std::size_t i = 0; i < p.values[0].size(); ++i) {
    double a = p.values[0][i], b = p.values[1][i], c = p.values[2][i];
    m = std::max(m, a * a + b * b + c * c);
  }
  return std::sqrt(m);
}

double hermitian_defect(const SpectralField& f) {
  double worst = 0.0;
  for (int c = 0; c < 3; ++c) {
    for (int i = 0; i < f.N; ++i) {
      int ic = (f.N - i) % f.N;
      for (int j = 0; j < f.N; ++j) {
        int jc = (f.N - j) % f.N;
        for (int k = 0; k < f.N; ++k) {
          int kc = (f.N - k) % f.N;
          cplx a = f.at(c, i, j, k);
          cplx b = std::conj(f.at(c, ic, jc, kc));
          worst = std::max(worst, std::abs(a - b));
        }
      }
    }
  }
  return worst;
}

double divergence_rel(const SpectralField& f) {
  const double k0 = 2.0 * kPi / f.L;
  double worst = 0.0;
  double scale = 0.0;
  for (int i = 0; i < f.N; ++i) {
    for (int j = 0; j < f.N; ++j) {
      for (int k = 0; k < f.N; ++k) {
        double mi = f.freq(i), mj = f.freq(j), mk = f.freq(k);
        std::size_t id = f.idx(i, j, k);
        cplx div = k0 * (mi * f.coeffs[0][id] + mj * f.coeffs[1][id] + mk * f.coeffs[2][id]);
        double mag = k0 * std::sqrt(mi * mi + mj * mj + mk * mk) *
                     std::sqrt(std::norm(f.coeffs[0][id]) + std::norm(f.coeffs[1][id]) +
                               std::norm(f.coeffs[2][id]));
        worst = std::max(worst, std::abs(div));
        scale = std::max(scale, mag);
      }
    }
  }
  return scale > 0.0 ? worst / scale : 0.0;
}

void enforce_hermitian(SpectralField& f) {
  for (int c = 0; c < 3; ++c) {
    for (int i = 0; i < f.N; ++i) {
      int ic = (f.N - i) % f.N;
      for (int j = 0; j < f.N; ++j) {
        int jc = (f.N - j) % f.N;
        for (int k = 0; k < f.N; ++k) {
          int kc = (f.N - k) % f.N;
          std::size_t a = f.idx(i, j, k);
          std::size_t b = f.idx(ic, jc, kc);
          if (b < a) continue;
          cplx avg = 0.5 * (f.coeffs[c][a] + std::conj(f.coeffs[c][b]));
          f.coeffs[c][a] = avg;
          f.coeffs[c][b] = std::conj(avg);
        }
      }
    }
  }
}

void zero_nyquist(SpectralField& f) {
  int ny = f.N / 2;
  for (int c = 0; c < 3; ++c) {
    for (int a = 0; a < f.N; ++a) {
      for (int b = 0; b < f.N; ++b) {
        f.at(c, ny, a, b) = 0.0;
        f.at(c, a, ny, b) = 0.0;
        f.at(c, a, b, ny) = 0.0;
      }
    }
  }
}

SpectralField leray_project(const SpectralField& f) {
  SpectralField g = f;
  for (int i = 0; i < g.N; ++i) {
    for (int j = 0; j < g.N; ++j) {
      for (int k = 0; k < g.N; ++k) {
        double mi = g.freq(i), mj = g.freq(j), mk = g.freq(k);
        double n = mi * mi + mj * mj + mk * mk;
        if (n == 0.0) continue;  // k = 0 coefficient untouched
        std::size_t id = g.idx(i, j, k);
        cplx dot = mi * g.coeffs[0][id] + mj * g.coeffs[1][id] + mk * g.coeffs[2][id];
        cplx fac = dot / n;
        g.coeffs[0][id] -= mi * fac;
        g.coeffs[1][id] -= mj * fac;
        g.coeffs[2][id] -= mk * fac;
      }
    }
  }
  g.divergence_free = true;
  return g;
}

SpectralField rescale(const SpectralField& f, double lambda) {
  if (lambda <= 0.0) throw std::invalid_argument("rescale: lambda > 0");
  SpectralField g = f;
  g.L = f.L / lambda;
  g.t = f.t / (lambda * lambda);
  const double s = 1.0 / (lambda * lambda);
  for (auto& c : g.coeffs)
    for (auto& v : c) v *= s;
  return g;
}

SpectralField gen_single_mode(double A, std::array<int, 3> m,
                              std::array<double, 3> e, int N, double L,
                              double nu, bool project_dir) {
  SpectralField f = make_spectral(N, L, nu);
  double msq = double(m[0]) * m[0] + double(m[1]) * m[1] + double(m[2]) * m[2];
  if (msq > 0 && project_dir) {
    double dot = e[0] * m[0] + e[1] * m[1] + e[2] * m[2];
    for (int c = 0; c < 3; ++c) e[c] -= dot * m[c] / msq;
  }
  // u = A cos(k.x) e  =>  u_hat(+-k) = (A/2) L^3 e
  const double amp = 0.5 * A * L * L * L;
  int i = f.index_of(m[0]), j = f.index_of(m[1]), k = f.index_of(m[2]);
  int ic = f.index_of(-m[0]), jc = f.index_of(-m[1]), kc = f.index_of(-m[2]);
  for (int c = 0; c < 3; ++c) {
    f.at(c, i, j, k) += amp * e[c];
    if (!(i == ic && j == jc && k == kc)) f.at(c, ic, jc, kc) += amp * e[c];
  }
  f.divergence_free = project_dir || msq == 0;
  return f;
}

SpectralField gen_taylor_green(double A, int N, double L, double nu) {
  SpectralField f = make_spectral(N, L, nu);
  const double c3 = A * L * L * L / 8.0;
  for (int s1 : {-1, 1}) {
    for (int s2 : {-1, 1}) {
      for (int s3 : {-1, 1}) {
        int i = f.index_of(s1), j = f.index_of(s2), k = f.index_of(s3);
        // cos X sin Y sin Z -> -(s2 s3)/8 ; -sin X cos Y sin Z -> +(s1 s3)/8
        f.at(0, i, j, k) = cplx{-c3 * s2 * s3, 0.0};
        f.at(1, i, j, k) = cplx{c3 * s1 * s3, 0.0};
      }
    }
  }
  f.divergence_free = true;
  return f;
}

namespace {

// Deterministic divergence-free complex amplitude for mode m; Hermitian
// partner is filled with the conjugate by the callers.
std::array<cplx, 3> random_mode_amplitude(std::uint64_t seed, int m0, int m1, int m2) {
  auto u = [&](int c, int extra) {
    double g0, g1;
    rng::gaussian_pair(seed, static_cast<std::uint64_t>(std::int64_t(m0) + (1 << 20)),
                       static_cast<std::uint64_t>(std::int64_t(m1) + (1 << 20)),
                       static_cast<std::uint64_t>(std::int64_t(m2) + (1 << 20)),
                       static_cast<std::uint64_t>(c * 2 + extra), &g0, &g1);
    return cplx{g0, g1};
  };
  std::array<cplx, 3> v{u(0, 0), u(1, 0), u(2, 0)};
  double msq = double(m0) * m0 + double(m1) * m1 + double(m2) * m2;
  if (msq > 0) {
    cplx dot = v[0] * double(m0) + v[1] * double(m1) + v[2] * double(m2);
    v[0] -= dot * double(m0) / msq;
    v[1] -= dot * double(m1) / msq;
    v[2] -= dot * double(m2) / msq;
    double norm = std::sqrt(std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]));
    if (norm < 1e-12) {
      // projected nearly to zero: pick a deterministic perpendicular
      std::array<double, 3> a{1.0, 0.0, 0.0};
      if (m1 == 0 && m2 == 0) a = {0.0, 1.0, 0.0};
      double dd = a[0] * m0 + a[1] * m1 + a[2] * m2;
      for (int c = 0; c < 3; ++c) v[c] = cplx{a[c] - dd * double(c == 0 ? m0 : c == 1 ? m1 : m2) / msq, 0.0};
    }
  }
  return v;
}

}  // namespace

SpectralField gen_random_field(std::uint64_t seed, int N, double L, double nu,
                               const std::function<double(std::uint64_t)>& shape,
                               int m_max, bool zero_mean) {
  SpectralField f = make_spectral(N, L, nu);
  int cap = m_max > 0 ? m_max : N / 2 - 1;
  cap = std::min(cap, N / 2 - 1);
  for (int m0 = -cap; m0 <= cap; ++m0) {
    for (int m1 = -cap; m1 <= cap; ++m1) {
      for (int m2 = -cap; m2 <= cap; ++m2) {
        std::uint64_t n = static_cast<std::uint64_t>(std::int64_t(m0) * m0 +
                                                     std::int64_t(m1) * m1 +
                                                     std::int64_t(m2) * m2);
        if (n == 0) continue;
        // fill each Hermitian pair once, from its lexicographically
        // positive member
        if (m0 < 0 || (m0 == 0 && (m1 < 0 || (m1 == 0 && m2 < 0)))) continue;
        double a = shape(n);
        if (a == 0.0) continue;
        auto v = random_mode_amplitude(seed, m0, m1, m2);
        int i = f.index_of(m0), j = f.index_of(m1), k = f.index_of(m2);
        int ic = f.index_of(-m0), jc = f.index_of(-m1), kc = f.index_of(-m2);
        for (int c = 0; c < 3; ++c) {
          f.at(c, i, j, k) = a * v[c];
          f.at(c, ic, jc, kc) = std::conj(a * v[c]);
        }
      }
    }
  }
  if (!zero_mean) {
    for (int c = 0; c < 3; ++c)
      f.coeffs[c][0] = cplx{rng::uniform01(seed, 7, 7, 7, c) * L * L * L, 0.0};
  }
  f.divergence_free = true;
  return f;
}

namespace {

// true iff some |m|^2 = n has all components within [-cap, cap]
bool lattice_shell_nonempty(std::uint64_t n, int cap) {
  for (std::uint64_t x = 0; x * x <= n && x <= static_cast<std::uint64_t>(cap); ++x) {
    std::uint64_t rx = n - x * x;
    for (std::uint64_t y = x; y * y <= rx && y <= static_cast<std::uint64_t>(cap); ++y) {
      std::uint64_t rem = rx - y * y;
      auto z = static_cast<std::uint64_t>(std::llround(std::sqrt(static_cast<double>(rem))));
      while (z > 0 && z * z > rem) --z;
      while ((z + 1) * (z + 1) <= rem) ++z;
      if (z * z == rem && z >= y && z <= static_cast<std::uint64_t>(cap)) return true;
    }
  }
  return false;
}

}  // namespace

SpectralField gen_random_spectrum(const std::function<double(double)>& target,
                                  std::uint64_t seed, int N, double L, double nu) {
  const double k0 = 2.0 * kPi / L;
  const double rho = 1.0 / (L * L * L);
  SpectralField f = gen_random_field(
      seed, N, L, nu, [](std::uint64_t) { return 1.0; }, 0, true);

  // shell sums of |u_hat|^2 keyed by exact integer n = |m|^2
  int cap = N / 2 - 1;
  std::map<std::uint64_t, double> shell_sum;
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) {
      for (int k = 0; k < N; ++k) {
        int mi = f.freq(i), mj = f.freq(j), mk = f.freq(k);
        if (std::abs(mi) > cap || std::abs(mj) > cap || std::abs(mk) > cap) continue;
        std::uint64_t n = static_cast<std::uint64_t>(std::int64_t(mi) * mi +
                                                     std::int64_t(mj) * mj +
                                                     std::int64_t(mk) * mk);
        if (n == 0) continue;
        std::size_t id = f.idx(i, j, k);
        shell_sum[n] += std::norm(f.coeffs[0][id]) + std::norm(f.coeffs[1][id]) +
                        std::norm(f.coeffs[2][id]);
      }
    }
  }

  // E_dagger(K) = (2 pi)^-2 rho (K/L) * shell_sum  =>  required shell_sum
  std::map<std::uint64_t, double> scale;
  std::uint64_t n_lattice_max = 3ull * cap * cap;
  for (std::uint64_t n = 1; n <= n_lattice_max; ++n) {
    double K = k0 * std::sqrt(static_cast<double>(n));
    double tgt = target(K);
    if (tgt <= 0.0) continue;
    auto it = shell_sum.find(n);
    if (it == shell_sum.end() || it->second == 0.0) {
      if (lattice_shell_nonempty(n, cap))
        throw std::runtime_error("gen_random_spectrum: degenerate shell sum at n=" +
                                 std::to_string(n));
      throw std::runtime_error(
          "gen_random_spectrum: target positive on empty lattice shell n=" +
          std::to_string(n));
    }
    double want = tgt * (2.0 * kPi) * (2.0 * kPi) * L / (rho * K);
    scale[n] = std::sqrt(want / it->second);
  }

  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) {
      for (int k = 0; k < N; ++k) {
        int mi = f.freq(i), mj = f.freq(j), mk = f.freq(k);
        std::uint64_t n = static_cast<std::uint64_t>(std::int64_t(mi) * mi +
                                                     std::int64_t(mj) * mj +
                                                     std::int64_t(mk) * mk);
        std::size_t id = f.idx(i, j, k);
        auto it = scale.find(n);
        double s = (n != 0 && it != scale.end()) ? it->second : 0.0;
        for (int c = 0; c < 3; ++c) f.coeffs[c][id] *= s;
      }
    }
  }
  f.divergence_free = true;
  return f;
}

std::array<std::vector<cplx>, 6> tensor_product_hat(const SpectralField& f, bool pad) {
  static const int pairs[6][2] = {{0, 0}, {1, 1}, {2, 2}, {0, 1}, {0, 2}, {1, 2}};
  std::array<std::vector<cplx>, 6> out;
  const std::size_t total = f.coeffs[0].size();

  if (!pad) {
    SpectralField g = f;
    dealias_23(g);
    PhysicalField p = to_physical(g);
    std::vector<cplx> grid(total);
    for (int q = 0; q < 6; ++q) {
      int a = pairs[q][0], b = pairs[q][1];
      for (std::size_t i = 0; i < total; ++i)
        grid[i] = cplx{p.values[a][i] * p.values[b][i], 0.0};
      fft_forward(f.N, f.L, grid, out[q]);
    }
    return out;
  }

  // exact product: embed into a 2N lattice, multiply there, truncate back
  const int M = 2 * f.N;
  auto embed = [&](const std::vector<cplx>& src, std::vector<cplx>& dst) {
    dst.assign(static_cast<std::size_t>(M) * M * M, cplx{0.0, 0.0});
    for (int i = 0; i < f.N; ++i) {
      int I = f.freq(i) >= 0 ? f.freq(i) : f.freq(i) + M;
      for (int j = 0; j < f.N; ++j) {
        int J = f.freq(j) >= 0 ? f.freq(j) : f.freq(j) + M;
        for (int k = 0; k < f.N; ++k) {
          int K = f.freq(k) >= 0 ? f.freq(k) : f.freq(k) + M;
          dst[(static_cast<std::size_t>(I) * M + J) * M + K] = src[f.idx(i, j, k)];
        }
      }
    }
  };
  std::array<std::vector<double>, 3> ubig;
  {
    std::vector<cplx> hat_big, grid_big;
    for (int c = 0; c < 3; ++c) {
      embed(f.coeffs[c], hat_big);
      fft_backward(M, f.L, hat_big, grid_big);
      ubig[c].resize(grid_big.size());
      for (std::size_t i = 0; i < grid_big.size(); ++i) ubig[c][i] = grid_big[i].real();
    }
  }
  std::vector<cplx> grid_big(static_cast<std::size_t>(M) * M * M), hat_big;
  for (int q = 0; q < 6; ++q) {
    int a = pairs[q][0], b = pairs[q][1];
    for (std::size_t i = 0; i < grid_big.size(); ++i)
      grid_big[i] = cplx{ubig[a][i] * ubig[b][i], 0.0};
    fft_forward(M, f.L, grid_big, hat_big);
    out[q].assign(total, cplx{0.0, 0.0});
    for (int i = 0; i < f.N; ++i) {
      int I = f.freq(i) >= 0 ? f.freq(i) : f.freq(i) + M;
      for (int j = 0; j < f.N; ++j) {
        int J = f.freq(j) >= 0 ? f.freq(j) : f.freq(j) + M;
        for (int k = 0; k < f.N; ++k) {
          int K = f.freq(k) >= 0 ? f.freq(k) : f.freq(k) + M;
          out[q][f.idx(i, j, k)] = hat_big[(static_cast<std::size_t>(I) * M + J) * M + K];
        }
      }
    }
  }
  return out;
}

void dealias_23(SpectralField& f) {
  const int cut = f.N / 3;
  for (int i = 0; i < f.N; ++i) {
    for (int j = 0; j < f.N; ++j) {
      for (int k = 0; k < f.N; ++k) {
        if (std::abs(f.freq(i)) > cut || std::abs(f.freq(j)) > cut ||
            std::abs(f.freq(k)) > cut) {
          std::size_t id = f.idx(i, j, k);
          for (int c = 0; c < 3; ++c) f.coeffs[c][id] = 0.0;
        }
      }
    }
  }
}

double heat_kernel_l1(double nu, double t) {
  (void)nu;
  (void)t;
  return 1.0;  // the heat kernel has unit mass for all t > 0
}

double heat_kernel_l2sq(double nu, double t) {
  // ||(4 pi nu t)^{-3/2} exp(-|x|^2/(4 nu t))||_{L^2}^2 = 2^{-9/2} (pi nu t)^{-3/2}
  return std::pow(2.0, -4.5) * std::pow(kPi * nu * t, -1.5);
}

}  // namespace k41::field
