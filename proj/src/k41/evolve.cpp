#include "k41/evolve.hpp"

#include <cmath>
#include <string>

namespace k41::evolve {

using field::cplx;
using field::SpectralField;

namespace {
constexpr double kTwoPi = 2.0 * 3.14159265358979323846;

bool has_nan(const SpectralField& f) {
  for (const auto& c : f.coeffs)
    for (const auto& v : c)
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return true;
  return false;
}

// g += s * h  on coefficients
void axpy(SpectralField& g, double s, const SpectralField& h) {
  for (int c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < g.coeffs[c].size(); ++i)
      g.coeffs[c][i] += s * h.coeffs[c][i];
}

// multiply every coefficient by e^{-nu |k|^2 tau}
void apply_heat_factor(SpectralField& f, double tau) {
  const double k0sq = (kTwoPi / f.L) * (kTwoPi / f.L);
  for (int i = 0; i < f.N; ++i) {
    for (int j = 0; j < f.N; ++j) {
      for (int k = 0; k < f.N; ++k) {
        double mi = f.freq(i), mj = f.freq(j), mk = f.freq(k);
        double fac = std::exp(-f.nu * k0sq * (mi * mi + mj * mj + mk * mk) * tau);
        std::size_t id = f.idx(i, j, k);
        for (int c = 0; c < 3; ++c) f.coeffs[c][id] *= fac;
      }
    }
  }
}

}  // namespace

field::SpectralField nonlinear_rhs(const SpectralField& f) {
  // T_ij = (u_i u_j)^ with 2/3 dealiasing; rhs_i = -i k_j T_ij, projected
  auto T = field::tensor_product_hat(f, /*pad=*/false);
  const double k0 = kTwoPi / f.L;
  SpectralField rhs = field::make_spectral(f.N, f.L, f.nu, f.t);
  static const int comp[3][3] = {{0, 3, 4}, {3, 1, 5}, {4, 5, 2}};
  const int cut = f.N / 3;
  for (int i = 0; i < f.N; ++i) {
    for (int j = 0; j < f.N; ++j) {
      for (int k = 0; k < f.N; ++k) {
        int mi = f.freq(i), mj = f.freq(j), mk = f.freq(k);
        if (std::abs(mi) > cut || std::abs(mj) > cut || std::abs(mk) > cut) continue;
        std::size_t id = f.idx(i, j, k);
        double m[3] = {double(mi), double(mj), double(mk)};
        for (int c = 0; c < 3; ++c) {
          cplx s{0.0, 0.0};
          for (int d = 0; d < 3; ++d) s += m[d] * T[comp[c][d]][id];
          rhs.coeffs[c][id] = cplx{0.0, -k0} * s;
        }
      }
    }
  }
  return field::leray_project(rhs);
}

double cfl_dt(const SpectralField& f) {
  double umax = field::max_abs_velocity(field::to_physical(f));
  if (umax <= 0.0) return 1e30;
  return 0.5 * (f.L / f.N) / umax;
}

field::SpectralField step(const SpectralField& f, double dt) {
  if (dt <= 0.0) throw std::invalid_argument("step: dt > 0 required");
  double bound = cfl_dt(f);
  if (dt > bound * (1.0 + 1e-12))
    throw CflViolation("step: dt " + std::to_string(dt) + " exceeds CFL bound " +
                       std::to_string(bound) + " at t=" + std::to_string(f.t));

  // RK4 on v = e^{nu |k|^2 (t-t_n)} u_hat, evaluated with heat factors:
  // k1 = N(u_n)
  // k2 = e^{+L dt/2} N(e^{-L dt/2}(u_n + dt/2 k1))
  // ... implemented by propagating stages instead (all factors applied
  // to the stage inputs, result assembled at t_{n+1}).
  SpectralField k1 = nonlinear_rhs(f);

  SpectralField s2 = f;
  axpy(s2, 0.5 * dt, k1);
  apply_heat_factor(s2, 0.5 * dt);  // stage value at t + dt/2
  s2.t = f.t + 0.5 * dt;
  SpectralField k2 = nonlinear_rhs(s2);

  SpectralField s3 = f;
  apply_heat_factor(s3, 0.5 * dt);
  axpy(s3, 0.5 * dt, k2);  // k2 lives at t + dt/2 already
  s3.t = f.t + 0.5 * dt;
  SpectralField k3 = nonlinear_rhs(s3);

  SpectralField s4 = f;
  apply_heat_factor(s4, 0.5 * dt);
  axpy(s4, dt, k3);
  apply_heat_factor(s4, 0.5 * dt);
  s4.t = f.t + dt;
  SpectralField k4 = nonlinear_rhs(s4);

  // assemble at t + dt:
  // u_{n+1} = e^{-L dt} u_n + dt/6 [ e^{-L dt} k1 + 2 e^{-L dt/2} (k2 + k3) + k4 ]
  SpectralField out = f;
  axpy(out, dt / 6.0, k1);
  apply_heat_factor(out, 0.5 * dt);
  axpy(out, dt / 3.0, k2);
  axpy(out, dt / 3.0, k3);
  apply_heat_factor(out, 0.5 * dt);
  axpy(out, dt / 6.0, k4);
  out.t = f.t + dt;
  out.divergence_free = true;

  if (has_nan(out))
    throw BlowupDetected("step: NaN detected at t=" + std::to_string(out.t) +
                         " (discretization blow-up)");
  return out;
}

FlowHistory run(const SpectralField& f0, double T0, double T1, double sample_every) {
  if (!(T1 > T0)) throw std::invalid_argument("run: T1 > T0 required");
  if (sample_every <= 0.0) throw std::invalid_argument("run: sample_every > 0");

  FlowHistory h;
  SpectralField u = f0;
  u.t = T0;
  h.times.push_back(T0);
  h.samples.push_back(u);

  double t = T0;
  while (t < T1 - 1e-12 * (T1 - T0)) {
    double next_sample = std::min(T1, T0 + sample_every * (std::floor((t - T0) / sample_every + 1e-9) + 1.0));
    // 0.8 margin guards against transient max|u| growth inside the segment
    double dt0 = std::min(0.8 * cfl_dt(u), sample_every / 4.0);
    int steps = std::max(1, static_cast<int>(std::ceil((next_sample - t) / dt0 - 1e-9)));
    double dt = (next_sample - t) / steps;
    for (int s = 0; s < steps; ++s) {
      try {
        u = step(u, dt);
      } catch (const std::exception& e) {
        throw std::runtime_error("run failed at t=" + std::to_string(u.t) + ": " + e.what());
      }
    }
    t = next_sample;
    u.t = t;
    h.times.push_back(t);
    h.samples.push_back(u);
  }
  return h;
}

std::vector<spectrum::TimeSample> history_samples(const FlowHistory& h) {
  std::vector<spectrum::TimeSample> out;
  out.reserve(h.samples.size());
  for (std::size_t i = 0; i < h.samples.size(); ++i) {
    spectrum::TimeSample s;
    s.t = h.times[i];
    s.nu = h.samples[i].nu;
    s.spec = spectrum::spectrum_discrete(h.samples[i]);
    s.E = field::energy(h.samples[i]);
    s.eps = field::dissipation(h.samples[i]);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace k41::evolve
