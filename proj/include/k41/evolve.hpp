#pragma once

#include <stdexcept>
#include <vector>

#include "k41/field.hpp"
#include "k41/spectrum.hpp"

namespace k41::evolve {

struct CflViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BlowupDetected : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Ordered (t, field) samples over [T0, T1]; nu, L, N constant.
struct FlowHistory {
  std::vector<double> times;
  std::vector<field::SpectralField> samples;

  double T0() const { return times.front(); }
  double T1() const { return times.back(); }
};

/// P[ -div(u x u) ]^ with 2/3-rule dealiasing; the advection right-hand
/// side of the projected system (viscous part handled separately).
field::SpectralField nonlinear_rhs(const field::SpectralField& f);

/// CFL bound dt <= 0.5 (L/N) / max|u|.
double cfl_dt(const field::SpectralField& f);

/// One RK4 step with exact viscous integrating factor e^{-nu |k|^2 dt}.
/// Throws CflViolation if dt exceeds the bound, BlowupDetected on NaN.
field::SpectralField step(const field::SpectralField& f, double dt);

/// Fixed-step integration with dt = min(CFL, sample_every/4) rounded so
/// samples land exactly on multiples of sample_every; records both
/// endpoints. Errors carry the failing time.
FlowHistory run(const field::SpectralField& f0, double T0, double T1,
                double sample_every);

/// Spectrum + scalar samples for the analysis pipeline.
std::vector<spectrum::TimeSample> history_samples(const FlowHistory& h);

}  // namespace k41::evolve
