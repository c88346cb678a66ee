#pragma once

#include <string>
#include <vector>

#include "k41/analysis.hpp"
#include "k41/evolve.hpp"
#include "k41/field.hpp"
#include "k41/spectrum.hpp"

namespace k41::io {

/// K41F snapshot: little-endian, magic "K41F", u32 version=1, u32 N,
/// f64 L, f64 nu, f64 t, then three components of N^3 complex coefficients
/// (f64 re, f64 im) row-major over the FFT index layout, order (u1,u2,u3).
void write_k41f(const std::string& path, const field::SpectralField& f);
field::SpectralField read_k41f(const std::string& path);

/// CSV of physical-space samples: x,y,z,u1,u2,u3.
void write_physical_csv(const std::string& path, const field::PhysicalField& p);

/// Spectrum CSV: header n,K,E_dagger,mu_weight.
void write_spectrum_csv(const std::string& path, const spectrum::ShellSpectrum& s);
/// Averaged spectrum adds `# T0=...,T1=...,Ebar=...,epsbar=...`.
void write_avg_spectrum_csv(const std::string& path, const spectrum::AveragedSpectrum& s);

/// History directory: numbered K41F snapshots plus index CSV
/// i,t,file,energy,dissipation.
void write_history(const std::string& dir, const evolve::FlowHistory& h);
evolve::FlowHistory read_history(const std::string& dir);

/// Report JSON: stable key order; verdicts as {id,lhs,rhs,pass,slack}.
std::string report_to_json(const analysis::K41Report& r);
analysis::K41Report report_from_json(const std::string& text);

}  // namespace k41::io
