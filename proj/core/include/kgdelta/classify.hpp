#pragma once

#include <complex>
#include <string>
#include <vector>

#include "kgdelta/cubic.hpp"
#include "kgdelta/dispersion.hpp"
#include "kgdelta/model.hpp"
#include "kgdelta/spectra.hpp"

namespace kgdelta {

/// Everything known about the spectrum of A(omega, kappa) at one parameter point.
struct SpectrumReport {
  ModelParams params;
  Tolerances tol;

  LinearizedEssentialSpectrum essential;
  /// Zero (with Jordan data) first, then accepted roots in the order
  /// real positive, real negative, upper imaginary, lower imaginary.
  std::vector<SpectralPoint> point;
  JordanStructure jordan_at_zero;
  /// Threshold resonances at +-i(m - |omega|).
  std::vector<std::complex<double>> virtual_levels;
  Verdict verdict;

  /// Set within the tolerance band of |omega| = T_kappa.
  bool boundary = false;
  /// Diagnostics: "virtual_level_band", "kolokolov_critical", "threshold_overlap",
  /// "symmetry_violation", "kappa_zero_mismatch".
  std::vector<std::string> flags;

  CriticalCurves curves;
  CubicData cubic;
  std::vector<RootCandidate> candidates;

  OperatorSpectrum L;
  OperatorSpectrum H;

  /// Nonzero eigenvalues of A.
  std::vector<std::complex<double>> nonzero_eigenvalues() const;
  bool has_flag(const std::string& f) const;
};

SpectrumReport classify_point_spectrum(const ModelParams& p, const PipelineOptions& opts = {});

}  // namespace kgdelta
