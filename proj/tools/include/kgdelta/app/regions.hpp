#pragma once

#include <complex>
#include <optional>
#include <string_view>
#include <vector>

#include "kgdelta/dispersion.hpp"
#include "kgdelta/spectra.hpp"

namespace kgdelta::app {

enum class RegionCode {
  ZeroOnly,
  RealPair,
  ImaginaryPair,
  EmbeddedPair,
  KolokolovCritical,
  VirtualLevelBoundary,
};

std::string_view to_string(RegionCode code);
inline bool is_boundary(RegionCode c) {
  return c == RegionCode::KolokolovCritical || c == RegionCode::VirtualLevelBoundary;
}

struct RegionOptions {
  /// Half-width of the boundary bands |kappa - omega^2/m^2| and |kappa - K_omega|.
  double band = 1e-6;
  PipelineOptions pipeline;
};

struct CellResult {
  double omega;
  double kappa;
  RegionCode code;
  /// Representative nonzero eigenvalue (Re > 0, else Im > 0); zero when there is none.
  std::complex<double> lambda;
  double delta;
  double k_omega;
  std::optional<double> t_kappa;
  std::optional<double> omega_kappa;
};

CellResult classify_cell(double m, double omega, double kappa, const RegionOptions& opts = {});

/// Positive roots t of the real-valued restrictions D(t) on (0, R) and D(i t)
/// on (0, m - |omega|] of the physical sheet, found by sign changes on a
/// uniform step and refined by bisection.  Independent of the cubic reduction.
struct ScanRoots {
  std::vector<double> real;
  std::vector<double> imag;
  double real_range;
};

ScanRoots dense_scan_roots(const ModelParams& p, double step = 1e-3);

}  // namespace kgdelta::app
