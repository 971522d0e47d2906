#pragma once

// The dispersion determinant
//
//   D(lambda) = a^2 (1+kappa)^2 - 2 (nu+ + nu-) a (1+kappa) + 4 nu+ nu- - a^2 kappa^2,
//   nu(+/-) = sqrt(m^2 - (omega +/- i lambda)^2),  a = 2 sqrt(m^2 - omega^2),
//
// on the four-sheet cover selected by the signs of nu(+/-), and the cubic
// pipeline that locates its roots.

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "kgdelta/cubic.hpp"
#include "kgdelta/model.hpp"
#include "kgdelta/spectra.hpp"

namespace kgdelta {

using complex = std::complex<double>;

/// Branch signs for nu+ and nu-; (+1, +1) is the physical sheet Re nu(+/-) > 0.
struct Sheet {
  int plus = 1;
  int minus = 1;

  bool is_physical() const { return plus > 0 && minus > 0; }
  friend bool operator==(const Sheet&, const Sheet&) = default;
};

inline constexpr Sheet kPhysicalSheet{1, 1};
inline constexpr Sheet kAllSheets[4] = {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}};

std::string to_string(Sheet s);

struct NuPair {
  complex plus;
  complex minus;
};

/// Principal square roots times the sheet signs.  On the cuts (where
/// m^2 - (omega +/- i lambda)^2 is a negative real) the boundary value is the
/// limit from Re lambda > 0.
NuPair nu_pm(const ModelParams& p, complex lambda, Sheet sheet = kPhysicalSheet);

complex dispersion_determinant(const ModelParams& p, complex lambda, Sheet sheet = kPhysicalSheet);

/// a^2(1+kappa)^2 + a^2 kappa^2 + 4(|nu+|+|nu-|) a |1+kappa| + 4|nu+ nu-|: the
/// magnitude of the terms of D, used to make residuals scale-free.
double determinant_scale(const ModelParams& p, complex lambda, Sheet sheet = kPhysicalSheet);

/// |D| / determinant_scale.
double relative_residual(const ModelParams& p, complex lambda, Sheet sheet = kPhysicalSheet);

/// 1/(decay - sqrt(m^2-(|w|+L)^2)) + 1/(decay - sqrt(m^2-(|w|-L)^2)) for
/// 0 < L < m - |omega|.  Eigenvalues i L in the gap solve 1 + kappa decay Q(L) = 0.
/// Throws DomainError outside the interval and at the pole L = 2|omega|.
double gap_function(const ModelParams& p, double Lambda);

/// Omega_kappa = m sqrt(kappa) (Kolokolov curve), kappa >= 0.
std::optional<double> kolokolov_frequency(double m, double kappa);
/// T_kappa = m (1+2 kappa)^2 / (3 + 4 kappa) (virtual-level curve).
double virtual_level_frequency(double m, double kappa);
/// K_omega, the inverse of T on [0, m): virtual levels sit at kappa = K_omega.
double virtual_level_exponent(double m, double omega);

struct CriticalCurves {
  std::optional<double> kolokolov;  // Omega_kappa
  std::optional<double> virtual_level;  // T_kappa, absent at kappa = -3/4
  double k_omega;
};

CriticalCurves critical_curves(const ModelParams& p);

enum class CandidateStatus {
  Accepted,     // root on the physical sheet: eigenvalue of A
  Resonance,    // root on an unphysical sheet
  Spurious,     // introduced by squaring, on no sheet
  ComplexRoot,  // from a cubic root with nonzero imaginary part
};

std::string_view to_string(CandidateStatus s);

struct RootCandidate {
  complex lambda;
  /// Sheet where D vanishes (physical for accepted roots); empty when off all sheets.
  std::optional<Sheet> sheet;
  /// |D| / scale on `sheet`, or on the best-fitting sheet when `sheet` is empty.
  double residual;
  /// Residual of the pre-squaring identity with the physical-sheet sign.
  double presquare_residual;
  int cubic_index;
  complex x;  // lambda^2
  complex y;  // depressed-cubic root
  CandidateStatus status;
};

struct PipelineOptions {
  Tolerances tol;
  /// Relative perturbation of q, for fault-injection runs of the validator.
  double q_perturbation = 0.0;
  int newton_iterations = 5;
};

/// Appendix pipeline: cubic roots y -> x = y - 2c/3 -> lambda = +-sqrt(x), every
/// candidate polished along its axis and tested on all four sheets.  The root
/// x = 0 of the squared equation is never emitted.
std::vector<RootCandidate> candidate_roots(const ModelParams& p, const PipelineOptions& opts = {});

/// Distinct accepted candidates (eigenvalues of A other than 0).
std::vector<complex> accepted_roots(const std::vector<RootCandidate>& candidates);

}  // namespace kgdelta
