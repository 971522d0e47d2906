#pragma once

// Closed-form spectra of the scalar operator L = -d^2/dx^2 + decay^2 - coupling(1+2 kappa) delta,
// the 2x2 block H = [[L + omega^2, omega], [omega, 1]], and the essential
// spectrum of the linearization A = Sigma H about a solitary wave.

#include <complex>
#include <limits>
#include <optional>
#include <string_view>
#include <vector>

#include "kgdelta/model.hpp"

namespace kgdelta {

/// Equality tolerances for the classification curves.
struct Tolerances {
  /// |kappa - omega^2/m^2|, |kappa|, |kappa + 1/2| and |omega| below this count as zero.
  double threshold = 1e-12;
  /// Near-threshold band for virtual levels (|omega| - T_kappa or kappa - K_omega).
  double boundary = 1e-10;
  /// Relative residual |D| / scale accepted as a root of the dispersion determinant.
  double residual = 1e-9;
};

struct Interval {
  double lo;
  double hi;  // may be +infinity; lo may be -infinity
};

/// Sorted, pairwise disjoint union of closed intervals.
class RealIntervalSet {
 public:
  RealIntervalSet() = default;
  explicit RealIntervalSet(std::vector<Interval> intervals);

  const std::vector<Interval>& intervals() const { return intervals_; }
  bool contains(double x) const;
  bool empty() const { return intervals_.empty(); }

 private:
  std::vector<Interval> intervals_;
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct SpectralPoint {
  std::complex<double> value;
  int geometric_mult = 1;
  int algebraic_mult = 1;
  bool embedded = false;
};

struct OperatorSpectrum {
  RealIntervalSet essential;
  std::vector<SpectralPoint> point;
};

/// Lambda_kappa = -4 decay^2 (kappa + kappa^2), present iff kappa > -1/2.
std::optional<double> scalar_eigenvalue(const ModelParams& p, const Tolerances& tol = {});

/// sigma(L): essential [decay^2, inf), point {Lambda_kappa} for kappa > -1/2.
OperatorSpectrum spectrum_of_L(const ModelParams& p, const Tolerances& tol = {});

struct BandEdges {
  double lower;  // c^- <= min(1, m^2)
  double upper;  // c^+ >= max(1, m^2)
};

/// Roots of lambda^2 - (m^2+1) lambda + m^2 - omega^2.
BandEdges band_edges(const ModelParams& p);

/// The two eigenvalues of H solving Lambda = lambda + lambda omega^2 / (1 - lambda),
/// as {larger, smaller}.  Absent for kappa <= -1/2.
std::optional<std::pair<double, double>> block_eigenvalues(const ModelParams& p,
                                                           const Tolerances& tol = {});

/// sigma(H_kappa(omega)).
OperatorSpectrum spectrum_of_H(const ModelParams& p, const Tolerances& tol = {});

struct LinearizedEssentialSpectrum {
  /// Imaginary parts of sigma_ess(A): R \ (-(m-|omega|), m-|omega|).
  RealIntervalSet imag_parts;
  /// m - |omega|: the spectral gap is (-gap_edge, gap_edge) i.
  double gap_edge;
  /// +-(m-|omega|), +-(m+|omega|) where the continuous spectrum changes multiplicity.
  std::vector<double> thresholds;
};

LinearizedEssentialSpectrum essential_spectrum_of_A(const ModelParams& p);

struct JordanStructure {
  int geometric;
  int algebraic;
};

/// Jordan data of lambda = 0 for A(omega, kappa).
JordanStructure zero_jordan_structure(const ModelParams& p, const Tolerances& tol = {});

enum class Verdict { Stable, Unstable, Critical };

std::string_view to_string(Verdict v);

/// Orbital stability: stable iff kappa < omega^2/m^2.  On the curve itself the
/// wave is unstable through the Jordan block; that case is reported as Critical.
Verdict stability_verdict(const ModelParams& p, const Tolerances& tol = {});

inline bool is_unstable(Verdict v) { return v != Verdict::Stable; }

}  // namespace kgdelta
