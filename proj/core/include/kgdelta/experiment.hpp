#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "kgdelta/lattice.hpp"
#include "kgdelta/model.hpp"
#include "kgdelta/spectra.hpp"

namespace kgdelta {

struct ExperimentConfig {
  double m = 1.0;
  double omega = 0.0;
  double epsilon = 0.0;
  double T = 10.0;
  /// Defaults: h = 0.02 / max(decay, m), dt = 0.4 h, L = max(30/decay, T + 10/decay).
  std::optional<double> h;
  std::optional<double> dt;
  std::optional<double> half_length;
  std::uint64_t seed = 1;
  double phase = 0.0;
  /// Sampling period of the recorded series.
  double record_interval = 0.05;
};

struct GrowthFit {
  double rate;
  double t_begin;
  double t_end;
  std::size_t samples;
};

struct RunReport {
  ExperimentConfig config;
  Grid grid;
  double dt;
  std::size_t steps_taken = 0;

  double amplitude;           // continuum C
  double discrete_amplitude;  // phi_h at x = 0
  double kappa;               // effective exponent at C
  Verdict predicted;
  /// Largest real part among the eigenvalues of A, when positive.
  std::optional<double> predicted_rate{};
  double reference_norm;  // ||Phi_h||_E

  std::vector<double> times{};
  std::vector<double> energy{};
  std::vector<double> charge{};
  std::vector<double> distance{};

  std::optional<GrowthFit> fit{};
  bool aborted = false;
  std::string abort_reason{};

  double energy_drift = 0.0;  // max |H(t) - H(0)| / |H(0)|
  double charge_drift = 0.0;  // max |Q(t) - Q(0)| / max(|Q(0)|, ||phi||^2)
  double initial_distance = 0.0;
  double max_distance = 0.0;
  /// "bounded", "growing" or "inconclusive".
  std::string observed{};
  bool agreement = false;
};

/// Lattice stationary state plus an even, compactly supported, seeded random
/// perturbation of E-norm epsilon in both components, evolved to time T.
/// Aborts with a partial report when max |psi| exceeds 1e3 C.
RunReport run_experiment(const Nonlinearity& nl, const ExperimentConfig& cfg);

/// Least-squares slope of log(distance) on the first contiguous window with
/// distance in [lo, hi] holding at least 5 samples.
std::optional<GrowthFit> fit_growth(const std::vector<double>& t, const std::vector<double>& d,
                                    double lo, double hi);

/// Columns t, energy, charge, orbital_distance.
void write_csv(const RunReport& report, std::ostream& out);
nlohmann::json summary_json(const RunReport& report, const Nonlinearity& nl);

}  // namespace kgdelta
