#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "kgdelta/app/scan.hpp"

namespace kgdelta::app {

struct ValidateConfig {
  double m = 1.0;
  Axis omega{-0.95, 0.95, 21};
  Axis kappa{-2.0, 2.0, 21};
  double band = 1e-6;
  double scan_step = 1e-3;
  /// Matching tolerance between scan roots and cubic roots.
  double match_tol = 1e-6;
  /// Relative fault injected into q of the cubic (negative control).
  double perturb_q = 0.0;
  /// Single point (m, omega, kappa) instead of the grid.
  std::optional<std::array<double, 3>> at;
};

struct CheckResult {
  std::string name;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t skipped = 0;
  std::vector<std::string> failures{};
  std::vector<std::string> notes{};
};

struct ValidateReport {
  std::vector<CheckResult> checks;
  bool ok() const;
};

/// Agreement of accepted cubic roots (both the raw +-sqrt(x) seed and the
/// polished value) with the dense-scan roots at one point.  Embedded roots lie
/// outside the scanned segments and are not compared.
void compare_with_scan(const ModelParams& p, const PipelineOptions& opts, double step,
                       double match_tol, CheckResult& out);

ValidateReport run_validation(const ValidateConfig& cfg);
void print_report(const ValidateReport& report, std::ostream& out);

}  // namespace kgdelta::app
