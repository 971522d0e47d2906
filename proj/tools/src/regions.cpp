#include "kgdelta/app/regions.hpp"

#include <cmath>

#include "kgdelta/classify.hpp"

namespace kgdelta::app {

std::string_view to_string(RegionCode code) {
  switch (code) {
    case RegionCode::ZeroOnly:
      return "ZeroOnly";
    case RegionCode::RealPair:
      return "RealPair";
    case RegionCode::ImaginaryPair:
      return "ImaginaryPair";
    case RegionCode::EmbeddedPair:
      return "EmbeddedPair";
    case RegionCode::KolokolovCritical:
      return "KolokolovCritical";
    case RegionCode::VirtualLevelBoundary:
      return "VirtualLevelBoundary";
  }
  return "Unknown";
}

CellResult classify_cell(double m, double omega, double kappa, const RegionOptions& opts) {
  const ModelParams p(m, omega, kappa);
  const auto report = classify_point_spectrum(p, opts.pipeline);
  CellResult cell{omega,
                  kappa,
                  RegionCode::ZeroOnly,
                  {0.0, 0.0},
                  report.cubic.delta,
                  report.curves.k_omega,
                  report.curves.virtual_level,
                  report.curves.kolokolov};

  const auto roots = report.nonzero_eigenvalues();
  if (!roots.empty()) cell.lambda = roots.front();

  const double w = std::abs(omega);
  if (std::abs(kappa - omega * omega / (m * m)) <= opts.band) {
    cell.code = RegionCode::KolokolovCritical;
  } else if (std::abs(kappa) <= opts.pipeline.tol.threshold) {
    cell.code = w >= m / 3.0 ? RegionCode::EmbeddedPair : RegionCode::ImaginaryPair;
  } else if (std::abs(kappa - report.curves.k_omega) <= opts.band) {
    cell.code = RegionCode::VirtualLevelBoundary;
  } else if (roots.empty()) {
    cell.code = RegionCode::ZeroOnly;
  } else if (std::abs(cell.lambda.real()) >= std::abs(cell.lambda.imag())) {
    cell.code = RegionCode::RealPair;
  } else {
    cell.code = RegionCode::ImaginaryPair;
  }
  return cell;
}

namespace {

template <class F>
void sign_changes(F f, double lo, double hi, double step, bool include_end, std::vector<double>& out) {
  const auto n = static_cast<long>(std::ceil((hi - lo) / step));
  double t_prev = lo + step;
  double f_prev = f(t_prev);
  for (long k = 2; k <= n; ++k) {
    const double t = std::min(lo + static_cast<double>(k) * step, hi);
    if (!include_end && t >= hi) break;
    const double ft = f(t);
    if (f_prev == 0.0) {
      out.push_back(t_prev);
    } else if ((f_prev < 0.0) != (ft < 0.0) && ft != 0.0) {
      double a = t_prev, b = t, fa = f_prev;
      for (int it = 0; it < 200 && b - a > 1e-15 * (1.0 + b); ++it) {
        const double mid = 0.5 * (a + b);
        const double fm = f(mid);
        if (fm == 0.0) {
          a = b = mid;
          break;
        }
        if ((fm < 0.0) == (fa < 0.0)) {
          a = mid;
          fa = fm;
        } else {
          b = mid;
        }
      }
      out.push_back(0.5 * (a + b));
    }
    t_prev = t;
    f_prev = ft;
  }
  if (include_end && f_prev == 0.0) out.push_back(t_prev);
}

}  // namespace

ScanRoots dense_scan_roots(const ModelParams& p, double step) {
  ScanRoots out;
  const double m = p.m();
  out.real_range = std::max(3.0 * m, 2.0 * p.coupling() * (1.0 + std::abs(p.kappa())) + 2.0 * m);
  const double edge = m - std::abs(p.omega());
  sign_changes([&](double t) { return dispersion_determinant(p, {t, 0.0}).real(); }, 0.0,
               out.real_range, step, false, out.real);
  sign_changes([&](double t) { return dispersion_determinant(p, {0.0, t}).real(); }, 0.0, edge,
               step, true, out.imag);
  return out;
}

}  // namespace kgdelta::app
