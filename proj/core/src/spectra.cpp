#include "kgdelta/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kgdelta {

RealIntervalSet::RealIntervalSet(std::vector<Interval> intervals) {
  std::sort(intervals.begin(), intervals.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  // Overlapping or touching closed intervals are merged.
  for (const auto& iv : intervals) {
    if (iv.hi < iv.lo) throw std::invalid_argument("interval with hi < lo");
    if (!intervals_.empty() && iv.lo <= intervals_.back().hi) {
      intervals_.back().hi = std::max(intervals_.back().hi, iv.hi);
    } else {
      intervals_.push_back(iv);
    }
  }
}

bool RealIntervalSet::contains(double x) const {
  return std::any_of(intervals_.begin(), intervals_.end(),
                     [x](const Interval& iv) { return x >= iv.lo && x <= iv.hi; });
}

std::optional<double> scalar_eigenvalue(const ModelParams& p, const Tolerances& tol) {
  const double k = p.kappa();
  if (k <= -0.5 + tol.threshold) return std::nullopt;
  const double d = p.decay();
  return -4.0 * d * d * (k + k * k);
}

OperatorSpectrum spectrum_of_L(const ModelParams& p, const Tolerances& tol) {
  const double d = p.decay();
  OperatorSpectrum out{RealIntervalSet({{d * d, kInf}}), {}};
  if (auto lam = scalar_eigenvalue(p, tol)) {
    out.point.push_back({*lam, 1, 1, out.essential.contains(*lam)});
  }
  return out;
}

BandEdges band_edges(const ModelParams& p) {
  const double m2 = p.m() * p.m();
  const double w2 = p.omega() * p.omega();
  const double sum = m2 + 1.0;
  const double root = std::sqrt((m2 - 1.0) * (m2 - 1.0) + 4.0 * w2);
  const double upper = 0.5 * (sum + root);
  // Product of the roots is m^2 - omega^2; dividing avoids cancellation in c^-.
  const double lower = (m2 - w2) / upper;
  return {lower, upper};
}

std::optional<std::pair<double, double>> block_eigenvalues(const ModelParams& p,
                                                           const Tolerances& tol) {
  const auto lam = scalar_eigenvalue(p, tol);
  if (!lam) return std::nullopt;
  const double b = *lam + p.omega() * p.omega() + 1.0;
  const double disc = std::sqrt(std::max(0.0, b * b - 4.0 * *lam));
  // Larger root by the stable branch; smaller one through the product Lambda.
  const double big = b >= 0.0 ? 0.5 * (b + disc) : 0.5 * (b - disc);
  const double other = big != 0.0 ? *lam / big : 0.5 * (b - disc);
  return std::pair{std::max(big, other), std::min(big, other)};
}

OperatorSpectrum spectrum_of_H(const ModelParams& p, const Tolerances& tol) {
  const bool static_wave = std::abs(p.omega()) <= tol.threshold;
  OperatorSpectrum out;
  if (static_wave) {
    out.essential = RealIntervalSet({{p.m() * p.m(), kInf}});
  } else {
    const auto edges = band_edges(p);
    out.essential = RealIntervalSet({{edges.lower, 1.0}, {edges.upper, kInf}});
  }
  auto add = [&](double v) {
    for (const auto& e : out.point) {
      if (std::abs(e.value.real() - v) <= 1e-14 * (1.0 + std::abs(v))) return;
    }
    out.point.push_back({v, 1, 1, out.essential.contains(v)});
  };
  if (auto pair = block_eigenvalues(p, tol)) {
    add(pair->first);
    add(pair->second);
  } else if (static_wave) {
    add(1.0);
  }
  if (std::abs(p.kappa()) <= tol.threshold) {
    // sigma_p(H_0) = {0, omega^2 + 1} exactly.
    out.point.clear();
    add(p.omega() * p.omega() + 1.0);
    add(0.0);
  }
  return out;
}

LinearizedEssentialSpectrum essential_spectrum_of_A(const ModelParams& p) {
  const double w = std::abs(p.omega());
  const double edge = p.m() - w;
  const double outer = p.m() + w;
  LinearizedEssentialSpectrum out{RealIntervalSet({{-kInf, -edge}, {edge, kInf}}), edge, {}};
  out.thresholds = {-outer, -edge, edge, outer};
  if (outer == edge) out.thresholds = {-edge, edge};
  return out;
}

JordanStructure zero_jordan_structure(const ModelParams& p, const Tolerances& tol) {
  const double w = p.omega();
  const double k = p.kappa();
  const bool omega_zero = std::abs(w) <= tol.threshold;
  const bool kappa_zero = std::abs(k) <= tol.threshold;
  const bool kolokolov = std::abs(k - w * w / (p.m() * p.m())) <= tol.threshold;
  if (kappa_zero && omega_zero) return {2, 4};
  if (kappa_zero) return {2, 2};
  if (kolokolov) return {1, 4};
  return {1, 2};
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Stable:
      return "stable";
    case Verdict::Unstable:
      return "unstable";
    case Verdict::Critical:
      return "critical";
  }
  return "unknown";
}

Verdict stability_verdict(const ModelParams& p, const Tolerances& tol) {
  const double defect = p.kappa() - p.omega() * p.omega() / (p.m() * p.m());
  if (std::abs(defect) <= tol.threshold) return Verdict::Critical;
  return defect < 0.0 ? Verdict::Stable : Verdict::Unstable;
}

}  // namespace kgdelta
