#include "kgdelta/classify.hpp"

#include <algorithm>
#include <cmath>

namespace kgdelta {

namespace {

using complex = std::complex<double>;

int order_key(complex z) {
  if (std::abs(z.imag()) <= std::abs(z.real())) return z.real() > 0.0 ? 0 : 1;
  return z.imag() > 0.0 ? 2 : 3;
}

bool contains_close(const std::vector<complex>& set, complex z) {
  return std::any_of(set.begin(), set.end(), [&](const complex& w) {
    return std::abs(w - z) <= 1e-9 * (1.0 + std::abs(z));
  });
}

}  // namespace

std::vector<complex> SpectrumReport::nonzero_eigenvalues() const {
  std::vector<complex> out;
  for (const auto& e : point) {
    if (e.value != complex{0.0}) out.push_back(e.value);
  }
  return out;
}

bool SpectrumReport::has_flag(const std::string& f) const {
  return std::find(flags.begin(), flags.end(), f) != flags.end();
}

SpectrumReport classify_point_spectrum(const ModelParams& p, const PipelineOptions& opts) {
  const Tolerances& tol = opts.tol;
  SpectrumReport r{p,
                   tol,
                   essential_spectrum_of_A(p),
                   {},
                   zero_jordan_structure(p, tol),
                   {},
                   stability_verdict(p, tol),
                   false,
                   {},
                   critical_curves(p),
                   cubic_data(p),
                   candidate_roots(p, opts),
                   spectrum_of_L(p, tol),
                   spectrum_of_H(p, tol)};

  const double m = p.m();
  const double w = std::abs(p.omega());
  const double k = p.kappa();
  const double edge = r.essential.gap_edge;
  const bool kappa_zero = std::abs(k) <= tol.threshold;

  std::vector<complex> roots = accepted_roots(r.candidates);

  if (r.verdict == Verdict::Critical) {
    // Roots collapsing into the fourfold zero are not separate eigenvalues.
    r.flags.emplace_back("kolokolov_critical");
    std::erase_if(roots, [](const complex& z) { return std::abs(z) < 1e-6; });
  }

  if (kappa_zero && w > tol.threshold) {
    const std::vector<complex> expected = {complex{0.0, 2.0 * w}, complex{0.0, -2.0 * w}};
    const bool match = roots.size() == 2 && contains_close(roots, expected[0]) &&
                       contains_close(roots, expected[1]);
    if (!match) r.flags.emplace_back("kappa_zero_mismatch");
  }

  // Virtual levels at +-i(m - |omega|) on the curve |omega| = T_kappa.
  const bool vl_range = k >= -0.5 - tol.threshold && k < 1.0 / std::sqrt(2.0) && !kappa_zero;
  if (vl_range && r.curves.virtual_level &&
      std::abs(w - *r.curves.virtual_level) <= tol.boundary * m) {
    r.virtual_levels = {complex{0.0, edge}, complex{0.0, -edge}};
    r.boundary = true;
    r.flags.emplace_back("virtual_level_band");
    // The eigenvalue merging into the threshold is reported as the virtual level.
    std::erase_if(roots, [&](const complex& z) {
      return std::abs(z.real()) < std::abs(z.imag()) &&
             std::abs(std::abs(z.imag()) - edge) <= 1e-4 * m;
    });
    if (w <= tol.threshold) r.flags.emplace_back("threshold_overlap");
  }

  for (const auto& z : roots) {
    if (!contains_close(roots, -z) || !contains_close(roots, std::conj(z))) {
      r.flags.emplace_back("symmetry_violation");
      break;
    }
  }

  std::stable_sort(roots.begin(), roots.end(),
                   [](const complex& a, const complex& b) { return order_key(a) < order_key(b); });

  r.point.push_back({0.0, r.jordan_at_zero.geometric, r.jordan_at_zero.algebraic, false});
  for (const auto& z : roots) {
    const bool imaginary = std::abs(z.imag()) > std::abs(z.real());
    const bool embedded = imaginary && std::abs(z.imag()) >= edge * (1.0 - 1e-14);
    r.point.push_back({z, 1, 1, embedded});
  }
  return r;
}

}  // namespace kgdelta
