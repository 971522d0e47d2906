#include "kgdelta/dispersion.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace kgdelta {

namespace {

// m^2 - (omega + s i lambda)^2 with the limit-from-Re(lambda)>0 convention on the cut.
complex branch_root(double m, double omega, complex lambda, int s) {
  const double u = omega - s * lambda.imag();
  const double v = s * lambda.real();
  const double re = (m - u) * (m + u) + v * v;
  const double im = -2.0 * u * v;
  if (im == 0.0 && re < 0.0) {
    // d(Im z)/d(Re lambda) = -2 s u decides the side of the cut.
    const double side = -s * u;
    return {0.0, std::copysign(std::sqrt(-re), side)};
  }
  return std::sqrt(complex{re, im});
}

// Axis direction of a real or purely imaginary candidate.
complex axis_of(complex lambda) {
  return std::abs(lambda.imag()) > std::abs(lambda.real()) ? complex{0.0, 1.0} : complex{1.0, 0.0};
}

// Gauss-Newton along the axis lambda = t * dir; the iterate is kept on the
// same side of the gap edge for imaginary candidates.
complex polish_on_axis(const ModelParams& p, complex lambda, Sheet sheet, int iterations) {
  const complex dir = axis_of(lambda);
  double t = (lambda / dir).real();
  const bool imaginary = dir.imag() != 0.0;
  const double edge = p.m() - std::abs(p.omega());
  const bool below_edge = std::abs(t) < edge;
  auto f = [&](double s) { return dispersion_determinant(p, s * dir, sheet); };
  complex ft = f(t);
  // A refinement, not a search: D vanishes at 0, and unbounded steps from a
  // small spurious seed can slide into that trivial zero.
  const double t0 = t;
  const double reach = 1e-6 * (1.0 + std::abs(t0));
  for (int it = 0; it < iterations; ++it) {
    if (std::abs(ft) <= 1e-16 * determinant_scale(p, t * dir, sheet)) break;
    const double h = 1e-7 * (1.0 + std::abs(t));
    const complex df = (f(t + h) - f(t - h)) / (2.0 * h);
    const double denom = std::norm(df);
    if (denom == 0.0 || !std::isfinite(denom)) break;
    const double next = t - (std::conj(df) * ft).real() / denom;
    if (!std::isfinite(next) || next * t <= 0.0 || std::abs(next - t0) > reach) break;
    if (imaginary && (std::abs(next) < edge) != below_edge) break;
    const complex fn = f(next);
    if (!(std::abs(fn) < std::abs(ft))) break;
    t = next;
    ft = fn;
  }
  return t * dir;
}

double presquare_residual(const ModelParams& p, complex x, complex lambda) {
  const double a = p.coupling();
  const double k = p.kappa();
  const double m2 = p.m() * p.m();
  const double a2 = a * a, a3 = a2 * a, a4 = a2 * a2;
  const double k2 = k * k;
  const std::array<complex, 7> lhs_terms = {x * x,
                                            4.0 * x * m2,
                                            -x * a2,
                                            complex{-a4 * k2 * k2 / 8.0},
                                            complex{a4 * k2 / 8.0},
                                            -x * a2 * k2 / 2.0,
                                            -x * a2 * k};
  complex lhs{0.0};
  double size = 0.0;
  for (const auto& term : lhs_terms) {
    lhs += term;
    size += std::abs(term);
  }
  const double coef = a3 * (1.0 + k) * k2 / 8.0;
  const complex root = std::sqrt(complex{a2 * (1.0 - k) * (1.0 - k)} + 8.0 * x);
  const auto nu = nu_pm(p, lambda, kPhysicalSheet);
  const complex w = 2.0 * (nu.plus + nu.minus) - a * (1.0 + k);
  const double sign = (w * std::conj(root)).real() >= 0.0 ? 1.0 : -1.0;
  const complex rhs = sign * coef * root;
  size += std::abs(rhs);
  if (size == 0.0) return 0.0;
  return std::abs(lhs - rhs) / size;
}

}  // namespace

std::string to_string(Sheet s) {
  std::string out = "(";
  out += s.plus > 0 ? '+' : '-';
  out += ',';
  out += s.minus > 0 ? '+' : '-';
  out += ')';
  return out;
}

NuPair nu_pm(const ModelParams& p, complex lambda, Sheet sheet) {
  return {static_cast<double>(sheet.plus) * branch_root(p.m(), p.omega(), lambda, +1),
          static_cast<double>(sheet.minus) * branch_root(p.m(), p.omega(), lambda, -1)};
}

complex dispersion_determinant(const ModelParams& p, complex lambda, Sheet sheet) {
  const auto nu = nu_pm(p, lambda, sheet);
  const double a = p.coupling();
  const double k = p.kappa();
  // a^2(1+k)^2 - a^2 k^2 folded into a^2(1+2k) to avoid cancellation at large |k|.
  return a * a * (1.0 + 2.0 * k) - 2.0 * (nu.plus + nu.minus) * a * (1.0 + k) +
         4.0 * nu.plus * nu.minus;
}

double determinant_scale(const ModelParams& p, complex lambda, Sheet sheet) {
  const auto nu = nu_pm(p, lambda, sheet);
  const double a = p.coupling();
  const double k = p.kappa();
  return a * a * (1.0 + k) * (1.0 + k) + a * a * k * k +
         4.0 * (std::abs(nu.plus) + std::abs(nu.minus)) * a * std::abs(1.0 + k) +
         4.0 * std::abs(nu.plus * nu.minus);
}

double relative_residual(const ModelParams& p, complex lambda, Sheet sheet) {
  return std::abs(dispersion_determinant(p, lambda, sheet)) / determinant_scale(p, lambda, sheet);
}

double gap_function(const ModelParams& p, double Lambda) {
  const double w = std::abs(p.omega());
  const double m = p.m();
  const double edge = m - w;
  if (!(Lambda > 0.0) || Lambda > edge) {
    throw DomainError("gap_function needs 0 < Lambda <= m - |omega|");
  }
  const double t_up = Lambda * (Lambda + 2.0 * w);
  const double t_down = Lambda * (Lambda - 2.0 * w);
  if (t_down == 0.0) throw DomainError("gap_function has a pole at Lambda = 2|omega|");
  const double k = p.decay();
  // 1/(k - sqrt(k^2 - t)) = (k + sqrt(k^2 - t)) / t, free of cancellation for small t.
  const double r_up = std::sqrt(std::max(0.0, (m - w - Lambda) * (m + w + Lambda)));
  const double r_down = std::sqrt(std::max(0.0, (m - w + Lambda) * (m + w - Lambda)));
  return (k + r_up) / t_up + (k + r_down) / t_down;
}

std::optional<double> kolokolov_frequency(double m, double kappa) {
  if (kappa < 0.0) return std::nullopt;
  return m * std::sqrt(kappa);
}

double virtual_level_frequency(double m, double kappa) {
  const double s = 1.0 + 2.0 * kappa;
  return m * s * s / (3.0 + 4.0 * kappa);
}

double virtual_level_exponent(double m, double omega) {
  const double s = std::sqrt(std::abs(omega) / (m + std::abs(omega)));
  return (2.0 * s - 1.0) / (2.0 - 2.0 * s);
}

CriticalCurves critical_curves(const ModelParams& p) {
  CriticalCurves out{kolokolov_frequency(p.m(), p.kappa()), std::nullopt,
                     virtual_level_exponent(p.m(), p.omega())};
  if (3.0 + 4.0 * p.kappa() != 0.0) out.virtual_level = virtual_level_frequency(p.m(), p.kappa());
  return out;
}

std::string_view to_string(CandidateStatus s) {
  switch (s) {
    case CandidateStatus::Accepted:
      return "accepted";
    case CandidateStatus::Resonance:
      return "resonance";
    case CandidateStatus::Spurious:
      return "spurious";
    case CandidateStatus::ComplexRoot:
      return "complex";
  }
  return "unknown";
}

std::vector<RootCandidate> candidate_roots(const ModelParams& p, const PipelineOptions& opts) {
  CubicData cd = cubic_data(p);
  if (opts.q_perturbation != 0.0) cd = with_pq(cd, cd.p, cd.q * (1.0 + opts.q_perturbation));
  const auto ys = depressed_cubic_roots(cd.p, cd.q);

  const double a2 = p.coupling() * p.coupling();
  double x_scale = std::max({std::abs(cd.c), a2, p.m() * p.m()});
  for (const auto& y : ys) x_scale = std::max(x_scale, std::abs(y));

  std::vector<RootCandidate> out;
  std::vector<complex> seen;
  for (int k = 0; k < 3; ++k) {
    const complex y = ys[k];
    const complex x = y - 2.0 * cd.c / 3.0;
    const bool is_complex = y.imag() != 0.0;
    if (!is_complex && std::abs(x) <= 1e-13 * x_scale) continue;
    const bool repeated = std::any_of(seen.begin(), seen.end(), [&](const complex& s) {
      return std::abs(s - x) <= 1e-13 * x_scale;
    });
    if (repeated) continue;
    seen.push_back(x);

    const complex root = std::sqrt(is_complex ? x : complex{x.real(), 0.0});
    for (const double sign : {1.0, -1.0}) {
      const complex guess = sign * root;
      RootCandidate cand{guess, std::nullopt, 0.0, 0.0, k, x, y, CandidateStatus::Spurious};
      if (is_complex) {
        cand.status = CandidateStatus::ComplexRoot;
        double best = std::numeric_limits<double>::infinity();
        for (const Sheet s : kAllSheets) {
          const double r = relative_residual(p, guess, s);
          if (r < best) {
            best = r;
            if (r <= opts.tol.residual) cand.sheet = s;
          }
        }
        cand.residual = best;
        out.push_back(cand);
        continue;
      }

      const complex polished = polish_on_axis(p, guess, kPhysicalSheet, opts.newton_iterations);
      const double phys = relative_residual(p, polished, kPhysicalSheet);
      cand.presquare_residual = presquare_residual(p, polished * polished, polished);
      if (phys <= opts.tol.residual && cand.presquare_residual <= 1e3 * opts.tol.residual) {
        cand.lambda = polished;
        cand.sheet = kPhysicalSheet;
        cand.residual = phys;
        cand.status = CandidateStatus::Accepted;
        out.push_back(cand);
        continue;
      }
      double best = phys;
      complex best_lambda = polished;
      std::optional<Sheet> best_sheet;
      for (const Sheet s : kAllSheets) {
        if (s.is_physical()) continue;
        const complex pl = polish_on_axis(p, guess, s, opts.newton_iterations);
        const double r = relative_residual(p, pl, s);
        if (r < best) {
          best = r;
          best_lambda = pl;
          best_sheet = s;
        }
      }
      cand.residual = best;
      if (best_sheet && best <= opts.tol.residual) {
        cand.lambda = best_lambda;
        cand.sheet = best_sheet;
        cand.status = CandidateStatus::Resonance;
      }
      out.push_back(cand);
    }
  }
  return out;
}

std::vector<complex> accepted_roots(const std::vector<RootCandidate>& candidates) {
  std::vector<complex> out;
  for (const auto& c : candidates) {
    if (c.status != CandidateStatus::Accepted) continue;
    // Neighbouring cubic roots can polish onto the same eigenvalue.
    const bool repeated = std::any_of(out.begin(), out.end(), [&](const complex& z) {
      return std::abs(z - c.lambda) <= 1e-8 * (1.0 + std::abs(z));
    });
    if (!repeated) out.push_back(c.lambda);
  }
  return out;
}

}  // namespace kgdelta
