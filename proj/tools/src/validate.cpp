#include "kgdelta/app/validate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "kgdelta/classify.hpp"

namespace kgdelta::app {

namespace {

using complex = std::complex<double>;

std::string where(const ModelParams& p) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "m=%.17g omega=%.17g kappa=%.17g", p.m(), p.omega(), p.kappa());
  return buf;
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string cnum(complex z) {
  char buf[80];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
  return buf;
}

bool in_band(const ModelParams& p, double band) {
  const double k = p.kappa();
  const double w = p.omega();
  return std::abs(k - w * w / (p.m() * p.m())) <= band ||
         std::abs(k - virtual_level_exponent(p.m(), w)) <= band;
}

struct AxisRoot {
  double polished;
  double seed;
};

void match(const std::vector<double>& scanned, const std::vector<AxisRoot>& found, double tol,
           const std::string& axis, const ModelParams& p, std::vector<std::string>& problems) {
  for (const double t : scanned) {
    const auto it = std::find_if(found.begin(), found.end(),
                                 [&](const AxisRoot& r) { return std::abs(r.polished - t) <= tol; });
    if (it == found.end()) {
      problems.push_back(axis + " root " + num(t) + " missing from cubic pipeline at " + where(p));
    } else if (std::abs(it->seed - t) > tol) {
      problems.push_back(axis + " cubic seed " + num(it->seed) + " misses root " + num(t) +
                         " at " + where(p));
    }
  }
  for (const auto& r : found) {
    const bool hit = std::any_of(scanned.begin(), scanned.end(),
                                 [&](double t) { return std::abs(r.polished - t) <= tol; });
    if (!hit) {
      problems.push_back(axis + " root " + num(r.polished) + " not found by dense scan at " + where(p));
    }
  }
}

}  // namespace

bool ValidateReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.failed == 0; });
}

void compare_with_scan(const ModelParams& p, const PipelineOptions& opts, double step,
                       double match_tol, CheckResult& out) {
  const auto scan = dense_scan_roots(p, step);
  const double edge = p.m() - std::abs(p.omega());
  std::vector<AxisRoot> real, imag;
  auto add = [&](std::vector<AxisRoot>& list, double polished, double seed) {
    for (auto& r : list) {
      if (std::abs(r.polished - polished) <= 1e-8 * (1.0 + polished)) {
        if (std::abs(seed - polished) < std::abs(r.seed - r.polished)) r.seed = seed;
        return;
      }
    }
    list.push_back({polished, seed});
  };
  for (const auto& c : candidate_roots(p, opts)) {
    if (c.status != CandidateStatus::Accepted) continue;
    const complex seed = std::sqrt(c.x);
    if (std::abs(c.lambda.real()) >= std::abs(c.lambda.imag())) {
      if (c.lambda.real() > 0.0 && c.lambda.real() < scan.real_range) {
        add(real, c.lambda.real(), std::abs(seed.real()));
      }
    } else if (c.lambda.imag() > 0.0 && c.lambda.imag() <= edge) {
      add(imag, c.lambda.imag(), std::abs(seed.imag()));
    }
  }
  std::vector<std::string> problems;
  match(scan.real, real, match_tol, "real", p, problems);
  match(scan.imag, imag, match_tol, "imaginary", p, problems);
  if (problems.empty()) {
    ++out.passed;
  } else {
    ++out.failed;
    out.failures.insert(out.failures.end(), problems.begin(), problems.end());
  }
}

namespace {

void check_closed_forms(double m, const PipelineOptions& opts, CheckResult& out) {
  for (const double k : {-0.45, -0.25, -0.1, 0.3, 1.0, 2.5}) {
    const ModelParams p(m, 0.0, k);
    const double s = k * (1.0 + k);
    const complex expect = s > 0 ? complex{2.0 * m * std::sqrt(s), 0.0}
                                 : complex{0.0, 2.0 * m * std::sqrt(-s)};
    const auto roots = classify_point_spectrum(p, opts).nonzero_eigenvalues();
    const bool ok = roots.size() == 2 && std::any_of(roots.begin(), roots.end(), [&](complex z) {
      return std::abs(z - expect) <= 1e-9;
    }) && std::any_of(roots.begin(), roots.end(), [&](complex z) { return std::abs(z + expect) <= 1e-9; });
    if (ok) {
      ++out.passed;
    } else {
      ++out.failed;
      out.failures.push_back("omega=0 root +-" + cnum(expect) + " not reproduced at " + where(p));
    }
  }
  for (const double f : {0.1, 0.25, 0.4, 0.6, 0.9}) {
    const double w = f * m;
    const ModelParams p(m, w, 0.0);
    const auto report = classify_point_spectrum(p, opts);
    const auto roots = report.nonzero_eigenvalues();
    bool ok = roots.size() == 2 && report.jordan_at_zero.geometric == 2 &&
              report.jordan_at_zero.algebraic == 2;
    for (const auto& e : report.point) {
      if (e.value == complex{0.0}) continue;
      ok = ok && std::abs(std::abs(e.value.imag()) - 2.0 * w) <= 1e-9 && std::abs(e.value.real()) <= 1e-9;
      ok = ok && e.embedded == (w >= m / 3.0);
    }
    if (ok) {
      ++out.passed;
    } else {
      ++out.failed;
      out.failures.push_back("kappa=0 pair +-2 omega i not reproduced at " + where(p));
    }
  }
}

void check_identities(const ModelParams& p, CheckResult& out) {
  if (const auto pair = block_eigenvalues(p)) {
    const double lam = *scalar_eigenvalue(p);
    const double sum = lam + p.omega() * p.omega() + 1.0;
    const double prod_err = std::abs(pair->first * pair->second - lam) / std::max(1.0, std::abs(lam));
    const double sum_err = std::abs(pair->first + pair->second - sum) / std::max(1.0, std::abs(sum));
    if (prod_err <= 1e-12 && sum_err <= 1e-12) {
      ++out.passed;
    } else {
      ++out.failed;
      out.failures.push_back("Vieta identities fail (product " + num(prod_err) + ", sum " +
                             num(sum_err) + ") at " + where(p));
    }
  }
}

void check_inverse(double m, CheckResult& out) {
  for (int i = 0; i < 24; ++i) {
    const double k = -0.5 + (1.0 / std::sqrt(2.0) + 0.5) * i / 24.0;
    const double t = virtual_level_frequency(m, k);
    const double back = virtual_level_exponent(m, t);
    if (std::abs(back - k) <= 1e-10) {
      ++out.passed;
    } else {
      ++out.failed;
      out.failures.push_back("K(T(kappa)) = " + num(back) + " != kappa = " + num(k));
    }
  }
}

void check_virtual_level(const ModelParams& p, const PipelineOptions& opts, CheckResult& out,
                         bool absolute) {
  const double edge = p.m() - std::abs(p.omega());
  const complex lambda{0.0, edge};
  const double d = std::abs(dispersion_determinant(p, lambda));
  const double rel = d / determinant_scale(p, lambda);
  const auto report = classify_point_spectrum(p, opts);
  const bool ok = (absolute ? d < 1e-12 : rel <= 1e-10) && report.virtual_levels.size() == 2;
  out.notes.push_back("|D(" + cnum(lambda) + ")| = " + num(d) + " (relative " + num(rel) + ") at " +
                      where(p));
  if (ok) {
    ++out.passed;
  } else {
    ++out.failed;
    out.failures.push_back("virtual level residual " + num(absolute ? d : rel) + " too large at " +
                           where(p));
  }
}

}  // namespace

ValidateReport run_validation(const ValidateConfig& cfg) {
  PipelineOptions opts;
  opts.q_perturbation = cfg.perturb_q;
  ValidateReport report;
  CheckResult scan{"cubic_vs_scan"}, closed{"closed_forms"}, ident{"identities"}, vl{"virtual_levels"};

  if (cfg.at) {
    const auto [m, w, k] = *cfg.at;
    const ModelParams p(m, w, k);
    if (in_band(p, cfg.band)) {
      ++scan.skipped;
      scan.notes.push_back("point lies in a tolerance band; scan comparison skipped");
    } else {
      compare_with_scan(p, opts, cfg.scan_step, cfg.match_tol, scan);
    }
    check_identities(p, ident);
    const std::optional<double> t =
        3.0 + 4.0 * k != 0.0 ? std::optional(virtual_level_frequency(m, k)) : std::nullopt;
    if (t && k >= -0.5 && k < 1.0 / std::sqrt(2.0) && k != 0.0 && std::abs(std::abs(w) - *t) <= 1e-8 * m) {
      check_virtual_level(p, opts, vl, true);
    }
    report.checks = {scan, ident, vl};
    return report;
  }

  for (std::size_t i = 0; i < cfg.omega.n; ++i) {
    for (std::size_t j = 0; j < cfg.kappa.n; ++j) {
      const ModelParams p(cfg.m, cfg.omega.at(i), cfg.kappa.at(j));
      if (in_band(p, cfg.band)) {
        ++scan.skipped;
      } else {
        compare_with_scan(p, opts, cfg.scan_step, cfg.match_tol, scan);
      }
      check_identities(p, ident);
    }
  }
  check_closed_forms(cfg.m, opts, closed);
  check_inverse(cfg.m, ident);
  for (int i = 0; i < 20; ++i) {
    const double k = -0.49 + 1.19 * (i + 0.5) / 20.0;
    if (std::abs(k) <= 1e-12) continue;
    check_virtual_level(ModelParams(cfg.m, virtual_level_frequency(cfg.m, k), k), opts, vl, false);
  }
  report.checks = {scan, closed, ident, vl};
  return report;
}

void print_report(const ValidateReport& report, std::ostream& out) {
  std::size_t passed = 0, failed = 0;
  for (const auto& c : report.checks) {
    out << "check " << c.name << ": " << c.passed << " passed, " << c.failed << " failed";
    if (c.skipped) out << ", " << c.skipped << " skipped in tolerance bands";
    out << '\n';
    for (const auto& n : c.notes) out << "  note: " << n << '\n';
    for (const auto& f : c.failures) out << "  FAIL: " << f << '\n';
    passed += c.passed;
    failed += c.failed;
  }
  out << "total: " << passed << " passed, " << failed << " failed\n";
}

}  // namespace kgdelta::app
