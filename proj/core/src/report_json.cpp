#include "kgdelta/report_json.hpp"

#include <cmath>

namespace kgdelta {

namespace {

using nlohmann::json;

json number(double v) {
  if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
  if (std::isnan(v)) return nullptr;
  return v;
}

json complex_json(std::complex<double> z) { return {{"re", z.real()}, {"im", z.imag()}}; }

json points_json(const std::vector<SpectralPoint>& pts) {
  json out = json::array();
  for (const auto& e : pts) {
    json j = complex_json(e.value);
    j["geometric_mult"] = e.geometric_mult;
    j["algebraic_mult"] = e.algebraic_mult;
    j["embedded"] = e.embedded;
    out.push_back(std::move(j));
  }
  return out;
}

json operator_json(const OperatorSpectrum& s) {
  return {{"ess_intervals", interval_set_json(s.essential)}, {"point_spectrum", points_json(s.point)}};
}

json optional_number(const std::optional<double>& v) { return v ? number(*v) : json(nullptr); }

}  // namespace

json interval_set_json(const RealIntervalSet& set) {
  json out = json::array();
  for (const auto& iv : set.intervals()) out.push_back({number(iv.lo), number(iv.hi)});
  return out;
}

json to_json(const SpectrumReport& r, bool verbose) {
  const auto& p = r.params;
  json j;
  j["schema"] = 1;
  j["params"] = {{"m", p.m()},
                 {"omega", p.omega()},
                 {"kappa", p.kappa()},
                 {"decay", p.decay()},
                 {"coupling", p.coupling()}};
  j["tolerances"] = {{"threshold", r.tol.threshold},
                     {"boundary", r.tol.boundary},
                     {"residual", r.tol.residual}};
  // sigma_ess(A) lies on the imaginary axis; intervals are of imaginary parts.
  j["ess_intervals"] = interval_set_json(r.essential.imag_parts);
  j["thresholds"] = r.essential.thresholds;
  j["point_spectrum"] = points_json(r.point);
  j["jordan_at_zero"] = {{"geometric", r.jordan_at_zero.geometric},
                         {"algebraic", r.jordan_at_zero.algebraic}};
  j["verdict"] = std::string(to_string(r.verdict));
  j["unstable"] = is_unstable(r.verdict);
  json vl = json::array();
  for (const auto& z : r.virtual_levels) vl.push_back(complex_json(z));
  j["virtual_levels"] = std::move(vl);
  j["boundary"] = r.boundary;
  j["flags"] = r.flags;
  j["critical_curves"] = {{"Omega_kappa", optional_number(r.curves.kolokolov)},
                          {"T_kappa", optional_number(r.curves.virtual_level)},
                          {"K_omega", r.curves.k_omega}};
  j["cubic"] = {{"c", r.cubic.c}, {"p", r.cubic.p}, {"q", r.cubic.q}, {"Delta", r.cubic.delta}};
  j["L"] = operator_json(r.L);
  j["H"] = operator_json(r.H);
  if (verbose) {
    json cands = json::array();
    for (const auto& c : r.candidates) {
      json cj = {{"lambda", complex_json(c.lambda)},
                 {"status", std::string(to_string(c.status))},
                 {"residual", number(c.residual)},
                 {"presquare_residual", number(c.presquare_residual)},
                 {"cubic_index", c.cubic_index},
                 {"x", complex_json(c.x)},
                 {"y", complex_json(c.y)}};
      cj["sheet"] = c.sheet ? json(to_string(*c.sheet)) : json("off-all-sheets");
      cands.push_back(std::move(cj));
    }
    j["candidates"] = std::move(cands);
  }
  return j;
}

}  // namespace kgdelta
