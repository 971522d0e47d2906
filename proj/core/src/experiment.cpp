#include "kgdelta/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <ostream>
#include <random>

#include <nlohmann/json.hpp>

#include "kgdelta/classify.hpp"

namespace kgdelta {

using complex = std::complex<double>;

namespace {

// Even bump on |x| < width: cos^2(pi x / 2W) times a random cosine series.
void add_random_even(std::vector<complex>& out, const Grid& grid, double width,
                     std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  std::array<complex, 6> coeff;
  for (auto& c : coeff) {
    const double re = normal(rng);
    c = {re, normal(rng)};
  }
  for (std::size_t j = 1; j + 1 < grid.size(); ++j) {
    const double x = grid.x(j);
    if (std::abs(x) >= width) continue;
    const double envelope = std::pow(std::cos(0.5 * std::numbers::pi * x / width), 2);
    complex series{0.0};
    for (std::size_t k = 0; k < coeff.size(); ++k) {
      series += coeff[k] * std::cos(static_cast<double>(k) * std::numbers::pi * x / width);
    }
    out[j] += envelope * series;
  }
}

double max_abs(const std::vector<complex>& v) {
  double out = 0.0;
  for (const auto& z : v) {
    const double a = std::abs(z);
    if (!(a <= out)) out = a;  // propagates NaN
  }
  return out;
}

void append_number(std::string& line, double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  line.append(buf, res.ptr);
}

}  // namespace

std::optional<GrowthFit> fit_growth(const std::vector<double>& t, const std::vector<double>& d,
                                    double lo, double hi) {
  std::size_t i = 0;
  while (i < d.size()) {
    while (i < d.size() && !(d[i] >= lo && d[i] <= hi)) ++i;
    std::size_t j = i;
    while (j < d.size() && d[j] >= lo && d[j] <= hi) ++j;
    if (j - i >= 5) {
      const double n = static_cast<double>(j - i);
      double st = 0.0, sy = 0.0;
      for (std::size_t k = i; k < j; ++k) {
        st += t[k];
        sy += std::log(d[k]);
      }
      const double tm = st / n, ym = sy / n;
      double num = 0.0, den = 0.0;
      for (std::size_t k = i; k < j; ++k) {
        num += (t[k] - tm) * (std::log(d[k]) - ym);
        den += (t[k] - tm) * (t[k] - tm);
      }
      return GrowthFit{num / den, t[i], t[j - 1], j - i};
    }
    i = j;
  }
  return std::nullopt;
}

RunReport run_experiment(const Nonlinearity& nl, const ExperimentConfig& cfg) {
  if (!(cfg.epsilon >= 0.0)) throw DomainError("epsilon must be >= 0");
  if (!(cfg.T >= 0.0)) throw DomainError("T must be >= 0");
  const auto derived = derived_params(cfg.m, cfg.omega);
  const double decay = derived.decay;
  const double h = cfg.h.value_or(0.02 / std::max(decay, cfg.m));
  const double L = cfg.half_length.value_or(std::max(30.0 / decay, cfg.T + 10.0 / decay));
  if (L < 30.0 / decay * (1.0 - 1e-12)) throw DomainError("half-length must be >= 30/decay");
  if (cfg.T > L - 10.0 / decay + 1e-9) throw DomainError("T must be <= L - 10/decay");

  const Grid grid = Grid::with_spacing(L, h);
  const Lattice lattice(nl, cfg.m, grid);
  const double dt = cfg.dt.value_or(0.4 * grid.spacing());
  if (!(dt > 0.0)) throw DomainError("dt must be positive");
  if (dt > lattice.max_dt() * (1.0 + 1e-12)) throw DomainError("time step violates the CFL bound");

  const auto wave = make_solitary_wave(nl, cfg.m, cfg.omega);
  auto stationary = discrete_stationary(nl, cfg.m, cfg.omega, grid, cfg.phase);

  // Momentum for which velocity Verlet maps (phi, -i g phi) to an exact rotation.
  const double w = cfg.omega;
  const double g = w * std::sqrt(std::max(0.0, 1.0 - 0.25 * w * w * dt * dt));
  FieldState reference = stationary.state;
  for (std::size_t j = 0; j < grid.size(); ++j) reference.pi[j] = complex{0.0, -g} * reference.psi[j];

  const auto spectrum = classify_point_spectrum(wave.params);
  RunReport r{.config = cfg,
              .grid = grid,
              .dt = dt,
              .amplitude = wave.amplitude,
              .discrete_amplitude = stationary.amplitude,
              .kappa = wave.params.kappa(),
              .predicted = spectrum.verdict,
              .reference_norm = lattice.e_norm(reference)};
  for (const auto& z : spectrum.nonzero_eigenvalues()) {
    if (z.real() > 0.0 && (!r.predicted_rate || z.real() > *r.predicted_rate)) r.predicted_rate = z.real();
  }

  FieldState state = reference;
  if (cfg.epsilon > 0.0) {
    FieldState bump = zero_state(grid);
    std::mt19937_64 rng(cfg.seed);
    add_random_even(bump.psi, grid, 10.0 / decay, rng);
    add_random_even(bump.pi, grid, 10.0 / decay, rng);
    const double scale = cfg.epsilon / lattice.e_norm(bump);
    const complex rot = std::polar(scale, cfg.phase);
    for (std::size_t j = 0; j < grid.size(); ++j) {
      state.psi[j] += rot * bump.psi[j];
      state.pi[j] += rot * bump.pi[j];
    }
  }

  const auto steps = static_cast<std::size_t>(std::ceil(cfg.T / dt - 1e-9));
  const std::size_t every = std::max<std::size_t>(1, std::llround(cfg.record_interval / dt));
  const double blowup = 1e3 * wave.amplitude;
  double l2 = 0.0;
  for (const auto& z : state.psi) l2 += std::norm(z);
  l2 *= grid.spacing();

  auto record = [&](const FieldState& s) {
    r.times.push_back(s.t);
    r.energy.push_back(lattice.energy(s));
    r.charge.push_back(lattice.charge(s));
    r.distance.push_back(lattice.orbital_distance(s, reference));
  };
  record(state);
  for (std::size_t done = 0; done < steps;) {
    const std::size_t chunk = std::min(every, steps - done);
    lattice.advance(state, dt, chunk);
    done += chunk;
    r.steps_taken = done;
    const double peak = max_abs(state.psi);
    if (!(peak <= blowup)) {
      r.aborted = true;
      r.abort_reason = std::isfinite(peak) ? "max|psi| exceeded 1e3 C" : "non-finite field";
      break;
    }
    record(state);
  }

  const double e0 = r.energy.front();
  const double q0 = r.charge.front();
  const double q_scale = std::max(std::abs(q0), cfg.m * l2);
  for (std::size_t k = 0; k < r.times.size(); ++k) {
    r.energy_drift = std::max(r.energy_drift, std::abs(r.energy[k] - e0) / std::abs(e0));
    r.charge_drift = std::max(r.charge_drift, std::abs(r.charge[k] - q0) / q_scale);
  }
  r.initial_distance = r.distance.front();
  r.max_distance = *std::max_element(r.distance.begin(), r.distance.end());

  if (r.predicted == Verdict::Unstable && cfg.epsilon > 0.0) {
    r.fit = fit_growth(r.times, r.distance, 10.0 * cfg.epsilon, 0.1 * r.reference_norm);
  }

  const double d0 = r.initial_distance;
  if (r.aborted || (d0 > 0.0 && r.max_distance >= 100.0 * d0)) {
    r.observed = "growing";
  } else if (cfg.epsilon == 0.0 ? r.max_distance <= 1e-9 : r.max_distance <= 3.0 * d0) {
    r.observed = "bounded";
  } else {
    r.observed = "inconclusive";
  }
  r.agreement = (r.predicted == Verdict::Stable) ? r.observed == "bounded" : r.observed == "growing";
  return r;
}

void write_csv(const RunReport& r, std::ostream& out) {
  out << "t,energy,charge,orbital_distance\n";
  std::string line;
  for (std::size_t k = 0; k < r.times.size(); ++k) {
    line.clear();
    append_number(line, r.times[k]);
    line += ',';
    append_number(line, r.energy[k]);
    line += ',';
    append_number(line, r.charge[k]);
    line += ',';
    append_number(line, r.distance[k]);
    line += '\n';
    out << line;
  }
}

nlohmann::json summary_json(const RunReport& r, const Nonlinearity& nl) {
  using nlohmann::json;
  auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  json j;
  j["schema"] = 1;
  j["params"] = {{"m", r.config.m},
                 {"omega", r.config.omega},
                 {"kappa", r.kappa},
                 {"nonlinearity", nl.to_json()}};
  j["numerics"] = {{"half_length", r.grid.half_length()},
                   {"n_points", r.grid.size()},
                   {"h", r.grid.spacing()},
                   {"dt", r.dt},
                   {"T", r.config.T},
                   {"record_interval", r.config.record_interval},
                   {"steps_taken", r.steps_taken}};
  j["perturbation"] = {{"epsilon", r.config.epsilon},
                       {"seed", r.config.seed},
                       {"phase", r.config.phase}};
  j["amplitude"] = r.amplitude;
  j["discrete_amplitude"] = r.discrete_amplitude;
  j["reference_norm"] = r.reference_norm;
  j["predicted_verdict"] = std::string(to_string(r.predicted));
  j["predicted_rate"] = opt(r.predicted_rate);
  if (r.fit) {
    j["fitted_rate"] = r.fit->rate;
    j["fit_window"] = {{"t_begin", r.fit->t_begin}, {"t_end", r.fit->t_end}, {"samples", r.fit->samples}};
  } else {
    j["fitted_rate"] = nullptr;
  }
  j["energy_drift"] = r.energy_drift;
  j["charge_drift"] = r.charge_drift;
  j["initial_distance"] = r.initial_distance;
  j["max_distance"] = r.max_distance;
  j["observed"] = r.observed;
  j["agreement"] = r.agreement;
  j["aborted"] = r.aborted;
  if (r.aborted) j["abort_reason"] = r.abort_reason;
  return j;
}

}  // namespace kgdelta
