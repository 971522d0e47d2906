#include "kgdelta/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

// Boost 1.74 pchip calls isnan unqualified.
using std::isnan;

#include <boost/math/interpolators/cubic_hermite.hpp>
#include <boost/math/interpolators/pchip.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/toms748_solve.hpp>
#include <nlohmann/json.hpp>

namespace kgdelta {

namespace {

void check_frequency(double m, double omega) {
  if (!(m > 0.0) || !std::isfinite(m)) {
    throw DomainError("mass must be positive and finite, got m=" + std::to_string(m));
  }
  if (!(std::abs(omega) < m)) {
    throw DomainError("frequency must satisfy |omega| < m, got omega=" + std::to_string(omega) +
                      ", m=" + std::to_string(m));
  }
}

double quadrature(const std::function<double(double)>& f, double lo, double hi) {
  if (hi == lo) return 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, lo, hi, 15, 1e-13);
}

// Sampled a(tau) interpolated by a C^1 piecewise cubic, extended linearly past
// both ends of the table.
class TableInterpolant {
 public:
  TableInterpolant(std::vector<double> tau, std::vector<double> a, std::vector<double> a_prime) {
    if (tau.size() < 4 || tau.size() != a.size()) {
      throw std::invalid_argument("table nonlinearity needs >= 4 samples with matching tau/a");
    }
    if (!std::is_sorted(tau.begin(), tau.end()) ||
        std::adjacent_find(tau.begin(), tau.end()) != tau.end()) {
      throw std::invalid_argument("table nonlinearity: tau must be strictly increasing");
    }
    lo_ = tau.front();
    hi_ = tau.back();
    if (!a_prime.empty()) {
      if (a_prime.size() != tau.size()) {
        throw std::invalid_argument("table nonlinearity: a_prime size mismatch");
      }
      hermite_ = std::make_shared<Hermite>(std::move(tau), std::move(a), std::move(a_prime));
    } else {
      pchip_ = std::make_shared<Pchip>(std::move(tau), std::move(a));
    }
    a_lo_ = eval(lo_);
    a_hi_ = eval(hi_);
    d_lo_ = deriv(lo_);
    d_hi_ = deriv(hi_);
  }

  double value(double t) const {
    if (t < lo_) return a_lo_ + d_lo_ * (t - lo_);
    if (t > hi_) return a_hi_ + d_hi_ * (t - hi_);
    return eval(t);
  }
  double prime(double t) const {
    if (t < lo_) return d_lo_;
    if (t > hi_) return d_hi_;
    return deriv(t);
  }
  double upper() const { return hi_; }

 private:
  using Pchip = boost::math::interpolators::pchip<std::vector<double>>;
  using Hermite = boost::math::interpolators::cubic_hermite<std::vector<double>>;

  double eval(double t) const { return hermite_ ? (*hermite_)(t) : (*pchip_)(t); }
  double deriv(double t) const { return hermite_ ? hermite_->prime(t) : pchip_->prime(t); }

  std::shared_ptr<Pchip> pchip_;
  std::shared_ptr<Hermite> hermite_;
  double lo_ = 0, hi_ = 0, a_lo_ = 0, a_hi_ = 0, d_lo_ = 0, d_hi_ = 0;
};

}  // namespace

ModelParams::ModelParams(double m, double omega, double kappa)
    : m_(m), omega_(omega), kappa_(kappa) {
  check_frequency(m, omega);
  if (!std::isfinite(kappa)) throw DomainError("kappa must be finite");
  decay_ = std::sqrt((m - omega) * (m + omega));
}

DerivedParams derived_params(double m, double omega) {
  check_frequency(m, omega);
  const double decay = std::sqrt((m - omega) * (m + omega));
  return {decay, 2.0 * decay};
}

Nonlinearity::Nonlinearity(PowerLaw law) : impl_(law) {
  if (!std::isfinite(law.g) || !std::isfinite(law.exponent)) {
    throw std::invalid_argument("power-law nonlinearity needs finite g and exponent");
  }
}

Nonlinearity::Nonlinearity(Tabulated table) : impl_(std::move(table)) {
  const auto& t = std::get<Tabulated>(impl_);
  if (!t.a || !t.a_prime) throw std::invalid_argument("tabulated nonlinearity needs a and a_prime");
  if (!(t.tau_max > 1e-12)) throw std::invalid_argument("tabulated nonlinearity: tau_max too small");
}

Nonlinearity Nonlinearity::from_json(const nlohmann::json& config) {
  const std::string type = config.at("type").get<std::string>();
  if (type == "power") {
    PowerLaw law{config.value("g", 1.0), config.at("kappa").get<double>()};
    Nonlinearity nl(law);
    nl.source_ = std::make_shared<const nlohmann::json>(config);
    return nl;
  }
  if (type == "table") {
    auto tau = config.at("tau").get<std::vector<double>>();
    auto a = config.at("a").get<std::vector<double>>();
    std::vector<double> a_prime;
    if (config.contains("a_prime")) a_prime = config.at("a_prime").get<std::vector<double>>();
    auto interp = std::make_shared<TableInterpolant>(std::move(tau), std::move(a), std::move(a_prime));
    Tabulated table;
    table.a = [interp](double t) { return interp->value(t); };
    table.a_prime = [interp](double t) { return interp->prime(t); };
    table.tau_max = config.value("tau_max", interp->upper());
    Nonlinearity nl(std::move(table));
    nl.source_ = std::make_shared<const nlohmann::json>(config);
    return nl;
  }
  throw std::invalid_argument("unknown nonlinearity type '" + type + "'");
}

nlohmann::json Nonlinearity::to_json() const {
  if (source_) return *source_;
  if (const auto* law = power_law()) {
    return {{"type", "power"}, {"g", law->g}, {"kappa", law->exponent}};
  }
  return {{"type", "callable"}, {"tau_max", tau_max()}};
}

double Nonlinearity::a(double tau) const {
  if (const auto* law = power_law()) return law->g * std::pow(tau, law->exponent);
  return std::get<Tabulated>(impl_).a(tau);
}

double Nonlinearity::a_prime(double tau) const {
  if (const auto* law = power_law()) {
    if (law->exponent == 0.0) return 0.0;
    return law->g * law->exponent * std::pow(tau, law->exponent - 1.0);
  }
  return std::get<Tabulated>(impl_).a_prime(tau);
}

double Nonlinearity::integral(double tau) const {
  if (const auto* law = power_law()) {
    const double p = law->exponent + 1.0;
    if (std::abs(p) < 1e-14) return law->g * std::log(tau);
    if (p < 0.0) return law->g * (std::pow(tau, p) - 1.0) / p;
    return law->g * std::pow(tau, p) / p;
  }
  const auto& t = std::get<Tabulated>(impl_);
  if (t.integral) return t.integral(tau);
  return quadrature(t.a, 0.0, tau);
}

double Nonlinearity::tau_max() const {
  if (power_law()) return std::numeric_limits<double>::infinity();
  return std::get<Tabulated>(impl_).tau_max;
}

double potential(const Nonlinearity& nl, double tau) { return -0.5 * nl.integral(tau); }

AmplitudeSolution solve_amplitude(const Nonlinearity& nl, double m, double omega) {
  const auto derived = derived_params(m, omega);
  const double target = derived.coupling;
  const double tol = 1e-12 * (1.0 + target);
  AmplitudeSolution out;

  if (const auto* law = nl.power_law()) {
    if (!(law->g > 0.0)) {
      throw NoSolitaryWave("power law with g <= 0 has no positive a(C^2) = 2*decay");
    }
    if (law->exponent == 0.0) {
      // a is constant: either every C works or none does.
      if (std::abs(law->g - target) > tol) {
        throw NoSolitaryWave("constant nonlinearity g != 2*decay: no solitary wave");
      }
      out.amplitude = 1.0;
      out.all_roots = {1.0};
      out.degenerate = true;
      return out;
    }
    out.amplitude = std::pow(target / law->g, 1.0 / (2.0 * law->exponent));
    out.all_roots = {out.amplitude};
    return out;
  }

  auto f = [&](double tau) { return nl.a(tau) - target; };
  const double lo = 1e-12;
  const double hi = nl.tau_max();
  constexpr int samples = 4000;
  const double ratio = std::log(hi / lo) / samples;

  std::vector<double> taus;
  double t_prev = lo;
  double f_prev = f(lo);
  if (f_prev == 0.0) taus.push_back(lo);
  for (int i = 1; i <= samples; ++i) {
    const double t = (i == samples) ? hi : lo * std::exp(ratio * i);
    const double ft = f(t);
    if (ft == 0.0) {
      taus.push_back(t);
    } else if (f_prev != 0.0 && std::signbit(ft) != std::signbit(f_prev)) {
      std::uintmax_t iters = 200;
      auto bracket = boost::math::tools::toms748_solve(
          f, t_prev, t, f_prev, ft, boost::math::tools::eps_tolerance<double>(52), iters);
      double root = 0.5 * (bracket.first + bracket.second);
      // Newton polish in tau.
      for (int k = 0; k < 3; ++k) {
        const double d = nl.a_prime(root);
        if (d == 0.0 || !std::isfinite(d)) break;
        const double next = root - f(root) / d;
        if (!(next > t_prev && next < t) || std::abs(f(next)) >= std::abs(f(root))) break;
        root = next;
      }
      taus.push_back(root);
    }
    t_prev = t;
    f_prev = ft;
  }
  if (taus.empty()) {
    throw NoSolitaryWave("a(C^2) = 2*decay has no root in [1e-12, tau_max]");
  }
  for (double t : taus) out.all_roots.push_back(std::sqrt(t));
  out.amplitude = out.all_roots.front();
  const double tau = out.amplitude * out.amplitude;
  // Below sqrt(eps) the root carries fewer than half the digits of a.
  const double sqrt_eps = std::sqrt(std::numeric_limits<double>::epsilon());
  out.degenerate = std::abs(tau * nl.a_prime(tau)) <= sqrt_eps * std::abs(nl.a(tau));
  return out;
}

double effective_kappa(const Nonlinearity& nl, double amplitude) {
  if (const auto* law = nl.power_law()) return law->exponent;
  const double tau = amplitude * amplitude;
  const double a = nl.a(tau);
  if (a == 0.0) throw DomainError("effective_kappa: a(C^2) = 0");
  return tau * nl.a_prime(tau) / a;
}

ChargeSlope charge_and_slope(const Nonlinearity& nl, double m, double omega) {
  const auto derived = derived_params(m, omega);
  const double c = solve_amplitude(nl, m, omega).amplitude;
  const double c2 = c * c;
  const double k = derived.decay;
  ChargeSlope out{omega * c2 / k, std::nullopt};
  const double kappa = effective_kappa(nl, c);
  if (kappa != 0.0) {
    out.slope = c2 / (k * k * k) * (m * m - omega * omega / kappa);
  }
  return out;
}

double SolitaryWave::norm_squared() const {
  return amplitude * amplitude / params.decay();
}

double SolitaryWave::charge() const { return params.omega() * norm_squared(); }

double SolitaryWave::energy(const Nonlinearity& nl) const {
  // kinetic + gradient + mass terms collapse to m^2 ||phi||^2 since omega^2 + decay^2 = m^2.
  const double m = params.m();
  return m * m * norm_squared() + potential(nl, amplitude * amplitude);
}

SolitaryWave make_solitary_wave(const Nonlinearity& nl, double m, double omega, double phase) {
  const double c = solve_amplitude(nl, m, omega).amplitude;
  return SolitaryWave{ModelParams(m, omega, effective_kappa(nl, c)), c, phase};
}

std::vector<std::complex<double>> profile_samples(const SolitaryWave& wave,
                                                  std::span<const double> xs) {
  const std::complex<double> rot = std::polar(1.0, wave.phase);
  const double k = wave.params.decay();
  std::vector<std::complex<double>> out;
  out.reserve(xs.size());
  for (double x : xs) out.push_back(rot * (wave.amplitude * std::exp(-k * std::abs(x))));
  return out;
}

}  // namespace kgdelta
