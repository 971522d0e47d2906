#pragma once

// Physical parameters, the point nonlinearity, and the solitary-wave family
//
//   psi_tt = psi_xx - m^2 psi + delta(x) a(|psi(0,t)|^2) psi(0,t),
//
// whose standing waves are phi(x) = C exp(-decay |x|) exp(i theta) with
// decay = sqrt(m^2 - omega^2) and a(C^2) = 2 decay.

#include <complex>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace kgdelta {

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class NoSolitaryWave : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mass m > 0, frequency omega in (-m, m), and the effective exponent kappa
/// of the linearization.  The constructor rejects |omega| >= m.
class ModelParams {
 public:
  ModelParams(double m, double omega, double kappa);

  double m() const { return m_; }
  double omega() const { return omega_; }
  double kappa() const { return kappa_; }

  /// sqrt(m^2 - omega^2), the spatial decay rate of the profile.
  double decay() const { return decay_; }
  /// a(C^2) = 2 * decay.
  double coupling() const { return 2.0 * decay_; }

  ModelParams with_kappa(double kappa) const { return {m_, omega_, kappa}; }
  ModelParams with_omega(double omega) const { return {m_, omega, kappa_}; }

 private:
  double m_;
  double omega_;
  double kappa_;
  double decay_;
};

struct DerivedParams {
  double decay;
  double coupling;
};

/// Throws DomainError unless m > 0 and |omega| < m.
DerivedParams derived_params(double m, double omega);

/// a(tau) = g * tau^exponent.
struct PowerLaw {
  double g = 1.0;
  double exponent = 1.0;
};

/// Arbitrary a(tau) given as callables.  `integral` (tau -> int_0^tau a) is
/// optional; when absent it is computed by adaptive quadrature.
struct Tabulated {
  std::function<double(double)> a;
  std::function<double(double)> a_prime;
  std::function<double(double)> integral;
  double tau_max = 1e6;
};

class Nonlinearity {
 public:
  Nonlinearity(PowerLaw law);
  Nonlinearity(Tabulated table);

  /// {"type":"power","g":2.0,"kappa":1.0} or
  /// {"type":"table","tau":[...],"a":[...],"a_prime":[...]} (a_prime optional).
  static Nonlinearity from_json(const nlohmann::json& config);
  nlohmann::json to_json() const;

  double a(double tau) const;
  double a_prime(double tau) const;
  /// int_0^tau a(s) ds.  For power laws with exponent <= -1 the lower limit
  /// is moved to tau = 1, which only shifts the potential by a constant.
  double integral(double tau) const;
  double tau_max() const;

  const PowerLaw* power_law() const { return std::get_if<PowerLaw>(&impl_); }

 private:
  std::variant<PowerLaw, Tabulated> impl_;
  std::shared_ptr<const nlohmann::json> source_;
};

struct AmplitudeSolution {
  double amplitude = 0.0;
  /// Every positive root C of a(C^2) = 2 decay found in the bracket, ascending.
  std::vector<double> all_roots;
  /// |tau a'(tau)| <= sqrt(eps) |a(tau)| at tau = C^2: a' (numerically) vanishes at the
  /// root, so C is ill-conditioned and not a smooth function of omega.
  bool degenerate = false;
};

/// Smallest C > 0 with a(C^2) = 2 sqrt(m^2 - omega^2).  Closed form for
/// power laws; bracket scan + bisection + Newton polish otherwise.
/// Throws NoSolitaryWave when no root exists.
AmplitudeSolution solve_amplitude(const Nonlinearity& nl, double m, double omega);

/// C^2 a'(C^2) / a(C^2); exactly the stored exponent for power laws.
double effective_kappa(const Nonlinearity& nl, double amplitude);

struct ChargeSlope {
  double charge;
  /// d(charge)/d(omega); absent when the effective exponent vanishes.
  std::optional<double> slope;
};

ChargeSlope charge_and_slope(const Nonlinearity& nl, double m, double omega);

/// Member of the solitary manifold: params carry kappa = effective_kappa(C).
struct SolitaryWave {
  ModelParams params;
  double amplitude;
  double phase = 0.0;

  double norm_squared() const;  // ||phi||^2 = C^2 / decay
  double charge() const;        // omega C^2 / decay
  double energy(const Nonlinearity& nl) const;
};

SolitaryWave make_solitary_wave(const Nonlinearity& nl, double m, double omega,
                                double phase = 0.0);

std::vector<std::complex<double>> profile_samples(const SolitaryWave& wave,
                                                  std::span<const double> xs);

/// U(psi) = -1/2 int_0^{|psi|^2} a(s) ds, so that -grad U = a(|psi|^2) psi.
double potential(const Nonlinearity& nl, double tau);

}  // namespace kgdelta
