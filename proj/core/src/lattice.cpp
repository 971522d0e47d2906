#include "kgdelta/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kgdelta {

using complex = std::complex<double>;

Grid::Grid(double half_length, std::size_t n_points) : half_length_(half_length), n_(n_points) {
  if (!(half_length > 0.0) || !std::isfinite(half_length)) {
    throw DomainError("grid half-length must be positive");
  }
  if (n_points < 3 || n_points % 2 == 0) throw DomainError("grid needs an odd number >= 3 of nodes");
  h_ = 2.0 * half_length / static_cast<double>(n_points - 1);
}

Grid Grid::with_spacing(double half_length, double spacing) {
  if (!(spacing > 0.0)) throw DomainError("grid spacing must be positive");
  const auto half = static_cast<std::size_t>(std::ceil(half_length / spacing - 1e-9));
  return Grid(half_length, 2 * std::max<std::size_t>(half, 1) + 1);
}

double Grid::x(std::size_t j) const {
  return (static_cast<double>(j) - static_cast<double>(center())) * h_;
}

FieldState zero_state(const Grid& grid) {
  return {std::vector<complex>(grid.size()), std::vector<complex>(grid.size()), 0.0};
}

StationaryState discrete_stationary(const Nonlinearity& nl, double m, double omega,
                                    const Grid& grid, double phase) {
  const auto wave = make_solitary_wave(nl, m, omega);
  const double decay = wave.params.decay();
  const double h = grid.spacing();
  const double inv_h2 = 1.0 / (h * h);
  const std::size_t n = grid.size();
  const std::size_t j0 = grid.center();

  std::vector<double> phi(n, 0.0);
  for (std::size_t j = 1; j + 1 < n; ++j) {
    phi[j] = wave.amplitude * std::exp(-decay * std::abs(grid.x(j)));
  }

  // Interior unknowns 1..n-2; Thomas algorithm on the tridiagonal Jacobian.
  std::vector<double> rhs(n), diag(n), cprime(n);
  auto residual_of = [&](std::vector<double>& f) {
    double fmax = 0.0;
    for (std::size_t j = 1; j + 1 < n; ++j) {
      f[j] = ((phi[j + 1] + phi[j - 1]) - 2.0 * phi[j]) * inv_h2 - decay * decay * phi[j];
      if (j == j0) f[j] += nl.a(phi[j] * phi[j]) * phi[j] / h;
      fmax = std::max(fmax, std::abs(f[j]));
    }
    const double pmax = *std::max_element(phi.begin(), phi.end());
    return fmax / ((2.0 * inv_h2 + m * m) * std::max(pmax, 1e-300));
  };

  double res = residual_of(rhs);
  int it = 0;
  for (; it < 50 && res > 1e-13; ++it) {
    for (std::size_t j = 1; j + 1 < n; ++j) {
      diag[j] = -2.0 * inv_h2 - decay * decay;
      if (j == j0) {
        const double tau = phi[j] * phi[j];
        diag[j] += (nl.a(tau) + 2.0 * tau * nl.a_prime(tau)) / h;
      }
      rhs[j] = -rhs[j];
    }
    // Forward sweep with off-diagonals inv_h2.
    cprime[1] = inv_h2 / diag[1];
    rhs[1] /= diag[1];
    for (std::size_t j = 2; j + 1 < n; ++j) {
      const double denom = diag[j] - inv_h2 * cprime[j - 1];
      cprime[j] = inv_h2 / denom;
      rhs[j] = (rhs[j] - inv_h2 * rhs[j - 1]) / denom;
    }
    for (std::size_t j = n - 3; j >= 1; --j) rhs[j] -= cprime[j] * rhs[j + 1];
    for (std::size_t j = 1; j + 1 < n; ++j) phi[j] += rhs[j];
    res = residual_of(rhs);
    if (!std::isfinite(res)) break;
  }
  if (!(res <= 1e-12)) {
    throw std::runtime_error("discrete stationary Newton iteration did not converge");
  }

  const complex rot = std::polar(1.0, phase);
  FieldState s = zero_state(grid);
  for (std::size_t j = 0; j < n; ++j) {
    s.psi[j] = rot * phi[j];
    s.pi[j] = complex{0.0, -omega} * s.psi[j];
  }
  return {std::move(s), phi[j0], it, res};
}

Lattice::Lattice(Nonlinearity nl, double m, Grid grid) : nl_(std::move(nl)), m_(m), grid_(grid) {
  if (!(m > 0.0)) throw DomainError("mass must be positive");
}

double Lattice::max_dt() const {
  const double h = grid_.spacing();
  return 0.9 * h / std::sqrt(1.0 + 0.25 * m_ * m_ * h * h);
}

void Lattice::check_dt(double dt) const {
  if (!(std::abs(dt) <= max_dt() * (1.0 + 1e-12))) {
    throw DomainError("time step violates the CFL bound");
  }
}

void Lattice::kick(FieldState& s, double half_dt) const {
  const std::size_t n = grid_.size();
  const double h = grid_.spacing();
  const double inv_h2 = 1.0 / (h * h);
  const double m2 = m_ * m_;
  const auto& psi = s.psi;
  for (std::size_t j = 1; j + 1 < n; ++j) {
    const complex f = ((psi[j + 1] + psi[j - 1]) - 2.0 * psi[j]) * inv_h2 - m2 * psi[j];
    s.pi[j] += half_dt * f;
  }
  const std::size_t j0 = grid_.center();
  s.pi[j0] += half_dt * (nl_.a(std::norm(psi[j0])) / h) * psi[j0];
}

void Lattice::advance(FieldState& s, double dt, std::size_t steps) const {
  check_dt(dt);
  const std::size_t n = grid_.size();
  for (std::size_t k = 0; k < steps; ++k) {
    kick(s, 0.5 * dt);
    for (std::size_t j = 1; j + 1 < n; ++j) s.psi[j] += dt * s.pi[j];
    kick(s, 0.5 * dt);
    s.t += dt;
  }
}

FieldState Lattice::step(FieldState state, double dt) const {
  advance(state, dt, 1);
  return state;
}

double Lattice::energy(const FieldState& s) const {
  const std::size_t n = grid_.size();
  const double h = grid_.spacing();
  double sum = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    sum += std::norm(s.pi[j]) + m_ * m_ * std::norm(s.psi[j]);
    if (j + 1 < n) sum += std::norm((s.psi[j + 1] - s.psi[j]) / h);
  }
  return 0.5 * h * sum + potential(nl_, std::norm(s.psi[grid_.center()]));
}

double Lattice::charge(const FieldState& s) const {
  double sum = 0.0;
  for (std::size_t j = 0; j < grid_.size(); ++j) sum += (std::conj(s.psi[j]) * s.pi[j]).imag();
  return -grid_.spacing() * sum;
}

complex Lattice::e_inner(const FieldState& u, const FieldState& v) const {
  const std::size_t n = grid_.size();
  const double h = grid_.spacing();
  complex sum{0.0};
  for (std::size_t j = 0; j < n; ++j) {
    sum += std::conj(u.psi[j]) * v.psi[j] + std::conj(u.pi[j]) * v.pi[j];
    if (j + 1 < n) {
      sum += std::conj(u.psi[j + 1] - u.psi[j]) * (v.psi[j + 1] - v.psi[j]) / (h * h);
    }
  }
  return h * sum;
}

double Lattice::e_norm(const FieldState& u) const { return std::sqrt(e_inner(u, u).real()); }

double Lattice::orbital_distance(const FieldState& state, const FieldState& reference) const {
  const complex overlap = e_inner(reference, state);
  const complex rot = overlap == complex{0.0} ? complex{1.0} : overlap / std::abs(overlap);
  const std::size_t n = grid_.size();
  const double h = grid_.spacing();
  double sum = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    sum += std::norm(state.psi[j] - rot * reference.psi[j]) +
           std::norm(state.pi[j] - rot * reference.pi[j]);
    if (j + 1 < n) {
      const complex ds = state.psi[j + 1] - state.psi[j];
      const complex dr = reference.psi[j + 1] - reference.psi[j];
      sum += std::norm(ds - rot * dr) / (h * h);
    }
  }
  return std::sqrt(h * sum);
}

}  // namespace kgdelta
