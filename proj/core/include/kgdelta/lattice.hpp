#pragma once

// Lattice discretization of
//
//   psi_tt = psi_xx - m^2 psi + delta(x) a(|psi(0,t)|^2) psi(0,t)
//
// on [-L, L] with N (odd) nodes, homogeneous Dirichlet ends, and the delta
// function replaced by weight 1/h at the centre node.

#include <complex>
#include <cstddef>
#include <vector>

#include "kgdelta/model.hpp"

namespace kgdelta {

class Grid {
 public:
  /// Throws DomainError unless half_length > 0 and n_points is odd and >= 3.
  Grid(double half_length, std::size_t n_points);
  /// Smallest odd grid on [-L, L] whose spacing does not exceed `spacing`.
  static Grid with_spacing(double half_length, double spacing);

  double half_length() const { return half_length_; }
  std::size_t size() const { return n_; }
  double spacing() const { return h_; }
  std::size_t center() const { return (n_ - 1) / 2; }
  double x(std::size_t j) const;

 private:
  double half_length_;
  std::size_t n_;
  double h_;
};

struct FieldState {
  std::vector<std::complex<double>> psi;
  std::vector<std::complex<double>> pi;  // psi_t
  double t = 0.0;
};

FieldState zero_state(const Grid& grid);

struct StationaryState {
  FieldState state;
  /// phi_h at the centre node (real, positive).
  double amplitude;
  int iterations;
  /// max |F| / ((2/h^2 + m^2) max |phi|) at exit.
  double residual;
};

/// Newton solution of the lattice stationary equation
///   omega^2 phi_j = -(phi_{j+1} - 2 phi_j + phi_{j-1})/h^2 + m^2 phi_j - (delta_{j,j0}/h) a(phi_j0^2) phi_j0,
/// seeded by the continuum profile.  The state is e^{i phase} (phi_h, -i omega phi_h).
/// Throws NoSolitaryWave, or std::runtime_error after 50 Newton steps.
StationaryState discrete_stationary(const Nonlinearity& nl, double m, double omega,
                                    const Grid& grid, double phase = 0.0);

/// Semidiscrete system with a velocity Stormer-Verlet integrator.
class Lattice {
 public:
  Lattice(Nonlinearity nl, double m, Grid grid);

  const Grid& grid() const { return grid_; }
  double m() const { return m_; }
  const Nonlinearity& nonlinearity() const { return nl_; }

  /// 0.9 h / sqrt(1 + (m h)^2 / 4).
  double max_dt() const;

  /// One step of size dt (negative dt steps backward).  Throws DomainError on
  /// CFL violation.
  FieldState step(FieldState state, double dt) const;
  /// `steps` steps in place; allocation free.
  void advance(FieldState& state, double dt, std::size_t steps = 1) const;

  /// H_h = 1/2 sum h (|pi|^2 + |D psi|^2 + m^2 |psi|^2) + U(psi_j0).
  double energy(const FieldState& s) const;
  /// Q_h = -sum h Im(conj(psi) pi).
  double charge(const FieldState& s) const;
  /// H^1 + L^2 lattice inner product, antilinear in the first argument.
  std::complex<double> e_inner(const FieldState& u, const FieldState& v) const;
  double e_norm(const FieldState& u) const;
  /// min over theta of ||state - e^{i theta} reference||_E.
  double orbital_distance(const FieldState& state, const FieldState& reference) const;

 private:
  void check_dt(double dt) const;
  void kick(FieldState& s, double half_dt) const;

  Nonlinearity nl_;
  double m_;
  Grid grid_;
};

}  // namespace kgdelta
