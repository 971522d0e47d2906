#pragma once

#include <array>
#include <complex>

#include "kgdelta/model.hpp"

namespace kgdelta {

/// Coefficients after squaring D = 0 twice and shifting x = lambda^2 = y - 2c/3:
/// y^3 + p y + q = 0 with discriminant delta = -4 p^3 - 27 q^2.
struct CubicData {
  double c;
  double p;
  double q;
  double delta;
};

CubicData cubic_data(const ModelParams& params);

/// Recomputes the discriminant after p or q was changed.
CubicData with_pq(CubicData base, double p, double q);

/// All three roots of y^3 + p y + q = 0, repeated according to multiplicity.
/// Real roots come first, in descending order; a complex pair follows as
/// (conj, root) with positive imaginary part last.
///  - |delta| <= 1e-12 max(|p|^3, |q|^2): double/triple root in closed form,
///  - delta > 0: trigonometric form,
///  - delta < 0: Cardano with cancellation-free cube roots.
std::array<std::complex<double>, 3> depressed_cubic_roots(double p, double q);

}  // namespace kgdelta
