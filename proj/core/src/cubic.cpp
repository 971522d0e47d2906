#include "kgdelta/cubic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace kgdelta {

CubicData cubic_data(const ModelParams& params) {
  const double a = params.coupling();
  const double k = params.kappa();
  const double m = params.m();
  const double a2 = a * a;
  const double a4 = a2 * a2;
  const double a6 = a4 * a2;
  const double k2 = k * k;

  const double c = 4.0 * m * m - a2 - a2 * k - 0.5 * a2 * k2;
  const double s = a4 * k2 * (1.0 - k2);
  const double tail = a6 * (1.0 + k) * (1.0 + k) * k2 * k2 / 8.0;
  const double p = -c * c / 3.0 + s / 4.0;
  const double q = -2.0 * c * c * c / 27.0 + c * s / 12.0 - tail;
  return {c, p, q, -4.0 * p * p * p - 27.0 * q * q};
}

CubicData with_pq(CubicData base, double p, double q) {
  base.p = p;
  base.q = q;
  base.delta = -4.0 * p * p * p - 27.0 * q * q;
  return base;
}

std::array<std::complex<double>, 3> depressed_cubic_roots(double p, double q) {
  using C = std::complex<double>;
  // Work in units where max(|p|^(1/2), |q|^(1/3)) = 1.
  const double scale = std::max(std::sqrt(std::abs(p)), std::cbrt(std::abs(q)));
  if (scale == 0.0) return {C{0.0}, C{0.0}, C{0.0}};
  const double ps = p / (scale * scale);
  const double qs = q / (scale * scale * scale);
  const double delta = -4.0 * ps * ps * ps - 27.0 * qs * qs;
  const double size = std::max(std::abs(ps * ps * ps), qs * qs);

  std::array<double, 3> real{};
  if (std::abs(delta) <= 1e-12 * size) {
    if (std::abs(ps) <= 1e-12) return {C{0.0}, C{0.0}, C{0.0}};
    const double single = 3.0 * qs / ps;
    const double twice = -1.5 * qs / ps;
    real = {single, twice, twice};
  } else if (delta > 0.0) {
    // Three distinct real roots; ps < 0 here.
    const double r = 2.0 * std::sqrt(-ps / 3.0);
    const double arg = std::clamp(1.5 * qs / ps * std::sqrt(-3.0 / ps), -1.0, 1.0);
    const double phi = std::acos(arg) / 3.0;
    constexpr double third = 2.0 * std::numbers::pi / 3.0;
    real = {r * std::cos(phi), r * std::cos(phi - third), r * std::cos(phi - 2.0 * third)};
  } else {
    // One real root.  Take the cube root of the larger-magnitude Cardano term
    // and recover the other from u v = -p/3.
    const double disc = std::sqrt(0.25 * qs * qs + ps * ps * ps / 27.0);
    const double big = std::cbrt(-0.5 * qs + std::copysign(disc, -qs));
    const double small = big != 0.0 ? -ps / (3.0 * big) : 0.0;
    const double y1 = big + small;
    const double re = -0.5 * y1;
    const double im = 0.5 * std::sqrt(3.0) * std::abs(big - small);
    return {C{y1 * scale}, C{re * scale, -im * scale}, C{re * scale, im * scale}};
  }
  std::sort(real.begin(), real.end(), std::greater<>());
  return {C{real[0] * scale}, C{real[1] * scale}, C{real[2] * scale}};
}

}  // namespace kgdelta
