#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <nlohmann/json.hpp>

#include "generators.hpp"
#include "kgdelta/model.hpp"

using namespace kgdelta;

TEST(DerivedParams, StaticWave) {
  const auto d = derived_params(1.0, 0.0);
  EXPECT_DOUBLE_EQ(d.decay, 1.0);
  EXPECT_DOUBLE_EQ(d.coupling, 2.0);
}

TEST(DerivedParams, HandValue) {
  const auto d = derived_params(1.0, 0.8);
  EXPECT_NEAR(d.decay, 0.6, 1e-15);
  EXPECT_NEAR(d.coupling, 1.2, 1e-15);
}

TEST(DerivedParams, DecayVanishesAtEdge) {
  EXPECT_LT(derived_params(1.0, std::nextafter(1.0, 0.0)).decay, 1e-7);
  EXPECT_THROW(derived_params(1.0, 1.0), DomainError);
  EXPECT_THROW(derived_params(1.0, -1.2), DomainError);
  EXPECT_THROW(ModelParams(0.0, 0.0, 1.0), DomainError);
}

TEST(SolveAmplitude, PowerLawNormalised) {
  const auto s = solve_amplitude(Nonlinearity(PowerLaw{2.0, 1.0}), 1.0, 0.0);
  EXPECT_DOUBLE_EQ(s.amplitude, 1.0);
  EXPECT_FALSE(s.degenerate);
}

TEST(SolveAmplitude, PowerLawClosedForm) {
  EXPECT_NEAR(solve_amplitude(Nonlinearity(PowerLaw{1.0, 1.0}), 1.0, 0.0).amplitude, std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(solve_amplitude(Nonlinearity(PowerLaw{1.0, 1.0}), 1.0, 0.8).amplitude, std::sqrt(1.2), 1e-15);
}

TEST(SolveAmplitude, TabulatedMatchesBisection) {
  // a(tau) = tau + tau^2 = 1.2 at tau = (-1 + sqrt(5.8)) / 2.
  Tabulated t{[](double x) { return x + x * x; }, [](double x) { return 1.0 + 2.0 * x; }, {}, 1e6};
  const auto s = solve_amplitude(Nonlinearity(t), 1.0, 0.8);
  const double tau = 0.5 * (-1.0 + std::sqrt(5.8));
  EXPECT_NEAR(s.amplitude, std::sqrt(tau), 1e-13);
  EXPECT_LE(std::abs(s.amplitude * s.amplitude * (1.0 + s.amplitude * s.amplitude) - 1.2), 1e-12 * 2.2);
}

TEST(SolveAmplitude, NoRoot) {
  EXPECT_THROW(solve_amplitude(Nonlinearity(PowerLaw{-1.0, 1.0}), 1.0, 0.0), NoSolitaryWave);
  Tabulated t{[](double) { return 0.5; }, [](double) { return 0.0; }, {}, 1e3};
  EXPECT_THROW(solve_amplitude(Nonlinearity(t), 1.0, 0.0), NoSolitaryWave);
}

TEST(SolveAmplitude, SmallestOfSeveralRoots) {
  // a(tau) = 2 + sin(tau) crosses 2 at tau = pi, 2 pi, ...
  Tabulated t{[](double x) { return 2.0 + std::sin(x); }, [](double x) { return std::cos(x); }, {}, 10.0};
  const auto s = solve_amplitude(Nonlinearity(t), 1.0, 0.0);
  ASSERT_EQ(s.all_roots.size(), 3u);
  EXPECT_NEAR(s.amplitude, std::sqrt(std::numbers::pi), 1e-12);
  EXPECT_NEAR(s.all_roots[1], std::sqrt(2.0 * std::numbers::pi), 1e-12);
}

TEST(SolveAmplitude, DegenerateRootFlagged) {
  // a(tau) = 2 + (tau - 1)^3 has a'(1) = 0 at the root tau = 1.
  Tabulated t{[](double x) { return 2.0 + std::pow(x - 1.0, 3); },
              [](double x) { return 3.0 * (x - 1.0) * (x - 1.0); },
              {},
              10.0};
  const auto s = solve_amplitude(Nonlinearity(t), 1.0, 0.0);
  EXPECT_TRUE(s.degenerate);
  EXPECT_NEAR(s.amplitude, 1.0, 1e-4);
}

TEST(EffectiveKappa, PowerLawIdentity) {
  EXPECT_EQ(effective_kappa(Nonlinearity(PowerLaw{2.0, 1.0}), 1.0), 1.0);
  EXPECT_EQ(effective_kappa(Nonlinearity(PowerLaw{1.0, 0.5}), 3.7), 0.5);
}

TEST(EffectiveKappa, Tabulated) {
  Tabulated t{[](double x) { return x + x * x; }, [](double x) { return 1.0 + 2.0 * x; }, {}, 1e6};
  EXPECT_NEAR(effective_kappa(Nonlinearity(t), 1.0), 1.5, 1e-15);
}

TEST(EffectiveKappa, FromJsonTable) {
  nlohmann::json cfg = {{"type", "table"}, {"tau", {}}, {"a", {}}};
  for (int i = 0; i <= 200; ++i) {
    const double x = 0.02 * i;
    cfg["tau"].push_back(x);
    cfg["a"].push_back(x + x * x);
    cfg["a_prime"].push_back(1.0 + 2.0 * x);
  }
  const auto nl = Nonlinearity::from_json(cfg);
  EXPECT_NEAR(nl.a(1.0), 2.0, 1e-12);
  EXPECT_NEAR(effective_kappa(nl, 1.0), 1.5, 1e-10);
  EXPECT_EQ(nl.to_json()["type"], "table");
}

TEST(Nonlinearity, PowerJsonRoundTrip) {
  const auto nl = Nonlinearity::from_json({{"type", "power"}, {"g", 2.0}, {"kappa", 1.0}});
  ASSERT_NE(nl.power_law(), nullptr);
  EXPECT_EQ(nl.power_law()->g, 2.0);
  EXPECT_EQ(nl.to_json()["kappa"], 1.0);
  EXPECT_THROW(Nonlinearity::from_json({{"type", "spline"}}), std::invalid_argument);
}

TEST(Potential, SignGivesAttractiveForce) {
  const Nonlinearity nl(PowerLaw{2.0, 1.0});
  // U = -1/2 int_0^tau 2 s ds = -tau^2/2; -dU/dtau = a/2 > 0.
  EXPECT_NEAR(potential(nl, 3.0), -4.5, 1e-14);
  Tabulated t{[](double x) { return 1.0 + x; }, [](double x) { return 0.0 * x + 1.0; }, {}, 1e3};
  EXPECT_NEAR(potential(Nonlinearity(t), 2.0), -0.5 * (2.0 + 2.0), 1e-10);
}

TEST(ChargeSlope, StaticWaveHasNoCharge) {
  const auto cs = charge_and_slope(Nonlinearity(PowerLaw{2.0, 1.0}), 1.0, 0.0);
  EXPECT_EQ(cs.charge, 0.0);
  ASSERT_TRUE(cs.slope);
  EXPECT_NEAR(*cs.slope, 1.0, 1e-15);
}

TEST(ChargeSlope, NegativeSlopeWhenStable) {
  const auto cs = charge_and_slope(Nonlinearity(PowerLaw{1.0, 0.25}), 1.0, 0.6);
  ASSERT_TRUE(cs.slope);
  EXPECT_LT(*cs.slope, 0.0);
}

TEST(ChargeSlope, AbsentForConstantNonlinearity) {
  const auto cs = charge_and_slope(Nonlinearity(PowerLaw{1.6, 0.0}), 1.0, 0.6);
  EXPECT_FALSE(cs.slope);
  EXPECT_NEAR(cs.charge, 0.6 / 0.8, 1e-15);
}

TEST(Profile, Values) {
  const Nonlinearity nl(PowerLaw{2.0, 1.0});
  const auto wave = make_solitary_wave(nl, 1.0, 0.0);
  const std::vector<double> xs = {0.0, std::log(2.0), -std::log(2.0)};
  const auto v = profile_samples(wave, xs);
  EXPECT_DOUBLE_EQ(v[0].real(), 1.0);
  EXPECT_NEAR(v[1].real(), 0.5, 1e-15);
  EXPECT_EQ(v[1], v[2]);

  SolitaryWave w2{ModelParams(1.0, 0.8, 1.0), 2.0, std::numbers::pi};
  const std::vector<double> zero = {0.0};
  EXPECT_NEAR(profile_samples(w2, zero)[0].real(), -2.0, 1e-15);
  EXPECT_NEAR(profile_samples(w2, zero)[0].imag(), 0.0, 1e-15);
}

TEST(Properties, PowerLawKappaRoundTrip) {
  proptest::Gen gen(11);
  for (int i = 0; i < proptest::kDraws; ++i) {
    const double g = gen.uniform(0.1, 5.0);
    const double k = gen.uniform(-2.0, 3.0);
    const double w = gen.omega();
    if (std::abs(k) < 1e-3) continue;
    const Nonlinearity nl(PowerLaw{g, k});
    const auto s = solve_amplitude(nl, 1.0, w);
    EXPECT_EQ(effective_kappa(nl, s.amplitude), k);
    const double a = nl.a(s.amplitude * s.amplitude);
    const double target = derived_params(1.0, w).coupling;
    EXPECT_LE(std::abs(a - target), 1e-12 * (1.0 + target)) << "g=" << g << " k=" << k << " w=" << w;
  }
}

TEST(Properties, NormByQuadrature) {
  proptest::Gen gen(12);
  for (int i = 0; i < 20; ++i) {
    const double w = gen.omega();
    const auto wave = make_solitary_wave(Nonlinearity(PowerLaw{gen.uniform(0.5, 3.0), 1.0}), 1.0, w);
    const double L = 60.0 / wave.params.decay();
    auto f = [&](double x) {
      const std::vector<double> xs = {x};
      return std::norm(profile_samples(wave, xs)[0]);
    };
    const double q = 2.0 * boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, L, 15, 1e-14);
    EXPECT_NEAR(q / wave.norm_squared(), 1.0, 1e-8);
  }
}

TEST(Properties, SlopeMatchesFiniteDifference) {
  proptest::Gen gen(13);
  for (int i = 0; i < proptest::kDraws; ++i) {
    const double w = gen.uniform(-0.9, 0.9);
    const double k = gen.uniform(0.1, 2.0);
    const Nonlinearity nl(PowerLaw{gen.uniform(0.5, 3.0), k});
    const double step = 1e-5;
    const double fd = (charge_and_slope(nl, 1.0, w + step).charge - charge_and_slope(nl, 1.0, w - step).charge) /
                      (2.0 * step);
    const auto slope = charge_and_slope(nl, 1.0, w).slope;
    ASSERT_TRUE(slope);
    EXPECT_NEAR(fd, *slope, 1e-5 * std::max(1.0, std::abs(*slope)));
  }
}

TEST(Properties, ProfileEvenAndEquivariant) {
  proptest::Gen gen(14);
  const Nonlinearity nl(PowerLaw{1.0, 1.0});
  for (int i = 0; i < proptest::kDraws; ++i) {
    const double w = gen.omega();
    const double theta = gen.uniform(0.0, 2.0 * std::numbers::pi);
    auto wave = make_solitary_wave(nl, 1.0, w);
    const std::vector<double> xs = {gen.uniform(0.0, 5.0)};
    const std::vector<double> neg = {-xs[0]};
    const auto base = profile_samples(wave, xs)[0];
    EXPECT_EQ(base, profile_samples(wave, neg)[0]);
    wave.phase = theta;
    EXPECT_EQ(profile_samples(wave, xs)[0], std::polar(1.0, theta) * base);
  }
}
