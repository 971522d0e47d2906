#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "generators.hpp"
#include "kgdelta/dispersion.hpp"

using namespace kgdelta;

// Reference values from tests/oracles/dispersion_oracle.py (mpmath, 50 digits).
namespace oracle {
constexpr double kReal_06_05 = 0.80000000000000008;
constexpr double kReal_05_05 = 1.1549705973785368;
constexpr double kReal_05_100 = 174.06679040739079;
constexpr double kReal_03_15 = 3.6525907185445701;
constexpr double kRealM07_09 = 1.3531253636505411;
constexpr double kImag_08_06 = 0.15013427891557042;
constexpr double kImag_05_02 = 0.45617345402446379;
constexpr double kImag_02_M01 = 0.70841038668497605;
constexpr double kQ_03_01 = -11.953925679059857;
constexpr double kQ_04_small = -6.8193184686677099;
constexpr double kQ_05_edge = -6.3094010767585031;
constexpr double kK_05 = 0.18301270189221932;
constexpr double kK_06 = 0.28989794855663562;
constexpr double kK_09 = 0.60383484153110103;
}  // namespace oracle

namespace {

std::vector<complex> roots(double w, double k) { return accepted_roots(candidate_roots(ModelParams(1.0, w, k))); }

bool has_root(const std::vector<complex>& r, complex z, double tol) {
  return std::any_of(r.begin(), r.end(), [&](complex v) { return std::abs(v - z) <= tol; });
}

}  // namespace

TEST(NuPm, Examples) {
  auto nu = nu_pm(ModelParams(1.0, 0.0, 1.0), 0.0);
  EXPECT_EQ(nu.plus, complex(1.0));
  EXPECT_EQ(nu.minus, complex(1.0));

  nu = nu_pm(ModelParams(1.0, 0.8, 0.5), {0.0, 0.2});
  EXPECT_NEAR(std::abs(nu.minus), 0.0, 1e-7);
  EXPECT_NEAR(std::abs(nu.plus - 0.8), 0.0, 1e-15);

  nu = nu_pm(ModelParams(1.0, 0.0, 1.0), {0.0, 2.0});
  EXPECT_NEAR(std::abs(nu.plus), std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(nu.plus.real(), 0.0, 1e-15);
  EXPECT_NEAR(nu.minus.real(), 0.0, 1e-15);
}

TEST(NuPm, CutLimitFromRightHalfPlane) {
  const ModelParams p(1.0, 0.3, 1.0);
  const complex on_cut{0.0, 1.7};
  const auto nu = nu_pm(p, on_cut);
  const auto near = nu_pm(p, on_cut + complex(1e-12, 0.0));
  EXPECT_NEAR(std::abs(nu.plus - near.plus), 0.0, 1e-9);
  EXPECT_NEAR(std::abs(nu.minus - near.minus), 0.0, 1e-9);
}

TEST(NuPm, SheetSigns) {
  const ModelParams p(1.0, 0.4, 0.5);
  const complex z{0.3, 0.2};
  const auto phys = nu_pm(p, z);
  EXPECT_GT(phys.plus.real(), 0.0);
  EXPECT_GT(phys.minus.real(), 0.0);
  const auto other = nu_pm(p, z, {-1, 1});
  EXPECT_EQ(other.plus, -phys.plus);
  EXPECT_EQ(other.minus, phys.minus);
}

TEST(Determinant, VirtualLevelHandValue) {
  const ModelParams p(1.0, 0.8, 0.5);
  EXPECT_LE(std::abs(dispersion_determinant(p, {0.0, 0.2})), 1e-14);
}

TEST(Determinant, StaticRootAndSpuriousValue) {
  const ModelParams p(1.0, 0.0, 1.0);
  EXPECT_LE(std::abs(dispersion_determinant(p, std::sqrt(8.0))), 1e-13);
  const complex d = dispersion_determinant(p, std::sqrt(2.0));
  EXPECT_NEAR(d.real(), 24.0 - 16.0 * std::sqrt(3.0), 1e-13);
  EXPECT_NEAR(d.imag(), 0.0, 1e-15);
}

TEST(GapFunction, Values) {
  EXPECT_NEAR(gap_function(ModelParams(1.0, 0.3, 0.0), 0.1), oracle::kQ_03_01, 1e-13);
  EXPECT_NEAR(gap_function(ModelParams(1.0, 0.4, 0.0), 1e-3), oracle::kQ_04_small, 1e-11);
  EXPECT_NEAR(gap_function(ModelParams(1.0, 0.5, 0.0), 0.5), oracle::kQ_05_edge, 1e-13);
}

TEST(GapFunction, SmallLambdaLimit) {
  const ModelParams p(1.0, 0.4, 0.0);
  const double limit = -1.0 / (p.decay() * 0.16);
  EXPECT_NEAR(gap_function(p, 1e-4), limit, 1e-6);
}

TEST(GapFunction, EdgeMatchesK) {
  // 1 + kappa decay Q = 0 at the edge exactly when kappa = K_omega.
  for (const double w : {0.5, 0.6, 0.9}) {
    const ModelParams p(1.0, w, 0.0);
    const double q = gap_function(p, 1.0 - w);
    EXPECT_NEAR(1.0 + virtual_level_exponent(1.0, w) * p.decay() * q, 0.0, 1e-12);
  }
}

TEST(GapFunction, Domain) {
  const ModelParams p(1.0, 0.3, 0.0);
  EXPECT_THROW(gap_function(p, 0.0), DomainError);
  EXPECT_THROW(gap_function(p, 0.8), DomainError);
  EXPECT_THROW(gap_function(p, 0.6), DomainError);
  EXPECT_LT(gap_function(p, 0.5), 0.0);
}

TEST(CriticalCurves, Values) {
  EXPECT_DOUBLE_EQ(virtual_level_frequency(1.0, 0.0), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(virtual_level_frequency(2.0, 0.5), 2.0 * 0.8);
  EXPECT_NEAR(virtual_level_frequency(1.0, 1.0 / std::sqrt(2.0)), 1.0, 1e-15);
  EXPECT_NEAR(virtual_level_exponent(1.0, 1.0 / 3.0), 0.0, 1e-15);
  EXPECT_NEAR(virtual_level_exponent(1.0, 0.5), oracle::kK_05, 1e-15);
  EXPECT_NEAR(virtual_level_exponent(1.0, 0.6), oracle::kK_06, 1e-15);
  EXPECT_NEAR(virtual_level_exponent(1.0, -0.9), oracle::kK_09, 1e-15);
  EXPECT_DOUBLE_EQ(*kolokolov_frequency(2.0, 0.25), 1.0);
  EXPECT_FALSE(kolokolov_frequency(1.0, -0.1));

  const auto c = critical_curves(ModelParams(1.0, 0.3, -0.75));
  EXPECT_FALSE(c.kolokolov);
  EXPECT_FALSE(c.virtual_level);
}

TEST(Candidates, StaticKappaOne) {
  const auto cands = candidate_roots(ModelParams(1.0, 0.0, 1.0));
  const auto acc = accepted_roots(cands);
  ASSERT_EQ(acc.size(), 2u);
  EXPECT_TRUE(has_root(acc, std::sqrt(8.0), 1e-12));
  EXPECT_TRUE(has_root(acc, -std::sqrt(8.0), 1e-12));
  bool saw_x2 = false;
  for (const auto& c : cands) {
    if (std::abs(c.x - 2.0) < 1e-9) {
      saw_x2 = true;
      EXPECT_NE(c.status, CandidateStatus::Accepted);
      EXPECT_GT(relative_residual(ModelParams(1.0, 0.0, 1.0), std::sqrt(2.0)), 1e-3);
    }
  }
  EXPECT_TRUE(saw_x2);
}

TEST(Candidates, ImaginaryStatic) {
  const auto acc = roots(0.0, -0.25);
  ASSERT_EQ(acc.size(), 2u);
  EXPECT_TRUE(has_root(acc, {0.0, std::sqrt(0.75)}, 1e-12));
  EXPECT_TRUE(has_root(acc, {0.0, -std::sqrt(0.75)}, 1e-12));
}

TEST(Candidates, KolokolovCurveHasOnlyZero) { EXPECT_TRUE(roots(0.5, 0.25).empty()); }

TEST(Candidates, MatchOracle) {
  EXPECT_TRUE(has_root(roots(0.6, 0.5), oracle::kReal_06_05, 1e-12));
  EXPECT_TRUE(has_root(roots(0.5, 0.5), oracle::kReal_05_05, 1e-12));
  EXPECT_TRUE(has_root(roots(0.5, 100.0), oracle::kReal_05_100, 1e-9));
  EXPECT_TRUE(has_root(roots(0.3, 1.5), oracle::kReal_03_15, 1e-12));
  EXPECT_TRUE(has_root(roots(-0.7, 0.9), oracle::kRealM07_09, 1e-12));
  EXPECT_TRUE(has_root(roots(0.8, 0.6), {0.0, oracle::kImag_08_06}, 1e-12));
  EXPECT_TRUE(has_root(roots(0.5, 0.2), {0.0, oracle::kImag_05_02}, 1e-12));
  EXPECT_TRUE(has_root(roots(0.2, -0.1), {0.0, oracle::kImag_02_M01}, 1e-12));
  EXPECT_TRUE(roots(0.6, 0.2).empty());
  EXPECT_TRUE(roots(0.9, 0.5).empty());
}

TEST(Candidates, LargeKappaExceedsAlphaKappaSquared) {
  for (const double k : {50.0, 100.0}) {
    const ModelParams p(1.0, 0.5, k);
    const auto acc = roots(0.5, k);
    ASSERT_FALSE(acc.empty());
    const double a = p.coupling();
    for (const auto& l : acc) EXPECT_GT(std::norm(l), a * a * k * k);
  }
}

TEST(Candidates, QPerturbationLosesRoots) {
  // Seeds from a faulty cubic are too far off for the bounded polish to recover.
  const ModelParams p(1.0, 0.3, 1.5);
  for (const auto& c : candidate_roots(p)) {
    if (c.status != CandidateStatus::Accepted) continue;
    const complex s = std::sqrt(c.x);
    EXPECT_LT(std::min(std::abs(s - c.lambda), std::abs(s + c.lambda)), 1e-9);
  }
  PipelineOptions faulty;
  faulty.q_perturbation = 1e-3;
  EXPECT_EQ(accepted_roots(candidate_roots(p)).size(), 2u);
  EXPECT_TRUE(accepted_roots(candidate_roots(p, faulty)).empty());
}

TEST(Properties, DeterminantSymmetry) {
  proptest::Gen gen(41);
  for (int i = 0; i < proptest::kDraws; ++i) {
    const ModelParams p(1.0, gen.omega(), gen.uniform(-2.0, 2.0));
    const complex z{gen.uniform(0.01, 3.0), gen.uniform(-3.0, 3.0)};
    const complex d = dispersion_determinant(p, z);
    const double s = determinant_scale(p, z);
    EXPECT_LE(std::abs(dispersion_determinant(p, std::conj(z)) - std::conj(d)), 1e-13 * s);
    EXPECT_LE(std::abs(dispersion_determinant(p, -z) - d), 1e-13 * s);
  }
}

TEST(Properties, KOfTIsIdentity) {
  proptest::Gen gen(42);
  for (int i = 0; i < proptest::kDraws; ++i) {
    const double m = gen.uniform(0.5, 2.0);
    const double k = gen.uniform(-0.5, 1.0 / std::sqrt(2.0));
    EXPECT_NEAR(virtual_level_exponent(m, virtual_level_frequency(m, k)), k, 1e-10) << "k=" << k;
  }
}

TEST(Properties, AcceptedResidualsAndAxes) {
  proptest::Gen gen(43);
  for (int i = 0; i < proptest::kDraws; ++i) {
    const double w = gen.omega();
    const double k = gen.uniform(-0.49, 3.0);
    const ModelParams p(1.0, w, k);
    const double kw = virtual_level_exponent(1.0, w);
    for (const auto& c : candidate_roots(p)) {
      EXPECT_NE(c.x, complex(0.0));
      if (c.status != CandidateStatus::Accepted) continue;
      EXPECT_LE(relative_residual(p, c.lambda), 1e-9);
      EXPECT_EQ(c.y.imag(), 0.0);
      if (c.lambda.imag() == 0.0) {
        EXPECT_GT(k, w * w);
      } else {
        EXPECT_EQ(c.lambda.real(), 0.0);
        EXPECT_LT(k, w * w);
        EXPECT_GT(k, kw - 1e-9);
      }
    }
  }
}

TEST(Properties, RootsShrinkTowardKolokolovCurve) {
  for (const double w : {0.3, 0.6, -0.8}) {
    double prev = kInf;
    for (const double d : {1e-1, 1e-2, 1e-3, 1e-4}) {
      const auto acc = roots(w, w * w + d);
      ASSERT_FALSE(acc.empty()) << w << " " << d;
      const double mag = std::abs(acc.front());
      EXPECT_LT(mag, prev);
      prev = mag;
    }
    EXPECT_LT(prev, 1e-1);
  }
}

TEST(Properties, ImaginaryRootApproachesEdge) {
  const double k = 0.1;
  const double t = virtual_level_frequency(1.0, k);
  double prev = 0.0;
  for (const double d : {5e-2, 1e-2, 1e-3}) {
    const double w = t - d;
    const auto acc = roots(w, k);
    ASSERT_FALSE(acc.empty()) << d;
    const double gap = (1.0 - w) - std::abs(acc.front().imag());
    EXPECT_GE(gap, 0.0);
    if (prev > 0.0) {
      EXPECT_LT(gap, prev);
    }
    prev = gap;
  }
}
