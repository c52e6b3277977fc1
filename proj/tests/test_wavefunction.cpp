#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "covosc/wavefunction.hpp"

using namespace covosc;

namespace {

const double kNorm = 1.0 / std::sqrt(std::numbers::pi);

// Analytic Laplacian-type check: for psi = N exp(-(a z^2 + a t^2)/2 + b z t)
// the exact second derivatives follow by hand. Used as the symbolic oracle
// for the finite-difference residual.
double exact_residual(Rapidity eta, double z, double t) {
  const double c = std::cosh(2.0 * eta.value());
  const double s = std::sinh(2.0 * eta.value());
  // psi = N exp(-(c/2)(z^2 + t^2) + s z t)
  const double psi = kNorm * std::exp(-0.5 * c * (z * z + t * t) + s * z * t);
  const double gz = -c * z + s * t;
  const double gt = -c * t + s * z;
  const double dzz = (gz * gz - c) * psi;
  const double dtt = (gt * gt - c) * psi;
  return 0.5 * ((z * z - t * t) * psi - (dzz - dtt));
}

}  // namespace

TEST(PsiRest, Examples) {
  EXPECT_NEAR(psi_rest(0, 0), kNorm, 1e-16);
  EXPECT_DOUBLE_EQ(psi_rest(0.3, -1.2), psi_rest(-0.3, 1.2));
  EXPECT_NEAR(psi_rest(1, 1), kNorm * std::exp(-1.0), 1e-16);
}

TEST(PsiBoosted, Examples) {
  for (double z : {-2.0, 0.0, 0.4, 1.5})
    for (double t : {-1.0, 0.0, 0.9}) EXPECT_NEAR(psi_boosted({Rapidity(0.0)}, z, t), psi_rest(z, t), 4e-16);
  for (double e : {-2.0, 0.5, 3.0}) EXPECT_NEAR(psi_boosted({Rapidity(e)}, 0, 0), kNorm, 1e-16);
  // u = sqrt 2, v = 0: value N exp(-e^{-2}); 25-digit reference 0.4927761690646557
  EXPECT_NEAR(psi_boosted({Rapidity(1.0)}, 1, 1), 0.4927761690646557167, 1e-15);
}

TEST(PsiCoupled, IdenticalToBoosted) {
  EXPECT_NEAR(psi_coupled(0.4, -0.9, Rapidity(0.7)), psi_boosted({Rapidity(0.7)}, 0.4, -0.9), 1e-15);
  EXPECT_NEAR(psi_coupled(1, 1, Rapidity(1.0)), 0.4927761690646557167, 1e-15);
}

TEST(PsiCoupled, DecouplesAtZero) {
  for (double x1 : {-1.0, 0.2, 2.0})
    for (double x2 : {-0.5, 0.0, 1.3}) {
      const double product = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * x1 * x1) *
                             std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * x2 * x2);
      EXPECT_NEAR(psi_coupled(x1, x2, Rapidity(0.0)), product, 1e-15);
    }
}

TEST(PhiMomentum, Examples) {
  for (double qz : {-1.0, 0.5})
    for (double q0 : {-0.3, 2.0})
      EXPECT_NEAR(phi_momentum({Rapidity(0.0)}, qz, q0), kNorm * std::exp(-0.5 * (qz * qz + q0 * q0)), 1e-16);
  EXPECT_NEAR(phi_momentum({Rapidity(2.3)}, 0, 0), kNorm, 1e-16);
  // q_u = 0, q_v = sqrt 2: N exp(-e^2)
  EXPECT_NEAR(phi_momentum({Rapidity(1.0)}, 1, 1), 3.486573086319729665e-4, 1e-18);
}

TEST(OscillatorEquation, ResidualExamples) {
  EXPECT_LT(std::abs(oscillator_equation_residual({Rapidity(0.0)}, 0.5, 0.2, 1e-3)), 1e-5);
  EXPECT_LT(std::abs(oscillator_equation_residual({Rapidity(1.3)}, 1.0, -0.4, 1e-3)), 1e-5);
  EXPECT_LT(std::abs(oscillator_equation_residual({Rapidity(0.8)}, 0.0, 0.0, 1e-3)), 1e-9);
}

TEST(OscillatorEquation, SymbolicOracleVanishes) {
  // The analytic residual is zero: psi_eta is an exact lambda = 0 solution.
  for (double e : {0.0, 0.7, 1.3, 2.0})
    for (double z : {-1.5, 0.3, 1.0})
      for (double t : {-0.4, 0.0, 1.2}) EXPECT_NEAR(exact_residual(Rapidity(e), z, t), 0.0, 1e-13);
}

TEST(OscillatorEquation, SecondOrderInStep) {
  for (double e : {0.0, 0.7, 1.3}) {
    const BoostedGroundState s{Rapidity(e)};
    const double r1 = std::abs(oscillator_equation_residual(s, 0.5, 0.2, 2e-2));
    const double r2 = std::abs(oscillator_equation_residual(s, 0.5, 0.2, 1e-2));
    EXPECT_NEAR(r1 / r2, 4.0, 0.1) << "eta " << e;
  }
}

TEST(HermiteFunction, Examples) {
  EXPECT_NEAR(hermite_function(0, 0.0), 0.751125544464942482858703, 1e-15);
  EXPECT_EQ(hermite_function(1, 0.0), 0.0);
  EXPECT_EQ(hermite_functions(64, 1.0).size(), 65u);
}

TEST(HermiteFunction, MatchesExplicitPolynomialsForLowOrder) {
  const double q = std::pow(std::numbers::pi, -0.25);
  for (double x : {-2.0, -0.3, 0.0, 1.1, 3.0}) {
    const double g = std::exp(-0.5 * x * x);
    EXPECT_NEAR(hermite_function(2, x), q * (2 * x * x - 1) / std::sqrt(2.0) * g, 1e-15);
    EXPECT_NEAR(hermite_function(3, x), q * (2 * x * x * x - 3 * x) / std::sqrt(3.0) * g, 1e-14);
  }
}

TEST(HermiteFunction, Orthonormality) {
  const GridSpec grid(-10.0, 10.0, 801);
  auto overlap = [&](std::size_t m, std::size_t n) {
    return trapezoid([&](double x) { return hermite_function(m, x) * hermite_function(n, x); }, grid);
  };
  EXPECT_LT(std::abs(overlap(2, 3)), 1e-8);
  EXPECT_LT(std::abs(overlap(3, 3) - 1.0), 1e-8);
  const GridSpec wide(-16.0, 16.0, 1601);
  EXPECT_LT(std::abs(trapezoid([](double x) { return std::pow(hermite_function(64, x), 2); }, wide) - 1.0), 1e-8);
}

TEST(SchmidtCoefficients, ProductStateAtRest) {
  const auto s = schmidt_coefficients(Rapidity(0.0), 10);
  EXPECT_NEAR(s.coefficients[0], 1.0, 1e-10);
  for (std::size_t n = 1; n < s.coefficients.size(); ++n) EXPECT_NEAR(s.coefficients[n], 0.0, 1e-10);
  EXPECT_LT(s.max_cross_term, 1e-8);
}

TEST(SchmidtCoefficients, GeometricAtEtaOne) {
  const auto s = schmidt_coefficients(Rapidity(1.0), 20);
  // c_0..c_3 from an independent adaptive 2D quadrature (scipy dblquad)
  EXPECT_NEAR(s.coefficients[0], 0.6480542736638858, 1e-10);
  EXPECT_NEAR(s.coefficients[1], 0.493554347564574, 1e-10);
  EXPECT_NEAR(s.coefficients[2], 0.375888106751738, 1e-10);
  EXPECT_NEAR(s.coefficients[3], 0.28627418539540017, 1e-10);
  EXPECT_LT(s.max_cross_term, 1e-8);

  const auto ratios = s.ratios();
  ASSERT_GE(ratios.size(), 15u);
  for (double r : ratios) EXPECT_NEAR(r, ratios.front(), 1e-6);
  // measured ratio, recorded: tanh(1) = 0.76159415595576...
  EXPECT_NEAR(*s.geometric_ratio(), 0.7615941559557649, 1e-9);
  for (std::size_t n = 0; n + 1 < s.coefficients.size(); ++n) {
    EXPECT_GT(s.coefficients[n], 0.0);
    EXPECT_GT(s.coefficients[n], s.coefficients[n + 1]);
  }
}

TEST(SchmidtCoefficients, Completeness) {
  // The deficit after nmax is ratio^(2 (nmax + 1)); at eta = 1 it drops
  // below 1e-10 only from nmax = 42 on (at nmax = 40 it is 2.0e-10).
  const auto s = schmidt_coefficients(Rapidity(1.0), 48);
  EXPECT_LT(std::abs(1.0 - s.sum_of_squares()), 1e-10);
  const auto s40 = schmidt_coefficients(Rapidity(1.0), 40);
  EXPECT_NEAR(1.0 - s40.sum_of_squares(), std::pow(std::tanh(1.0), 82), 2e-12);
}

TEST(SchmidtCoefficients, RefinementFailureIsReported) {
  // 41 points over [-12, 12] cannot resolve the squeezed direction at eta = 1.
  EXPECT_THROW(schmidt_coefficients(Rapidity(1.0), 4, GridSpec(-12.0, 12.0, 41)), ToleranceError);
}

TEST(WavefunctionProperties, Normalization) {
  // Trapezoid over a box aligned with the light-cone axes (unit Jacobian),
  // each side 10 widths of |psi|^2 along that axis. A fixed [-12, 12]^2
  // box truncates the density for eta >= 2.
  for (double e : {0.0, 0.5, 1.0, 2.0, 3.0}) {
    const BoostedGroundState s{Rapidity(e)};
    const GridSpec u_axis = GridSpec::symmetric(10.0 * std::exp(e), 401);
    const GridSpec v_axis = GridSpec::symmetric(10.0 * std::exp(-e), 401);
    const auto wu = trapezoid_weights(u_axis);
    const auto wv = trapezoid_weights(v_axis);
    double norm = 0.0;
    for (std::size_t i = 0; i < u_axis.points(); ++i)
      for (std::size_t j = 0; j < v_axis.points(); ++j) {
        const auto zt = from_light_cone({u_axis.at(i), v_axis.at(j)});
        norm += wu[i] * wv[j] * std::pow(s(zt.z, zt.t), 2);
      }
    EXPECT_NEAR(norm, 1.0, 1e-8) << "eta " << e;
  }
}

TEST(WavefunctionProperties, SqueezeCovarianceAndSymmetry) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> coord(-3, 3);
  std::uniform_real_distribution<double> rap(-2, 2);
  for (int i = 0; i < 2000; ++i) {
    const double z = coord(rng);
    const double t = coord(rng);
    const Rapidity eta(rap(rng));
    const BoostedGroundState s{eta};
    const auto rest = boost_zt(SpacetimeSeparation{z, t}, -eta);
    ASSERT_NEAR(s(z, t), psi_rest(rest.z, rest.t), 1e-12);
    ASSERT_EQ(s(z, t), s(-z, -t));
  }
}
