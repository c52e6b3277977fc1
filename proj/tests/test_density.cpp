#include <gtest/gtest.h>

#include <Eigen/Dense>

#include <cmath>
#include <map>
#include <numbers>

#include "covosc/density.hpp"

using namespace covosc;

namespace {

/// Kernel spectra are expensive; compute each eta once per process.
const EntropyReport& report_for(double eta) {
  static std::map<double, EntropyReport> cache;
  auto it = cache.find(eta);
  if (it == cache.end()) it = cache.emplace(eta, entropy_report(Rapidity(eta))).first;
  return it->second;
}

}  // namespace

TEST(DensityZt, Examples) {
  for (double e : {0.0, 1.0, -2.0}) EXPECT_NEAR(density_zt(Rapidity(e), 0, 0), 1.0 / std::numbers::pi, 1e-16);
  // rotational symmetry at rest
  EXPECT_NEAR(density_zt(Rapidity(0.0), 1.0, 0.0), density_zt(Rapidity(0.0), 0.6, 0.8), 1e-16);
  EXPECT_NEAR(density_zt(Rapidity(1.0), 1, 1), 0.2428283527980381537857124, 1e-15);
}

TEST(MarginalClosedForm, Examples) {
  EXPECT_NEAR(marginal_closed_form(Rapidity(0.0), 0.0), 1.0 / std::sqrt(std::numbers::pi), 1e-16);
  EXPECT_NEAR(marginal_closed_form(Rapidity(1.0), 0.0), 0.2908736447455729699794986, 1e-15);
}

TEST(MarginalClosedForm, SecondMomentByQuadrature) {
  const GridSpec g = GridSpec::symmetric(20.0, 801);
  const double m2 = trapezoid([](double z) { return z * z * marginal_closed_form(Rapidity(1.0), z); }, g);
  EXPECT_NEAR(m2, std::cosh(2.0) / 2.0, 1e-10);
  EXPECT_NEAR(m2, 1.8810978455418157, 1e-10);
}

TEST(MarginalNumeric, RestFrameGroundState) {
  const auto rho = marginal_numeric(Rapidity(0.0), GridSpec(-8.0, 8.0, 161));
  for (std::size_t i = 0; i < rho.values.size(); ++i) {
    const double z = rho.grid.at(i);
    EXPECT_NEAR(rho.values[i], std::exp(-z * z) / std::sqrt(std::numbers::pi), 1e-8);
  }
}

TEST(MarginalNumeric, MatchesClosedFormAndOracle) {
  const auto rho = marginal_numeric(Rapidity(1.0), GridSpec(-8.0, 8.0, 161));
  for (std::size_t i = 0; i < rho.values.size(); ++i)
    EXPECT_NEAR(rho.values[i], marginal_closed_form(Rapidity(1.0), rho.grid.at(i)), 1e-8);
  // arbitrary-precision adaptive quadrature of |psi|^2 over t at z = 0.7
  const auto single = marginal_numeric(Rapidity(1.0), GridSpec(0.7, 1.7, 2));
  EXPECT_NEAR(single.values[0], 0.2553527366404880930317345, 1e-12);
}

TEST(MarginalNumeric, ProbabilityIsPreserved) {
  const auto rho = marginal_numeric(Rapidity(2.0), default_kernel_grid(Rapidity(2.0)));
  EXPECT_NEAR(rho.integral(), 1.0, 1e-8);
}

TEST(ReducedDensityKernel, PureStateAtRest) {
  const auto k = reduced_density_kernel(Rapidity(0.0));
  for (std::size_t i = 0; i < k.grid.points(); i += 37)
    for (std::size_t j = 0; j < k.grid.points(); j += 41) {
      const double z = k.grid.at(i);
      const double zp = k.grid.at(j);
      EXPECT_NEAR(k.matrix(i, j), std::exp(-0.5 * (z * z + zp * zp)) / std::sqrt(std::numbers::pi), 1e-12);
    }
  const auto spectrum = report_for(0.0).spectrum;
  EXPECT_NEAR(spectrum[0], 1.0, 1e-10);
  EXPECT_LT(std::abs(spectrum[1]), 1e-10);
}

TEST(ReducedDensityKernel, InvariantsAtEtaOne) {
  const Rapidity eta(1.0);
  const auto k = reduced_density_kernel(eta);
  EXPECT_LT(k.matrix.max_asymmetry(), 1e-12);
  EXPECT_NEAR(k.trace(), 1.0, 1e-8);
  const auto diag = k.diagonal();
  for (std::size_t i = 0; i < diag.size(); ++i)
    EXPECT_NEAR(diag[i], marginal_closed_form(eta, k.grid.at(i)), 1e-8);
  EXPECT_LT(k.refinement_change, 1e-8);
}

TEST(ReducedDensityKernel, SpectrumAgreesWithIndependentSolver) {
  const Rapidity eta(1.0);
  const auto weighted = reduced_density_kernel(eta).weighted();
  const auto n = static_cast<Eigen::Index>(weighted.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      m(i, j) = weighted(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  const auto& ours = report_for(1.0).spectrum;
  for (std::size_t k = 0; k < ours.size(); ++k)
    EXPECT_NEAR(ours[k], solver.eigenvalues()(n - 1 - static_cast<Eigen::Index>(k)), 1e-12);
  // leading eigenvalues from numpy eigh on the analytically integrated kernel
  EXPECT_NEAR(ours[0], 0.41997434, 1e-8);
  EXPECT_NEAR(ours[1], 0.24359589, 1e-8);
}

TEST(ReducedDensityKernel, SpectrumIsGeometric) {
  for (double e : {0.5, 1.0}) {
    const auto& spectrum = report_for(e).spectrum;
    const double ratio = spectrum[1] / spectrum[0];
    for (std::size_t n = 1; n + 1 < 12; ++n) EXPECT_NEAR(spectrum[n + 1] / spectrum[n], ratio, 1e-6);
    const double tanh2 = std::pow(std::tanh(e), 2);
    EXPECT_NEAR(ratio, tanh2, 1e-6);
  }
}

TEST(VonNeumannEntropy, VanishesAtRest) { EXPECT_LT(std::abs(report_for(0.0).s_numeric), 1e-8); }

TEST(VonNeumannEntropy, MatchesSchmidtFormAtEtaOne) {
  const auto& r = report_for(1.0);
  EXPECT_NEAR(r.s_numeric, 1.61982209289770226436195, 1e-6);
  EXPECT_EQ(r.matched, EntropyForm::schmidt);
  EXPECT_GT(std::abs(r.s_numeric - r.s_paper_closed_form), 0.9);
}

TEST(VonNeumannEntropy, GrowsWithEta) {
  double previous = -1.0;
  for (double e : {0.0, 0.5, 1.0, 1.5, 2.0}) {
    const double s = report_for(e).s_numeric;
    EXPECT_GT(s, previous) << "eta " << e;
    previous = s;
  }
  // increments approach the asymptotic slope 2 per unit eta
  const double d1 = report_for(1.5).s_numeric - report_for(1.0).s_numeric;
  const double d2 = report_for(2.0).s_numeric - report_for(1.5).s_numeric;
  EXPECT_GT(d2, d1);
  EXPECT_NEAR(d2 / 0.5, 2.0, 0.01);
}

TEST(VonNeumannEntropy, NegativeEigenvaluesAreRejected) {
  EXPECT_THROW(entropy_from_spectrum({0.9, 0.2, -1e-6}), NegativeEigenvalueError);
  EXPECT_NO_THROW(entropy_from_spectrum({1.0, -1e-12}));
  EXPECT_EQ(entropy_from_spectrum({1.0, 1e-15}), 0.0);
}

TEST(ClosedForms, Examples) {
  EXPECT_EQ(entropy_paper_closed_form(Rapidity(0.0)), 0.0);
  EXPECT_EQ(entropy_schmidt_closed_form(Rapidity(0.0)), 0.0);
  EXPECT_NEAR(entropy_paper_closed_form(Rapidity(1.0)), 0.6594529591680367017220734, 1e-14);
  EXPECT_NEAR(entropy_schmidt_closed_form(Rapidity(1.0)), 1.61982209289770226436195, 1e-14);
}

TEST(ClosedForms, AsymptoticSlopes) {
  // the cosh(eta) form grows like eta, the cosh^2(eta) form like 2 eta
  const double p = entropy_paper_closed_form(Rapidity(16.0)) - entropy_paper_closed_form(Rapidity(15.0));
  const double s = entropy_schmidt_closed_form(Rapidity(8.0)) - entropy_schmidt_closed_form(Rapidity(7.0));
  EXPECT_NEAR(p, 1.0, 1e-6);
  EXPECT_NEAR(s, 2.0, 1e-6);
}

TEST(ClosedForms, EvenInEta) {
  for (double e : {0.25, 1.0, 2.5}) {
    EXPECT_DOUBLE_EQ(entropy_paper_closed_form(Rapidity(e)), entropy_paper_closed_form(Rapidity(-e)));
    EXPECT_DOUBLE_EQ(entropy_schmidt_closed_form(Rapidity(e)), entropy_schmidt_closed_form(Rapidity(-e)));
    EXPECT_DOUBLE_EQ(differential_entropy_marginal(Rapidity(e)), differential_entropy_marginal(Rapidity(-e)));
  }
}

TEST(DifferentialEntropy, Examples) {
  EXPECT_NEAR(differential_entropy_marginal(Rapidity(0.0)), 1.072364942924700087071714, 1e-14);
  EXPECT_NEAR(differential_entropy_marginal(Rapidity(1.0)), 1.734866316603632302540589, 1e-14);
  EXPECT_NEAR(differential_entropy_marginal_quadrature(Rapidity(1.0)), 1.734866316603632302540589, 1e-8);
  double previous = 0.0;
  for (double e : {0.0, 0.3, 0.9, 1.7, 2.4}) {
    const double s = differential_entropy_marginal(Rapidity(e));
    EXPECT_GT(s, previous);
    previous = s;
  }
}

TEST(DensityProperties, TracePreservation) {
  for (double e : {0.0, 1.0, 2.0, 3.0}) {
    const auto k = reduced_density_kernel(Rapidity(e));
    EXPECT_NEAR(k.trace(), 1.0, 1e-8) << "eta " << e;
  }
}

TEST(DensityProperties, PurityDecays) {
  // For Schmidt weights tanh^{2n} / cosh^2 the purity is 1 / cosh 2eta.
  double previous = 2.0;
  for (double e : {0.0, 0.5, 1.0, 1.5}) {
    const double purity = reduced_density_kernel(Rapidity(e)).purity();
    EXPECT_NEAR(purity, 1.0 / std::cosh(2.0 * e), 1e-8);
    EXPECT_LT(purity, previous);
    previous = purity;
  }
}

TEST(DensityProperties, NumericEntropyIsEven) {
  const auto minus = entropy_report(Rapidity(-1.0));
  EXPECT_NEAR(minus.s_numeric, report_for(1.0).s_numeric, 1e-10);
}

TEST(DensityProperties, OracleAgreementIsConsistent) {
  for (double e : {0.25, 0.5, 1.0, 1.5, 2.0}) {
    const auto& r = report_for(e);
    EXPECT_EQ(r.matched, EntropyForm::schmidt) << "eta " << e;
    EXPECT_LT(std::abs(r.s_numeric - r.s_schmidt_closed_form), 1e-4);
  }
}
