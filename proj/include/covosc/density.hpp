#pragma once

// Probability density in (z, t), its marginal over the time separation,
// the reduced density kernel rho(z, z') and its entropies.
//
// The kernel is discretized Nystrom-style on a uniform z grid: the matrix
// K(z_i, z_j) dz has trace ~ 1 and eigenvalues approximating those of the
// integral operator.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "covosc/kinematics.hpp"
#include "covosc/numerics.hpp"
#include "covosc/wavefunction.hpp"

namespace covosc {

class NegativeEigenvalueError : public ToleranceError {
 public:
  using ToleranceError::ToleranceError;
};

/// |psi_eta(z, t)|^2.
inline double density_zt(Rapidity eta, double z, double t) {
  const double psi = psi_boosted({eta}, z, t);
  return psi * psi;
}

/// Closed form of the t-marginal: (pi cosh 2eta)^{-1/2} exp(-z^2 / cosh 2eta).
inline double marginal_closed_form(Rapidity eta, double z) {
  const double c = std::cosh(2.0 * eta.value());
  return std::exp(-z * z / c) / std::sqrt(std::numbers::pi * c);
}

/// Variance of the marginal, cosh(2 eta) / 2.
inline double marginal_variance(Rapidity eta) { return 0.5 * std::cosh(2.0 * eta.value()); }

struct ProbabilityDensity1D {
  GridSpec grid;
  std::vector<double> values;

  double integral() const { return trapezoid_sampled(values, grid); }

  double moment(int power) const {
    std::vector<double> f(values.size());
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = std::pow(grid.at(i), power) * values[i];
    return trapezoid_sampled(f, grid);
  }

  double mean() const { return moment(1) / integral(); }

  double standard_deviation() const {
    const double norm = integral();
    const double mu = moment(1) / norm;
    return std::sqrt(moment(2) / norm - mu * mu);
  }
};

/// Trapezoid axis for integrating out t at any z in [-reach, reach]. The
/// integrand at fixed z is a Gaussian in t of width (2 cosh 2eta)^{-1/2}
/// centred at z tanh 2eta, so the axis extends 9 / sqrt(cosh 2eta) past
/// `reach` and samples the width about five times per standard deviation.
inline GridSpec partial_trace_axis(Rapidity eta, double reach) {
  const double root_c = std::sqrt(std::cosh(2.0 * eta.value()));
  const double half = reach + 9.0 / root_c;
  const double step = 0.3 / root_c;
  const auto intervals = static_cast<std::size_t>(std::ceil(2.0 * half / step));
  return GridSpec::symmetric(half, intervals + 1);
}

inline double grid_reach(const GridSpec& g) { return std::max(std::abs(g.min()), std::abs(g.max())); }

/// rho_eta(z) = int rho_eta(z, t) dt at each grid node, by trapezoid
/// quadrature in t with doubling refinement.
///
/// Throws ToleranceError if refinement keeps moving a value by more than
/// `tolerance`.
inline ProbabilityDensity1D marginal_numeric(Rapidity eta, const GridSpec& grid,
                                             std::optional<GridSpec> t_axis = std::nullopt,
                                             double tolerance = 1e-8) {
  const GridSpec axis = t_axis.value_or(partial_trace_axis(eta, grid_reach(grid)));
  const auto rule = QuadratureRule::trapezoid_on(axis);
  ProbabilityDensity1D out{grid, std::vector<double>(grid.points())};
  for (std::size_t i = 0; i < grid.points(); ++i) {
    const double z = grid.at(i);
    try {
      out.values[i] = integrate_1d([&](double t) { return density_zt(eta, z, t); }, rule, tolerance);
    } catch (const ConvergenceError& e) {
      throw ToleranceError(std::string("marginal_numeric: ") + e.what());
    }
  }
  return out;
}

/// Discretized reduced density operator.
struct DensityKernel {
  GridSpec grid;
  Matrix matrix;     ///< K(z_i, z_j) = int psi(z_i, t) psi(z_j, t) dt
  double weight;     ///< quadrature spacing dz
  double refinement_change = 0.0;

  /// K(z_i, z_j) dz, the matrix whose eigenvalues approximate the operator's.
  Matrix weighted() const { return matrix.scaled(weight); }

  double trace() const { return matrix.trace() * weight; }

  /// Tr(rho^2) = iint K(z, z')^2 dz dz'.
  double purity() const {
    double s = 0.0;
    const std::size_t n = matrix.size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) s += matrix(i, j) * matrix(i, j);
    return s * weight * weight;
  }

  std::vector<double> diagonal() const {
    std::vector<double> d(matrix.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = matrix(i, i);
    return d;
  }
};

/// Default kernel grid: 401 points on [-L, L] with L = max(12, 6 sigma),
/// sigma^2 = cosh(2 eta) / 2.
inline GridSpec default_kernel_grid(Rapidity eta) {
  const double half = std::max(12.0, 6.0 * std::sqrt(marginal_variance(eta)));
  return GridSpec::symmetric(half, 401);
}

namespace detail {

inline Matrix kernel_on_axis(Rapidity eta, const GridSpec& grid, const GridSpec& t_axis) {
  const std::size_t nz = grid.points();
  const std::size_t nt = t_axis.points();
  const auto w = trapezoid_weights(t_axis);
  const BoostedGroundState state{eta};

  std::vector<double> samples(nz * nt);  // psi(z_i, t_k)
  for (std::size_t i = 0; i < nz; ++i) {
    const double z = grid.at(i);
    for (std::size_t k = 0; k < nt; ++k) samples[i * nt + k] = state(z, t_axis.at(k));
  }
  std::vector<double> scaled(samples);
  for (std::size_t i = 0; i < nz; ++i)
    for (std::size_t k = 0; k < nt; ++k) scaled[i * nt + k] *= w[k];

  Matrix out(nz);
  for (std::size_t i = 0; i < nz; ++i) {
    const double* a = scaled.data() + i * nt;
    for (std::size_t j = i; j < nz; ++j) {
      const double* b = samples.data() + j * nt;
      double acc = 0.0;
      for (std::size_t k = 0; k < nt; ++k) acc += a[k] * b[k];
      out(i, j) = acc;
      out(j, i) = acc;
    }
  }
  return out;
}

}  // namespace detail

/// K(z, z') = int psi_eta(z, t) psi_eta(z', t) dt on the grid. The t
/// integral is repeated on a doubled axis; ToleranceError if any entry
/// moves by more than `tolerance`.
inline DensityKernel reduced_density_kernel(Rapidity eta, const GridSpec& grid,
                                            std::optional<GridSpec> t_axis = std::nullopt,
                                            double tolerance = 1e-8) {
  const GridSpec axis = t_axis.value_or(partial_trace_axis(eta, grid_reach(grid)));
  DensityKernel out{grid, detail::kernel_on_axis(eta, grid, axis), grid.spacing(), 0.0};
  const Matrix fine = detail::kernel_on_axis(eta, grid, axis.refined());
  const std::size_t n = grid.points();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      out.refinement_change = std::max(out.refinement_change, std::abs(fine(i, j) - out.matrix(i, j)));
  if (out.refinement_change > tolerance) {
    throw ToleranceError("reduced_density_kernel: t refinement moved an entry by " +
                         std::to_string(out.refinement_change));
  }
  out.matrix = fine;
  return out;
}

inline DensityKernel reduced_density_kernel(Rapidity eta) {
  return reduced_density_kernel(eta, default_kernel_grid(eta));
}

/// Eigenvalues of the weighted kernel, descending.
inline std::vector<double> kernel_spectrum(const DensityKernel& kernel) {
  return symmetric_eigen(kernel.weighted()).values;
}

/// -sum lambda ln lambda over eigenvalues above `cutoff`.
///
/// Throws NegativeEigenvalueError if any eigenvalue is below
/// -`negative_tolerance`.
inline double entropy_from_spectrum(const std::vector<double>& spectrum, double cutoff = 1e-14,
                                    double negative_tolerance = 1e-8) {
  double s = 0.0;
  for (double lambda : spectrum) {
    if (lambda < -negative_tolerance) {
      throw NegativeEigenvalueError("entropy: eigenvalue " + std::to_string(lambda) +
                                    " is negative");
    }
    if (lambda > cutoff) s -= lambda * std::log(lambda);
  }
  return s;
}

/// von Neumann entropy -Tr(rho ln rho) of the discretized kernel, in nats.
inline double von_neumann_entropy_numeric(const DensityKernel& kernel, double cutoff = 1e-14) {
  return entropy_from_spectrum(kernel_spectrum(kernel), cutoff);
}

namespace detail {

/// x ln x with 0 ln 0 = 0.
inline double x_log_x(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

}  // namespace detail

/// (cosh eta/2)^2 ln (cosh eta/2)^2 - (sinh eta/2)^2 ln (sinh eta/2)^2.
inline double entropy_paper_closed_form(Rapidity eta) {
  const double c = std::cosh(0.5 * eta.value());
  const double s = std::sinh(0.5 * eta.value());
  return detail::x_log_x(c * c) - detail::x_log_x(s * s);
}

/// cosh^2 eta ln cosh^2 eta - sinh^2 eta ln sinh^2 eta, the entropy implied
/// by Schmidt weights tanh^{2n} eta / cosh^2 eta.
inline double entropy_schmidt_closed_form(Rapidity eta) {
  const double c = std::cosh(eta.value());
  const double s = std::sinh(eta.value());
  return detail::x_log_x(c * c) - detail::x_log_x(s * s);
}

/// -int rho(z) ln rho(z) dz of the closed-form marginal, by quadrature.
inline double differential_entropy_marginal_quadrature(Rapidity eta) {
  const double sigma = std::sqrt(marginal_variance(eta));
  const double half = 14.0 * sigma;
  const QuadratureRule rule{-half, half, 401, QuadratureScheme::trapezoid, 1.0};
  return integrate_1d(
      [&](double z) {
        const double rho = marginal_closed_form(eta, z);
        return rho > 0.0 ? -rho * std::log(rho) : 0.0;
      },
      rule, 1e-10);
}

/// Differential entropy of the Gaussian marginal, (1/2)(1 + ln(pi cosh 2eta)).
/// Cross-checked against quadrature; ToleranceError if they differ by more
/// than `tolerance`.
inline double differential_entropy_marginal(Rapidity eta, double tolerance = 1e-8) {
  const double closed =
      0.5 * (1.0 + std::log(std::numbers::pi * std::cosh(2.0 * eta.value())));
  const double numeric = differential_entropy_marginal_quadrature(eta);
  if (std::abs(closed - numeric) > tolerance) {
    throw ToleranceError("differential_entropy_marginal: closed form and quadrature differ by " +
                         std::to_string(std::abs(closed - numeric)));
  }
  return closed;
}

enum class EntropyForm { none, paper, schmidt, both };

inline const char* to_string(EntropyForm f) {
  switch (f) {
    case EntropyForm::paper: return "paper";
    case EntropyForm::schmidt: return "schmidt";
    case EntropyForm::both: return "both";
    case EntropyForm::none: break;
  }
  return "none";
}

/// Which closed form(s) agree with `numeric` within `tolerance`.
inline EntropyForm classify_entropy(double numeric, double paper, double schmidt, double tolerance) {
  const bool p = std::abs(numeric - paper) < tolerance;
  const bool s = std::abs(numeric - schmidt) < tolerance;
  if (p && s) return EntropyForm::both;
  if (p) return EntropyForm::paper;
  if (s) return EntropyForm::schmidt;
  return EntropyForm::none;
}

struct EntropyReport {
  Rapidity eta;
  double s_numeric = 0.0;
  double s_paper_closed_form = 0.0;
  double s_schmidt_closed_form = 0.0;
  double s_differential_marginal = 0.0;
  std::vector<double> spectrum;  ///< leading weighted eigenvalues, at most 32
  EntropyForm matched = EntropyForm::none;
  double match_tolerance = 1e-4;
  double trace = 0.0;
  double purity = 0.0;
  GridSpec grid = GridSpec(-12.0, 12.0, 401);
};

inline constexpr std::size_t kReportedSpectrum = 32;

/// Diagonalizes the kernel once and evaluates every entropy candidate.
inline EntropyReport entropy_report(Rapidity eta, std::optional<GridSpec> grid = std::nullopt,
                                    double match_tolerance = 1e-4) {
  const GridSpec g = grid.value_or(default_kernel_grid(eta));
  const auto kernel = reduced_density_kernel(eta, g);
  const auto spectrum = kernel_spectrum(kernel);

  EntropyReport r;
  r.eta = eta;
  r.grid = g;
  r.s_numeric = entropy_from_spectrum(spectrum);
  r.s_paper_closed_form = entropy_paper_closed_form(eta);
  r.s_schmidt_closed_form = entropy_schmidt_closed_form(eta);
  r.s_differential_marginal = differential_entropy_marginal(eta);
  r.spectrum.assign(spectrum.begin(),
                    spectrum.begin() + static_cast<std::ptrdiff_t>(
                                           std::min(kReportedSpectrum, spectrum.size())));
  r.match_tolerance = match_tolerance;
  r.matched =
      classify_entropy(r.s_numeric, r.s_paper_closed_form, r.s_schmidt_closed_form, match_tolerance);
  r.trace = kernel.trace();
  r.purity = kernel.purity();
  return r;
}

}  // namespace covosc
