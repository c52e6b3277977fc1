#pragma once

// Ground-state wave functions of the covariant oscillator in space-time and
// momentum-energy, the equivalent coupled-oscillator form, a finite
// difference check of the oscillator equation, and the numerical two-mode
// (Schmidt) expansion in Hermite functions.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "covosc/kinematics.hpp"
#include "covosc/numerics.hpp"

namespace covosc {

/// (1/pi)^{1/2}, the prefactor shared by every 2D ground-state form.
inline constexpr double kGroundNorm = std::numbers::inv_sqrtpi;

/// Ground state seen from a frame boosted by `eta`.
struct BoostedGroundState {
  Rapidity eta;

  double operator()(double z, double t) const;
};

/// Rest-frame ground state (1/pi)^{1/2} exp(-(z^2 + t^2)/2).
inline double psi_rest(double z, double t) {
  return kGroundNorm * std::exp(-0.5 * (z * z + t * t));
}

/// Squeezed ground state: exp(-(e^{-2 eta} u^2 + e^{2 eta} v^2)/2) with
/// (u, v) the light-cone coordinates of (z, t).
inline double psi_boosted(const BoostedGroundState& state, double z, double t) {
  const auto lc = to_light_cone({z, t});
  const double e2 = std::exp(2.0 * state.eta.value());
  return kGroundNorm * std::exp(-0.5 * (lc.u * lc.u / e2 + e2 * lc.v * lc.v));
}

inline double BoostedGroundState::operator()(double z, double t) const {
  return psi_boosted(*this, z, t);
}

/// Two coupled oscillators written in their normal coordinates; eta is the
/// coupling strength.
inline double psi_coupled(double x1, double x2, Rapidity eta) {
  const double e2 = std::exp(2.0 * eta.value());
  const double plus = x1 + x2;
  const double minus = x1 - x2;
  return kGroundNorm * std::exp(-0.25 * (plus * plus / e2 + e2 * minus * minus));
}

/// Momentum-energy wave function in the momentum light-cone variables.
inline double phi_momentum(const BoostedGroundState& state, double q_z, double q_0) {
  const auto lc = momentum_light_cone(q_z, q_0);
  const double e2 = std::exp(2.0 * state.eta.value());
  return kGroundNorm * std::exp(-0.5 * (lc.q_u * lc.q_u / e2 + e2 * lc.q_v * lc.q_v));
}

/// (1/2){(z^2 - t^2) - (d^2/dz^2 - d^2/dt^2)} psi_eta - lambda psi_eta with
/// lambda = 0, derivatives by central differences of width `step`.
inline double oscillator_equation_residual(const BoostedGroundState& state, double z, double t,
                                           double step = 1e-3) {
  const double psi = state(z, t);
  const double dzz = second_derivative([&](double x) { return state(x, t); }, z, step);
  const double dtt = second_derivative([&](double x) { return state(z, x); }, t, step);
  return 0.5 * ((z * z - t * t) * psi - (dzz - dtt));
}

/// Orthonormal Hermite function h_n(x) = (2^n n! sqrt(pi))^{-1/2} H_n(x) e^{-x^2/2}.
inline double hermite_function(std::size_t n, double x) {
  return detail::hermite_functions(n, x)[n];
}

/// h_0(x) .. h_nmax(x) in one recurrence pass.
inline std::vector<double> hermite_functions(std::size_t nmax, double x) {
  return detail::hermite_functions(nmax, x);
}

/// Diagonal coefficients of psi_eta(z, t) in the product basis h_n(z) h_n(t).
struct SchmidtExpansion {
  Rapidity eta;
  std::vector<double> coefficients;
  double max_cross_term = 0.0;     ///< largest |c_mn|, m != n
  double refinement_change = 0.0;  ///< largest change of any c_mn under grid doubling
  GridSpec grid = GridSpec(-12.0, 12.0, 401);

  double sum_of_squares() const {
    double s = 0.0;
    for (double c : coefficients) s += c * c;
    return s;
  }

  /// c_{n+1} / c_n while |c_{n+1}| stays above `floor`.
  std::vector<double> ratios(double floor = 1e-6) const {
    std::vector<double> out;
    for (std::size_t n = 0; n + 1 < coefficients.size(); ++n) {
      if (std::abs(coefficients[n + 1]) <= floor) break;
      out.push_back(coefficients[n + 1] / coefficients[n]);
    }
    return out;
  }

  /// Mean of ratios(); nullopt when fewer than one ratio is measurable.
  std::optional<double> geometric_ratio(double floor = 1e-6) const {
    const auto r = ratios(floor);
    if (r.empty()) return std::nullopt;
    double s = 0.0;
    for (double x : r) s += x;
    return s / static_cast<double>(r.size());
  }

  /// -sum c_n^2 ln c_n^2, with 0 ln 0 = 0.
  double entropy() const {
    double s = 0.0;
    for (double c : coefficients) {
      const double p = c * c;
      if (p > 0.0) s -= p * std::log(p);
    }
    return s;
  }
};

/// Quadrature grid that holds psi_eta above ~1e-16 and resolves its narrow
/// light-cone direction. [-12, 12] with 401 points at eta = 0.
inline GridSpec default_schmidt_grid(Rapidity eta) {
  const double a = std::abs(eta.value());
  const double half = std::max(12.0, 6.5 * std::exp(a));
  const double step = std::min(0.06, 0.4 * std::exp(-a));
  const auto intervals = static_cast<std::size_t>(std::ceil(2.0 * half / step));
  return GridSpec::symmetric(half, intervals + 1);
}

namespace detail {

/// Full coefficient matrix C_mn = iint psi h_m(z) h_n(t), row-major (nmax+1)^2.
inline std::vector<double> schmidt_matrix(Rapidity eta, std::size_t nmax, const GridSpec& grid) {
  const std::size_t n = grid.points();
  const std::size_t modes = nmax + 1;
  const auto x = grid.nodes();
  const auto w = trapezoid_weights(grid);
  const BoostedGroundState state{eta};

  std::vector<double> basis(modes * n);  // basis[k * n + i] = h_k(x_i)
  for (std::size_t i = 0; i < n; ++i) {
    const auto h = hermite_functions(nmax, x[i]);
    for (std::size_t k = 0; k < modes; ++k) basis[k * n + i] = h[k];
  }
  std::vector<double> weighted(n * n);  // w_i w_j psi(z_i, t_j)
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) weighted[i * n + j] = w[i] * w[j] * state(x[i], x[j]);

  std::vector<double> partial(modes * n, 0.0);  // sum_i h_m(z_i) W_ij
  for (std::size_t m = 0; m < modes; ++m) {
    double* out = partial.data() + m * n;
    for (std::size_t i = 0; i < n; ++i) {
      const double hm = basis[m * n + i];
      if (hm == 0.0) continue;
      const double* row = weighted.data() + i * n;
      for (std::size_t j = 0; j < n; ++j) out[j] += hm * row[j];
    }
  }
  std::vector<double> coeff(modes * modes);
  for (std::size_t m = 0; m < modes; ++m)
    for (std::size_t k = 0; k < modes; ++k) {
      double acc = 0.0;
      const double* pm = partial.data() + m * n;
      const double* hk = basis.data() + k * n;
      for (std::size_t j = 0; j < n; ++j) acc += pm[j] * hk[j];
      coeff[m * modes + k] = acc;
    }
  return coeff;
}

}  // namespace detail

/// Schmidt coefficients c_n = iint psi_eta(z, t) h_n(z) h_n(t) dz dt by 2D
/// trapezoid quadrature.
///
/// Throws ToleranceError if any off-diagonal coefficient exceeds
/// `tolerance` or if halving the grid spacing moves any coefficient by more
/// than `tolerance`.
inline SchmidtExpansion schmidt_coefficients(Rapidity eta, std::size_t nmax,
                                             std::optional<GridSpec> grid = std::nullopt,
                                             double tolerance = 1e-8) {
  const GridSpec g = grid.value_or(default_schmidt_grid(eta));
  const std::size_t modes = nmax + 1;
  const auto coarse = detail::schmidt_matrix(eta, nmax, g);
  const auto fine = detail::schmidt_matrix(eta, nmax, g.refined());

  SchmidtExpansion out{eta, {}, 0.0, 0.0, g};
  out.coefficients.resize(modes);
  for (std::size_t m = 0; m < modes; ++m) {
    for (std::size_t k = 0; k < modes; ++k) {
      const double c = fine[m * modes + k];
      out.refinement_change =
          std::max(out.refinement_change, std::abs(c - coarse[m * modes + k]));
      if (m == k) {
        out.coefficients[m] = c;
      } else {
        out.max_cross_term = std::max(out.max_cross_term, std::abs(c));
      }
    }
  }
  if (out.refinement_change > tolerance) {
    throw ToleranceError("schmidt_coefficients: grid refinement moved a coefficient by " +
                         std::to_string(out.refinement_change));
  }
  if (out.max_cross_term > tolerance) {
    throw ToleranceError("schmidt_coefficients: cross term " +
                         std::to_string(out.max_cross_term) + " does not vanish");
  }
  return out;
}

}  // namespace covosc
