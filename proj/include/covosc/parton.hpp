#pragma once

// Observables of the fast-moving bound state: squeeze-ellipse geometry,
// longitudinal widths in position and momentum, and the time-scale ratio
// that decides whether constituents respond coherently.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "covosc/density.hpp"
#include "covosc/kinematics.hpp"
#include "covosc/numerics.hpp"
#include "covosc/wavefunction.hpp"

namespace covosc {

/// Unit direction in a (first, second) coordinate plane, e.g. (z, t).
struct PlaneDirection {
  double first = 0.0;
  double second = 0.0;
};

struct SqueezeGeometry {
  Rapidity eta;
  double major_axis_scale = 1.0;  ///< e^{|eta|}
  double minor_axis_scale = 1.0;  ///< e^{-|eta|}
  PlaneDirection major_direction;  ///< in the (z, t) plane
  PlaneDirection minor_direction;
};

/// Semi-axes of the 1-sigma ellipse of psi_eta. For eta > 0 the major axis
/// is the u light-cone axis; for eta < 0 the roles of u and v swap.
inline SqueezeGeometry squeeze_geometry(Rapidity eta) {
  constexpr double r = 1.0 / std::numbers::sqrt2;
  const double a = std::abs(eta.value());
  SqueezeGeometry g{eta, std::exp(a), std::exp(-a), {r, r}, {r, -r}};
  if (eta.value() < 0.0) std::swap(g.major_direction, g.minor_direction);
  return g;
}

/// Standard deviation of the t-marginal, (cosh 2eta / 2)^{1/2}.
inline double spatial_width(Rapidity eta) { return std::sqrt(marginal_variance(eta)); }

/// Grid wide enough for second moments of a marginal to 1e-10.
inline GridSpec width_grid(Rapidity eta) {
  const double half = std::max(12.0, 12.0 * spatial_width(eta));
  return GridSpec::symmetric(half, 801);
}

/// Spatial width from the quadrature marginal rather than the closed form.
inline double spatial_width_numeric(Rapidity eta) {
  return marginal_numeric(eta, width_grid(eta)).standard_deviation();
}

/// q_z-marginal of |phi_eta(q_z, q_0)|^2 by quadrature over q_0.
inline ProbabilityDensity1D momentum_marginal(Rapidity eta, const GridSpec& grid,
                                              double tolerance = 1e-8) {
  const BoostedGroundState state{eta};
  // same Gaussian family in q_0 as the position integrand in t
  const auto rule = QuadratureRule::trapezoid_on(partial_trace_axis(eta, grid_reach(grid)));
  ProbabilityDensity1D out{grid, std::vector<double>(grid.points())};
  for (std::size_t i = 0; i < grid.points(); ++i) {
    const double qz = grid.at(i);
    try {
      out.values[i] = integrate_1d(
          [&](double q0) {
            const double phi = phi_momentum(state, qz, q0);
            return phi * phi;
          },
          rule, tolerance);
    } catch (const ConvergenceError& e) {
      throw ToleranceError(std::string("momentum_marginal: ") + e.what());
    }
  }
  return out;
}

/// Longitudinal momentum width, measured by quadrature of |phi_eta|^2.
inline double momentum_width(Rapidity eta) {
  return momentum_marginal(eta, width_grid(eta)).standard_deviation();
}

struct DecoherenceReport {
  Rapidity eta;
  double period_dilation = 1.0;         ///< e^{|eta|}
  double interaction_time_scale = 1.0;  ///< e^{-|eta|}
  double ratio = 1.0;                   ///< interaction time / oscillation period
  std::optional<double> beam_energy;    ///< GeV
  std::optional<double> mass;           ///< GeV
};

/// Time scales relative to the rest frame: the internal period grows as
/// e^|eta|, the external interaction time shrinks as e^-|eta|.
inline DecoherenceReport decoherence_report(Rapidity eta) {
  const double a = std::abs(eta.value());
  DecoherenceReport r;
  r.eta = eta;
  r.period_dilation = std::exp(a);
  r.interaction_time_scale = std::exp(-a);
  r.ratio = r.interaction_time_scale / r.period_dilation;
  return r;
}

inline DecoherenceReport beam_report(double energy, double mass = kProtonMassGeV) {
  auto r = decoherence_report(rapidity_from_energy(energy, mass));
  r.beam_energy = energy;
  r.mass = mass;
  return r;
}

}  // namespace covosc

namespace covosc {

struct PlanePoint {
  double first = 0.0;
  double second = 0.0;
};

/// Geometry and 1-sigma contours of the space-time and momentum-energy
/// densities in one frame.
struct FigureData {
  SqueezeGeometry geometry;
  PlaneDirection momentum_major_direction;  ///< in the (q_z, q_0) plane
  PlaneDirection momentum_minor_direction;
  std::vector<PlanePoint> spacetime_contour;  ///< (z, t)
  std::vector<PlanePoint> momentum_contour;   ///< (q_z, q_0)
  double contour_density = 0.0;               ///< |psi|^2 on the contour, e^{-1}/pi
  double max_contour_deviation = 0.0;         ///< worst |density - contour_density| over both contours
};

/// Contour where the exponent of |psi_eta|^2 equals -1: u = e^eta cos a,
/// v = e^-eta sin a, and likewise q_u, q_v in momentum space.
inline FigureData figure_data(Rapidity eta, std::size_t contour_points = 72) {
  constexpr double r = 1.0 / std::numbers::sqrt2;
  FigureData fig;
  fig.geometry = squeeze_geometry(eta);
  fig.momentum_major_direction = {-r, r};  // q_u axis
  fig.momentum_minor_direction = {r, r};   // q_v axis
  if (eta.value() < 0.0) std::swap(fig.momentum_major_direction, fig.momentum_minor_direction);
  fig.contour_density = std::exp(-1.0) / std::numbers::pi;

  const BoostedGroundState state{eta};
  const double grow = std::exp(eta.value());
  for (std::size_t k = 0; k < contour_points; ++k) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) /
                         static_cast<double>(contour_points);
    const double a = grow * std::cos(angle);
    const double b = std::sin(angle) / grow;

    const auto zt = from_light_cone({a, b});
    fig.spacetime_contour.push_back({zt.z, zt.t});
    const auto q = from_momentum_light_cone({a, b});
    fig.momentum_contour.push_back({q.q_z, q.q_0});

    const double psi = state(zt.z, zt.t);
    const double phi = phi_momentum(state, q.q_z, q.q_0);
    fig.max_contour_deviation =
        std::max({fig.max_contour_deviation, std::abs(psi * psi - fig.contour_density),
                  std::abs(phi * phi - fig.contour_density)});
  }
  return fig;
}

}  // namespace covosc
