#pragma once

// Numerical check that the 2D Fourier transform of the space-time wave
// function reproduces the momentum-energy wave function, and discovery of
// the phase convention under which it does.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <vector>

#include "covosc/numerics.hpp"
#include "covosc/wavefunction.hpp"

namespace covosc {

struct DualityCheck {
  Rapidity eta;
  SignConvention convention;
  double max_error = 0.0;      ///< max |phi_numeric - phi_momentum| over the frequency grid
  double max_imaginary = 0.0;  ///< max |Im phi_numeric|
  double norm_position = 0.0;  ///< iint |psi|^2
  double norm_momentum = 0.0;  ///< iint |phi_numeric|^2 over the frequency grid
  bool passed = false;
};

/// Momentum grid on which duality is asserted: [-6, 6] with 161 points.
inline GridSpec default_duality_frequency_grid() { return GridSpec(-6.0, 6.0, 161); }

/// Space grid wide enough for |psi_eta| < 1e-12 on its boundary and fine
/// enough that trapezoid aliasing is negligible up to |q| = `frequency_reach`.
inline GridSpec duality_space_grid(Rapidity eta, double frequency_reach) {
  const double spread = std::exp(std::abs(eta.value()));
  const double half = std::max(12.0, 6.5 * spread);
  const double step =
      std::min(0.1, std::numbers::pi / (std::numbers::sqrt2 * frequency_reach + 9.0 * spread));
  const auto intervals = static_cast<std::size_t>(std::ceil(2.0 * half / step));
  return GridSpec::symmetric(half, intervals + 1);
}

inline DualityCheck check_duality(Rapidity eta, SignConvention convention,
                                  const GridSpec& frequency = default_duality_frequency_grid(),
                                  double tolerance = 1e-6) {
  const BoostedGroundState state{eta};
  const double reach = std::max(std::abs(frequency.min()), std::abs(frequency.max()));
  const GridSpec space = duality_space_grid(eta, reach);
  const auto field = fourier_2d(state, space, frequency, convention);

  DualityCheck out{eta, convention};
  const std::size_t m = frequency.points();
  std::vector<double> modulus(m * m);
  for (std::size_t b = 0; b < m; ++b) {
    for (std::size_t a = 0; a < m; ++a) {
      const auto value = field(a, b);
      const double expected = phi_momentum(state, frequency.at(a), frequency.at(b));
      out.max_error = std::max(out.max_error, std::abs(value - expected));
      out.max_imaginary = std::max(out.max_imaginary, std::abs(value.imag()));
      modulus[b * m + a] = std::norm(value);
    }
  }
  out.norm_momentum = integrate_2d({frequency, modulus});
  out.norm_position =
      integrate_2d(sample_2d([&](double z, double t) { return std::pow(state(z, t), 2); }, space));
  out.passed = out.max_error < tolerance;
  return out;
}

/// Checks all four sign pairs.
inline std::vector<DualityCheck> survey_duality_conventions(
    Rapidity eta, const GridSpec& frequency = default_duality_frequency_grid(),
    double tolerance = 1e-6) {
  std::vector<DualityCheck> out;
  for (const auto& c : kAllConventions) out.push_back(check_duality(eta, c, frequency, tolerance));
  return out;
}

/// First convention (in kAllConventions order) passing the duality check at
/// eta = 1; computed on first use and cached for the process lifetime.
inline std::optional<SignConvention> passing_convention() {
  static const std::optional<SignConvention> cached = [] {
    for (const auto& check : survey_duality_conventions(Rapidity(1.0))) {
      if (check.passed) return std::optional<SignConvention>(check.convention);
    }
    return std::optional<SignConvention>();
  }();
  return cached;
}

}  // namespace covosc
