#pragma once

// Coordinate algebra for a two-body bound state: center/relative
// coordinates, boosts along z, and light-cone variables in position and
// momentum space. Natural units throughout.

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace covosc {

/// Boost (and squeeze) parameter. Any finite value; the sign is the boost
/// direction.
class Rapidity {
 public:
  constexpr Rapidity() = default;
  explicit Rapidity(double eta) : eta_(eta) {
    if (!std::isfinite(eta)) throw std::invalid_argument("Rapidity: value must be finite");
  }

  static Rapidity zero() { return Rapidity(); }

  double value() const noexcept { return eta_; }
  Rapidity operator-() const { return Rapidity(-eta_); }
  friend Rapidity operator+(Rapidity a, Rapidity b) { return Rapidity(a.eta_ + b.eta_); }
  bool operator==(const Rapidity&) const = default;

 private:
  double eta_ = 0.0;
};

/// Rest mass of the proton in GeV, the default for beam estimates.
inline constexpr double kProtonMassGeV = 0.938;

/// Four-vector with components ordered (t, x, y, z).
struct FourVector {
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend FourVector operator+(const FourVector& a, const FourVector& b) {
    return {a.t + b.t, a.x + b.x, a.y + b.y, a.z + b.z};
  }
  friend FourVector operator-(const FourVector& a, const FourVector& b) {
    return {a.t - b.t, a.x - b.x, a.y - b.y, a.z - b.z};
  }
  friend FourVector operator*(double s, const FourVector& a) {
    return {s * a.t, s * a.x, s * a.y, s * a.z};
  }
  bool operator==(const FourVector&) const = default;
};

/// Two constituent four-vectors: positions x_a, x_b or momenta p_a, p_b.
struct FourVectorPair {
  FourVector a;
  FourVector b;
};

struct PairCoordinates {
  FourVector center;    ///< (a + b) / 2
  FourVector relative;  ///< (a - b) / (2 sqrt 2)
};

struct MomentumVariables {
  FourVector total;     ///< a + b
  FourVector relative;  ///< sqrt 2 (a - b)
};

/// Longitudinal and time components of the relative coordinate.
struct SpacetimeSeparation {
  double z = 0.0;
  double t = 0.0;
};

struct LightConeCoords {
  double u = 0.0;  ///< (z + t) / sqrt 2
  double v = 0.0;  ///< (z - t) / sqrt 2
};

/// Momentum light-cone pair. Note the sign convention is mirrored relative
/// to LightConeCoords: q_u = (q_0 - q_z)/sqrt 2.
struct MomentumLightCone {
  double q_u = 0.0;
  double q_v = 0.0;
};

inline PairCoordinates pair_coordinates(const FourVectorPair& pair) {
  return {0.5 * (pair.a + pair.b), (1.0 / (2.0 * std::numbers::sqrt2)) * (pair.a - pair.b)};
}

inline MomentumVariables momentum_variables(const FourVectorPair& pair) {
  return {pair.a + pair.b, std::numbers::sqrt2 * (pair.a - pair.b)};
}

inline SpacetimeSeparation boost_zt(SpacetimeSeparation p, Rapidity eta) {
  const double ch = std::cosh(eta.value());
  const double sh = std::sinh(eta.value());
  return {p.z * ch + p.t * sh, p.z * sh + p.t * ch};
}

/// Applies a boost to the z and t components of a four-vector.
inline FourVector boost_zt(const FourVector& p, Rapidity eta) {
  const auto zt = boost_zt(SpacetimeSeparation{p.z, p.t}, eta);
  return {zt.t, p.x, p.y, zt.z};
}

inline LightConeCoords to_light_cone(SpacetimeSeparation p) {
  constexpr double r = 1.0 / std::numbers::sqrt2;
  return {(p.z + p.t) * r, (p.z - p.t) * r};
}

inline SpacetimeSeparation from_light_cone(LightConeCoords c) {
  constexpr double r = 1.0 / std::numbers::sqrt2;
  return {(c.u + c.v) * r, (c.u - c.v) * r};
}

/// The boost is diagonal on the light cone: u -> e^eta u, v -> e^-eta v.
inline LightConeCoords boost_light_cone(LightConeCoords c, Rapidity eta) {
  return {std::exp(eta.value()) * c.u, std::exp(-eta.value()) * c.v};
}

inline MomentumLightCone momentum_light_cone(double q_z, double q_0) {
  constexpr double r = 1.0 / std::numbers::sqrt2;
  return {(q_0 - q_z) * r, (q_0 + q_z) * r};
}

struct MomentumSeparation {
  double q_z = 0.0;
  double q_0 = 0.0;
};

inline MomentumSeparation from_momentum_light_cone(MomentumLightCone c) {
  constexpr double r = 1.0 / std::numbers::sqrt2;
  return {(c.q_v - c.q_u) * r, (c.q_u + c.q_v) * r};
}

/// eta = arccosh(E / m). Energies in GeV.
inline Rapidity rapidity_from_energy(double energy, double mass = kProtonMassGeV) {
  if (!(mass > 0.0) || !std::isfinite(mass)) {
    throw std::domain_error("rapidity_from_energy: mass must be positive, got " +
                            std::to_string(mass));
  }
  if (!(energy >= mass) || !std::isfinite(energy)) {
    throw std::domain_error("rapidity_from_energy: energy " + std::to_string(energy) +
                            " below mass " + std::to_string(mass));
  }
  return Rapidity(std::acosh(energy / mass));
}

}  // namespace covosc
