#pragma once

// JSON views of the report types. Keys keep declaration order.

#include <string>
#include <vector>

#include "json.hpp"

#include "covosc/density.hpp"
#include "covosc/duality.hpp"
#include "covosc/numerics.hpp"
#include "covosc/parton.hpp"
#include "covosc/wavefunction.hpp"

namespace covosc {

using Json = nlohmann::ordered_json;

inline Json to_json(const GridSpec& g) {
  return Json{{"min", g.min()}, {"max", g.max()}, {"points", g.points()}};
}

inline Json to_json(const PlaneDirection& d) { return Json::array({d.first, d.second}); }

inline Json to_json(const EntropyReport& r) {
  return Json{{"eta", r.eta.value()},
              {"s_numeric", r.s_numeric},
              {"s_paper_closed_form", r.s_paper_closed_form},
              {"s_schmidt_closed_form", r.s_schmidt_closed_form},
              {"s_differential_marginal", r.s_differential_marginal},
              {"spectrum", r.spectrum},
              {"matched_form", to_string(r.matched)},
              {"match_tolerance", r.match_tolerance},
              {"trace", r.trace},
              {"purity", r.purity},
              {"grid", to_json(r.grid)}};
}

inline Json to_json(const SqueezeGeometry& g) {
  return Json{{"eta", g.eta.value()},
              {"major_axis_scale", g.major_axis_scale},
              {"minor_axis_scale", g.minor_axis_scale},
              {"major_direction_zt", to_json(g.major_direction)},
              {"minor_direction_zt", to_json(g.minor_direction)}};
}

inline Json to_json(const DecoherenceReport& r) {
  Json j{{"eta", r.eta.value()},
         {"period_dilation", r.period_dilation},
         {"interaction_time_scale", r.interaction_time_scale},
         {"ratio", r.ratio}};
  j["beam_energy"] = r.beam_energy ? Json(*r.beam_energy) : Json(nullptr);
  j["mass"] = r.mass ? Json(*r.mass) : Json(nullptr);
  return j;
}

inline Json to_json(const std::vector<PlanePoint>& points) {
  Json arr = Json::array();
  for (const auto& p : points) arr.push_back(Json::array({p.first, p.second}));
  return arr;
}

inline Json to_json(const FigureData& f) {
  return Json{
      {"eta", f.geometry.eta.value()},
      {"semi_axes", Json{{"major", f.geometry.major_axis_scale}, {"minor", f.geometry.minor_axis_scale}}},
      {"spacetime",
       Json{{"axes", Json::array({"z", "t"})},
            {"major_direction", to_json(f.geometry.major_direction)},
            {"minor_direction", to_json(f.geometry.minor_direction)},
            {"contour", to_json(f.spacetime_contour)}}},
      {"momentum",
       Json{{"axes", Json::array({"q_z", "q_0"})},
            {"major_direction", to_json(f.momentum_major_direction)},
            {"minor_direction", to_json(f.momentum_minor_direction)},
            {"contour", to_json(f.momentum_contour)}}},
      {"contour_density", f.contour_density},
      {"max_contour_deviation", f.max_contour_deviation}};
}

inline Json to_json(const SchmidtExpansion& s) {
  Json j{{"eta", s.eta.value()},
         {"coefficients", s.coefficients},
         {"sum_of_squares", s.sum_of_squares()},
         {"max_cross_term", s.max_cross_term},
         {"refinement_change", s.refinement_change},
         {"entropy", s.entropy()},
         {"grid", to_json(s.grid)}};
  const auto ratio = s.geometric_ratio();
  j["geometric_ratio"] = ratio ? Json(*ratio) : Json(nullptr);
  return j;
}

inline Json to_json(const DualityCheck& d) {
  return Json{{"eta", d.eta.value()},
              {"convention", Json::array({d.convention.first, d.convention.second})},
              {"max_error", d.max_error},
              {"max_imaginary", d.max_imaginary},
              {"norm_position", d.norm_position},
              {"norm_momentum", d.norm_momentum},
              {"passed", d.passed}};
}

}  // namespace covosc
