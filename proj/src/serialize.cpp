#include "hq/serialize.hpp"

namespace hq {

using nlohmann::json;

json to_json(Weight w) { return json::array({w.a, w.b}); }

json to_json(const DivisorClass& d) {
  json out = json::array();
  for (auto x : d) out.push_back(x);
  return out;
}

json to_json(const ToricSurfaceModel& surface) {
  json points = json::array();
  for (const auto& fp : surface.fixed_points) {
    points.push_back({{"rays", {fp.ray_first, fp.ray_second}}, {"v1", to_json(fp.v1)}, {"v2", to_json(fp.v2)}});
  }
  json edges = json::array();
  for (const auto& e : surface.edges) {
    edges.push_back({{"p", e.p}, {"q", e.q}, {"w", to_json(e.w)}, {"ray", e.ray}});
  }
  json rays = json::array();
  for (const auto& r : surface.rays) rays.push_back({r[0], r[1]});
  return {{"name", surface.name()},
          {"rays", rays},
          {"fixed_points", points},
          {"edges", edges},
          {"intersection_form", surface.intersection_form},
          {"canonical_class", to_json(surface.canonical_class)},
          {"k_squared", surface.k_squared},
          {"chi_top", surface.chi_top}};
}

json to_json(const EquivariantLineBundle& line) {
  json weights = json::array();
  for (Weight w : line.weights) weights.push_back(to_json(w));
  return {{"degrees", line.degrees ? to_json(*line.degrees) : json(nullptr)}, {"weights", weights}};
}

json to_json(const SplitBundle& bundle) {
  json plus = json::array(), minus = json::array();
  for (const auto& l : bundle.plus) plus.push_back(to_json(l));
  for (const auto& l : bundle.minus) minus.push_back(to_json(l));
  return {{"surface", bundle.surface.name()}, {"rank", bundle.rank()}, {"plus", plus}, {"minus", minus}};
}

json to_json(const ChernData& data) {
  return {{"rank", data.rank}, {"c1", to_json(data.c1)}, {"c2", data.c2}};
}

json to_json(const HilbFixedPoint& fp) {
  json out = json::array();
  for (const auto& lambda : fp.assignment) out.push_back(lambda.parts);
  return out;
}

}  // namespace hq
