#pragma once

#include <json.hpp>

#include "hq/hilb.hpp"
#include "hq/toric.hpp"

namespace hq {

/// JSON shapes shared by the CLI reports and the cache keys. Weights are
/// [a, b] pairs, divisor classes are integer arrays in the Picard basis and
/// rationals are decimal strings.
nlohmann::json to_json(Weight w);
nlohmann::json to_json(const DivisorClass& d);
nlohmann::json to_json(const ToricSurfaceModel& surface);
/// {"degrees": [...] or null, "weights": [[a, b], ...]}
nlohmann::json to_json(const EquivariantLineBundle& line);
/// {"surface", "rank", "plus": [...], "minus": [...]}
nlohmann::json to_json(const SplitBundle& bundle);
nlohmann::json to_json(const ChernData& data);
/// List of partition lists, one per surface fixed point.
nlohmann::json to_json(const HilbFixedPoint& fp);

}  // namespace hq
