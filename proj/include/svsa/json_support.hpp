#pragma once

#include <json.hpp>

#include "svsa/noise.hpp"
#include "svsa/norms.hpp"
#include "svsa/schedule.hpp"

namespace svsa {

/// Config-file encoding: {kind: "weighted-max"|"weighted-p"|"euclidean",
/// weights, p}.
nlohmann::json norm_to_json(const NormSpec& spec);
NormSpec norm_from_json(const nlohmann::json& j);

/// {kind: "harmonic"|"polynomial"|"explicit", a0, q, values}.
nlohmann::json schedule_to_json(const StepSchedule& s);
StepSchedule schedule_from_json(const nlohmann::json& j);

/// {kind: "zero"|"bounded-iid"|"state-scaled-gaussian", D, K, shape}.
nlohmann::json noise_to_json(const NoiseModel& m);
NoiseModel noise_from_json(const nlohmann::json& j);

} // namespace svsa
