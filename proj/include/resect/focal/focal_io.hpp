#pragma once

#include <json.hpp>
#include "resect/focal/focal.hpp"

namespace resect::focal {

// {"camera": i, "sigma": [...], "rows": [[...], ...]}
nlohmann::json to_json(const FocalSpec& spec);
FocalSpec spec_from_json(const nlohmann::json& j);

// List of {"camera", "sigma", "rows", "poly"}.
nlohmann::json to_json(const FocalSystem& sys);
FocalSystem focal_system_from_json(const nlohmann::json& j);

}  // namespace resect::focal
