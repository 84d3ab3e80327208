#include "resect/focal/focal_io.hpp"

#include "resect/error.hpp"
#include "resect/poly/serialize.hpp"

namespace resect::focal {

using nlohmann::json;

json to_json(const FocalSpec& spec) {
  return {{"camera", spec.camera}, {"sigma", spec.sigma}, {"rows", spec.rows}};
}

FocalSpec spec_from_json(const json& j) {
  try {
    FocalSpec s;
    s.camera = j.at("camera").get<std::uint32_t>();
    s.sigma = j.at("sigma").get<std::vector<std::uint32_t>>();
    s.rows = j.at("rows").get<std::vector<std::vector<std::uint32_t>>>();
    return s;
  } catch (const json::exception& e) {
    fail(ErrorCode::Schema, std::string("malformed focal spec: ") + e.what());
  }
}

json to_json(const FocalSystem& sys) {
  json out = json::array();
  for (const auto& e : sys.entries) {
    json item = to_json(e.spec);
    item["poly"] = poly::to_json(e.poly);
    out.push_back(std::move(item));
  }
  return out;
}

FocalSystem focal_system_from_json(const json& j) {
  if (!j.is_array()) fail(ErrorCode::Schema, "focal system must be a list");
  FocalSystem sys;
  for (const auto& item : j) {
    FocalEntry e{spec_from_json(item), poly::poly_from_json(item.at("poly"))};
    sys.ring = e.poly.ring();
    sys.field = e.poly.field();
    sys.entries.push_back(std::move(e));
  }
  sys.specs = sys.entries.size();
  return sys;
}

}  // namespace resect::focal
