#pragma once

#include <string>

#include <json.hpp>
#include "resect/scenes/scene.hpp"

namespace resect::scenes {

// Exact scalars are written as "a" or "a/b" strings; cameras row-major.
nlohmann::json to_json(const Scene& s);
Scene scene_from_json(const nlohmann::json& j);

nlohmann::json vector_json(const Vector& v);
Vector vector_from_json(Field f, const nlohmann::json& j, std::size_t size);
nlohmann::json matrix_json(const Matrix& A);
Matrix matrix_from_json(Field f, const nlohmann::json& j, std::size_t rows, std::size_t cols);

// Throws Io on unreadable files and Schema on malformed JSON.
nlohmann::json read_json_file(const std::string& path);

}  // namespace resect::scenes
