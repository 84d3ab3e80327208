#include "resect/scenes/scene_io.hpp"

#include <fstream>

#include "resect/error.hpp"

namespace resect::scenes {

using nlohmann::json;

json vector_json(const Vector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(x.to_string());
  return a;
}

Vector vector_from_json(Field f, const json& j, std::size_t size) {
  if (!j.is_array() || j.size() != size)
    fail(ErrorCode::Schema, "expected an array of " + std::to_string(size) + " scalars");
  Vector v;
  for (const auto& x : j) {
    if (!x.is_string() && !x.is_number_integer()) fail(ErrorCode::Schema, "scalar must be a string");
    const std::string text = x.is_string() ? x.get<std::string>() : std::to_string(x.get<long long>());
    try {
      v.push_back(Scalar::parse(f, text));
    } catch (const Error& e) {
      fail(ErrorCode::Schema, std::string("bad scalar: ") + e.what());
    }
  }
  return v;
}

json matrix_json(const Matrix& A) {
  json a = json::array();
  for (std::size_t r = 0; r < A.rows(); ++r)
    for (std::size_t c = 0; c < A.cols(); ++c) a.push_back(A(r, c).to_string());
  return a;
}

Matrix matrix_from_json(Field f, const json& j, std::size_t rows, std::size_t cols) {
  const Vector v = vector_from_json(f, j, rows * cols);
  Matrix A(f, rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) A.set(r, c, v[r * cols + c]);
  return A;
}

json to_json(const Scene& s) {
  json pts = json::array(), cams = json::array(), obs = json::array();
  for (const auto& q : s.points) pts.push_back(vector_json(q));
  for (const auto& A : s.cameras) cams.push_back(matrix_json(A));
  for (const auto& row : s.observations) {
    json r = json::array();
    for (const auto& p : row) r.push_back(vector_json(p));
    obs.push_back(std::move(r));
  }
  json noise = nullptr;
  if (s.noise) noise = {{"sigma", s.noise->sigma}, {"seed", s.noise->seed}};
  return {{"field", s.field.to_string()}, {"points", std::move(pts)}, {"cameras", std::move(cams)},
          {"observations", std::move(obs)}, {"seed", s.seed}, {"noise", std::move(noise)}};
}

Scene scene_from_json(const json& j) {
  try {
    Scene s;
    try {
      s.field = Field::parse(j.at("field").get<std::string>());
    } catch (const Error& e) {
      fail(ErrorCode::Schema, e.what());
    }
    for (const auto& q : j.at("points")) s.points.push_back(vector_from_json(s.field, q, 4));
    for (const auto& A : j.at("cameras")) s.cameras.push_back(matrix_from_json(s.field, A, 3, 4));
    const auto& obs = j.at("observations");
    if (!obs.is_array() || obs.size() != s.m())
      fail(ErrorCode::Schema, "observations must have one row per camera");
    for (const auto& row : obs) {
      if (!row.is_array() || row.size() != s.n())
        fail(ErrorCode::Schema, "observation row must have one entry per point");
      std::vector<ImagePoint> r;
      for (const auto& p : row) r.push_back(vector_from_json(s.field, p, 3));
      s.observations.push_back(std::move(r));
    }
    s.seed = j.value("seed", std::uint64_t{0});
    if (j.contains("noise") && !j["noise"].is_null())
      s.noise = Noise{j["noise"].at("sigma").get<double>(), j["noise"].at("seed").get<std::uint64_t>()};
    return s;
  } catch (const json::exception& e) {
    fail(ErrorCode::Schema, std::string("malformed scene JSON: ") + e.what());
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Io, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    fail(ErrorCode::Schema, std::string("invalid JSON in ") + path + ": " + e.what());
  }
}

}  // namespace resect::scenes
