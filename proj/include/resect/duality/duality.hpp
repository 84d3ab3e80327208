#pragma once

#include <cstdint>
#include <vector>

#include <json.hpp>
#include "resect/poly/multipoly.hpp"
#include "resect/scenes/scene.hpp"

namespace resect::duality {

using algebra::Field;
using algebra::Matrix;
using algebra::Scalar;
using algebra::Vector;
using poly::MultiPoly;
using scenes::Camera;
using scenes::ImagePoint;
using scenes::WorldPoint;

struct ReducedCamera {
  Camera A;
  bool degenerate = false;  // rank < 3
};

/// [[a1,0,0,a4],[0,a2,0,a4],[0,0,a3,a4]]
ReducedCamera reduced_camera(const Vector& a);

/// (a2 a3 a4, a1 a3 a4, a1 a2 a4, -a1 a2 a3), i.e. [1/a1 : 1/a2 : 1/a3 : -1/a4].
/// Throws InvalidArgument when two or more coordinates vanish.
Vector cremona(const Vector& a);

/// Kernel generator of a rank-3 camera; throws RankDeficient otherwise.
WorldPoint center(const Camera& A);

struct ReducedConfig {
  Field field;
  std::vector<Vector> a;      // camera parameters, length m
  std::vector<WorldPoint> q;  // length n
  std::vector<std::vector<ImagePoint>> obs;  // obs[i][j] ~ A(a_i) q_j
  std::uint64_t seed = 0;

  std::size_t m() const { return a.size(); }
  std::size_t n() const { return q.size(); }
};

ReducedConfig random_reduced_config(std::size_t m, std::size_t n, std::uint64_t seed, Field f);
bool is_consistent(const ReducedConfig& cfg);

/// Exchanges cameras and points and transposes the observation grid.
ReducedConfig cw_swap(const ReducedConfig& cfg);

struct FrameNormalization {
  Matrix S;               // world, 4x4
  std::vector<Matrix> T;  // one 3x3 map per camera
};

/// S sends the four world points to E1..E4 and fixes E5; each T_i sends its
/// four image points to e1, e2, e3 and (1,1,1). Throws DegenerateArrangement
/// when a replacement determinant vanishes; postconditions are checked.
FrameNormalization normalize_frame(const std::vector<WorldPoint>& world4,
                                   const std::vector<std::vector<ImagePoint>>& image4);

/// World map alone (columns scaled by replacement determinants, inverted).
Matrix world_frame(const std::vector<WorldPoint>& world4);
/// Image map alone, with the fourth point playing the role of E5.
Matrix image_frame(const std::vector<ImagePoint>& image4);

/// Zero-diagonal 3x3 matrix F with p1^T F p2 = det[[A(q1), p1, 0], [A(q2), 0, p2]].
Matrix dual_fundamental(const WorldPoint& q1, const WorldPoint& q2);

/// The m * C(n, 2) bilinear forms p_{i j1}^T F(q_{j1}, q_{j2}) p_{i j2} in ring
/// (m, n). Throws Genericity naming the violated condition.
std::vector<MultiPoly> reduced_two_focal_system(const std::vector<WorldPoint>& q, std::size_t m);

// Mirrors the scene format with "reduced": true and 4-vector cameras.
nlohmann::json to_json(const ReducedConfig& cfg);
ReducedConfig reduced_config_from_json(const nlohmann::json& j);

}  // namespace resect::duality
