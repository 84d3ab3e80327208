#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "resect/algebra/matrix.hpp"
#include "resect/random.hpp"

namespace resect::scenes {

using algebra::Field;
using algebra::Matrix;
using algebra::Scalar;
using algebra::Vector;

using WorldPoint = Vector;  // homogeneous 4-vector
using ImagePoint = Vector;  // homogeneous 3-vector
using Camera = Matrix;      // 3x4

struct Noise {
  double sigma = 0.0;
  std::uint64_t seed = 0;
};

struct Scene {
  Field field;
  std::vector<WorldPoint> points;
  std::vector<Camera> cameras;
  // observations[i][j] is the image of point j in camera i.
  std::vector<std::vector<ImagePoint>> observations;
  std::uint64_t seed = 0;
  std::optional<Noise> noise;

  std::size_t m() const { return cameras.size(); }
  std::size_t n() const { return points.size(); }
};

// Integers in [-10^4, 10^4] over Q, uniform residues over F_p.
Scalar random_scalar(Field f, Rng& rng);
Vector random_vector(Field f, std::size_t size, Rng& rng);
// Random 3x4 camera of rank 3.
Camera random_camera(Field f, Rng& rng);

bool no_four_coplanar(const std::vector<WorldPoint>& pts);

/// Rejection-samples n points until no four are coplanar. Throws Genericity
/// when `max_tries` draws all fail.
std::vector<WorldPoint> random_arrangement(std::size_t n, std::uint64_t seed, Field f,
                                           int max_tries = 200);

/// True iff the four points lie on a common cubic of the Cayley family
/// a1 x2x3x4 + a2 x1x3x4 + a3 x1x2x4 + a4 x1x2x3 = 0.
/// Throws InvalidArgument if a point is a coordinate point E_i.
bool common_nodal_cubic(const std::vector<WorldPoint>& pts);

/// A q; throws CenterCoincidence when A q = 0.
ImagePoint project(const Camera& A, const WorldPoint& q);

Scene synthesize(const std::vector<WorldPoint>& points, const std::vector<Camera>& cameras,
                 std::uint64_t seed = 0);

/// Arrangement plus m cameras, resampling cameras whose center hits a point.
Scene random_scene(std::size_t m, std::size_t n, std::uint64_t seed, Field f);

/// Gaussian pixel noise in the chart p[3] = 1. Offsets are the exact rational
/// values of the sampled doubles, so sigma = 0 leaves the scene unchanged.
Scene add_noise(const Scene& scene, double sigma, std::uint64_t seed);

/// Adds a random nonzero integer to one random coordinate of one observation.
Scene perturb(const Scene& scene, std::uint64_t seed);

/// Every observation is proportional to the projection of its point.
bool is_consistent(const Scene& scene);

// p / p[last]; throws ChartViolation if the last coordinate is zero.
Vector dehomogenize(const Vector& p);

}  // namespace resect::scenes
