#include "resect/scenes/scene.hpp"

#include "resect/algebra/linalg.hpp"
#include "resect/error.hpp"

namespace resect::scenes {

Scalar random_scalar(Field f, Rng& rng) {
  if (f.is_prime()) return Scalar(f, rng.uniform_int(0, f.characteristic() - 1));
  return Scalar(f, rng.uniform_int(-10000, 10000));
}

Vector random_vector(Field f, std::size_t size, Rng& rng) {
  Vector v;
  v.reserve(size);
  for (std::size_t k = 0; k < size; ++k) v.push_back(random_scalar(f, rng));
  return v;
}

Camera random_camera(Field f, Rng& rng) {
  for (int tries = 0; tries < 100; ++tries) {
    Matrix A(f, 3, 4);
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t c = 0; c < 4; ++c) A.set(r, c, random_scalar(f, rng));
    if (algebra::rank(A) == 3) return A;
  }
  fail(ErrorCode::Genericity, "could not sample a full-rank camera");
}

bool no_four_coplanar(const std::vector<WorldPoint>& pts) {
  const std::size_t n = pts.size();
  if (n < 4) return true;
  const Field f = pts[0].front().field();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t c = b + 1; c < n; ++c)
        for (std::size_t d = c + 1; d < n; ++d) {
          Matrix M = Matrix::from_rows(f, {pts[a], pts[b], pts[c], pts[d]});
          if (algebra::determinant(M).is_zero()) return false;
        }
  return true;
}

std::vector<WorldPoint> random_arrangement(std::size_t n, std::uint64_t seed, Field f,
                                           int max_tries) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "arrangement needs at least one point");
  Rng rng(seed);
  for (int t = 0; t < max_tries; ++t) {
    std::vector<WorldPoint> pts;
    for (std::size_t j = 0; j < n; ++j) pts.push_back(random_vector(f, 4, rng));
    bool nonzero = true;
    for (const auto& q : pts) nonzero = nonzero && !algebra::is_zero(q);
    if (nonzero && no_four_coplanar(pts)) return pts;
  }
  fail(ErrorCode::Genericity, "no arrangement without four coplanar points in " + f.to_string());
}

namespace {

bool is_coordinate_point(const WorldPoint& q) {
  int nonzero = 0;
  for (const auto& x : q) nonzero += !x.is_zero();
  return nonzero == 1;
}

}  // namespace

bool common_nodal_cubic(const std::vector<WorldPoint>& pts) {
  if (pts.size() != 4) fail(ErrorCode::InvalidArgument, "nodal cubic test takes four points");
  const Field f = pts[0].front().field();
  std::vector<Vector> rows;
  for (const auto& q : pts) {
    if (q.size() != 4) fail(ErrorCode::DimensionMismatch, "world point must have 4 coordinates");
    if (is_coordinate_point(q)) fail(ErrorCode::InvalidArgument, "point equals a coordinate point");
    rows.push_back({q[1] * q[2] * q[3], q[0] * q[2] * q[3], q[0] * q[1] * q[3], q[0] * q[1] * q[2]});
  }
  return algebra::determinant(Matrix::from_rows(f, rows)).is_zero();
}

ImagePoint project(const Camera& A, const WorldPoint& q) {
  ImagePoint p = A * q;
  if (algebra::is_zero(p)) fail(ErrorCode::CenterCoincidence, "point is the camera center");
  return p;
}

Scene synthesize(const std::vector<WorldPoint>& points, const std::vector<Camera>& cameras,
                 std::uint64_t seed) {
  if (points.empty()) fail(ErrorCode::InvalidArgument, "scene needs points");
  Scene s;
  s.field = points.front().front().field();
  s.points = points;
  s.cameras = cameras;
  s.seed = seed;
  for (const auto& A : cameras) {
    std::vector<ImagePoint> row;
    for (const auto& q : points) row.push_back(project(A, q));
    s.observations.push_back(std::move(row));
  }
  return s;
}

Scene random_scene(std::size_t m, std::size_t n, std::uint64_t seed, Field f) {
  auto pts = random_arrangement(n, seed, f);
  Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<Camera> cams;
  for (std::size_t i = 0; i < m; ++i) {
    for (int tries = 0;; ++tries) {
      if (tries == 100) fail(ErrorCode::Genericity, "every sampled camera hits a point");
      Camera A = random_camera(f, rng);
      bool ok = true;
      for (const auto& q : pts) ok = ok && !algebra::is_zero(A * q);
      if (ok) {
        cams.push_back(std::move(A));
        break;
      }
    }
  }
  return synthesize(pts, cams, seed);
}

Vector dehomogenize(const Vector& p) {
  if (p.back().is_zero()) fail(ErrorCode::ChartViolation, "point at infinity in the affine chart");
  const Scalar inv = p.back().inverse();
  Vector r;
  for (const auto& x : p) r.push_back(x * inv);
  return r;
}

Scene add_noise(const Scene& scene, double sigma, std::uint64_t seed) {
  if (scene.field.is_prime()) fail(ErrorCode::FieldMismatch, "noise needs rational coordinates");
  if (!(sigma >= 0.0)) fail(ErrorCode::InvalidArgument, "sigma must be nonnegative");
  Scene s = scene;
  Rng rng(seed);
  for (auto& row : s.observations)
    for (auto& p : row) {
      p = dehomogenize(p);
      for (std::size_t c = 0; c + 1 < p.size(); ++c)
        p[c] += Scalar(s.field, mpq_class(sigma * rng.normal()));
    }
  s.noise = Noise{sigma, seed};
  return s;
}

Scene perturb(const Scene& scene, std::uint64_t seed) {
  Scene s = scene;
  Rng rng(seed);
  const auto i = static_cast<std::size_t>(rng.uniform_int(0, s.m() - 1));
  const auto j = static_cast<std::size_t>(rng.uniform_int(0, s.n() - 1));
  const auto c = static_cast<std::size_t>(rng.uniform_int(0, 2));
  const long long delta = rng.uniform_int(1, 100);
  s.observations[i][j][c] += Scalar(s.field, delta);
  return s;
}

bool is_consistent(const Scene& scene) {
  for (std::size_t i = 0; i < scene.m(); ++i)
    for (std::size_t j = 0; j < scene.n(); ++j)
      if (!algebra::proportional(scene.observations[i][j], scene.cameras[i] * scene.points[j]))
        return false;
  return true;
}

}  // namespace resect::scenes
