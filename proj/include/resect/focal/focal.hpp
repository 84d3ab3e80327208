#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "resect/algebra/matrix.hpp"
#include "resect/poly/multipoly.hpp"
#include "resect/scenes/scene.hpp"

namespace resect::focal {

using algebra::Field;
using algebra::Matrix;
using algebra::Scalar;
using algebra::Vector;
using poly::Monomial;
using poly::MultiPoly;
using poly::Ring;
using scenes::Camera;
using scenes::ImagePoint;
using scenes::WorldPoint;

using HyperCamera = Matrix;  // 3x12

/// I_3 (x) q^T; lift(q) * vec(A^T) = A q where vec(A^T) lists the rows of A.
HyperCamera lift(const WorldPoint& q);

/// The 3k x (12+k) matrix whose rows (j, c) are [lift(q_j) row c | p_j[c] in
/// column 12+j]. Its kernel contains (vec(A^T), -lambda) when A q_j = lambda_j p_j.
Matrix focal_matrix(const std::vector<WorldPoint>& qs, const std::vector<ImagePoint>& obs);

/// A maximal minor of a focal matrix: camera (1-based), the points sigma
/// (1-based, increasing) and for each of them the chosen coordinate rows.
struct FocalSpec {
  std::uint32_t camera = 1;
  std::vector<std::uint32_t> sigma;
  std::vector<std::vector<std::uint32_t>> rows;

  std::size_t k() const { return sigma.size(); }
  bool operator==(const FocalSpec&) const = default;
  bool operator<(const FocalSpec& o) const;
};

/// Throws InvalidArgument unless rows are nonempty increasing subsets of
/// {1,2,3} with total size 12 + k and sigma is increasing within [1, n].
void validate(const FocalSpec& spec, std::size_t n);

/// Specs whose rows all have size 2 or 3, for 6 <= k <= min(n, 12) and each
/// camera, in increasing spec order. Specs with a single row factor as an
/// image coordinate times a focal of the remaining points and are omitted.
std::vector<FocalSpec> primitive_specs(std::size_t n, std::size_t m);
std::uint64_t primitive_spec_count(std::size_t n, std::size_t m);

/// The minor named by `spec` expanded in ring (m, n), with rows in their
/// natural order and the p-columns last. The coefficient field is that of qbar.
MultiPoly k_focal(const std::vector<WorldPoint>& qbar, const FocalSpec& spec, const Ring& ring);

/// Value of the minor at observations obs (obs[j] is the image of point j+1
/// in the spec's camera), via one 12x12 determinant.
Scalar evaluate_spec(const std::vector<WorldPoint>& qbar, const std::vector<ImagePoint>& obs,
                     const FocalSpec& spec);

struct FocalEntry {
  FocalSpec spec;
  MultiPoly poly;
};

struct FocalSystem {
  Ring ring;
  Field field;
  std::vector<FocalEntry> entries;
  std::size_t specs = 0;       // specs expanded
  std::size_t duplicates = 0;  // dropped as scalar multiples of earlier ones
  std::size_t zeros = 0;       // specs whose minor vanishes identically
};

struct GeneratorOptions {
  unsigned jobs = 1;
  // Refuse to expand more specs than this (the polynomials get large fast).
  std::uint64_t max_specs = 20000;
};

/// All primitive k-focals for m cameras, deduplicated up to scalar by
/// normalizing on the pinned-lex leading coefficient. Throws Genericity if
/// four points are coplanar and InvalidArgument if n < 6.
FocalSystem generators(const std::vector<WorldPoint>& qbar, std::size_t m,
                       const GeneratorOptions& opts = {});

std::vector<MultiPoly> polynomials(const FocalSystem& sys);

/// Rank test: for every camera the n-point focal matrix has rank < 12 + n.
/// obs[i][j] is the image of point j in camera i.
bool membership(const std::vector<WorldPoint>& qbar,
                const std::vector<std::vector<ImagePoint>>& obs);

/// Every primitive spec of every camera evaluates to zero.
bool evaluation_membership(const std::vector<WorldPoint>& qbar,
                           const std::vector<std::vector<ImagePoint>>& obs, unsigned jobs = 1);

struct Resection {
  Camera camera;
  Vector lambda;  // A q_j = lambda_j p_j
};

/// Camera from the one-dimensional kernel of the focal matrix. Throws
/// InconsistentData for a trivial kernel and DegenerateArrangement for a
/// kernel of dimension two or more.
Resection resect_dlt(const std::vector<WorldPoint>& qbar, const std::vector<ImagePoint>& obs);

struct GenericityReport {
  bool holds = true;
  bool exhaustive = true;
  std::uint64_t checked = 0;
};

/// Every 12x12 minor of the 12 x 3n matrix (B_1^T | ... | B_n^T) is nonzero.
/// Exhaustive when 3n <= 24, otherwise `samples` random column sets.
GenericityReport minor_generic(const std::vector<HyperCamera>& hcams,
                               std::uint64_t samples = 20000, std::uint64_t seed = 0);

/// Every set of at least four hypercameras has row spans summing to F^12.
/// Checking the 4-subsets suffices; exhaustive for n <= 10, sampled above.
GenericityReport rowspan_uniform(const std::vector<HyperCamera>& hcams,
                                 std::uint64_t samples = 20000, std::uint64_t seed = 0);

/// f(H_1 p_1, ..., H_n p_n) for a multilinear f in ring (1, n).
MultiPoly change_coordinates(const MultiPoly& f, const std::vector<Matrix>& H);

struct GinResult {
  Monomial leading;
  std::size_t support = 0;
  MultiPoly poly;
  std::vector<Matrix> changes;
};

/// Lex leading monomial of the 6-focal after a seeded random coordinate
/// change in each image. With identity_change the 6-focal is left as is.
GinResult gin_leading(const std::vector<WorldPoint>& qbar, std::uint64_t seed,
                      bool identity_change = false);

}  // namespace resect::focal
