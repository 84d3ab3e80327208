#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "resect/algebra/matrix.hpp"

namespace resect::algebra {

/// Exact rank (fraction-free elimination over Q, Gaussian over F_p).
std::size_t rank(const Matrix& m);

/// Basis of the right kernel. Each vector has its last nonzero entry equal
/// to 1. Empty iff the matrix has full column rank.
std::vector<Vector> kernel_basis(const Matrix& m);

/// Exact determinant. Throws NotSquare.
Scalar determinant(const Matrix& m);

/// Inverse of a square matrix. Throws SingularPivot if singular.
Matrix inverse(const Matrix& m);

struct SchurResult {
  Matrix complement;
  Scalar pivot_det;
  // det(m) = sign * pivot_det * det(complement)
  int sign = 1;
};

/// Schur complement of the pivot block m[pivot_rows, pivot_cols].
/// Throws SingularPivot if that block is singular.
SchurResult schur_reduce(const Matrix& m, const std::vector<std::size_t>& pivot_rows,
                         const std::vector<std::size_t>& pivot_cols);

/// Schur complement of the leading k x k block.
Matrix schur_reduce(const Matrix& m, std::size_t k);

namespace detail {

// Raw kernels shared with hot loops elsewhere. Inputs are consumed.
std::uint32_t det_mod_p(std::vector<std::uint32_t>& a, std::size_t n, std::uint32_t p);
std::size_t rank_mod_p(std::vector<std::uint32_t>& a, std::size_t rows, std::size_t cols,
                       std::uint32_t p);
mpz_class det_bareiss(std::vector<mpz_class>& a, std::size_t n);
std::size_t rank_bareiss(std::vector<mpz_class>& a, std::size_t rows, std::size_t cols);

}  // namespace detail

}  // namespace resect::algebra
