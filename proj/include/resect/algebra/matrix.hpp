#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "resect/algebra/scalar.hpp"

namespace resect::algebra {

using Vector = std::vector<Scalar>;

Vector make_vector(Field f, std::initializer_list<long long> values);
Vector make_vector(Field f, const std::vector<long long>& values);

// Dense row-major matrix; every entry carries the matrix field.
class Matrix {
 public:
  Matrix() = default;
  Matrix(Field f, std::size_t rows, std::size_t cols);
  Matrix(Field f, std::size_t rows, std::size_t cols,
         const std::vector<long long>& row_major);

  static Matrix identity(Field f, std::size_t n);
  static Matrix from_rows(Field f, const std::vector<Vector>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Field field() const { return field_; }

  const Scalar& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }
  void set(std::size_t r, std::size_t c, const Scalar& v);
  void set(std::size_t r, std::size_t c, long long v);

  Vector row(std::size_t r) const;
  Vector column(std::size_t c) const;
  Matrix transpose() const;
  Matrix submatrix(const std::vector<std::size_t>& rows,
                   const std::vector<std::size_t>& cols) const;
  Matrix scaled(const Scalar& s) const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Vector operator*(const Matrix& a, const Vector& v);
  bool operator==(const Matrix& o) const;

  std::string to_string() const;

 private:
  Field field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

Matrix vstack(const std::vector<Matrix>& blocks);

bool is_zero(const Vector& v);
// True iff u = t*v for some nonzero t (cross-multiplication test, exact).
bool proportional(const Vector& u, const Vector& v);
bool proportional(const Matrix& a, const Matrix& b);
Vector flatten(const Matrix& m);

}  // namespace resect::algebra
