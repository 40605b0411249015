// Dense matrices over F_{p^s}, subspaces, and Frobenius-semilinear maps.
#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "muord/field.hpp"

namespace muord {

using Vec = std::vector<FieldElem>;

class Matrix {
 public:
  Matrix() = default;
  Matrix(const Field& field, std::size_t rows, std::size_t cols);
  static Matrix identity(const Field& field, std::size_t n);
  static Matrix from_rows(const Field& field, std::size_t cols, const std::vector<Vec>& rows);

  const Field& field() const { return *field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  FieldElem& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const FieldElem& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  Vec row(std::size_t i) const;
  Vec col(std::size_t j) const;

  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator-() const;
  Vec operator*(const Vec& v) const;
  Matrix transpose() const;
  // Entrywise x -> x^{p^k}.
  Matrix frobenius(i64 k) const;
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const Matrix& b);
  // Appends rows of o below this matrix; column counts must agree.
  Matrix stacked(const Matrix& o) const;

  bool is_zero() const;
  bool operator==(const Matrix& o) const;
  bool operator!=(const Matrix& o) const { return !(*this == o); }
  std::string to_string() const;

 private:
  const Field* field_ = nullptr;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<FieldElem> data_;
};

// Reduced row echelon form; pivot column indices optionally returned.
Matrix rref(const Matrix& m, std::vector<std::size_t>* pivots = nullptr);
std::size_t rank(const Matrix& m);
// Basis of {v : M v = 0} as rows, in canonical (reduced echelon) form.
Matrix kernel_basis(const Matrix& m);

// A subspace of F^n is a matrix whose rows are a basis in reduced echelon form.
Matrix row_space(const Matrix& spanning_rows);
Matrix column_space(const Matrix& m);
Matrix subspace_sum(const Matrix& a, const Matrix& b);
Matrix subspace_intersection(const Matrix& a, const Matrix& b);
bool subspace_contains(const Matrix& big, const Matrix& small);
Matrix full_space(const Field& field, std::size_t n);
Matrix zero_space(const Field& field, std::size_t n);

// v -> matrix * sigma^twist(v), sigma the coordinatewise p-power.
struct SemilinearMap {
  Matrix matrix;
  i64 twist = 0;

  std::size_t n_out() const { return matrix.rows(); }
  std::size_t n_in() const { return matrix.cols(); }
  Vec apply(const Vec& v) const;
};

SemilinearMap compose(const SemilinearMap& a, const SemilinearMap& b);
// Both maps must share their twist.
SemilinearMap add(const SemilinearMap& a, const SemilinearMap& b);
// span(M * sigma^t(basis rows)), returned as a subspace.
Matrix image_of_subspace(const SemilinearMap& a, const Matrix& basis);
// {y : A y in W}, returned as a subspace of the source.
Matrix preimage_of_subspace(const SemilinearMap& a, const Matrix& w);

Vec frobenius(const Vec& v, i64 k);

}  // namespace muord
