#include "muord/linalg.hpp"

#include <sstream>
#include <stdexcept>

namespace muord {

Matrix::Matrix(const Field& field, std::size_t rows, std::size_t cols)
    : field_(&field), rows_(rows), cols_(cols), data_(rows * cols, FieldElem(field)) {}

Matrix Matrix::identity(const Field& field, std::size_t n) {
  Matrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = FieldElem(field, 1);
  return m;
}

Matrix Matrix::from_rows(const Field& field, std::size_t cols, const std::vector<Vec>& rows) {
  Matrix m(field, rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw std::invalid_argument("Matrix::from_rows: ragged rows");
    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

Vec Matrix::row(std::size_t i) const {
  return Vec(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
             data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

Vec Matrix::col(std::size_t j) const {
  Vec out;
  out.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out.push_back(at(i, j));
  return out;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("Matrix: dimension mismatch in product");
  Matrix out(*field_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const FieldElem& a = at(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) out.at(i, j) += a * o.at(k, j);
    }
  }
  return out;
}

Matrix Matrix::operator+(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("Matrix: dimension mismatch in sum");
  Matrix out = *this;
  for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] += o.data_[k];
  return out;
}

Matrix Matrix::operator-(const Matrix& o) const { return *this + (-o); }

Matrix Matrix::operator-() const {
  Matrix out = *this;
  for (auto& x : out.data_) x = -x;
  return out;
}

Vec Matrix::operator*(const Vec& v) const {
  if (v.size() != cols_) throw std::invalid_argument("Matrix: dimension mismatch in apply");
  Vec out(rows_, FieldElem(*field_));
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out[i] += at(i, j) * v[j];
  }
  return out;
}

Matrix Matrix::transpose() const {
  Matrix out(*field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
  }
  return out;
}

Matrix Matrix::frobenius(i64 k) const {
  Matrix out = *this;
  if (pos_mod(k, field_->s()) == 0) return out;
  for (auto& x : out.data_) x = muord::frobenius(x, k);
  return out;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw std::out_of_range("Matrix::block");
  Matrix out(*field_, nr, nc);
  for (std::size_t i = 0; i < nr; ++i) {
    for (std::size_t j = 0; j < nc; ++j) out.at(i, j) = at(r0 + i, c0 + j);
  }
  return out;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
  if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw std::out_of_range("Matrix::set_block");
  for (std::size_t i = 0; i < b.rows_; ++i) {
    for (std::size_t j = 0; j < b.cols_; ++j) at(r0 + i, c0 + j) = b.at(i, j);
  }
}

Matrix Matrix::stacked(const Matrix& o) const {
  if (cols_ != o.cols_) throw std::invalid_argument("Matrix::stacked: column mismatch");
  Matrix out(*field_, rows_ + o.rows_, cols_);
  out.set_block(0, 0, *this);
  out.set_block(rows_, 0, o);
  return out;
}

bool Matrix::is_zero() const {
  for (const auto& x : data_) {
    if (!x.is_zero()) return false;
  }
  return true;
}

bool Matrix::operator==(const Matrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < rows_; ++i) {
    os << "[";
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << at(i, j).to_string();
    os << "]\n";
  }
  return os.str();
}

Matrix rref(const Matrix& m, std::vector<std::size_t>* pivots) {
  Matrix a = m;
  std::vector<std::size_t> piv;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t sel = r;
    while (sel < a.rows() && a.at(sel, c).is_zero()) ++sel;
    if (sel == a.rows()) continue;
    if (sel != r) {
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a.at(sel, j), a.at(r, j));
    }
    const FieldElem inv = a.at(r, c).inverse();
    for (std::size_t j = c; j < a.cols(); ++j) a.at(r, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || a.at(i, c).is_zero()) continue;
      const FieldElem factor = a.at(i, c);
      for (std::size_t j = c; j < a.cols(); ++j) a.at(i, j) -= factor * a.at(r, j);
    }
    piv.push_back(c);
    ++r;
  }
  if (pivots) *pivots = piv;
  return a;
}

std::size_t rank(const Matrix& m) {
  std::vector<std::size_t> piv;
  rref(m, &piv);
  return piv.size();
}

Matrix kernel_basis(const Matrix& m) {
  std::vector<std::size_t> piv;
  const Matrix a = rref(m, &piv);
  const Field& f = m.field();
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : piv) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vec v(m.cols(), FieldElem(f));
    v[free] = FieldElem(f, 1);
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -a.at(r, free);
    basis.push_back(std::move(v));
  }
  return row_space(Matrix::from_rows(f, m.cols(), basis));
}

Matrix row_space(const Matrix& spanning_rows) {
  std::vector<std::size_t> piv;
  const Matrix a = rref(spanning_rows, &piv);
  return a.block(0, 0, piv.size(), a.cols());
}

Matrix column_space(const Matrix& m) { return row_space(m.transpose()); }

Matrix subspace_sum(const Matrix& a, const Matrix& b) { return row_space(a.stacked(b)); }

Matrix subspace_intersection(const Matrix& a, const Matrix& b) {
  // x = sum c_i a_i = sum d_j b_j  <=>  (c, -d) in ker [A^T | B^T].
  const Field& f = a.field();
  const std::size_t n = a.cols();
  Matrix joined(f, n, a.rows() + b.rows());
  joined.set_block(0, 0, a.transpose());
  joined.set_block(0, a.rows(), b.transpose());
  const Matrix ker = kernel_basis(joined);
  Matrix coeffs = ker.block(0, 0, ker.rows(), a.rows());
  return row_space(coeffs * a);
}

bool subspace_contains(const Matrix& big, const Matrix& small) {
  return rank(big.stacked(small)) == rank(big);
}

Matrix full_space(const Field& field, std::size_t n) { return Matrix::identity(field, n); }

Matrix zero_space(const Field& field, std::size_t n) { return Matrix(field, 0, n); }

Vec SemilinearMap::apply(const Vec& v) const { return matrix * muord::frobenius(v, twist); }

SemilinearMap compose(const SemilinearMap& a, const SemilinearMap& b) {
  return {a.matrix * b.matrix.frobenius(a.twist), a.twist + b.twist};
}

SemilinearMap add(const SemilinearMap& a, const SemilinearMap& b) {
  if (a.twist != b.twist) throw std::invalid_argument("SemilinearMap: adding maps with different twists");
  return {a.matrix + b.matrix, a.twist};
}

Matrix image_of_subspace(const SemilinearMap& a, const Matrix& basis) {
  if (basis.rows() == 0) return zero_space(a.matrix.field(), a.n_out());
  const Matrix twisted = basis.frobenius(a.twist);
  return row_space((a.matrix * twisted.transpose()).transpose());
}

Matrix preimage_of_subspace(const SemilinearMap& a, const Matrix& w) {
  const Field& f = a.matrix.field();
  // Linear preimage U = {u : M u in W}; then y = sigma^{-t}(u).
  Matrix joined(f, a.n_out(), a.n_in() + w.rows());
  joined.set_block(0, 0, a.matrix);
  if (w.rows() > 0) joined.set_block(0, a.n_in(), -w.transpose());
  const Matrix ker = kernel_basis(joined);
  const Matrix u = row_space(ker.block(0, 0, ker.rows(), a.n_in()));
  return row_space(u.frobenius(-a.twist));
}

Vec frobenius(const Vec& v, i64 k) {
  Vec out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(frobenius(x, k));
  return out;
}

}  // namespace muord
