#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "specseq/errors.hpp"
#include "specseq/field.hpp"

namespace specseq {

// Dense row-major matrix over an exact field.
template <class K>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n, const FieldSpec& f) {
    Matrix m(n, n);
    const K u = one<K>(f);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = u;
    return m;
  }

  // Column vector from entries.
  static Matrix column(std::vector<K> entries) {
    Matrix m(entries.size(), 1);
    m.data_ = std::move(entries);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  K& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const K& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const K& x) { return x.is_zero(); });
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  Matrix& operator+=(const Matrix& o) {
    same_shape(o, "+");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    same_shape(o, "-");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  Matrix operator-() const {
    Matrix m(rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) m.data_[k] = -data_[k];
    return m;
  }
  friend Matrix operator*(const K& s, Matrix m) {
    for (auto& x : m.data_) x = s * x;
    return m;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_)
      throw usage_error("matrix product " + a.shape() + " * " + b.shape());
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const K& aik = a(i, k);
        if (aik.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          const K& bkj = b(k, j);
          if (!bkj.is_zero()) c(i, j) += aik * bkj;
        }
      }
    return c;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw usage_error("block out of range in " + shape());
    Matrix m(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
    return m;
  }

  void set_block(std::size_t r0, std::size_t c0, const Matrix& m) {
    if (r0 + m.rows_ > rows_ || c0 + m.cols_ > cols_) throw usage_error("set_block out of range in " + shape());
    for (std::size_t i = 0; i < m.rows_; ++i)
      for (std::size_t j = 0; j < m.cols_; ++j) (*this)(r0 + i, c0 + j) = m(i, j);
  }

  Matrix select_rows(const std::vector<std::size_t>& idx) const {
    Matrix m(idx.size(), cols_);
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(idx[i], j);
    return m;
  }

  Matrix select_cols(const std::vector<std::size_t>& idx) const {
    Matrix m(rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < idx.size(); ++j) m(i, j) = (*this)(i, idx[j]);
    return m;
  }

  Matrix col(std::size_t j) const { return block(0, j, rows_, 1); }

  std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

 private:
  void same_shape(const Matrix& o, const char* op) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw usage_error(std::string("matrix ") + op + " shape mismatch " + shape() + " vs " + o.shape());
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<K> data_;
};

template <class K>
Matrix<K> hstack(const Matrix<K>& a, const Matrix<K>& b) {
  if (a.rows() != b.rows()) throw usage_error("hstack row mismatch " + a.shape() + " | " + b.shape());
  Matrix<K> m(a.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(0, a.cols(), b);
  return m;
}

template <class K>
Matrix<K> vstack(const Matrix<K>& a, const Matrix<K>& b) {
  if (a.cols() != b.cols()) throw usage_error("vstack column mismatch " + a.shape() + " / " + b.shape());
  Matrix<K> m(a.rows() + b.rows(), a.cols());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), 0, b);
  return m;
}

template <class K>
Matrix<K> block_diag(const Matrix<K>& a, const Matrix<K>& b) {
  Matrix<K> m(a.rows() + b.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), a.cols(), b);
  return m;
}

// Kronecker product; row (i*b.rows + k), column (j*b.cols + l).
template <class K>
Matrix<K> kron(const Matrix<K>& a, const Matrix<K>& b) {
  Matrix<K> m(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j).is_zero()) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) m(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    }
  return m;
}

template <class K>
struct Echelon {
  Matrix<K> form;
  std::vector<std::size_t> pivots;
};

// Reduced row echelon form by Gauss-Jordan elimination.
template <class K>
Echelon<K> rref(Matrix<K> m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < m.cols() && row < m.rows(); ++c) {
    std::size_t sel = row;
    while (sel < m.rows() && m(sel, c).is_zero()) ++sel;
    if (sel == m.rows()) continue;
    if (sel != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(sel, j), m(row, j));
    const K inv = K(m(row, c)) / m(row, c) / m(row, c);  // 1 / pivot
    for (std::size_t j = c; j < m.cols(); ++j) m(row, j) = m(row, j) * inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, c).is_zero()) continue;
      const K factor = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        if (!m(row, j).is_zero()) m(i, j) -= factor * m(row, j);
    }
    pivots.push_back(c);
    ++row;
  }
  return {std::move(m), std::move(pivots)};
}

template <class K>
std::size_t rank(const Matrix<K>& m) {
  return rref(m).pivots.size();
}

// Canonical solution of m x = b (free variables zero), or nullopt when
// inconsistent. b may hold several right-hand sides as columns.
template <class K>
std::optional<Matrix<K>> solve(const Matrix<K>& m, const Matrix<K>& b) {
  if (m.rows() != b.rows()) throw usage_error("solve: " + m.shape() + " against rhs " + b.shape());
  auto e = rref(hstack(m, b));
  Matrix<K> x(m.cols(), b.cols());
  for (std::size_t k = 0; k < e.pivots.size(); ++k) {
    if (e.pivots[k] >= m.cols()) return std::nullopt;
    for (std::size_t j = 0; j < b.cols(); ++j) x(e.pivots[k], j) = e.form(k, m.cols() + j);
  }
  return x;
}

template <class K>
std::optional<Matrix<K>> inverse(const Matrix<K>& m, const FieldSpec& f) {
  if (m.rows() != m.cols()) throw usage_error("inverse of non-square " + m.shape());
  auto e = rref(hstack(m, Matrix<K>::identity(m.rows(), f)));
  if (e.pivots.size() < m.rows() || (m.rows() > 0 && e.pivots[m.rows() - 1] >= m.cols())) return std::nullopt;
  return e.form.block(0, m.cols(), m.rows(), m.rows());
}

}  // namespace specseq
