#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "specseq/subspace.hpp"

namespace specseq {

// Entry mask for a matrix unknown: true marks a free entry.
using Mask = std::vector<std::vector<bool>>;

// Linear equations in matrix unknowns X_1..X_m of the form
//   sum_k L_k X_{b_k} R_k = C
// where missing L or R stand for identities. Masked-out entries of an
// unknown are fixed to zero and carry no variable.
template <class K>
class LinearSystem {
 public:
  struct Term {
    std::size_t block;
    std::optional<Matrix<K>> left;
    std::optional<Matrix<K>> right;
  };

  explicit LinearSystem(FieldSpec f) : field_(f) {}

  std::size_t add_block(std::size_t rows, std::size_t cols, const Mask* mask = nullptr) {
    Block b{rows, cols, std::vector<long>(rows * cols, -1)};
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        if (!mask || (*mask)[i][j]) b.var[i * cols + j] = static_cast<long>(nvars_++);
    blocks_.push_back(std::move(b));
    return blocks_.size() - 1;
  }

  std::size_t num_vars() const { return nvars_; }
  std::size_t num_blocks() const { return blocks_.size(); }

  void add_equation(const std::vector<Term>& terms, const Matrix<K>& rhs) {
    const std::size_t m = rhs.rows(), n = rhs.cols();
    std::vector<std::vector<K>> rows(m * n, std::vector<K>(nvars_));
    for (const auto& t : terms) {
      const Block& b = blocks_.at(t.block);
      const std::size_t lr = t.left ? t.left->rows() : b.rows;
      const std::size_t lc = t.left ? t.left->cols() : b.rows;
      const std::size_t rr = t.right ? t.right->rows() : b.cols;
      const std::size_t rc = t.right ? t.right->cols() : b.cols;
      if (lr != m || lc != b.rows || rr != b.cols || rc != n) throw usage_error("LinearSystem: term shape mismatch");
      for (std::size_t i = 0; i < b.rows; ++i)
        for (std::size_t j = 0; j < b.cols; ++j) {
          const long v = b.var[i * b.cols + j];
          if (v < 0) continue;
          for (std::size_t a = 0; a < m; ++a) {
            K la = t.left ? (*t.left)(a, i) : (a == i ? one<K>(field_) : K{});
            if (la.is_zero()) continue;
            for (std::size_t c = 0; c < n; ++c) {
              if (t.right) {
                const K& rb = (*t.right)(j, c);
                if (!rb.is_zero()) rows[a * n + c][v] += la * rb;
              } else if (c == j) {
                rows[a * n + c][v] += la;
              }
            }
          }
        }
    }
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t c = 0; c < n; ++c) {
        eq_.push_back(std::move(rows[a * n + c]));
        rhs_.push_back(rhs(a, c));
      }
  }

  // Canonical solution (free variables zero) split into blocks.
  std::optional<std::vector<Matrix<K>>> solve() const {
    auto [a, b] = assemble();
    auto x = specseq::solve(a, b);
    if (!x) return std::nullopt;
    return unpack(*x, 0);
  }

  // Basis of the homogeneous solution space, each element split into blocks.
  std::vector<std::vector<Matrix<K>>> nullspace() const {
    auto [a, b] = assemble();
    auto ker = kernel(a, field_);
    std::vector<std::vector<Matrix<K>>> out;
    for (std::size_t c = 0; c < ker.dim(); ++c) out.push_back(unpack(ker.basis(), c));
    return out;
  }

  std::size_t nullity() const {
    auto [a, b] = assemble();
    return nvars_ - rank(a);
  }

 private:
  struct Block {
    std::size_t rows, cols;
    std::vector<long> var;
  };

  std::pair<Matrix<K>, Matrix<K>> assemble() const {
    Matrix<K> a(eq_.size(), nvars_), b(eq_.size(), 1);
    for (std::size_t r = 0; r < eq_.size(); ++r) {
      for (std::size_t v = 0; v < eq_[r].size(); ++v) a(r, v) = eq_[r][v];
      b(r, 0) = rhs_[r];
    }
    return {std::move(a), std::move(b)};
  }

  std::vector<Matrix<K>> unpack(const Matrix<K>& x, std::size_t col) const {
    std::vector<Matrix<K>> out;
    for (const auto& b : blocks_) {
      Matrix<K> m(b.rows, b.cols);
      for (std::size_t i = 0; i < b.rows; ++i)
        for (std::size_t j = 0; j < b.cols; ++j) {
          const long v = b.var[i * b.cols + j];
          if (v >= 0) m(i, j) = x(static_cast<std::size_t>(v), col);
        }
      out.push_back(std::move(m));
    }
    return out;
  }

  FieldSpec field_;
  std::size_t nvars_ = 0;
  std::vector<Block> blocks_;
  std::vector<std::vector<K>> eq_;
  std::vector<K> rhs_;
};

}  // namespace specseq
