#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "specseq/matrix.hpp"

namespace specseq {

// A subspace is kept in reduced column echelon form: the transpose of its
// basis matrix is in reduced row echelon form. Two subspaces are equal exactly
// when their stored bases are equal.
template <class K>
class Subspace {
 public:
  Subspace() = default;

  // Zero subspace of K^n.
  explicit Subspace(std::size_t ambient) : basis_(ambient, 0) {}

  static Subspace span(const Matrix<K>& columns) {
    auto e = rref(columns.transpose());
    Subspace s;
    const std::size_t k = e.pivots.size();
    s.basis_ = e.form.block(0, 0, k, columns.rows()).transpose();
    s.pivots_ = std::move(e.pivots);
    return s;
  }

  static Subspace full(std::size_t n, const FieldSpec& f) { return span(Matrix<K>::identity(n, f)); }

  std::size_t ambient() const { return basis_.rows(); }
  std::size_t dim() const { return basis_.cols(); }
  const Matrix<K>& basis() const { return basis_; }
  // Row index of the leading entry of each basis column.
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  bool is_zero() const { return dim() == 0; }
  bool is_full() const { return dim() == ambient(); }

  // Coordinates in this basis of vectors known to lie in the subspace.
  Matrix<K> coordinates(const Matrix<K>& vectors) const {
    if (vectors.rows() != ambient()) throw usage_error("coordinates: ambient mismatch");
    return vectors.select_rows(pivots_);
  }

  friend bool operator==(const Subspace& a, const Subspace& b) { return a.basis_ == b.basis_; }

 private:
  Matrix<K> basis_;
  std::vector<std::size_t> pivots_;
};

template <class K>
Subspace<K> kernel(const Matrix<K>& m, const FieldSpec& f) {
  auto e = rref(m);
  const std::size_t n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto c : e.pivots) is_pivot[c] = true;
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < n; ++c)
    if (!is_pivot[c]) free.push_back(c);
  Matrix<K> b(n, free.size());
  for (std::size_t j = 0; j < free.size(); ++j) {
    b(free[j], j) = one<K>(f);
    for (std::size_t k = 0; k < e.pivots.size(); ++k) b(e.pivots[k], j) = -e.form(k, free[j]);
  }
  return Subspace<K>::span(b);
}

template <class K>
Subspace<K> image(const Matrix<K>& m) {
  return Subspace<K>::span(m);
}

// Image of a subspace under a linear map.
template <class K>
Subspace<K> image(const Matrix<K>& m, const Subspace<K>& u) {
  if (m.cols() != u.ambient()) throw usage_error("image: map " + m.shape() + " on subspace of K^" + std::to_string(u.ambient()));
  return Subspace<K>::span(m * u.basis());
}

// Rows spanning the linear forms vanishing on u (full row rank).
template <class K>
Matrix<K> annihilator(const Subspace<K>& u, const FieldSpec& f) {
  return kernel(u.basis().transpose(), f).basis().transpose();
}

template <class K>
Subspace<K> preimage(const Matrix<K>& m, const Subspace<K>& u, const FieldSpec& f) {
  if (m.rows() != u.ambient())
    throw usage_error("preimage: map " + m.shape() + " into subspace of K^" + std::to_string(u.ambient()));
  return kernel(annihilator(u, f) * m, f);
}

template <class K>
Subspace<K> intersect(const Subspace<K>& u, const Subspace<K>& v, const FieldSpec& f) {
  if (u.ambient() != v.ambient()) throw usage_error("intersect: ambient mismatch");
  return kernel(vstack(annihilator(u, f), annihilator(v, f)), f);
}

template <class K>
Subspace<K> sum(const Subspace<K>& u, const Subspace<K>& v) {
  if (u.ambient() != v.ambient()) throw usage_error("sum: ambient mismatch");
  return Subspace<K>::span(hstack(u.basis(), v.basis()));
}

// True when v is a subspace of u.
template <class K>
bool contains(const Subspace<K>& u, const Subspace<K>& v, const FieldSpec& f) {
  if (u.ambient() != v.ambient()) throw usage_error("contains: ambient mismatch");
  return (annihilator(u, f) * v.basis()).is_zero();
}

// True when every column of vectors lies in u.
template <class K>
bool contains_vectors(const Subspace<K>& u, const Matrix<K>& vectors, const FieldSpec& f) {
  if (u.ambient() != vectors.rows()) throw usage_error("contains: ambient mismatch");
  return (annihilator(u, f) * vectors).is_zero();
}

// U/W realized on the echelon complement of W inside U.
template <class K>
struct Subquotient {
  Subspace<K> top;
  Subspace<K> bottom;
  // dim × ambient; kills bottom, identity on the complement coordinates.
  Matrix<K> project;
  // ambient × dim; columns are the complement basis.
  Matrix<K> lift;

  std::size_t dim() const { return lift.cols(); }
  std::size_t ambient() const { return top.ambient(); }
};

template <class K>
Subquotient<K> quotient(const Subspace<K>& u, const Subspace<K>& w, const FieldSpec& f) {
  if (!contains(u, w, f)) throw usage_error("quotient: bottom is not contained in top");
  const std::size_t n = u.ambient();
  // reduce against w's pivot rows, leaving vectors supported off those rows
  Matrix<K> reduce = Matrix<K>::identity(n, f) - w.basis() * Matrix<K>::identity(n, f).select_rows(w.pivots());
  auto c = Subspace<K>::span(reduce * u.basis());
  Matrix<K> proj = Matrix<K>::identity(n, f).select_rows(c.pivots()) * reduce;
  return {u, w, std::move(proj), c.basis()};
}

}  // namespace specseq
