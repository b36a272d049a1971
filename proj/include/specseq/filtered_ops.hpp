#pragma once

#include <map>
#include <utility>
#include <vector>

#include "specseq/filtered.hpp"

namespace specseq {

// Adapted basis for an increasing chain of subspaces given as (weight, V)
// pairs sorted by weight and ending at the full space. Each weight contributes
// the echelon complement of its predecessor.
template <class K>
FDegree<K> adapt_flag(const std::vector<std::pair<int, Subspace<K>>>& flag, std::size_t ambient, const FieldSpec& f) {
  FDegree<K> out{Matrix<K>(ambient, 0), {}};
  Subspace<K> prev(ambient);
  for (auto& [p, v] : flag) {
    auto q = quotient(v, prev, f);
    out.basis = hstack(out.basis, q.lift);
    out.weights.insert(out.weights.end(), q.dim(), p);
    prev = v;
  }
  if (out.basis.cols() != ambient) throw invariant_error("filtration flag is not exhaustive");
  return out;
}

// Recomputes every adapted basis from the filtration itself, so two complexes
// with the same underlying data and the same filtration compare equal.
template <class K>
FilteredComplex<K> canonicalize(const FilteredComplex<K>& a) {
  FilteredComplex<K> c{a.field, {}, {}};
  for (auto& [n, deg] : a.degrees) {
    if (!deg.dim()) continue;
    std::vector<int> ws = deg.weights;
    std::sort(ws.begin(), ws.end());
    ws.erase(std::unique(ws.begin(), ws.end()), ws.end());
    std::vector<std::pair<int, Subspace<K>>> flag;
    for (int p : ws) flag.emplace_back(p, a.F(p, n));
    auto adapted = adapt_flag(flag, deg.dim(), a.field);
    c.set_degree(n, std::move(adapted.basis), std::move(adapted.weights));
  }
  for (auto& [n, m] : a.d)
    if (!m.is_zero()) c.set_diff(n, m);
  return c;
}

template <class K>
bool operator==(const FDegree<K>& x, const FDegree<K>& y) {
  return x.basis == y.basis && x.weights == y.weights;
}

template <class K>
bool operator==(const FilteredComplex<K>& x, const FilteredComplex<K>& y) {
  auto cx = canonicalize(x), cy = canonicalize(y);
  return cx.field == cy.field && cx.degrees == cy.degrees && cx.d == cy.d;
}

// S^r: the weight of a vector in degree n drops by r n.
template <class K>
FilteredComplex<K> shift(const FilteredComplex<K>& a, int r) {
  FilteredComplex<K> s = a;
  for (auto& [n, deg] : s.degrees)
    for (int& w : deg.weights) w -= r * n;
  return canonicalize(s);
}

// Dec^r: Dec^r F_p A^n = Z_r^{p-rn, p-rn+n}(A).
template <class K>
FilteredComplex<K> decalage(const FilteredComplex<K>& a, int r) {
  FilteredComplex<K> out{a.field, {}, a.d};
  auto range = a.weight_range();
  if (!range) return out;
  for (int n : a.support()) {
    std::vector<std::pair<int, Subspace<K>>> flag;
    Subspace<K> prev(a.dim(n));
    for (int p = range->first + r * n; p <= range->second + r * n + r; ++p) {
      auto v = z_r(a, r, p - r * n, n);
      if (v.dim() != prev.dim()) flag.emplace_back(p, v);
      prev = v;
    }
    auto adapted = adapt_flag(flag, a.dim(n), a.field);
    out.set_degree(n, std::move(adapted.basis), std::move(adapted.weights));
  }
  return out;
}

// Ambient change of coordinates by invertible g[n] in every degree.
template <class K>
FilteredComplex<K> transport(const FilteredComplex<K>& a, const std::map<int, Matrix<K>>& g) {
  FilteredComplex<K> out{a.field, {}, {}};
  std::map<int, Matrix<K>> inv;
  for (auto& [n, deg] : a.degrees) {
    auto gi = inverse(g.at(n), a.field);
    if (!gi) throw usage_error("transport: coordinate change is not invertible");
    inv[n] = *gi;
    out.set_degree(n, g.at(n) * deg.basis, deg.weights);
  }
  for (auto& [n, m] : a.d) out.set_diff(n, g.at(n + 1) * m * inv.at(n));
  return canonicalize(out);
}

// T_r (k = 1) and its powers: (T_r^k A)^n = A^{n+k} with weights raised by k r.
template <class K>
FilteredComplex<K> translate(const FilteredComplex<K>& a, int r, int k = 1) {
  FilteredComplex<K> t{a.field, {}, {}};
  for (auto& [n, deg] : a.degrees) {
    auto ws = deg.weights;
    for (int& w : ws) w += k * r;
    t.set_degree(n - k, deg.basis, std::move(ws));
  }
  for (auto& [n, m] : a.d) t.set_diff(n - k, m);
  return t;
}

// Direct sum; the summands keep their coordinates, `a` first.
template <class K>
FilteredComplex<K> direct_sum(const FilteredComplex<K>& a, const FilteredComplex<K>& b) {
  FilteredComplex<K> s{a.field, {}, {}};
  std::set<int> degs;
  for (int n : a.support()) degs.insert(n);
  for (int n : b.support()) degs.insert(n);
  for (int n : degs) {
    auto ws = a.weights(n);
    ws.insert(ws.end(), b.weights(n).begin(), b.weights(n).end());
    s.degrees[n] = FDegree<K>{block_diag(a.basis(n), b.basis(n)), std::move(ws)};
  }
  for (int n : degs) s.set_diff(n, block_diag(a.diff(n), b.diff(n)));
  return canonicalize(s);
}

template <class K>
FilteredMorphism<K> inclusion_first(const FilteredComplex<K>& a, const FilteredComplex<K>& sum) {
  FilteredMorphism<K> f{a, sum, {}};
  for (int n : a.support()) {
    Matrix<K> m(sum.dim(n), a.dim(n));
    m.set_block(0, 0, Matrix<K>::identity(a.dim(n), a.field));
    f.set(n, m);
  }
  return f;
}

template <class K>
FilteredMorphism<K> inclusion_second(const FilteredComplex<K>& b, const FilteredComplex<K>& sum) {
  FilteredMorphism<K> f{b, sum, {}};
  for (int n : b.support()) {
    Matrix<K> m(sum.dim(n), b.dim(n));
    m.set_block(sum.dim(n) - b.dim(n), 0, Matrix<K>::identity(b.dim(n), b.field));
    f.set(n, m);
  }
  return f;
}

template <class K>
FilteredMorphism<K> projection_first(const FilteredComplex<K>& sum, const FilteredComplex<K>& a) {
  FilteredMorphism<K> f{sum, a, {}};
  for (int n : a.support()) {
    Matrix<K> m(a.dim(n), sum.dim(n));
    m.set_block(0, 0, Matrix<K>::identity(a.dim(n), a.field));
    f.set(n, m);
  }
  return f;
}

template <class K>
FilteredMorphism<K> projection_second(const FilteredComplex<K>& sum, const FilteredComplex<K>& b) {
  FilteredMorphism<K> f{sum, b, {}};
  for (int n : b.support()) {
    Matrix<K> m(b.dim(n), sum.dim(n));
    m.set_block(0, sum.dim(n) - b.dim(n), Matrix<K>::identity(b.dim(n), b.field));
    f.set(n, m);
  }
  return f;
}

// (f, g): A + B -> C.
template <class K>
FilteredMorphism<K> copair(const FilteredMorphism<K>& f, const FilteredMorphism<K>& g) {
  auto s = direct_sum(f.source, g.source);
  FilteredMorphism<K> h{s, f.target, {}};
  for (int n : s.support())
    if (f.target.dim(n)) h.set(n, hstack(f.at(n), g.at(n)));
  return h;
}

// f + g: A + B -> C + D.
template <class K>
FilteredMorphism<K> sum_map(const FilteredMorphism<K>& f, const FilteredMorphism<K>& g) {
  auto s = direct_sum(f.source, g.source);
  auto t = direct_sum(f.target, g.target);
  FilteredMorphism<K> h{s, t, {}};
  for (int n : s.support())
    if (t.dim(n)) h.set(n, block_diag(f.at(n), g.at(n)));
  return h;
}

// C_r(f)^n = A^{n+1} + B^n, weights (w_A + r, w_B), D(a, b) = (da, f(a) - db).
template <class K>
FilteredComplex<K> r_cone(const FilteredMorphism<K>& f, int r) {
  const auto ta = translate(f.source, r);
  const auto& b = f.target;
  auto c = direct_sum(ta, b);
  for (int n : c.support()) {
    if (!c.dim(n + 1)) continue;
    Matrix<K> m(c.dim(n + 1), c.dim(n));
    m.set_block(0, 0, ta.diff(n));
    m.set_block(ta.dim(n + 1), 0, f.at(n + 1));
    m.set_block(ta.dim(n + 1), ta.dim(n), -b.diff(n));
    c.set_diff(n, m);
  }
  return c;
}

// M_r(A) = T_r^{-1} C_r(1_A): M^n = A^n + A^{n-1}, weights (w, w - r),
// D(a, b) = (da, a - db).
template <class K>
FilteredComplex<K> m_r(const FilteredComplex<K>& a, int r) {
  return translate(r_cone(identity(a), r), r, -1);
}

// pi_1: M_r(A) -> A.
template <class K>
FilteredMorphism<K> m_r_projection(const FilteredComplex<K>& a, int r) {
  return projection_first(m_r(a, r), a);
}

// ---------------------------------------------------------------------------
// r-homotopies

template <class K>
struct FilteredHomotopy {
  int r = 0;
  std::map<int, Matrix<K>> h;  // h[n]: A^n -> B^{n-1}

  Matrix<K> at(int n, std::size_t rows, std::size_t cols) const {
    auto it = h.find(n);
    return it == h.end() ? Matrix<K>(rows, cols) : it->second;
  }
};

// dh + hd = g - f together with h(F_p A^n) ⊆ F_{p+r} B^{n-1}.
template <class K>
bool check_r_homotopy(const FilteredHomotopy<K>& h, const FilteredMorphism<K>& f, const FilteredMorphism<K>& g) {
  const auto& a = f.source;
  const auto& b = f.target;
  std::set<int> degs = f.degrees();
  for (int n : g.degrees()) degs.insert(n);
  for (auto& [n, m] : h.h)
    if (m.rows() != b.dim(n - 1) || m.cols() != a.dim(n)) return false;
  for (int n : degs) {
    if (!a.dim(n) || !b.dim(n)) continue;
    auto hn = h.at(n, b.dim(n - 1), a.dim(n));
    auto hn1 = h.at(n + 1, b.dim(n), a.dim(n + 1));
    if (!(b.diff(n - 1) * hn + hn1 * a.diff(n) == g.at(n) - f.at(n))) return false;
  }
  for (auto& [n, m] : h.h) {
    if (m.rows() == 0 || m.cols() == 0) continue;
    auto local = *inverse(b.basis(n - 1), b.field) * m * a.basis(n);
    const auto& ws = a.weights(n);
    const auto& wt = b.weights(n - 1);
    for (std::size_t i = 0; i < local.rows(); ++i)
      for (std::size_t j = 0; j < local.cols(); ++j)
        if (!local(i, j).is_zero() && wt[i] > ws[j] + h.r) return false;
  }
  return true;
}

// Verifies h and then compares E_{r+1}(f) with E_{r+1}(g) as matrices.
template <class K>
bool page_equality_under_homotopy(const FilteredHomotopy<K>& h, const FilteredMorphism<K>& f,
                                  const FilteredMorphism<K>& g) {
  if (!check_r_homotopy(h, f, g)) return false;
  auto ef = induced_page_map(f, h.r + 1);
  auto eg = induced_page_map(g, h.r + 1);
  for (auto b : ef.support())
    if (!(ef.at(b) == eg.at(b))) return false;
  return true;
}

// The contraction (a, b) -> (b, 0) of M_r(A): an r-homotopy from 0 to 1.
template <class K>
FilteredHomotopy<K> m_r_contraction(const FilteredComplex<K>& a, int r) {
  FilteredHomotopy<K> h{r, {}};
  for (int n : a.support()) {
    // M^{n+1} = A^{n+1} + A^n and M^n = A^n + A^{n-1}; b in A^n moves to the first slot
    Matrix<K> m(a.dim(n) + a.dim(n - 1), a.dim(n + 1) + a.dim(n));
    m.set_block(0, a.dim(n + 1), Matrix<K>::identity(a.dim(n), a.field));
    h.h[n + 1] = m;
  }
  return h;
}

// ---------------------------------------------------------------------------
// cokernels and pushouts

// Coker f with F_p Coker = F_p B / (F_p B ∩ im f), and the projection B -> Coker.
template <class K>
FilteredMorphism<K> cokernel(const FilteredMorphism<K>& f) {
  const auto& b = f.target;
  FilteredComplex<K> c{b.field, {}, {}};
  std::map<int, Subquotient<K>> qs;
  auto range = b.weight_range();
  for (int n : b.support()) {
    auto q = quotient(Subspace<K>::full(b.dim(n), b.field), image(f.at(n)), b.field);
    if (!q.dim()) continue;
    std::vector<std::pair<int, Subspace<K>>> flag;
    Subspace<K> prev(q.dim());
    for (int p = range->first; p <= range->second; ++p) {
      auto v = image(q.project, b.F(p, n));
      if (v.dim() != prev.dim()) flag.emplace_back(p, v);
      prev = v;
    }
    auto adapted = adapt_flag(flag, q.dim(), b.field);
    c.set_degree(n, std::move(adapted.basis), std::move(adapted.weights));
    qs.emplace(n, std::move(q));
  }
  for (auto& [n, q] : qs) {
    auto next = qs.find(n + 1);
    if (next != qs.end()) c.set_diff(n, next->second.project * b.diff(n) * q.lift);
  }
  FilteredMorphism<K> pi{b, c, {}};
  for (auto& [n, q] : qs) pi.set(n, q.project);
  return pi;
}

// Pushout of i: A -> B along u: A -> X, as the cokernel of (i, -u): A -> B + X.
// Returns the two legs B -> P and X -> P.
template <class K>
std::pair<FilteredMorphism<K>, FilteredMorphism<K>> pushout(const FilteredMorphism<K>& i, const FilteredMorphism<K>& u) {
  auto s = direct_sum(i.target, u.target);
  FilteredMorphism<K> m{i.source, s, {}};
  for (int n : i.source.support())
    if (s.dim(n)) m.set(n, vstack(i.at(n), Matrix<K>(-u.at(n))));
  auto pi = cokernel(m);
  return {compose(pi, inclusion_first(i.target, s)), compose(pi, inclusion_second(u.target, s))};
}

// Filtered isomorphism: invertible in every degree with a filtered inverse.
template <class K>
bool is_filtered_iso(const FilteredMorphism<K>& f) {
  for (int n : f.degrees()) {
    if (f.source.dim(n) != f.target.dim(n)) return false;
    auto inv = inverse(f.at(n), f.source.field);
    if (!inv) return false;
    auto local = *inverse(f.source.basis(n), f.source.field) * *inv * f.target.basis(n);
    const auto& ws = f.target.weights(n);
    const auto& wt = f.source.weights(n);
    for (std::size_t i = 0; i < local.rows(); ++i)
      for (std::size_t j = 0; j < local.cols(); ++j)
        if (!local(i, j).is_zero() && wt[i] > ws[j]) return false;
  }
  return true;
}

}  // namespace specseq
