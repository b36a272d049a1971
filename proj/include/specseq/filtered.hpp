#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "specseq/bigraded.hpp"
#include "specseq/linear_system.hpp"

namespace specseq {

// One degree of a filtered complex. Vectors live in ambient coordinates; the
// columns of `basis` form an adapted basis and column k has filtration weight
// weights[k], so F_p is spanned by the columns of weight <= p. Weights are
// kept non-decreasing.
template <class K>
struct FDegree {
  Matrix<K> basis;
  std::vector<int> weights;

  std::size_t dim() const { return basis.rows(); }
};

template <class K>
struct FilteredComplex {
  FieldSpec field;
  std::map<int, FDegree<K>> degrees;  // absent degrees are zero
  std::map<int, Matrix<K>> d;         // d[n]: A^n -> A^{n+1}, absent means zero

  std::size_t dim(int n) const {
    auto it = degrees.find(n);
    return it == degrees.end() ? 0 : it->second.dim();
  }

  Matrix<K> diff(int n) const {
    auto it = d.find(n);
    if (it != d.end()) return it->second;
    return Matrix<K>(dim(n + 1), dim(n));
  }

  const std::vector<int>& weights(int n) const {
    static const std::vector<int> none;
    auto it = degrees.find(n);
    return it == degrees.end() ? none : it->second.weights;
  }

  Matrix<K> basis(int n) const {
    auto it = degrees.find(n);
    return it == degrees.end() ? Matrix<K>(0, 0) : it->second.basis;
  }

  // F_p A^n.
  Subspace<K> F(int p, int n) const {
    auto it = degrees.find(n);
    if (it == degrees.end()) return Subspace<K>(0);
    std::vector<std::size_t> cols;
    for (std::size_t k = 0; k < it->second.weights.size(); ++k)
      if (it->second.weights[k] <= p) cols.push_back(k);
    return Subspace<K>::span(it->second.basis.select_cols(cols));
  }

  std::optional<std::pair<int, int>> weight_range() const {
    std::optional<std::pair<int, int>> out;
    for (auto& [n, deg] : degrees)
      for (int w : deg.weights) {
        if (!out) out = std::pair{w, w};
        out->first = std::min(out->first, w);
        out->second = std::max(out->second, w);
      }
    return out;
  }

  std::vector<int> support() const {
    std::vector<int> out;
    for (auto& [n, deg] : degrees)
      if (deg.dim()) out.push_back(n);
    return out;
  }

  void set_degree(int n, Matrix<K> basis, std::vector<int> weights) {
    if (basis.rows() != basis.cols() || weights.size() != basis.cols())
      throw usage_error("degree " + std::to_string(n) + ": basis and weights disagree");
    if (basis.rows() == 0) {
      degrees.erase(n);
      return;
    }
    degrees[n] = FDegree<K>{std::move(basis), std::move(weights)};
  }

  void set_diff(int n, Matrix<K> m) {
    if (m.rows() != dim(n + 1) || m.cols() != dim(n))
      throw usage_error("d at degree " + std::to_string(n) + " has shape " + m.shape());
    if (m.is_zero()) d.erase(n);
    else d[n] = std::move(m);
  }

  // Checks every structural invariant, throwing invariant_error with a
  // message naming the first failure.
  void validate() const {
    for (auto& [n, deg] : degrees) {
      const std::string at = " in degree " + std::to_string(n);
      if (deg.basis.rows() != deg.basis.cols() || deg.weights.size() != deg.basis.cols())
        throw invariant_error("basis shape mismatch" + at);
      if (!std::is_sorted(deg.weights.begin(), deg.weights.end()))
        throw invariant_error("weights not non-decreasing" + at);
      if (rank(deg.basis) != deg.dim()) throw invariant_error("adapted basis not invertible" + at);
    }
    for (auto& [n, m] : d)
      if (m.rows() != dim(n + 1) || m.cols() != dim(n))
        throw invariant_error("d shape mismatch in degree " + std::to_string(n));
    for (auto& [n, m] : d)
      if (!(diff(n + 1) * m).is_zero()) throw invariant_error("d∘d != 0 at degree " + std::to_string(n));
    for (auto& [n, m] : d) {
      // in adapted coordinates d may only send weight w to weights <= w
      auto local = *inverse(basis(n + 1), field) * m * basis(n);
      const auto& ws = weights(n);
      const auto& wt = weights(n + 1);
      for (std::size_t i = 0; i < local.rows(); ++i)
        for (std::size_t j = 0; j < local.cols(); ++j)
          if (!local(i, j).is_zero() && wt[i] > ws[j])
            throw invariant_error("d does not preserve the filtration at degree " + std::to_string(n));
    }
  }
};

template <class K>
struct FilteredMorphism {
  FilteredComplex<K> source;
  FilteredComplex<K> target;
  std::map<int, Matrix<K>> blocks;

  Matrix<K> at(int n) const {
    auto it = blocks.find(n);
    if (it != blocks.end()) return it->second;
    return Matrix<K>(target.dim(n), source.dim(n));
  }

  void set(int n, Matrix<K> m) {
    if (m.rows() != target.dim(n) || m.cols() != source.dim(n))
      throw usage_error("morphism block at degree " + std::to_string(n) + " has shape " + m.shape());
    if (m.is_zero()) blocks.erase(n);
    else blocks[n] = std::move(m);
  }

  std::set<int> degrees() const {
    std::set<int> s;
    for (int n : source.support()) s.insert(n);
    for (int n : target.support()) s.insert(n);
    return s;
  }

  void validate() const {
    if (!(source.field == target.field)) throw endpoint_error("morphism between different fields");
    for (auto& [n, m] : blocks)
      if (m.rows() != target.dim(n) || m.cols() != source.dim(n))
        throw invariant_error("morphism block shape mismatch at degree " + std::to_string(n));
    for (int n : degrees())
      if (!(target.diff(n) * at(n) == at(n + 1) * source.diff(n)))
        throw invariant_error("morphism does not commute with d at degree " + std::to_string(n));
    for (auto& [n, m] : blocks) {
      auto local = *inverse(target.basis(n), target.field) * m * source.basis(n);
      const auto& ws = source.weights(n);
      const auto& wt = target.weights(n);
      for (std::size_t i = 0; i < local.rows(); ++i)
        for (std::size_t j = 0; j < local.cols(); ++j)
          if (!local(i, j).is_zero() && wt[i] > ws[j])
            throw invariant_error("morphism does not preserve the filtration at degree " + std::to_string(n));
    }
  }
};

template <class K>
FilteredMorphism<K> identity(const FilteredComplex<K>& a) {
  FilteredMorphism<K> f{a, a, {}};
  for (auto& [n, deg] : a.degrees) f.set(n, Matrix<K>::identity(deg.dim(), a.field));
  return f;
}

template <class K>
FilteredMorphism<K> zero_morphism(const FilteredComplex<K>& a, const FilteredComplex<K>& b) {
  return {a, b, {}};
}

template <class K>
FilteredMorphism<K> compose(const FilteredMorphism<K>& g, const FilteredMorphism<K>& f) {
  FilteredMorphism<K> h{f.source, g.target, {}};
  for (int n : f.source.support())
    if (g.target.dim(n)) h.set(n, g.at(n) * f.at(n));
  return h;
}

// ---------------------------------------------------------------------------
// cycles, boundaries and pages

// Z_r^{p,n+p}(A) = F_p A^n ∩ d^{-1}(F_{p-r} A^{n+1}).
template <class K>
Subspace<K> z_r(const FilteredComplex<K>& a, int r, int p, int n) {
  auto fp = a.F(p, n);
  if (fp.is_zero()) return fp;
  return intersect(fp, preimage(a.diff(n), a.F(p - r, n + 1), a.field), a.field);
}

// B_r^{p,n+p}(A); B_0 = F_{p-1}, B_r = Z_{r-1}^{p-1} + d Z_{r-1}^{p+r-1}(A^{n-1}).
template <class K>
Subspace<K> b_r(const FilteredComplex<K>& a, int r, int p, int n) {
  if (r == 0) return a.F(p - 1, n);
  auto lower = z_r(a, r - 1, p - 1, n);
  auto from_above = image(a.diff(n - 1), z_r(a, r - 1, p + r - 1, n - 1));
  return sum(lower, from_above);
}

// Range of filtration indices p where E_r^{p,*} can be nonzero, shared by
// both ends of a morphism.
template <class K>
std::optional<std::pair<int, int>> joint_weight_range(const FilteredComplex<K>& a, const FilteredComplex<K>& b) {
  auto x = a.weight_range(), y = b.weight_range();
  if (!x) return y;
  if (!y) return x;
  return std::pair{std::min(x->first, y->first), std::max(x->second, y->second)};
}

// E_r as an r-bigraded complex. spaces[(p,q)] realizes Z_r/B_r inside A^n with
// n = q - p; its lift columns represent the canonical classes [a]_r.
template <class K>
struct SpectralPage {
  int r = 0;
  RComplex<K> page;
  std::map<Bidegree, Subquotient<K>> spaces;
};

namespace detail {

template <class K>
std::vector<Bidegree> page_spots(const FilteredComplex<K>& a, std::pair<int, int> prange) {
  std::vector<Bidegree> out;
  for (int n : a.support())
    for (int p = prange.first; p <= prange.second; ++p) out.push_back({p, n + p});
  return out;
}

template <class K>
SpectralPage<K> page_over(const FilteredComplex<K>& a, int r, std::optional<std::pair<int, int>> prange) {
  SpectralPage<K> sp{r, RComplex<K>{a.field, r, {}, {}}, {}};
  if (!prange) return sp;
  for (auto b : page_spots(a, *prange)) {
    const int n = b.q - b.p;
    auto q = quotient(z_r(a, r, b.p, n), b_r(a, r, b.p, n), a.field);
    sp.page.set_dim(b, q.dim());
    sp.spaces.emplace(b, std::move(q));
  }
  for (auto& [s, sq] : sp.spaces) {
    if (sq.dim() == 0) continue;
    auto t = sp.page.target(s);
    auto it = sp.spaces.find(t);
    if (it == sp.spaces.end() || it->second.dim() == 0) continue;
    const int n = s.q - s.p;
    sp.page.set_delta(s, it->second.project * a.diff(n) * sq.lift);
  }
  return sp;
}

}  // namespace detail

template <class K>
SpectralPage<K> page(const FilteredComplex<K>& a, int r) {
  return detail::page_over(a, r, a.weight_range());
}

template <class K>
Matrix<K> page_map_at(const FilteredMorphism<K>& f, const SpectralPage<K>& ea, const SpectralPage<K>& eb, Bidegree b) {
  auto s = ea.spaces.find(b);
  auto t = eb.spaces.find(b);
  const std::size_t ds = s == ea.spaces.end() ? 0 : s->second.dim();
  const std::size_t dt = t == eb.spaces.end() ? 0 : t->second.dim();
  if (!ds || !dt) return Matrix<K>(dt, ds);
  return t->second.project * f.at(b.q - b.p) * s->second.lift;
}

// E_r(f) in the canonical page bases.
template <class K>
RMorphism<K> induced_page_map(const FilteredMorphism<K>& f, int r) {
  auto range = joint_weight_range(f.source, f.target);
  auto ea = detail::page_over(f.source, r, range);
  auto eb = detail::page_over(f.target, r, range);
  RMorphism<K> out{ea.page, eb.page, {}};
  for (auto& [b, d] : ea.page.dims)
    if (eb.page.dim(b)) out.set(b, page_map_at(f, ea, eb, b));
  return out;
}

template <class K>
bool is_bidegreewise_iso(const RMorphism<K>& m) {
  for (auto b : m.support()) {
    if (m.source.dim(b) != m.target.dim(b)) return false;
    if (m.source.dim(b) && rank(m.at(b)) != m.source.dim(b)) return false;
  }
  return true;
}

template <class K>
bool is_bidegreewise_surjective(const RMorphism<K>& m) {
  for (auto& [b, d] : m.target.dims)
    if (rank(m.at(b)) != d) return false;
  return true;
}

// f is an E_r-quasi-isomorphism: E_{r+1}(f) is an isomorphism.
template <class K>
bool is_er_quiso(const FilteredMorphism<K>& f, int r) {
  return is_bidegreewise_iso(induced_page_map(f, r + 1));
}

template <class K>
bool e_surjective(const FilteredMorphism<K>& f, int r) {
  return is_bidegreewise_surjective(induced_page_map(f, r));
}

// Z_r(f) bidegree-wise surjective. Above the joint weight range plus r the
// cycle spaces no longer change, so a finite range of p suffices.
template <class K>
bool z_surjective(const FilteredMorphism<K>& f, int r) {
  auto range = joint_weight_range(f.source, f.target);
  if (!range) return true;
  for (int n : f.target.support())
    for (int p = range->first; p <= range->second + r; ++p) {
      auto zb = z_r(f.target, r, p, n);
      if (zb.is_zero()) continue;
      auto za = z_r(f.source, r, p, n);
      if (image(f.at(n), za).dim() != zb.dim()) return false;
    }
  return true;
}

// The r-bigraded complex (Z_r(A), d) with d restricted to r-cycles. Its support
// is unbounded above in p; spots are built for p up to top + 3r and callers
// compare cohomology only where it is computed from complete data.
template <class K>
struct CycleComplex {
  RComplex<K> complex;
  std::map<Bidegree, Subspace<K>> spaces;
};

namespace detail {

template <class K>
CycleComplex<K> cycles_over(const FilteredComplex<K>& a, int r, std::pair<int, int> prange) {
  CycleComplex<K> c{RComplex<K>{a.field, r, {}, {}}, {}};
  for (int n : a.support())
    for (int p = prange.first; p <= prange.second + 3 * r; ++p) {
      auto z = z_r(a, r, p, n);
      c.complex.set_dim({p, n + p}, z.dim());
      c.spaces.emplace(Bidegree{p, n + p}, std::move(z));
    }
  for (auto& [s, z] : c.spaces) {
    if (z.is_zero()) continue;
    auto t = c.complex.target(s);
    auto it = c.spaces.find(t);
    if (it == c.spaces.end() || it->second.is_zero()) continue;
    c.complex.set_delta(s, it->second.coordinates(a.diff(s.q - s.p) * z.basis()));
  }
  return c;
}

}  // namespace detail

template <class K>
CycleComplex<K> cycle_complex(const FilteredComplex<K>& a, int r) {
  auto range = a.weight_range();
  if (!range) return {RComplex<K>{a.field, r, {}, {}}, {}};
  return detail::cycles_over(a, r, *range);
}

// f is a Z_r-quasi-isomorphism.
template <class K>
bool is_zr_quiso(const FilteredMorphism<K>& f, int r) {
  auto range = joint_weight_range(f.source, f.target);
  if (!range) return true;
  auto ca = detail::cycles_over(f.source, r, *range);
  auto cb = detail::cycles_over(f.target, r, *range);
  RMorphism<K> z{ca.complex, cb.complex, {}};
  for (auto& [b, sa] : ca.spaces) {
    auto it = cb.spaces.find(b);
    if (sa.is_zero() || it == cb.spaces.end() || it->second.is_zero()) continue;
    z.set(b, it->second.coordinates(f.at(b.q - b.p) * sa.basis()));
  }
  const int top = range->second + 2 * r;
  return is_quasi_iso(z, [top](Bidegree b) { return b.p <= top; });
}

// ---------------------------------------------------------------------------
// Hom spaces

// Entries of a map allowed by the filtration: target weight <= source weight + slack.
inline Mask weight_mask(const std::vector<int>& target, const std::vector<int>& source, int slack = 0) {
  Mask m(target.size(), std::vector<bool>(source.size()));
  for (std::size_t i = 0; i < target.size(); ++i)
    for (std::size_t j = 0; j < source.size(); ++j) m[i][j] = target[i] <= source[j] + slack;
  return m;
}

// Unknown filtered maps A^n -> B^n written as f^n = P_B Y^n P_A^{-1} with Y^n
// masked by weights; the system carries the chain-map equations.
template <class K>
struct FilteredHomSystem {
  LinearSystem<K> system;
  std::map<int, std::size_t> block;  // degree -> block id of Y^n
  std::map<int, Matrix<K>> to_ambient_left;   // P_B
  std::map<int, Matrix<K>> to_ambient_right;  // P_A^{-1}

  // The ambient matrix f^n of a solution.
  Matrix<K> ambient(const std::vector<Matrix<K>>& sol, int n) const {
    return to_ambient_left.at(n) * sol[block.at(n)] * to_ambient_right.at(n);
  }
};

template <class K>
FilteredHomSystem<K> hom_system(const FilteredComplex<K>& a, const FilteredComplex<K>& b) {
  FilteredHomSystem<K> h{LinearSystem<K>(a.field), {}, {}, {}};
  std::set<int> degs;
  for (int n : a.support())
    if (b.dim(n)) degs.insert(n);
  for (int n : degs) {
    auto mask = weight_mask(b.weights(n), a.weights(n));
    h.block[n] = h.system.add_block(b.dim(n), a.dim(n), &mask);
    h.to_ambient_left[n] = b.basis(n);
    h.to_ambient_right[n] = *inverse(a.basis(n), a.field);
  }
  // d_B f^n - f^{n+1} d_A = 0 for every n with A^n and B^{n+1} nonzero
  for (int n : a.support()) {
    if (!b.dim(n + 1)) continue;
    std::vector<typename LinearSystem<K>::Term> terms;
    if (h.block.count(n)) terms.push_back({h.block[n], b.diff(n) * b.basis(n), h.to_ambient_right[n]});
    if (h.block.count(n + 1))
      terms.push_back({h.block[n + 1], -b.basis(n + 1), h.to_ambient_right[n + 1] * a.diff(n)});
    if (!terms.empty()) h.system.add_equation(terms, Matrix<K>(b.dim(n + 1), a.dim(n)));
  }
  return h;
}

template <class K>
FilteredMorphism<K> morphism_from_solution(const FilteredHomSystem<K>& h, const std::vector<Matrix<K>>& sol,
                                           const FilteredComplex<K>& a, const FilteredComplex<K>& b) {
  FilteredMorphism<K> f{a, b, {}};
  for (auto& [n, id] : h.block) f.set(n, h.ambient(sol, n));
  return f;
}

// A basis of Hom(A, B) in the category of filtered complexes.
template <class K>
std::vector<FilteredMorphism<K>> hom_basis(const FilteredComplex<K>& a, const FilteredComplex<K>& b) {
  auto h = hom_system(a, b);
  std::vector<FilteredMorphism<K>> out;
  for (auto& v : h.system.nullspace()) out.push_back(morphism_from_solution(h, v, a, b));
  return out;
}

}  // namespace specseq
