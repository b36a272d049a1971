#pragma once

#include <compare>
#include <functional>
#include <map>
#include <set>
#include <string>

#include "specseq/subspace.hpp"

namespace specseq {

struct Bidegree {
  int p = 0;
  int q = 0;
  auto operator<=>(const Bidegree&) const = default;
  std::string str() const { return "(" + std::to_string(p) + "," + std::to_string(q) + ")"; }
};

// Predicate selecting the bidegrees a check should look at.
using Region = std::function<bool(Bidegree)>;

// An r-bigraded complex: spots A^{p,q} of finite dimension and a differential
// of bidegree (-r, 1-r). Spots absent from `dims` are zero; absent delta
// blocks are zero maps.
template <class K>
struct RComplex {
  FieldSpec field;
  int r = 0;
  std::map<Bidegree, std::size_t> dims;
  std::map<Bidegree, Matrix<K>> delta;  // keyed by source bidegree

  Bidegree target(Bidegree s) const { return {s.p - r, s.q + 1 - r}; }
  Bidegree source_of(Bidegree t) const { return {t.p + r, t.q - 1 + r}; }

  std::size_t dim(Bidegree b) const {
    auto it = dims.find(b);
    return it == dims.end() ? 0 : it->second;
  }

  // delta leaving s, as a dim(target) x dim(s) matrix.
  Matrix<K> delta_at(Bidegree s) const {
    auto it = delta.find(s);
    if (it != delta.end()) return it->second;
    return Matrix<K>(dim(target(s)), dim(s));
  }

  std::size_t total_dim() const {
    std::size_t t = 0;
    for (auto& [b, d] : dims) t += d;
    return t;
  }

  void set_dim(Bidegree b, std::size_t d) {
    if (d) dims[b] = d;
    else dims.erase(b);
  }

  void set_delta(Bidegree s, Matrix<K> m) {
    if (m.rows() != dim(target(s)) || m.cols() != dim(s))
      throw usage_error("delta at " + s.str() + " has shape " + m.shape());
    if (m.is_zero()) delta.erase(s);
    else delta[s] = std::move(m);
  }

  // Shape checks and delta^2 = 0; throws invariant_error naming the bidegree.
  void validate() const {
    for (auto& [s, m] : delta)
      if (m.rows() != dim(target(s)) || m.cols() != dim(s))
        throw invariant_error("delta shape mismatch at " + s.str());
    for (auto& [s, d] : dims)
      if (!(delta_at(target(s)) * delta_at(s)).is_zero()) throw invariant_error("delta^2 != 0 at " + s.str());
  }
};

template <class K>
struct RMorphism {
  RComplex<K> source;
  RComplex<K> target;
  std::map<Bidegree, Matrix<K>> blocks;

  Matrix<K> at(Bidegree b) const {
    auto it = blocks.find(b);
    if (it != blocks.end()) return it->second;
    return Matrix<K>(target.dim(b), source.dim(b));
  }

  void set(Bidegree b, Matrix<K> m) {
    if (m.rows() != target.dim(b) || m.cols() != source.dim(b))
      throw usage_error("morphism block at " + b.str() + " has shape " + m.shape());
    if (m.is_zero()) blocks.erase(b);
    else blocks[b] = std::move(m);
  }

  std::set<Bidegree> support() const {
    std::set<Bidegree> s;
    for (auto& [b, d] : source.dims) s.insert(b);
    for (auto& [b, d] : target.dims) s.insert(b);
    return s;
  }

  void validate() const {
    if (source.r != target.r) throw endpoint_error("morphism between complexes of different stage");
    if (!(source.field == target.field)) throw endpoint_error("morphism between different fields");
    for (auto& [b, m] : blocks)
      if (m.rows() != target.dim(b) || m.cols() != source.dim(b))
        throw invariant_error("morphism block shape mismatch at " + b.str());
    for (auto b : support())
      if (!(target.delta_at(b) * at(b) == at(source.target(b)) * source.delta_at(b)))
        throw invariant_error("morphism does not commute with delta at " + b.str());
  }
};

template <class K>
RMorphism<K> identity(const RComplex<K>& a) {
  RMorphism<K> f{a, a, {}};
  for (auto& [b, d] : a.dims) f.set(b, Matrix<K>::identity(d, a.field));
  return f;
}

// Cohomology with, at each bidegree, the subquotient ker(out) / im(in).
template <class K>
struct Cohomology {
  FieldSpec field;
  std::map<Bidegree, Subquotient<K>> spots;

  std::size_t dim(Bidegree b) const {
    auto it = spots.find(b);
    return it == spots.end() ? 0 : it->second.dim();
  }

  std::map<Bidegree, std::size_t> dims() const {
    std::map<Bidegree, std::size_t> out;
    for (auto& [b, s] : spots)
      if (s.dim()) out[b] = s.dim();
    return out;
  }
};

template <class K>
Subquotient<K> cohomology_at(const RComplex<K>& a, Bidegree b) {
  auto z = kernel(a.delta_at(b), a.field);
  auto in = a.delta_at(a.source_of(b));
  return quotient(z, image(in), a.field);
}

template <class K>
Cohomology<K> cohomology(const RComplex<K>& a) {
  Cohomology<K> h{a.field, {}};
  for (auto& [b, d] : a.dims) h.spots.emplace(b, cohomology_at(a, b));
  return h;
}

// Matrix of the induced map on cohomology at b, in the canonical bases.
template <class K>
Matrix<K> induced_cohomology_map(const RMorphism<K>& f, const Cohomology<K>& hs, const Cohomology<K>& ht, Bidegree b) {
  auto s = hs.spots.find(b);
  auto t = ht.spots.find(b);
  std::size_t ds = s == hs.spots.end() ? 0 : s->second.dim();
  std::size_t dt = t == ht.spots.end() ? 0 : t->second.dim();
  if (ds == 0 || dt == 0) return Matrix<K>(dt, ds);
  return t->second.project * f.at(b) * s->second.lift;
}

template <class K>
bool is_acyclic(const RComplex<K>& a, const Region& region = nullptr) {
  for (auto& [b, d] : a.dims)
    if ((!region || region(b)) && cohomology_at(a, b).dim() != 0) return false;
  return true;
}

// Induced map on cohomology is an isomorphism at every bidegree (in region).
template <class K>
bool is_quasi_iso(const RMorphism<K>& f, const Region& region = nullptr) {
  for (auto b : f.support()) {
    if (region && !region(b)) continue;
    auto hs = cohomology_at(f.source, b);
    auto ht = cohomology_at(f.target, b);
    if (hs.dim() != ht.dim()) return false;
    if (hs.dim() == 0) continue;
    if (rank(Matrix<K>(ht.project * f.at(b) * hs.lift)) != hs.dim()) return false;
  }
  return true;
}

// T^{p,q}(A) = A^{p-r, q-r+1}: every spot moves by (r, r-1).
template <class K>
RComplex<K> translation(const RComplex<K>& a) {
  RComplex<K> t{a.field, a.r, {}, {}};
  const Bidegree shift{a.r, a.r - 1};
  for (auto& [b, d] : a.dims) t.set_dim({b.p + shift.p, b.q + shift.q}, d);
  for (auto& [b, m] : a.delta) t.delta[{b.p + shift.p, b.q + shift.q}] = m;
  return t;
}

// C(f) = T(A) + B with D(a, b) = (da, f(a) - db); summand T(A) first.
template <class K>
RComplex<K> cone(const RMorphism<K>& f) {
  const auto& a = f.source;
  const auto& bb = f.target;
  auto ta = translation(a);
  RComplex<K> c{a.field, a.r, {}, {}};
  std::set<Bidegree> spots;
  for (auto& [b, d] : ta.dims) spots.insert(b);
  for (auto& [b, d] : bb.dims) spots.insert(b);
  for (auto b : spots) c.set_dim(b, ta.dim(b) + bb.dim(b));
  for (auto s : spots) {
    auto t = c.target(s);
    if (c.dim(t) == 0) continue;
    Matrix<K> m(c.dim(t), c.dim(s));
    m.set_block(0, 0, ta.delta_at(s));
    // the A-part of spot s is A at s - (r, r-1) = t
    m.set_block(ta.dim(t), 0, f.at(t));
    m.set_block(ta.dim(t), ta.dim(s), -bb.delta_at(s));
    c.set_delta(s, std::move(m));
  }
  return c;
}

}  // namespace specseq
