#pragma once

#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "specseq/filtered.hpp"

namespace specseq {

// A bicomplex with commuting differentials d0 of bidegree (0,1) and d1 of
// bidegree (-1,0). Absent spots are zero; absent blocks are zero maps.
template <class K>
struct Bicomplex {
  FieldSpec field;
  std::map<Bidegree, std::size_t> dims;
  std::map<Bidegree, Matrix<K>> d0;  // keyed by source
  std::map<Bidegree, Matrix<K>> d1;

  static Bidegree up(Bidegree b) { return {b.p, b.q + 1}; }
  static Bidegree left(Bidegree b) { return {b.p - 1, b.q}; }

  std::size_t dim(Bidegree b) const {
    auto it = dims.find(b);
    return it == dims.end() ? 0 : it->second;
  }

  Matrix<K> d0_at(Bidegree b) const {
    auto it = d0.find(b);
    return it != d0.end() ? it->second : Matrix<K>(dim(up(b)), dim(b));
  }

  Matrix<K> d1_at(Bidegree b) const {
    auto it = d1.find(b);
    return it != d1.end() ? it->second : Matrix<K>(dim(left(b)), dim(b));
  }

  std::vector<Bidegree> support() const {
    std::vector<Bidegree> out;
    for (auto& [b, n] : dims)
      if (n) out.push_back(b);
    return out;
  }

  std::size_t total_dim() const {
    std::size_t t = 0;
    for (auto& [b, n] : dims) t += n;
    return t;
  }

  void set_dim(Bidegree b, std::size_t n) {
    if (n) dims[b] = n;
    else dims.erase(b);
  }

  void set_d0(Bidegree b, Matrix<K> m) {
    if (m.rows() != dim(up(b)) || m.cols() != dim(b)) throw usage_error("d0 at " + b.str() + " has shape " + m.shape());
    if (m.is_zero()) d0.erase(b);
    else d0[b] = std::move(m);
  }

  void set_d1(Bidegree b, Matrix<K> m) {
    if (m.rows() != dim(left(b)) || m.cols() != dim(b)) throw usage_error("d1 at " + b.str() + " has shape " + m.shape());
    if (m.is_zero()) d1.erase(b);
    else d1[b] = std::move(m);
  }

  void validate() const {
    for (auto& [b, m] : d0)
      if (m.rows() != dim(up(b)) || m.cols() != dim(b)) throw invariant_error("d0 shape mismatch at " + b.str());
    for (auto& [b, m] : d1)
      if (m.rows() != dim(left(b)) || m.cols() != dim(b)) throw invariant_error("d1 shape mismatch at " + b.str());
    for (auto b : support()) {
      if (!(d0_at(up(b)) * d0_at(b)).is_zero()) throw invariant_error("d0^2 != 0 at " + b.str());
      if (!(d1_at(left(b)) * d1_at(b)).is_zero()) throw invariant_error("d1^2 != 0 at " + b.str());
      if (!(d0_at(left(b)) * d1_at(b) == d1_at(up(b)) * d0_at(b))) throw invariant_error("d0 d1 != d1 d0 at " + b.str());
    }
  }
};

template <class K>
bool operator==(const Bicomplex<K>& x, const Bicomplex<K>& y) {
  return x.field == y.field && x.dims == y.dims && x.d0 == y.d0 && x.d1 == y.d1;
}

template <class K>
struct BicomplexMorphism {
  Bicomplex<K> source;
  Bicomplex<K> target;
  std::map<Bidegree, Matrix<K>> blocks;

  Matrix<K> at(Bidegree b) const {
    auto it = blocks.find(b);
    return it != blocks.end() ? it->second : Matrix<K>(target.dim(b), source.dim(b));
  }

  void set(Bidegree b, Matrix<K> m) {
    if (m.rows() != target.dim(b) || m.cols() != source.dim(b))
      throw usage_error("morphism block at " + b.str() + " has shape " + m.shape());
    if (m.is_zero()) blocks.erase(b);
    else blocks[b] = std::move(m);
  }

  std::set<Bidegree> support() const {
    std::set<Bidegree> s;
    for (auto b : source.support()) s.insert(b);
    for (auto b : target.support()) s.insert(b);
    return s;
  }

  bool commutes() const {
    for (auto b : source.support()) {
      using B = Bicomplex<K>;
      if (!(target.d0_at(b) * at(b) == at(B::up(b)) * source.d0_at(b))) return false;
      if (!(target.d1_at(b) * at(b) == at(B::left(b)) * source.d1_at(b))) return false;
    }
    return true;
  }

  void validate() const {
    if (!(source.field == target.field)) throw endpoint_error("morphism between different fields");
    for (auto& [b, m] : blocks)
      if (m.rows() != target.dim(b) || m.cols() != source.dim(b))
        throw invariant_error("morphism block shape mismatch at " + b.str());
    if (!commutes()) throw invariant_error("morphism does not commute with d0 and d1");
  }
};

template <class K>
BicomplexMorphism<K> identity(const Bicomplex<K>& a) {
  BicomplexMorphism<K> f{a, a, {}};
  for (auto b : a.support()) f.set(b, Matrix<K>::identity(a.dim(b), a.field));
  return f;
}

template <class K>
BicomplexMorphism<K> zero_morphism(const Bicomplex<K>& a, const Bicomplex<K>& b) {
  return {a, b, {}};
}

template <class K>
BicomplexMorphism<K> compose(const BicomplexMorphism<K>& g, const BicomplexMorphism<K>& f) {
  BicomplexMorphism<K> h{f.source, g.target, {}};
  for (auto b : f.source.support())
    if (g.target.dim(b)) h.set(b, g.at(b) * f.at(b));
  return h;
}

template <class K>
bool operator==(const BicomplexMorphism<K>& x, const BicomplexMorphism<K>& y) {
  return x.source == y.source && x.target == y.target && x.blocks == y.blocks;
}

template <class K>
bool is_iso(const BicomplexMorphism<K>& f) {
  for (auto b : f.support())
    if (f.source.dim(b) != f.target.dim(b) || rank(f.at(b)) != f.source.dim(b)) return false;
  return true;
}

template <class K>
bool is_surjective(const BicomplexMorphism<K>& f) {
  for (auto b : f.target.support())
    if (rank(f.at(b)) != f.target.dim(b)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// direct sums and coordinate changes

// Direct sum with the summands of `a` first at every spot.
template <class K>
Bicomplex<K> direct_sum(const Bicomplex<K>& a, const Bicomplex<K>& b) {
  Bicomplex<K> s{a.field, {}, {}, {}};
  std::set<Bidegree> spots;
  for (auto x : a.support()) spots.insert(x);
  for (auto x : b.support()) spots.insert(x);
  for (auto x : spots) s.set_dim(x, a.dim(x) + b.dim(x));
  for (auto x : spots) {
    s.set_d0(x, block_diag(a.d0_at(x), b.d0_at(x)));
    s.set_d1(x, block_diag(a.d1_at(x), b.d1_at(x)));
  }
  return s;
}

template <class K>
BicomplexMorphism<K> inclusion_first(const Bicomplex<K>& a, const Bicomplex<K>& sum) {
  BicomplexMorphism<K> f{a, sum, {}};
  for (auto x : a.support()) {
    Matrix<K> m(sum.dim(x), a.dim(x));
    m.set_block(0, 0, Matrix<K>::identity(a.dim(x), a.field));
    f.set(x, m);
  }
  return f;
}

template <class K>
BicomplexMorphism<K> inclusion_second(const Bicomplex<K>& b, const Bicomplex<K>& sum) {
  BicomplexMorphism<K> f{b, sum, {}};
  for (auto x : b.support()) {
    Matrix<K> m(sum.dim(x), b.dim(x));
    m.set_block(sum.dim(x) - b.dim(x), 0, Matrix<K>::identity(b.dim(x), b.field));
    f.set(x, m);
  }
  return f;
}

template <class K>
BicomplexMorphism<K> projection_first(const Bicomplex<K>& sum, const Bicomplex<K>& a) {
  BicomplexMorphism<K> f{sum, a, {}};
  for (auto x : a.support()) {
    Matrix<K> m(a.dim(x), sum.dim(x));
    m.set_block(0, 0, Matrix<K>::identity(a.dim(x), a.field));
    f.set(x, m);
  }
  return f;
}

template <class K>
BicomplexMorphism<K> projection_second(const Bicomplex<K>& sum, const Bicomplex<K>& b) {
  BicomplexMorphism<K> f{sum, b, {}};
  for (auto x : b.support()) {
    Matrix<K> m(b.dim(x), sum.dim(x));
    m.set_block(0, sum.dim(x) - b.dim(x), Matrix<K>::identity(b.dim(x), b.field));
    f.set(x, m);
  }
  return f;
}

// (f, g): A + B -> C.
template <class K>
BicomplexMorphism<K> copair(const BicomplexMorphism<K>& f, const BicomplexMorphism<K>& g) {
  auto s = direct_sum(f.source, g.source);
  BicomplexMorphism<K> h{s, f.target, {}};
  for (auto x : s.support())
    if (f.target.dim(x)) h.set(x, hstack(f.at(x), g.at(x)));
  return h;
}

// (f, g)^T: A -> B + C.
template <class K>
BicomplexMorphism<K> pair_map(const BicomplexMorphism<K>& f, const BicomplexMorphism<K>& g) {
  auto t = direct_sum(f.target, g.target);
  BicomplexMorphism<K> h{f.source, t, {}};
  for (auto x : f.source.support())
    if (t.dim(x)) h.set(x, vstack(f.at(x), g.at(x)));
  return h;
}

// f + g: A + B -> C + D.
template <class K>
BicomplexMorphism<K> sum_map(const BicomplexMorphism<K>& f, const BicomplexMorphism<K>& g) {
  auto s = direct_sum(f.source, g.source);
  auto t = direct_sum(f.target, g.target);
  BicomplexMorphism<K> h{s, t, {}};
  for (auto x : s.support())
    if (t.dim(x)) h.set(x, block_diag(f.at(x), g.at(x)));
  return h;
}

// The copy of A with coordinates changed by invertible g[b] at every spot,
// together with the isomorphism A -> copy.
template <class K>
BicomplexMorphism<K> transport(const Bicomplex<K>& a, const std::map<Bidegree, Matrix<K>>& g) {
  Bicomplex<K> c{a.field, a.dims, {}, {}};
  std::map<Bidegree, Matrix<K>> inv;
  for (auto x : a.support()) {
    auto gi = inverse(g.at(x), a.field);
    if (!gi) throw usage_error("transport: coordinate change is not invertible");
    inv[x] = *gi;
  }
  for (auto& [x, m] : a.d0) c.set_d0(x, g.at(Bicomplex<K>::up(x)) * m * inv.at(x));
  for (auto& [x, m] : a.d1) c.set_d1(x, g.at(Bicomplex<K>::left(x)) * m * inv.at(x));
  BicomplexMorphism<K> iso{a, c, {}};
  for (auto x : a.support()) iso.set(x, g.at(x));
  return iso;
}

// ---------------------------------------------------------------------------
// totalization

// Positions of the spots A^{p,n+p} inside Tot(A)^n, ordered by p.
template <class K>
struct TotLayout {
  std::map<int, std::vector<std::pair<int, std::size_t>>> columns;  // n -> (p, offset)
  std::map<int, std::size_t> dims;

  std::size_t offset(int n, int p) const {
    for (auto& [c, off] : columns.at(n))
      if (c == p) return off;
    throw usage_error("tot layout: no column " + std::to_string(p) + " in degree " + std::to_string(n));
  }
};

template <class K>
TotLayout<K> tot_layout(const Bicomplex<K>& a) {
  TotLayout<K> t;
  for (auto b : a.support()) {
    const int n = b.q - b.p;
    auto& cols = t.columns[n];
    cols.emplace_back(b.p, 0);
  }
  for (auto& [n, cols] : t.columns) {
    std::sort(cols.begin(), cols.end());
    std::size_t off = 0;
    for (auto& [p, o] : cols) {
      o = off;
      off += a.dim({p, n + p});
    }
    t.dims[n] = off;
  }
  return t;
}

// Tot(A) with the column filtration and d(a)_j = d0(a_j) + (-1)^n d1(a_{j+1}).
template <class K>
FilteredComplex<K> tot(const Bicomplex<K>& a) {
  auto lay = tot_layout(a);
  FilteredComplex<K> t{a.field, {}, {}};
  for (auto& [n, cols] : lay.columns) {
    std::vector<int> w;
    for (auto& [p, off] : cols) w.insert(w.end(), a.dim({p, n + p}), p);
    t.set_degree(n, Matrix<K>::identity(lay.dims[n], a.field), std::move(w));
  }
  for (auto& [n, cols] : lay.columns) {
    if (!lay.columns.count(n + 1)) continue;
    Matrix<K> m(lay.dims[n + 1], lay.dims[n]);
    const K sign = from_int<K>(n % 2 ? -1 : 1, a.field);
    for (auto& [p, off] : cols) {
      const Bidegree b{p, n + p};
      if (a.dim(Bicomplex<K>::up(b))) m.set_block(lay.offset(n + 1, p), off, a.d0_at(b));
      if (a.dim(Bicomplex<K>::left(b))) m.set_block(lay.offset(n + 1, p - 1), off, sign * a.d1_at(b));
    }
    t.set_diff(n, m);
  }
  return t;
}

template <class K>
FilteredMorphism<K> tot(const BicomplexMorphism<K>& f) {
  auto ls = tot_layout(f.source), lt = tot_layout(f.target);
  FilteredMorphism<K> g{tot(f.source), tot(f.target), {}};
  for (auto& [n, cols] : ls.columns) {
    if (!lt.dims.count(n)) continue;
    Matrix<K> m(lt.dims[n], ls.dims[n]);
    for (auto& [p, off] : cols) {
      const Bidegree b{p, n + p};
      if (f.target.dim(b)) m.set_block(lt.offset(n, p), off, f.at(b));
    }
    g.set(n, m);
  }
  return g;
}

// ---------------------------------------------------------------------------
// witness cycles and boundaries

// A subspace of a direct sum of spots; parts[k] occupies rows offsets[k]..
template <class K>
struct WitnessSpace {
  std::vector<Bidegree> parts;
  std::vector<std::size_t> offsets;
  std::vector<std::size_t> sizes;
  std::size_t ambient = 0;
  Subspace<K> space{0};

  // The projection of the ambient sum onto part k.
  Matrix<K> select(std::size_t k, const FieldSpec& f) const {
    Matrix<K> m(sizes[k], ambient);
    for (std::size_t i = 0; i < sizes[k]; ++i) m(i, offsets[k] + i) = one<K>(f);
    return m;
  }

  void add_part(Bidegree b, std::size_t n) {
    parts.push_back(b);
    offsets.push_back(ambient);
    sizes.push_back(n);
    ambient += n;
  }
};

// ZW_r^{p,q}(A): tuples (a_0, ..., a_{r-1}), a_i in A^{p-i,q-i}, with d0 a_0 = 0
// and d1 a_{i-1} = d0 a_i. ZW_0 = A^{p,q}.
template <class K>
WitnessSpace<K> witness_cycles(const Bicomplex<K>& a, int r, Bidegree at) {
  WitnessSpace<K> w;
  if (r == 0) {
    w.add_part(at, a.dim(at));
    w.space = Subspace<K>::full(w.ambient, a.field);
    return w;
  }
  for (int i = 0; i < r; ++i) {
    const Bidegree b{at.p - i, at.q - i};
    w.add_part(b, a.dim(b));
  }
  using B = Bicomplex<K>;
  std::size_t rows = a.dim(B::up(at));
  for (int i = 1; i < r; ++i) rows += a.dim(B::up(w.parts[i]));
  Matrix<K> c(rows, w.ambient);
  c.set_block(0, 0, a.d0_at(at));
  std::size_t row = a.dim(B::up(at));
  for (int i = 1; i < r; ++i) {
    // d1 a_{i-1} - d0 a_i, landing in A^{p-i, q-i+1}
    c.set_block(row, w.offsets[i - 1], a.d1_at(w.parts[i - 1]));
    c.set_block(row, w.offsets[i], -a.d0_at(w.parts[i]));
    row += a.dim(B::up(w.parts[i]));
  }
  w.space = kernel(c, a.field);
  return w;
}

// Witness boundaries indexed by their own bidegree: BW_r at (p,q) feeds ZW_r
// at (p,q+1). For r >= 2 the parts are the tuple b in ZW_{r-1}^{p+r-1,q+r-1},
// then a in A^{p,q}, then the tuple c in ZW_{r-1}^{p-1,q}.
template <class K>
struct BoundarySpace {
  WitnessSpace<K> sum;
  std::size_t b_parts = 0;  // number of parts in the b tuple
  std::size_t a_part = 0;   // index of a
};

template <class K>
BoundarySpace<K> witness_boundaries(const Bicomplex<K>& a, int r, Bidegree at) {
  BoundarySpace<K> bw;
  if (r == 0) {
    bw.sum.space = Subspace<K>(0);
    return bw;
  }
  if (r == 1) {
    bw.sum.add_part(at, a.dim(at));
    bw.sum.space = Subspace<K>::full(bw.sum.ambient, a.field);
    return bw;
  }
  auto zb = witness_cycles(a, r - 1, {at.p + r - 1, at.q + r - 1});
  auto zc = witness_cycles(a, r - 1, {at.p - 1, at.q});
  for (std::size_t k = 0; k < zb.parts.size(); ++k) bw.sum.add_part(zb.parts[k], zb.sizes[k]);
  bw.b_parts = zb.parts.size();
  bw.a_part = bw.sum.parts.size();
  bw.sum.add_part(at, a.dim(at));
  for (std::size_t k = 0; k < zc.parts.size(); ++k) bw.sum.add_part(zc.parts[k], zc.sizes[k]);
  bw.sum.space = Subspace<K>::span(
      block_diag(block_diag(zb.space.basis(), Matrix<K>::identity(a.dim(at), a.field)), zc.space.basis()));
  return bw;
}

// w_r: BW_r at (p,q) -> ZW_r at (p,q+1) on ambient tuples,
// (b; a; c) -> (d0 a + d1 b_{r-2}, d1 a + c_0, c_1, ..., c_{r-2}).
template <class K>
Matrix<K> witness_w(const Bicomplex<K>& a, int r, const BoundarySpace<K>& bw, const WitnessSpace<K>& zw) {
  Matrix<K> m(zw.ambient, bw.sum.ambient);
  if (r == 0) return m;
  const auto& s = bw.sum;
  if (r == 1) {
    m.set_block(0, 0, a.d0_at(s.parts[0]));
    return m;
  }
  const std::size_t ai = bw.a_part;
  m.set_block(zw.offsets[0], s.offsets[ai], a.d0_at(s.parts[ai]));
  m.set_block(zw.offsets[0], s.offsets[ai - 1], a.d1_at(s.parts[ai - 1]));
  m.set_block(zw.offsets[1], s.offsets[ai], a.d1_at(s.parts[ai]));
  for (int k = 1; k < r; ++k) {
    // c_{k-1} lands in slot k
    const std::size_t ci = ai + static_cast<std::size_t>(k);
    Matrix<K> id = Matrix<K>::identity(s.sizes[ci], a.field);
    for (std::size_t i = 0; i < s.sizes[ci]; ++i) m(zw.offsets[k] + i, s.offsets[ci] + i) += id(i, i);
  }
  return m;
}

// d_r on ZW_r: (a_0, ..., a_{r-1}) -> (d1 a_{r-1}, 0, ..., 0); d0 when r = 0.
template <class K>
Matrix<K> witness_d(const Bicomplex<K>& a, int r, const WitnessSpace<K>& src, const WitnessSpace<K>& tgt) {
  Matrix<K> m(tgt.ambient, src.ambient);
  if (r == 0) m.set_block(0, 0, a.d0_at(src.parts[0]));
  else m.set_block(tgt.offsets[0], src.offsets[r - 1], a.d1_at(src.parts[r - 1]));
  return m;
}

// ZW_r(f) on ambient tuples.
template <class K>
Matrix<K> witness_map(const BicomplexMorphism<K>& f, const WitnessSpace<K>& src, const WitnessSpace<K>& tgt) {
  Matrix<K> m(tgt.ambient, src.ambient);
  for (std::size_t k = 0; k < src.parts.size(); ++k) m.set_block(tgt.offsets[k], src.offsets[k], f.at(src.parts[k]));
  return m;
}

// ---------------------------------------------------------------------------
// pages

// Z_r^{p,q}(A) inside A^{p,q}, the a_0 components of witness tuples.
template <class K>
Subspace<K> bi_z_r(const Bicomplex<K>& a, int r, Bidegree at) {
  if (r == 0) return Subspace<K>::full(a.dim(at), a.field);
  auto w = witness_cycles(a, r, at);
  return image(w.select(0, a.field), w.space);
}

// B_r^{p,q}(A): d0 b_{r-1} + d1 b_{r-2} with (b_0..b_{r-2}) in ZW_{r-1}^{p+r-1,q+r-2}.
template <class K>
Subspace<K> bi_b_r(const Bicomplex<K>& a, int r, Bidegree at) {
  if (r == 0) return Subspace<K>(a.dim(at));
  const Bidegree below{at.p, at.q - 1};
  auto from_d0 = image(a.d0_at(below));
  if (r == 1) return from_d0;
  auto w = witness_cycles(a, r - 1, {at.p + r - 1, at.q + r - 2});
  const Bidegree last = w.parts[r - 2];  // = (p+1, q)
  return sum(from_d0, image(Matrix<K>(a.d1_at(last) * w.select(r - 2, a.field)), w.space));
}

// E_r(A) from Z_r/B_r inside each spot; delta_r [a_0] = [d1 a_{r-1}] for a
// witness chosen by canonical solve, or at random when rng is given.
template <class K>
SpectralPage<K> page_direct(const Bicomplex<K>& a, int r, std::mt19937_64* rng = nullptr) {
  SpectralPage<K> sp{r, RComplex<K>{a.field, r, {}, {}}, {}};
  for (auto b : a.support()) {
    auto q = quotient(bi_z_r(a, r, b), bi_b_r(a, r, b), a.field);
    sp.page.set_dim(b, q.dim());
    sp.spaces.emplace(b, std::move(q));
  }
  for (auto& [s, sq] : sp.spaces) {
    if (!sq.dim()) continue;
    auto t = sp.page.target(s);
    auto it = sp.spaces.find(t);
    if (it == sp.spaces.end() || !it->second.dim()) continue;
    Matrix<K> image_vecs;
    if (r == 0) {
      image_vecs = a.d0_at(s) * sq.lift;
    } else {
      auto w = witness_cycles(a, r, s);
      Matrix<K> to_a0 = w.select(0, a.field) * w.space.basis();
      Matrix<K> last = w.select(r - 1, a.field) * w.space.basis();
      image_vecs = Matrix<K>(a.dim(t), sq.dim());
      auto free = kernel(to_a0, a.field);
      for (std::size_t c = 0; c < sq.dim(); ++c) {
        auto y = solve(to_a0, sq.lift.select_cols({c}));
        if (!y) throw invariant_error("page_direct: representative without witness at " + s.str());
        Matrix<K> coeff = *y;
        if (rng)
          for (std::size_t k = 0; k < free.dim(); ++k)
            coeff += random_scalar<K>(*rng, a.field) * free.basis().select_cols({k});
        image_vecs.set_block(0, c, a.d1_at(w.parts[r - 1]) * last * coeff);
      }
    }
    sp.page.set_delta(s, it->second.project * image_vecs);
  }
  return sp;
}

// E_r(A) as ZW_r / w_r(BW_r) with the descended d_r.
template <class K>
SpectralPage<K> page_via_witness(const Bicomplex<K>& a, int r) {
  SpectralPage<K> sp{r, RComplex<K>{a.field, r, {}, {}}, {}};
  std::map<Bidegree, WitnessSpace<K>> zws;
  for (auto b : a.support()) {
    auto zw = witness_cycles(a, r, b);
    auto bw = witness_boundaries(a, r, {b.p, b.q - 1});
    auto im = image(witness_w(a, r, bw, zw), bw.sum.space);
    auto q = quotient(zw.space, im, a.field);
    sp.page.set_dim(b, q.dim());
    sp.spaces.emplace(b, std::move(q));
    zws.emplace(b, std::move(zw));
  }
  for (auto& [s, sq] : sp.spaces) {
    if (!sq.dim()) continue;
    auto t = sp.page.target(s);
    auto it = sp.spaces.find(t);
    if (it == sp.spaces.end() || !it->second.dim()) continue;
    sp.page.set_delta(s, it->second.project * witness_d(a, r, zws.at(s), zws.at(t)) * sq.lift);
  }
  return sp;
}

// E_r of the column filtration of Tot(A), reindexed to (p,q) = (p, n+p).
template <class K>
SpectralPage<K> page_via_tot(const Bicomplex<K>& a, int r) {
  return page(tot(a), r);
}

// E_r(f) on page_direct.
template <class K>
RMorphism<K> induced_page_map_direct(const BicomplexMorphism<K>& f, int r) {
  auto ea = page_direct(f.source, r), eb = page_direct(f.target, r);
  RMorphism<K> out{ea.page, eb.page, {}};
  for (auto& [b, d] : ea.page.dims) {
    if (!eb.page.dim(b)) continue;
    out.set(b, eb.spaces.at(b).project * f.at(b) * ea.spaces.at(b).lift);
  }
  return out;
}

// E_r(f) on page_via_witness.
template <class K>
RMorphism<K> induced_page_map_witness(const BicomplexMorphism<K>& f, int r) {
  auto ea = page_via_witness(f.source, r), eb = page_via_witness(f.target, r);
  RMorphism<K> out{ea.page, eb.page, {}};
  for (auto& [b, d] : ea.page.dims) {
    if (!eb.page.dim(b)) continue;
    auto zs = witness_cycles(f.source, r, b), zt = witness_cycles(f.target, r, b);
    out.set(b, eb.spaces.at(b).project * witness_map(f, zs, zt) * ea.spaces.at(b).lift);
  }
  return out;
}

// The comparison E_r via witnesses -> E_r direct induced by z_r at b.
template <class K>
Matrix<K> comparison_witness_direct(const Bicomplex<K>& a, int r, const SpectralPage<K>& via,
                                    const SpectralPage<K>& direct, Bidegree b) {
  auto w = witness_cycles(a, r, b);
  return direct.spaces.at(b).project * w.select(0, a.field) * via.spaces.at(b).lift;
}

// The witness tuple as an element of Tot(A)^n: sum of (-1)^{(n+1)i} a_i in column p-i.
template <class K>
Matrix<K> witness_to_tot(const Bicomplex<K>& a, const WitnessSpace<K>& w, const TotLayout<K>& lay) {
  const int n = w.parts[0].q - w.parts[0].p;
  Matrix<K> m(lay.dims.count(n) ? lay.dims.at(n) : 0, w.ambient);
  for (std::size_t i = 0; i < w.parts.size(); ++i) {
    if (!w.sizes[i]) continue;
    const bool neg = ((n + 1) * static_cast<int>(i)) % 2 != 0;
    Matrix<K> id = Matrix<K>::identity(w.sizes[i], a.field);
    m.set_block(lay.offset(n, w.parts[i].p), w.offsets[i], neg ? Matrix<K>(-id) : id);
  }
  return m;
}

// The comparison E_r via witnesses -> E_r(Tot A) at b.
template <class K>
Matrix<K> comparison_witness_tot(const Bicomplex<K>& a, int r, const SpectralPage<K>& via, const SpectralPage<K>& viatot,
                                 Bidegree b) {
  auto w = witness_cycles(a, r, b);
  auto lay = tot_layout(a);
  auto it = viatot.spaces.find(b);
  if (it == viatot.spaces.end()) return Matrix<K>(0, via.spaces.at(b).dim());
  return it->second.project * witness_to_tot(a, w, lay) * via.spaces.at(b).lift;
}

// Sign relating the two differentials under the Tot comparison:
// delta_tot phi = sign * phi delta_witness at a source of total degree n.
inline int tot_comparison_sign(int n, int r) {
  if (r == 0) return 1;
  return ((n + (n + 1) * (r - 1)) % 2 == 0) ? 1 : -1;
}

// ---------------------------------------------------------------------------
// tensor products

// Layout of (A (x) B)^{p,q}: blocks A^{s,t} (x) B^{p-s,q-t} ordered by (s,t),
// coordinates within a block are kron ordered (A index major).
template <class K>
struct TensorLayout {
  struct Block {
    Bidegree left, right;
    std::size_t offset;
  };
  std::map<Bidegree, std::vector<Block>> blocks;
  std::map<Bidegree, std::size_t> dims;

  std::size_t offset(Bidegree at, Bidegree left) const {
    for (auto& blk : blocks.at(at))
      if (blk.left == left) return blk.offset;
    throw usage_error("tensor layout: no block " + left.str() + " at " + at.str());
  }
};

template <class K>
TensorLayout<K> tensor_layout(const Bicomplex<K>& a, const Bicomplex<K>& b) {
  TensorLayout<K> lay;
  for (auto x : a.support())
    for (auto y : b.support()) lay.blocks[{x.p + y.p, x.q + y.q}].push_back({x, y, 0});
  for (auto& [at, blks] : lay.blocks) {
    std::sort(blks.begin(), blks.end(), [](auto& u, auto& v) { return u.left < v.left; });
    std::size_t off = 0;
    for (auto& blk : blks) {
      blk.offset = off;
      off += a.dim(blk.left) * b.dim(blk.right);
    }
    lay.dims[at] = off;
  }
  return lay;
}

// d0(a (x) b) = d0 a (x) b + (-1)^t a (x) d0 b and
// d1(a (x) b) = d1 a (x) b + (-1)^s a (x) d1 b for a of bidegree (s,t).
template <class K>
Bicomplex<K> tensor(const Bicomplex<K>& a, const Bicomplex<K>& b) {
  using B = Bicomplex<K>;
  auto lay = tensor_layout(a, b);
  Bicomplex<K> t{a.field, {}, {}, {}};
  for (auto& [at, n] : lay.dims) t.set_dim(at, n);
  for (auto& [at, blks] : lay.blocks) {
    Matrix<K> m0(t.dim(B::up(at)), t.dim(at)), m1(t.dim(B::left(at)), t.dim(at));
    for (auto& blk : blks) {
      const auto ia = Matrix<K>::identity(a.dim(blk.left), a.field);
      const auto ib = Matrix<K>::identity(b.dim(blk.right), a.field);
      const K s0 = from_int<K>(blk.left.q % 2 ? -1 : 1, a.field);
      const K s1 = from_int<K>(blk.left.p % 2 ? -1 : 1, a.field);
      if (a.dim(B::up(blk.left)))
        m0.set_block(lay.offset(B::up(at), B::up(blk.left)), blk.offset, kron(a.d0_at(blk.left), ib));
      if (b.dim(B::up(blk.right))) {
        auto off = lay.offset(B::up(at), blk.left);
        auto cur = m0.block(off, blk.offset, a.dim(blk.left) * b.dim(B::up(blk.right)), a.dim(blk.left) * b.dim(blk.right));
        m0.set_block(off, blk.offset, cur + s0 * kron(ia, b.d0_at(blk.right)));
      }
      if (a.dim(B::left(blk.left)))
        m1.set_block(lay.offset(B::left(at), B::left(blk.left)), blk.offset, kron(a.d1_at(blk.left), ib));
      if (b.dim(B::left(blk.right))) {
        auto off = lay.offset(B::left(at), blk.left);
        auto cur = m1.block(off, blk.offset, a.dim(blk.left) * b.dim(B::left(blk.right)), a.dim(blk.left) * b.dim(blk.right));
        m1.set_block(off, blk.offset, cur + s1 * kron(ia, b.d1_at(blk.right)));
      }
    }
    if (t.dim(B::up(at))) t.set_d0(at, m0);
    if (t.dim(B::left(at))) t.set_d1(at, m1);
  }
  return t;
}

// f (x) g on the tensor layouts.
template <class K>
BicomplexMorphism<K> tensor(const BicomplexMorphism<K>& f, const BicomplexMorphism<K>& g) {
  auto ls = tensor_layout(f.source, g.source);
  auto lt = tensor_layout(f.target, g.target);
  BicomplexMorphism<K> h{tensor(f.source, g.source), tensor(f.target, g.target), {}};
  for (auto& [at, blks] : ls.blocks) {
    if (!h.target.dim(at)) continue;
    Matrix<K> m(h.target.dim(at), h.source.dim(at));
    for (auto& blk : blks) {
      if (!f.target.dim(blk.left) || !g.target.dim(blk.right)) continue;
      m.set_block(lt.offset(at, blk.left), blk.offset, kron(f.at(blk.left), g.at(blk.right)));
    }
    h.set(at, m);
  }
  return h;
}

// The associator (A (x) B) (x) C -> A (x) (B (x) C); a coordinate permutation
// under this sign convention.
template <class K>
BicomplexMorphism<K> associator(const Bicomplex<K>& a, const Bicomplex<K>& b, const Bicomplex<K>& c) {
  auto ab = tensor(a, b), bc = tensor(b, c);
  auto l_ab = tensor_layout(a, b), l_bc = tensor_layout(b, c);
  auto l_src = tensor_layout(ab, c), l_tgt = tensor_layout(a, bc);
  BicomplexMorphism<K> m{tensor(ab, c), tensor(a, bc), {}};
  for (auto& [at, blks] : l_src.blocks) {
    Matrix<K> perm(m.target.dim(at), m.source.dim(at));
    for (auto& outer : blks) {
      // outer.left is a spot of A (x) B, outer.right a spot of C
      for (auto& inner : l_ab.blocks.at(outer.left)) {
        const std::size_t na = a.dim(inner.left), nb = b.dim(inner.right), nc = c.dim(outer.right);
        const Bidegree bc_spot{inner.right.p + outer.right.p, inner.right.q + outer.right.q};
        const std::size_t tgt_outer = l_tgt.offset(at, inner.left);
        const std::size_t tgt_inner = l_bc.offset(bc_spot, inner.right);
        const std::size_t nbc = bc.dim(bc_spot);
        for (std::size_t i = 0; i < na; ++i)
          for (std::size_t j = 0; j < nb; ++j)
            for (std::size_t k = 0; k < nc; ++k) {
              const std::size_t src = outer.offset + (inner.offset + i * nb + j) * nc + k;
              const std::size_t tgt = tgt_outer + i * nbc + tgt_inner + j * nc + k;
              perm(tgt, src) = one<K>(a.field);
            }
      }
    }
    m.set(at, perm);
  }
  return m;
}

// The unit: R at (0,0).
template <class K>
Bicomplex<K> unit_bicomplex(const FieldSpec& f) {
  Bicomplex<K> u{f, {}, {}, {}};
  u.set_dim({0, 0}, 1);
  return u;
}

// ---------------------------------------------------------------------------
// representing bicomplexes

namespace detail {

template <class K>
void put_d0(Bicomplex<K>& a, Bidegree b) {
  a.set_d0(b, Matrix<K>::identity(1, a.field));
}
template <class K>
void put_d1(Bicomplex<K>& a, Bidegree b) {
  a.set_d1(b, Matrix<K>::identity(1, a.field));
}

}  // namespace detail

// D_0(i,j): the square (i-1,j) (i,j) (i-1,j+1) (i,j+1) with all arrows 1.
template <class K>
Bicomplex<K> gen_D0(int i, int j, const FieldSpec& f) {
  Bicomplex<K> a{f, {}, {}, {}};
  for (Bidegree b : {Bidegree{i - 1, j}, Bidegree{i, j}, Bidegree{i - 1, j + 1}, Bidegree{i, j + 1}}) a.set_dim(b, 1);
  detail::put_d0(a, {i - 1, j});
  detail::put_d0(a, {i, j});
  detail::put_d1(a, {i, j});
  detail::put_d1(a, {i, j + 1});
  return a;
}

// ZW_r(i,j): the staircase with spots (i-k, j-k) and (i-k-1, j-k) for
// 0 <= k < r; ZW_0 = D_0.
template <class K>
Bicomplex<K> gen_ZW(int r, int i, int j, const FieldSpec& f) {
  if (r < 0) throw parameter_error("ZW_r(i,j) requires r >= 0");
  if (r == 0) return gen_D0<K>(i, j, f);
  Bicomplex<K> a{f, {}, {}, {}};
  for (int k = 0; k < r; ++k) {
    a.set_dim({i - k, j - k}, 1);
    a.set_dim({i - k - 1, j - k}, 1);
  }
  for (int k = 0; k < r; ++k) detail::put_d1(a, {i - k, j - k});
  for (int k = 1; k < r; ++k) detail::put_d0(a, {i - k, j - k});
  return a;
}

// BW_r(i,j) for r >= 1, representing BW_r at (i,j):
// ZW_{r-1}(i-1,j) + D_0(i,j) + ZW_{r-1}(i+r-1,j+r-1), and D_0(i,j) for r = 1.
template <class K>
Bicomplex<K> gen_BW(int r, int i, int j, const FieldSpec& f) {
  if (r < 1) throw parameter_error("BW_r(i,j) requires r >= 1");
  if (r == 1) return gen_D0<K>(i, j, f);
  return direct_sum(direct_sum(gen_ZW<K>(r - 1, i - 1, j, f), gen_D0<K>(i, j, f)), gen_ZW<K>(r - 1, i + r - 1, j + r - 1, f));
}

// iota_r(i,j): ZW_r(i,j) -> BW_r(i,j-1), the all-ones column at every spot.
template <class K>
BicomplexMorphism<K> gen_iota(int r, int i, int j, const FieldSpec& f) {
  if (r < 1) throw parameter_error("iota_r requires r >= 1");
  BicomplexMorphism<K> m{gen_ZW<K>(r, i, j, f), gen_BW<K>(r, i, j - 1, f), {}};
  for (auto b : m.source.support()) {
    Matrix<K> col(m.target.dim(b), 1);
    for (std::size_t k = 0; k < col.rows(); ++k) col(k, 0) = one<K>(f);
    m.set(b, col);
  }
  return m;
}

// The morphism ZW_r(i,j) -> A given by a witness tuple x in ZW_r^{i,j}(A)
// (for r = 0, an element of A^{i,j}).
template <class K>
BicomplexMorphism<K> represent_witness(const Bicomplex<K>& a, int r, int i, int j, const Matrix<K>& x) {
  using B = Bicomplex<K>;
  auto z = gen_ZW<K>(r, i, j, a.field);
  BicomplexMorphism<K> m{z, a, {}};
  auto put = [&](Bidegree b, const Matrix<K>& v) {
    if (a.dim(b)) m.set(b, v);
  };
  if (r == 0) {
    const Bidegree b{i, j};
    put(b, x);
    put(B::up(b), a.d0_at(b) * x);
    put(B::left(b), a.d1_at(b) * x);
    put({i - 1, j + 1}, a.d1_at(B::up(b)) * a.d0_at(b) * x);
    return m;
  }
  auto w = witness_cycles(a, r, {i, j});
  for (int k = 0; k < r; ++k) {
    Matrix<K> ak = w.select(k, a.field) * x;
    put(w.parts[k], ak);
    put(B::left(w.parts[k]), a.d1_at(w.parts[k]) * ak);
  }
  return m;
}

// ---------------------------------------------------------------------------
// Hom spaces, cokernels, pushouts

template <class K>
struct BicomplexHomSystem {
  LinearSystem<K> system;
  std::map<Bidegree, std::size_t> block;
};

// Unknown blocks f^{p,q}: A^{p,q} -> B^{p,q} with d0 f = f d0 and d1 f = f d1.
template <class K>
BicomplexHomSystem<K> hom_system(const Bicomplex<K>& a, const Bicomplex<K>& b) {
  using B = Bicomplex<K>;
  BicomplexHomSystem<K> h{LinearSystem<K>(a.field), {}};
  for (auto x : a.support())
    if (b.dim(x)) h.block[x] = h.system.add_block(b.dim(x), a.dim(x));
  auto add = [&](Bidegree x, Bidegree y, const Matrix<K>& db, const Matrix<K>& da) {
    // db f^x - f^y da = 0, as maps A^x -> B^y
    if (!b.dim(y)) return;
    std::vector<typename LinearSystem<K>::Term> terms;
    if (h.block.count(x)) terms.push_back({h.block[x], db, std::nullopt});
    if (h.block.count(y)) terms.push_back({h.block[y], -Matrix<K>::identity(b.dim(y), a.field), da});
    if (!terms.empty()) h.system.add_equation(terms, Matrix<K>(b.dim(y), a.dim(x)));
  };
  for (auto x : a.support()) {
    add(x, B::up(x), b.d0_at(x), a.d0_at(x));
    add(x, B::left(x), b.d1_at(x), a.d1_at(x));
  }
  return h;
}

template <class K>
BicomplexMorphism<K> morphism_from_solution(const BicomplexHomSystem<K>& h, const std::vector<Matrix<K>>& sol,
                                            const Bicomplex<K>& a, const Bicomplex<K>& b) {
  BicomplexMorphism<K> f{a, b, {}};
  for (auto& [x, id] : h.block) f.set(x, sol[id]);
  return f;
}

template <class K>
std::vector<BicomplexMorphism<K>> hom_basis(const Bicomplex<K>& a, const Bicomplex<K>& b) {
  auto h = hom_system(a, b);
  std::vector<BicomplexMorphism<K>> out;
  for (auto& v : h.system.nullspace()) out.push_back(morphism_from_solution(h, v, a, b));
  return out;
}

// Projection B -> Coker f in echelon quotient coordinates.
template <class K>
BicomplexMorphism<K> cokernel(const BicomplexMorphism<K>& f) {
  using B = Bicomplex<K>;
  const auto& b = f.target;
  Bicomplex<K> c{b.field, {}, {}, {}};
  std::map<Bidegree, Subquotient<K>> qs;
  for (auto x : b.support()) {
    auto q = quotient(Subspace<K>::full(b.dim(x), b.field), image(f.at(x)), b.field);
    c.set_dim(x, q.dim());
    qs.emplace(x, std::move(q));
  }
  for (auto& [x, q] : qs) {
    if (!q.dim()) continue;
    auto up = qs.find(B::up(x));
    if (up != qs.end() && up->second.dim()) c.set_d0(x, up->second.project * b.d0_at(x) * q.lift);
    auto lf = qs.find(B::left(x));
    if (lf != qs.end() && lf->second.dim()) c.set_d1(x, lf->second.project * b.d1_at(x) * q.lift);
  }
  BicomplexMorphism<K> pi{b, c, {}};
  for (auto& [x, q] : qs)
    if (q.dim()) pi.set(x, q.project);
  return pi;
}

// Pushout of i: A -> B along u: A -> X; returns the legs B -> P and X -> P.
template <class K>
std::pair<BicomplexMorphism<K>, BicomplexMorphism<K>> pushout(const BicomplexMorphism<K>& i,
                                                              const BicomplexMorphism<K>& u) {
  auto s = direct_sum(i.target, u.target);
  BicomplexMorphism<K> m{i.source, s, {}};
  for (auto x : i.source.support())
    if (s.dim(x)) m.set(x, vstack(i.at(x), Matrix<K>(-u.at(x))));
  auto pi = cokernel(m);
  return {compose(pi, inclusion_first(i.target, s)), compose(pi, inclusion_second(u.target, s))};
}

// ---------------------------------------------------------------------------
// surjectivity of induced maps

// Spots where ZW_r(A) can be nonzero.
template <class K>
std::set<Bidegree> witness_spots(const Bicomplex<K>& a, int r) {
  std::set<Bidegree> out;
  for (auto y : a.support())
    for (int i = 0; i < std::max(r, 1); ++i) out.insert({y.p + i, y.q + i});
  return out;
}

// ZW_r(f) bidegree-wise surjective.
template <class K>
bool zw_surjective(const BicomplexMorphism<K>& f, int r) {
  for (auto b : witness_spots(f.target, r)) {
    auto zt = witness_cycles(f.target, r, b);
    if (zt.space.is_zero()) continue;
    auto zs = witness_cycles(f.source, r, b);
    if (image(witness_map(f, zs, zt), zs.space).dim() != zt.space.dim()) return false;
  }
  return true;
}

// Z_r(f) bidegree-wise surjective.
template <class K>
bool z_surjective(const BicomplexMorphism<K>& f, int r) {
  for (auto b : f.target.support()) {
    auto zt = bi_z_r(f.target, r, b);
    if (zt.is_zero()) continue;
    if (image(f.at(b), bi_z_r(f.source, r, b)).dim() != zt.dim()) return false;
  }
  return true;
}

// E_r(f) bidegree-wise surjective.
template <class K>
bool e_surjective(const BicomplexMorphism<K>& f, int r) {
  return is_bidegreewise_surjective(induced_page_map_direct(f, r));
}

// f is an E_r-quasi-isomorphism: E_{r+1}(f) is an isomorphism.
template <class K>
bool is_er_quiso(const BicomplexMorphism<K>& f, int r) {
  return is_bidegreewise_iso(induced_page_map_direct(f, r + 1));
}

}  // namespace specseq
