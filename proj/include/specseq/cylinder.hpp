#pragma once

#include <map>
#include <set>
#include <vector>

#include "specseq/bicomplex.hpp"

namespace specseq {

// Cyl_r. At (0,0) the basis is (e_-, e_+); e_{i,i} sits at (i,i) for
// 1 <= i < r and e_{i,i-1} at (i,i-1) for 1 <= i <= r. Cyl_0 has a single
// extra generator at (0,-1).
template <class K>
Bicomplex<K> cyl(int r, const FieldSpec& f) {
  if (r < 0) throw parameter_error("Cyl_r requires r >= 0");
  Bicomplex<K> c{f, {}, {}, {}};
  Matrix<K> fold(2, 1);
  fold(0, 0) = from_int<K>(-1, f);
  fold(1, 0) = one<K>(f);
  c.set_dim({0, 0}, 2);
  if (r == 0) {
    c.set_dim({0, -1}, 1);
    c.set_d0({0, -1}, fold);
    return c;
  }
  for (int i = 1; i < r; ++i) c.set_dim({i, i}, 1);
  for (int i = 1; i <= r; ++i) c.set_dim({i, i - 1}, 1);
  for (int i = 1; i < r; ++i) {
    detail::put_d0(c, {i, i - 1});
    detail::put_d1(c, {i + 1, i});
  }
  c.set_d1({1, 0}, fold);
  return c;
}

// Slots of Cyl_r(f,g) at a spot: beta (B), the a_i (i = 1..r-1), the b_i
// (i = 1..r) and gamma (C). For r = 0 there is one middle slot a in A^{p,q+1}.
struct CylSlot {
  enum Kind { beta, a, b, gamma } kind;
  int i = 0;
  Bidegree spot;  // the spot of B, A or C it copies
};

inline std::vector<CylSlot> cyl_slots(Bidegree at, int r) {
  std::vector<CylSlot> s;
  s.push_back({CylSlot::beta, 0, at});
  if (r == 0) {
    s.push_back({CylSlot::a, 0, {at.p, at.q + 1}});
  } else {
    for (int i = 1; i < r; ++i) s.push_back({CylSlot::a, i, {at.p - i, at.q - i}});
    for (int i = 1; i <= r; ++i) s.push_back({CylSlot::b, i, {at.p - i, at.q + 1 - i}});
  }
  s.push_back({CylSlot::gamma, 0, at});
  return s;
}

namespace detail {

template <class K>
struct CylCoords {
  const Bicomplex<K>& a;
  const Bicomplex<K>& b;
  const Bicomplex<K>& c;
  int r;

  std::size_t size(const CylSlot& s) const {
    switch (s.kind) {
      case CylSlot::beta: return b.dim(s.spot);
      case CylSlot::gamma: return c.dim(s.spot);
      default: return a.dim(s.spot);
    }
  }

  std::size_t dim(Bidegree at) const {
    std::size_t n = 0;
    for (auto& s : cyl_slots(at, r)) n += size(s);
    return n;
  }

  // Offset of the slot (kind, i) at a spot.
  std::size_t offset(Bidegree at, CylSlot::Kind kind, int i) const {
    std::size_t n = 0;
    for (auto& s : cyl_slots(at, r)) {
      if (s.kind == kind && s.i == i) return n;
      n += size(s);
    }
    throw usage_error("cylinder: missing slot");
  }
};

}  // namespace detail

// The double mapping r-cylinder Cyl_r(f,g) in closed form, for f: A -> B and
// g: A -> C.
template <class K>
Bicomplex<K> double_cylinder(const BicomplexMorphism<K>& f, const BicomplexMorphism<K>& g, int r) {
  if (r < 0) throw parameter_error("Cyl_r requires r >= 0");
  using B = Bicomplex<K>;
  const auto& a = f.source;
  detail::CylCoords<K> cc{a, f.target, g.target, r};
  const FieldSpec& fs = a.field;
  std::set<Bidegree> spots;
  for (auto x : f.target.support()) spots.insert(x);
  for (auto x : g.target.support()) spots.insert(x);
  for (auto y : a.support()) {
    if (r == 0) spots.insert({y.p, y.q - 1});
    for (int i = 1; i < r; ++i) spots.insert({y.p + i, y.q + i});
    for (int i = 1; i <= r; ++i) spots.insert({y.p + i, y.q + i - 1});
  }
  Bicomplex<K> out{fs, {}, {}, {}};
  for (auto x : spots) out.set_dim(x, cc.dim(x));
  auto sgn = [&](int e) { return from_int<K>(e % 2 ? -1 : 1, fs); };
  for (auto x : out.support()) {
    const Bidegree u = B::up(x), l = B::left(x);
    Matrix<K> m0(out.dim(u), out.dim(x)), m1(out.dim(l), out.dim(x));
    auto add = [&](Matrix<K>& m, std::size_t r0, std::size_t c0, const Matrix<K>& blk) {
      if (blk.empty()) return;
      m.set_block(r0, c0, m.block(r0, c0, blk.rows(), blk.cols()) + blk);
    };
    for (auto& s : cyl_slots(x, r)) {
      if (!cc.size(s)) continue;
      const std::size_t col = cc.offset(x, s.kind, s.i);
      switch (s.kind) {
        case CylSlot::beta:
          if (out.dim(u)) add(m0, cc.offset(u, CylSlot::beta, 0), col, f.target.d0_at(s.spot));
          if (out.dim(l)) add(m1, cc.offset(l, CylSlot::beta, 0), col, f.target.d1_at(s.spot));
          break;
        case CylSlot::gamma:
          if (out.dim(u)) add(m0, cc.offset(u, CylSlot::gamma, 0), col, g.target.d0_at(s.spot));
          if (out.dim(l)) add(m1, cc.offset(l, CylSlot::gamma, 0), col, g.target.d1_at(s.spot));
          break;
        case CylSlot::a:
          if (r == 0) {
            // d0(beta, a, gamma) = (d0 beta - f a, -d0 a, d0 gamma + g a); d1 acts diagonally
            if (out.dim(u)) {
              add(m0, cc.offset(u, CylSlot::beta, 0), col, -f.at(s.spot));
              add(m0, cc.offset(u, CylSlot::a, 0), col, -a.d0_at(s.spot));
              add(m0, cc.offset(u, CylSlot::gamma, 0), col, g.at(s.spot));
            }
            if (out.dim(l)) add(m1, cc.offset(l, CylSlot::a, 0), col, a.d1_at(s.spot));
          } else {
            if (out.dim(u)) add(m0, cc.offset(u, CylSlot::a, s.i), col, sgn(s.i) * a.d0_at(s.spot));
            if (out.dim(l)) add(m1, cc.offset(l, CylSlot::a, s.i), col, sgn(s.i) * a.d1_at(s.spot));
          }
          break;
        case CylSlot::b: {
          const auto id = Matrix<K>::identity(cc.size(s), fs);
          if (out.dim(u)) {
            if (s.i < r) add(m0, cc.offset(u, CylSlot::a, s.i), col, id);
            add(m0, cc.offset(u, CylSlot::b, s.i), col, sgn(s.i - 1) * a.d0_at(s.spot));
          }
          if (out.dim(l)) {
            if (s.i >= 2) add(m1, cc.offset(l, CylSlot::a, s.i - 1), col, id);
            add(m1, cc.offset(l, CylSlot::b, s.i), col, sgn(s.i) * a.d1_at(s.spot));
            if (s.i == 1) {
              add(m1, cc.offset(l, CylSlot::beta, 0), col, -f.at(s.spot));
              add(m1, cc.offset(l, CylSlot::gamma, 0), col, g.at(s.spot));
            }
          }
          break;
        }
      }
    }
    if (out.dim(u)) out.set_d0(x, m0);
    if (out.dim(l)) out.set_d1(x, m1);
  }
  return out;
}

// Cyl_r(A) = Cyl_r(1_A, 1_A), whose e_- and e_+ slots are the beta and gamma slots.
template <class K>
Bicomplex<K> cylinder(const Bicomplex<K>& a, int r) {
  return double_cylinder(identity(a), identity(a), r);
}

namespace detail {

// Inclusion of B (kind beta) or C (kind gamma) into Cyl_r(f,g).
template <class K>
BicomplexMorphism<K> cyl_end(const BicomplexMorphism<K>& f, const BicomplexMorphism<K>& g, int r, CylSlot::Kind kind,
                             const Bicomplex<K>& out) {
  detail::CylCoords<K> cc{f.source, f.target, g.target, r};
  const auto& end = kind == CylSlot::beta ? f.target : g.target;
  BicomplexMorphism<K> m{end, out, {}};
  for (auto x : end.support()) {
    Matrix<K> blk(out.dim(x), end.dim(x));
    blk.set_block(cc.offset(x, kind, 0), 0, Matrix<K>::identity(end.dim(x), end.field));
    m.set(x, blk);
  }
  return m;
}

}  // namespace detail

template <class K>
struct CylinderData {
  Bicomplex<K> cyl;
  BicomplexMorphism<K> i_minus, i_plus, p;
};

// Cyl_r(A) with i_-, i_+ and p = fold on the ends.
template <class K>
CylinderData<K> cylinder_data(const Bicomplex<K>& a, int r) {
  auto id = identity(a);
  auto c = double_cylinder(id, id, r);
  auto im = detail::cyl_end(id, id, r, CylSlot::beta, c);
  auto ip = detail::cyl_end(id, id, r, CylSlot::gamma, c);
  BicomplexMorphism<K> p{c, a, {}};
  for (auto x : a.support()) p.set(x, (im.at(x) + ip.at(x)).transpose());
  return {c, im, ip, p};
}

// The legs B -> Cyl_r(f,g) and C -> Cyl_r(f,g) of the closed form.
template <class K>
std::pair<BicomplexMorphism<K>, BicomplexMorphism<K>> double_cylinder_legs(const BicomplexMorphism<K>& f,
                                                                           const BicomplexMorphism<K>& g, int r) {
  auto c = double_cylinder(f, g, r);
  return {detail::cyl_end(f, g, r, CylSlot::beta, c), detail::cyl_end(f, g, r, CylSlot::gamma, c)};
}

template <class K>
struct CylinderPushout {
  Bicomplex<K> object;
  BicomplexMorphism<K> from_ends;      // B + C -> P
  BicomplexMorphism<K> from_cylinder;  // Cyl_r(A) -> P
  // Closed form -> pushout, matching the slots of the two descriptions.
  BicomplexMorphism<K> comparison;
};

// Cyl_r(f,g) as the pushout of B + C <- A + A -> Cyl_r(A).
template <class K>
CylinderPushout<K> double_cylinder_pushout(const BicomplexMorphism<K>& f, const BicomplexMorphism<K>& g, int r) {
  const auto& a = f.source;
  auto cd = cylinder_data(a, r);
  auto ends = sum_map(f, g);
  auto i = copair(cd.i_minus, cd.i_plus);
  auto [from_cyl, from_ends] = pushout(i, ends);
  auto closed = double_cylinder(f, g, r);
  detail::CylCoords<K> cc_closed{a, f.target, g.target, r};
  detail::CylCoords<K> cc_cyl{a, a, a, r};
  const auto& bc = from_ends.source;
  BicomplexMorphism<K> cmp{closed, from_cyl.target, {}};
  for (auto x : closed.support()) {
    const auto& tgt = from_cyl.target;
    if (!tgt.dim(x)) continue;
    Matrix<K> m(tgt.dim(x), closed.dim(x));
    for (auto& s : cyl_slots(x, r)) {
      const std::size_t n = cc_closed.size(s);
      if (!n) continue;
      const std::size_t col = cc_closed.offset(x, s.kind, s.i);
      Matrix<K> img;
      if (s.kind == CylSlot::beta || s.kind == CylSlot::gamma) {
        // the end summand inside B + C
        Matrix<K> inc(bc.dim(x), n);
        inc.set_block(s.kind == CylSlot::beta ? 0 : f.target.dim(x), 0, Matrix<K>::identity(n, a.field));
        img = from_ends.at(x) * inc;
      } else {
        Matrix<K> inc(cd.cyl.dim(x), n);
        inc.set_block(cc_cyl.offset(x, s.kind, s.i), 0, Matrix<K>::identity(n, a.field));
        img = from_cyl.at(x) * inc;
      }
      m.set_block(0, col, img);
    }
    cmp.set(x, m);
  }
  return {from_cyl.target, from_ends, from_cyl, cmp};
}

// The mapping r-cone Cyl_r(0, f) where 0: A -> 0.
template <class K>
Bicomplex<K> mapping_cone(const BicomplexMorphism<K>& f, int r) {
  Bicomplex<K> zero{f.source.field, {}, {}, {}};
  return double_cylinder(zero_morphism(f.source, zero), f, r);
}

// C_r(A) = Cyl_r(0, 1_A).
template <class K>
Bicomplex<K> cone(const Bicomplex<K>& a, int r) {
  return mapping_cone(identity(a), r);
}

// The isomorphism Cyl_r(X) -> Cyl_r (x) X matching slots with generators.
template <class K>
BicomplexMorphism<K> cylinder_tensor_iso(const Bicomplex<K>& x, int r) {
  auto c = cyl<K>(r, x.field);
  auto closed = cylinder(x, r);
  auto t = tensor(c, x);
  auto lay = tensor_layout(c, x);
  detail::CylCoords<K> cc{x, x, x, r};
  BicomplexMorphism<K> m{closed, t, {}};
  for (auto at : closed.support()) {
    Matrix<K> perm(t.dim(at), closed.dim(at));
    for (auto& s : cyl_slots(at, r)) {
      const std::size_t n = cc.size(s);
      if (!n) continue;
      // the generator of Cyl_r carried by this slot and its index at its spot
      Bidegree g;
      std::size_t idx = 0;
      switch (s.kind) {
        case CylSlot::beta: g = {0, 0}; break;
        case CylSlot::gamma: g = {0, 0}; idx = 1; break;
        case CylSlot::a: g = r == 0 ? Bidegree{0, -1} : Bidegree{s.i, s.i}; break;
        case CylSlot::b: g = {s.i, s.i - 1}; break;
      }
      const std::size_t base = lay.offset(at, g) + idx * n;
      const std::size_t col = cc.offset(at, s.kind, s.i);
      for (std::size_t k = 0; k < n; ++k) perm(base + k, col + k) = one<K>(x.field);
    }
    m.set(at, perm);
  }
  return m;
}

// ---------------------------------------------------------------------------
// suspension, phi_r, psi_r

// s_r A = R e_{r,r-1} (x) A: spots move by (r, r-1), d0 picks up (-1)^{r-1}
// and d1 picks up (-1)^r. For r = 0 the generator sits at (0,-1).
template <class K>
Bicomplex<K> suspend(const Bicomplex<K>& a, int r, int power = 1) {
  const Bidegree shift{power * r, power * (r - 1)};
  const K s0 = from_int<K>((r - 1) % 2 ? -1 : 1, a.field);
  const K s1 = from_int<K>(r % 2 ? -1 : 1, a.field);
  Bicomplex<K> s{a.field, {}, {}, {}};
  auto mv = [&](Bidegree b) { return Bidegree{b.p + shift.p, b.q + shift.q}; };
  for (auto b : a.support()) s.set_dim(mv(b), a.dim(b));
  for (auto& [b, m] : a.d0) s.set_d0(mv(b), s0 * m);
  for (auto& [b, m] : a.d1) s.set_d1(mv(b), s1 * m);
  return s;
}

// s_r^{-1} applied to a morphism: same blocks, spots moved back.
template <class K>
BicomplexMorphism<K> desuspend(const BicomplexMorphism<K>& f, int r) {
  BicomplexMorphism<K> g{suspend(f.source, r, -1), suspend(f.target, r, -1), {}};
  for (auto& [b, m] : f.blocks) g.set({b.p - r, b.q - r + 1}, m);
  return g;
}

// phi_r: C_r(A) -> s_r A, the projection onto the b_r slot (the a slot when r = 0).
template <class K>
BicomplexMorphism<K> cone_phi(const Bicomplex<K>& a, int r) {
  auto c = cone(a, r);
  auto s = suspend(a, r);
  Bicomplex<K> zero{a.field, {}, {}, {}};
  detail::CylCoords<K> cc{a, zero, a, r};
  BicomplexMorphism<K> m{c, s, {}};
  for (auto x : s.support()) {
    Matrix<K> blk(s.dim(x), c.dim(x));
    const auto kind = r == 0 ? CylSlot::a : CylSlot::b;
    blk.set_block(0, cc.offset(x, kind, r == 0 ? 0 : r), Matrix<K>::identity(s.dim(x), a.field));
    m.set(x, blk);
  }
  return m;
}

// psi_r = s_r^{-1} phi_r: s_r^{-1} C_r(A) -> A.
template <class K>
BicomplexMorphism<K> cone_psi(const Bicomplex<K>& a, int r) {
  auto psi = desuspend(cone_phi(a, r), r);
  psi.target = a;
  return psi;
}

// ---------------------------------------------------------------------------
// r-homotopies

// h: Cyl_r(A) -> B is a morphism with h i_- = f and h i_+ = g.
template <class K>
bool check_r_homotopy(const BicomplexMorphism<K>& h, const BicomplexMorphism<K>& f, const BicomplexMorphism<K>& g,
                      int r) {
  const auto& a = f.source;
  auto cd = cylinder_data(a, r);
  if (!(h.source == cd.cyl) || !(h.target == f.target) || !(g.source == a) || !(g.target == f.target)) return false;
  if (!h.commutes()) return false;
  auto hm = compose(h, cd.i_minus), hp = compose(h, cd.i_plus);
  return hm.blocks == f.blocks && hp.blocks == g.blocks;
}

// E_{r+1}(f) = E_{r+1}(g) as matrices, after checking h.
template <class K>
bool page_equality_under_homotopy(const BicomplexMorphism<K>& h, const BicomplexMorphism<K>& f,
                                  const BicomplexMorphism<K>& g, int r) {
  if (!check_r_homotopy(h, f, g, r)) return false;
  auto ef = induced_page_map_direct(f, r + 1), eg = induced_page_map_direct(g, r + 1);
  for (auto b : ef.support())
    if (!(ef.at(b) == eg.at(b))) return false;
  return true;
}

// A bigraded map of fixed bidegree, keyed by source spot.
template <class K>
struct GradedMap {
  Bidegree degree;
  std::map<Bidegree, Matrix<K>> blocks;

  Matrix<K> at(Bidegree s, std::size_t rows, std::size_t cols) const {
    auto it = blocks.find(s);
    return it == blocks.end() ? Matrix<K>(rows, cols) : it->second;
  }
};

template <class K>
struct HomotopyFamily {
  int r = 0;
  std::vector<GradedMap<K>> h;  // h[i-1] = h_i of bidegree (i, i-1); for r = 0 one map of bidegree (0,-1)
  bool identities_hold = false;
};

// Extracts h_i from the b_i slots of h (the a slot when r = 0) and checks
// the identity system for an r-homotopy.
template <class K>
HomotopyFamily<K> unpack_homotopy(const BicomplexMorphism<K>& h, const BicomplexMorphism<K>& f,
                                  const BicomplexMorphism<K>& g, int r) {
  using B = Bicomplex<K>;
  const auto& a = f.source;
  const auto& b = f.target;
  detail::CylCoords<K> cc{a, a, a, r};
  HomotopyFamily<K> fam{r, {}, false};
  const int count = r == 0 ? 1 : r;
  for (int i = 1; i <= count; ++i) {
    GradedMap<K> m{r == 0 ? Bidegree{0, -1} : Bidegree{i, i - 1}, {}};
    const auto kind = r == 0 ? CylSlot::a : CylSlot::b;
    const int idx = r == 0 ? 0 : i;
    for (auto y : a.support()) {
      const Bidegree at{y.p + m.degree.p, y.q + m.degree.q};
      if (!b.dim(at)) continue;
      m.blocks[y] = h.at(at).block(0, cc.offset(at, kind, idx), b.dim(at), a.dim(y));
    }
    fam.h.push_back(std::move(m));
  }
  auto apply = [&](const GradedMap<K>& m, Bidegree y) {
    const Bidegree t{y.p + m.degree.p, y.q + m.degree.q};
    return m.at(y, b.dim(t), a.dim(y));
  };
  auto shifted = [](Bidegree y, Bidegree d) { return Bidegree{y.p + d.p, y.q + d.q}; };
  auto sgn = [&](int e) { return from_int<K>(e % 2 ? -1 : 1, a.field); };
  bool ok = true;
  // all identities are checked on every source spot of A together with the
  // spots feeding into it, so that h d terms are not missed
  std::set<Bidegree> sources;
  for (auto y : a.support()) {
    sources.insert(y);
    sources.insert({y.p, y.q - 1});
    sources.insert({y.p + 1, y.q});
  }
  for (auto y : sources) {
    if (r == 0) {
      const auto& h0 = fam.h[0];
      // d0 h + h d0 = g - f and -d1 h + h d1 = 0
      Matrix<K> lhs = b.d0_at(shifted(y, h0.degree)) * apply(h0, y) + apply(h0, B::up(y)) * a.d0_at(y);
      if (!(lhs == g.at(y) - f.at(y))) ok = false;
      Matrix<K> lhs1 = apply(h0, B::left(y)) * a.d1_at(y) - b.d1_at(shifted(y, h0.degree)) * apply(h0, y);
      if (!lhs1.is_zero()) ok = false;
      continue;
    }
    for (int i = 1; i < r; ++i) {
      const auto& hi = fam.h[i - 1];
      const auto& hn = fam.h[i];
      Matrix<K> lhs = b.d1_at(shifted(y, hn.degree)) * apply(hn, y) + sgn(i) * apply(hn, B::left(y)) * a.d1_at(y);
      Matrix<K> rhs = b.d0_at(shifted(y, hi.degree)) * apply(hi, y) + sgn(i) * apply(hi, B::up(y)) * a.d0_at(y);
      if (!(lhs == rhs)) ok = false;
    }
    const auto& hr = fam.h[r - 1];
    Matrix<K> top = sgn(r) * b.d0_at(shifted(y, hr.degree)) * apply(hr, y) + apply(hr, B::up(y)) * a.d0_at(y);
    if (!top.is_zero()) ok = false;
    const auto& h1 = fam.h[0];
    Matrix<K> bottom = b.d1_at(shifted(y, h1.degree)) * apply(h1, y) + apply(h1, B::left(y)) * a.d1_at(y);
    if (!(bottom == g.at(y) - f.at(y))) ok = false;
  }
  fam.identities_hold = ok;
  return fam;
}

// ---------------------------------------------------------------------------
// the contraction of the r-cone

// S_r = C_r(R^{0,0}) in generator form: ZW_r(r,r-1) for r >= 1, and for
// r = 0 the pair R^{0,-1} -> R^{0,0}.
template <class K>
Bicomplex<K> cone_unit(int r, const FieldSpec& f) {
  if (r >= 1) return gen_ZW<K>(r, r, r - 1, f);
  Bicomplex<K> s{f, {}, {}, {}};
  s.set_dim({0, -1}, 1);
  s.set_dim({0, 0}, 1);
  detail::put_d0(s, {0, -1});
  return s;
}

// H: Cyl_r (x) S_r -> S_r on generators, an r-homotopy from 0 to the identity.
template <class K>
BicomplexMorphism<K> cone_unit_contraction(int r, const FieldSpec& f) {
  auto c = cyl<K>(r, f);
  auto s = cone_unit<K>(r, f);
  auto src = tensor(c, s);
  auto lay = tensor_layout(c, s);
  BicomplexMorphism<K> h{src, s, {}};
  // generators: a Cyl_r generator is (spot, index); S_r has rank one spots
  auto put = [&](Bidegree cg, std::size_t ci, Bidegree sg, Bidegree target, long coeff) {
    if (!s.dim(target) || !s.dim(sg) || !c.dim(cg)) return;
    const Bidegree at{cg.p + sg.p, cg.q + sg.q};
    if (!(at == target)) throw invariant_error("contraction: bidegree mismatch");
    Matrix<K> m = h.at(at);
    m(0, lay.offset(at, cg) + ci) = from_int<K>(coeff, f);
    h.set(at, m);
  };
  // e_+ (x) beta = beta
  for (auto sg : s.support()) put({0, 0}, 1, sg, sg, 1);
  if (r == 0) {
    // e' (x) beta_{0,0} = beta_{0,-1}
    put({0, -1}, 0, {0, 0}, {0, -1}, 1);
    return h;
  }
  // beta_{i,i} for 0 <= i < r and beta_{i,i-1} for 1 <= i <= r
  for (int k = 0; k < r; ++k)
    for (int i = 0; i < r; ++i)
      if (i + k + 1 <= r) {
        // e_{k+1,k} (x) beta_{i,i} = beta_{i+k+1,i+k}
        put({k + 1, k}, 0, {i, i}, {i + k + 1, i + k}, 1);
        // e_{k,k} (x) beta_{i+1,i} = (-1)^k beta_{i+k+1,i+k}
        if (k >= 1) put({k, k}, 0, {i + 1, i}, {i + k + 1, i + k}, k % 2 ? -1 : 1);
      }
  for (int k = 1; k < r; ++k)
    for (int i = 0; i < r; ++i)
      if (i + k <= r - 1) put({k, k}, 0, {i, i}, {i + k, i + k}, 1);
  return h;
}

template <class K>
struct Contraction {
  Bicomplex<K> cone;           // S_r (x) A
  BicomplexMorphism<K> h;      // Cyl_r(cone) -> cone, closed-form source
};

// The contraction of C_r(A) = S_r (x) A: (H (x) 1_A) composed with the
// associator and the slot/generator identification of Cyl_r(C_r(A)).
template <class K>
Contraction<K> contraction(const Bicomplex<K>& a, int r) {
  const auto& f = a.field;
  auto s = cone_unit<K>(r, f);
  auto c = cyl<K>(r, f);
  auto sa = tensor(s, a);
  auto hs = cone_unit_contraction<K>(r, f);
  auto ha = tensor(hs, identity(a));                 // (Cyl (x) S) (x) A -> S (x) A
  auto assoc = associator(c, s, a);                  // (Cyl (x) S) (x) A -> Cyl (x) (S (x) A)
  BicomplexMorphism<K> inv{assoc.target, assoc.source, {}};
  for (auto& [b, m] : assoc.blocks) inv.set(b, m.transpose());
  auto iso = cylinder_tensor_iso(sa, r);             // Cyl_r(S (x) A) -> Cyl (x) (S (x) A)
  auto h = compose(ha, compose(inv, iso));
  return {sa, h};
}

}  // namespace specseq
