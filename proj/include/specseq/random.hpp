#pragma once

#include <random>
#include <vector>

#include "specseq/cylinder.hpp"
#include "specseq/filtered_generators.hpp"

namespace specseq {

template <class K>
Matrix<K> random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, const FieldSpec& f) {
  Matrix<K> m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = random_scalar<K>(rng, f);
  return m;
}

template <class K>
Matrix<K> random_invertible(std::mt19937_64& rng, std::size_t n, const FieldSpec& f) {
  for (;;) {
    auto m = random_matrix<K>(rng, n, n, f);
    if (rank(m) == n) return m;
  }
}

inline int uniform(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

// Knobs for random filtered complexes: generator positions are drawn from the
// window, stages from [0, max_stage].
struct FilteredShape {
  int p_min = -1, p_max = 1;
  int n_min = 0, n_max = 1;
  int max_stage = 2;
  int max_pieces = 3;
};

// A random summand: a generator Z_k or B_k, a lone line, or occasionally M_k
// of a generator.
template <class K>
FilteredComplex<K> random_piece(std::mt19937_64& rng, const FilteredShape& s, const FieldSpec& f) {
  const int p = uniform(rng, s.p_min, s.p_max);
  const int n = uniform(rng, s.n_min, s.n_max);
  const int k = uniform(rng, 0, s.max_stage);
  switch (uniform(rng, 0, 5)) {
    case 0:
    case 1: return gen_Z<K>(p, n, k, f);
    case 2: return gen_B<K>(p, n, std::max(k, 1), f);
    case 3: {
      FilteredComplex<K> a{f, {}, {}};
      a.set_degree(n, Matrix<K>::identity(1, f), {p});
      return a;
    }
    case 4: return m_r(gen_Z<K>(p, n, std::max(0, k - 1), f), k);
    default: {
      // a line with weight p mapping into a line of lower weight
      FilteredComplex<K> a{f, {}, {}};
      a.set_degree(n, Matrix<K>::identity(1, f), {p});
      a.set_degree(n + 1, Matrix<K>::identity(1, f), {p - uniform(rng, 0, 1)});
      a.set_diff(n, Matrix<K>::identity(1, f));
      return a;
    }
  }
}

// Random coordinate change in every degree.
template <class K>
FilteredComplex<K> scramble(std::mt19937_64& rng, const FilteredComplex<K>& a) {
  std::map<int, Matrix<K>> g;
  for (int n : a.support()) g[n] = random_invertible<K>(rng, a.dim(n), a.field);
  return transport(a, g);
}

template <class K>
FilteredComplex<K> random_filtered(std::mt19937_64& rng, const FilteredShape& s, const FieldSpec& f) {
  FilteredComplex<K> a{f, {}, {}};
  const int pieces = uniform(rng, 1, s.max_pieces);
  for (int k = 0; k < pieces; ++k) a = direct_sum(a, random_piece<K>(rng, s, f));
  return scramble(rng, a);
}

// A random element of Hom(A, B): one random coefficient per basis element,
// shared across degrees so the result is a chain map.
template <class K>
FilteredMorphism<K> random_hom(std::mt19937_64& rng, const FilteredComplex<K>& a, const FilteredComplex<K>& b) {
  auto basis = hom_basis(a, b);
  FilteredMorphism<K> f = zero_morphism(a, b);
  for (auto& h : basis) {
    const K c = random_scalar<K>(rng, a.field);
    for (int n : a.support())
      if (b.dim(n)) f.set(n, f.at(n) + c * h.at(n));
  }
  return f;
}

// Random morphisms mixing generic Hom elements with maps built to be weak
// equivalences or surjections, so both verdicts of a classifier are exercised.
template <class K>
FilteredMorphism<K> random_filtered_morphism(std::mt19937_64& rng, const FilteredShape& s, const FieldSpec& f) {
  switch (uniform(rng, 0, 4)) {
    case 0: {
      // (g, pi_1): X + M_k(B) -> B with g random
      auto b = random_filtered<K>(rng, s, f);
      auto x = random_filtered<K>(rng, s, f);
      const int k = uniform(rng, 0, s.max_stage);
      auto g = random_hom(rng, x, b);
      return copair(g, m_r_projection(b, k));
    }
    case 1: {
      // A + M_k(C) -> A, the projection onto the first summand
      auto a = random_filtered<K>(rng, s, f);
      auto c = random_filtered<K>(rng, s, f);
      auto m = m_r(c, uniform(rng, 0, s.max_stage));
      return projection_first(direct_sum(a, m), a);
    }
    case 2: {
      // a scrambled isomorphism composed with a generic endomorphism
      auto a = random_filtered<K>(rng, s, f);
      std::map<int, Matrix<K>> g;
      for (int n : a.support()) g[n] = random_invertible<K>(rng, a.dim(n), f);
      auto b = transport(a, g);
      FilteredMorphism<K> iso{a, b, {}};
      for (int n : a.support()) iso.set(n, g[n]);
      return compose(iso, random_hom(rng, a, a));
    }
    default: {
      auto a = random_filtered<K>(rng, s, f);
      auto b = random_filtered<K>(rng, s, f);
      return random_hom(rng, a, b);
    }
  }
}

// Knobs for random bicomplexes: generator anchors are drawn from the window,
// stages from [0, max_stage].
struct BicomplexShape {
  int p_min = -1, p_max = 1;
  int q_min = -1, q_max = 1;
  int max_stage = 2;
  int max_pieces = 3;
};

// A random summand: a disc, a staircase, a witness boundary generator, a lone
// spot, or an r-cone of a lone spot.
template <class K>
Bicomplex<K> random_bi_piece(std::mt19937_64& rng, const BicomplexShape& s, const FieldSpec& f) {
  const int i = uniform(rng, s.p_min, s.p_max);
  const int j = uniform(rng, s.q_min, s.q_max);
  const int k = uniform(rng, 0, s.max_stage);
  switch (uniform(rng, 0, 6)) {
    case 0: return gen_D0<K>(i, j, f);
    case 1:
    case 2: return gen_ZW<K>(std::max(k, 1), i, j, f);
    case 3: return gen_BW<K>(std::max(k, 1), i, j, f);
    case 4: {
      Bicomplex<K> a{f, {}, {}, {}};
      a.set_dim({i, j}, 1);
      return a;
    }
    case 5: {
      Bicomplex<K> a{f, {}, {}, {}};
      a.set_dim({i, j}, 1);
      return cone(a, std::min(k, 1));
    }
    default: {
      // a lone arrow: d1 or d0 of rank one
      Bicomplex<K> a{f, {}, {}, {}};
      a.set_dim({i, j}, 1);
      if (uniform(rng, 0, 1)) {
        a.set_dim({i - 1, j}, 1);
        a.set_d1({i, j}, Matrix<K>::identity(1, f));
      } else {
        a.set_dim({i, j + 1}, 1);
        a.set_d0({i, j}, Matrix<K>::identity(1, f));
      }
      return a;
    }
  }
}

// Random coordinate change at every spot; returns the isomorphism A -> g.A.
template <class K>
BicomplexMorphism<K> scramble_iso(std::mt19937_64& rng, const Bicomplex<K>& a) {
  std::map<Bidegree, Matrix<K>> g;
  for (auto b : a.support()) g[b] = random_invertible<K>(rng, a.dim(b), a.field);
  return transport(a, g);
}

template <class K>
Bicomplex<K> random_bicomplex(std::mt19937_64& rng, const BicomplexShape& s, const FieldSpec& f) {
  Bicomplex<K> a{f, {}, {}, {}};
  const int pieces = uniform(rng, 1, s.max_pieces);
  for (int k = 0; k < pieces; ++k) a = direct_sum(a, random_bi_piece<K>(rng, s, f));
  return scramble_iso(rng, a).target;
}

// A random element of Hom(A, B) with one coefficient per basis element.
template <class K>
BicomplexMorphism<K> random_hom(std::mt19937_64& rng, const Bicomplex<K>& a, const Bicomplex<K>& b) {
  auto basis = hom_basis(a, b);
  auto f = zero_morphism(a, b);
  for (auto& h : basis) {
    const K c = random_scalar<K>(rng, a.field);
    for (auto x : a.support())
      if (b.dim(x)) f.set(x, f.at(x) + c * h.at(x));
  }
  return f;
}

// Random morphisms mixing generic Hom elements with surjections and
// isomorphisms, so both verdicts of a classifier are exercised.
template <class K>
BicomplexMorphism<K> random_bicomplex_morphism(std::mt19937_64& rng, const BicomplexShape& s, const FieldSpec& f) {
  switch (uniform(rng, 0, 4)) {
    case 0: {
      // A + X -> A, the projection onto the first summand
      auto a = random_bicomplex<K>(rng, s, f);
      auto x = random_bicomplex<K>(rng, s, f);
      return projection_first(direct_sum(a, x), a);
    }
    case 1: {
      // (g, psi_k): X + s_k^{-1} C_k(B) -> B
      auto b = random_bicomplex<K>(rng, s, f);
      auto x = random_bicomplex<K>(rng, s, f);
      return copair(random_hom(rng, x, b), cone_psi(b, uniform(rng, 0, 1)));
    }
    case 2: {
      auto iso = scramble_iso(rng, random_bicomplex<K>(rng, s, f));
      return compose(iso, random_hom(rng, iso.source, iso.source));
    }
    default: {
      auto a = random_bicomplex<K>(rng, s, f);
      auto b = random_bicomplex<K>(rng, s, f);
      return random_hom(rng, a, b);
    }
  }
}

}  // namespace specseq
