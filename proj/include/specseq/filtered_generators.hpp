#pragma once

#include <string>
#include <vector>

#include "specseq/filtered_ops.hpp"

namespace specseq {

namespace detail {

template <class K>
FilteredComplex<K> line(int n, int w, const FieldSpec& f) {
  FilteredComplex<K> a{f, {}, {}};
  a.set_degree(n, Matrix<K>::identity(1, f), {w});
  return a;
}

}  // namespace detail

// Z_r(p,n): R in degree n with weight p, R in degree n+1 with weight p-r, d = 1.
template <class K>
FilteredComplex<K> gen_Z(int p, int n, int r, const FieldSpec& f) {
  FilteredComplex<K> a{f, {}, {}};
  a.set_degree(n, Matrix<K>::identity(1, f), {p});
  a.set_degree(n + 1, Matrix<K>::identity(1, f), {p - r});
  a.set_diff(n, Matrix<K>::identity(1, f));
  return a;
}

// B_r(p,n) for r >= 1: degree n carries R_(p) + R_(p-1) (ambient order), fed
// from degree n-1 (weight p+r-1) on the first summand and feeding degree n+1
// (weight p-r) from the second.
template <class K>
FilteredComplex<K> gen_B(int p, int n, int r, const FieldSpec& f) {
  if (r < 1) throw parameter_error("B_r(p,n) requires r >= 1");
  FilteredComplex<K> a{f, {}, {}};
  a.set_degree(n - 1, Matrix<K>::identity(1, f), {p + r - 1});
  Matrix<K> swap(2, 2);
  swap(0, 1) = one<K>(f);
  swap(1, 0) = one<K>(f);
  a.set_degree(n, swap, {p - 1, p});
  a.set_degree(n + 1, Matrix<K>::identity(1, f), {p - r});
  Matrix<K> in(2, 1), out(1, 2);
  in(0, 0) = one<K>(f);
  out(0, 1) = one<K>(f);
  a.set_diff(n - 1, in);
  a.set_diff(n, out);
  return a;
}

// phi_r: Z_r(p,n) -> B_r(p,n), the diagonal in degree n.
template <class K>
FilteredMorphism<K> gen_phi(int p, int n, int r, const FieldSpec& f) {
  FilteredMorphism<K> m{gen_Z<K>(p, n, r, f), gen_B<K>(p, n, r, f), {}};
  Matrix<K> diag(2, 1);
  diag(0, 0) = one<K>(f);
  diag(1, 0) = one<K>(f);
  m.set(n, diag);
  m.set(n + 1, Matrix<K>::identity(1, f));
  return m;
}

// 0 -> Z_r(p,n).
template <class K>
FilteredMorphism<K> gen_j(int p, int n, int r, const FieldSpec& f) {
  return zero_morphism(FilteredComplex<K>{f, {}, {}}, gen_Z<K>(p, n, r, f));
}

// R^{n+1}_(p-r) -> Z_r(p,n), the inclusion of the top degree.
template <class K>
FilteredMorphism<K> gen_i2(int p, int n, int r, const FieldSpec& f) {
  FilteredMorphism<K> m{detail::line<K>(n + 1, p - r, f), gen_Z<K>(p, n, r, f), {}};
  m.set(n + 1, Matrix<K>::identity(1, f));
  return m;
}

enum class GenSet { I, J, I1, J1, I2, J2 };

inline GenSet parse_gen_set(const std::string& s) {
  if (s == "I") return GenSet::I;
  if (s == "J") return GenSet::J;
  if (s == "I'" || s == "I1") return GenSet::I1;
  if (s == "J'" || s == "J1") return GenSet::J1;
  if (s == "I''" || s == "I2") return GenSet::I2;
  if (s == "J''" || s == "J2") return GenSet::J2;
  throw parameter_error("unknown generating set '" + s + "'");
}

inline std::string gen_set_name(GenSet g) {
  switch (g) {
    case GenSet::I: return "I";
    case GenSet::J: return "J";
    case GenSet::I1: return "I'";
    case GenSet::J1: return "J'";
    case GenSet::I2: return "I''";
    case GenSet::J2: return "J''";
  }
  return "?";
}

struct GenWindow {
  int p_min = 0, p_max = 0, n_min = 0, n_max = 0;
};

template <class K>
struct Generator {
  std::string label;
  FilteredMorphism<K> map;
};

// The members of a generating set whose (p,n) lie in the window.
template <class K>
std::vector<Generator<K>> generators(GenSet set, int r, const GenWindow& w, const FieldSpec& f) {
  if (r < 0) throw parameter_error("stage must be non-negative");
  std::vector<Generator<K>> out;
  auto tag = [](const std::string& kind, int k, int p, int n) {
    return kind + "_" + std::to_string(k) + "(" + std::to_string(p) + "," + std::to_string(n) + ")";
  };
  auto each = [&](auto&& fn) {
    for (int n = w.n_min; n <= w.n_max; ++n)
      for (int p = w.p_min; p <= w.p_max; ++p) fn(p, n);
  };
  auto add_j = [&](int k) {
    each([&](int p, int n) { out.push_back({tag("j", k, p, n), gen_j<K>(p, n, k, f)}); });
  };
  auto add_phi = [&](int k) {
    each([&](int p, int n) { out.push_back({tag("phi", k, p, n), gen_phi<K>(p, n, k, f)}); });
  };
  switch (set) {
    case GenSet::I: add_phi(r + 1); break;
    case GenSet::J: add_j(r); break;
    case GenSet::I1:
      for (int k = 0; k < r; ++k) add_j(k);
      add_phi(r + 1);
      break;
    case GenSet::J1:
      for (int k = 0; k <= r; ++k) add_j(k);
      break;
    case GenSet::I2:
      each([&](int p, int n) { out.push_back({tag("incl", r, p, n), gen_i2<K>(p, n, r, f)}); });
      break;
    case GenSet::J2: add_j(r); break;
  }
  return out;
}

// Morphisms Z_r(p,n) -> A correspond to a in Z_r^{p,n+p}(A) via the image of
// the degree-n generator; returns the morphism for a.
template <class K>
FilteredMorphism<K> represent_cycle(const FilteredComplex<K>& a, int p, int n, int r, const Matrix<K>& v) {
  auto z = gen_Z<K>(p, n, r, a.field);
  FilteredMorphism<K> m{z, a, {}};
  if (a.dim(n)) m.set(n, v);
  if (a.dim(n + 1)) m.set(n + 1, a.diff(n) * v);
  return m;
}

}  // namespace specseq
