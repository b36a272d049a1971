#pragma once

#include <array>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "specseq/io.hpp"
#include "specseq/random.hpp"

namespace specseq {

// Property suites: each returns one report per generated instance. Instance i
// of a suite draws from its own generator seeded by (seed, suite, i), so any
// report can be replayed from its descriptor alone.

struct SuiteSizes {
  int instances = 20;
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "generators", "pages", "z-step", "surjection", "witness-step", "dec", "zr-er", "homotopy",
      "cone", "psi", "characterization", "kan", "closure", "fibrant", "cofibration"};
  return names;
}

namespace props {

inline const FieldSpec kF2 = FieldSpec::prime(2);
inline const FieldSpec kF3 = FieldSpec::prime(3);
inline const FieldSpec kF5 = FieldSpec::prime(5);
inline const FieldSpec kF101 = FieldSpec::prime(101);
inline const FieldSpec kQ = FieldSpec::rationals();

inline std::mt19937_64 instance_rng(std::uint64_t seed, const std::string& suite, int index) {
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a of the suite name
  for (unsigned char c : suite) h = (h ^ c) * 1099511628211ull;
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32),
                    static_cast<std::uint32_t>(index)};
  return std::mt19937_64(seq);
}

inline std::string describe(std::uint64_t seed, int index, const FieldSpec& f, const std::string& extra = "") {
  std::string s = "seed=" + std::to_string(seed) + " index=" + std::to_string(index) + " field=" + f.to_string();
  return extra.empty() ? s : s + " " + extra;
}

// Collects failed clauses of one instance.
struct Verdict {
  bool passed = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (ok) return;
    passed = false;
    detail += (detail.empty() ? "" : "; ") + what;
  }
};

template <class T>
CheckReport finish(const std::string& property, const std::string& instance, const Verdict& v, const T& witness) {
  CheckReport rep{property, instance, v.passed, v.passed ? "ok" : v.detail, ""};
  if (!v.passed) rep.payload = io::emit(witness);
  return rep;
}

// widest r for which pages of a bicomplex can still change
template <class K>
int stabilization_bound(const Bicomplex<K>& a) {
  auto s = a.support();
  if (s.empty()) return 0;
  int lo = s.front().p, hi = lo;
  for (auto b : s) {
    lo = std::min(lo, b.p);
    hi = std::max(hi, b.p);
  }
  return hi - lo + 1;
}

template <class K>
std::map<Bidegree, std::size_t> delta_ranks(const SpectralPage<K>& e) {
  std::map<Bidegree, std::size_t> out;
  for (auto& [b, d] : e.page.dims)
    if (e.page.dim(e.page.target(b))) out[b] = rank(e.page.delta_at(b));
  return out;
}

// ---------------------------------------------------------------------------
// instances, one function per property

// Pages of the representing bicomplexes, exact and seed independent.
template <class K>
CheckReport generator_pages(int r, int i, int j, const FieldSpec& f) {
  Verdict v;
  auto zw = gen_ZW<K>(r, i, j, f);
  auto e = page_direct(zw, r);
  const Bidegree top{i, j}, bottom{i - r, j + 1 - r};
  std::map<Bidegree, std::size_t> want{{top, 1}, {bottom, 1}};
  v.require(e.page.dims == want, "E_r(ZW_r) is not rank one at the two corners");
  v.require(e.page.dims == want && rank(e.page.delta_at(top)) == 1, "delta_r of ZW_r is not invertible");
  v.require(page_direct(zw, r + 1).page.dims.empty(), "E_{r+1}(ZW_r) != 0");
  v.require(page_direct(gen_BW<K>(r, i, j, f), r).page.dims.empty(), "E_r(BW_r) != 0");
  v.require(page_direct(gen_D0<K>(i, j, f), 1).page.dims.empty(), "E_1(D0) != 0");
  const std::string inst =
      "r=" + std::to_string(r) + " i=" + std::to_string(i) + " j=" + std::to_string(j) + " field=" + f.to_string();
  return finish("generator-pages", inst, v, zw);
}

template <class K>
std::vector<CheckReport> pages_instance(std::mt19937_64& rng, const FieldSpec& f, const std::string& inst) {
  auto a = random_bicomplex<K>(rng, {}, f);
  Verdict oracle, recursion;
  const int bound = stabilization_bound(a);
  for (int r = 0; r <= std::max(bound + 1, 5); ++r) {
    auto ed = page_direct(a, r);
    const std::string at = " at r=" + std::to_string(r);
    if (r <= bound + 1) {
      auto ew = page_via_witness(a, r);
      auto et = page_via_tot(a, r);
      oracle.require(ed.page.dims == ew.page.dims && ed.page.dims == et.page.dims, "page dims disagree" + at);
      oracle.require(delta_ranks(ed) == delta_ranks(ew) && delta_ranks(ed) == delta_ranks(et),
                     "delta ranks disagree" + at);
    }
    if (r <= 4) {
      recursion.require(page_direct(a, r + 1).page.dims == cohomology(ed.page).dims(),
                        "E_{r+1} != H(E_r)" + at);
      auto t = tot(a);
      recursion.require(page(t, r + 1).page.dims == cohomology(page(t, r).page).dims(),
                        "filtered E_{r+1} != H(E_r) on Tot" + at);
    }
  }
  return {finish("three-oracle", inst, oracle, a), finish("page-recursion", inst, recursion, a)};
}

template <class K>
CheckReport z_step_instance(std::mt19937_64& rng, const FieldSpec& f, const std::string& inst) {
  auto m = random_filtered_morphism<K>(rng, {}, f);
  Verdict v;
  for (int r = 0; r <= 3; ++r) {
    const bool zr = z_surjective(m, r);
    v.require((zr && z_surjective(m, r + 1)) == (zr && e_surjective(m, r + 1)),
              "Z_r,Z_{r+1} surjective differs from Z_r,E_{r+1} surjective at r=" + std::to_string(r));
  }
  return finish("z-step", inst, v, m);
}

template <class K>
CheckReport surjection_instance(std::mt19937_64& rng, const FieldSpec& f, const std::string& inst) {
  auto m = random_bicomplex_morphism<K>(rng, {}, f);
  Verdict v;
  v.require(zw_surjective(m, 0) == is_surjective(m), "ZW_0(f) surjective differs from f surjective");
  bool zw = true, z = true, e = true;
  for (int r = 0; r <= 3; ++r) {
    zw = zw && zw_surjective(m, r);
    z = z && z_surjective(m, r);
    e = e && e_surjective(m, r);
    v.require(zw == z && z == e, "ZW_k, Z_k, E_k surjectivity for k <= r disagree at r=" + std::to_string(r));
  }
  return finish("surjection", inst, v, m);
}

template <class K>
CheckReport witness_step_instance(std::mt19937_64& rng, const FieldSpec& f, const std::string& inst) {
  auto m = random_bicomplex_morphism<K>(rng, {}, f);
  Verdict v;
  const bool surj = is_surjective(m);
  for (int r = 1; r <= 3; ++r) {
    const bool prev = zw_surjective(m, r - 1);
    v.require((zw_surjective(m, r) && prev && surj) == (e_surjective(m, r) && prev && surj),
              "ZW_r vs E_r with ZW_{r-1}, f surjective at r=" + std::to_string(r));
  }
  return finish("witness-step", inst, v, m);
}

template <class K>
std::map<Bidegree, std::size_t> page_dims(const FilteredComplex<K>& a, int r) {
  return page(a, r).page.dims;
}

template <class K>
CheckReport dec_instance(std::mt19937_64& rng, const FieldSpec& f, const std::string& inst) {
  auto a = random_filtered<K>(rng, {}, f);
  Verdict v;
  const auto canon = io::emit(canonicalize(a));
  for (int l = 0; l <= 3; ++l) {
    const std::string at = " for l=" + std::to_string(l);
    v.require(io::emit(canonicalize(decalage(shift(a, l), l))) == canon, "Dec^l S^l A != A" + at);
    if (l == 0) continue;
    auto s = shift(a, l);
    auto d = decalage(a, l);
    for (int k = 0; k <= 3; ++k) {
      // E_{k+l}^{p,p+n}(S^l A) = E_k^{p+ln,p+(l+1)n}(A)
      auto es = page_dims(s, k + l);
      auto ea = page_dims(a, k);
      for (auto& [b, dim] : es) {
        const int n = b.q - b.p;
        v.require(ea[{b.p + l * n, b.p + (l + 1) * n}] == dim, "shift reindexing" + at);
      }
      for (auto& [b, dim] : ea) {
        const int n = b.q - b.p;
        v.require(es[{b.p - l * n, b.p - l * n + n}] == dim, "shift reindexing (converse)" + at);
      }
      if (k == 0) continue;
      // E_k^{p,p+n}(Dec^l A) = E_{k+l}^{p-ln,p-(l-1)n}(A) for k >= 1
      auto ed = page_dims(d, k);
      auto eal = page_dims(a, k + l);
      for (auto& [b, dim] : ed) {
        const int n = b.q - b.p;
        v.require(eal[{b.p - l * n, b.p - (l - 1) * n}] == dim, "decalage reindexing" + at);
      }
      for (auto& [b, dim] : eal) {
        const int n = b.q - b.p;
        v.require(ed[{b.p + l * n, b.p + l * n + n}] == dim, "decalage reindexing (converse)" + at);
      }
    }
  }
  return finish("dec", inst, v, a);
}

template <class K>
CheckReport zr_er_instance(std::mt19937_64& rng, const FieldSpec& f, const std::string& inst) {
  auto m = random_filtered_morphism<K>(rng, {}, f);
  Verdict v;
  for (int r = 0; r <= 3; ++r) {
    const bool w = is_zr_quiso(m, r), e = is_er_quiso(m, r);
    v.require(!w || e, "W_r not contained in E_r at r=" + std::to_string(r));
    v.require(!e || w, "E_r not contained in W_r at r=" + std::to_string(r));
  }
  return finish("zr-er", inst, v, m);
}

// Three homotopic pairs per instance: the ends of a map out of Cyl_r, a map
// out of C_r against its contraction, and the contraction of M_r.
template <class K>
CheckReport homotopy_instance(std::mt19937_64& rng, const FieldSpec& f, int r, const std::string& inst) {
  Verdict v;
  auto a = random_bicomplex<K>(rng, {}, f);
  auto b = random_bicomplex<K>(rng, {}, f);
  auto cd = cylinder_data(a, r);
  auto h = random_hom(rng, cd.cyl, b);
  auto f0 = compose(h, cd.i_minus), g0 = compose(h, cd.i_plus);
  v.require(check_r_homotopy(h, f0, g0, r), "map out of Cyl_r is not an r-homotopy");
  v.require(page_equality_under_homotopy(h, f0, g0, r), "cylinder pair differs on page r+1");
  auto k = contraction(random_bicomplex<K>(rng, {}, f), r);
  auto u = random_hom(rng, k.cone, b);
  v.require(page_equality_under_homotopy(compose(u, k.h), zero_morphism(k.cone, b), u, r),
            "u and 0 differ on page r+1 out of C_r");
  auto x = random_filtered<K>(rng, {}, f);
  auto mr = m_r(x, r);
  v.require(page_equality_under_homotopy(m_r_contraction(x, r), zero_morphism(mr, mr), identity(mr)),
            "contraction of M_r does not certify E_{r+1}(M_r) maps");
  return finish("homotopy-invariance", inst + " r=" + std::to_string(r), v, io::BicomplexHomotopyDoc<K>{r, f0, g0, h});
}

template <class K>
CheckReport cone_instance(std::mt19937_64& rng, const FieldSpec& f, int r, const std::string& inst) {
  Verdict v;
  auto a = random_bicomplex<K>(rng, {}, f);
  auto k = contraction(a, r);
  k.cone.validate();
  k.h.validate();
  auto zero = zero_morphism(k.cone, k.cone);
  auto id = identity(k.cone);
  v.require(check_r_homotopy(k.h, zero, id, r), "H is not an r-homotopy from 0 to 1");
  v.require(unpack_homotopy(k.h, zero, id, r).identities_hold, "unpacked homotopy identities fail");
  v.require(page_direct(k.cone, r + 1).page.dims.empty(), "E_{r+1}(C_r(A)) != 0");
  v.require(page_direct(cone(a, r), r + 1).page.dims.empty(), "E_{r+1} of the closed-form cone != 0");
  return finish("cone-contraction", inst + " r=" + std::to_string(r), v, a);
}

template <class K>
CheckReport psi_instance(std::mt19937_64& rng, const FieldSpec& f, const std::string& inst) {
  auto a = random_bicomplex<K>(rng, {}, f);
  Verdict v;
  for (int r = 0; r <= 3; ++r) {
    auto psi = cone_psi(a, r);
    for (int s = 0; s <= r; ++s)
      v.require(zw_surjective(psi, s), "ZW_" + std::to_string(s) + "(psi_" + std::to_string(r) + ") not surjective");
  }
  return finish("psi", inst, v, a);
}

template <class K, class M>
void characterize_all(const M& m, int r, std::initializer_list<Structure> ss, Verdict& v) {
  for (auto s : ss) {
    auto rep = check_generator_characterizations<K>(m, {s, r});
    v.require(rep.passed, structure_name(s) + ": " + rep.detail);
  }
}

template <class K>
std::vector<CheckReport> characterization_instance(std::mt19937_64& rng, const FieldSpec& f, int r,
                                                   const std::string& inst) {
  auto fm = random_filtered_morphism<K>(rng, {}, f);
  Verdict vf;
  characterize_all<K>(fm, r, {Structure::A, Structure::B, Structure::C}, vf);
  auto bm = random_bicomplex_morphism<K>(rng, {}, f);
  Verdict vb;
  characterize_all<K>(bm, r, {Structure::Ap, Structure::Bp}, vb);
  const std::string at = inst + " r=" + std::to_string(r);
  return {finish("characterization-filtered", at, vf, fm), finish("characterization-bicomplex", at, vb, bm)};
}

// Kan condition (4) on single pushouts and a two-step composite of J-generators,
// and condition (5) decided by lifting alone.
template <class K>
std::vector<CheckReport> kan_instance(std::mt19937_64& rng, const FieldSpec& f, int r, Structure s,
                                      const std::string& inst) {
  const std::string at = inst + " " + structure_name(s) + " r=" + std::to_string(r);
  const StructureId id{s, r};
  Verdict v4, v5;
  if (category_of(s) == Category::filtered) {
    auto x = random_filtered<K>(rng, {}, f);
    auto js = generating_sets<K>(id, GenWindow{-1, 1, -1, 1}, f).second;
    auto step = [&](const FilteredMorphism<K>& into) {
      auto& j = js[uniform(rng, 0, static_cast<int>(js.size()) - 1)];
      auto u = random_hom(rng, j.map.source, into.target);
      auto legs = pushout(j.map, u);
      v4.require(classify_weq(legs.second, id), "pushout of " + j.label + " is not a weak equivalence");
      return compose(legs.second, into);
    };
    auto composite = step(step(identity(x)));
    v4.require(classify_weq(composite, id), "composite of J-pushouts is not a weak equivalence");
    auto m = random_filtered_morphism<K>(rng, {}, f);
    auto [is, js2] = generating_sets<K>(id, filtered_window(m, r), f);
    const bool i_inj = !first_rlp_failure(m, is);
    const bool j_inj = !first_rlp_failure(m, js2);
    v5.require(i_inj == (classify_weq(m, id) && j_inj), "I-inj != W and J-inj");
    return {finish("kan-4", at, v4, composite), finish("kan-5", at, v5, m)};
  }
  auto x = random_bicomplex<K>(rng, {}, f);
  auto js = generating_sets<K>(id, BiWindow{-1, 1, -1, 1}, f).second;
  auto step = [&](const BicomplexMorphism<K>& into) {
    auto& j = js[uniform(rng, 0, static_cast<int>(js.size()) - 1)];
    auto u = random_hom(rng, j.map.source, into.target);
    auto legs = pushout(j.map, u);
    v4.require(classify_weq(legs.second, id), "pushout of " + j.label + " is not a weak equivalence");
    return compose(legs.second, into);
  };
  auto composite = step(step(identity(x)));
  v4.require(classify_weq(composite, id), "composite of J-pushouts is not a weak equivalence");
  auto m = random_bicomplex_morphism<K>(rng, {}, f);
  auto [is, js2] = generating_sets<K>(id, bicomplex_window(m, r), f);
  const bool i_inj = !first_rlp_failure(m, is);
  const bool j_inj = !first_rlp_failure(m, js2);
  v5.require(i_inj == (classify_weq(m, id) && j_inj), "I-inj != W and J-inj");
  return {finish("kan-4", at, v4, composite), finish("kan-5", at, v5, m)};
}

// Two-out-of-three for E_r on composable pairs and retract closure of weak
// equivalences and fibrations (f is a retract of f + h).
template <class K>
CheckReport closure_instance(std::mt19937_64& rng, const FieldSpec& f, int r, const std::string& inst) {
  Verdict v;
  auto m = random_filtered_morphism<K>(rng, {}, f);
  const auto& b = m.target;
  FilteredMorphism<K> g;
  switch (uniform(rng, 0, 2)) {
    case 0: {
      auto c = m_r(random_filtered<K>(rng, {}, f), uniform(rng, 0, 3));
      g = inclusion_first(b, direct_sum(b, c));
      break;
    }
    case 1: g = random_hom(rng, b, random_filtered<K>(rng, {}, f)); break;
    default: {
      std::map<int, Matrix<K>> t;
      for (int n : b.support()) t[n] = random_invertible<K>(rng, b.dim(n), f);
      auto c = transport(b, t);
      g = FilteredMorphism<K>{b, c, t};
    }
  }
  auto gf = compose(g, m);
  const bool wf = is_er_quiso(m, r), wg = is_er_quiso(g, r), wgf = is_er_quiso(gf, r);
  v.require(!(wf && wg) || wgf, "f, g in E_r but gf is not");
  v.require(!(wf && wgf) || wg, "f, gf in E_r but g is not");
  v.require(!(wg && wgf) || wf, "g, gf in E_r but f is not");
  auto h = uniform(rng, 0, 1) ? identity(random_filtered<K>(rng, {}, f)) : random_filtered_morphism<K>(rng, {}, f);
  auto big = sum_map(m, h);
  v.require(!is_er_quiso(big, r) || wf, "E_r is not closed under retracts");
  for (auto s : {Structure::A, Structure::B, Structure::C})
    v.require(!classify_fib(big, {s, r}) || classify_fib(m, {s, r}),
              "fibrations of " + structure_name(s) + " not closed under retracts");
  auto bm = random_bicomplex_morphism<K>(rng, {}, f);
  auto bh = random_bicomplex_morphism<K>(rng, {}, f);
  auto bbig = sum_map(bm, bh);
  v.require(!is_er_quiso(bbig, r) || is_er_quiso(bm, r), "bicomplex E_r is not closed under retracts");
  for (auto s : {Structure::Ap, Structure::Bp})
    v.require(!classify_fib(bbig, {s, r}) || classify_fib(bm, {s, r}),
              "fibrations of " + structure_name(s) + " not closed under retracts");
  return finish("closure", inst + " r=" + std::to_string(r), v, m);
}

template <class K>
CheckReport fibrant_instance(std::mt19937_64& rng, const FieldSpec& f, int r, const std::string& inst) {
  Verdict v;
  auto x = random_filtered<K>(rng, {}, f);
  auto tx = zero_morphism(x, FilteredComplex<K>{f, {}, {}});
  for (auto s : {Structure::A, Structure::B, Structure::C})
    v.require(classify_fib(tx, {s, r}), "A -> 0 is not a fibration in " + structure_name(s));
  auto y = random_bicomplex<K>(rng, {}, f);
  auto ty = zero_morphism(y, Bicomplex<K>{f, {}, {}, {}});
  for (auto s : {Structure::Ap, Structure::Bp})
    v.require(classify_fib(ty, {s, r}), "A -> 0 is not a fibration in " + structure_name(s));
  return finish("fibrant", inst + " r=" + std::to_string(r), v, x);
}

// Cofibrations are only known through their lifting property: a pushout of a
// generating cofibration must lift against sampled trivial fibrations.
template <class K>
CheckReport cofibration_instance(std::mt19937_64& rng, const FieldSpec& f, int r, const std::string& inst) {
  Verdict v;
  const StructureId id{Structure::A, r};
  auto is = generating_sets<K>(id, GenWindow{-1, 1, 0, 1}, f).first;
  auto& gen = is[uniform(rng, 0, static_cast<int>(is.size()) - 1)];
  auto x = random_filtered<K>(rng, {}, f);
  auto u = random_hom(rng, gen.map.source, x);
  auto cof = pushout(gen.map, u).second;
  // trivial fibrations A + M_k(C) -> A with k <= r, plus random maps that happen to be
  auto a = random_filtered<K>(rng, {}, f);
  auto c = random_filtered<K>(rng, {}, f);
  std::vector<FilteredMorphism<K>> ps{projection_first(direct_sum(a, m_r(c, uniform(rng, 0, r))), a)};
  for (int t = 0; t < 4; ++t) {
    auto p = random_filtered_morphism<K>(rng, {}, f);
    if (classify_trivial_fib(p, id)) ps.push_back(p);
  }
  for (auto& p : ps) {
    v.require(classify_trivial_fib(p, id), "sampled map is not a trivial fibration");
    v.require(has_rlp(p, cof), "pushout of " + gen.label + " fails to lift against a trivial fibration");
  }
  return finish("cofibration", inst + " r=" + std::to_string(r), v, cof);
}

template <class Fn>
void for_field(const FieldSpec& f, Fn&& fn) {
  if (f.kind == FieldKind::rationals) fn.template operator()<Rational>();
  else fn.template operator()<Fp>();
}

}  // namespace props

// Runs one suite ("full" runs all of them) and returns its reports in a
// deterministic order.
inline std::vector<CheckReport> run_property_suite(const std::string& suite, std::uint64_t seed,
                                                   const SuiteSizes& sizes = {}) {
  using namespace props;
  std::vector<CheckReport> out;
  if (suite == "full") {
    for (auto& name : suite_names()) {
      auto part = run_property_suite(name, seed, sizes);
      out.insert(out.end(), part.begin(), part.end());
    }
    return out;
  }
  if (std::find(suite_names().begin(), suite_names().end(), suite) == suite_names().end())
    throw parameter_error("unknown suite '" + suite + "'");
  if (suite == "generators") {
    for (int r = 1; r <= 4; ++r)
      for (int i = -1; i <= 1; ++i)
        for (int j = -1; j <= 1; ++j) {
          out.push_back(generator_pages<Rational>(r, i, j, kQ));
          out.push_back(generator_pages<Fp>(r, i, j, kF2));
        }
    return out;
  }
  static const std::array<FieldSpec, 4> mixed = {kF2, kF5, kF101, kQ};
  static const std::array<FieldSpec, 3> small = {kF2, kF3, kF5};
  static const Structure kan_structures[] = {Structure::A, Structure::B, Structure::C, Structure::Ap, Structure::Bp};
  for (int idx = 0; idx < sizes.instances; ++idx) {
    auto rng = instance_rng(seed, suite, idx);
    const bool heavy = suite == "characterization" || suite == "kan" || suite == "cofibration";
    const FieldSpec& f = heavy ? small[idx % small.size()] : mixed[idx % mixed.size()];
    const std::string inst = describe(seed, idx, f);
    const int r = idx % 4;
    for_field(f, [&]<class K>() {
      auto add = [&](auto&& x) {
        if constexpr (std::is_same_v<std::decay_t<decltype(x)>, CheckReport>) out.push_back(std::move(x));
        else out.insert(out.end(), x.begin(), x.end());
      };
      if (suite == "pages") add(pages_instance<K>(rng, f, inst));
      else if (suite == "z-step") add(z_step_instance<K>(rng, f, inst));
      else if (suite == "surjection") add(surjection_instance<K>(rng, f, inst));
      else if (suite == "witness-step") add(witness_step_instance<K>(rng, f, inst));
      else if (suite == "dec") add(dec_instance<K>(rng, f, inst));
      else if (suite == "zr-er") add(zr_er_instance<K>(rng, f, inst));
      else if (suite == "homotopy") add(homotopy_instance<K>(rng, f, r, inst));
      else if (suite == "cone") add(cone_instance<K>(rng, f, r, inst));
      else if (suite == "psi") add(psi_instance<K>(rng, f, inst));
      else if (suite == "characterization") add(characterization_instance<K>(rng, f, r, inst));
      else if (suite == "kan") add(kan_instance<K>(rng, f, r % 3, kan_structures[idx % 5], inst));
      else if (suite == "closure") add(closure_instance<K>(rng, f, r, inst));
      else if (suite == "fibrant") add(fibrant_instance<K>(rng, f, r, inst));
      else if (suite == "cofibration") add(cofibration_instance<K>(rng, f, r % 3, inst));
    });
  }
  return out;
}

}  // namespace specseq
