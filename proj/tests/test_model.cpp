#include <catch_amalgamated.hpp>

#include <random>

#include "specseq/model.hpp"
#include "specseq/random.hpp"

using namespace specseq;

namespace {

const FieldSpec F2 = FieldSpec::prime(2);
const FieldSpec F3 = FieldSpec::prime(3);

const Structure kFiltered[] = {Structure::A, Structure::B, Structure::C};
const Structure kBi[] = {Structure::Ap, Structure::Bp};

}  // namespace

TEST_CASE("structure names round-trip", "[model]") {
  for (auto s : {Structure::A, Structure::B, Structure::C, Structure::Ap, Structure::Bp})
    CHECK(parse_structure(structure_name(s)) == s);
  CHECK_THROWS_AS(parse_structure("Dr"), parameter_error);
}

TEST_CASE("classifiers reject the wrong category", "[model]") {
  auto z = gen_Z<Fp>(0, 0, 1, F2);
  auto d = gen_D0<Fp>(0, 0, F2);
  CHECK_THROWS_AS(classify_weq(identity(z), {Structure::Ap, 1}), category_error);
  CHECK_THROWS_AS(classify_fib(identity(d), {Structure::C, 1}), category_error);
}

TEST_CASE("identities are trivial fibrations in every structure", "[model]") {
  std::mt19937_64 rng(11);
  for (int r = 0; r <= 3; ++r) {
    for (int t = 0; t < 5; ++t) {
      auto a = random_filtered<Fp>(rng, {}, F3);
      for (auto s : kFiltered) CHECK(classify_trivial_fib(identity(a), {s, r}));
      auto b = random_bicomplex<Fp>(rng, {}, F3);
      for (auto s : kBi) CHECK(classify_trivial_fib(identity(b), {s, r}));
    }
  }
}

TEST_CASE("solve_lift returns a lift or proves there is none", "[model]") {
  // 0 -> Z against Z -> 0: the zero map is a lift
  auto z = gen_Z<Fp>(0, 0, 1, F3);
  FilteredComplex<Fp> zero{F3, {}, {}};
  auto i = zero_morphism(zero, z);
  auto p = zero_morphism(z, zero);
  auto h = solve_lift(LiftingProblem<FilteredMorphism<Fp>>{i, p, zero_morphism(zero, z), zero_morphism(z, zero)});
  REQUIRE(h);
  h->validate();

  // phi against itself with identity legs: a lift would invert phi
  auto phi = gen_phi<Fp>(0, 0, 1, F3);
  auto lift = solve_lift(LiftingProblem<FilteredMorphism<Fp>>{phi, phi, identity(phi.source), identity(phi.target)});
  CHECK_FALSE(lift);

  // a square that does not commute is rejected
  auto bad = LiftingProblem<FilteredMorphism<Fp>>{phi, phi, zero_morphism(phi.source, phi.source),
                                                  identity(phi.target)};
  CHECK_THROWS_AS(solve_lift(bad), invariant_error);
  auto mismatched = LiftingProblem<FilteredMorphism<Fp>>{phi, phi, identity(phi.target), identity(phi.target)};
  CHECK_THROWS_AS(solve_lift(mismatched), endpoint_error);
}

TEST_CASE("lifts satisfy both triangles", "[model]") {
  std::mt19937_64 rng(5);
  int found = 0;
  for (int t = 0; t < 40; ++t) {
    auto f = random_filtered_morphism<Fp>(rng, {}, F3);
    auto gens = generators<Fp>(GenSet::J, 1, filtered_window(f, 1), F3);
    for (auto& g : gens) {
      for (auto& [u, v] : square_basis(g.map, f)) {
        auto h = solve_lift(LiftingProblem<FilteredMorphism<Fp>>{g.map, f, u, v});
        if (!h) continue;
        ++found;
        h->validate();
        for (int n : g.map.source.support())
          if (f.source.dim(n)) CHECK(h->at(n) * g.map.at(n) == u.at(n));
        for (int n : g.map.target.support())
          if (f.target.dim(n)) CHECK(f.at(n) * h->at(n) == v.at(n));
      }
    }
  }
  CHECK(found > 0);
}

TEST_CASE("the M_r projection is an A_r fibration", "[model]") {
  std::mt19937_64 rng(3);
  for (int r = 0; r <= 2; ++r)
    for (int t = 0; t < 6; ++t) {
      auto a = random_filtered<Fp>(rng, {}, F3);
      auto pi = m_r_projection(a, r);
      // M_r(A) is r-contractible, so pi is a weak equivalence iff E_{r+1}(A) = 0
      CHECK(classify_fib(pi, {Structure::A, r}));
      CHECK(classify_weq(pi, {Structure::A, r}) == page(a, r + 1).page.dims.empty());
      auto rep = check_generator_characterizations<Fp>(pi, {Structure::A, r});
      INFO(rep.detail);
      CHECK(rep.passed);
    }
}

TEST_CASE("psi_r is a fibration in the bicomplex structures", "[model]") {
  for (int r = 0; r <= 2; ++r) {
    auto a = gen_D0<Fp>(0, 0, F3);
    auto psi = cone_psi(a, r);
    CHECK(classify_fib(psi, {Structure::Bp, r}));
    auto rep = check_generator_characterizations<Fp>(psi, {Structure::Bp, r});
    INFO(rep.detail);
    CHECK(rep.passed);
  }
}

TEST_CASE("generator characterizations on random filtered morphisms", "[model]") {
  std::mt19937_64 rng(17);
  int yes = 0, no = 0;
  for (int r = 0; r <= 2; ++r)
    for (auto s : kFiltered) {
      for (int t = 0; t < 12; ++t) {
        auto f = random_filtered_morphism<Fp>(rng, {}, F2);
        auto rep = check_generator_characterizations<Fp>(f, {s, r});
        INFO(structure_name(s) << " r=" << r << ": " << rep.detail);
        CHECK(rep.passed);
        (classify_fib(f, {s, r}) ? yes : no)++;
      }
    }
  CHECK(yes > 0);
  CHECK(no > 0);
}

TEST_CASE("generator characterizations on random bicomplex morphisms", "[model]") {
  std::mt19937_64 rng(23);
  for (int r = 0; r <= 2; ++r)
    for (auto s : kBi)
      for (int t = 0; t < 10; ++t) {
        auto f = random_bicomplex_morphism<Fp>(rng, {}, F2);
        auto rep = check_generator_characterizations<Fp>(f, {s, r});
        INFO(structure_name(s) << " r=" << r << ": " << rep.detail);
        CHECK(rep.passed);
      }
}

TEST_CASE("decalage and shift transfer the structures", "[model]") {
  std::mt19937_64 rng(29);
  for (int l = 0; l <= 2; ++l)
    for (int r = 0; r <= 2; ++r)
      for (int t = 0; t < 8; ++t) {
        auto f = random_filtered_morphism<Fp>(rng, {}, F3);
        auto rep = check_decalage_quillen(f, l, r);
        INFO(rep.detail);
        CHECK(rep.passed);
        auto base = random_filtered<Fp>(rng, {}, F3);
        auto b = random_filtered<Fp>(rng, {}, F3);
        auto g = random_hom(rng, shift(base, l), b);
        auto rep2 = check_decalage_quillen(g, l, r, &base);
        INFO(rep2.detail);
        CHECK(rep2.passed);
      }
}
