#include <catch_amalgamated.hpp>

#include <random>
#include <set>

#include "specseq/linear_system.hpp"
#include "specseq/subspace.hpp"

using namespace specseq;

namespace {

const FieldSpec Q = FieldSpec::rationals();

Matrix<Rational> q_matrix(std::initializer_list<std::initializer_list<long>> rows) {
  Matrix<Rational> m(rows.size(), rows.size() ? rows.begin()->size() : 0);
  std::size_t i = 0;
  for (auto& r : rows) {
    std::size_t j = 0;
    for (long v : r) m(i, j++) = Rational(v);
    ++i;
  }
  return m;
}

Matrix<Fp> fp_matrix(std::uint32_t p, std::initializer_list<std::initializer_list<long>> rows) {
  Matrix<Fp> m(rows.size(), rows.size() ? rows.begin()->size() : 0);
  std::size_t i = 0;
  for (auto& r : rows) {
    std::size_t j = 0;
    for (long v : r) m(i, j++) = Fp(v, p);
    ++i;
  }
  return m;
}

Matrix<Fp> random_fp(std::mt19937_64& rng, const FieldSpec& f, std::size_t r, std::size_t c) {
  Matrix<Fp> m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = random_scalar<Fp>(rng, f);
  return m;
}

// every vector of F_p^n, as columns
std::vector<Matrix<Fp>> all_vectors(std::uint32_t p, std::size_t n) {
  std::vector<Matrix<Fp>> out;
  std::size_t total = 1;
  for (std::size_t k = 0; k < n; ++k) total *= p;
  for (std::size_t code = 0; code < total; ++code) {
    Matrix<Fp> v(n, 1);
    std::size_t c = code;
    for (std::size_t k = 0; k < n; ++k) {
      v(k, 0) = Fp(static_cast<long>(c % p), p);
      c /= p;
    }
    out.push_back(v);
  }
  return out;
}

std::set<std::vector<std::uint32_t>> members(const Subspace<Fp>& s, std::uint32_t p) {
  std::set<std::vector<std::uint32_t>> out;
  const FieldSpec f = FieldSpec::prime(p);
  for (auto& v : all_vectors(p, s.ambient()))
    if (contains_vectors(s, v, f)) {
      std::vector<std::uint32_t> key;
      for (std::size_t k = 0; k < v.rows(); ++k) key.push_back(v(k, 0).residue());
      out.insert(key);
    }
  return out;
}

std::vector<std::uint32_t> key_of(const Matrix<Fp>& v) {
  std::vector<std::uint32_t> key;
  for (std::size_t k = 0; k < v.rows(); ++k) key.push_back(v(k, 0).residue());
  return key;
}

}  // namespace

TEST_CASE("rref of small matrices", "[linalg]") {
  auto id = Matrix<Rational>::identity(2, Q);
  auto e = rref(id);
  CHECK(e.form == id);
  CHECK(e.pivots == std::vector<std::size_t>{0, 1});

  auto z = rref(Matrix<Rational>(3, 2));
  CHECK(z.form.is_zero());
  CHECK(z.pivots.empty());

  auto h = rref(q_matrix({{2, 4}, {1, 2}}));
  CHECK(h.form == q_matrix({{1, 2}, {0, 0}}));
  CHECK(h.pivots == std::vector<std::size_t>{0});
}

TEST_CASE("kernel, image and solve", "[linalg]") {
  CHECK(kernel(Matrix<Rational>::identity(3, Q), Q).is_zero());
  CHECK(image(Matrix<Rational>(3, 2)).is_zero());

  auto x = solve(q_matrix({{1, 1}}), q_matrix({{3}}));
  REQUIRE(x);
  CHECK(*x == q_matrix({{3}, {0}}));

  CHECK_FALSE(solve(q_matrix({{1, 1}, {2, 2}}), q_matrix({{1}, {3}})));
  CHECK_THROWS_AS(solve(q_matrix({{1, 1}}), q_matrix({{1}, {2}})), usage_error);
  CHECK_THROWS_AS(q_matrix({{1, 2}}) * q_matrix({{1, 2}}), usage_error);
}

TEST_CASE("rationals stay exact", "[linalg]") {
  auto m = q_matrix({{3, 1}, {1, 3}});
  auto inv = inverse(m, Q);
  REQUIRE(inv);
  CHECK((*inv) * m == Matrix<Rational>::identity(2, Q));
  CHECK(format_scalar((*inv)(0, 0)) == "3/8");
  CHECK(format_scalar((*inv)(0, 1)) == "-1/8");
}

TEST_CASE("subspace set operations", "[linalg]") {
  const auto f2 = FieldSpec::prime(2);
  auto u = Subspace<Fp>::span(fp_matrix(2, {{1}, {1}}));
  auto v = Subspace<Fp>::span(fp_matrix(2, {{1}, {0}}));
  CHECK(intersect(u, v, f2).is_zero());
  CHECK(intersect(u, u, f2) == u);
  CHECK(sum(u, v).is_full());

  auto m = fp_matrix(2, {{1, 0, 1}, {0, 1, 1}});
  CHECK(preimage(m, Subspace<Fp>::full(2, f2), f2).is_full());
  CHECK(preimage(m, Subspace<Fp>(2), f2) == kernel(m, f2));
  CHECK_THROWS_AS(intersect(u, Subspace<Fp>(3), f2), usage_error);
}

TEST_CASE("quotient conventions", "[linalg]") {
  auto full = Subspace<Rational>::full(2, Q);
  auto diag = Subspace<Rational>::span(q_matrix({{1}, {1}}));

  auto same = quotient(full, full, Q);
  CHECK(same.dim() == 0);

  auto plain = quotient(full, Subspace<Rational>(2), Q);
  CHECK(plain.dim() == 2);
  CHECK(plain.project == Matrix<Rational>::identity(2, Q));

  auto q = quotient(full, diag, Q);
  REQUIRE(q.dim() == 1);
  // (1,0) and (0,-1) differ by (1,1), so they name the same class
  CHECK(q.project * q_matrix({{1}, {0}}) == q.project * q_matrix({{0}, {-1}}));
  CHECK(q.project * q_matrix({{1}, {1}}) == Matrix<Rational>(1, 1));
  CHECK(q.project * q.lift == Matrix<Rational>::identity(1, Q));
  CHECK_THROWS_AS(quotient(diag, full, Q), usage_error);
}

TEST_CASE("rank-nullity and canonical bases on random matrices", "[linalg][property]") {
  std::mt19937_64 rng(7);
  for (std::uint32_t p : {2u, 5u, 101u}) {
    const auto f = FieldSpec::prime(p);
    for (int t = 0; t < 40; ++t) {
      std::size_t r = rng() % 6, c = rng() % 6;
      auto m = random_fp(rng, f, r, c);
      auto ker = kernel(m, f);
      auto im = image(m);
      CHECK(ker.dim() + im.dim() == c);
      CHECK((m * ker.basis()).is_zero());
      CHECK(kernel(m, f) == ker);
      // basis independent of spanning set
      auto g = random_fp(rng, f, c, c);
      if (inverse(g, f)) CHECK(image(m * g) == im);
      CHECK(rref(rref(m).form).form == rref(m).form);
    }
  }
}

TEST_CASE("subquotient lift and project", "[linalg][property]") {
  std::mt19937_64 rng(11);
  const auto f = FieldSpec::prime(5);
  for (int t = 0; t < 60; ++t) {
    std::size_t n = 1 + rng() % 5;
    auto u = Subspace<Fp>::span(random_fp(rng, f, n, rng() % (n + 1)));
    auto w = Subspace<Fp>::span(u.basis() * random_fp(rng, f, u.dim(), rng() % (u.dim() + 1)));
    auto q = quotient(u, w, f);
    CHECK(q.dim() + w.dim() == u.dim());
    CHECK(q.project * q.lift == Matrix<Fp>::identity(q.dim(), f));
    CHECK((q.project * w.basis()).is_zero());
    CHECK(contains_vectors(u, q.lift, f));
    CHECK(rank(q.project * u.basis()) == q.dim());
  }
}

TEST_CASE("subspace operations agree with enumeration over F_2 and F_3", "[linalg][property]") {
  std::mt19937_64 rng(3);
  for (std::uint32_t p : {2u, 3u}) {
    const auto f = FieldSpec::prime(p);
    for (int t = 0; t < 25; ++t) {
      std::size_t n = 1 + rng() % 4;
      auto u = Subspace<Fp>::span(random_fp(rng, f, n, rng() % 4));
      auto v = Subspace<Fp>::span(random_fp(rng, f, n, rng() % 4));
      auto mu = members(u, p), mv = members(v, p);

      std::set<std::vector<std::uint32_t>> inter;
      for (auto& k : mu)
        if (mv.count(k)) inter.insert(k);
      CHECK(members(intersect(u, v, f), p) == inter);

      std::set<std::vector<std::uint32_t>> sums;
      for (auto& a : all_vectors(p, n))
        for (auto& b : all_vectors(p, n))
          if (mu.count(key_of(a)) && mv.count(key_of(b))) sums.insert(key_of(a + b));
      CHECK(members(sum(u, v), p) == sums);

      std::size_t m = 1 + rng() % 3;
      auto map = random_fp(rng, f, n, m);
      std::set<std::vector<std::uint32_t>> pre;
      for (auto& x : all_vectors(p, m))
        if (mu.count(key_of(map * x))) pre.insert(key_of(x));
      CHECK(members(preimage(map, u, f), p) == pre);
      CHECK(contains(u, v, f) == std::includes(mu.begin(), mu.end(), mv.begin(), mv.end()));
    }
  }
}

TEST_CASE("masked linear systems", "[linalg]") {
  const auto f = FieldSpec::prime(7);
  // X a 2x2 unknown, upper-right entry forced to zero, with X * [1;1] = [3;4]
  Mask mask{{true, false}, {true, true}};
  LinearSystem<Fp> sys(f);
  auto x = sys.add_block(2, 2, &mask);
  sys.add_equation({{x, std::nullopt, fp_matrix(7, {{1}, {1}})}}, fp_matrix(7, {{3}, {4}}));
  auto sol = sys.solve();
  REQUIRE(sol);
  CHECK((*sol)[0] == fp_matrix(7, {{3, 0}, {4, 0}}));
  CHECK(sys.nullspace().size() == 1);

  sys.add_equation({{x, fp_matrix(7, {{0, 1}}), std::nullopt}}, fp_matrix(7, {{1, 3}}));
  sol = sys.solve();
  REQUIRE(sol);
  CHECK((*sol)[0] == fp_matrix(7, {{3, 0}, {1, 3}}));
  CHECK(sys.nullspace().empty());

  sys.add_equation({{x, std::nullopt, std::nullopt}}, Matrix<Fp>(2, 2));
  CHECK_FALSE(sys.solve());
}
