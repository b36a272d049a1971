#include <catch_amalgamated.hpp>

#include <random>

#include "specseq/io.hpp"
#include "specseq/random.hpp"

using namespace specseq;
using io::json;

namespace {

const FieldSpec F5 = FieldSpec::prime(5);
const FieldSpec Q = FieldSpec::rationals();

template <class K>
std::string reemit(const std::string& text) {
  return std::visit([](const auto& obj) { return io::emit(obj); }, io::load<K>(io::parse_text(text)));
}

template <class K>
void require_error_on_load(const json& j, const std::string& needle, auto tag) {
  try {
    io::load<K>(j);
    FAIL("expected an error containing '" << needle << "'");
  } catch (const decltype(tag)& e) {
    INFO(e.what());
    CHECK(std::string(e.what()).find(needle) != std::string::npos);
  }
}

}  // namespace

TEST_CASE("random objects round-trip byte for byte", "[io]") {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 25; ++t) {
    auto a = random_filtered<Fp>(rng, {}, F5);
    auto text = io::emit(a);
    CHECK(reemit<Fp>(text) == text);
    auto b = random_bicomplex<Rational>(rng, {}, Q);
    text = io::emit(b);
    CHECK(reemit<Rational>(text) == text);
    auto f = random_filtered_morphism<Fp>(rng, {}, F5);
    text = io::emit(f);
    CHECK(reemit<Fp>(text) == text);
    auto g = random_bicomplex_morphism<Rational>(rng, {}, Q);
    text = io::emit(g);
    CHECK(reemit<Rational>(text) == text);
  }
}

TEST_CASE("documents carry the header and end with a newline", "[io]") {
  auto text = io::emit(gen_D0<Rational>(0, 0, Q));
  auto j = io::parse_text(text);
  CHECK(j["format_version"] == 1);
  CHECK(j["field"] == "Q");
  CHECK(j["kind"] == "bicomplex");
  CHECK(text.back() == '\n');
  CHECK(j["spots"].size() == 4);
  auto z = io::parse_text(io::emit(gen_Z<Fp>(0, 0, 1, F5)));
  CHECK(z["field"] == "Fp:5");
  CHECK(z["kind"] == "filtered");
}

TEST_CASE("lifting problems and homotopies round-trip", "[io]") {
  auto phi = gen_phi<Fp>(0, 0, 1, F5);
  LiftingProblem<FilteredMorphism<Fp>> s{phi, phi, identity(phi.source), identity(phi.target)};
  auto text = io::emit(s);
  CHECK(io::parse_text(text)["kind"] == "lifting-problem");
  CHECK(reemit<Fp>(text) == text);

  auto a = gen_ZW<Fp>(1, 0, 0, F5);
  auto id = identity(a);
  io::BicomplexHomotopyDoc<Fp> h{1, id, id, zero_morphism(cylinder(a, 1), a)};
  auto base = io::parse_text(io::emit(h));
  CHECK(base["kind"] == "homotopy");
  // a zero map on the cylinder is not a homotopy from id to id
  require_error_on_load<Fp>(base, "r-homotopy", invariant_error{""});
}

TEST_CASE("malformed documents are parse errors", "[io]") {
  CHECK_THROWS_AS(io::parse_text("{"), parse_error);
  auto good = io::parse_text(io::emit(gen_D0<Fp>(0, 0, F5)));

  auto j = good;
  j["format_version"] = 2;
  require_error_on_load<Fp>(j, "format_version", parse_error{""});
  j = good;
  j["kind"] = "sheaf";
  require_error_on_load<Fp>(j, "unknown document kind", parse_error{""});
  j = good;
  j.erase("spots");
  require_error_on_load<Fp>(j, "missing field 'spots'", parse_error{""});
  j = good;
  j["spots"][0]["dim"] = 0;
  require_error_on_load<Fp>(j, "dim must be positive", parse_error{""});
  j = good;
  j["spots"].push_back(j["spots"][0]);
  require_error_on_load<Fp>(j, "listed twice", parse_error{""});
  j = good;
  j["spots"][0]["p"] = 7;
  require_error_on_load<Fp>(j, "outside the window", parse_error{""});
  j = good;
  j["d0"][0]["matrix"][0][0] = "7";
  require_error_on_load<Fp>(j, "residue", parse_error{""});
  j = good;
  j["d0"][0]["matrix"][0][0] = 1;
  require_error_on_load<Fp>(j, "must be strings", parse_error{""});
  j = good;
  j["d0"][0]["matrix"] = json::array();
  require_error_on_load<Fp>(j, "rows", parse_error{""});
  j = good;
  j["field"] = "Fp:6";
  CHECK_THROWS_AS(io::read_header(j), parse_error);
  CHECK_THROWS_AS(io::read_file("/nonexistent/doc.json"), parse_error);
}

TEST_CASE("documents over another field are rejected", "[io]") {
  auto j = io::parse_text(io::emit(gen_D0<Fp>(0, 0, F5)));
  CHECK_THROWS(io::load<Rational>(j));
}

TEST_CASE("invariant violations name the failed invariant", "[io]") {
  auto good = io::parse_text(io::emit(gen_D0<Fp>(0, 0, F5)));
  // D0 spots (-1,0),(-1,1),(0,0),(0,1); breaking one d1 breaks commutation
  auto j = good;
  j["d1"][0]["matrix"][0][0] = "2";
  require_error_on_load<Fp>(j, "d0 d1 != d1 d0 at", invariant_error{""});

  auto z = io::parse_text(io::emit(gen_Z<Fp>(0, 0, 1, F5)));
  j = z;
  j["degrees"][0]["basis"][0][0] = "0";
  require_error_on_load<Fp>(j, "adapted basis not invertible", invariant_error{""});

  auto f = io::parse_text(io::emit(gen_phi<Fp>(0, 0, 1, F5)));
  j = f;
  j["blocks"][0]["matrix"][1][0] = "2";
  require_error_on_load<Fp>(j, "does not commute", invariant_error{""});
}

TEST_CASE("lifting problems must commute and compose", "[io]") {
  auto phi = gen_phi<Fp>(0, 0, 1, F5);
  LiftingProblem<FilteredMorphism<Fp>> s{phi, phi, identity(phi.source), identity(phi.target)};
  auto good = io::parse_text(io::emit(s));
  auto j = good;
  j["u"] = io::payload(zero_morphism(phi.source, phi.source));
  j["u"].erase("category");
  require_error_on_load<Fp>(j, "does not commute", invariant_error{""});
  j = good;
  j["u"] = io::payload(identity(phi.target));
  j["u"].erase("category");
  CHECK_THROWS_AS(io::load<Fp>(j), endpoint_error);
}
