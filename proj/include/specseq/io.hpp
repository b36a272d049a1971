#pragma once

#include <array>
#include <fstream>
#include <sstream>
#include <string>
#include <variant>

#include <json.hpp>

#include "specseq/model.hpp"

namespace specseq::io {

using json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

// Document kinds. Morphisms, homotopies and lifting problems also carry a
// "category" of "filtered" or "bicomplex".
inline const char* const kKinds[] = {"filtered", "bicomplex", "r-bigraded", "morphism", "homotopy", "lifting-problem"};

// ---------------------------------------------------------------------------
// low-level readers; every schema violation is a parse_error

inline const json& field_of(const json& j, const char* key) {
  if (!j.is_object()) throw parse_error(std::string("expected an object holding '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) throw parse_error(std::string("missing field '") + key + "'");
  return *it;
}

inline int int_of(const json& j, const char* key) {
  const auto& v = field_of(j, key);
  if (!v.is_number_integer()) throw parse_error(std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

inline std::string string_of(const json& j, const char* key) {
  const auto& v = field_of(j, key);
  if (!v.is_string()) throw parse_error(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

inline const json& array_of(const json& j, const char* key) {
  const auto& v = field_of(j, key);
  if (!v.is_array()) throw parse_error(std::string("field '") + key + "' must be an array");
  return v;
}

inline json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw parse_error(std::string("invalid JSON: ") + e.what());
  }
}

inline json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str());
}

namespace detail {

inline bool is_flat(const json& j) {
  return std::all_of(j.begin(), j.end(), [](const json& x) { return x.is_primitive(); });
}

inline void dump_into(std::string& out, const json& j, int indent) {
  const std::string pad(indent, ' '), inner(indent + 2, ' ');
  if (j.is_object() && !j.empty() && is_flat(j)) {
    // small records such as spots stay on one line
    out += "{";
    std::size_t k = 0;
    for (auto& [key, v] : j.items()) out += (k++ ? ", " : "") + json(key).dump() + ": " + v.dump();
    out += "}";
  } else if (j.is_object() && !j.empty()) {
    out += "{\n";
    std::size_t k = 0;
    for (auto& [key, v] : j.items()) {
      out += inner + json(key).dump() + ": ";
      dump_into(out, v, indent + 2);
      out += ++k < j.size() ? ",\n" : "\n";
    }
    out += pad + "}";
  } else if (j.is_array() && !j.empty() && !is_flat(j)) {
    out += "[\n";
    for (std::size_t k = 0; k < j.size(); ++k) {
      out += inner;
      dump_into(out, j[k], indent + 2);
      out += k + 1 < j.size() ? ",\n" : "\n";
    }
    out += pad + "]";
  } else if (j.is_array()) {
    // arrays of scalars (window ranges, weights, matrix rows) stay on one line
    out += "[";
    for (std::size_t k = 0; k < j.size(); ++k) out += (k ? ", " : "") + j[k].dump();
    out += "]";
  } else {
    out += j.dump();
  }
}

}  // namespace detail

// Canonical text of a document: nested structure indented by two spaces,
// arrays of scalars on one line, and a final newline.
inline std::string dump(const json& j) {
  std::string out;
  detail::dump_into(out, j, 0);
  return out + "\n";
}

template <class K>
json to_json(const Matrix<K>& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(format_scalar(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <class K>
Matrix<K> matrix_from_json(const json& j, std::size_t rows, std::size_t cols, const FieldSpec& f,
                           const std::string& where) {
  if (!j.is_array() || j.size() != rows)
    throw parse_error(where + ": expected " + std::to_string(rows) + " rows");
  Matrix<K> m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols)
      throw parse_error(where + ": row " + std::to_string(i) + " must have " + std::to_string(cols) + " entries");
    for (std::size_t k = 0; k < cols; ++k) {
      if (!j[i][k].is_string()) throw parse_error(where + ": matrix entries must be strings");
      m(i, k) = parse_scalar<K>(j[i][k].get<std::string>(), f);
    }
  }
  return m;
}

inline json range_json(int lo, int hi) { return json::array({lo, hi}); }

inline std::pair<int, int> range_of(const json& j, const char* key) {
  const auto& v = array_of(j, key);
  if (v.size() != 2 || !v[0].is_number_integer() || !v[1].is_number_integer())
    throw parse_error(std::string("window field '") + key + "' must be [lo, hi]");
  return {v[0].get<int>(), v[1].get<int>()};
}

inline bool in_range(std::pair<int, int> r, int x) { return r.first <= x && x <= r.second; }

inline json bidegree_window(const std::vector<Bidegree>& s) {
  if (s.empty()) return nullptr;
  int pl = s.front().p, ph = pl, ql = s.front().q, qh = ql;
  for (auto b : s) {
    pl = std::min(pl, b.p);
    ph = std::max(ph, b.p);
    ql = std::min(ql, b.q);
    qh = std::max(qh, b.q);
  }
  return json{{"p", range_json(pl, ph)}, {"q", range_json(ql, qh)}};
}

inline void check_in_window(const json& window, Bidegree b) {
  if (window.is_null()) throw parse_error("spot " + b.str() + " outside the empty window");
  if (!in_range(range_of(window, "p"), b.p) || !in_range(range_of(window, "q"), b.q))
    throw parse_error("spot " + b.str() + " outside the window");
}

inline Bidegree bidegree_of(const json& j) { return {int_of(j, "p"), int_of(j, "q")}; }

// ---------------------------------------------------------------------------
// payloads (the body of a document without its header)

template <class K>
json payload(const FilteredComplex<K>& a) {
  json out;
  auto sup = a.support();
  auto w = a.weight_range();
  if (sup.empty()) out["window"] = nullptr;
  else out["window"] = {{"n", range_json(sup.front(), sup.back())}, {"weights", range_json(w->first, w->second)}};
  json degs = json::array();
  for (int n : sup)
    degs.push_back({{"n", n}, {"dim", a.dim(n)}, {"weights", a.weights(n)}, {"basis", to_json(a.basis(n))}});
  out["degrees"] = std::move(degs);
  json d = json::array();
  for (auto& [n, m] : a.d) d.push_back({{"n", n}, {"matrix", to_json(m)}});
  out["d"] = std::move(d);
  return out;
}

template <class K>
FilteredComplex<K> filtered_from_payload(const json& j, const FieldSpec& f) {
  FilteredComplex<K> a{f, {}, {}};
  const auto& window = field_of(j, "window");
  for (const auto& deg : array_of(j, "degrees")) {
    const int n = int_of(deg, "n");
    const int dim = int_of(deg, "dim");
    if (dim <= 0) throw parse_error("degree " + std::to_string(n) + ": dim must be positive");
    if (a.degrees.count(n)) throw parse_error("degree " + std::to_string(n) + " listed twice");
    if (window.is_null() || !in_range(range_of(window, "n"), n))
      throw parse_error("degree " + std::to_string(n) + " outside the window");
    const auto& wj = array_of(deg, "weights");
    if (wj.size() != static_cast<std::size_t>(dim))
      throw parse_error("degree " + std::to_string(n) + ": expected " + std::to_string(dim) + " weights");
    std::vector<int> ws;
    for (const auto& w : wj) {
      if (!w.is_number_integer()) throw parse_error("weights must be integers");
      if (!in_range(range_of(window, "weights"), w.get<int>()))
        throw parse_error("degree " + std::to_string(n) + ": weight outside the window");
      ws.push_back(w.get<int>());
    }
    auto basis = matrix_from_json<K>(field_of(deg, "basis"), dim, dim, f, "basis in degree " + std::to_string(n));
    a.degrees[n] = FDegree<K>{std::move(basis), std::move(ws)};
  }
  for (const auto& d : array_of(j, "d")) {
    const int n = int_of(d, "n");
    if (a.d.count(n)) throw parse_error("d in degree " + std::to_string(n) + " listed twice");
    a.set_diff(n, matrix_from_json<K>(field_of(d, "matrix"), a.dim(n + 1), a.dim(n), f,
                                      "d in degree " + std::to_string(n)));
  }
  a.validate();
  return a;
}

template <class K>
json payload(const Bicomplex<K>& a) {
  json out;
  out["window"] = bidegree_window(a.support());
  json spots = json::array();
  for (auto b : a.support()) spots.push_back({{"p", b.p}, {"q", b.q}, {"dim", a.dim(b)}});
  out["spots"] = std::move(spots);
  for (const char* key : {"d0", "d1"}) {
    json arr = json::array();
    for (auto& [b, m] : (key[1] == '0' ? a.d0 : a.d1)) arr.push_back({{"p", b.p}, {"q", b.q}, {"matrix", to_json(m)}});
    out[key] = std::move(arr);
  }
  return out;
}

template <class K>
Bicomplex<K> bicomplex_from_payload(const json& j, const FieldSpec& f) {
  Bicomplex<K> a{f, {}, {}, {}};
  const auto& window = field_of(j, "window");
  for (const auto& s : array_of(j, "spots")) {
    auto b = bidegree_of(s);
    const int dim = int_of(s, "dim");
    if (dim <= 0) throw parse_error("spot " + b.str() + ": dim must be positive");
    if (a.dim(b)) throw parse_error("spot " + b.str() + " listed twice");
    check_in_window(window, b);
    a.set_dim(b, dim);
  }
  for (const auto& d : array_of(j, "d0")) {
    auto b = bidegree_of(d);
    if (a.d0.count(b)) throw parse_error("d0 at " + b.str() + " listed twice");
    a.set_d0(b, matrix_from_json<K>(field_of(d, "matrix"), a.dim(a.up(b)), a.dim(b), f, "d0 at " + b.str()));
  }
  for (const auto& d : array_of(j, "d1")) {
    auto b = bidegree_of(d);
    if (a.d1.count(b)) throw parse_error("d1 at " + b.str() + " listed twice");
    a.set_d1(b, matrix_from_json<K>(field_of(d, "matrix"), a.dim(a.left(b)), a.dim(b), f, "d1 at " + b.str()));
  }
  a.validate();
  return a;
}

template <class K>
json payload(const RComplex<K>& a) {
  json out;
  out["r"] = a.r;
  std::vector<Bidegree> sup;
  for (auto& [b, d] : a.dims) sup.push_back(b);
  out["window"] = bidegree_window(sup);
  json spots = json::array();
  for (auto b : sup) spots.push_back({{"p", b.p}, {"q", b.q}, {"dim", a.dim(b)}});
  out["spots"] = std::move(spots);
  json arr = json::array();
  for (auto& [b, m] : a.delta) arr.push_back({{"p", b.p}, {"q", b.q}, {"matrix", to_json(m)}});
  out["delta"] = std::move(arr);
  return out;
}

template <class K>
RComplex<K> rcomplex_from_payload(const json& j, const FieldSpec& f) {
  RComplex<K> a{f, int_of(j, "r"), {}, {}};
  if (a.r < 0) throw parse_error("r must be non-negative");
  const auto& window = field_of(j, "window");
  for (const auto& s : array_of(j, "spots")) {
    auto b = bidegree_of(s);
    const int dim = int_of(s, "dim");
    if (dim <= 0) throw parse_error("spot " + b.str() + ": dim must be positive");
    if (a.dim(b)) throw parse_error("spot " + b.str() + " listed twice");
    check_in_window(window, b);
    a.set_dim(b, dim);
  }
  for (const auto& d : array_of(j, "delta")) {
    auto b = bidegree_of(d);
    if (a.delta.count(b)) throw parse_error("delta at " + b.str() + " listed twice");
    a.set_delta(b, matrix_from_json<K>(field_of(d, "matrix"), a.dim(a.target(b)), a.dim(b), f, "delta at " + b.str()));
  }
  a.validate();
  return a;
}

template <class K>
json payload(const FilteredMorphism<K>& m) {
  json out;
  out["category"] = "filtered";
  out["source"] = payload(m.source);
  out["target"] = payload(m.target);
  json blocks = json::array();
  for (auto& [n, b] : m.blocks) blocks.push_back({{"n", n}, {"matrix", to_json(b)}});
  out["blocks"] = std::move(blocks);
  return out;
}

template <class K>
json payload(const BicomplexMorphism<K>& m) {
  json out;
  out["category"] = "bicomplex";
  out["source"] = payload(m.source);
  out["target"] = payload(m.target);
  json blocks = json::array();
  for (auto& [b, x] : m.blocks) blocks.push_back({{"p", b.p}, {"q", b.q}, {"matrix", to_json(x)}});
  out["blocks"] = std::move(blocks);
  return out;
}

inline std::string category_field(const json& j) {
  auto c = string_of(j, "category");
  if (c != "filtered" && c != "bicomplex") throw parse_error("unknown category '" + c + "'");
  return c;
}

template <class K>
FilteredMorphism<K> filtered_morphism_from_payload(const json& j, const FieldSpec& f) {
  if (category_field(j) != "filtered") throw category_error("expected a morphism of filtered complexes");
  FilteredMorphism<K> m{filtered_from_payload<K>(field_of(j, "source"), f),
                        filtered_from_payload<K>(field_of(j, "target"), f), {}};
  for (const auto& b : array_of(j, "blocks")) {
    const int n = int_of(b, "n");
    if (m.blocks.count(n)) throw parse_error("block in degree " + std::to_string(n) + " listed twice");
    m.set(n, matrix_from_json<K>(field_of(b, "matrix"), m.target.dim(n), m.source.dim(n), f,
                                 "block in degree " + std::to_string(n)));
  }
  m.validate();
  return m;
}

template <class K>
BicomplexMorphism<K> bicomplex_morphism_from_payload(const json& j, const FieldSpec& f) {
  if (category_field(j) != "bicomplex") throw category_error("expected a morphism of bicomplexes");
  BicomplexMorphism<K> m{bicomplex_from_payload<K>(field_of(j, "source"), f),
                         bicomplex_from_payload<K>(field_of(j, "target"), f), {}};
  for (const auto& b : array_of(j, "blocks")) {
    auto at = bidegree_of(b);
    if (m.blocks.count(at)) throw parse_error("block at " + at.str() + " listed twice");
    m.set(at, matrix_from_json<K>(field_of(b, "matrix"), m.target.dim(at), m.source.dim(at), f, "block at " + at.str()));
  }
  m.validate();
  return m;
}

// An r-homotopy from f to g: for filtered complexes the maps h^n: A^n -> B^{n-1};
// for bicomplexes a morphism Cyl_r(A) -> B.
template <class K>
struct FilteredHomotopyDoc {
  FilteredMorphism<K> f, g;
  FilteredHomotopy<K> h;
};

template <class K>
struct BicomplexHomotopyDoc {
  int r = 0;
  BicomplexMorphism<K> f, g, h;
};

template <class K>
json payload(const FilteredHomotopyDoc<K>& d) {
  json out;
  out["category"] = "filtered";
  out["r"] = d.h.r;
  out["f"] = payload(d.f);
  out["g"] = payload(d.g);
  json hs = json::array();
  for (auto& [n, m] : d.h.h)
    if (!m.is_zero()) hs.push_back({{"n", n}, {"matrix", to_json(m)}});
  out["h"] = std::move(hs);
  return out;
}

template <class K>
json payload(const BicomplexHomotopyDoc<K>& d) {
  json out;
  out["category"] = "bicomplex";
  out["r"] = d.r;
  out["f"] = payload(d.f);
  out["g"] = payload(d.g);
  out["h"] = payload(d.h);
  return out;
}

template <class K>
FilteredHomotopyDoc<K> filtered_homotopy_from_payload(const json& j, const FieldSpec& f) {
  FilteredHomotopyDoc<K> d{filtered_morphism_from_payload<K>(field_of(j, "f"), f),
                           filtered_morphism_from_payload<K>(field_of(j, "g"), f),
                           {int_of(j, "r"), {}}};
  if (d.h.r < 0) throw parse_error("r must be non-negative");
  if (!(d.f.source == d.g.source) || !(d.f.target == d.g.target))
    throw endpoint_error("homotopy ends f and g have different endpoints");
  for (const auto& b : array_of(j, "h")) {
    const int n = int_of(b, "n");
    if (d.h.h.count(n)) throw parse_error("h in degree " + std::to_string(n) + " listed twice");
    d.h.h[n] = matrix_from_json<K>(field_of(b, "matrix"), d.f.target.dim(n - 1), d.f.source.dim(n), f,
                                   "h in degree " + std::to_string(n));
  }
  if (!check_r_homotopy(d.h, d.f, d.g)) throw invariant_error("h is not an r-homotopy from f to g");
  return d;
}

template <class K>
BicomplexHomotopyDoc<K> bicomplex_homotopy_from_payload(const json& j, const FieldSpec& f) {
  BicomplexHomotopyDoc<K> d{int_of(j, "r"), bicomplex_morphism_from_payload<K>(field_of(j, "f"), f),
                            bicomplex_morphism_from_payload<K>(field_of(j, "g"), f),
                            bicomplex_morphism_from_payload<K>(field_of(j, "h"), f)};
  if (d.r < 0) throw parse_error("r must be non-negative");
  if (!(d.f.source == d.g.source) || !(d.f.target == d.g.target))
    throw endpoint_error("homotopy ends f and g have different endpoints");
  if (!(d.h.source == cylinder(d.f.source, d.r)) || !(d.h.target == d.f.target))
    throw endpoint_error("h must be a morphism Cyl_r(A) -> B");
  if (!check_r_homotopy(d.h, d.f, d.g, d.r)) throw invariant_error("h is not an r-homotopy from f to g");
  return d;
}

template <class M>
json payload(const LiftingProblem<M>& s) {
  json out;
  out["category"] = std::is_same_v<M, BicomplexMorphism<typename scalar_of<M>::type>> ? "bicomplex" : "filtered";
  const std::array<std::pair<const char*, const M*>, 4> parts{{{"i", &s.i}, {"p", &s.p}, {"u", &s.u}, {"v", &s.v}}};
  for (auto [key, m] : parts) {
    auto body = payload(*m);
    body.erase("category");
    out[key] = std::move(body);
  }
  return out;
}

template <class M, class F>
LiftingProblem<M> lifting_problem_from_payload(const json& j, F&& read_morphism) {
  auto one = [&](const char* key) {
    auto body = field_of(j, key);
    body["category"] = field_of(j, "category");
    return read_morphism(body);
  };
  LiftingProblem<M> s{one("i"), one("p"), one("u"), one("v")};
  specseq::detail::check_square(s);
  return s;
}

// ---------------------------------------------------------------------------
// documents

inline json header(const FieldSpec& f, const std::string& kind) {
  json out;
  out["format_version"] = kFormatVersion;
  out["field"] = f.to_string();
  out["kind"] = kind;
  return out;
}

template <class T>
json document(const T& obj, const FieldSpec& f) {
  json out;
  if constexpr (requires { obj.d0; }) out = header(f, "bicomplex");
  else if constexpr (requires { obj.delta; }) out = header(f, "r-bigraded");
  else if constexpr (requires { obj.degrees; }) out = header(f, "filtered");
  else if constexpr (requires { obj.blocks; }) out = header(f, "morphism");
  else if constexpr (requires { obj.g; }) out = header(f, "homotopy");
  else out = header(f, "lifting-problem");
  auto body = payload(obj);
  for (auto& [k, v] : body.items()) out[k] = v;
  return out;
}

template <class T>
std::string emit(const T& obj) {
  if constexpr (requires { obj.field; }) return dump(document(obj, obj.field));
  else if constexpr (requires { obj.source.field; }) return dump(document(obj, obj.source.field));
  else if constexpr (requires { obj.f.source.field; }) return dump(document(obj, obj.f.source.field));
  else return dump(document(obj, obj.i.source.field));
}

struct Header {
  FieldSpec field;
  std::string kind;
};

inline Header read_header(const json& j) {
  if (!j.is_object()) throw parse_error("a document must be a JSON object");
  if (int_of(j, "format_version") != kFormatVersion)
    throw parse_error("unsupported format_version " + std::to_string(int_of(j, "format_version")));
  Header h{FieldSpec::parse(string_of(j, "field")), string_of(j, "kind")};
  if (std::find(std::begin(kKinds), std::end(kKinds), h.kind) == std::end(kKinds))
    throw parse_error("unknown document kind '" + h.kind + "'");
  return h;
}

template <class K>
using Document = std::variant<FilteredComplex<K>, Bicomplex<K>, RComplex<K>, FilteredMorphism<K>, BicomplexMorphism<K>,
                              FilteredHomotopyDoc<K>, BicomplexHomotopyDoc<K>, LiftingProblem<FilteredMorphism<K>>,
                              LiftingProblem<BicomplexMorphism<K>>>;

// Parses and validates a document whose field matches K.
template <class K>
Document<K> load(const json& j) {
  auto h = read_header(j);
  require_field<K>(h.field);
  const auto& f = h.field;
  if (h.kind == "filtered") return filtered_from_payload<K>(j, f);
  if (h.kind == "bicomplex") return bicomplex_from_payload<K>(j, f);
  if (h.kind == "r-bigraded") return rcomplex_from_payload<K>(j, f);
  const bool bi = category_field(j) == "bicomplex";
  if (h.kind == "morphism") {
    if (bi) return bicomplex_morphism_from_payload<K>(j, f);
    return filtered_morphism_from_payload<K>(j, f);
  }
  if (h.kind == "homotopy") {
    if (bi) return bicomplex_homotopy_from_payload<K>(j, f);
    return filtered_homotopy_from_payload<K>(j, f);
  }
  if (bi)
    return lifting_problem_from_payload<BicomplexMorphism<K>>(
        j, [&](const json& b) { return bicomplex_morphism_from_payload<K>(b, f); });
  return lifting_problem_from_payload<FilteredMorphism<K>>(
      j, [&](const json& b) { return filtered_morphism_from_payload<K>(b, f); });
}

// Runs fn on the loaded document with the scalar type chosen by its field.
template <class Fn>
decltype(auto) with_document(const json& j, Fn&& fn) {
  auto h = read_header(j);
  if (h.field.kind == FieldKind::rationals) return fn(load<Rational>(j));
  return fn(load<Fp>(j));
}

template <class Fn>
decltype(auto) with_field(const FieldSpec& f, Fn&& fn) {
  if (f.kind == FieldKind::rationals) return fn(Rational{});
  return fn(Fp{});
}

}  // namespace specseq::io
