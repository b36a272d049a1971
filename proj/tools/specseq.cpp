// specseq: command-line front end for spectral sequences of filtered complexes
// and bicomplexes. Exit codes: 0 ok, 1 failed check, 2 parse error, 3
// invariant violation, 4 invalid parameters, 5 endpoint mismatch, 6 category
// mismatch.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "specseq/properties.hpp"

using namespace specseq;
namespace fs = std::filesystem;

namespace {

constexpr int kExitFailed = 1;
constexpr int kExitParse = 2;
constexpr int kExitInvariant = 3;
constexpr int kExitParams = 4;
constexpr int kExitEndpoint = 5;
constexpr int kExitCategory = 6;

template <class K>
K scalar_tag(const io::Document<K>&);

// Loads a document and hands the concrete object to fn.
template <class Fn>
std::string with_object(const std::string& path, Fn&& fn) {
  return io::with_document(io::read_file(path), [&](const auto& doc) -> std::string {
    using K = decltype(scalar_tag(doc));
    return std::visit([&](const auto& obj) -> std::string { return fn.template operator()<K>(obj); }, doc);
  });
}

template <class K>
std::string page_table(const SpectralPage<K>& e) {
  std::ostringstream out;
  out << "# E_" << e.r << ": p q dim rank(delta_" << e.r << ")\n";
  for (auto& [b, d] : e.page.dims) {
    const std::size_t rk = e.page.dim(e.page.target(b)) ? rank(e.page.delta_at(b)) : 0;
    out << b.p << " " << b.q << " " << d << " " << rk << "\n";
  }
  return out.str();
}

template <class K>
std::string map_table(const RMorphism<K>& m, int r) {
  std::ostringstream out;
  out << "# E_" << r << "(f): p q dim(source) dim(target) rank\n";
  std::set<Bidegree> spots;
  for (auto& [b, d] : m.source.dims) spots.insert(b);
  for (auto& [b, d] : m.target.dims) spots.insert(b);
  for (auto b : spots)
    out << b.p << " " << b.q << " " << m.source.dim(b) << " " << m.target.dim(b) << " "
        << (m.source.dim(b) && m.target.dim(b) ? rank(m.at(b)) : 0) << "\n";
  return out.str();
}

void require_route(const std::string& route, bool bicomplex) {
  if (route != "direct" && route != "witness" && route != "tot")
    throw parameter_error("unknown route '" + route + "'");
  if (!bicomplex && route != "direct") throw category_error("route '" + route + "' applies to bicomplexes only");
}

template <class K>
SpectralPage<K> bicomplex_page(const Bicomplex<K>& a, int r, const std::string& route) {
  if (route == "witness") return page_via_witness(a, r);
  if (route == "tot") return page_via_tot(a, r);
  return page_direct(a, r);
}

template <class K>
RMorphism<K> bicomplex_page_map(const BicomplexMorphism<K>& f, int r, const std::string& route) {
  if (route == "witness") return induced_page_map_witness(f, r);
  if (route == "tot") return induced_page_map(tot(f), r);
  return induced_page_map_direct(f, r);
}

std::pair<int, int> page_range(int r, std::optional<int> upto) {
  if (r < 0) throw parameter_error("r must be non-negative");
  if (upto && *upto < r) throw parameter_error("--all-upto must be at least --r");
  return {r, upto.value_or(r)};
}

// ---------------------------------------------------------------------------
// commands; each returns the text to print

struct PagesArgs {
  std::string file;
  int r = 0;
  std::optional<int> upto;
  std::string route = "direct";
};

std::string cmd_pages(const PagesArgs& a) {
  auto [lo, hi] = page_range(a.r, a.upto);
  return with_object(a.file, [&]<class K>(const auto& obj) -> std::string {
    using T = std::decay_t<decltype(obj)>;
    std::string out;
    if constexpr (std::is_same_v<T, Bicomplex<K>>) {
      require_route(a.route, true);
      for (int r = lo; r <= hi; ++r) out += page_table(bicomplex_page(obj, r, a.route));
    } else if constexpr (std::is_same_v<T, FilteredComplex<K>>) {
      require_route(a.route, false);
      for (int r = lo; r <= hi; ++r) out += page_table(page(obj, r));
    } else {
      throw category_error("pages expects a filtered complex or a bicomplex");
    }
    return out;
  });
}

struct GenArgs {
  std::string name;
  std::string field = "Q";
  int r = 1, i = 0, j = 0, p = 0, n = 0;
  std::uint64_t seed = 0;
  std::string input;
};

std::string cmd_gen(const GenArgs& a) {
  FieldSpec f;
  try {
    f = FieldSpec::parse(a.field);
  } catch (const parse_error& e) {
    throw parameter_error(e.what());
  }
  return io::with_field(f, [&](auto tag) -> std::string {
    using K = decltype(tag);
    const auto& nm = a.name;
    if (a.r < 0) throw parameter_error("r must be non-negative");
    if (nm == "D0") return io::emit(gen_D0<K>(a.i, a.j, f));
    if (nm == "ZW") return io::emit(gen_ZW<K>(a.r, a.i, a.j, f));
    if (nm == "BW") return io::emit(gen_BW<K>(a.r, a.i, a.j, f));
    if (nm == "Z") return io::emit(gen_Z<K>(a.p, a.n, a.r, f));
    if (nm == "B") return io::emit(gen_B<K>(a.p, a.n, a.r, f));
    if (nm == "Cyl") return io::emit(cyl<K>(a.r, f));
    if (nm == "iota") return io::emit(gen_iota<K>(a.r, a.i, a.j, f));
    if (nm == "phi") return io::emit(gen_phi<K>(a.p, a.n, a.r, f));
    std::mt19937_64 rng(a.seed);
    if (nm == "random-filtered") return io::emit(random_filtered<K>(rng, {}, f));
    if (nm == "random-bicomplex") return io::emit(random_bicomplex<K>(rng, {}, f));
    if (nm == "random-filtered-map") return io::emit(random_filtered_morphism<K>(rng, {}, f));
    if (nm == "random-bicomplex-map") return io::emit(random_bicomplex_morphism<K>(rng, {}, f));
    if (nm == "cone-of" || nm == "cyl-of" || nm == "mr") {
      if (a.input.empty()) throw parameter_error("gen " + nm + " needs --input");
      auto doc = io::read_file(a.input);
      if (!(io::read_header(doc).field == f)) throw parameter_error("--field does not match the input document");
      auto obj = io::load<K>(doc);
      if (nm == "mr") {
        auto* x = std::get_if<FilteredComplex<K>>(&obj);
        if (!x) throw category_error("mr expects a filtered complex");
        return io::emit(m_r(*x, a.r));
      }
      auto* x = std::get_if<Bicomplex<K>>(&obj);
      if (!x) throw category_error(nm + " expects a bicomplex");
      return io::emit(nm == "cone-of" ? cone(*x, a.r) : cylinder(*x, a.r));
    }
    throw parameter_error("unknown generator '" + nm + "'");
  });
}

struct MapArgs {
  std::string file;
  std::string cmd;
  std::string structure;
  int r = 0;
  std::string route = "direct";
};

std::string cmd_map(const MapArgs& a) {
  if (a.r < 0) throw parameter_error("r must be non-negative");
  const bool needs_structure = a.cmd == "is-weq" || a.cmd == "is-fib" || a.cmd == "is-trivial-fib";
  if (a.cmd != "pages" && a.cmd != "lift" && !needs_structure) throw parameter_error("unknown map command '" + a.cmd + "'");
  if (needs_structure && a.structure.empty()) throw parameter_error("--cmd " + a.cmd + " needs --structure");
  return with_object(a.file, [&]<class K>(const auto& obj) -> std::string {
    using T = std::decay_t<decltype(obj)>;
    constexpr bool is_morphism = std::is_same_v<T, FilteredMorphism<K>> || std::is_same_v<T, BicomplexMorphism<K>>;
    if constexpr (std::is_same_v<T, LiftingProblem<FilteredMorphism<K>>> ||
                  std::is_same_v<T, LiftingProblem<BicomplexMorphism<K>>>) {
      if (a.cmd != "lift") throw category_error("a lifting problem only supports --cmd lift");
      auto h = solve_lift(obj);
      return h ? io::emit(*h) : std::string("no lift\n");
    } else if constexpr (is_morphism) {
      if (a.cmd == "pages") {
        if constexpr (std::is_same_v<T, BicomplexMorphism<K>>) {
          require_route(a.route, true);
          return map_table(bicomplex_page_map(obj, a.r, a.route), a.r);
        } else {
          require_route(a.route, false);
          return map_table(induced_page_map(obj, a.r), a.r);
        }
      }
      if (a.structure.empty()) throw parameter_error("--cmd " + a.cmd + " needs --structure");
      const StructureId s{parse_structure(a.structure), a.r};
      if (a.cmd == "is-weq") return verdict(classify_weq(obj, s)) + "\n";
      if (a.cmd == "is-fib") return verdict(classify_fib(obj, s)) + "\n";
      if (a.cmd == "is-trivial-fib") return verdict(classify_trivial_fib(obj, s)) + "\n";
      // lift against the generating sets
      if ((category_of(s.kind) == Category::bicomplex) != std::is_same_v<T, BicomplexMorphism<K>>)
        throw category_error("structure " + a.structure + " does not apply to this morphism");
      auto rep = check_generator_characterizations<K>(obj, s);
      return rep.detail + "\n";
    } else {
      throw category_error("map expects a morphism or a lifting problem");
    }
  });
}

std::string cmd_transform(const std::string& which, const std::string& file, int r) {
  if (r < 0) throw parameter_error("r must be non-negative");
  return with_object(file, [&]<class K>(const auto& obj) -> std::string {
    using T = std::decay_t<decltype(obj)>;
    if (which == "tot") {
      if constexpr (std::is_same_v<T, Bicomplex<K>>) return io::emit(canonicalize(tot(obj)));
      else if constexpr (std::is_same_v<T, BicomplexMorphism<K>>) return io::emit(tot(obj));
      else throw category_error("tot expects a bicomplex or a morphism of bicomplexes");
    }
    if constexpr (std::is_same_v<T, FilteredComplex<K>>) {
      return io::emit(canonicalize(which == "shift" ? shift(obj, r) : decalage(obj, r)));
    } else if constexpr (std::is_same_v<T, FilteredMorphism<K>>) {
      return io::emit(which == "shift" ? shift(obj, r) : decalage(obj, r));
    } else {
      throw category_error(which + " expects a filtered complex or a morphism of filtered complexes");
    }
  });
}

std::string cmd_emit(const std::string& file) {
  return with_object(file, [&]<class K>(const auto& obj) -> std::string { return io::emit(obj); });
}

struct CheckArgs {
  std::string suite = "full";
  std::uint64_t seed = 0;
  int instances = 20;
  std::string counterexamples;
};

int cmd_check(CheckArgs a) {
  if (const char* env = std::getenv("SPECSEQ_SEED")) {
    try {
      a.seed = std::stoull(env);
    } catch (const std::exception&) {
      throw parameter_error(std::string("SPECSEQ_SEED is not an unsigned integer: ") + env);
    }
  }
  if (a.instances < 1) throw parameter_error("--instances must be positive");
  auto reports = run_property_suite(a.suite, a.seed, {a.instances});
  int failed = 0;
  for (std::size_t k = 0; k < reports.size(); ++k) {
    const auto& rep = reports[k];
    std::cout << (rep.passed ? "PASS " : "FAIL ") << rep.property << " " << rep.instance;
    if (!rep.passed) {
      ++failed;
      std::cout << " : " << rep.detail;
      if (!a.counterexamples.empty()) {
        fs::create_directories(a.counterexamples);
        auto path = fs::path(a.counterexamples) / (rep.property + "-" + std::to_string(k) + ".json");
        std::ofstream(path) << rep.payload;
        std::cout << " -> " << path.string();
      }
    }
    std::cout << "\n";
    if (!rep.passed && a.counterexamples.empty()) std::cout << rep.payload;
  }
  std::cout << "# " << reports.size() - failed << "/" << reports.size() << " passed\n";
  return failed ? kExitFailed : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral sequences of filtered complexes and bicomplexes"};
  app.require_subcommand(1);
  std::string out_file;
  app.add_option("-o,--output", out_file, "Write the result to a file instead of stdout");

  PagesArgs pages;
  auto* sp = app.add_subcommand("pages", "Page table of a filtered complex or bicomplex");
  sp->add_option("file", pages.file, "Input document")->required();
  sp->add_option("--r", pages.r, "Page index")->required();
  sp->add_option("--all-upto", pages.upto, "Print every page from r up to this index");
  sp->add_option("--route", pages.route, "Bicomplex page route: direct, witness or tot");

  GenArgs gen;
  auto* sg = app.add_subcommand("gen", "Emit a generator document");
  sg->add_option("name", gen.name, "D0, ZW, BW, Z, B, Cyl, cone-of, cyl-of, mr, iota, phi or random-*")->required();
  sg->add_option("--field", gen.field, "Q or Fp:<prime>");
  sg->add_option("--r", gen.r, "Stage");
  sg->add_option("--i", gen.i, "Column index");
  sg->add_option("--j", gen.j, "Row index");
  sg->add_option("--p", gen.p, "Filtration index");
  sg->add_option("--n", gen.n, "Degree");
  sg->add_option("--seed", gen.seed, "Seed for the random-* generators");
  sg->add_option("--input", gen.input, "Input document for cone-of, cyl-of and mr");

  MapArgs map;
  auto* sm = app.add_subcommand("map", "Classify a morphism or solve a lifting problem");
  sm->add_option("file", map.file, "Morphism or lifting-problem document")->required();
  sm->add_option("--cmd", map.cmd, "is-weq, is-fib, is-trivial-fib, pages or lift")->required();
  sm->add_option("--structure", map.structure, "Ar, Br, Cr, Apr or Bpr");
  sm->add_option("--r", map.r, "Stage");
  sm->add_option("--route", map.route, "Bicomplex page route for --cmd pages");

  CheckArgs check;
  auto* sc = app.add_subcommand("check", "Run a property suite");
  sc->add_option("--suite", check.suite, "Suite name or full");
  sc->add_option("--seed", check.seed, "Seed (SPECSEQ_SEED overrides)");
  sc->add_option("--instances", check.instances, "Random instances per suite");
  sc->add_option("--counterexamples", check.counterexamples, "Directory for failing payloads");

  std::string tfile;
  int tr = 0;
  std::vector<std::pair<std::string, CLI::App*>> transforms;
  for (const char* name : {"decalage", "shift", "tot"}) {
    auto* st = app.add_subcommand(name, std::string("Apply ") + name + " to a document");
    st->add_option("file", tfile, "Input document")->required();
    st->add_option("--r", tr, "Index")->required(std::string(name) != "tot");
    transforms.emplace_back(name, st);
  }

  std::string efile;
  auto* se = app.add_subcommand("emit", "Validate a document and print its canonical form");
  se->add_option("file", efile, "Input document")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParams;
  }

  try {
    std::string out;
    if (*sc) return cmd_check(check);
    if (*sp) out = cmd_pages(pages);
    else if (*sg) out = cmd_gen(gen);
    else if (*sm) out = cmd_map(map);
    else if (*se) out = cmd_emit(efile);
    else
      for (auto& [name, st] : transforms)
        if (*st) out = cmd_transform(name, tfile, tr);
    if (out_file.empty()) {
      std::cout << out;
    } else {
      std::ofstream f(out_file);
      if (!f) throw parameter_error("cannot write '" + out_file + "'");
      f << out;
    }
    return 0;
  } catch (const parse_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const invariant_error& e) {
    std::cerr << "invariant violated: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const endpoint_error& e) {
    std::cerr << "endpoint mismatch: " << e.what() << "\n";
    return kExitEndpoint;
  } catch (const category_error& e) {
    std::cerr << "category mismatch: " << e.what() << "\n";
    return kExitCategory;
  } catch (const parameter_error& e) {
    std::cerr << "invalid parameters: " << e.what() << "\n";
    return kExitParams;
  } catch (const usage_error& e) {
    std::cerr << "invalid parameters: " << e.what() << "\n";
    return kExitParams;
  }
}
