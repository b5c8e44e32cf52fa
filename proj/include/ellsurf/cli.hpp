#pragma once

// The ellsurf command pipeline: surface files in, JSON reports out. Argument
// parsing lives in tools/ellsurf.cpp; everything here is callable in-process.

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ellsurf/cover.hpp"
#include "ellsurf/parse.hpp"

namespace ellsurf::cli {

using json = nlohmann::json;

inline constexpr const char* kToolVersion = "1.0.0";

/// Flat key-value surface description:
///
///   # comment
///   name = e3
///   a4 = 0
///   a6 = -t^2
///   primes = 5, 7        (optional; verify)
///   num_deg = 2          (optional)
///   den_deg = 0          (optional)
///   lambda_max = 100     (optional)
///   seed = 0             (optional)
struct SurfaceFile {
  std::string name;
  std::string a4, a6;
  std::optional<std::vector<std::uint64_t>> primes;
  std::optional<int> num_deg, den_deg, lambda_max;
  std::optional<std::uint64_t> seed;
};

namespace detail {

inline std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::uint64_t parse_unsigned(const std::string& v, const std::string& what) {
  if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos || v.size() > 18)
    throw InputError(what + ": expected a non-negative integer, got '" + v + "'");
  return std::stoull(v);
}

inline int parse_small(const std::string& v, const std::string& what) {
  std::uint64_t n = parse_unsigned(v, what);
  if (n > 1000000) throw InputError(what + ": value " + v + " out of range");
  return static_cast<int>(n);
}

}  // namespace detail

inline SurfaceFile parse_surface_file(const std::string& text) {
  SurfaceFile f;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool have_a4 = false, have_a6 = false;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    std::string where = "line " + std::to_string(lineno);
    if (eq == std::string::npos) throw InputError(where + ": expected 'key = value'");
    std::string key = detail::trim(line.substr(0, eq)), value = detail::trim(line.substr(eq + 1));
    if (key == "name") {
      f.name = value;
    } else if (key == "a4") {
      f.a4 = value;
      have_a4 = true;
    } else if (key == "a6") {
      f.a6 = value;
      have_a6 = true;
    } else if (key == "primes") {
      std::vector<std::uint64_t> ps;
      std::istringstream items(value);
      std::string item;
      while (std::getline(items, item, ',')) ps.push_back(detail::parse_unsigned(detail::trim(item), where + ": primes"));
      f.primes = ps;
    } else if (key == "num_deg") {
      f.num_deg = detail::parse_small(value, where + ": num_deg");
    } else if (key == "den_deg") {
      f.den_deg = detail::parse_small(value, where + ": den_deg");
    } else if (key == "lambda_max") {
      f.lambda_max = detail::parse_small(value, where + ": lambda_max");
    } else if (key == "seed") {
      f.seed = detail::parse_unsigned(value, where + ": seed");
    } else {
      throw InputError(where + ": unknown key '" + key + "'");
    }
  }
  if (!have_a4 || !have_a6) throw InputError("surface file must set both a4 and a6");
  return f;
}

/// One invocation. Flags override the surface file's options.
struct Options {
  std::string command;
  std::string input_path;
  std::optional<std::string> input_text;  // used instead of reading input_path
  std::optional<std::uint64_t> prime;
  std::optional<std::string> x;
  std::optional<int> num_deg, den_deg, lambda_max;
  bool force = false;
  std::optional<std::uint64_t> seed;
};

struct Outcome {
  json report;
  int exit_code = 0;
};

/// Pretty-printed with sorted keys and a trailing newline.
inline std::string serialize(const json& report) { return report.dump(2) + "\n"; }

namespace detail {

/// 64-bit integers as numbers, anything larger as a decimal string.
inline json integer(const Integer& n) {
  if (mpz_fits_slong_p(n.get_mpz_t())) return n.get_si();
  return n.get_str();
}

inline json valuation_json(int v) { return v == kInfiniteValuation ? json("inf") : json(v); }

inline json surface_json(const WeierstrassSurface& s) {
  const auto& inf = s.at_infinity();
  return {
      {"a4", s.a4().str()},
      {"a6", s.a6().str()},
      {"d", s.d()},
      {"delta", s.delta().str()},
      {"j", s.j().str()},
      // Written in the variable t so every expression re-parses; the
      // coordinate on this chart is s = 1/t.
      {"chart_infinity", {{"a4", inf.a4.str()}, {"a6", inf.a6.str()}, {"delta", inf.delta.str()}, {"j", inf.j.str()}}},
  };
}

inline json fibres_json(const FibreConfiguration& cfg) {
  json arr = json::array();
  for (const auto& e : cfg.entries) {
    arr.push_back({
        {"place", e.place.str()},
        {"chart", e.place.is_infinity() ? "s" : "t"},
        {"degree", e.place.degree()},
        {"type", e.type.symbol()},
        {"components", e.type.components},
        {"euler", e.type.euler},
        {"valuations", {{"a4", valuation_json(e.valuations.a4)}, {"a6", valuation_json(e.valuations.a6)}, {"delta", e.valuations.delta}}},
    });
  }
  return arr;
}

inline json certificate_json(const Certificate& c) {
  return {{"kind", to_string(c.kind)}, {"function", c.function}, {"detail", c.detail}};
}

inline json bad_primes_json(const BadPrimeSet& b) {
  json primes = json::array(), certs = json::object(), unfactored = json::array();
  for (const auto& [p, cs] : b.reasons) {
    primes.push_back(integer(p));
    json list = json::array();
    for (const auto& c : cs) list.push_back(certificate_json(c));
    certs[p.get_str()] = list;
  }
  for (const auto& [n, c] : b.unfactored) {
    json entry = certificate_json(c);
    entry["cofactor"] = n.get_str();
    unfactored.push_back(entry);
  }
  return {{"primes", primes}, {"certificates", certs}, {"unfactored", unfactored}};
}

inline json analyze_json(const WeierstrassSurface& s, const FibreConfiguration& cfg, const BadPrimeSet& bad) {
  return {
      {"model", surface_json(s)},
      {"fibres", fibres_json(cfg)},
      {"euler_sum", cfg.euler_sum()},
      {"trivial_lattice_rank", trivial_lattice_rank(cfg)},
      {"has_reducible_fibre", cfg.has_reducible_fibre()},
      {"bad_primes", bad_primes_json(bad)},
  };
}

inline json section_json(const SectionModP& s) { return {{"x", s.x.str()}, {"y", s.y.str()}}; }

inline json divisor_json(const std::vector<DivisorPoint>& d) {
  json arr = json::array();
  for (const auto& pt : d) {
    arr.push_back({
        {"place", pt.place_str()},
        {"degree", pt.place ? pt.place->degree() : 1},
        {"kind", pt.order > 0 ? "zero" : "pole"},
        {"order", pt.order > 0 ? pt.order : -pt.order},
    });
  }
  return arr;
}

inline json witness_json(const TorsionWitness& w) {
  return {
      {"prime", w.p},
      {"section", section_json(w.section)},
      {"multiplier", w.multiplier},
      {"rationale", w.rationale},
      {"caveat_n", w.caveat_n},
      {"caveat", w.caveat},
  };
}

inline json cover_json(const CoverData& c, const SpecialFibreReport& r, const TorsionWitness& w) {
  return {
      {"prime", c.p},
      {"section", section_json(c.section)},
      {"lift", {{"f0", c.lift.f0.str()}, {"f1", c.lift.f1.str()}, {"lambda", c.lift.lambda}, {"f", c.lift.f().str()}}},
      {"G", c.G.str()},
      {"J", c.J.str()},
      {"kernel", {{"c", to_string(c.kernel.c)}, {"S", c.kernel.S.str()}, {"v", c.kernel.v.str()}}},
      {"genus", c.genus},
      {"two_section", c.two_section},
      {"special_fibre",
       {{"split", r.split}, {"g_bar", r.g_bar.str()}, {"intersection", divisor_json(r.intersection)}, {"involution_swap", r.involution_swap}}},
      {"witness", witness_json(w)},
  };
}

inline json star_json(const StarReport& r) {
  json diags = json::array();
  for (const auto& d : r.diagnostics) {
    diags.push_back({{"function", d.name}, {"integral", d.integral}, {"preserved", d.preserved}, {"reason", d.reason}});
  }
  return {{"prime", r.p}, {"pass", r.pass}, {"residue_char_ok", r.residue_char_ok}, {"specialization_ok", r.specialization_ok},
          {"specialization_note", r.specialization_note}, {"diagnostics", diags}};
}

inline json error_json(const char* kind, const std::string& message, int exit_code, long offset = -1) {
  json e = {{"kind", kind}, {"message", message}, {"exit_code", exit_code}};
  if (offset >= 0) e["offset"] = offset;
  return e;
}

struct Context {
  Options opt;
  SurfaceFile file;
  json report;
};

inline std::string read_input(const Options& o) {
  if (o.input_text) return *o.input_text;
  if (o.input_path.empty()) throw InputError("--input is required");
  std::ifstream in(o.input_path);
  if (!in) throw InputError("cannot read input file '" + o.input_path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::uint64_t require_prime(const Options& o) {
  if (!o.prime) throw InputError("--prime is required for " + o.command);
  require_odd_prime(*o.prime);
  return *o.prime;
}

inline SearchBounds bounds(const Context& c) {
  SearchBounds b;
  b.num_deg = c.opt.num_deg ? *c.opt.num_deg : c.file.num_deg.value_or(-1);
  b.den_deg = c.opt.den_deg ? *c.opt.den_deg : c.file.den_deg.value_or(0);
  return b;
}

inline int lambda_max(const Context& c) {
  return c.opt.lambda_max ? *c.opt.lambda_max : c.file.lambda_max.value_or(kDefaultLambdaMax);
}

inline json run_sections(Context& c, const WeierstrassSurface& s) {
  std::uint64_t p = require_prime(c.opt);
  auto b = bounds(c);
  int num_deg = b.num_deg >= 0 ? b.num_deg : 2 * s.d() + 2 * b.den_deg;
  auto star = check_star(s, p);
  if (!star.pass) c.report["warnings"].push_back("p = " + std::to_string(p) + " fails the good-reduction check; sections are reported but no cover will be built without --force");
  auto found = search_sections(s, p, b);
  json arr = json::array();
  for (const auto& sec : found) arr.push_back(section_json(sec));
  return {{"prime", p}, {"bounds", {{"num_deg", num_deg}, {"den_deg", b.den_deg}}}, {"count", found.size()}, {"sections", arr},
          {"star", star_json(star)}};
}

inline json run_cover(Context& c, const WeierstrassSurface& s) {
  std::uint64_t p = require_prime(c.opt);
  if (!c.opt.x) throw InputError("--x is required for cover");
  FpFunc x = reduce_mod_p(parse_function(*c.opt.x), p);
  // Gate first so a forced run records its warning even when a later step fails.
  for (auto& w : admit_prime(s, p, c.opt.force)) c.report["warnings"].push_back(w);
  auto [cover, fibre] = build_cover(s, p, x, lambda_max(c), c.opt.force);
  auto w = torsion_witness(cover, fibre, fibre_configuration(s));
  return cover_json(cover, fibre, w);
}

inline json run_verify(Context& c, const WeierstrassSurface& s, const FibreConfiguration& cfg, const BadPrimeSet& bad) {
  std::vector<std::uint64_t> primes;
  if (c.file.primes) {
    primes = *c.file.primes;
  } else {
    for (std::uint64_t p = 5; p < 50; ++p)
      if (is_prime(p) && !bad.contains(Integer(static_cast<unsigned long>(p)))) primes.push_back(p);
  }
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  auto b = bounds(c);
  int lam = lambda_max(c);
  json per_prime = json::array();
  int witnesses = 0;
  for (std::uint64_t p : primes) {
    require_odd_prime(p);
    json entry = {{"prime", p}};
    bool good = check_star(s, p).pass;
    entry["star_pass"] = good;
    json covers = json::array(), errors = json::array();
    int two_torsion = 0;
    std::vector<SectionModP> found;
    try {
      found = search_sections(s, p, b);
    } catch (const DomainError& e) {
      errors.push_back({{"x", nullptr}, {"kind", to_string(e.kind())}, {"message", e.what()}});
    }
    for (const auto& sec : found) {
      if (sec.y.is_zero()) {
        ++two_torsion;
        continue;
      }
      try {
        auto [cover, fibre] = build_cover(s, p, sec, lam, c.opt.force);
        auto w = torsion_witness(cover, fibre, cfg);
        covers.push_back({
            {"x", sec.x.str()},
            {"y", sec.y.str()},
            {"lambda", cover.lift.lambda},
            {"S", cover.kernel.S.str()},
            {"genus", cover.genus},
            {"split", fibre.split},
            {"intersection", divisor_json(fibre.intersection)},
            {"witness", {{"multiplier", w.multiplier}, {"caveat_n", w.caveat_n}}},
        });
        ++witnesses;
      } catch (const DomainError& e) {
        errors.push_back({{"x", sec.x.str()}, {"kind", to_string(e.kind())}, {"message", e.what()}});
      }
    }
    entry["sections_found"] = found.size();
    entry["two_torsion_skipped"] = two_torsion;
    entry["covers"] = covers;
    entry["errors"] = errors;
    per_prime.push_back(entry);
  }
  return {{"analysis", analyze_json(s, cfg, bad)}, {"primes", per_prime}, {"witness_count", witnesses},
          {"bounds", {{"num_deg", b.num_deg >= 0 ? b.num_deg : 2 * s.d() + 2 * b.den_deg}, {"den_deg", b.den_deg}}}};
}

inline void dispatch(Context& c) {
  c.file = parse_surface_file(read_input(c.opt));
  json input = {{"name", c.file.name}, {"a4", c.file.a4}, {"a6", c.file.a6}};
  std::uint64_t seed = c.opt.seed ? *c.opt.seed : c.file.seed.value_or(0);
  input["seed"] = seed;
  json flags = json::object();
  if (c.opt.prime) flags["prime"] = *c.opt.prime;
  if (c.opt.x) flags["x"] = *c.opt.x;
  if (c.opt.num_deg) flags["num_deg"] = *c.opt.num_deg;
  if (c.opt.den_deg) flags["den_deg"] = *c.opt.den_deg;
  if (c.opt.lambda_max) flags["lambda_max"] = *c.opt.lambda_max;
  if (c.opt.force) flags["force"] = true;
  input["flags"] = flags;
  c.report["input"] = input;

  QPoly a4 = parse_polynomial(c.file.a4), a6 = parse_polynomial(c.file.a6);
  auto s = minimal_model(a4, a6);
  const std::string& cmd = c.opt.command;
  if (cmd == "analyze") {
    auto cfg = fibre_configuration(s);
    c.report["results"] = analyze_json(s, cfg, bad_primes(s));
  } else if (cmd == "sections") {
    c.report["results"] = run_sections(c, s);
  } else if (cmd == "cover") {
    c.report["results"] = run_cover(c, s);
  } else if (cmd == "verify") {
    auto cfg = fibre_configuration(s);
    c.report["results"] = run_verify(c, s, cfg, bad_primes(s));
  } else {
    throw InputError("unknown command '" + cmd + "'");
  }
}

}  // namespace detail

/// Runs one command. Exit codes: 0 success, 1 domain error, 2 input error,
/// 3 internal invariant violation; the report always describes the outcome.
inline Outcome run(const Options& opt) {
  detail::Context c{opt, {}, json::object()};
  c.report["tool"] = {{"name", "ellsurf"}, {"version", kToolVersion}};
  c.report["command"] = opt.command;
  c.report["warnings"] = json::array();
  c.report["results"] = nullptr;
  c.report["error"] = nullptr;
  int code = 0;
  try {
    detail::dispatch(c);
  } catch (const InputError& e) {
    code = 2;
    c.report["error"] = detail::error_json(to_string(e.kind()), e.what(), code, e.offset());
  } catch (const DomainError& e) {
    code = 1;
    c.report["error"] = detail::error_json(to_string(e.kind()), e.what(), code);
  } catch (const InvariantViolation& e) {
    code = 3;
    c.report["error"] = detail::error_json("InvariantViolation", e.what(), code);
  } catch (const std::exception& e) {
    code = 3;
    c.report["error"] = detail::error_json("InternalError", e.what(), code);
  }
  c.report["status"] = code == 0 ? "ok" : "error";
  return {c.report, code};
}

}  // namespace ellsurf::cli
