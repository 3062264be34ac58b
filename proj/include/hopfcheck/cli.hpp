#pragma once

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hopfcheck/cdalg.hpp"
#include "hopfcheck/errors.hpp"
#include "hopfcheck/hopf.hpp"
#include "hopfcheck/joinmul.hpp"
#include "hopfcheck/laws.hpp"
#include "hopfcheck/report.hpp"

namespace hopfcheck {

inline constexpr std::string_view kVersion = "0.1.0";
inline constexpr unsigned kLadderMaxLevel = 4;

enum class Format { json, csv, text };

inline std::string_view to_string(Format f) {
  switch (f) {
    case Format::json: return "json";
    case Format::csv: return "csv";
    case Format::text: return "text";
  }
  return "?";
}

struct RunConfig {
  std::string subcommand;
  std::string instance;  // empty: the subcommand's default set
  std::optional<unsigned> level;
  Mode mode = Mode::exact;
  std::uint64_t samples = 10000;
  std::uint64_t seed = 0;
  double tolerance = 1e-9;
  std::string output;  // empty: stdout
  Format format = Format::json;
  std::size_t grid = 64;
  unsigned workers = 0;  // 0: hardware concurrency

  SuiteOptions suite_options() const {
    SuiteOptions o;
    o.mode = mode;
    o.samples = samples;
    o.seed = seed;
    o.tolerance = tolerance;
    o.workers = workers == 0 ? default_workers() : workers;
    return o;
  }
};

struct ReportDocument {
  std::string version{kVersion};
  RunConfig config;
  std::vector<LawReport> reports;
  double duration_ms = 0.0;

  /// Fails iff some report disagrees with its built-in expectation.
  bool ok() const {
    return std::all_of(reports.begin(), reports.end(), [](const LawReport& r) { return r.met(); });
  }
};

inline const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names = {"laws",   "zerodiv", "spheroid", "imaginaroid",
                                                 "hspace", "diamond", "fiber",    "fibration"};
  return names;
}

// ---- suites ---------------------------------------------------------------

namespace detail {

using Reports = std::vector<LawReport>;

inline void append(Reports& out, Reports more) {
  for (auto& r : more) out.push_back(std::move(r));
}

inline std::vector<std::string> pick(const RunConfig& cfg, std::vector<std::string> defaults) {
  if (cfg.instance.empty()) return defaults;
  return {cfg.instance};
}

inline std::vector<unsigned> pick_levels(const RunConfig& cfg, unsigned lo, unsigned hi) {
  if (cfg.level) {
    if (*cfg.level > kDefaultMaxLevel) {
      throw UsageError("level must be at most " + std::to_string(kDefaultMaxLevel));
    }
    return {*cfg.level};
  }
  std::vector<unsigned> out;
  for (unsigned l = lo; l <= hi; ++l) out.push_back(l);
  return out;
}

template <class S>
Reports spheroid_suite(const std::string& name, const SuiteOptions& opts) {
  if (name == "sign") return spheroid_check(sign_spheroid<S>(), opts);
  if (name == "i" || name == "ii") return spheroid_check(induced_spheroid(named_imaginaroid<S>(name)), opts);
  throw UsageError("unknown spheroid instance: " + name + " (expected sign, i or ii)");
}

/// Imaginaroid laws, associativity and the f/g identities. "o" runs with an
/// assumed certificate and is expected to fail both.
template <class S>
Reports imaginaroid_suite(const std::string& name, const SuiteOptions& opts) {
  const auto inst = named_imaginaroid<S>(name);
  Reports out = imaginaroid_check(inst, opts);
  auto [assoc, cert] = certify_associative(inst, opts);
  out.push_back(std::move(assoc));
  if (!cert && inst.associativity == Expect::fails) cert = AssocCertificate::assume(inst.name);
  if (cert) out.push_back(fg_lemma_suite(inst, *cert, opts));
  return out;
}

inline unsigned hspace_level(const std::string& name) {
  if (name == "s1") return 0;
  if (name == "s3") return 1;
  if (name == "s7") return 2;
  throw UsageError("unknown hspace instance: " + name + " (expected s0, s1, s3 or s7)");
}

/// s0 is the sign multiplication; s1, s3, s7 are join(G, G) for G the unit
/// sphere one level down.
template <class S>
Reports hspace_suite(const std::string& name, const SuiteOptions& opts) {
  if (name == "s0") {
    const auto h = cd_hspace<S>(0, name);
    Reports out = hspace_check(h, opts);
    out.push_back(hspace_associativity(h, opts));
    return out;
  }
  const unsigned level = hspace_level(name);
  const auto g = cd_imaginaroid<S>(level, name + "/G");
  auto [assoc, cert] = certify_associative(g, opts);
  Reports out{assoc};
  if (!cert) return out;
  const auto h = join_hspace(g, *cert, name);
  append(out, hspace_check(h, opts));
  out.push_back(hspace_associativity(h, opts));
  out.push_back(oracle_equivalence_check(g, *cert, name, opts));
  if (opts.mode == Mode::floating) out.push_back(glue_continuity_check(level, name, opts));
  return out;
}

inline unsigned diamond_level(const RunConfig& cfg) {
  if (cfg.level) {
    if (*cfg.level > 3) throw UsageError("diamond level must be at most 3");
    return *cfg.level;
  }
  const std::string name = cfg.instance.empty() ? "ii" : cfg.instance;
  if (name == "real") return 0;
  if (name == "i") return 1;
  if (name == "ii") return 2;
  if (name == "o") return 3;
  throw UsageError("unknown diamond instance: " + name + " (expected real, i, ii or o)");
}

}  // namespace detail

/// Runs the suite selected by cfg.subcommand. Throws UsageError on a bad
/// selector.
inline ReportDocument execute(const RunConfig& cfg) {
  if (cfg.samples == 0) throw UsageError("--samples must be at least 1");
  const auto start = std::chrono::steady_clock::now();
  const SuiteOptions opts = cfg.suite_options();
  ReportDocument doc;
  doc.config = cfg;
  auto& out = doc.reports;
  const std::string& sub = cfg.subcommand;

  if (sub == "laws") {
    for (unsigned l : detail::pick_levels(cfg, 0, kLadderMaxLevel)) detail::append(out, law_suite(l, opts));
  } else if (sub == "zerodiv") {
    for (unsigned l : detail::pick_levels(cfg, 0, kLadderMaxLevel)) out.push_back(zero_divisor_report(l, opts));
  } else if (sub == "spheroid") {
    for (const auto& n : detail::pick(cfg, {"sign", "i", "ii"})) {
      detail::append(out, with_scalar(cfg.mode, [&](auto tag) {
                       return detail::spheroid_suite<decltype(tag)>(n, opts);
                     }));
    }
  } else if (sub == "imaginaroid") {
    for (const auto& n : detail::pick(cfg, {"i", "ii", "o"})) {
      detail::append(out, with_scalar(cfg.mode, [&](auto tag) {
                       return detail::imaginaroid_suite<decltype(tag)>(n, opts);
                     }));
    }
  } else if (sub == "hspace") {
    for (const auto& n : detail::pick(cfg, {"s0", "s1", "s3", "s7"})) {
      detail::append(out, with_scalar(cfg.mode, [&](auto tag) {
                       return detail::hspace_suite<decltype(tag)>(n, opts);
                     }));
    }
  } else if (sub == "diamond") {
    const unsigned level = detail::diamond_level(cfg);
    const std::string name = cfg.instance.empty() ? (cfg.level ? cd_algebra_name(level) : "ii") : cfg.instance;
    detail::append(out, diamond_suite(level, cfg.grid, name, opts));
  } else if (sub == "fiber") {
    for (const auto& n : detail::pick(cfg, {"real", "complex", "quaternionic"})) {
      detail::append(out, fiber_check(named_hopf(n), opts));
    }
  } else if (sub == "fibration") {
    for (const auto& n : detail::pick(cfg, {"real", "complex", "quaternionic"})) {
      detail::append(out, fibration_report(named_hopf(n), opts));
    }
  } else {
    throw UsageError("unknown subcommand: " + sub);
  }

  std::stable_sort(out.begin(), out.end(), [](const LawReport& a, const LawReport& b) {
    return std::tie(a.instance, a.law) < std::tie(b.instance, b.law);
  });
  doc.duration_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return doc;
}

// ---- emission -------------------------------------------------------------

inline nlohmann::ordered_json to_json(const Witness& w) {
  return {{"inputs", w.inputs}, {"lhs", w.lhs}, {"rhs", w.rhs}};
}

inline nlohmann::ordered_json to_json(const LawReport& r) {
  nlohmann::ordered_json j;
  j["law"] = r.law;
  j["instance"] = r.instance;
  j["status"] = to_string(r.status);
  j["samples"] = r.samples;
  j["tolerance"] = r.tolerance ? nlohmann::ordered_json(*r.tolerance) : nlohmann::ordered_json();
  j["max_residual"] = r.max_residual;
  if (r.witness) j["witness"] = to_json(*r.witness);
  j["seed"] = r.seed;
  j["duration_ms"] = r.duration_ms;
  j["expected"] = to_string(r.expected);
  return j;
}

inline nlohmann::ordered_json to_json(const RunConfig& c) {
  nlohmann::ordered_json j;
  j["subcommand"] = c.subcommand;
  j["instance"] = c.instance.empty() ? nlohmann::ordered_json() : nlohmann::ordered_json(c.instance);
  j["level"] = c.level ? nlohmann::ordered_json(*c.level) : nlohmann::ordered_json();
  j["mode"] = to_string(c.mode);
  j["samples"] = c.samples;
  j["seed"] = c.seed;
  j["tolerance"] = c.mode == Mode::floating ? nlohmann::ordered_json(c.tolerance) : nlohmann::ordered_json();
  j["output"] = c.output.empty() ? nlohmann::ordered_json() : nlohmann::ordered_json(c.output);
  j["format"] = to_string(c.format);
  if (c.subcommand == "diamond") j["grid"] = c.grid;
  return j;
}

inline nlohmann::ordered_json to_json(const ReportDocument& d) {
  nlohmann::ordered_json reports = nlohmann::ordered_json::array();
  for (const auto& r : d.reports) reports.push_back(to_json(r));
  nlohmann::ordered_json j;
  j["version"] = d.version;
  j["config"] = to_json(d.config);
  j["reports"] = std::move(reports);
  j["overall"] = d.ok() ? "pass" : "fail";
  j["duration_ms"] = d.duration_ms;
  return j;
}

namespace detail {

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

inline std::string join(const std::vector<std::string>& xs) {
  std::string s = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? " " : "") + xs[i];
  return s + "]";
}

inline std::string witness_text(const Witness& w) {
  std::string s = "inputs=";
  for (const auto& in : w.inputs) s += join(in);
  return s + " lhs=" + join(w.lhs) + " rhs=" + join(w.rhs);
}

inline std::string number(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

}  // namespace detail

/// One header line, then one row per report.
inline std::string to_csv(const ReportDocument& d) {
  std::string s = "law,instance,status,expected,samples,tolerance,max_residual,seed,duration_ms,witness\n";
  for (const auto& r : d.reports) {
    s += detail::csv_field(r.law) + "," + detail::csv_field(r.instance) + "," +
         std::string(to_string(r.status)) + "," + std::string(to_string(r.expected)) + "," +
         std::to_string(r.samples) + "," + (r.tolerance ? detail::number(*r.tolerance) : "") + "," +
         detail::number(r.max_residual) + "," + std::to_string(r.seed) + "," +
         detail::number(r.duration_ms) + "," +
         (r.witness ? detail::csv_field(detail::witness_text(*r.witness)) : "") + "\n";
  }
  return s;
}

inline std::string to_text(const ReportDocument& d) {
  std::ostringstream os;
  os << "hopfcheck " << d.version << "  " << d.config.subcommand << "  mode=" << to_string(d.config.mode)
     << " samples=" << d.config.samples << " seed=" << d.config.seed << "\n";
  for (const auto& r : d.reports) {
    os << (r.met() ? "ok   " : "FAIL ") << std::left << std::setw(28) << r.instance << std::setw(32)
       << r.law << to_string(r.status);
    if (r.expected == Expect::fails) os << " (expected)";
    os << "  n=" << r.samples;
    if (r.max_residual > 0) os << " residual=" << r.max_residual;
    os << "\n";
    if (r.witness) os << "     witness " << detail::witness_text(*r.witness) << "\n";
  }
  os << "overall: " << (d.ok() ? "pass" : "fail") << " (" << std::fixed << std::setprecision(1)
     << d.duration_ms << " ms)\n";
  return os.str();
}

inline std::string emit(const ReportDocument& d, Format f) {
  switch (f) {
    case Format::json: return to_json(d).dump(2) + "\n";
    case Format::csv: return to_csv(d);
    case Format::text: return to_text(d);
  }
  return {};
}

// ---- entry point ----------------------------------------------------------

/// Executes cfg and writes the document. 0: all expectations met,
/// 1: unexpected failure, 2: usage error or unwritable output.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  ReportDocument doc;
  try {
    doc = execute(cfg);
  } catch (const UsageError& e) {
    err << "hopfcheck: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "hopfcheck: " << cfg.subcommand << " aborted: " << e.what() << "\n";
    return 1;
  }
  const std::string bytes = emit(doc, cfg.format);
  if (cfg.output.empty()) {
    out << bytes;
  } else {
    std::ofstream f(cfg.output, std::ios::binary);
    if (f) f << bytes;
    if (!f) {
      err << "hopfcheck: cannot write " << cfg.output << "\n";
      return 2;
    }
    out << cfg.subcommand << ": " << doc.reports.size() << " reports, overall "
        << (doc.ok() ? "pass" : "fail") << "\n";
  }
  return doc.ok() ? 0 : 1;
}

/// Parses argv into a RunConfig and runs it. HOPFCHECK_SEED, when set,
/// overrides --seed.
inline int cli_main(int argc, const char* const* argv, std::ostream& out = std::cout,
                    std::ostream& err = std::cerr) {
  CLI::App app{"Cayley-Dickson, join and Hopf construction checks", "hopfcheck"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  RunConfig cfg;
  std::string mode = "exact";
  std::string format = "json";
  unsigned level = 0;
  const std::map<std::string, std::string> help = {
      {"laws", "Cayley-Dickson law ladder (levels 0-4)"},
      {"zerodiv", "exact zero-divisor search"},
      {"spheroid", "spheroid laws: sign, i, ii"},
      {"imaginaroid", "imaginaroid laws, associativity and f/g identities: i, ii, o"},
      {"hspace", "H-space laws and join multiplication: s0, s1, s3, s7"},
      {"diamond", "diamond fillers on a parameter grid"},
      {"fiber", "Hopf fiber properties: real, complex, quaternionic"},
      {"fibration", "full fibration report: real, complex, quaternionic"},
  };
  for (const auto& name : subcommands()) {
    CLI::App* sub = app.add_subcommand(name, help.at(name));
    sub->add_option("--instance", cfg.instance, "instance selector");
    sub->add_option("--level", level, "algebra level")->check(CLI::Range(0u, kDefaultMaxLevel));
    sub->add_option("--mode", mode, "exact or float")->check(CLI::IsMember({"exact", "float"}));
    sub->add_option("--samples", cfg.samples, "random samples per law")->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.seed, "base seed");
    sub->add_option("--tolerance", cfg.tolerance, "float tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--output", cfg.output, "report path (default stdout)");
    sub->add_option("--format", format, "json, csv or text")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_option("--workers", cfg.workers, "worker threads (0: all cores)");
    if (name == "diamond") {
      sub->add_option("--grid", cfg.grid, "grid cells per side")->check(CLI::PositiveNumber);
    }
    sub->callback([&, sub, name] {
      cfg.subcommand = name;
      if (sub->count("--level") > 0) cfg.level = level;
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "hopfcheck: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  cfg.mode = mode == "float" ? Mode::floating : Mode::exact;
  cfg.format = format == "csv" ? Format::csv : format == "text" ? Format::text : Format::json;
  if (const char* env = std::getenv("HOPFCHECK_SEED"); env != nullptr && *env != '\0') {
    try {
      std::size_t used = 0;
      cfg.seed = std::stoull(env, &used);
      if (used != std::string_view(env).size()) throw std::invalid_argument(env);
    } catch (const std::exception&) {
      err << "hopfcheck: HOPFCHECK_SEED must be a non-negative integer\n";
      return 2;
    }
  }
  return run(cfg, out, err);
}

}  // namespace hopfcheck
