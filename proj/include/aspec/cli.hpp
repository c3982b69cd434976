#pragma once

#include <chrono>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "aspec/system_io.hpp"

namespace aspec {

struct RunConfig {
  std::string command;
  std::string system_path;
  std::string n_range = "4..12";       // "lo..hi" or a single value
  std::vector<std::string> eps;        // rationals; empty = default grid
  std::string g_spec = "const:0";
  std::string kg_spec = "const:1";
  std::string mode = "plain";          // plain | mistake
  std::string algorithm = "exact";     // exact | greedy
  long long cap = default_word_cap();
  long long n_cap = 12;
  std::vector<std::string> delta;      // certificate search grid
  std::vector<std::string> segments;   // trace: "target:len:eps"
  int family_m = 1;
  std::string cert_x, cert_y;          // family: certificate data
  long long cert_n = 4;
  std::string cert_sigma, cert_delta;
  std::string out_format = "json";     // json | csv
  std::string out_path;                // empty or "-": stdout
};

inline MistakeFunction parse_g_spec(const std::string& spec) {
  auto colon = spec.find(':');
  if (colon == std::string::npos)
    raise(Errc::parse_error, "mistake function spec needs kind:args, got \"" + spec + "\"");
  std::string kind = spec.substr(0, colon);
  std::string rest = spec.substr(colon + 1);
  auto split = [](const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
      std::size_t at = s.find(sep, start);
      parts.push_back(s.substr(start, at == std::string::npos ? at : at - start));
      if (at == std::string::npos) break;
      start = at + 1;
    }
    return parts;
  };
  if (kind == "const") {
    Rat v = parse_rational(rest);
    if (rat_den(v) != 1) raise(Errc::parse_error, "const mistake value must be an integer");
    return MistakeFunction::constant(rat_num(v).convert_to<long long>());
  }
  if (kind == "log") return MistakeFunction::logarithmic(parse_rational(rest));
  if (kind == "logtable") {
    std::vector<LogStep> steps;
    for (const std::string& part : split(rest, ';')) {
      auto eq = part.find('=');
      if (eq == std::string::npos)
        raise(Errc::parse_error, "logtable rows look like eps=c, got \"" + part + "\"");
      steps.push_back(LogStep{parse_rational(part.substr(0, eq)),
                              parse_rational(part.substr(eq + 1))});
    }
    return MistakeFunction::logarithmic(std::move(steps));
  }
  if (kind == "pow") {
    std::vector<std::string> parts = split(rest, ',');
    if (parts.size() != 2)
      raise(Errc::parse_error, "pow spec looks like pow:scale,alpha, got \"" + spec + "\"");
    return MistakeFunction::power(parse_rational(parts[0]), parse_rational(parts[1]));
  }
  if (kind == "table") {
    std::vector<TableRow> rows;
    for (const std::string& part : split(rest, ';')) {
      auto eq = part.find('=');
      if (eq == std::string::npos)
        raise(Errc::parse_error, "table rows look like n=value, got \"" + part + "\"");
      rows.push_back(TableRow{std::stoll(part.substr(0, eq)), std::stoll(part.substr(eq + 1))});
    }
    return MistakeFunction::table(std::move(rows));
  }
  raise(Errc::parse_error, "unknown mistake function kind \"" + kind + "\"");
}

inline GapFunction parse_kg_spec(const std::string& spec) {
  auto colon = spec.find(':');
  if (colon == std::string::npos)
    raise(Errc::parse_error, "gap spec needs kind:args, got \"" + spec + "\"");
  std::string kind = spec.substr(0, colon);
  std::string rest = spec.substr(colon + 1);
  if (kind == "const") return GapFunction::constant(std::stoll(rest));
  if (kind == "table") {
    std::vector<std::pair<Rat, long long>> rows;
    std::size_t start = 0;
    while (start <= rest.size()) {
      std::size_t at = rest.find(';', start);
      std::string part = rest.substr(start, at == std::string::npos ? at : at - start);
      auto eq = part.find('=');
      if (eq == std::string::npos)
        raise(Errc::parse_error, "gap table rows look like eps=K, got \"" + part + "\"");
      rows.emplace_back(parse_rational(part.substr(0, eq)), std::stoll(part.substr(eq + 1)));
      if (at == std::string::npos) break;
      start = at + 1;
    }
    return GapFunction::table(std::move(rows));
  }
  raise(Errc::parse_error, "unknown gap function kind \"" + kind + "\"");
}

namespace detail {

inline std::vector<long long> parse_n_range(const std::string& s) {
  auto dots = s.find("..");
  std::vector<long long> ns;
  if (dots == std::string::npos) {
    ns.push_back(std::stoll(s));
    return ns;
  }
  long long lo = std::stoll(s.substr(0, dots));
  long long hi = std::stoll(s.substr(dots + 2));
  if (lo < 1 || hi < lo) raise(Errc::parse_error, "bad n range \"" + s + "\"");
  for (long long n = lo; n <= hi; ++n) ns.push_back(n);
  return ns;
}

inline std::vector<Rat> parse_eps_grid(const std::vector<std::string>& eps) {
  std::vector<Rat> out;
  if (eps.empty()) {
    out = {Rat(9, 10), Rat(3, 5), Rat(3, 10), Rat(3, 20)};
    return out;
  }
  for (const std::string& e : eps) out.push_back(parse_rational(e));
  return out;
}

// "target:len:eps", split from the right so the target may contain anything
inline Segment parse_segment_spec(const SystemSpec& sys, const std::string& s) {
  auto second = s.rfind(':');
  if (second == std::string::npos)
    raise(Errc::parse_error, "segment spec looks like target:len:eps, got \"" + s + "\"");
  auto first = s.rfind(':', second - 1);
  if (first == std::string::npos)
    raise(Errc::parse_error, "segment spec looks like target:len:eps, got \"" + s + "\"");
  Segment seg;
  seg.target = parse_point_for(sys, s.substr(0, first));
  seg.len = std::stoll(s.substr(first + 1, second - first - 1));
  seg.eps = parse_rational(s.substr(second + 1));
  return seg;
}

inline void write_output(const RunConfig& cfg, const std::string& text) {
  if (cfg.out_path.empty() || cfg.out_path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(cfg.out_path);
  if (!out) raise(Errc::validation_error, "cannot write to " + cfg.out_path);
  out << text;
}

inline Json config_echo(const RunConfig& cfg) {
  Json j;
  j["command"] = cfg.command;
  j["system"] = cfg.system_path;
  j["n"] = cfg.n_range;
  j["eps"] = cfg.eps;
  j["g"] = cfg.g_spec;
  j["kg"] = cfg.kg_spec;
  j["mode"] = cfg.mode;
  j["algorithm"] = cfg.algorithm;
  j["cap"] = cfg.cap;
  return j;
}

}  // namespace detail

// exit code 0: success; 1: negative result (no certificate, no tracing point,
// collapse fails); 2: error
inline int run(const RunConfig& cfg) {
  using Clock = std::chrono::steady_clock;
  const auto t0 = Clock::now();
  auto emit_json = [&](Json results, int code) {
    Json j;
    j["command"] = cfg.command;
    j["config"] = detail::config_echo(cfg);
    j["results"] = std::move(results);
    j["timing_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0)
                         .count();
    detail::write_output(cfg, j.dump(2));
    return code;
  };
  try {
    SystemSpec sys = parse_system_file(cfg.system_path);
    const bool exact = cfg.algorithm != "greedy";
    if (cfg.command == "entropy") {
      std::optional<MistakeFunction> g;
      if (cfg.mode == "mistake") g = parse_g_spec(cfg.g_spec);
      EntropyProfile prof =
          entropy_profile(sys, detail::parse_n_range(cfg.n_range),
                          detail::parse_eps_grid(cfg.eps), g, exact, cfg.cap);
      if (cfg.out_format == "csv") {
        detail::write_output(cfg, entropy_profile_to_csv(prof));
        return 0;
      }
      return emit_json(entropy_profile_to_json(sys, prof), 0);
    }
    if (cfg.command == "certificate") {
      MistakeFunction g = parse_g_spec(cfg.g_spec);
      GapFunction kg = parse_kg_spec(cfg.kg_spec);
      std::vector<Rat> grid;
      for (const std::string& d : cfg.delta) grid.push_back(parse_rational(d));
      if (grid.empty()) grid = {Rat(1, 2), Rat(1, 4), Rat(1, 10)};
      std::optional<Certificate> cert = certificate_search(sys, g, kg, grid, cfg.n_cap, cfg.cap);
      if (!cert) return emit_json(Json(nullptr), 1);
      Json res = certificate_to_json(sys, *cert);
      res["entropy_lower_bound"] = entropy_lower_bound(*cert);
      return emit_json(res, 0);
    }
    if (cfg.command == "trace") {
      MistakeFunction g = parse_g_spec(cfg.g_spec);
      GapFunction kg = parse_kg_spec(cfg.kg_spec);
      std::vector<Segment> segs;
      for (const std::string& s : cfg.segments)
        segs.push_back(detail::parse_segment_spec(sys, s));
      std::optional<Point> z = trace_point(sys, segs, g, kg, cfg.cap);
      if (!z) return emit_json(Json(nullptr), 1);
      Json res;
      res["point"] = format_point_for(sys, *z);
      res["verified"] = verify_trace(sys, *z, segs, g);
      return emit_json(res, 0);
    }
    if (cfg.command == "check-theorem1") {
      CollapseOutcome outcome = check_collapse_condition(sys, cfg.cap);
      Json res;
      res["collapse"] = collapse_outcome_to_json(sys, outcome);
      if (!outcome.ok) {
        res["verdict"] = "FAIL";
        return emit_json(res, 1);
      }
      std::vector<long long> ns = detail::parse_n_range(cfg.n_range);
      long long n_max = std::max(ns.back(), outcome.witness.horizon);
      StabilizationReport rep = zero_entropy_witness(sys, outcome.witness, n_max,
                                                     detail::parse_eps_grid(cfg.eps), cfg.cap);
      res["stabilization"] = stabilization_to_json(rep);
      res["verdict"] = rep.ok ? "PASS" : "FAIL";
      return emit_json(res, rep.ok ? 0 : 1);
    }
    if (cfg.command == "family") {
      Certificate cert{parse_point_for(sys, cfg.cert_x),
                       parse_point_for(sys, cfg.cert_y),
                       cfg.cert_n,
                       parse_rational(cfg.cert_sigma),
                       parse_rational(cfg.cert_delta),
                       parse_g_spec(cfg.g_spec),
                       parse_kg_spec(cfg.kg_spec)};
      FamilyReport rep = build_separated_family(sys, cert, cfg.family_m, cfg.cap);
      return emit_json(family_report_to_json(sys, rep), rep.all_separated ? 0 : 1);
    }
    if (cfg.command == "oracle") {
      Json res;
      res["variant"] = variant_name(sys.variant);
      res["alphabet"] = alphabet_size(sys);
      if (sys.variant == SystemVariant::full_shift || sys.variant == SystemVariant::sft)
        res["transfer_matrix_entropy"] = transfer_matrix_entropy(sys);
      if (sys.variant == SystemVariant::beta_shift) {
        Json digits = Json::array();
        for (int d : beta_expansion_of_one(sys.beta, sys.expansion_len)) digits.push_back(d);
        res["expansion_of_one"] = digits;
      }
      if (sys.variant != SystemVariant::finite_map) {
        Json counts = Json::array();
        for (long long n : detail::parse_n_range(cfg.n_range))
          counts.push_back(
              {{"n", n},
               {"words", static_cast<long long>(enumerate_words(sys, n, cfg.cap).size())}});
        res["word_counts"] = counts;
      }
      return emit_json(res, 0);
    }
    raise(Errc::parse_error, "unknown command \"" + cfg.command + "\"");
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}

inline int cli_main(int argc, char** argv) {
  CLI::App app{"almost-specification and entropy toolkit for shift spaces"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--system", cfg.system_path, "system definition json")->required();
    sub->add_option("--cap", cfg.cap, "enumeration cap (env ASPEC_CAP overrides default)");
    sub->add_option("--format", cfg.out_format, "json or csv");
    sub->add_option("--out", cfg.out_path, "output path, - for stdout");
  };

  CLI::App* entropy = app.add_subcommand("entropy", "separated-set counts and slope");
  add_common(entropy);
  entropy->add_option("--n", cfg.n_range, "horizon range lo..hi");
  entropy->add_option("--eps", cfg.eps, "eps grid entries, rationals")->delimiter(',');
  entropy->add_option("--mode", cfg.mode, "plain or mistake");
  entropy->add_option("--g", cfg.g_spec, "mistake function, e.g. const:1");
  entropy->add_option("--algorithm", cfg.algorithm, "exact or greedy");

  CLI::App* cert = app.add_subcommand("certificate", "search for a separated-pair witness");
  add_common(cert);
  cert->add_option("--g", cfg.g_spec, "mistake function");
  cert->add_option("--kg", cfg.kg_spec, "gap function, e.g. const:1");
  cert->add_option("--delta", cfg.delta, "delta grid entries")->delimiter(',');
  cert->add_option("--n-cap", cfg.n_cap, "largest horizon to scan");

  CLI::App* trace = app.add_subcommand("trace", "find a point shadowing the segments");
  add_common(trace);
  trace->add_option("--segment", cfg.segments, "segment as target:len:eps, repeatable")
      ->required();
  trace->add_option("--g", cfg.g_spec, "mistake function");
  trace->add_option("--kg", cfg.kg_spec, "gap function");

  CLI::App* thm1 = app.add_subcommand("check-theorem1", "collapse witness and stabilization");
  add_common(thm1);
  thm1->add_option("--n", cfg.n_range, "stabilization scan range");
  thm1->add_option("--eps", cfg.eps, "eps grid entries")->delimiter(',');

  CLI::App* family = app.add_subcommand("family", "traced separated family from a certificate");
  add_common(family);
  family->add_option("--x", cfg.cert_x, "certificate point x")->required();
  family->add_option("--y", cfg.cert_y, "certificate point y")->required();
  family->add_option("--N", cfg.cert_n, "certificate horizon")->required();
  family->add_option("--sigma", cfg.cert_sigma, "certificate sigma")->required();
  family->add_option("--delta", cfg.cert_delta, "certificate delta")->required();
  family->add_option("--g", cfg.g_spec, "mistake function");
  family->add_option("--kg", cfg.kg_spec, "gap function");
  family->add_option("--m", cfg.family_m, "block word length");

  CLI::App* oracle = app.add_subcommand("oracle", "independent reference values");
  add_common(oracle);
  oracle->add_option("--n", cfg.n_range, "word-count range");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  return run(cfg);
}

}  // namespace aspec
