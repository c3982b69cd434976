#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "aspec/separation.hpp"
#include "aspec/systems.hpp"
#include "aspec/theorems.hpp"

namespace aspec {

using Json = nlohmann::ordered_json;

namespace detail {

inline const Json& need_field(const Json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end())
    raise(Errc::parse_error, std::string("missing field \"") + name + "\"");
  return *it;
}

inline long long int_field(const Json& j, const char* name) {
  const Json& v = need_field(j, name);
  if (!v.is_number_integer())
    raise(Errc::parse_error, std::string("field \"") + name + "\" must be an integer");
  return v.get<long long>();
}

inline Rat rat_field(const Json& j, const char* name) {
  const Json& v = need_field(j, name);
  if (v.is_number_integer()) return Rat(v.get<long long>());
  if (!v.is_string())
    raise(Errc::parse_error, std::string("field \"") + name + "\" must be a rational string");
  return parse_rational(v.get<std::string>());
}

}  // namespace detail

inline SystemSpec system_from_json(const Json& j) {
  if (!j.is_object()) raise(Errc::parse_error, "system definition must be an object");
  std::string variant = detail::need_field(j, "variant").is_string()
                            ? j["variant"].get<std::string>()
                            : std::string();
  if (variant == "full") return make_full_shift(static_cast<int>(detail::int_field(j, "k")));
  if (variant == "sft") {
    const Json& t = detail::need_field(j, "transitions");
    if (!t.is_array()) raise(Errc::parse_error, "field \"transitions\" must be an array");
    std::vector<std::vector<int>> rows;
    for (const Json& r : t) {
      if (!r.is_array()) raise(Errc::parse_error, "transition rows must be arrays");
      std::vector<int> row;
      for (const Json& v : r) {
        if (!v.is_number_integer())
          raise(Errc::parse_error, "transition entries must be integers");
        row.push_back(v.get<int>());
      }
      rows.push_back(std::move(row));
    }
    return make_sft(static_cast<int>(detail::int_field(j, "k")), std::move(rows));
  }
  if (variant == "beta") {
    long long L = j.contains("L") ? detail::int_field(j, "L") : 64;
    return make_beta_shift(detail::rat_field(j, "beta"), L);
  }
  if (variant == "eventual")
    return make_eventual_fixed(static_cast<int>(detail::int_field(j, "k")),
                               detail::int_field(j, "N"),
                               static_cast<int>(detail::int_field(j, "w")));
  if (variant == "finite") {
    const Json& pts = detail::need_field(j, "points");
    if (!pts.is_array() || pts.empty())
      raise(Errc::parse_error, "field \"points\" must be a nonempty array");
    std::vector<std::string> labels;
    for (const Json& p : pts) {
      if (!p.is_string()) raise(Errc::parse_error, "point labels must be strings");
      labels.push_back(p.get<std::string>());
    }
    auto label_id = [&](const std::string& s) -> std::size_t {
      for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == s) return i;
      raise(Errc::parse_error, "unknown point label \"" + s + "\" in map");
    };
    const Json& mp = detail::need_field(j, "map");
    if (!mp.is_object()) raise(Errc::parse_error, "field \"map\" must be an object");
    std::vector<std::size_t> map(labels.size(), 0);
    std::vector<bool> seen(labels.size(), false);
    for (auto it = mp.begin(); it != mp.end(); ++it) {
      if (!it.value().is_string()) raise(Errc::parse_error, "map images must be point labels");
      std::size_t from = label_id(it.key());
      map[from] = label_id(it.value().get<std::string>());
      seen[from] = true;
    }
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (!seen[i]) raise(Errc::parse_error, "map missing image for \"" + labels[i] + "\"");
    const Json& met = detail::need_field(j, "metric");
    if (!met.is_array()) raise(Errc::parse_error, "field \"metric\" must be an array");
    std::vector<std::vector<Rat>> metric;
    for (const Json& row : met) {
      if (!row.is_array()) raise(Errc::parse_error, "metric rows must be arrays");
      std::vector<Rat> r;
      for (const Json& v : row) {
        if (v.is_number_integer())
          r.push_back(Rat(v.get<long long>()));
        else if (v.is_string())
          r.push_back(parse_rational(v.get<std::string>()));
        else
          raise(Errc::parse_error, "metric entries must be rational strings");
      }
      metric.push_back(std::move(r));
    }
    return make_finite_map(std::move(labels), std::move(map), std::move(metric));
  }
  raise(Errc::parse_error, "unknown variant \"" + variant + "\"");
}

inline SystemSpec parse_system_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(Errc::parse_error, "cannot open system file: " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    raise(Errc::parse_error, std::string("bad json in ") + path + ": " + e.what());
  }
  return system_from_json(j);
}

inline Json system_to_json(const SystemSpec& sys) {
  Json j;
  j["variant"] = variant_name(sys.variant);
  switch (sys.variant) {
    case SystemVariant::full_shift:
      j["k"] = sys.k;
      break;
    case SystemVariant::sft:
      j["k"] = sys.k;
      j["transitions"] = sys.transitions;
      break;
    case SystemVariant::beta_shift:
      j["beta"] = format_rational(sys.beta);
      j["L"] = sys.expansion_len;
      break;
    case SystemVariant::eventual_fixed:
      j["k"] = sys.k;
      j["N"] = sys.horizon;
      j["w"] = sys.fixed_symbol;
      break;
    case SystemVariant::finite_map: {
      j["points"] = sys.fin.labels;
      Json mp = Json::object();
      for (std::size_t i = 0; i < sys.fin.labels.size(); ++i)
        mp[sys.fin.labels[i]] = sys.fin.labels[sys.fin.map[i]];
      j["map"] = mp;
      Json met = Json::array();
      for (const auto& row : sys.fin.metric) {
        Json r = Json::array();
        for (const Rat& v : row) r.push_back(format_rational(v));
        met.push_back(r);
      }
      j["metric"] = met;
      break;
    }
  }
  return j;
}

inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline Json entropy_profile_to_json(const SystemSpec& sys, const EntropyProfile& prof) {
  (void)sys;
  Json rows = Json::array();
  for (const EntropyRow& r : prof.rows) {
    Json row;
    row["n"] = r.n;
    row["eps"] = format_rational(r.eps);
    row["count"] = r.count;
    row["method"] = r.method;
    row["log_count_over_n"] = r.log_count_over_n;
    rows.push_back(row);
  }
  Json j;
  j["mode"] = prof.mode;
  j["rows"] = rows;
  if (prof.has_slope) {
    j["slope"] = prof.slope;
    j["residual"] = prof.residual;
    j["window"] = {{"eps", format_rational(prof.window_eps)},
                   {"n_lo", prof.window_n_lo},
                   {"n_hi", prof.window_n_hi}};
  } else {
    j["slope"] = nullptr;
  }
  return j;
}

inline std::string entropy_profile_to_csv(const EntropyProfile& prof) {
  std::ostringstream out;
  out << "n,eps,count,method,log_count_over_n\n";
  for (const EntropyRow& r : prof.rows)
    out << r.n << ',' << format_rational(r.eps) << ',' << r.count << ',' << r.method << ','
        << format_double(r.log_count_over_n) << '\n';
  return out.str();
}

inline Json certificate_to_json(const SystemSpec& sys, const Certificate& c) {
  Json j;
  j["x"] = format_point_for(sys, c.x);
  j["y"] = format_point_for(sys, c.y);
  j["N"] = c.n;
  j["sigma"] = format_rational(c.sigma);
  j["delta"] = format_rational(c.delta);
  j["g"] = c.g.describe();
  j["kg"] = c.kg.describe();
  return j;
}

inline Json collapse_outcome_to_json(const SystemSpec& sys, const CollapseOutcome& o) {
  Json j;
  j["holds"] = o.ok;
  if (o.ok) {
    j["fixed_point"] = format_point_for(sys, o.witness.fixed_point);
    j["horizon"] = o.witness.horizon;
  } else {
    j["counterexample"] = {format_point_for(sys, o.counterexample.first),
                           format_point_for(sys, o.counterexample.second)};
  }
  return j;
}

inline Json stabilization_to_json(const StabilizationReport& r) {
  Json j;
  j["ok"] = r.ok;
  j["horizon"] = r.horizon;
  j["n_max"] = r.n_max;
  Json rows = Json::array();
  for (const StabilizationRow& row : r.rows)
    rows.push_back({{"eps", format_rational(row.eps)}, {"count", row.count}});
  j["stabilized"] = rows;
  if (!r.ok) {
    j["violation"] = {{"n", r.violation_n},
                      {"eps", format_rational(r.violation_eps)},
                      {"expected", r.violation_expected},
                      {"got", r.violation_got}};
  } else {
    j["slope"] = r.slope;
  }
  return j;
}

inline Json family_report_to_json(const SystemSpec& sys, const FamilyReport& r) {
  Json j;
  j["horizon"] = r.horizon;
  j["eps"] = format_rational(r.eps);
  Json pts = Json::array();
  for (std::size_t i = 0; i < r.points.size(); ++i)
    pts.push_back({{"word", r.labels[i]}, {"point", format_point_for(sys, r.points[i])}});
  j["points"] = pts;
  j["pairs_total"] = r.pairs_total;
  j["pairs_separated"] = r.pairs_separated;
  j["all_separated"] = r.all_separated;
  j["lower_bound"] = r.lower_bound;
  return j;
}

}  // namespace aspec
