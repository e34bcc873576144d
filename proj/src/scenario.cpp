#include "drnash/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace drnash {

namespace {

using nlohmann::ordered_json;

void reject_unknown_keys(const ordered_json& obj, const std::set<std::string>& allowed,
                         const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.contains(key)) {
      throw FormatError(where + ": unknown key '" + key + "'");
    }
  }
}

const ordered_json& require_key(const ordered_json& obj, const std::string& key,
                                const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw FormatError(where + ": missing required key '" + key + "'");
  }
  return *it;
}

HourlySeries parse_series(const ordered_json& j, const std::string& where) {
  if (!j.is_array()) {
    throw FormatError(where + ": expected an array of numbers");
  }
  std::vector<double> values;
  values.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number()) {
      throw FormatError(where + "[" + std::to_string(values.size()) + "]: expected a number");
    }
    values.push_back(v.get<double>());
  }
  return HourlySeries(std::move(values));
}

double parse_number(const ordered_json& j, const std::string& where) {
  if (!j.is_number()) {
    throw FormatError(where + ": expected a number");
  }
  return j.get<double>();
}

ProsumerSpec parse_prosumer(const ordered_json& j, const std::string& where) {
  if (!j.is_object()) {
    throw FormatError(where + ": expected an object");
  }
  reject_unknown_keys(j, {"id", "alpha", "baseline_load", "pv_generation", "pv_gen_cost",
                          "dr_cap_fraction"},
                      where);
  ProsumerSpec p;
  const auto& id = require_key(j, "id", where);
  if (!id.is_string()) {
    throw FormatError(where + ".id: expected a string");
  }
  p.id = id.get<std::string>();
  p.alpha = parse_number(require_key(j, "alpha", where), where + ".alpha");
  p.baseline_load = parse_series(require_key(j, "baseline_load", where), where + ".baseline_load");
  p.pv_generation = parse_series(require_key(j, "pv_generation", where), where + ".pv_generation");
  p.pv_gen_cost = parse_series(require_key(j, "pv_gen_cost", where), where + ".pv_gen_cost");
  if (auto it = j.find("dr_cap_fraction"); it != j.end()) {
    p.dr_cap_fraction = parse_number(*it, where + ".dr_cap_fraction");
  }
  return p;
}

Scenario parse_scenario_json(const ordered_json& root) {
  if (!root.is_object()) {
    throw FormatError("scenario: top level must be an object");
  }
  reject_unknown_keys(root, {"horizon", "tariff", "system_load", "prosumers", "utility_cost",
                             "event_hours"},
                      "scenario");
  Scenario s;
  if (auto it = root.find("horizon"); it != root.end()) {
    if (!it->is_number_integer()) {
      throw FormatError("scenario.horizon: expected an integer");
    }
    s.horizon = it->get<int>();
  }

  const auto& tariff = require_key(root, "tariff", "scenario");
  if (!tariff.is_object()) {
    throw FormatError("scenario.tariff: expected an object");
  }
  reject_unknown_keys(tariff, {"retail_rate"}, "scenario.tariff");
  s.tariff.retail_rate =
      parse_series(require_key(tariff, "retail_rate", "scenario.tariff"),
                   "scenario.tariff.retail_rate");

  s.system_load = parse_series(require_key(root, "system_load", "scenario"),
                               "scenario.system_load");

  const auto& prosumers = require_key(root, "prosumers", "scenario");
  if (!prosumers.is_array()) {
    throw FormatError("scenario.prosumers: expected an array");
  }
  for (std::size_t i = 0; i < prosumers.size(); ++i) {
    s.prosumers.push_back(
        parse_prosumer(prosumers[i], "scenario.prosumers[" + std::to_string(i) + "]"));
  }

  const auto& cost = require_key(root, "utility_cost", "scenario");
  if (!cost.is_object()) {
    throw FormatError("scenario.utility_cost: expected an object");
  }
  reject_unknown_keys(cost, {"c0", "c1", "c2"}, "scenario.utility_cost");
  s.utility_cost.c0 = parse_number(require_key(cost, "c0", "scenario.utility_cost"),
                                   "scenario.utility_cost.c0");
  s.utility_cost.c1 = parse_number(require_key(cost, "c1", "scenario.utility_cost"),
                                   "scenario.utility_cost.c1");
  s.utility_cost.c2 = parse_number(require_key(cost, "c2", "scenario.utility_cost"),
                                   "scenario.utility_cost.c2");

  const auto& hours = require_key(root, "event_hours", "scenario");
  if (!hours.is_array()) {
    throw FormatError("scenario.event_hours: expected an array of integers");
  }
  for (const auto& h : hours) {
    if (!h.is_number_integer()) {
      throw FormatError("scenario.event_hours: expected an array of integers");
    }
    s.event_hours.push_back(h.get<int>());
  }
  std::sort(s.event_hours.begin(), s.event_hours.end());
  return s;
}

void check_series(std::vector<std::string>& out, const HourlySeries& series, int horizon,
                  const std::string& field, bool nonnegative) {
  if (series.size() != horizon) {
    out.push_back(field + ": length " + std::to_string(series.size()) +
                  " does not match horizon " + std::to_string(horizon));
    return;
  }
  for (int t = 0; t < series.size(); ++t) {
    if (!std::isfinite(series[t])) {
      out.push_back(field + "[" + std::to_string(t) + "]: value must be finite");
      return;
    }
    if (nonnegative && series[t] < 0.0) {
      out.push_back(field + "[" + std::to_string(t) + "]: value must be nonnegative");
      return;
    }
  }
}

}  // namespace

std::vector<std::string> validate(const Scenario& s) {
  std::vector<std::string> out;
  if (s.horizon < 1) {
    out.push_back("horizon: must be a positive integer");
    return out;  // every other check needs a sane horizon
  }
  check_series(out, s.tariff.retail_rate, s.horizon, "tariff.retail_rate", true);
  if (s.tariff.retail_rate.size() == s.horizon) {
    for (int t = 0; t < s.horizon; ++t) {
      if (!(s.tariff.retail_rate[t] > 0.0)) {
        out.push_back("tariff.retail_rate[" + std::to_string(t) + "]: must be positive");
        break;
      }
    }
  }
  check_series(out, s.system_load, s.horizon, "system_load", true);

  if (s.prosumers.empty()) {
    out.push_back("prosumers: at least one prosumer is required");
  }
  std::set<std::string> ids;
  for (std::size_t i = 0; i < s.prosumers.size(); ++i) {
    const auto& p = s.prosumers[i];
    const std::string where = "prosumers[" + std::to_string(i) + "]";
    if (p.id.empty()) {
      out.push_back(where + ".id: must not be empty");
    } else if (p.id.find_first_of(",\r\n") != std::string::npos) {
      out.push_back(where + ".id: must not contain commas or line breaks");
    }
    if (!ids.insert(p.id).second) {
      out.push_back(where + ".id: duplicate id '" + p.id + "'");
    }
    if (!(p.alpha >= 0.0 && p.alpha <= 1.0)) {
      out.push_back(where + ".alpha: must lie in [0, 1]");
    }
    if (!(p.dr_cap_fraction >= 0.0 && p.dr_cap_fraction <= 1.0)) {
      out.push_back(where + ".dr_cap_fraction: must lie in [0, 1]");
    }
    check_series(out, p.baseline_load, s.horizon, where + ".baseline_load", true);
    check_series(out, p.pv_generation, s.horizon, where + ".pv_generation", true);
    check_series(out, p.pv_gen_cost, s.horizon, where + ".pv_gen_cost", true);
    if (p.pv_gen_cost.size() == s.horizon && s.tariff.retail_rate.size() == s.horizon) {
      for (int t = 0; t < s.horizon; ++t) {
        if (!(p.pv_gen_cost[t] < s.tariff.retail_rate[t])) {
          out.push_back(where + ".pv_gen_cost[" + std::to_string(t) +
                        "]: must stay below tariff.retail_rate at the same hour");
          break;
        }
      }
    }
  }

  if (s.system_load.size() == s.horizon) {
    for (int t = 0; t < s.horizon; ++t) {
      double total_baseline = 0.0;
      bool lengths_ok = true;
      for (const auto& p : s.prosumers) {
        if (p.baseline_load.size() != s.horizon) {
          lengths_ok = false;
          break;
        }
        total_baseline += p.baseline_load[t];
      }
      if (lengths_ok && s.system_load[t] < total_baseline) {
        out.push_back("system_load[" + std::to_string(t) +
                      "]: must cover the prosumers' total baseline load");
        break;
      }
    }
  }

  if (!(s.utility_cost.c2 > 0.0)) {
    out.push_back("utility_cost.c2: must be positive (strictly convex cost curve)");
  }
  if (!std::isfinite(s.utility_cost.c0) || !std::isfinite(s.utility_cost.c1) ||
      !std::isfinite(s.utility_cost.c2)) {
    out.push_back("utility_cost: coefficients must be finite");
  }

  if (s.event_hours.empty()) {
    out.push_back("event_hours: must not be empty");
  }
  for (std::size_t i = 0; i < s.event_hours.size(); ++i) {
    const int h = s.event_hours[i];
    if (h < 0 || h >= s.horizon) {
      out.push_back("event_hours[" + std::to_string(i) + "]: hour " + std::to_string(h) +
                    " outside [0, " + std::to_string(s.horizon) + ")");
      break;
    }
    if (i > 0 && s.event_hours[i] == s.event_hours[i - 1]) {
      out.push_back("event_hours: duplicate hour " + std::to_string(h));
      break;
    }
  }
  return out;
}

Scenario parse_scenario(const std::string& json_text) {
  ordered_json root;
  try {
    root = ordered_json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(std::string("scenario: ") + e.what());
  }
  Scenario s = parse_scenario_json(root);
  auto violations = validate(s);
  if (!violations.empty()) {
    std::string msg = "scenario validation failed:";
    for (const auto& v : violations) {
      msg += "\n  - " + v;
    }
    throw ValidationError(msg);
  }
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open scenario file: " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str());
}

std::string scenario_to_json(const Scenario& s) {
  ordered_json root;
  root["horizon"] = s.horizon;
  root["tariff"] = {{"retail_rate", s.tariff.retail_rate.values()}};
  root["system_load"] = s.system_load.values();
  root["prosumers"] = ordered_json::array();
  for (const auto& p : s.prosumers) {
    root["prosumers"].push_back({{"id", p.id},
                                 {"alpha", p.alpha},
                                 {"baseline_load", p.baseline_load.values()},
                                 {"pv_generation", p.pv_generation.values()},
                                 {"pv_gen_cost", p.pv_gen_cost.values()},
                                 {"dr_cap_fraction", p.dr_cap_fraction}});
  }
  root["utility_cost"] = {{"c0", s.utility_cost.c0},
                          {"c1", s.utility_cost.c1},
                          {"c2", s.utility_cost.c2}};
  root["event_hours"] = s.event_hours;
  return root.dump(2) + "\n";
}

void save_scenario(const Scenario& s, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write scenario file: " + path.string());
  }
  out << scenario_to_json(s);
}

Scenario replica_scenario() {
  // Two-prosumer desk replica. Shapes and tariff levels are placeholders
  // chosen to reproduce the documented structure: midday PV surplus for
  // both prosumers, no surplus from 18:00 on, DR event noon to 21:00,
  // summer TOU blocks. Loads and system profile in kW.
  const std::vector<double> pv_shape = {
      0.0,  0.0,  0.0,  0.0,  0.0,  0.02, 0.10, 0.28, 0.46, 0.63, 0.78, 0.90,
      0.97, 1.00, 0.97, 0.88, 0.72, 0.52, 0.30, 0.12, 0.02, 0.0,  0.0,  0.0};

  auto scaled = [&pv_shape](double peak) {
    std::vector<double> v(pv_shape.size());
    for (std::size_t t = 0; t < pv_shape.size(); ++t) {
      v[t] = peak * pv_shape[t];
    }
    return HourlySeries(std::move(v));
  };

  Scenario s;
  s.horizon = 24;

  // TOU blocks: super-off-peak 00-06, off-peak 06-16 and 21-24, peak 16-21.
  std::vector<double> retail(24, 0.42);
  for (int t = 0; t <= 5; ++t) {
    retail[static_cast<std::size_t>(t)] = 0.26;
  }
  for (int t = 16; t <= 20; ++t) {
    retail[static_cast<std::size_t>(t)] = 0.65;
  }
  s.tariff.retail_rate = HourlySeries(std::move(retail));

  ProsumerSpec residential;
  residential.id = "residential_bus27";
  residential.alpha = 0.8;
  residential.baseline_load = HourlySeries({38, 36, 35, 34, 34, 35, 40, 48, 52, 54, 55, 56,
                                            57, 58, 60, 63, 68, 74, 80, 86, 90, 82, 60, 45});
  residential.pv_generation = scaled(105.4);  // 17 homes x 6.2 kW
  residential.pv_gen_cost = HourlySeries::constant(24, 0.09);
  residential.dr_cap_fraction = 0.10;

  ProsumerSpec business;
  business.id = "business_bus23";
  business.alpha = 0.9;
  business.baseline_load = HourlySeries({45, 42, 40, 40, 40, 42, 50, 70, 95, 110, 120, 126,
                                         130, 132, 130, 128, 122, 112, 95, 75, 60, 55, 50, 47});
  business.pv_generation = scaled(200.0);  // one 200 kW PV system
  business.pv_gen_cost = HourlySeries::constant(24, 0.07);
  business.dr_cap_fraction = 0.10;

  s.prosumers = {residential, business};

  s.system_load = HourlySeries({1280, 1250, 1230, 1220, 1220, 1240, 1320, 1450,
                                1560, 1630, 1680, 1710, 1730, 1745, 1750, 1755,
                                1790, 1830, 1870, 1900, 1880, 1780, 1560, 1380});

  s.utility_cost = {4207.5, -6.74, 0.0029};

  for (int t = 12; t <= 20; ++t) {
    s.event_hours.push_back(t);
  }
  return s;
}

}  // namespace drnash
