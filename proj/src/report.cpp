#include "drnash/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "drnash/errors.hpp"

namespace drnash {

namespace {

using ordered_json = nlohmann::ordered_json;

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);  // binary keeps LF line endings everywhere
  if (!out) {
    throw std::runtime_error("cannot open " + path.string() + " for writing");
  }
  return out;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string::size_type start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

double parse_field(const std::string& field, const std::string& where) {
  try {
    std::size_t used = 0;
    const double v = std::stod(field, &used);
    if (used != field.size()) {
      throw FormatError(where + ": trailing characters in '" + field + "'");
    }
    return v;
  } catch (const std::invalid_argument&) {
    throw FormatError(where + ": expected a number, got '" + field + "'");
  } catch (const std::out_of_range&) {
    throw FormatError(where + ": number out of range: '" + field + "'");
  }
}

int parse_hour(const std::string& field, int horizon, const std::string& where) {
  const double v = parse_field(field, where);
  const int hour = static_cast<int>(v);
  if (v != static_cast<double>(hour) || hour < 0 || hour >= horizon) {
    throw FormatError(where + ": hour '" + field + "' outside [0, " + std::to_string(horizon) +
                      ")");
  }
  return hour;
}

}  // namespace

std::string csv_number(double v) {
  if (std::isnan(v)) {
    return "nan";
  }
  if (std::isinf(v)) {
    return v > 0 ? "inf" : "-inf";
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  std::string s = buf;
  if (s == "-0.000000") {
    s.erase(0, 1);
  }
  return s;
}

void write_run_artifacts(const Scenario& scenario, const EquilibriumResult& result,
                         const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  const int horizon = scenario.horizon;
  const std::size_t n = scenario.prosumers.size();

  {
    auto out = open_out(out_dir / "dr_schedule.csv");
    out << "prosumer_id,hour,baseline_kw,x_kw,dr_kw,theta,inconvenience_usd,pv_profit_usd\n";
    for (std::size_t i = 0; i < n; ++i) {
      const auto& spec = scenario.prosumers[i];
      const auto& ps = result.states[i];
      for (int t = 0; t < horizon; ++t) {
        const double pv_profit =
            pv_sale_profit(ps.quotes[static_cast<std::size_t>(t)].lambda_pv,
                           spec.pv_generation[t], ps.x[t]);
        out << spec.id << ',' << t << ',' << csv_number(spec.baseline_load[t]) << ','
            << csv_number(ps.x[t]) << ',' << csv_number(ps.dr[t]) << ','
            << csv_number(ps.theta[t]) << ',' << csv_number(ps.inconvenience[t]) << ','
            << csv_number(pv_profit) << '\n';
      }
    }
  }

  {
    auto out = open_out(out_dir / "prices.csv");
    out << "prosumer_id,hour,sdr,lambda_pv_usd_per_kwh,lambda_dr_usd_per_kwh\n";
    for (std::size_t i = 0; i < n; ++i) {
      const auto& spec = scenario.prosumers[i];
      const auto& ps = result.states[i];
      for (int t = 0; t < horizon; ++t) {
        const auto& q = ps.quotes[static_cast<std::size_t>(t)];
        out << spec.id << ',' << t << ',' << csv_number(q.sdr) << ','
            << csv_number(q.lambda_pv) << ',' << csv_number(q.lambda_dr) << '\n';
      }
    }
  }

  {
    auto out = open_out(out_dir / "settlement.csv");
    out << "hour,adjusted_load_kw,cost_before_usd,cost_after_usd,utility_profit_usd,"
           "provider_profit_usd\n";
    const auto& st = result.settlement;
    for (int t = 0; t < horizon; ++t) {
      out << t << ',' << csv_number(st.adjusted_load[t]) << ','
          << csv_number(st.utility_cost_before[t]) << ',' << csv_number(st.utility_cost_after[t])
          << ',' << csv_number(st.utility_profit[t]) << ',' << csv_number(st.provider_profit[t])
          << '\n';
    }
  }

  {
    auto out = open_out(out_dir / "trace.csv");
    out << "iteration,max_dr_delta_kw,provider_profit_usd,utility_profit_usd,total_dr_kwh,"
           "inner_sweeps,inner_converged\n";
    for (const auto& rec : result.trace) {
      double total_dr = 0.0;
      for (double d : rec.dr) {
        total_dr += d;
      }
      out << rec.outer_index << ',' << csv_number(rec.max_dr_delta) << ','
          << csv_number(rec.provider_profit_total) << ',' << csv_number(rec.utility_profit_total)
          << ',' << csv_number(total_dr) << ',' << rec.inner_sweeps << ','
          << (rec.inner_converged ? 1 : 0) << '\n';
    }
  }

  {
    ordered_json summary;
    summary["converged"] = result.converged;
    summary["iterations"] = static_cast<int>(result.trace.size());
    summary["horizon"] = horizon;
    summary["prosumers"] = ordered_json::array();
    for (std::size_t i = 0; i < n; ++i) {
      const auto& spec = scenario.prosumers[i];
      const auto& ps = result.states[i];
      double pv_profit = 0.0;
      for (int t = 0; t < horizon; ++t) {
        pv_profit += pv_sale_profit(ps.quotes[static_cast<std::size_t>(t)].lambda_pv,
                                    spec.pv_generation[t], ps.x[t]);
      }
      summary["prosumers"].push_back({{"id", spec.id},
                                      {"daily_dr_kwh", ps.dr.total()},
                                      {"daily_inconvenience_usd", ps.inconvenience.total()},
                                      {"daily_pv_profit_usd", pv_profit}});
    }
    summary["totals"] = {
        {"provider_profit_usd", result.settlement.provider_profit.total()},
        {"utility_profit_usd", result.settlement.utility_profit.total()},
    };
    auto out = open_out(out_dir / "summary.json");
    out << summary.dump(2) << '\n';
  }
}

void write_nash_report(const Scenario& scenario, const NashReport& report,
                       const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  auto out = open_out(out_dir / "nash_report.csv");
  out << "prosumer_id,hour,dr_kw,best_dr_kw,improvement_usd\n";
  for (const auto& cell : report.cells) {
    out << scenario.prosumers[static_cast<std::size_t>(cell.prosumer)].id << ',' << cell.hour
        << ',' << csv_number(cell.dr) << ',' << csv_number(cell.best_dr) << ','
        << csv_number(cell.improvement) << '\n';
  }
}

GameState read_run_state(const Scenario& scenario, const std::filesystem::path& out_dir) {
  const Problem problem = Problem::build(scenario);
  GameState state = GameState::initial(problem);

  std::unordered_map<std::string, int> index;
  for (std::size_t i = 0; i < scenario.prosumers.size(); ++i) {
    index[scenario.prosumers[i].id] = static_cast<int>(i);
  }

  auto for_each_row = [&](const char* name, std::size_t columns, auto&& apply) {
    const auto path = out_dir / name;
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      throw std::runtime_error("cannot open " + path.string());
    }
    std::string line;
    if (!std::getline(in, line)) {
      throw FormatError(path.string() + ": missing header row");
    }
    std::size_t rows = 0;
    int line_no = 1;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) {
        continue;
      }
      const std::string where = std::string(name) + ":" + std::to_string(line_no);
      const auto fields = split_csv(line);
      if (fields.size() != columns) {
        throw FormatError(where + ": expected " + std::to_string(columns) + " fields, got " +
                          std::to_string(fields.size()));
      }
      const auto it = index.find(fields[0]);
      if (it == index.end()) {
        throw FormatError(where + ": unknown prosumer id '" + fields[0] + "'");
      }
      const int hour = parse_hour(fields[1], problem.horizon, where);
      apply(static_cast<std::size_t>(problem.idx(hour, it->second)), fields, where);
      ++rows;
    }
    const auto expected = static_cast<std::size_t>(problem.cells());
    if (rows != expected) {
      throw FormatError(path.string() + ": expected " + std::to_string(expected) +
                        " data rows, got " + std::to_string(rows));
    }
  };

  for_each_row("dr_schedule.csv", 8,
               [&](std::size_t c, const std::vector<std::string>& f, const std::string& where) {
                 state.dr[c] = parse_field(f[4], where + ":dr_kw");
                 state.x[c] = problem.baseline[c] - state.dr[c];
               });
  for_each_row("prices.csv", 5,
               [&](std::size_t c, const std::vector<std::string>& f, const std::string& where) {
                 state.sdr[c] = parse_field(f[2], where + ":sdr");
                 state.lambda_pv[c] = parse_field(f[3], where + ":lambda_pv");
                 state.lambda_dr[c] = parse_field(f[4], where + ":lambda_dr");
               });
  return state;
}

}  // namespace drnash
