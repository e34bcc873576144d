#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <string>

#include "drnash/errors.hpp"
#include "drnash/scenario.hpp"

using namespace drnash;

TEST_CASE("replica scenario carries the documented constants") {
  const Scenario s = replica_scenario();
  CHECK(s.horizon == 24);
  REQUIRE(s.prosumers.size() == 2);
  CHECK(s.prosumers[0].id == "residential_bus27");
  CHECK(s.prosumers[0].alpha == 0.8);
  CHECK(s.prosumers[1].id == "business_bus23");
  CHECK(s.prosumers[1].alpha == 0.9);
  CHECK(s.prosumers[0].pv_generation.peak() == doctest::Approx(105.4));
  CHECK(s.prosumers[1].pv_generation.peak() == doctest::Approx(200.0));
  CHECK(s.utility_cost.c0 == 4207.5);
  CHECK(s.utility_cost.c1 == -6.74);
  CHECK(s.utility_cost.c2 == 0.0029);
  CHECK(s.prosumers[0].dr_cap_fraction == 0.10);
  CHECK(s.prosumers[0].dr_cap() == doctest::Approx(0.10 * s.prosumers[0].baseline_load.peak()));
  CHECK(s.prosumers[1].dr_cap() == doctest::Approx(0.10 * 132.0));

  REQUIRE(s.event_hours.size() == 9);
  CHECK(s.event_hours.front() == 12);
  CHECK(s.event_hours.back() == 20);
  CHECK(s.is_event_hour(12));
  CHECK(s.is_event_hour(20));
  CHECK_FALSE(s.is_event_hour(11));
  CHECK_FALSE(s.is_event_hour(21));

  // TOU blocks: super-off-peak, off-peak, peak
  CHECK(s.tariff.retail_rate[0] == 0.26);
  CHECK(s.tariff.retail_rate[5] == 0.26);
  CHECK(s.tariff.retail_rate[6] == 0.42);
  CHECK(s.tariff.retail_rate[15] == 0.42);
  CHECK(s.tariff.retail_rate[16] == 0.65);
  CHECK(s.tariff.retail_rate[20] == 0.65);
  CHECK(s.tariff.retail_rate[21] == 0.42);
  CHECK(s.tariff.retail_rate[23] == 0.42);

  CHECK(validate(s).empty());
}

TEST_CASE("bundled scenario file equals the builtin replica") {
  const Scenario fromFile =
      load_scenario(std::filesystem::path(DRNASH_DATA_DIR) / "replica34.scenario");
  CHECK(fromFile == replica_scenario());
}

TEST_CASE("json round trip is the identity") {
  const Scenario s = replica_scenario();
  CHECK(parse_scenario(scenario_to_json(s)) == s);
  CHECK(scenario_to_json(parse_scenario(scenario_to_json(s))) == scenario_to_json(s));
}

TEST_CASE("save and load round trip through a file") {
  const Scenario s = replica_scenario();
  const auto path = std::filesystem::temp_directory_path() / "drnash_roundtrip.scenario";
  save_scenario(s, path);
  CHECK(load_scenario(path) == s);
  std::filesystem::remove(path);
}

TEST_CASE("defaults fill in when keys are omitted") {
  const std::string text = R"({
    "tariff": {"retail_rate": [0.5]},
    "horizon": 1,
    "system_load": [100.0],
    "prosumers": [{
      "id": "a", "alpha": 0.5,
      "baseline_load": [10.0], "pv_generation": [20.0], "pv_gen_cost": [0.1]
    }],
    "utility_cost": {"c0": 1.0, "c1": 0.0, "c2": 0.01},
    "event_hours": [0]
  })";
  const Scenario s = parse_scenario(text);
  CHECK(s.horizon == 1);
  CHECK(s.prosumers[0].dr_cap_fraction == 0.10);
}

TEST_CASE("validation rejects each broken invariant") {
  const Scenario good = replica_scenario();
  auto reject = [](Scenario s, const char* needle) {
    const auto violations = validate(s);
    CAPTURE(needle);
    REQUIRE_FALSE(violations.empty());
    bool found = false;
    for (const auto& v : violations) {
      if (v.find(needle) != std::string::npos) {
        found = true;
      }
    }
    CHECK(found);
    // the same rejection must fire through the parse path
    CHECK_THROWS_AS((void)parse_scenario(scenario_to_json(s)), ValidationError);
  };

  SUBCASE("alpha above one") {
    Scenario s = good;
    s.prosumers[0].alpha = 1.2;
    reject(s, "alpha");
  }
  SUBCASE("negative alpha") {
    Scenario s = good;
    s.prosumers[1].alpha = -0.1;
    reject(s, "alpha");
  }
  SUBCASE("series length mismatch") {
    Scenario s = good;
    auto vals = s.prosumers[0].baseline_load.values();
    vals.pop_back();
    s.prosumers[0].baseline_load = HourlySeries(vals);
    reject(s, "baseline_load");
  }
  SUBCASE("negative series entry") {
    Scenario s = good;
    s.system_load[3] = -1.0;
    reject(s, "system_load");
  }
  SUBCASE("duplicate prosumer ids") {
    Scenario s = good;
    s.prosumers[1].id = s.prosumers[0].id;
    reject(s, "duplicate");
  }
  SUBCASE("empty prosumer id") {
    Scenario s = good;
    s.prosumers[0].id = "";
    reject(s, "id");
  }
  SUBCASE("comma in prosumer id") {
    Scenario s = good;
    s.prosumers[0].id = "a,b";
    reject(s, "id");
  }
  SUBCASE("no prosumers") {
    Scenario s = good;
    s.prosumers.clear();
    reject(s, "prosumers");
  }
  SUBCASE("dr cap fraction above one") {
    Scenario s = good;
    s.prosumers[0].dr_cap_fraction = 1.5;
    reject(s, "dr_cap_fraction");
  }
  SUBCASE("generation cost at the retail rate") {
    Scenario s = good;
    s.prosumers[0].pv_gen_cost = HourlySeries::constant(24, 0.26);
    reject(s, "pv_gen_cost");
  }
  SUBCASE("system load below the baselines") {
    Scenario s = good;
    s.system_load[12] = 10.0;
    reject(s, "system_load");
  }
  SUBCASE("nonpositive retail rate") {
    Scenario s = good;
    s.tariff.retail_rate[2] = 0.0;
    reject(s, "retail_rate");
  }
  SUBCASE("nonpositive c2") {
    Scenario s = good;
    s.utility_cost.c2 = 0.0;
    reject(s, "c2");
  }
  SUBCASE("empty event hours") {
    Scenario s = good;
    s.event_hours.clear();
    reject(s, "event_hours");
  }
  SUBCASE("event hour outside the horizon") {
    Scenario s = good;
    s.event_hours.push_back(24);
    reject(s, "event_hours");
  }
  SUBCASE("duplicate event hour") {
    Scenario s = good;
    s.event_hours.push_back(20);
    reject(s, "event_hours");
  }
  SUBCASE("nonpositive horizon") {
    Scenario s = good;
    s.horizon = 0;
    reject(s, "horizon");
  }
}

TEST_CASE("parse rejects malformed documents") {
  const std::string good_text = scenario_to_json(replica_scenario());

  SUBCASE("truncated json") {
    CHECK_THROWS_AS((void)parse_scenario(good_text.substr(0, good_text.size() / 2)), FormatError);
  }
  SUBCASE("unknown top-level key") {
    std::string t = good_text;
    t.replace(t.find("\"horizon\""), 9, "\"horizons\"");
    CHECK_THROWS_AS((void)parse_scenario(t), FormatError);
  }
  SUBCASE("unknown prosumer key") {
    std::string t = good_text;
    t.replace(t.find("\"alpha\""), 7, "\"alpha2\"");
    CHECK_THROWS_AS((void)parse_scenario(t), FormatError);
  }
  SUBCASE("wrong scalar type") {
    std::string t = good_text;
    t.replace(t.find("\"horizon\": 24"), 13, "\"horizon\": \"x\"");
    CHECK_THROWS_AS((void)parse_scenario(t), FormatError);
  }
  SUBCASE("missing required key") {
    std::string t = good_text;
    const auto pos = t.find("\"utility_cost\"");
    const auto end = t.find("\"event_hours\"");
    t.erase(pos, end - pos);
    CHECK_THROWS_AS((void)parse_scenario(t), FormatError);
  }
  SUBCASE("top level not an object") {
    CHECK_THROWS_AS((void)parse_scenario("[1, 2, 3]"), FormatError);
  }
  SUBCASE("missing file") {
    CHECK_THROWS((void)load_scenario("/nonexistent/nowhere.scenario"));
  }
}
