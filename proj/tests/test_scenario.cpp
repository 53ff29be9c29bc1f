#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "amapsim/scenario.hpp"

using namespace amapsim;

namespace {

std::string replace_first(std::string text, const std::string& from,
                          const std::string& to) {
  const auto pos = text.find(from);
  REQUIRE(pos != std::string::npos);
  return text.replace(pos, from.size(), to);
}

}  // namespace

TEST_CASE("preset table-5-2: graded priorities, flat ttl of 10") {
  const Scenario s = load_preset("table-5-2");
  CHECK(s.params(MediaClass::Voice).priority == Priority::lowest_latency());
  CHECK(s.params(MediaClass::Video).priority == Priority::numeric(16));
  CHECK(s.params(MediaClass::Ftp).priority == Priority::numeric(8));
  CHECK(s.params(MediaClass::Data).priority == Priority::numeric(4));
  CHECK(s.params(MediaClass::Email).priority == Priority::numeric(2));
  for (MediaClass m : kAllMediaClasses) {
    for (auto ttl : s.params(m).ttl_units) CHECK(ttl == 10);
  }
  CHECK(s.ber == doctest::Approx(1e-6));
}

TEST_CASE("preset table-5-3: staggered ttls, flat priorities") {
  const Scenario s = load_preset("table-5-3");
  CHECK(s.params(MediaClass::Voice).ttl_units ==
        std::vector<std::int64_t>{10, 35, 60, 85});
  CHECK(s.params(MediaClass::Video).ttl_units ==
        std::vector<std::int64_t>{15, 40, 65, 90});
  CHECK(s.params(MediaClass::Ftp).ttl_units ==
        std::vector<std::int64_t>{20, 45, 70, 95});
  CHECK(s.params(MediaClass::Data).ttl_units ==
        std::vector<std::int64_t>{25, 50, 75, 100});
  CHECK(s.params(MediaClass::Email).ttl_units ==
        std::vector<std::int64_t>{30, 55, 80, 105});
  CHECK(s.params(MediaClass::Video).priority == Priority::numeric(16));
  CHECK(s.params(MediaClass::Email).priority == Priority::numeric(16));
}

TEST_CASE("preset table-5-4 combines both gradients; variants differ as named") {
  const Scenario s = load_preset("table-5-4");
  CHECK(s.params(MediaClass::Email).ttl_units ==
        std::vector<std::int64_t>{30, 55, 80, 105});
  CHECK(s.params(MediaClass::Email).priority == Priority::numeric(2));
  CHECK(s.distribution == ArrivalDistribution::Constant);

  const Scenario ber12 = load_preset("table-5-4-ber12");
  CHECK(ber12.ber == doctest::Approx(1e-12));

  const Scenario exp = load_preset("table-5-4-exp");
  CHECK(exp.distribution == ArrivalDistribution::Exponential);
  CHECK(exp.ber == doctest::Approx(1e-6));
}

TEST_CASE("every preset parses, validates, and is listed") {
  const auto names = preset_names();
  CHECK(names.size() == 12);
  for (const std::string& name : names) {
    const Scenario s = load_preset(name);
    CHECK(s.id == name);
    CHECK(s.mobiles == 5);
    CHECK(s.stations_per_mobile == 4);
    CHECK(s.seeds.size() == 10);
    CHECK(build_profiles(s).size() == 100);
  }
  CHECK(is_preset("table-5-1"));
  CHECK_FALSE(is_preset("table-9-9"));
}

TEST_CASE("presets round-trip through serialize and load unchanged") {
  for (const std::string& name : preset_names()) {
    const Scenario a = load_preset(name);
    const std::string text = serialize_scenario(a);
    const Scenario b = scenario_from_string(text, "roundtrip");
    CHECK(serialize_scenario(b) == text);
  }
}

TEST_CASE("a scenario without seeds is rejected with its line") {
  const std::string text =
      replace_first(preset_text("table-5-1"), "seeds = 1 2 3 4 5 6 7 8 9 10",
                    "seeds = x");
  CHECK_THROWS_WITH_AS(scenario_from_string(text, "bad.cfg"),
                       doctest::Contains("bad.cfg:7"), ScenarioError);
}

TEST_CASE("unknown keys are rejected with line-level diagnostics") {
  const std::string text =
      replace_first(preset_text("table-5-1"), "data_slots = 16",
                    "data_slots = 16\ndatt_slots = 12");
  try {
    scenario_from_string(text, "typo.cfg");
    FAIL("expected rejection");
  } catch (const ScenarioError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("typo.cfg:") != std::string::npos);
    CHECK(msg.find("datt_slots") != std::string::npos);
  }
}

TEST_CASE("missing sections and malformed values are rejected") {
  CHECK_THROWS_AS(scenario_from_string("[scenario]\nid = x\n", "x.cfg"),
                  ScenarioError);
  const std::string bad_ttl = replace_first(preset_text("table-5-1"),
                                            "ttl = 10 10 10 10", "ttl = 10 10");
  CHECK_THROWS_WITH_AS(scenario_from_string(bad_ttl, "short.cfg"),
                       doctest::Contains("4 ttl values"), ScenarioError);
  const std::string bad_dur = replace_first(preset_text("table-5-1"),
                                            "duration_s = 60", "duration_s = 0");
  CHECK_THROWS_AS(scenario_from_string(bad_dur, "dur.cfg"), ScenarioError);
}

TEST_CASE("profiles derive rates, deadlines, and layout from the scenario") {
  const Scenario s = load_preset("table-5-1");
  const auto profiles = build_profiles(s);
  REQUIRE(profiles.size() == 100);
  for (const SourceProfile& p : profiles) {
    CHECK(p.mean_interarrival == 2'120'000);  // 1060 B at 500 B/s
    CHECK(p.mean_txn_bytes == 1060);
    CHECK(p.ttl == from_ms(10));
  }
  const FrameLayout layout = build_layout(s);
  CHECK(layout.slot_duration == 275);  // ceil(424 bits / 1.544 Mbps)
  CHECK(layout.minislot_duration == 35);
  CHECK(layout.frame_duration() == 16 * 275 + 8 * 35);
}

TEST_CASE("per-station ber overrides are honored") {
  const std::string text = replace_first(preset_text("table-5-1"), "ber = 1e-6",
                                         "ber = 1e-6\nber.station.3 = 1e-3");
  const Scenario s = scenario_from_string(text, "override.cfg");
  CHECK(s.ber_for(2) == doctest::Approx(1e-6));
  CHECK(s.ber_for(3) == doctest::Approx(1e-3));
  const std::string rt = serialize_scenario(s);
  const Scenario again = scenario_from_string(rt, "override2.cfg");
  CHECK(again.ber_for(3) == doctest::Approx(1e-3));
}
