#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "amapsim/channel.hpp"
#include "amapsim/scheduler.hpp"
#include "amapsim/traffic.hpp"

namespace amapsim {

class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Per-media-class parameters. TTLs are listed per station position within a
// mobile (position 1..stations_per_mobile) in ttl_unit multiples.
struct ClassParams {
  Priority priority;
  int wrr_weight = 1;
  std::int64_t bytes_per_s = 500;
  std::int64_t mean_txn_bytes = 1060;
  std::vector<std::int64_t> ttl_units;
};

struct Scenario {
  std::string id;
  int duration_s = 60;
  std::vector<std::uint64_t> seeds;

  int mobiles = 5;
  int stations_per_mobile = 4;

  std::int64_t link_rate_bps = 1'544'000;
  int cell_bytes = 53;
  int data_slots = 16;
  int ra_minislots = 8;
  int minislot_divisor = 8;
  SimTime forward_delay = 0;

  double ber = 1e-6;
  std::map<int, double> ber_overrides;  // global station index -> ber

  PolicyMode policy_mode = PolicyMode::Amapmt;
  double csi_gate_ber = 1e-4;
  std::array<SortKey, 3> key_order = {SortKey::Deadline, SortKey::Priority,
                                      SortKey::Csi};

  std::int64_t station_buffer_bytes = 524'288;

  ArrivalDistribution distribution = ArrivalDistribution::Constant;
  SimTime ttl_unit = 1'000;  // ticks per TTL table unit (default: ms)

  std::array<ClassParams, kMediaClassCount> classes;

  int station_count() const { return mobiles * stations_per_mobile; }
  int mobile_of(int station) const { return station / stations_per_mobile; }
  int position_of(int station) const { return station % stations_per_mobile; }
  double ber_for(int station) const;
  SimTime horizon() const { return from_seconds(duration_s); }

  const ClassParams& params(MediaClass m) const {
    return classes[static_cast<std::size_t>(m)];
  }
};

// Parses and fully validates a scenario. Errors carry the offending line:
// "<origin>:<line>: <message>".
Scenario scenario_from_string(const std::string& text, const std::string& origin);
Scenario load_scenario(const std::string& path);

// Canonical text form; load(serialize(s)) == s.
std::string serialize_scenario(const Scenario& s);

// Built-in presets covering the four parameter tables, each in a low-noise
// (ber 1e-6) and an effectively clean (ber 1e-12) variant, plus exponential
// traffic variants of each table.
std::vector<std::string> preset_names();
bool is_preset(const std::string& name);
Scenario load_preset(const std::string& name);
std::string preset_text(const std::string& name);

// Accepts either a preset name or a path to a scenario file.
Scenario resolve_scenario(const std::string& name_or_path);

// Engine inputs derived from a scenario.
std::vector<SourceProfile> build_profiles(const Scenario& s);
FrameLayout build_layout(const Scenario& s);
PolicyConfig build_policy(const Scenario& s, PolicyMode mode);

}  // namespace amapsim
