#include "amapsim/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace amapsim {

namespace {

struct RawValue {
  std::string text;
  int line = 0;
  bool used = false;
};

struct RawSection {
  int line = 0;
  std::map<std::string, RawValue> values;
};

struct RawConfig {
  std::string origin;
  std::map<std::string, RawSection> sections;

  [[noreturn]] void fail(int line, const std::string& msg) const {
    throw ScenarioError(origin + ":" + std::to_string(line) + ": " + msg);
  }
};

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

RawConfig parse_raw(const std::string& text, const std::string& origin) {
  RawConfig cfg;
  cfg.origin = origin;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') cfg.fail(line_no, "malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) cfg.fail(line_no, "empty section name");
      if (cfg.sections.count(section) != 0) {
        cfg.fail(line_no, "duplicate section [" + section + "]");
      }
      cfg.sections[section].line = line_no;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) cfg.fail(line_no, "expected 'key = value'");
    if (section.empty()) cfg.fail(line_no, "key outside of any section");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) cfg.fail(line_no, "empty key");
    if (value.empty()) cfg.fail(line_no, "empty value for '" + key + "'");
    auto& sec = cfg.sections[section];
    if (sec.values.count(key) != 0) {
      cfg.fail(line_no, "duplicate key '" + key + "'");
    }
    sec.values[key] = RawValue{value, line_no, false};
  }
  return cfg;
}

class SectionReader {
 public:
  SectionReader(RawConfig& cfg, const std::string& name, bool required)
      : cfg_(cfg), name_(name) {
    auto it = cfg.sections.find(name);
    if (it == cfg.sections.end()) {
      if (required) {
        throw ScenarioError(cfg.origin + ":1: missing required section [" +
                            name + "]");
      }
      section_ = nullptr;
    } else {
      section_ = &it->second;
    }
  }

  bool present() const { return section_ != nullptr; }
  int line() const { return section_ ? section_->line : 1; }

  RawValue* find(const std::string& key) {
    if (!section_) return nullptr;
    auto it = section_->values.find(key);
    if (it == section_->values.end()) return nullptr;
    it->second.used = true;
    return &it->second;
  }

  std::string require(const std::string& key) {
    RawValue* v = find(key);
    if (!v) {
      cfg_.fail(line(), "missing key '" + key + "' in section [" + name_ + "]");
    }
    return v->text;
  }

  std::int64_t require_int(const std::string& key, std::int64_t min_value,
                           std::int64_t max_value = INT64_MAX) {
    RawValue* v = find(key);
    if (!v) {
      cfg_.fail(line(), "missing key '" + key + "' in section [" + name_ + "]");
    }
    return to_int(*v, key, min_value, max_value);
  }

  std::int64_t optional_int(const std::string& key, std::int64_t fallback,
                            std::int64_t min_value,
                            std::int64_t max_value = INT64_MAX) {
    RawValue* v = find(key);
    if (!v) return fallback;
    return to_int(*v, key, min_value, max_value);
  }

  double require_real(const std::string& key, double min_value, double max_value) {
    RawValue* v = find(key);
    if (!v) {
      cfg_.fail(line(), "missing key '" + key + "' in section [" + name_ + "]");
    }
    return to_real(*v, key, min_value, max_value);
  }

  double optional_real(const std::string& key, double fallback, double min_value,
                       double max_value) {
    RawValue* v = find(key);
    if (!v) return fallback;
    return to_real(*v, key, min_value, max_value);
  }

  std::int64_t to_int(const RawValue& v, const std::string& key,
                      std::int64_t min_value, std::int64_t max_value) {
    errno = 0;
    char* end = nullptr;
    const long long parsed = std::strtoll(v.text.c_str(), &end, 10);
    if (end == v.text.c_str() || *end != '\0' || errno != 0) {
      cfg_.fail(v.line, "value of '" + key + "' is not an integer: '" + v.text + "'");
    }
    if (parsed < min_value || parsed > max_value) {
      cfg_.fail(v.line, "value of '" + key + "' out of range");
    }
    return parsed;
  }

  double to_real(const RawValue& v, const std::string& key, double min_value,
                 double max_value) {
    char* end = nullptr;
    const double parsed = std::strtod(v.text.c_str(), &end);
    if (end == v.text.c_str() || *end != '\0') {
      cfg_.fail(v.line, "value of '" + key + "' is not a number: '" + v.text + "'");
    }
    if (!(parsed >= min_value) || !(parsed <= max_value)) {
      cfg_.fail(v.line, "value of '" + key + "' out of range");
    }
    return parsed;
  }

  RawConfig& cfg_;
  std::string name_;
  RawSection* section_ = nullptr;
};

void check_all_used(const RawConfig& cfg,
                    const std::vector<std::string>& known_sections) {
  for (const auto& [name, sec] : cfg.sections) {
    bool known = false;
    for (const auto& k : known_sections) {
      if (name == k) {
        known = true;
        break;
      }
    }
    if (!known) cfg.fail(sec.line, "unknown section [" + name + "]");
    for (const auto& [key, value] : sec.values) {
      if (!value.used) {
        cfg.fail(value.line, "unknown key '" + key + "' in section [" + name + "]");
      }
    }
  }
}

}  // namespace

double Scenario::ber_for(int station) const {
  auto it = ber_overrides.find(station);
  return it == ber_overrides.end() ? ber : it->second;
}

Scenario scenario_from_string(const std::string& text, const std::string& origin) {
  RawConfig raw = parse_raw(text, origin);
  Scenario s;

  SectionReader scenario(raw, "scenario", true);
  s.id = scenario.require("id");
  s.duration_s = static_cast<int>(scenario.require_int("duration_s", 1, 1'000'000));
  {
    RawValue* seeds = scenario.find("seeds");
    if (!seeds) raw.fail(scenario.line(), "missing key 'seeds' in section [scenario]");
    for (const std::string& tok : split_ws(seeds->text)) {
      errno = 0;
      char* end = nullptr;
      const unsigned long long v = std::strtoull(tok.c_str(), &end, 10);
      if (end == tok.c_str() || *end != '\0' || errno != 0) {
        raw.fail(seeds->line, "seed is not an unsigned integer: '" + tok + "'");
      }
      s.seeds.push_back(v);
    }
    if (s.seeds.empty()) raw.fail(seeds->line, "at least one seed is required");
  }

  SectionReader topo(raw, "topology", true);
  s.mobiles = static_cast<int>(topo.require_int("mobiles", 1, 1'000));
  s.stations_per_mobile =
      static_cast<int>(topo.require_int("stations_per_mobile", 1, 1'000));

  SectionReader link(raw, "link", true);
  s.link_rate_bps = link.require_int("rate_bps", 1);
  s.cell_bytes = static_cast<int>(link.require_int("cell_bytes", 1, 65'535));
  s.data_slots = static_cast<int>(link.require_int("data_slots", 1, 4'096));
  s.ra_minislots = static_cast<int>(link.require_int("ra_minislots", 1, 4'096));
  s.minislot_divisor =
      static_cast<int>(link.optional_int("minislot_divisor", 8, 1, 1'024));
  s.forward_delay = link.optional_int("forward_delay_us", 0, 0);

  SectionReader channel(raw, "channel", true);
  s.ber = channel.require_real("ber", 0.0, 0.9999999);
  for (int st = 0; st < s.station_count(); ++st) {
    const std::string key = "ber.station." + std::to_string(st);
    RawValue* v = channel.find(key);
    if (v) s.ber_overrides[st] = channel.to_real(*v, key, 0.0, 0.9999999);
  }

  SectionReader policy(raw, "policy", true);
  {
    const std::string mode = policy.require("mode");
    if (!parse_policy_mode(mode, s.policy_mode)) {
      raw.fail(policy.find("mode")->line, "unknown policy mode '" + mode + "'");
    }
    s.csi_gate_ber = policy.optional_real("csi_gate_ber", 1e-4, 1e-300, 0.9999999);
    RawValue* order = policy.find("key_order");
    if (order) {
      const auto toks = split_ws(order->text);
      if (toks.size() != 3) raw.fail(order->line, "key_order needs three keys");
      bool seen[3] = {false, false, false};
      for (std::size_t i = 0; i < 3; ++i) {
        SortKey k;
        if (toks[i] == "deadline") k = SortKey::Deadline;
        else if (toks[i] == "priority") k = SortKey::Priority;
        else if (toks[i] == "csi") k = SortKey::Csi;
        else raw.fail(order->line, "unknown sort key '" + toks[i] + "'");
        if (seen[static_cast<int>(k)]) {
          raw.fail(order->line, "key_order must be a permutation");
        }
        seen[static_cast<int>(k)] = true;
        s.key_order[i] = k;
      }
    }
  }

  SectionReader buffers(raw, "buffers", true);
  s.station_buffer_bytes = buffers.require_int("station_bytes", 1);

  SectionReader traffic(raw, "traffic", true);
  {
    const std::string dist = traffic.require("distribution");
    if (dist == "constant") s.distribution = ArrivalDistribution::Constant;
    else if (dist == "exponential") s.distribution = ArrivalDistribution::Exponential;
    else raw.fail(traffic.find("distribution")->line,
                  "distribution must be 'constant' or 'exponential'");
    s.ttl_unit = traffic.optional_int("ttl_unit_us", 1'000, 1);
  }

  std::vector<std::string> known = {"scenario", "topology", "link",
                                    "channel",  "policy",   "buffers",
                                    "traffic"};
  for (MediaClass m : kAllMediaClasses) {
    const std::string section_name = std::string("class.") + media_name(m);
    known.push_back(section_name);
    SectionReader cls(raw, section_name, true);
    ClassParams& params = s.classes[static_cast<std::size_t>(m)];
    {
      const std::string ptext = cls.require("priority");
      if (!parse_priority(ptext, params.priority)) {
        raw.fail(cls.find("priority")->line, "invalid priority '" + ptext + "'");
      }
    }
    params.wrr_weight = static_cast<int>(cls.optional_int("weight", 1, 1, 1'000'000));
    params.bytes_per_s = cls.require_int("bytes_per_s", 1);
    params.mean_txn_bytes = cls.require_int("mean_txn_bytes", 1);
    RawValue* ttl = cls.find("ttl");
    if (!ttl) raw.fail(cls.line(), "missing key 'ttl' in section [" + section_name + "]");
    for (const std::string& tok : split_ws(ttl->text)) {
      errno = 0;
      char* end = nullptr;
      const long long v = std::strtoll(tok.c_str(), &end, 10);
      if (end == tok.c_str() || *end != '\0' || errno != 0 || v < 1) {
        raw.fail(ttl->line, "ttl values must be positive integers");
      }
      params.ttl_units.push_back(v);
    }
    if (static_cast<int>(params.ttl_units.size()) != s.stations_per_mobile) {
      raw.fail(ttl->line,
               "expected " + std::to_string(s.stations_per_mobile) +
                   " ttl values (one per station position), got " +
                   std::to_string(params.ttl_units.size()));
    }
  }

  check_all_used(raw, known);

  for (const auto& [station, ber] : s.ber_overrides) {
    if (station < 0 || station >= s.station_count()) {
      throw ScenarioError(origin + ":1: ber override for unknown station " +
                          std::to_string(station));
    }
    (void)ber;
  }
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError(path + ":0: cannot open scenario file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return scenario_from_string(buf.str(), path);
}

namespace {

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

std::string serialize_scenario(const Scenario& s) {
  std::ostringstream out;
  out << "[scenario]\n";
  out << "id = " << s.id << "\n";
  out << "duration_s = " << s.duration_s << "\n";
  out << "seeds =";
  for (auto seed : s.seeds) out << " " << seed;
  out << "\n\n";

  out << "[topology]\n";
  out << "mobiles = " << s.mobiles << "\n";
  out << "stations_per_mobile = " << s.stations_per_mobile << "\n\n";

  out << "[link]\n";
  out << "rate_bps = " << s.link_rate_bps << "\n";
  out << "cell_bytes = " << s.cell_bytes << "\n";
  out << "data_slots = " << s.data_slots << "\n";
  out << "ra_minislots = " << s.ra_minislots << "\n";
  out << "minislot_divisor = " << s.minislot_divisor << "\n";
  out << "forward_delay_us = " << s.forward_delay << "\n\n";

  out << "[channel]\n";
  out << "ber = " << format_real(s.ber) << "\n";
  for (const auto& [station, ber] : s.ber_overrides) {
    out << "ber.station." << station << " = " << format_real(ber) << "\n";
  }
  out << "\n";

  out << "[policy]\n";
  out << "mode = " << policy_mode_name(s.policy_mode) << "\n";
  out << "csi_gate_ber = " << format_real(s.csi_gate_ber) << "\n";
  out << "key_order =";
  for (SortKey k : s.key_order) {
    out << " "
        << (k == SortKey::Deadline ? "deadline"
                                   : k == SortKey::Priority ? "priority" : "csi");
  }
  out << "\n\n";

  out << "[buffers]\n";
  out << "station_bytes = " << s.station_buffer_bytes << "\n\n";

  out << "[traffic]\n";
  out << "distribution = "
      << (s.distribution == ArrivalDistribution::Constant ? "constant"
                                                          : "exponential")
      << "\n";
  out << "ttl_unit_us = " << s.ttl_unit << "\n";

  for (MediaClass m : kAllMediaClasses) {
    const ClassParams& c = s.params(m);
    out << "\n[class." << media_name(m) << "]\n";
    out << "priority = " << priority_to_string(c.priority) << "\n";
    out << "weight = " << c.wrr_weight << "\n";
    out << "bytes_per_s = " << c.bytes_per_s << "\n";
    out << "mean_txn_bytes = " << c.mean_txn_bytes << "\n";
    out << "ttl =";
    for (auto t : c.ttl_units) out << " " << t;
    out << "\n";
  }
  return out.str();
}

namespace {

struct PresetSpec {
  const char* id;
  bool staggered_ttl;       // per-position TTL ladders vs all-10
  bool graded_priority;     // 16/8/4/2 vs all-16 (voice always low-latency)
  const char* ber;
  const char* distribution;
};

// TTL ladders per class (rows) and station position (columns).
const std::int64_t kStaggeredTtl[kMediaClassCount][4] = {
    {10, 35, 60, 85},    // voice
    {15, 40, 65, 90},    // video
    {20, 45, 70, 95},    // ftp
    {25, 50, 75, 100},   // data
    {30, 55, 80, 105},   // email
};

const int kGradedPriority[kMediaClassCount] = {0, 16, 8, 4, 2};  // 0 = low-latency

std::string build_preset_text(const PresetSpec& spec) {
  std::ostringstream out;
  out << "# Built-in scenario preset: 5 mobiles x 4 stations, each station\n";
  out << "# hosting one source per media class at an aggregate offered load\n";
  out << "# of 50 Kbytes/s against a 1.544 Mbps uplink (rho = 0.259).\n";
  out << "[scenario]\n";
  out << "id = " << spec.id << "\n";
  out << "duration_s = 60\n";
  out << "seeds = 1 2 3 4 5 6 7 8 9 10\n\n";
  out << "[topology]\n";
  out << "mobiles = 5\n";
  out << "stations_per_mobile = 4\n\n";
  out << "[link]\n";
  out << "rate_bps = 1544000\n";
  out << "cell_bytes = 53\n";
  out << "data_slots = 16\n";
  out << "ra_minislots = 8\n";
  out << "minislot_divisor = 8\n";
  out << "forward_delay_us = 0\n\n";
  out << "[channel]\n";
  out << "ber = " << spec.ber << "\n\n";
  out << "[policy]\n";
  out << "mode = amapmt\n";
  out << "csi_gate_ber = 1e-4\n";
  out << "key_order = deadline priority csi\n\n";
  out << "[buffers]\n";
  out << "station_bytes = 524288\n\n";
  out << "[traffic]\n";
  out << "distribution = " << spec.distribution << "\n";
  out << "ttl_unit_us = 1000\n";
  for (std::size_t i = 0; i < kMediaClassCount; ++i) {
    const MediaClass m = kAllMediaClasses[i];
    out << "\n[class." << media_name(m) << "]\n";
    if (i == 0) {
      out << "priority = low-latency\n";
    } else if (spec.graded_priority) {
      out << "priority = " << kGradedPriority[i] << "\n";
    } else {
      out << "priority = 16\n";
    }
    out << "weight = 1\n";
    out << "bytes_per_s = 500\n";
    out << "mean_txn_bytes = 1060\n";
    out << "ttl =";
    for (int pos = 0; pos < 4; ++pos) {
      out << " " << (spec.staggered_ttl ? kStaggeredTtl[i][pos] : 10);
    }
    out << "\n";
  }
  return out.str();
}

const std::vector<std::pair<std::string, PresetSpec>>& preset_table() {
  static const std::vector<std::pair<std::string, PresetSpec>> presets = [] {
    std::vector<std::pair<std::string, PresetSpec>> v;
    struct Base {
      const char* name;
      bool staggered;
      bool graded;
    };
    const Base bases[] = {
        {"table-5-1", false, false},
        {"table-5-2", false, true},
        {"table-5-3", true, false},
        {"table-5-4", true, true},
    };
    for (const Base& b : bases) {
      v.push_back({b.name,
                   PresetSpec{b.name, b.staggered, b.graded, "1e-6", "constant"}});
      const std::string ber12 = std::string(b.name) + "-ber12";
      v.push_back({ber12, PresetSpec{nullptr, b.staggered, b.graded, "1e-12",
                                     "constant"}});
      const std::string exp = std::string(b.name) + "-exp";
      v.push_back(
          {exp, PresetSpec{nullptr, b.staggered, b.graded, "1e-6", "exponential"}});
    }
    return v;
  }();
  return presets;
}

}  // namespace

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& [name, spec] : preset_table()) names.push_back(name);
  return names;
}

bool is_preset(const std::string& name) {
  for (const auto& [n, spec] : preset_table()) {
    if (n == name) return true;
  }
  return false;
}

std::string preset_text(const std::string& name) {
  for (const auto& [n, spec] : preset_table()) {
    if (n == name) {
      PresetSpec s = spec;
      s.id = name.c_str();
      return build_preset_text(s);
    }
  }
  throw ScenarioError("unknown preset '" + name + "'");
}

Scenario load_preset(const std::string& name) {
  return scenario_from_string(preset_text(name), "preset:" + name);
}

Scenario resolve_scenario(const std::string& name_or_path) {
  if (is_preset(name_or_path)) return load_preset(name_or_path);
  return load_scenario(name_or_path);
}

std::vector<SourceProfile> build_profiles(const Scenario& s) {
  std::vector<SourceProfile> profiles;
  profiles.reserve(static_cast<std::size_t>(s.station_count()) * kMediaClassCount);
  for (int station = 0; station < s.station_count(); ++station) {
    const int pos = s.position_of(station);
    for (MediaClass m : kAllMediaClasses) {
      const ClassParams& c = s.params(m);
      SourceProfile p;
      p.station = station;
      p.media = m;
      p.distribution = s.distribution;
      p.mean_interarrival =
          (c.mean_txn_bytes * kTicksPerSecond + c.bytes_per_s / 2) / c.bytes_per_s;
      if (p.mean_interarrival < 1) p.mean_interarrival = 1;
      p.mean_txn_bytes = c.mean_txn_bytes;
      p.ttl = c.ttl_units[static_cast<std::size_t>(pos)] * s.ttl_unit;
      p.priority = c.priority;
      p.wrr_weight = c.wrr_weight;
      profiles.push_back(p);
    }
  }
  return profiles;
}

FrameLayout build_layout(const Scenario& s) {
  return FrameLayout::make(s.link_rate_bps, s.cell_bytes, s.data_slots,
                           s.ra_minislots, s.minislot_divisor);
}

PolicyConfig build_policy(const Scenario& s, PolicyMode mode) {
  PolicyConfig pc;
  pc.mode = mode;
  pc.csi_gate_ber = s.csi_gate_ber;
  pc.key_order = s.key_order;
  for (std::size_t i = 0; i < kMediaClassCount; ++i) {
    pc.wrr_weights[i] = s.classes[i].wrr_weight;
  }
  return pc;
}

}  // namespace amapsim
