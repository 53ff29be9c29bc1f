#include "amapsim/runner.hpp"

#include <chrono>
#include <cstdio>
#include <map>

#include "amapsim/simulation.hpp"

namespace amapsim {

std::vector<RunResult> run_matrix(const Scenario& scenario,
                                  const std::vector<PolicyMode>& policies,
                                  const std::vector<std::uint64_t>& seeds) {
  std::vector<RunResult> results;
  results.reserve(policies.size() * seeds.size());
  for (PolicyMode policy : policies) {
    for (std::uint64_t seed : seeds) {
      const auto t0 = std::chrono::steady_clock::now();
      Simulation sim(scenario, policy, seed);
      RunResult r;
      r.scenario_id = scenario.id;
      r.policy = policy;
      r.seed = seed;
      r.report = sim.run();
      r.wall_seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
              .count();
      results.push_back(std::move(r));
    }
  }
  return results;
}

const char* kResultsCsvHeader =
    "scenario,policy,seed,media,offered_pkts,delivered_pkts,drop_overflow,"
    "drop_ttl,drop_csi,drop_corrupt,wasted_slots,plr,mptd_us,throughput_bps,rho";

namespace {

std::string fmt(double v, const char* spec) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

void write_row(std::ostream& out, const RunResult& r, const char* media,
               const ClassReport& c) {
  out << r.scenario_id << ',' << policy_mode_name(r.policy) << ',' << r.seed
      << ',' << media << ',' << c.counters.offered_pkts << ','
      << c.counters.delivered_pkts << ','
      << c.counters.dropped(DropCause::Overflow) << ','
      << c.counters.dropped(DropCause::Ttl) << ','
      << c.counters.dropped(DropCause::CsiDenied) << ','
      << c.counters.dropped(DropCause::Corrupted) << ','
      << c.counters.wasted_slots << ','
      << (c.plr ? fmt(*c.plr, "%.9f") : "") << ','
      << (c.mptd_us ? fmt(*c.mptd_us, "%.3f") : "") << ','
      << fmt(c.throughput_bps, "%.3f") << ',' << fmt(c.rho, "%.6f") << '\n';
}

}  // namespace

void write_results_csv(std::ostream& out, const std::vector<RunResult>& results) {
  out << kResultsCsvHeader << '\n';
  for (const RunResult& r : results) {
    for (MediaClass m : kAllMediaClasses) {
      write_row(out, r, media_name(m), r.report.for_class(m));
    }
    write_row(out, r, "all", r.report.aggregate);
  }
}

void write_summary(std::ostream& out, const std::vector<RunResult>& results) {
  if (results.empty()) return;

  // Pool per policy, preserving first-seen policy order.
  std::vector<PolicyMode> order;
  std::map<PolicyMode, std::vector<MetricsReport>> pools;
  std::map<PolicyMode, int> seed_counts;
  for (const RunResult& r : results) {
    if (pools.find(r.policy) == pools.end()) order.push_back(r.policy);
    pools[r.policy].push_back(r.report);
    seed_counts[r.policy] += 1;
  }

  out << "scenario " << results.front().scenario_id << ": "
      << seed_counts.begin()->second << " seed(s) per policy, pooled\n\n";

  char line[256];
  std::snprintf(line, sizeof(line), "%-14s %-7s %12s %12s %10s %10s %12s %10s %10s %10s\n",
                "policy", "media", "offered", "delivered", "plr", "mptd_ms",
                "tput_kbps", "txn_loss", "in_flight", "wasted");
  out << line;
  for (PolicyMode policy : order) {
    const MetricsReport pooled = merge_reports(pools[policy]);
    auto emit = [&](const char* media, const ClassReport& c) {
      const double txn_loss =
          c.counters.txns_offered > 0
              ? static_cast<double>(c.counters.txns_lost) /
                    static_cast<double>(c.counters.txns_offered)
              : 0.0;
      std::snprintf(line, sizeof(line),
                    "%-14s %-7s %12lld %12lld %10s %10s %12.1f %10.4f %10lld %10lld\n",
                    policy_mode_name(policy), media,
                    static_cast<long long>(c.counters.offered_pkts),
                    static_cast<long long>(c.counters.delivered_pkts),
                    c.plr ? fmt(*c.plr, "%.5f").c_str() : "-",
                    c.mptd_us ? fmt(*c.mptd_us / 1000.0, "%.3f").c_str() : "-",
                    c.throughput_bps / 1000.0, txn_loss,
                    static_cast<long long>(c.counters.in_flight_pkts),
                    static_cast<long long>(c.counters.wasted_slots));
      out << line;
    };
    for (MediaClass m : kAllMediaClasses) {
      emit(media_name(m), pooled.for_class(m));
    }
    emit("all", pooled.aggregate);
    out << '\n';
  }
}

}  // namespace amapsim
