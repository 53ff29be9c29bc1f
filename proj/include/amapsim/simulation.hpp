#pragma once

#include <cstdint>
#include <memory>
#include <ostream>
#include <vector>

#include "amapsim/event_queue.hpp"
#include "amapsim/metrics.hpp"
#include "amapsim/nodes.hpp"
#include "amapsim/scenario.hpp"
#include "amapsim/simulation_logs.hpp"

namespace amapsim {

// One complete run: a scenario instantiated under one policy and one seed,
// executed on a single-threaded event loop. Runs share no mutable state, so
// callers may execute many of them back to back (or in parallel contexts)
// and compare results; traffic draws depend only on (seed, source), never on
// the policy, which makes cross-policy comparisons paired by construction.
class Simulation {
 public:
  struct Options {
    bool journal = false;
    bool log_deliveries = false;
    bool log_grants = false;
    bool log_transactions = false;
    std::ostream* trace = nullptr;  // one line per dispatched event
  };

  Simulation(const Scenario& scenario, PolicyMode mode, std::uint64_t seed)
      : Simulation(scenario, mode, seed, Options()) {}
  Simulation(const Scenario& scenario, PolicyMode mode, std::uint64_t seed,
             Options options);

  MetricsReport run();

  const Collector& collector() const { return metrics_; }
  const std::vector<DeliveryRecord>& deliveries() const { return deliveries_; }
  const std::vector<FrameGrantLog>& frames() const { return frame_log_; }
  const std::vector<Transaction>& transactions() const { return txn_log_; }
  const BaseStation& base_station() const { return bs_; }
  SimTime now() const { return queue_.now(); }

 private:
  void dispatch(const Event& ev);
  void on_arrival(int source_index);
  void on_ra_minislot(std::int64_t minislot_index);
  void on_ra_forward(const RequestAccessPacket& ra);
  void on_frame_boundary();
  void on_ttl_sweep();
  void on_slot_start(const SlotStartPayload& p);
  void on_delivery(const DeliveryPayload& p);

  std::int64_t next_minislot_at(SimTime t) const;
  void start_contention_if_idle(int station, MediaClass media);

  int source_index(int station, MediaClass media) const {
    return station * kMediaClassCount + static_cast<int>(media);
  }

  Scenario scenario_;
  PolicyConfig policy_;
  FrameLayout layout_;
  SimTime horizon_;
  Options options_;

  EventQueue queue_;
  Collector metrics_;
  std::vector<SourceProfile> profiles_;
  std::vector<SourceStation> stations_;
  std::vector<Mobile> mobiles_;
  BaseStation bs_;
  int bs_node_id_;

  std::vector<RngStream> arrival_rng_;
  std::vector<RngStream> backoff_rng_;
  std::vector<RngStream> channel_rng_;

  std::uint64_t next_txn_id_ = 1;
  std::int64_t frame_index_ = 0;

  std::vector<DeliveryRecord> deliveries_;
  std::vector<FrameGrantLog> frame_log_;
  std::vector<Transaction> txn_log_;
};

}  // namespace amapsim
