#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "amapsim/channel.hpp"

using namespace amapsim;

namespace {

DataPacket cell(int payload_bytes) {
  DataPacket p;
  p.payload_bytes = payload_bytes;
  return p;
}

}  // namespace

TEST_CASE("ber zero always delivers") {
  RngStream rng(1, 0);
  for (int i = 0; i < 10'000; ++i) {
    CHECK(transmit(cell(53), ChannelState{0.0}, rng) == TxResult::Delivered);
  }
}

TEST_CASE("corruption frequency at ber 1e-6 matches the analytic value") {
  // Oracle: p = 1 - (1 - ber)^bits computed directly in long double.
  const long double ber = 1e-6L;
  const long double p_expected = 1.0L - std::pow(1.0L - ber, 424.0L);
  CHECK(static_cast<double>(p_expected) == doctest::Approx(4.2399e-4).epsilon(1e-3));
  CHECK(corruption_probability(53, 1e-6) ==
        doctest::Approx(static_cast<double>(p_expected)).epsilon(1e-9));

  RngStream rng(77, 3);
  const int trials = 10'000'000;
  int corrupted = 0;
  for (int i = 0; i < trials; ++i) {
    if (transmit(cell(53), ChannelState{1e-6}, rng) == TxResult::Corrupted) {
      ++corrupted;
    }
  }
  const double p = static_cast<double>(p_expected);
  const double se = std::sqrt(p * (1 - p) / trials);
  const double observed = static_cast<double>(corrupted) / trials;
  CHECK(std::abs(observed - p) <= 3 * se);
}

TEST_CASE("ber 1e-12 is effectively clean at desk scale") {
  const double p = corruption_probability(53, 1e-12);
  CHECK(p == doctest::Approx(4.24e-10).epsilon(1e-3));
  // ~220k packets in a 60 s run: expected corruptions ~1e-4.
  CHECK(p * 220'000 < 1e-3);
}

TEST_CASE("minislot resolution: idle, success, collision") {
  CHECK(ra_minislot_resolve({}).kind == RaOutcome::Kind::Idle);

  const RaOutcome one = ra_minislot_resolve({{3, MediaClass::Ftp}});
  CHECK(one.kind == RaOutcome::Kind::Success);
  CHECK(one.winner.station == 3);
  CHECK(one.winner.media == MediaClass::Ftp);

  const RaOutcome two =
      ra_minislot_resolve({{1, MediaClass::Voice}, {2, MediaClass::Voice}});
  CHECK(two.kind == RaOutcome::Kind::Collision);
  CHECK(two.contenders.size() == 2);
}

TEST_CASE("backoff windows") {
  RngStream rng(5, 1);
  for (int i = 0; i < 1000; ++i) {
    const int w1 = backoff_delay(1, rng);
    CHECK(w1 >= 0);
    CHECK(w1 <= 1);
    const int w10 = backoff_delay(10, rng);
    CHECK(w10 >= 0);
    CHECK(w10 <= 63);  // capped at 64 minislots
  }
  // attempt 10 actually reaches the cap
  bool hit_high = false;
  for (int i = 0; i < 20'000 && !hit_high; ++i) {
    hit_high = backoff_delay(10, rng) > 31;
  }
  CHECK(hit_high);
}

TEST_CASE("slotted-aloha success rate follows G*e^-G without retries") {
  // Poisson(G) fresh contenders per minislot, no retry: throughput per
  // minislot should approach G*e^-G.
  RngStream rng(2025, 9);
  for (const double g : {0.3, 0.7, 1.0, 2.0}) {
    const int minislots = 400'000;
    int successes = 0;
    for (int i = 0; i < minislots; ++i) {
      // Poisson draw by inversion
      int k = 0;
      double p = std::exp(-g);
      double cdf = p;
      const double u = rng.uniform01();
      while (u > cdf && k < 50) {
        ++k;
        p *= g / k;
        cdf += p;
      }
      std::vector<RaContender> contenders;
      for (int c = 0; c < k; ++c) contenders.push_back({c, MediaClass::Data});
      if (ra_minislot_resolve(std::move(contenders)).kind ==
          RaOutcome::Kind::Success) {
        ++successes;
      }
    }
    const double observed = static_cast<double>(successes) / minislots;
    const double expected = g * std::exp(-g);
    CHECK(observed == doctest::Approx(expected).epsilon(0.02));
  }
}
