#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "decosim/device.hpp"

namespace decosim {

/// Relative importance of the four selection criteria. Weights are
/// normalized to sum to one before scoring; each must be >= 0 and at least
/// one must be positive.
struct SelectionWeights {
  double bandwidth = 1.0;
  double cost = 1.0;
  double battery = 1.0;
  double stability = 1.0;

  SelectionWeights normalized() const;

  bool operator==(const SelectionWeights&) const = default;
};

/// Multi-criteria utility of `iface` in [0, 1] against the candidate set
/// used for normalization (`candidates` must contain `iface`).
///
/// Each criterion is min-max normalized over the candidates: bandwidth and
/// stability higher-better, cost lower-better, and a battery term computed
/// from battery_level / (1 + energy_per_mb) so that higher remaining charge
/// and lower per-MB draw rank higher. A criterion with zero spread across
/// the candidates (a single candidate in particular) contributes 1.0.
double score_iface(const NetIface& iface, double battery_level,
                   const SelectionWeights& weights,
                   const std::vector<NetIface>& candidates);

/// Always-best-connected choice at tick `at`: the highest-utility interface
/// among those available, ties broken by smaller id; nullopt when nothing
/// is available.
std::optional<std::string> select_best(const std::vector<NetIface>& ifaces, Tick at,
                                       double battery_level,
                                       const SelectionWeights& weights);

struct PacketRecord {
  Tick tick = 0;
  std::string iface;        // empty when dropped
  bool delivered = false;
  double latency_ms = 0.0;  // 0 when dropped
  bool handover = false;    // paid the switch penalty

  bool operator==(const PacketRecord&) const = default;
};

struct HandoverEvent {
  Tick tick = 0;
  std::string from;
  std::string to;

  bool operator==(const HandoverEvent&) const = default;
};

/// Outcome of one handover simulation: tick-ordered packet records plus the
/// interface switches that occurred between consecutive delivered packets.
struct HandoverTrace {
  std::vector<PacketRecord> packets;
  std::vector<HandoverEvent> handovers;

  std::size_t drop_count() const noexcept;
};

/// Sends one packet every `period` ticks for `duration` ticks, always via
/// the best available interface. A packet is dropped only when no interface
/// is available; switching interfaces adds `handover_penalty_ms` to that
/// packet's latency (the proxy re-registration cost) but never breaks the
/// session.
HandoverTrace simulate_handover(const std::vector<NetIface>& ifaces, Tick duration,
                                Tick period, const SelectionWeights& weights,
                                double handover_penalty_ms, double battery_level = 1.0);

}  // namespace decosim
