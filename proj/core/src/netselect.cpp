#include "decosim/netselect.hpp"

#include <algorithm>
#include <limits>

#include "decosim/error.hpp"

namespace decosim {
namespace {

struct Spread {
  double min = std::numeric_limits<double>::infinity();
  double max = -std::numeric_limits<double>::infinity();

  void add(double v) noexcept {
    min = std::min(min, v);
    max = std::max(max, v);
  }

  // Degenerate spread maps every candidate to 1.0 so ties stay harmless.
  double higher_better(double v) const noexcept {
    return max > min ? (v - min) / (max - min) : 1.0;
  }
  double lower_better(double v) const noexcept {
    return max > min ? (max - v) / (max - min) : 1.0;
  }
};

double battery_raw(double battery_level, const NetIface& iface) noexcept {
  return battery_level / (1.0 + iface.energy_per_mb);
}

}  // namespace

SelectionWeights SelectionWeights::normalized() const {
  if (bandwidth < 0 || cost < 0 || battery < 0 || stability < 0) {
    throw SimError(ErrorCode::invalid_argument, "selection weights must be >= 0");
  }
  const double sum = bandwidth + cost + battery + stability;
  if (!(sum > 0)) {
    throw SimError(ErrorCode::invalid_argument, "selection weights must not all be zero");
  }
  return SelectionWeights{bandwidth / sum, cost / sum, battery / sum, stability / sum};
}

double score_iface(const NetIface& iface, double battery_level,
                   const SelectionWeights& weights,
                   const std::vector<NetIface>& candidates) {
  if (candidates.empty()) {
    throw SimError(ErrorCode::no_candidates, "score_iface: empty candidate set");
  }
  const bool member = std::any_of(candidates.begin(), candidates.end(),
                                  [&](const NetIface& c) { return c.id == iface.id; });
  if (!member) {
    throw SimError(ErrorCode::invalid_argument,
                   "score_iface: interface '" + iface.id + "' not in the candidate set");
  }

  Spread bw, cost, batt, stab;
  for (const auto& c : candidates) {
    bw.add(c.bandwidth_mbps);
    cost.add(c.cost_per_mb);
    batt.add(battery_raw(battery_level, c));
    stab.add(c.stability);
  }

  const SelectionWeights w = weights.normalized();
  return w.bandwidth * bw.higher_better(iface.bandwidth_mbps) +
         w.cost * cost.lower_better(iface.cost_per_mb) +
         w.battery * batt.higher_better(battery_raw(battery_level, iface)) +
         w.stability * stab.higher_better(iface.stability);
}

std::optional<std::string> select_best(const std::vector<NetIface>& ifaces, Tick at,
                                       double battery_level,
                                       const SelectionWeights& weights) {
  std::vector<NetIface> candidates;
  for (const auto& iface : ifaces) {
    if (iface.available_at(at)) candidates.push_back(iface);
  }
  if (candidates.empty()) return std::nullopt;

  const NetIface* best = nullptr;
  double best_score = 0.0;
  for (const auto& c : candidates) {
    const double score = score_iface(c, battery_level, weights, candidates);
    if (!best || score > best_score || (score == best_score && c.id < best->id)) {
      best = &c;
      best_score = score;
    }
  }
  return best->id;
}

std::size_t HandoverTrace::drop_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(packets.begin(), packets.end(),
                    [](const PacketRecord& p) { return !p.delivered; }));
}

HandoverTrace simulate_handover(const std::vector<NetIface>& ifaces, Tick duration,
                                Tick period, const SelectionWeights& weights,
                                double handover_penalty_ms, double battery_level) {
  if (duration <= 0) {
    throw SimError(ErrorCode::invalid_argument, "simulate_handover: duration must be > 0");
  }
  if (period < 1) {
    throw SimError(ErrorCode::invalid_argument, "simulate_handover: period must be >= 1");
  }

  HandoverTrace trace;
  std::optional<std::string> last_iface;  // previous delivered packet's interface
  for (Tick t = 0; t < duration; t += period) {
    const auto chosen = select_best(ifaces, t, battery_level, weights);
    if (!chosen) {
      trace.packets.push_back(PacketRecord{t, "", false, 0.0, false});
      continue;
    }
    const auto iface = std::find_if(ifaces.begin(), ifaces.end(),
                                    [&](const NetIface& i) { return i.id == *chosen; });
    const bool switched = last_iface.has_value() && *last_iface != *chosen;
    double latency = iface->latency_ms;
    if (switched) {
      latency += handover_penalty_ms;  // proxy re-registration
      trace.handovers.push_back(HandoverEvent{t, *last_iface, *chosen});
    }
    trace.packets.push_back(PacketRecord{t, *chosen, true, latency, switched});
    last_iface = chosen;
  }
  return trace;
}

}  // namespace decosim
