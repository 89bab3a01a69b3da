#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "decosim/sim.hpp"

namespace decosim {

/// Network technology classes a device interface can belong to.
enum class TechClass { bluetooth, zigbee, infrared, wifi, umts };

/// Reach of a technology class: short-range links stay inside the PAN,
/// local/wide-area links can carry traffic to the outside world.
enum class RangeClass { short_range, local, wide_area };

RangeClass range_class(TechClass tech) noexcept;
const char* to_string(TechClass tech) noexcept;
std::optional<TechClass> tech_from_string(std::string_view name) noexcept;

/// Half-open availability interval [start, end) in ticks.
struct TickInterval {
  Tick start = 0;
  Tick end = 0;

  bool operator==(const TickInterval&) const = default;
};

/// One network attachment of a device.
///
/// The availability timeline lists when the attachment is usable; intervals
/// must be disjoint and sorted. An empty timeline means always available.
struct NetIface {
  std::string id;
  TechClass tech = TechClass::wifi;
  double bandwidth_mbps = 1.0;  // nominal bandwidth, > 0
  double cost_per_mb = 0.0;     // monetary cost, >= 0
  double energy_per_mb = 0.0;   // battery draw, >= 0
  double latency_ms = 1.0;      // base latency, > 0
  double stability = 1.0;       // chance of keeping the attachment while moving, [0, 1]
  std::vector<TickInterval> availability;

  bool available_at(Tick t) const noexcept;

  bool operator==(const NetIface&) const = default;
};

/// The technical profile one device advertises during PAN configuration.
struct DeviceProfile {
  std::string id;
  std::string user;
  double compute = 1.0;           // abstract ops/s, > 0
  double battery_level = 1.0;     // fraction, [0, 1]
  double battery_capacity = 1.0;  // battery-units, > 0
  std::vector<NetIface> interfaces;  // at least one

  bool has_tech(TechClass tech) const noexcept;

  bool operator==(const DeviceProfile&) const = default;
};

/// Intra-PAN communication overlay: one edge per technology class shared by
/// a device pair, plus the connected components it induces.
struct PanOverlay {
  struct Edge {
    std::string a;  // device id, a < b
    std::string b;
    TechClass tech;

    auto operator<=>(const Edge&) const = default;
  };

  std::vector<Edge> edges;                            // sorted
  std::vector<std::vector<std::string>> components;   // members sorted, components by first member

  bool operator==(const PanOverlay&) const = default;
};

/// One user seen as a single networked entity: the device set, the derived
/// intra-PAN overlay, and the elected coordinator/gateway.
struct DigitalOrganism {
  std::string user;
  std::vector<DeviceProfile> devices;
  PanOverlay overlay;
  std::optional<std::string> coordinator;
  std::optional<std::string> gateway;

  bool operator==(const DigitalOrganism&) const = default;
};

/// Invariant checks; throw SimError(invalid_argument) with a message naming
/// the offending field.
void validate(const NetIface& iface);
void validate(const DeviceProfile& profile);
void validate(const DigitalOrganism& organism);

/// Sum over devices of battery_level * battery_capacity.
double total_battery(const std::vector<DeviceProfile>& devices) noexcept;
double total_battery(const DigitalOrganism& organism) noexcept;

}  // namespace decosim
