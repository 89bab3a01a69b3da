#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "decosim/device.hpp"
#include "decosim/netselect.hpp"

namespace decosim {

/// Same-user devices reachable from one device, bucketed by technology
/// class. Every technology the querying device carries gets a bucket, empty
/// when no peer shares it.
struct DiscoveryResult {
  std::map<TechClass, std::vector<std::string>> reachable;
};

/// Range-free discovery: a peer is reachable via a technology class iff it
/// belongs to the same user and carries that class. A device never
/// discovers itself. `dev` must be an element of `all`.
DiscoveryResult discover(const DeviceProfile& dev, const std::vector<DeviceProfile>& all);

/// Builds the intra-PAN overlay for one user's devices: one edge per shared
/// technology class between each device pair, plus connected components. A
/// multi-interface device bridges technology islands. A partitioned PAN is
/// reported, not rejected.
PanOverlay build_pan_overlay(const std::vector<DeviceProfile>& devs);

/// Coordinator election: argmax compute score, ties by higher battery
/// level, then lexicographically smallest device id. Order-independent.
/// Throws SimError(no_devices) on an empty list.
std::string elect_coordinator(const std::vector<DeviceProfile>& profiles);

/// Gateway election among devices owning at least one local or wide-area
/// interface: argmax of battery_level * best own-interface utility, scored
/// against the pool of all eligible interfaces; ties by higher battery,
/// then smaller id. Throws SimError(no_gateway_candidate) when no device
/// qualifies.
std::string elect_gateway(const std::vector<DeviceProfile>& profiles,
                          const SelectionWeights& weights);

enum class PanWarning { partitioned_pan, no_gateway_candidate };

const char* to_string(PanWarning warning) noexcept;

/// Full PAN auto-configuration result. Elections run per connected
/// component; the organism-level coordinator/gateway come from the
/// component holding the smallest device id. Warnings flag a partitioned
/// PAN and components without a gateway candidate.
struct PanConfig {
  struct ComponentResult {
    std::vector<std::string> members;  // sorted device ids
    std::string coordinator;
    std::optional<std::string> gateway;
  };

  DigitalOrganism organism;
  std::vector<ComponentResult> components;
  std::vector<std::pair<PanWarning, std::string>> warnings;
};

/// Runs discovery on every device, floods profiles instantaneously within
/// each component, builds the overlay, and elects coordinator and gateway.
/// Devices must be nonempty and share one user id.
PanConfig configure(const std::vector<DeviceProfile>& devs,
                    const SelectionWeights& weights = {});

}  // namespace decosim
