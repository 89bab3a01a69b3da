#include "decosim/pan.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "decosim/error.hpp"

namespace decosim {
namespace {

void require_single_user(const std::vector<DeviceProfile>& devs, const char* op) {
  for (const auto& dev : devs) {
    if (dev.user != devs.front().user) {
      throw SimError(ErrorCode::invalid_argument,
                     std::string(op) + ": devices belong to more than one user ('" +
                         devs.front().user + "' vs '" + dev.user + "')");
    }
  }
}

void require_unique_ids(const std::vector<DeviceProfile>& devs, const char* op) {
  std::set<std::string> seen;
  for (const auto& dev : devs) {
    if (!seen.insert(dev.id).second) {
      throw SimError(ErrorCode::invalid_argument,
                     std::string(op) + ": duplicate device id '" + dev.id + "'");
    }
  }
}

// Union-find over device ids, used to derive connected components.
class DisjointSets {
 public:
  void add(const std::string& id) { parent_.emplace(id, id); }

  const std::string& find(const std::string& id) {
    auto& p = parent_.at(id);
    if (p != id) p = find(p);
    return p;
  }

  void unite(const std::string& a, const std::string& b) {
    const std::string ra = find(a), rb = find(b);
    if (ra != rb) parent_[std::max(ra, rb)] = std::min(ra, rb);
  }

  std::vector<std::vector<std::string>> components() {
    std::map<std::string, std::vector<std::string>> groups;
    for (const auto& [id, _] : parent_) groups[find(id)].push_back(id);
    std::vector<std::vector<std::string>> out;
    for (auto& [root, members] : groups) {
      std::sort(members.begin(), members.end());
      out.push_back(std::move(members));
    }
    // keyed by root = smallest member, so groups are already ordered
    return out;
  }

 private:
  std::map<std::string, std::string> parent_;
};

// (compute desc, battery desc, id asc) — the coordinator ordering.
bool better_coordinator(const DeviceProfile& a, const DeviceProfile& b) {
  if (a.compute != b.compute) return a.compute > b.compute;
  if (a.battery_level != b.battery_level) return a.battery_level > b.battery_level;
  return a.id < b.id;
}

}  // namespace

const char* to_string(PanWarning warning) noexcept {
  switch (warning) {
    case PanWarning::partitioned_pan: return "partitioned-pan";
    case PanWarning::no_gateway_candidate: return "no-gateway-candidate";
  }
  return "unknown";
}

DiscoveryResult discover(const DeviceProfile& dev, const std::vector<DeviceProfile>& all) {
  const bool present = std::any_of(all.begin(), all.end(),
                                   [&](const DeviceProfile& d) { return d.id == dev.id; });
  if (!present) {
    throw SimError(ErrorCode::invalid_argument,
                   "discover: device '" + dev.id + "' is not part of the device list");
  }

  DiscoveryResult result;
  for (const auto& iface : dev.interfaces) {
    result.reachable.try_emplace(iface.tech);  // every carried class gets a bucket
  }
  for (const auto& peer : all) {
    if (peer.id == dev.id || peer.user != dev.user) continue;
    for (auto& [tech, bucket] : result.reachable) {
      if (peer.has_tech(tech)) bucket.push_back(peer.id);
    }
  }
  for (auto& [tech, bucket] : result.reachable) {
    std::sort(bucket.begin(), bucket.end());
    bucket.erase(std::unique(bucket.begin(), bucket.end()), bucket.end());
  }
  return result;
}

PanOverlay build_pan_overlay(const std::vector<DeviceProfile>& devs) {
  if (!devs.empty()) {
    require_single_user(devs, "build_pan_overlay");
  }
  require_unique_ids(devs, "build_pan_overlay");

  PanOverlay overlay;
  DisjointSets sets;
  for (const auto& dev : devs) sets.add(dev.id);

  // Compose the overlay from each device's discovery result; one edge per
  // shared technology class per pair.
  std::set<PanOverlay::Edge> edges;
  for (const auto& dev : devs) {
    const DiscoveryResult found = discover(dev, devs);
    for (const auto& [tech, peers] : found.reachable) {
      for (const auto& peer : peers) {
        edges.insert(PanOverlay::Edge{std::min(dev.id, peer), std::max(dev.id, peer), tech});
        sets.unite(dev.id, peer);
      }
    }
  }
  overlay.edges.assign(edges.begin(), edges.end());
  overlay.components = sets.components();
  return overlay;
}

std::string elect_coordinator(const std::vector<DeviceProfile>& profiles) {
  if (profiles.empty()) {
    throw SimError(ErrorCode::no_devices, "elect_coordinator: no devices");
  }
  require_single_user(profiles, "elect_coordinator");
  const DeviceProfile* best = &profiles.front();
  for (const auto& dev : profiles) {
    if (better_coordinator(dev, *best)) best = &dev;
  }
  return best->id;
}

std::string elect_gateway(const std::vector<DeviceProfile>& profiles,
                          const SelectionWeights& weights) {
  auto eligible_iface = [](const NetIface& iface) {
    const RangeClass rc = range_class(iface.tech);
    return rc == RangeClass::local || rc == RangeClass::wide_area;
  };

  // Candidate pool: every local/wide-area interface across eligible devices.
  std::vector<const DeviceProfile*> eligible;
  std::vector<NetIface> pool;
  for (const auto& dev : profiles) {
    bool any = false;
    for (const auto& iface : dev.interfaces) {
      if (eligible_iface(iface)) {
        pool.push_back(iface);
        any = true;
      }
    }
    if (any) eligible.push_back(&dev);
  }
  if (eligible.empty()) {
    throw SimError(ErrorCode::no_gateway_candidate,
                   "elect_gateway: no device has a local or wide-area interface");
  }

  // (score desc, battery desc, id asc) — same tie-break chain as the coordinator.
  auto better = [](double score_a, const DeviceProfile& a, double score_b,
                   const DeviceProfile& b) {
    if (score_a != score_b) return score_a > score_b;
    if (a.battery_level != b.battery_level) return a.battery_level > b.battery_level;
    return a.id < b.id;
  };

  const DeviceProfile* best = nullptr;
  double best_score = 0.0;
  for (const DeviceProfile* dev : eligible) {
    double utility = 0.0;
    for (const auto& iface : dev->interfaces) {
      if (eligible_iface(iface)) {
        utility = std::max(utility, score_iface(iface, dev->battery_level, weights, pool));
      }
    }
    const double score = dev->battery_level * utility;
    if (!best || better(score, *dev, best_score, *best)) {
      best = dev;
      best_score = score;
    }
  }
  return best->id;
}

PanConfig configure(const std::vector<DeviceProfile>& devs, const SelectionWeights& weights) {
  if (devs.empty()) {
    throw SimError(ErrorCode::no_devices, "configure: no devices");
  }
  require_single_user(devs, "configure");
  for (const auto& dev : devs) validate(dev);

  PanConfig config;
  config.organism.user = devs.front().user;
  config.organism.devices = devs;
  std::sort(config.organism.devices.begin(), config.organism.devices.end(),
            [](const DeviceProfile& a, const DeviceProfile& b) { return a.id < b.id; });
  config.organism.overlay = build_pan_overlay(devs);

  // Profile exchange is an instantaneous flood within a component, so each
  // component elects from exactly its own members.
  for (const auto& members : config.organism.overlay.components) {
    PanConfig::ComponentResult result;
    result.members = members;
    std::vector<DeviceProfile> local;
    for (const auto& dev : config.organism.devices) {
      if (std::binary_search(members.begin(), members.end(), dev.id)) local.push_back(dev);
    }
    result.coordinator = elect_coordinator(local);
    try {
      result.gateway = elect_gateway(local, weights);
    } catch (const SimError& e) {
      if (e.code() != ErrorCode::no_gateway_candidate) throw;
      config.warnings.emplace_back(PanWarning::no_gateway_candidate,
                                   "component '" + members.front() + "': " + e.what());
    }
    config.components.push_back(std::move(result));
  }

  if (config.components.size() > 1) {
    config.warnings.emplace_back(
        PanWarning::partitioned_pan,
        "PAN splits into " + std::to_string(config.components.size()) + " components");
  }

  // Organism-level election result: the component holding the smallest id.
  config.organism.coordinator = config.components.front().coordinator;
  config.organism.gateway = config.components.front().gateway;
  return config;
}

}  // namespace decosim
