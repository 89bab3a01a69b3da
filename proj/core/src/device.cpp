#include "decosim/device.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "decosim/error.hpp"

namespace decosim {
namespace {

[[noreturn]] void fail(const std::string& message) {
  throw SimError(ErrorCode::invalid_argument, message);
}

}  // namespace

RangeClass range_class(TechClass tech) noexcept {
  switch (tech) {
    case TechClass::bluetooth:
    case TechClass::zigbee:
    case TechClass::infrared:
      return RangeClass::short_range;
    case TechClass::wifi:
      return RangeClass::local;
    case TechClass::umts:
      return RangeClass::wide_area;
  }
  return RangeClass::short_range;
}

const char* to_string(TechClass tech) noexcept {
  switch (tech) {
    case TechClass::bluetooth: return "bluetooth";
    case TechClass::zigbee: return "zigbee";
    case TechClass::infrared: return "infrared";
    case TechClass::wifi: return "wifi";
    case TechClass::umts: return "umts";
  }
  return "unknown";
}

std::optional<TechClass> tech_from_string(std::string_view name) noexcept {
  if (name == "bluetooth") return TechClass::bluetooth;
  if (name == "zigbee") return TechClass::zigbee;
  if (name == "infrared") return TechClass::infrared;
  if (name == "wifi") return TechClass::wifi;
  if (name == "umts") return TechClass::umts;
  return std::nullopt;
}

bool NetIface::available_at(Tick t) const noexcept {
  if (availability.empty()) return true;  // no recorded outages
  for (const auto& interval : availability) {
    if (t < interval.start) return false;  // sorted, so no later match either
    if (t < interval.end) return true;
  }
  return false;
}

bool DeviceProfile::has_tech(TechClass tech) const noexcept {
  return std::any_of(interfaces.begin(), interfaces.end(),
                     [tech](const NetIface& iface) { return iface.tech == tech; });
}

void validate(const NetIface& iface) {
  const std::string where = "interface '" + iface.id + "': ";
  if (iface.id.empty()) fail("interface: field 'id' must be nonempty");
  if (!(iface.bandwidth_mbps > 0)) fail(where + "field 'bandwidth_mbps' must be > 0");
  if (iface.cost_per_mb < 0) fail(where + "field 'cost_per_mb' must be >= 0");
  if (iface.energy_per_mb < 0) fail(where + "field 'energy_per_mb' must be >= 0");
  if (!(iface.latency_ms > 0)) fail(where + "field 'latency_ms' must be > 0");
  if (iface.stability < 0 || iface.stability > 1) {
    fail(where + "field 'stability' must be in [0, 1]");
  }
  for (std::size_t i = 0; i < iface.availability.size(); ++i) {
    const auto& interval = iface.availability[i];
    if (interval.start >= interval.end) {
      fail(where + "field 'availability' interval " + std::to_string(i) + " is empty");
    }
    if (i > 0 && iface.availability[i - 1].end > interval.start) {
      fail(where + "field 'availability' intervals must be disjoint and sorted");
    }
  }
}

void validate(const DeviceProfile& profile) {
  const std::string where = "device '" + profile.id + "': ";
  if (profile.id.empty()) fail("device: field 'id' must be nonempty");
  if (profile.user.empty()) fail(where + "field 'user' must be nonempty");
  if (!(profile.compute > 0)) fail(where + "field 'compute' must be > 0");
  if (profile.battery_level < 0 || profile.battery_level > 1) {
    fail(where + "field 'battery_level' must be in [0, 1]");
  }
  if (!(profile.battery_capacity > 0)) {
    fail(where + "field 'battery_capacity' must be > 0");
  }
  if (profile.interfaces.empty()) {
    fail(where + "field 'interfaces' must list at least one interface");
  }
  std::set<std::string> seen;
  for (const auto& iface : profile.interfaces) {
    validate(iface);
    if (!seen.insert(iface.id).second) {
      fail(where + "field 'interfaces' repeats id '" + iface.id + "'");
    }
  }
}

void validate(const DigitalOrganism& organism) {
  std::set<std::string> ids;
  for (const auto& dev : organism.devices) {
    validate(dev);
    if (dev.user != organism.user) {
      fail("organism '" + organism.user + "': device '" + dev.id +
           "' has field 'user' = '" + dev.user + "'");
    }
    if (!ids.insert(dev.id).second) {
      fail("organism '" + organism.user + "': duplicate device id '" + dev.id + "'");
    }
  }
  auto check_ref = [&](const std::optional<std::string>& ref, const char* field) {
    if (ref && !ids.count(*ref)) {
      fail("organism '" + organism.user + "': field '" + field +
           "' references unknown device '" + *ref + "'");
    }
  };
  check_ref(organism.coordinator, "coordinator");
  check_ref(organism.gateway, "gateway");
  for (const auto& edge : organism.overlay.edges) {
    if (!ids.count(edge.a) || !ids.count(edge.b)) {
      fail("organism '" + organism.user + "': overlay edge references unknown device");
    }
    auto carries = [&](const std::string& id) {
      const auto it = std::find_if(organism.devices.begin(), organism.devices.end(),
                                   [&](const DeviceProfile& d) { return d.id == id; });
      return it != organism.devices.end() && it->has_tech(edge.tech);
    };
    if (!carries(edge.a) || !carries(edge.b)) {
      fail("organism '" + organism.user + "': overlay edge '" + edge.a + "'-'" + edge.b +
           "' joins devices that do not both carry " + to_string(edge.tech));
    }
  }
}

double total_battery(const std::vector<DeviceProfile>& devices) noexcept {
  double sum = 0.0;
  for (const auto& dev : devices) {
    sum += dev.battery_level * dev.battery_capacity;
  }
  return sum;
}

double total_battery(const DigitalOrganism& organism) noexcept {
  return total_battery(organism.devices);
}

}  // namespace decosim
