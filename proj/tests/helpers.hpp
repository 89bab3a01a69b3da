#pragma once

#include <string>
#include <vector>

#include <decosim/device.hpp>

namespace testutil {

inline decosim::NetIface iface(std::string id, decosim::TechClass tech,
                               double bandwidth = 10.0, double cost = 0.0,
                               double energy = 0.0, double latency = 10.0,
                               double stability = 1.0) {
  decosim::NetIface i;
  i.id = std::move(id);
  i.tech = tech;
  i.bandwidth_mbps = bandwidth;
  i.cost_per_mb = cost;
  i.energy_per_mb = energy;
  i.latency_ms = latency;
  i.stability = stability;
  return i;
}

inline decosim::DeviceProfile device(std::string id, std::string user,
                                     std::vector<decosim::NetIface> ifaces,
                                     double compute = 100.0, double battery = 1.0,
                                     double capacity = 100.0) {
  decosim::DeviceProfile d;
  d.id = std::move(id);
  d.user = std::move(user);
  d.compute = compute;
  d.battery_level = battery;
  d.battery_capacity = capacity;
  d.interfaces = std::move(ifaces);
  return d;
}

}  // namespace testutil
