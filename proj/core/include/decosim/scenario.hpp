#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "decosim/device.hpp"
#include "decosim/error.hpp"
#include "decosim/gossip.hpp"
#include "decosim/netselect.hpp"

namespace decosim {

struct OrganismDef {
  std::string user;
  std::vector<DeviceProfile> devices;

  bool operator==(const OrganismDef&) const = default;
};

struct HandoverSpec {
  std::string device;      // whose interfaces carry the session
  Tick duration = 0;       // ticks, > 0
  Tick period = 1;         // ticks between packets, >= 1
  double penalty_ms = 0.0; // latency added on an interface switch

  bool operator==(const HandoverSpec&) const = default;
};

struct GossipSpec {
  GossipParams params;
  std::vector<int> origins = {0};  // one message per origin, seeded together

  bool operator==(const GossipSpec&) const = default;
};

struct SweepGrids {
  Protocol protocol = Protocol::fixed_probability;
  std::vector<double> p_grid;
  std::vector<int> fanout_grid;
  std::vector<int> ttl_grid;
  std::vector<std::size_t> cache_grid;
  std::optional<int> trials;  // overrides the scenario-level trial count

  bool operator==(const SweepGrids&) const = default;
};

/// Everything one experiment needs, parsed from a JSON config document.
struct Scenario {
  std::uint64_t seed = 0;
  int trials = 1;
  SelectionWeights weights;
  std::vector<OrganismDef> organisms;
  std::optional<HandoverSpec> handover;
  std::optional<GraphSpec> overlay;
  std::optional<GossipSpec> gossip;
  std::optional<SweepGrids> sweep;

  bool operator==(const Scenario&) const = default;
};

/// Parses and fully validates a scenario document. The schema is strict:
/// unknown keys, duplicate ids, dangling references, and out-of-range
/// values are rejected with a ScenarioError naming the JSON path, each
/// class with its own error code.
Scenario parse_scenario(const std::string& text, const std::string& source_name = "<string>");

/// parse_scenario over a file's contents.
Scenario load_scenario(const std::string& path);

/// Serializes a scenario back to JSON; parse_scenario(scenario_to_json(s))
/// reproduces s losslessly.
std::string scenario_to_json(const Scenario& scenario);

/// Assembles the SweepSpec a scenario describes (graph from `overlay`,
/// grids from `sweep`, seed and trial count from the scenario level unless
/// overridden).
SweepSpec make_sweep_spec(const Scenario& scenario);

}  // namespace decosim
