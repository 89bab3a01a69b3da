#include "decosim/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

namespace decosim {
namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void schema_error(const std::string& path, const std::string& message) {
  throw ScenarioError(ErrorCode::scenario_schema, path, message);
}

[[noreturn]] void range_error(const std::string& path, const std::string& message) {
  throw ScenarioError(ErrorCode::scenario_out_of_range, path, message);
}

void expect_object(const json& j, const std::string& path) {
  if (!j.is_object()) schema_error(path, "expected an object");
}

void expect_array(const json& j, const std::string& path) {
  if (!j.is_array()) schema_error(path, "expected an array");
}

// Strict schema: any key outside the allowed set is rejected.
void check_keys(const json& j, const std::string& path,
                std::initializer_list<const char*> allowed) {
  for (const auto& [key, _] : j.items()) {
    if (std::find_if(allowed.begin(), allowed.end(),
                     [&](const char* a) { return key == a; }) == allowed.end()) {
      schema_error(path, "unknown key '" + key + "'");
    }
  }
}

const json* find(const json& j, const char* key) {
  const auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

const json& require(const json& j, const std::string& path, const char* key) {
  const json* p = find(j, key);
  if (!p) schema_error(path, std::string("missing required key '") + key + "'");
  return *p;
}

std::string get_string(const json& j, const std::string& path) {
  if (!j.is_string()) schema_error(path, "expected a string");
  return j.get<std::string>();
}

double get_double(const json& j, const std::string& path) {
  if (!j.is_number()) schema_error(path, "expected a number");
  return j.get<double>();
}

std::int64_t get_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) schema_error(path, "expected an integer");
  return j.get<std::int64_t>();
}

std::uint64_t get_uint64(const json& j, const std::string& path) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
    schema_error(path, "expected a nonnegative integer");
  }
  return j.get<std::uint64_t>();
}

// Ids go straight into CSV cells, so keep them free of separators.
std::string get_id(const json& j, const std::string& path) {
  const std::string id = get_string(j, path);
  if (id.empty()) schema_error(path, "id must be nonempty");
  for (const char c : id) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (c >= '0' && c <= '9') || c == '_' || c == '.' || c == ':' || c == '-';
    if (!ok) schema_error(path, "id '" + id + "' contains characters outside [A-Za-z0-9_.:-]");
  }
  return id;
}

double get_probability(const json& j, const std::string& path) {
  const double v = get_double(j, path);
  if (v < 0 || v > 1) range_error(path, "value " + std::to_string(v) + " outside [0, 1]");
  return v;
}

double get_nonnegative(const json& j, const std::string& path) {
  const double v = get_double(j, path);
  if (v < 0) range_error(path, "value must be >= 0");
  return v;
}

double get_positive(const json& j, const std::string& path) {
  const double v = get_double(j, path);
  if (!(v > 0)) range_error(path, "value must be > 0");
  return v;
}

std::int64_t get_int_min(const json& j, const std::string& path, std::int64_t min) {
  const std::int64_t v = get_int(j, path);
  if (v < min) range_error(path, "value must be >= " + std::to_string(min));
  return v;
}

NetIface parse_iface(const json& j, const std::string& path, std::set<std::string>& iface_ids) {
  expect_object(j, path);
  check_keys(j, path, {"id", "tech", "bandwidth_mbps", "cost_per_mb", "energy_per_mb",
                       "latency_ms", "stability", "availability"});
  NetIface iface;
  iface.id = get_id(require(j, path, "id"), path + ".id");
  if (!iface_ids.insert(iface.id).second) {
    throw ScenarioError(ErrorCode::scenario_duplicate_id, path + ".id",
                        "interface id '" + iface.id + "' is already defined");
  }
  const std::string tech = get_string(require(j, path, "tech"), path + ".tech");
  const auto parsed = tech_from_string(tech);
  if (!parsed) schema_error(path + ".tech", "unknown technology class '" + tech + "'");
  iface.tech = *parsed;
  if (const json* p = find(j, "bandwidth_mbps")) {
    iface.bandwidth_mbps = get_positive(*p, path + ".bandwidth_mbps");
  }
  if (const json* p = find(j, "cost_per_mb")) {
    iface.cost_per_mb = get_nonnegative(*p, path + ".cost_per_mb");
  }
  if (const json* p = find(j, "energy_per_mb")) {
    iface.energy_per_mb = get_nonnegative(*p, path + ".energy_per_mb");
  }
  if (const json* p = find(j, "latency_ms")) {
    iface.latency_ms = get_positive(*p, path + ".latency_ms");
  }
  if (const json* p = find(j, "stability")) {
    iface.stability = get_probability(*p, path + ".stability");
  }
  if (const json* p = find(j, "availability")) {
    expect_array(*p, path + ".availability");
    Tick previous_end = std::numeric_limits<Tick>::min();
    for (std::size_t i = 0; i < p->size(); ++i) {
      const std::string ipath = path + ".availability[" + std::to_string(i) + "]";
      const json& pair = (*p)[i];
      if (!pair.is_array() || pair.size() != 2) {
        schema_error(ipath, "expected [start, end]");
      }
      TickInterval interval{get_int(pair[0], ipath + "[0]"), get_int(pair[1], ipath + "[1]")};
      if (interval.start >= interval.end) {
        range_error(ipath, "interval is empty (start >= end)");
      }
      if (interval.start < previous_end) {
        range_error(ipath, "intervals must be disjoint and sorted");
      }
      previous_end = interval.end;
      iface.availability.push_back(interval);
    }
  }
  return iface;
}

DeviceProfile parse_device(const json& j, const std::string& path, const std::string& user,
                           std::set<std::string>& device_ids,
                           std::set<std::string>& iface_ids) {
  expect_object(j, path);
  check_keys(j, path, {"id", "compute", "battery_level", "battery_capacity", "interfaces"});
  DeviceProfile dev;
  dev.user = user;
  dev.id = get_id(require(j, path, "id"), path + ".id");
  if (!device_ids.insert(dev.id).second) {
    throw ScenarioError(ErrorCode::scenario_duplicate_id, path + ".id",
                        "device id '" + dev.id + "' is already defined");
  }
  if (const json* p = find(j, "compute")) dev.compute = get_positive(*p, path + ".compute");
  if (const json* p = find(j, "battery_level")) {
    dev.battery_level = get_probability(*p, path + ".battery_level");
  }
  if (const json* p = find(j, "battery_capacity")) {
    dev.battery_capacity = get_positive(*p, path + ".battery_capacity");
  }
  const json& ifaces = require(j, path, "interfaces");
  expect_array(ifaces, path + ".interfaces");
  if (ifaces.empty()) {
    schema_error(path + ".interfaces", "device '" + dev.id + "' needs at least one interface");
  }
  for (std::size_t i = 0; i < ifaces.size(); ++i) {
    dev.interfaces.push_back(
        parse_iface(ifaces[i], path + ".interfaces[" + std::to_string(i) + "]", iface_ids));
  }
  return dev;
}

GraphSpec parse_overlay(const json& j, const std::string& path) {
  expect_object(j, path);
  GraphSpec spec;
  const std::string topology =
      get_string(require(j, path, "topology"), path + ".topology");
  const auto parsed = topology_from_string(topology);
  if (!parsed) schema_error(path + ".topology", "unknown topology '" + topology + "'");
  spec.topology = *parsed;
  switch (spec.topology) {
    case Topology::random_regular:
      check_keys(j, path, {"topology", "n", "d"});
      spec.n = static_cast<int>(get_int_min(require(j, path, "n"), path + ".n", 1));
      spec.d = static_cast<int>(get_int_min(require(j, path, "d"), path + ".d", 1));
      if (spec.d >= spec.n) range_error(path + ".d", "requires n > d");
      break;
    case Topology::small_world:
      check_keys(j, path, {"topology", "n", "k", "beta"});
      spec.n = static_cast<int>(get_int_min(require(j, path, "n"), path + ".n", 1));
      spec.k = static_cast<int>(get_int_min(require(j, path, "k"), path + ".k", 2));
      spec.beta = get_probability(require(j, path, "beta"), path + ".beta");
      if (spec.k % 2 != 0) range_error(path + ".k", "k must be even");
      if (spec.k >= spec.n) range_error(path + ".k", "requires n > k");
      break;
    case Topology::scale_free:
      check_keys(j, path, {"topology", "n", "m"});
      spec.n = static_cast<int>(get_int_min(require(j, path, "n"), path + ".n", 1));
      spec.m = static_cast<int>(get_int_min(require(j, path, "m"), path + ".m", 1));
      if (spec.m >= spec.n) range_error(path + ".m", "requires n > m");
      break;
    case Topology::external:
      check_keys(j, path, {"topology", "path"});
      spec.path = get_string(require(j, path, "path"), path + ".path");
      if (spec.path.empty()) schema_error(path + ".path", "path must be nonempty");
      break;
  }
  return spec;
}

Protocol parse_protocol(const json& j, const std::string& path) {
  const std::string name = get_string(j, path);
  const auto parsed = protocol_from_string(name);
  if (!parsed) schema_error(path, "unknown protocol '" + name + "'");
  return *parsed;
}

GossipSpec parse_gossip(const json& j, const std::string& path) {
  expect_object(j, path);
  check_keys(j, path, {"protocol", "p", "fanout", "ttl", "cache", "origin", "origins"});
  GossipSpec spec;
  spec.params.protocol = parse_protocol(require(j, path, "protocol"), path + ".protocol");
  // Exactly the parameters relevant to the protocol are required; the other
  // one is accepted and ignored.
  if (spec.params.protocol == Protocol::fixed_fanout) {
    spec.params.fanout = static_cast<int>(
        get_int_min(require(j, path, "fanout"), path + ".fanout", 0));
  } else {
    spec.params.p = get_probability(require(j, path, "p"), path + ".p");
  }
  spec.params.ttl =
      static_cast<int>(get_int_min(require(j, path, "ttl"), path + ".ttl", 0));
  spec.params.cache_size = static_cast<std::size_t>(
      get_int_min(require(j, path, "cache"), path + ".cache", 1));

  const json* origin = find(j, "origin");
  const json* origins = find(j, "origins");
  if (origin && origins) {
    schema_error(path, "give either 'origin' or 'origins', not both");
  }
  if (origin) {
    spec.origins = {static_cast<int>(get_int_min(*origin, path + ".origin", 0))};
  } else if (origins) {
    expect_array(*origins, path + ".origins");
    if (origins->empty()) schema_error(path + ".origins", "needs at least one origin");
    spec.origins.clear();
    for (std::size_t i = 0; i < origins->size(); ++i) {
      spec.origins.push_back(static_cast<int>(
          get_int_min((*origins)[i], path + ".origins[" + std::to_string(i) + "]", 0)));
    }
  }
  return spec;
}

SweepGrids parse_sweep(const json& j, const std::string& path) {
  expect_object(j, path);
  check_keys(j, path, {"protocol", "p_grid", "fanout_grid", "ttl_grid", "cache_grid", "trials"});
  SweepGrids grids;
  grids.protocol = parse_protocol(require(j, path, "protocol"), path + ".protocol");
  if (grids.protocol == Protocol::fixed_fanout) {
    const json& fg = require(j, path, "fanout_grid");
    expect_array(fg, path + ".fanout_grid");
    if (fg.empty()) schema_error(path + ".fanout_grid", "grid must be nonempty");
    for (std::size_t i = 0; i < fg.size(); ++i) {
      grids.fanout_grid.push_back(static_cast<int>(
          get_int_min(fg[i], path + ".fanout_grid[" + std::to_string(i) + "]", 0)));
    }
  } else {
    const json& pg = require(j, path, "p_grid");
    expect_array(pg, path + ".p_grid");
    if (pg.empty()) schema_error(path + ".p_grid", "grid must be nonempty");
    for (std::size_t i = 0; i < pg.size(); ++i) {
      grids.p_grid.push_back(
          get_probability(pg[i], path + ".p_grid[" + std::to_string(i) + "]"));
    }
  }
  const json& tg = require(j, path, "ttl_grid");
  expect_array(tg, path + ".ttl_grid");
  if (tg.empty()) schema_error(path + ".ttl_grid", "grid must be nonempty");
  for (std::size_t i = 0; i < tg.size(); ++i) {
    grids.ttl_grid.push_back(static_cast<int>(
        get_int_min(tg[i], path + ".ttl_grid[" + std::to_string(i) + "]", 0)));
  }
  const json& cg = require(j, path, "cache_grid");
  expect_array(cg, path + ".cache_grid");
  if (cg.empty()) schema_error(path + ".cache_grid", "grid must be nonempty");
  for (std::size_t i = 0; i < cg.size(); ++i) {
    grids.cache_grid.push_back(static_cast<std::size_t>(
        get_int_min(cg[i], path + ".cache_grid[" + std::to_string(i) + "]", 1)));
  }
  if (const json* p = find(j, "trials")) {
    grids.trials = static_cast<int>(get_int_min(*p, path + ".trials", 1));
  }
  return grids;
}

}  // namespace

Scenario parse_scenario(const std::string& text, const std::string& source_name) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ScenarioError(ErrorCode::scenario_syntax, source_name, e.what());
  }
  expect_object(j, source_name);
  check_keys(j, source_name,
             {"seed", "trials", "weights", "organisms", "handover", "overlay", "gossip",
              "sweep"});

  Scenario scenario;
  if (const json* p = find(j, "seed")) scenario.seed = get_uint64(*p, "seed");
  if (const json* p = find(j, "trials")) {
    scenario.trials = static_cast<int>(get_int_min(*p, "trials", 1));
  }
  if (const json* p = find(j, "weights")) {
    expect_object(*p, "weights");
    check_keys(*p, "weights", {"bandwidth", "cost", "battery", "stability"});
    if (const json* w = find(*p, "bandwidth")) {
      scenario.weights.bandwidth = get_nonnegative(*w, "weights.bandwidth");
    }
    if (const json* w = find(*p, "cost")) {
      scenario.weights.cost = get_nonnegative(*w, "weights.cost");
    }
    if (const json* w = find(*p, "battery")) {
      scenario.weights.battery = get_nonnegative(*w, "weights.battery");
    }
    if (const json* w = find(*p, "stability")) {
      scenario.weights.stability = get_nonnegative(*w, "weights.stability");
    }
    if (scenario.weights.bandwidth + scenario.weights.cost + scenario.weights.battery +
            scenario.weights.stability <= 0) {
      range_error("weights", "at least one weight must be positive");
    }
  }

  std::set<std::string> device_ids, iface_ids, users;
  if (const json* p = find(j, "organisms")) {
    expect_array(*p, "organisms");
    for (std::size_t i = 0; i < p->size(); ++i) {
      const std::string path = "organisms[" + std::to_string(i) + "]";
      const json& node = (*p)[i];
      expect_object(node, path);
      check_keys(node, path, {"user", "devices"});
      OrganismDef organism;
      organism.user = get_id(require(node, path, "user"), path + ".user");
      if (!users.insert(organism.user).second) {
        throw ScenarioError(ErrorCode::scenario_duplicate_id, path + ".user",
                            "user '" + organism.user + "' is already defined");
      }
      const json& devices = require(node, path, "devices");
      expect_array(devices, path + ".devices");
      if (devices.empty()) {
        schema_error(path + ".devices", "organism needs at least one device");
      }
      for (std::size_t d = 0; d < devices.size(); ++d) {
        organism.devices.push_back(
            parse_device(devices[d], path + ".devices[" + std::to_string(d) + "]",
                         organism.user, device_ids, iface_ids));
      }
      scenario.organisms.push_back(std::move(organism));
    }
  }

  if (const json* p = find(j, "handover")) {
    const std::string path = "handover";
    expect_object(*p, path);
    check_keys(*p, path, {"device", "duration", "period", "penalty_ms"});
    HandoverSpec spec;
    spec.device = get_id(require(*p, path, "device"), path + ".device");
    if (!device_ids.count(spec.device)) {
      throw ScenarioError(ErrorCode::scenario_bad_reference, path + ".device",
                          "unknown device '" + spec.device + "'");
    }
    spec.duration = get_int_min(require(*p, path, "duration"), path + ".duration", 1);
    if (const json* q = find(*p, "period")) {
      spec.period = get_int_min(*q, path + ".period", 1);
    }
    if (const json* q = find(*p, "penalty_ms")) {
      spec.penalty_ms = get_nonnegative(*q, path + ".penalty_ms");
    }
    scenario.handover = spec;
  }

  if (const json* p = find(j, "overlay")) {
    scenario.overlay = parse_overlay(*p, "overlay");
  }
  if (const json* p = find(j, "gossip")) {
    if (!scenario.overlay) {
      throw ScenarioError(ErrorCode::scenario_bad_reference, "gossip",
                          "'gossip' requires an 'overlay' section");
    }
    scenario.gossip = parse_gossip(*p, "gossip");
  }
  if (const json* p = find(j, "sweep")) {
    if (!scenario.overlay) {
      throw ScenarioError(ErrorCode::scenario_bad_reference, "sweep",
                          "'sweep' requires an 'overlay' section");
    }
    scenario.sweep = parse_sweep(*p, "sweep");
  }
  return scenario;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw SimError(ErrorCode::io_error, "cannot open scenario file '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str(), path);
}

std::string scenario_to_json(const Scenario& scenario) {
  json j;
  j["seed"] = scenario.seed;
  j["trials"] = scenario.trials;
  j["weights"] = {{"bandwidth", scenario.weights.bandwidth},
                  {"cost", scenario.weights.cost},
                  {"battery", scenario.weights.battery},
                  {"stability", scenario.weights.stability}};
  if (!scenario.organisms.empty()) {
    json organisms = json::array();
    for (const auto& organism : scenario.organisms) {
      json devices = json::array();
      for (const auto& dev : organism.devices) {
        json ifaces = json::array();
        for (const auto& iface : dev.interfaces) {
          json availability = json::array();
          for (const auto& interval : iface.availability) {
            availability.push_back({interval.start, interval.end});
          }
          json node{{"id", iface.id},
                    {"tech", to_string(iface.tech)},
                    {"bandwidth_mbps", iface.bandwidth_mbps},
                    {"cost_per_mb", iface.cost_per_mb},
                    {"energy_per_mb", iface.energy_per_mb},
                    {"latency_ms", iface.latency_ms},
                    {"stability", iface.stability}};
          if (!availability.empty()) node["availability"] = availability;
          ifaces.push_back(std::move(node));
        }
        devices.push_back({{"id", dev.id},
                           {"compute", dev.compute},
                           {"battery_level", dev.battery_level},
                           {"battery_capacity", dev.battery_capacity},
                           {"interfaces", std::move(ifaces)}});
      }
      organisms.push_back({{"user", organism.user}, {"devices", std::move(devices)}});
    }
    j["organisms"] = std::move(organisms);
  }
  if (scenario.handover) {
    j["handover"] = {{"device", scenario.handover->device},
                     {"duration", scenario.handover->duration},
                     {"period", scenario.handover->period},
                     {"penalty_ms", scenario.handover->penalty_ms}};
  }
  if (scenario.overlay) {
    json node{{"topology", to_string(scenario.overlay->topology)}};
    switch (scenario.overlay->topology) {
      case Topology::random_regular:
        node["n"] = scenario.overlay->n;
        node["d"] = scenario.overlay->d;
        break;
      case Topology::small_world:
        node["n"] = scenario.overlay->n;
        node["k"] = scenario.overlay->k;
        node["beta"] = scenario.overlay->beta;
        break;
      case Topology::scale_free:
        node["n"] = scenario.overlay->n;
        node["m"] = scenario.overlay->m;
        break;
      case Topology::external:
        node["path"] = scenario.overlay->path;
        break;
    }
    j["overlay"] = std::move(node);
  }
  if (scenario.gossip) {
    json node{{"protocol", to_string(scenario.gossip->params.protocol)}};
    if (scenario.gossip->params.protocol == Protocol::fixed_fanout) {
      node["fanout"] = scenario.gossip->params.fanout;
    } else {
      node["p"] = scenario.gossip->params.p;
    }
    node["ttl"] = scenario.gossip->params.ttl;
    node["cache"] = scenario.gossip->params.cache_size;
    node["origins"] = scenario.gossip->origins;
    j["gossip"] = std::move(node);
  }
  if (scenario.sweep) {
    json node{{"protocol", to_string(scenario.sweep->protocol)}};
    if (scenario.sweep->protocol == Protocol::fixed_fanout) {
      node["fanout_grid"] = scenario.sweep->fanout_grid;
    } else {
      node["p_grid"] = scenario.sweep->p_grid;
    }
    node["ttl_grid"] = scenario.sweep->ttl_grid;
    node["cache_grid"] = scenario.sweep->cache_grid;
    if (scenario.sweep->trials) node["trials"] = *scenario.sweep->trials;
    j["sweep"] = std::move(node);
  }
  return j.dump(2) + "\n";
}

SweepSpec make_sweep_spec(const Scenario& scenario) {
  if (!scenario.overlay || !scenario.sweep) {
    throw SimError(ErrorCode::invalid_argument,
                   "make_sweep_spec: scenario needs 'overlay' and 'sweep' sections");
  }
  SweepSpec spec;
  spec.graph = *scenario.overlay;
  spec.protocol = scenario.sweep->protocol;
  spec.p_grid = scenario.sweep->p_grid;
  spec.fanout_grid = scenario.sweep->fanout_grid;
  spec.ttl_grid = scenario.sweep->ttl_grid;
  spec.cache_grid = scenario.sweep->cache_grid;
  spec.trials = scenario.sweep->trials.value_or(scenario.trials);
  spec.master_seed = scenario.seed;
  return spec;
}

}  // namespace decosim
