// Acceptance suite: one checkable criterion per function, one PASS/FAIL
// line each. Run with no arguments for all criteria, or pass criterion
// numbers to run a subset. Exits nonzero when any selected criterion fails.

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <decosim/device.hpp>
#include <decosim/gossip.hpp>
#include <decosim/netselect.hpp>
#include <decosim/overlay.hpp>
#include <decosim/pan.hpp>
#include <decosim/rng.hpp>
#include <decosim/scenario.hpp>

#include <app.hpp>

#include "../graphs.hpp"
#include "../helpers.hpp"
#include "../oracles/enumerate.hpp"

namespace fs = std::filesystem;
using namespace decosim;

namespace {

double elapsed_seconds(const std::chrono::steady_clock::time_point& start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

GossipParams make_params(Protocol protocol, double p, int fanout, int ttl,
                         std::size_t cache = 1024) {
  GossipParams params;
  params.protocol = protocol;
  params.p = p;
  params.fanout = fanout;
  params.ttl = ttl;
  params.cache_size = cache;
  return params;
}

fs::path scratch_dir() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() /
                 ("decosim-acceptance-" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// --- criterion 1 -----------------------------------------------------------
// Flooding (fixed probability p=1, ttl >= diameter) covers every node of a
// connected graph and first-receipt hops equal BFS distances. 50 graphs,
// n <= 200, under 10 seconds.

bool criterion_flooding_oracle(std::string& detail) {
  const auto start = std::chrono::steady_clock::now();
  RngStream graph_rng(101, 0);
  for (int round = 0; round < 50; ++round) {
    const OverlayGraph g = testutil::random_connected_graph(graph_rng, 200, round);
    const int ttl = diameter(g);
    RngStream rng(101, static_cast<std::uint64_t>(1000 + round));
    const int origin = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(g.n)));
    const Metrics m = run_dissemination(
        g, origin, make_params(Protocol::fixed_probability, 1.0, 0, ttl), rng);
    if (m.coverage != 1.0) {
      detail = "coverage " + std::to_string(m.coverage) + " on graph " +
               std::to_string(round);
      return false;
    }
    if (m.first_hop != bfs_distances(g, origin)) {
      detail = "hop distances diverge from BFS on graph " + std::to_string(round);
      return false;
    }
  }
  const double seconds = elapsed_seconds(start);
  detail = "50 graphs in " + std::to_string(seconds) + " s";
  return seconds < 10.0;
}

// --- criterion 2 -----------------------------------------------------------
// 5-node path, origin at one end: analytic coverage (2+p+p^2+p^3)/5,
// cross-checked against the enumeration oracle, matched by Monte-Carlo
// within +-0.01 at 1e5 trials. Under 30 seconds.

bool criterion_path_analytic(std::string& detail) {
  const auto start = std::chrono::steady_clock::now();
  const OverlayGraph path = testutil::path_graph(5);
  // frozen oracle values for p = 0.25, 0.5, 0.75
  const std::vector<std::pair<double, double>> expected = {
      {0.25, 0.465625}, {0.5, 0.575}, {0.75, 0.746875}};
  std::ostringstream report;
  for (const auto& [p, frozen] : expected) {
    const GossipParams params = make_params(Protocol::fixed_probability, p, 0, 4);
    const double analytic = (2.0 + p + p * p + p * p * p) / 5.0;
    const double enumerated = oracle::expected_coverage(path, 0, params);
    if (std::abs(analytic - frozen) > 1e-12 || std::abs(enumerated - frozen) > 1e-12) {
      detail = "oracle disagrees with the closed form at p=" + std::to_string(p);
      return false;
    }
    const int trials = 100000;
    double total = 0.0;
    for (int t = 0; t < trials; ++t) {
      RngStream rng(202, (static_cast<std::uint64_t>(p * 100) << 32) |
                             static_cast<std::uint64_t>(t));
      total += run_dissemination(path, 0, params, rng).coverage;
    }
    const double mc = total / trials;
    report << " p=" << p << ": |" << mc << " - " << frozen << "| = "
           << std::abs(mc - frozen);
    if (std::abs(mc - frozen) > 0.01) {
      detail = "Monte-Carlo off by more than 0.01 at p=" + std::to_string(p);
      return false;
    }
  }
  const double seconds = elapsed_seconds(start);
  detail = report.str() + " in " + std::to_string(seconds) + " s";
  return seconds < 30.0;
}

// --- criterion 3 -----------------------------------------------------------
// On 10 random graphs with n <= 8 (and <= 12 edges so enumeration stays
// exact), all three protocols match the exhaustive-enumeration oracle
// within +-0.01 at 1e5 trials.

bool criterion_small_graph_bruteforce(std::string& detail) {
  RngStream graph_rng(303, 0);
  double worst = 0.0;
  for (int round = 0; round < 10; ++round) {
    const int n = 4 + static_cast<int>(graph_rng.next_below(5));  // 4..8
    const int max_edges = std::min(12, n * (n - 1) / 2);
    const int m = std::min(max_edges,
                           n - 1 + static_cast<int>(graph_rng.next_below(6)));
    const OverlayGraph g = testutil::random_simple_graph(n, m, graph_rng);
    const int origin = static_cast<int>(graph_rng.next_below(static_cast<std::uint64_t>(n)));

    const GossipParams configs[3] = {
        make_params(Protocol::conditional_broadcast, 0.6, 0, 8),
        make_params(Protocol::fixed_probability, 0.4, 0, 8),
        make_params(Protocol::fixed_fanout, 0.0, 2, 8),
    };
    for (int c = 0; c < 3; ++c) {
      const double exact = oracle::expected_coverage(g, origin, configs[c]);
      const int trials = 100000;
      double total = 0.0;
      for (int t = 0; t < trials; ++t) {
        RngStream rng(304, (static_cast<std::uint64_t>(round * 3 + c) << 32) |
                               static_cast<std::uint64_t>(t));
        total += run_dissemination(g, origin, configs[c], rng).coverage;
      }
      const double mc = total / trials;
      worst = std::max(worst, std::abs(mc - exact));
      if (std::abs(mc - exact) > 0.01) {
        detail = "graph " + std::to_string(round) + " protocol " +
                 to_string(configs[c].protocol) + ": |" + std::to_string(mc) + " - " +
                 std::to_string(exact) + "| > 0.01";
        return false;
      }
    }
  }
  detail = "30 graph/protocol pairs, worst |mc - exact| = " + std::to_string(worst);
  return true;
}

// --- criterion 4 -----------------------------------------------------------
// Fixed fanout at f = max degree, conditional broadcast at p=1 and fixed
// probability at p=1 all degenerate to flooding: coverage 1.0 and identical
// hop distributions.

bool criterion_protocol_degeneracy(std::string& detail) {
  RngStream graph_rng(404, 0);
  for (int round = 0; round < 8; ++round) {
    const OverlayGraph g = testutil::random_connected_graph(graph_rng, 120, round);
    const int ttl = diameter(g) + 1;
    RngStream r1(404, 1), r2(404, 2), r3(404, 3);
    const Metrics fp = run_dissemination(
        g, 0, make_params(Protocol::fixed_probability, 1.0, 0, ttl), r1);
    const Metrics cb = run_dissemination(
        g, 0, make_params(Protocol::conditional_broadcast, 1.0, 0, ttl), r2);
    const Metrics ff = run_dissemination(
        g, 0, make_params(Protocol::fixed_fanout, 0.0, g.max_degree(), ttl), r3);
    if (fp.coverage != 1.0 || cb.coverage != 1.0 || ff.coverage != 1.0) {
      detail = "a degenerate protocol failed to flood graph " + std::to_string(round);
      return false;
    }
    if (fp.first_hop != cb.first_hop || fp.first_hop != ff.first_hop) {
      detail = "hop distributions differ on graph " + std::to_string(round);
      return false;
    }
  }
  detail = "8 connected graphs, identical hop distributions";
  return true;
}

// --- criterion 5 -----------------------------------------------------------
// Fig. 2 shape on a 500-node small world (k=6, beta=0.1): mean coverage
// over 1000 trials is nondecreasing in p within two standard errors, and
// nonincreasing as ttl shrinks below the diameter.

bool criterion_monotonicity(std::string& detail) {
  RngStream graph_rng(505, 0);
  OverlayGraph g = gen_small_world(500, 6, 0.1, graph_rng);
  while (!is_connected(g)) g = gen_small_world(500, 6, 0.1, graph_rng);
  const int d = diameter(g);

  const fs::path graph_path = scratch_dir() / "mono_graph.edges";
  {
    std::ofstream out(graph_path, std::ios::binary);
    write_edge_list(g, out);
  }

  SweepSpec spec;
  spec.graph.topology = Topology::external;
  spec.graph.path = graph_path.string();
  spec.protocol = Protocol::fixed_probability;
  spec.trials = 1000;
  spec.master_seed = 515;
  spec.cache_grid = {64};

  // p sweep at ample ttl
  spec.p_grid = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  spec.ttl_grid = {d};
  const auto p_rows = sweep(spec, 4);
  for (std::size_t i = 0; i + 1 < p_rows.size(); ++i) {
    const double se_i = p_rows[i].sd_coverage / std::sqrt(1000.0);
    const double se_j = p_rows[i + 1].sd_coverage / std::sqrt(1000.0);
    const double slack = 2.0 * std::sqrt(se_i * se_i + se_j * se_j);
    if (p_rows[i + 1].mean_coverage < p_rows[i].mean_coverage - slack) {
      detail = "coverage dropped from p=" + std::to_string(*p_rows[i].p) + " to p=" +
               std::to_string(*p_rows[i + 1].p);
      return false;
    }
  }

  // ttl sweep below the diameter at fixed p
  spec.p_grid = {0.8};
  spec.ttl_grid.clear();
  for (int ttl = d; ttl >= 1; --ttl) spec.ttl_grid.push_back(ttl);
  const auto ttl_rows = sweep(spec, 4);
  for (std::size_t i = 0; i + 1 < ttl_rows.size(); ++i) {
    // rows run from ttl=d down to 1; shrinking ttl must not raise coverage
    const double se_i = ttl_rows[i].sd_coverage / std::sqrt(1000.0);
    const double se_j = ttl_rows[i + 1].sd_coverage / std::sqrt(1000.0);
    const double slack = 2.0 * std::sqrt(se_i * se_i + se_j * se_j);
    if (ttl_rows[i + 1].mean_coverage > ttl_rows[i].mean_coverage + slack) {
      detail = "coverage rose when ttl shrank to " +
               std::to_string(ttl_rows[i + 1].ttl);
      return false;
    }
  }
  detail = "diameter " + std::to_string(d) + ", p grid of 10 and ttl grid of " +
           std::to_string(ttl_rows.size()) + " cells monotone within 2 SE";
  return true;
}

// --- criterion 6 -----------------------------------------------------------
// Cache-size knob: with cache 1 and four concurrent messages on a 100-node
// graph, evictions re-enable forwarding, so duplicate deliveries strictly
// exceed the ample-cache count over 100 trials.

bool criterion_cache_effect(std::string& detail) {
  std::uint64_t tiny_total = 0, ample_total = 0;
  for (int trial = 0; trial < 100; ++trial) {
    RngStream setup(606, static_cast<std::uint64_t>(trial));
    OverlayGraph g = gen_small_world(100, 4, 0.1, setup);
    std::set<int> origin_set;
    while (origin_set.size() < 4) {
      origin_set.insert(static_cast<int>(setup.next_below(100)));
    }
    const std::vector<int> origins(origin_set.begin(), origin_set.end());

    RngStream tiny_rng(607, static_cast<std::uint64_t>(trial));
    tiny_total += run_multi(g, origins,
                            make_params(Protocol::fixed_probability, 1.0, 0, 6, 1),
                            tiny_rng)
                      .total_duplicates;
    RngStream ample_rng(607, static_cast<std::uint64_t>(trial));
    ample_total += run_multi(g, origins,
                             make_params(Protocol::fixed_probability, 1.0, 0, 6, 64),
                             ample_rng)
                       .total_duplicates;
  }
  detail = "duplicates over 100 trials: cache=1 -> " + std::to_string(tiny_total) +
           ", ample -> " + std::to_string(ample_total);
  return tiny_total > ample_total;
}

// --- criterion 7 -----------------------------------------------------------
// Fig. 1 shape: wifi up on [0,30) and [60,90), umts up on [0,90); exactly
// two handovers, zero drops, and every umts packet slower than every wifi
// packet.

bool criterion_handover_continuity(std::string& detail) {
  auto wifi = testutil::iface("wifi", TechClass::wifi, 54, 0, 0.5, 20, 0.9);
  wifi.availability = {{0, 30}, {60, 90}};
  auto umts = testutil::iface("umts", TechClass::umts, 2, 10, 2.0, 300, 0.95);
  umts.availability = {{0, 90}};

  const HandoverTrace trace =
      simulate_handover({wifi, umts}, 90, 1, SelectionWeights{}, 100.0);
  if (trace.handovers.size() != 2) {
    detail = std::to_string(trace.handovers.size()) + " handovers, expected 2";
    return false;
  }
  if (trace.drop_count() != 0) {
    detail = std::to_string(trace.drop_count()) + " drops, expected 0";
    return false;
  }
  double min_umts = 1e300, max_wifi = 0.0;
  for (const auto& packet : trace.packets) {
    if (packet.iface == "umts") min_umts = std::min(min_umts, packet.latency_ms);
    if (packet.iface == "wifi") max_wifi = std::max(max_wifi, packet.latency_ms);
  }
  detail = "handovers at t=" + std::to_string(trace.handovers[0].tick) + "," +
           std::to_string(trace.handovers[1].tick) + "; min umts " +
           std::to_string(min_umts) + " ms > max wifi " + std::to_string(max_wifi) +
           " ms";
  return trace.handovers[0].tick == 30 && trace.handovers[1].tick == 60 &&
         min_umts > max_wifi;
}

// --- criterion 8 -----------------------------------------------------------
// Election properties over 1000 randomized profile sets: permutation
// invariance, invariance under positive scaling of compute scores, and the
// documented tie-break chain on constructed ties.

std::vector<DeviceProfile> random_profiles(RngStream& rng) {
  const int count = 2 + static_cast<int>(rng.next_below(6));
  std::vector<DeviceProfile> devs;
  for (int i = 0; i < count; ++i) {
    std::vector<NetIface> ifaces;
    const int iface_count = 1 + static_cast<int>(rng.next_below(3));
    for (int k = 0; k < iface_count; ++k) {
      ifaces.push_back(testutil::iface(
          "d" + std::to_string(i) + "-i" + std::to_string(k),
          static_cast<TechClass>(rng.next_below(5)),
          1.0 + static_cast<double>(rng.next_below(100)),
          static_cast<double>(rng.next_below(10)),
          static_cast<double>(rng.next_below(5)),
          1.0 + static_cast<double>(rng.next_below(300)), rng.next_double()));
    }
    if (i == 0) ifaces.push_back(testutil::iface("d0-wifi", TechClass::wifi, 54));
    devs.push_back(testutil::device("d" + std::to_string(i), "u", std::move(ifaces),
                                    1.0 + static_cast<double>(rng.next_below(1000)),
                                    rng.next_double(), 10.0));
  }
  return devs;
}

bool criterion_election_properties(std::string& detail) {
  RngStream rng(808, 0);
  const SelectionWeights weights;
  for (int round = 0; round < 1000; ++round) {
    auto devs = random_profiles(rng);
    const std::string coordinator = elect_coordinator(devs);
    const std::string gateway = elect_gateway(devs, weights);

    auto shuffled = devs;
    rng.shuffle(shuffled);
    if (elect_coordinator(shuffled) != coordinator ||
        elect_gateway(shuffled, weights) != gateway) {
      detail = "permutation changed an election at round " + std::to_string(round);
      return false;
    }

    const double factor = 0.5 * static_cast<double>(1 + rng.next_below(8));
    auto scaled = devs;
    for (auto& dev : scaled) dev.compute *= factor;
    if (elect_coordinator(scaled) != coordinator ||
        elect_gateway(scaled, weights) != gateway) {
      detail = "scaling compute changed an election at round " + std::to_string(round);
      return false;
    }
  }

  // constructed ties: equal compute -> battery wins; equal both -> id wins
  auto t1 = testutil::device("a", "u", {testutil::iface("a0", TechClass::wifi)}, 100, 0.4);
  auto t2 = testutil::device("b", "u", {testutil::iface("b0", TechClass::wifi)}, 100, 0.9);
  if (elect_coordinator({t1, t2}) != "b") {
    detail = "battery tie-break failed";
    return false;
  }
  t2.battery_level = 0.4;
  if (elect_coordinator({t2, t1}) != "a") {
    detail = "id tie-break failed";
    return false;
  }
  if (elect_gateway({t2, t1}, weights) != "a") {
    detail = "gateway id tie-break failed";
    return false;
  }
  detail = "1000 randomized sets plus constructed ties";
  return true;
}

// --- criterion 9 -----------------------------------------------------------
// Replay: the same scenario and master seed produce byte-identical CSV for
// every subcommand, and the sweep is thread-count independent.

bool criterion_determinism(std::string& detail) {
  const char* scenario_text = R"({
    "seed": 909,
    "organisms": [
      {"user": "alice", "devices": [
        {"id": "a", "compute": 100, "battery_level": 0.5,
         "interfaces": [{"id": "a-bt", "tech": "bluetooth"}]},
        {"id": "b", "compute": 300, "battery_level": 0.8,
         "interfaces": [{"id": "b-bt", "tech": "bluetooth"},
                          {"id": "b-wifi", "tech": "wifi", "bandwidth_mbps": 54,
                           "latency_ms": 20, "availability": [[0, 30], [60, 90]]},
                          {"id": "b-umts", "tech": "umts", "bandwidth_mbps": 2,
                           "latency_ms": 300, "cost_per_mb": 10,
                           "availability": [[0, 90]]}]}
      ]}
    ],
    "handover": {"device": "b", "duration": 90, "period": 1, "penalty_ms": 100},
    "overlay": {"topology": "small-world", "n": 60, "k": 4, "beta": 0.2},
    "gossip": {"protocol": "fixed-probability", "p": 0.6, "ttl": 6, "cache": 8,
               "origins": [0, 7]},
    "sweep": {"protocol": "fixed-probability", "p_grid": [0.3, 0.9],
              "ttl_grid": [6], "cache_grid": [8], "trials": 50}
  })";
  const fs::path scenario_path = scratch_dir() / "determinism.json";
  {
    std::ofstream out(scenario_path, std::ios::binary);
    out << scenario_text;
  }

  for (const std::string sub : {"pan", "handover", "gossip", "sweep"}) {
    std::string bytes[2];
    for (int run = 0; run < 2; ++run) {
      const fs::path out_path =
          scratch_dir() / (sub + "_rerun" + std::to_string(run) + ".csv");
      std::ostringstream out, err;
      const int code = decosim::app::run_cli(
          {sub, "--scenario", scenario_path.string(), "--out", out_path.string(),
           "--quiet"},
          out, err);
      if (code != 0) {
        detail = sub + " exited " + std::to_string(code) + ": " + err.str();
        return false;
      }
      bytes[run] = read_file(out_path);
    }
    if (bytes[0].empty() || bytes[0] != bytes[1]) {
      detail = sub + " reruns differ";
      return false;
    }
  }

  // thread-count independence of the sweep aggregation
  const Scenario scenario = parse_scenario(scenario_text);
  const SweepSpec spec = make_sweep_spec(scenario);
  const auto serial = sweep(spec, 1);
  const auto parallel = sweep(spec, 4);
  for (std::size_t i = 0; i < serial.size(); ++i) {
    if (serial[i].mean_coverage != parallel[i].mean_coverage ||
        serial[i].sd_hops != parallel[i].sd_hops) {
      detail = "sweep results depend on the job count";
      return false;
    }
  }
  detail = "pan/handover/gossip/sweep byte-identical across reruns";
  return true;
}

// --- criterion 10 ----------------------------------------------------------
// Relay property: whenever technology islands share one multi-interface
// bridge device, the PAN has a single connected component.

bool criterion_pan_relay(std::string& detail) {
  RngStream rng(1010, 0);
  const TechClass classes[] = {TechClass::bluetooth, TechClass::zigbee,
                               TechClass::infrared, TechClass::wifi, TechClass::umts};
  for (int round = 0; round < 500; ++round) {
    const int islands = 2 + static_cast<int>(rng.next_below(4));
    std::vector<DeviceProfile> devs;
    std::vector<NetIface> bridge;
    for (int island = 0; island < islands; ++island) {
      const int members = 1 + static_cast<int>(rng.next_below(5));
      for (int i = 0; i < members; ++i) {
        const std::string id =
            "i" + std::to_string(island) + "-" + std::to_string(i);
        devs.push_back(
            testutil::device(id, "u", {testutil::iface(id + "-if", classes[island])}));
      }
      bridge.push_back(testutil::iface("bridge-" + std::to_string(island),
                                       classes[island]));
    }
    devs.push_back(testutil::device("bridge", "u", std::move(bridge)));
    rng.shuffle(devs);
    const PanOverlay overlay = build_pan_overlay(devs);
    if (overlay.components.size() != 1) {
      detail = std::to_string(overlay.components.size()) + " components at round " +
               std::to_string(round);
      return false;
    }
  }
  detail = "500 randomized island sets, always one component";
  return true;
}

struct Criterion {
  int id;
  const char* name;
  std::function<bool(std::string&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {1, "flooding equals BFS on 50 connected graphs", criterion_flooding_oracle},
      {2, "path-graph analytic coverage", criterion_path_analytic},
      {3, "small-graph exhaustive-enumeration equivalence",
       criterion_small_graph_bruteforce},
      {4, "protocol degeneracy to flooding", criterion_protocol_degeneracy},
      {5, "coverage monotone in p and ttl", criterion_monotonicity},
      {6, "cache-size knob drives duplicates", criterion_cache_effect},
      {7, "seamless handover continuity", criterion_handover_continuity},
      {8, "election invariances and tie-breaks", criterion_election_properties},
      {9, "byte-identical replay by seed", criterion_determinism},
      {10, "bridged islands form one PAN component", criterion_pan_relay},
  };

  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  int failures = 0;
  for (const auto& criterion : criteria) {
    if (!selected.empty() && !selected.count(criterion.id)) continue;
    std::string detail;
    bool ok = false;
    try {
      ok = criterion.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    std::printf("[%s] criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", criterion.id,
                criterion.name, detail.empty() ? "" : " — ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
