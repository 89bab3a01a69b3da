#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "decosim/overlay.hpp"
#include "decosim/rng.hpp"

namespace decosim {

/// The three relay forwarding rules: all-or-nothing per message, per-neighbor
/// Bernoulli, fixed-size random neighbor subset.
enum class Protocol { conditional_broadcast, fixed_probability, fixed_fanout };

const char* to_string(Protocol p) noexcept;
std::optional<Protocol> protocol_from_string(std::string_view name) noexcept;

struct GossipParams {
  Protocol protocol = Protocol::fixed_probability;
  double p = 1.0;              // conditional-broadcast / fixed-probability
  int fanout = 0;              // fixed-fanout
  int ttl = 0;                 // relay hop budget carried by seed copies
  std::size_t cache_size = 1;  // per-node seen-id capacity (LRU)

  bool operator==(const GossipParams&) const = default;
};

/// Relay forwarding choice for a freshly accepted message (remaining ttl
/// must be positive, checked by the engine, not here):
///   conditional broadcast: all neighbors with probability p, else none;
///   fixed probability: each neighbor independently with probability p;
///   fixed fanout: min(fanout, |neighbors|) distinct uniform neighbors.
/// Returns the chosen subset in ascending order.
std::vector<int> forward_decision(const GossipParams& params,
                                  const std::vector<int>& neighbors, RngStream& rng);

/// Per-message dissemination statistics.
///
/// Deliveries count every copy processed, including the origin's
/// deterministic hop-0 self-delivery that models seeding; with an ample
/// cache, duplicates == deliveries - distinct_deliveries exactly.
struct Metrics {
  int nodes = 0;
  int covered = 0;         // origin always counts
  double coverage = 0.0;   // covered / nodes, in [1/n, 1]
  double mean_hops = 0.0;  // mean first-receipt hop over covered nodes
  std::vector<int> first_hop;  // per node; -1 = never received
  std::uint64_t duplicates = 0;           // copies that found their id cached
  std::uint64_t deliveries = 0;           // all copies processed
  std::uint64_t distinct_deliveries = 0;  // (node, message) pairs seen at least once
};

/// Disseminates one message from `origin` and returns its metrics.
///
/// The origin seeds deterministically: it sends to all its neighbors with
/// the configured ttl; each sender (origin included) decrements the budget,
/// so a copy arriving at hop h carries ttl-h. A copy always counts for
/// coverage, even at remaining ttl 0, but is relayed only when the budget
/// is still positive. Nodes suppress re-forwarding through an LRU cache of
/// seen message ids; an evicted id arriving again is treated as new.
Metrics run_dissemination(const OverlayGraph& g, int origin, const GossipParams& params,
                          RngStream& rng);

/// Several messages in flight at once (one per origin, all seeded at tick
/// 0). Cache pressure across concurrent messages is what the cache_size
/// knob controls.
struct MultiMetrics {
  std::vector<Metrics> per_message;
  std::uint64_t total_duplicates = 0;
};

MultiMetrics run_multi(const OverlayGraph& g, const std::vector<int>& origins,
                       const GossipParams& params, RngStream& rng);

/// How to obtain the overlay for an experiment.
struct GraphSpec {
  Topology topology = Topology::small_world;
  int n = 0;
  int d = 0;         // random-regular
  int k = 0;         // small-world
  double beta = 0.0; // small-world
  int m = 0;         // scale-free
  std::string path;  // external edge-list file

  bool operator==(const GraphSpec&) const = default;
};

/// Generates (or loads) the graph described by `spec`, consuming `rng` for
/// the generated families.
OverlayGraph build_graph(const GraphSpec& spec, RngStream& rng);

/// Parameter sweep: for every (p or fanout) x ttl x cache cell, runs
/// `trials` independent disseminations with fresh graphs and uniform random
/// origins, and aggregates coverage/hop/duplicate statistics.
struct SweepSpec {
  GraphSpec graph;
  Protocol protocol = Protocol::fixed_probability;
  std::vector<double> p_grid;        // conditional-broadcast / fixed-probability
  std::vector<int> fanout_grid;      // fixed-fanout
  std::vector<int> ttl_grid;
  std::vector<std::size_t> cache_grid;
  int trials = 1;
  std::uint64_t master_seed = 0;

  bool operator==(const SweepSpec&) const = default;
};

struct SweepRow {
  Protocol protocol = Protocol::fixed_probability;
  int n = 0;
  Topology topology = Topology::small_world;
  std::optional<double> p;
  std::optional<int> fanout;
  int ttl = 0;
  std::size_t cache = 1;
  int trials = 0;
  double mean_coverage = 0.0;
  double sd_coverage = 0.0;
  double mean_hops = 0.0;
  double sd_hops = 0.0;
  double mean_duplicates = 0.0;
  bool failed = false;
  std::string error;
};

/// Deterministic for a given master seed regardless of `jobs`: trial t of
/// cell c always runs on stream id (c << 32) | t and results are reduced in
/// trial order.
std::vector<SweepRow> sweep(const SweepSpec& spec, int jobs = 1);

}  // namespace decosim
