#include "decosim/gossip.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <string>
#include <thread>
#include <utility>

#include "decosim/error.hpp"
#include "decosim/sim.hpp"

namespace decosim {
namespace {

void validate_params(const GossipParams& params) {
  switch (params.protocol) {
    case Protocol::conditional_broadcast:
    case Protocol::fixed_probability:
      if (params.p < 0 || params.p > 1) {
        throw SimError(ErrorCode::invalid_argument, "gossip: p must be in [0, 1]");
      }
      break;
    case Protocol::fixed_fanout:
      if (params.fanout < 0) {
        throw SimError(ErrorCode::invalid_argument, "gossip: fanout must be >= 0");
      }
      break;
  }
  if (params.ttl < 0) {
    throw SimError(ErrorCode::invalid_argument, "gossip: ttl must be >= 0");
  }
  if (params.cache_size < 1) {
    throw SimError(ErrorCode::invalid_argument, "gossip: cache size must be >= 1");
  }
}

// Per-node seen-message memory. Bounded; evicting the least-recently-seen
// id re-enables forwarding of that id. The id count stays tiny (one per
// message in flight), so linear scans beat pointer-heavy structures.
class LruCache {
 public:
  explicit LruCache(std::size_t capacity) : capacity_(capacity) {}

  // True (and recency refreshed) when the id is present.
  bool touch(int id) {
    const auto it = std::find(ids_.begin(), ids_.end(), id);
    if (it == ids_.end()) return false;
    ids_.erase(it);
    ids_.push_back(id);
    return true;
  }

  void insert(int id) {
    if (ids_.size() == capacity_) ids_.erase(ids_.begin());
    ids_.push_back(id);
  }

 private:
  std::size_t capacity_;
  std::vector<int> ids_;  // least recently seen first
};

struct MessageState {
  Metrics metrics;
  std::vector<char> delivered_once;  // per node
  std::uint64_t hop_sum = 0;
};

// One dissemination run: all messages seeded at tick 0, one engine, one
// rng consumed in event order.
class Engine {
 public:
  Engine(const OverlayGraph& g, const GossipParams& params, RngStream& rng)
      : graph_(g), params_(params), rng_(rng) {
    caches_.reserve(static_cast<std::size_t>(g.n));
    for (int v = 0; v < g.n; ++v) caches_.emplace_back(params.cache_size);
  }

  MultiMetrics run(const std::vector<int>& origins) {
    messages_.resize(origins.size());
    for (auto& msg : messages_) {
      msg.metrics.nodes = graph_.n;
      msg.metrics.first_hop.assign(static_cast<std::size_t>(graph_.n), -1);
      msg.delivered_once.assign(static_cast<std::size_t>(graph_.n), 0);
    }
    // Seeding is a deterministic hop-0 self-delivery carrying the full ttl.
    for (std::size_t m = 0; m < origins.size(); ++m) {
      const int origin = origins[m];
      sim_.schedule(0, [this, origin, m] {
        deliver(origin, static_cast<int>(m), params_.ttl, 0);
      });
    }
    sim_.run();

    MultiMetrics out;
    for (auto& msg : messages_) {
      Metrics& metrics = msg.metrics;
      metrics.coverage = static_cast<double>(metrics.covered) / graph_.n;
      metrics.mean_hops =
          metrics.covered > 0 ? static_cast<double>(msg.hop_sum) / metrics.covered : 0.0;
      out.total_duplicates += metrics.duplicates;
      out.per_message.push_back(std::move(metrics));
    }
    return out;
  }

 private:
  void deliver(int node, int msg_id, int remaining_ttl, int hop) {
    MessageState& msg = messages_[msg_id];
    msg.metrics.deliveries++;
    if (!msg.delivered_once[node]) {
      msg.delivered_once[node] = 1;
      msg.metrics.distinct_deliveries++;
    }
    if (caches_[node].touch(msg_id)) {
      msg.metrics.duplicates++;  // seen and still cached: suppressed
      return;
    }
    caches_[node].insert(msg_id);
    if (msg.metrics.first_hop[node] < 0) {
      msg.metrics.first_hop[node] = hop;
      msg.metrics.covered++;
      msg.hop_sum += static_cast<std::uint64_t>(hop);
    }
    if (remaining_ttl <= 0) return;

    // hop 0 is the origin's seed: it floods; relays roll the dice.
    const std::vector<int>& neighbors = graph_.adj[node];
    const std::vector<int> targets =
        hop == 0 ? neighbors : forward_decision(params_, neighbors, rng_);
    for (const int target : targets) {
      sim_.schedule(sim_.now() + 1, [this, target, msg_id, remaining_ttl, hop] {
        deliver(target, msg_id, remaining_ttl - 1, hop + 1);
      });
    }
  }

  const OverlayGraph& graph_;
  const GossipParams& params_;
  RngStream& rng_;
  Simulation sim_;
  std::vector<LruCache> caches_;
  std::vector<MessageState> messages_;
};

double sample_sd(const std::vector<double>& values, double mean) {
  if (values.size() < 2) return 0.0;
  double ss = 0.0;
  for (const double v : values) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

}  // namespace

const char* to_string(Protocol p) noexcept {
  switch (p) {
    case Protocol::conditional_broadcast: return "conditional-broadcast";
    case Protocol::fixed_probability: return "fixed-probability";
    case Protocol::fixed_fanout: return "fixed-fanout";
  }
  return "unknown";
}

std::optional<Protocol> protocol_from_string(std::string_view name) noexcept {
  if (name == "conditional-broadcast") return Protocol::conditional_broadcast;
  if (name == "fixed-probability") return Protocol::fixed_probability;
  if (name == "fixed-fanout") return Protocol::fixed_fanout;
  return std::nullopt;
}

std::vector<int> forward_decision(const GossipParams& params,
                                  const std::vector<int>& neighbors, RngStream& rng) {
  validate_params(params);
  switch (params.protocol) {
    case Protocol::conditional_broadcast:
      return rng.bernoulli(params.p) ? neighbors : std::vector<int>{};
    case Protocol::fixed_probability: {
      std::vector<int> chosen;
      for (const int nb : neighbors) {
        if (rng.bernoulli(params.p)) chosen.push_back(nb);
      }
      return chosen;
    }
    case Protocol::fixed_fanout: {
      const auto k = std::min<std::size_t>(static_cast<std::size_t>(params.fanout),
                                           neighbors.size());
      const auto picks =
          rng.sample_without_replacement(static_cast<std::uint32_t>(neighbors.size()),
                                         static_cast<std::uint32_t>(k));
      std::vector<int> chosen;
      chosen.reserve(picks.size());
      for (const auto idx : picks) chosen.push_back(neighbors[idx]);
      std::sort(chosen.begin(), chosen.end());
      return chosen;
    }
  }
  return {};
}

Metrics run_dissemination(const OverlayGraph& g, int origin, const GossipParams& params,
                          RngStream& rng) {
  return run_multi(g, {origin}, params, rng).per_message.front();
}

MultiMetrics run_multi(const OverlayGraph& g, const std::vector<int>& origins,
                       const GossipParams& params, RngStream& rng) {
  validate_params(params);
  if (g.n <= 0) {
    throw SimError(ErrorCode::invalid_argument, "run_multi: empty graph");
  }
  if (origins.empty()) {
    throw SimError(ErrorCode::invalid_argument, "run_multi: no origins");
  }
  for (const int origin : origins) {
    if (origin < 0 || origin >= g.n) {
      throw SimError(ErrorCode::invalid_origin,
                     "origin " + std::to_string(origin) + " not in graph of " +
                         std::to_string(g.n) + " nodes");
    }
  }
  Engine engine(g, params, rng);
  return engine.run(origins);
}

OverlayGraph build_graph(const GraphSpec& spec, RngStream& rng) {
  switch (spec.topology) {
    case Topology::random_regular: return gen_random_regular(spec.n, spec.d, rng);
    case Topology::small_world: return gen_small_world(spec.n, spec.k, spec.beta, rng);
    case Topology::scale_free: return gen_scale_free(spec.n, spec.m, rng);
    case Topology::external: return load_edge_list(spec.path);
  }
  throw SimError(ErrorCode::invalid_argument, "build_graph: unknown topology");
}

std::vector<SweepRow> sweep(const SweepSpec& spec, int jobs) {
  if (spec.trials < 1) {
    throw SimError(ErrorCode::invalid_argument, "sweep: trials must be >= 1");
  }
  const bool uses_p = spec.protocol != Protocol::fixed_fanout;
  const auto variant_count = uses_p ? spec.p_grid.size() : spec.fanout_grid.size();
  if (variant_count == 0) {
    throw SimError(ErrorCode::invalid_argument,
                   uses_p ? "sweep: empty p grid" : "sweep: empty fanout grid");
  }
  if (spec.ttl_grid.empty() || spec.cache_grid.empty()) {
    throw SimError(ErrorCode::invalid_argument, "sweep: empty ttl or cache grid");
  }

  // External graphs are loaded once and shared; generated families get a
  // fresh graph per trial.
  std::optional<OverlayGraph> shared;
  if (spec.graph.topology == Topology::external) {
    shared = load_edge_list(spec.graph.path);
  }

  struct Cell {
    GossipParams params;
    std::optional<double> p;
    std::optional<int> fanout;
  };
  std::vector<Cell> cells;
  for (std::size_t i = 0; i < variant_count; ++i) {
    for (const int ttl : spec.ttl_grid) {
      for (const std::size_t cache : spec.cache_grid) {
        Cell cell;
        cell.params.protocol = spec.protocol;
        cell.params.ttl = ttl;
        cell.params.cache_size = cache;
        if (uses_p) {
          cell.params.p = spec.p_grid[i];
          cell.p = spec.p_grid[i];
        } else {
          cell.params.fanout = spec.fanout_grid[i];
          cell.fanout = spec.fanout_grid[i];
        }
        cells.push_back(cell);
      }
    }
  }

  std::vector<SweepRow> rows(cells.size());
  auto run_cell = [&](std::size_t c) {
    const Cell& cell = cells[c];
    SweepRow& row = rows[c];
    row.protocol = spec.protocol;
    row.topology = spec.graph.topology;
    row.n = shared ? shared->n : spec.graph.n;
    row.p = cell.p;
    row.fanout = cell.fanout;
    row.ttl = cell.params.ttl;
    row.cache = cell.params.cache_size;
    row.trials = spec.trials;

    std::vector<double> coverage, hops, duplicates;
    coverage.reserve(spec.trials);
    try {
      for (int t = 0; t < spec.trials; ++t) {
        RngStream rng = derive_stream(
            spec.master_seed,
            (static_cast<std::uint64_t>(c) << 32) | static_cast<std::uint64_t>(t));
        const OverlayGraph graph = shared ? *shared : build_graph(spec.graph, rng);
        const int origin = static_cast<int>(rng.next_below(
            static_cast<std::uint64_t>(graph.n)));
        const Metrics metrics = run_dissemination(graph, origin, cell.params, rng);
        coverage.push_back(metrics.coverage);
        hops.push_back(metrics.mean_hops);
        duplicates.push_back(static_cast<double>(metrics.duplicates));
      }
    } catch (const SimError& e) {
      row.failed = true;
      row.error = e.what();
      return;
    }
    auto mean = [](const std::vector<double>& v) {
      double s = 0.0;
      for (const double x : v) s += x;
      return s / static_cast<double>(v.size());
    };
    row.mean_coverage = mean(coverage);
    row.sd_coverage = sample_sd(coverage, row.mean_coverage);
    row.mean_hops = mean(hops);
    row.sd_hops = sample_sd(hops, row.mean_hops);
    row.mean_duplicates = mean(duplicates);
  };

  jobs = std::max(1, jobs);
  if (jobs == 1 || cells.size() <= 1) {
    for (std::size_t c = 0; c < cells.size(); ++c) run_cell(c);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    const auto worker_count = std::min<std::size_t>(static_cast<std::size_t>(jobs),
                                                    cells.size());
    workers.reserve(worker_count);
    for (std::size_t w = 0; w < worker_count; ++w) {
      workers.emplace_back([&] {
        for (std::size_t c = next.fetch_add(1); c < cells.size(); c = next.fetch_add(1)) {
          run_cell(c);
        }
      });
    }
    for (auto& worker : workers) worker.join();
  }
  return rows;
}

}  // namespace decosim
