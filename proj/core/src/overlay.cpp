#include "decosim/overlay.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <string>

#include "decosim/error.hpp"

namespace decosim {
namespace {

[[noreturn]] void bad_args(const std::string& message) {
  throw SimError(ErrorCode::invalid_argument, message);
}

// Adjacency-set builder; finalize() produces the sorted-vector form.
struct Builder {
  explicit Builder(int n) : sets(static_cast<std::size_t>(n)) {}

  bool has(int u, int v) const { return sets[u].count(v) > 0; }

  void add(int u, int v) {
    sets[u].insert(v);
    sets[v].insert(u);
  }

  void remove(int u, int v) {
    sets[u].erase(v);
    sets[v].erase(u);
  }

  OverlayGraph finalize(int n, Topology topology, std::string params) const {
    OverlayGraph g;
    g.n = n;
    g.adj.reserve(sets.size());
    for (const auto& s : sets) g.adj.emplace_back(s.begin(), s.end());
    g.topology = topology;
    g.params = std::move(params);
    return g;
  }

  std::vector<std::set<int>> sets;
};

// Stub pairing for a given degree sequence. Conflicting stubs (self-loop or
// duplicate) are re-shuffled and paired again; an attempt restarts from
// scratch when a round makes no progress. A plain whole-pairing rejection
// would almost never succeed beyond d ~ 5.
Builder pair_stubs(int n, const std::vector<int>& degrees, RngStream& rng) {
  constexpr int kMaxAttempts = 200;
  std::vector<int> all_stubs;
  for (int v = 0; v < n; ++v) {
    all_stubs.insert(all_stubs.end(), static_cast<std::size_t>(degrees[v]), v);
  }
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    Builder b(n);
    std::vector<int> stubs = all_stubs;
    bool stuck = false;
    while (!stubs.empty() && !stuck) {
      rng.shuffle(stubs);
      std::vector<int> leftovers;
      for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
        const int u = stubs[i], v = stubs[i + 1];
        if (u == v || b.has(u, v)) {
          leftovers.push_back(u);
          leftovers.push_back(v);
        } else {
          b.add(u, v);
        }
      }
      stuck = leftovers.size() == stubs.size();
      stubs = std::move(leftovers);
    }
    if (stubs.empty()) return b;
  }
  throw SimError(ErrorCode::generation_failed,
                 "gen_random_regular: no simple pairing found within the retry budget");
}

std::string format_double(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

const char* to_string(Topology t) noexcept {
  switch (t) {
    case Topology::random_regular: return "random-regular";
    case Topology::small_world: return "small-world";
    case Topology::scale_free: return "scale-free";
    case Topology::external: return "edge-list";
  }
  return "unknown";
}

std::optional<Topology> topology_from_string(std::string_view name) noexcept {
  if (name == "random-regular") return Topology::random_regular;
  if (name == "small-world") return Topology::small_world;
  if (name == "scale-free") return Topology::scale_free;
  if (name == "edge-list") return Topology::external;
  return std::nullopt;
}

bool OverlayGraph::has_edge(int u, int v) const noexcept {
  return std::binary_search(adj[u].begin(), adj[u].end(), v);
}

std::size_t OverlayGraph::edge_count() const noexcept {
  std::size_t stubs = 0;
  for (const auto& nbrs : adj) stubs += nbrs.size();
  return stubs / 2;
}

int OverlayGraph::max_degree() const noexcept {
  int best = 0;
  for (const auto& nbrs : adj) best = std::max(best, static_cast<int>(nbrs.size()));
  return best;
}

OverlayGraph gen_random_regular(int n, int d, RngStream& rng) {
  if (d < 1 || n <= d) {
    bad_args("gen_random_regular: requires n > d >= 1");
  }
  const std::string params = "d=" + std::to_string(d);
  const bool odd = (static_cast<long long>(n) * d) % 2 != 0;

  // Dense degrees make a direct pairing hopeless; pair the complement
  // degree sequence instead and invert.
  const bool use_complement = d > (n - 1) / 2;
  const int dd = use_complement ? n - 1 - d : d;

  std::vector<int> degrees(static_cast<std::size_t>(n), dd);
  if (odd) {
    // One node ends at d-1: drop a stub directly, or add one in the complement.
    degrees[n - 1] += use_complement ? 1 : -1;
  }

  if (use_complement && dd == 0 && !odd) {
    // Complete graph; nothing to pair.
    Builder b(n);
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) b.add(u, v);
    }
    return b.finalize(n, Topology::random_regular, params);
  }

  Builder paired = pair_stubs(n, degrees, rng);
  if (!use_complement) {
    return paired.finalize(n, Topology::random_regular, params);
  }
  Builder inverted(n);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (!paired.has(u, v)) inverted.add(u, v);
    }
  }
  return inverted.finalize(n, Topology::random_regular, params);
}

OverlayGraph gen_small_world(int n, int k, double beta, RngStream& rng) {
  if (k < 2 || k % 2 != 0 || n <= k) {
    bad_args("gen_small_world: requires n > k >= 2 with k even");
  }
  if (beta < 0 || beta > 1) {
    bad_args("gen_small_world: beta must be in [0, 1]");
  }

  Builder b(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 1; j <= k / 2; ++j) b.add(i, (i + j) % n);
  }

  // Rewire each lattice edge (i, i+j) with probability beta; the edge count
  // is preserved. If no admissible endpoint exists the edge is kept.
  for (int i = 0; i < n; ++i) {
    for (int j = 1; j <= k / 2; ++j) {
      const int v = (i + j) % n;
      if (!b.has(i, v) || !rng.bernoulli(beta)) continue;
      const int budget = 2 * n;
      for (int attempt = 0; attempt < budget; ++attempt) {
        const int w = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
        if (w != i && !b.has(i, w)) {
          b.remove(i, v);
          b.add(i, w);
          break;
        }
      }
    }
  }
  return b.finalize(n, Topology::small_world,
                    "k=" + std::to_string(k) + " beta=" + format_double(beta));
}

OverlayGraph gen_scale_free(int n, int m, RngStream& rng) {
  if (m < 1 || n <= m) {
    bad_args("gen_scale_free: requires n > m >= 1");
  }

  Builder b(n);
  std::vector<int> endpoints;  // every edge endpoint; sampling it is degree-proportional
  for (int u = 0; u <= m; ++u) {
    for (int v = u + 1; v <= m; ++v) {
      b.add(u, v);
      endpoints.push_back(u);
      endpoints.push_back(v);
    }
  }

  std::vector<int> chosen;
  for (int v = m + 1; v < n; ++v) {
    chosen.clear();
    while (static_cast<int>(chosen.size()) < m) {
      const int t = endpoints[rng.next_below(endpoints.size())];
      if (std::find(chosen.begin(), chosen.end(), t) == chosen.end()) {
        chosen.push_back(t);
      }
    }
    std::sort(chosen.begin(), chosen.end());
    for (const int t : chosen) {
      b.add(v, t);
      endpoints.push_back(v);
      endpoints.push_back(t);
    }
  }
  return b.finalize(n, Topology::scale_free, "m=" + std::to_string(m));
}

void write_edge_list(const OverlayGraph& g, std::ostream& out) {
  out << "n=" << g.n << "\n";
  for (int u = 0; u < g.n; ++u) {
    for (const int v : g.adj[u]) {
      if (u < v) out << u << " " << v << "\n";
    }
  }
}

OverlayGraph read_edge_list(std::istream& in) {
  std::string header;
  if (!std::getline(in, header) || header.rfind("n=", 0) != 0) {
    bad_args("edge list: expected header line 'n=<n>'");
  }
  int n = 0;
  try {
    std::size_t used = 0;
    n = std::stoi(header.substr(2), &used);
    if (used != header.size() - 2) throw std::invalid_argument(header);
  } catch (const std::exception&) {
    bad_args("edge list: malformed node count in '" + header + "'");
  }
  if (n < 0) bad_args("edge list: node count must be >= 0");

  Builder b(n);
  std::string line;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream fields(line);
    int u = 0, v = 0;
    std::string extra;
    if (!(fields >> u >> v) || (fields >> extra)) {
      bad_args("edge list line " + std::to_string(line_no) + ": expected 'u v'");
    }
    if (u < 0 || u >= n || v < 0 || v >= n) {
      bad_args("edge list line " + std::to_string(line_no) + ": node id out of range");
    }
    if (u == v) {
      bad_args("edge list line " + std::to_string(line_no) + ": self-loop");
    }
    if (b.has(u, v)) {
      bad_args("edge list line " + std::to_string(line_no) + ": duplicate edge");
    }
    b.add(u, v);
  }
  return b.finalize(n, Topology::external, "");
}

OverlayGraph load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw SimError(ErrorCode::io_error, "cannot open edge list file '" + path + "'");
  }
  return read_edge_list(in);
}

std::vector<int> bfs_distances(const OverlayGraph& g, int origin) {
  if (origin < 0 || origin >= g.n) {
    bad_args("bfs_distances: origin out of range");
  }
  std::vector<int> dist(static_cast<std::size_t>(g.n), -1);
  std::deque<int> frontier{origin};
  dist[origin] = 0;
  while (!frontier.empty()) {
    const int u = frontier.front();
    frontier.pop_front();
    for (const int v : g.adj[u]) {
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        frontier.push_back(v);
      }
    }
  }
  return dist;
}

bool is_connected(const OverlayGraph& g) {
  if (g.n == 0) return true;
  const auto dist = bfs_distances(g, 0);
  return std::none_of(dist.begin(), dist.end(), [](int d) { return d < 0; });
}

int diameter(const OverlayGraph& g) {
  if (g.n == 0) bad_args("diameter: empty graph");
  int best = 0;
  for (int v = 0; v < g.n; ++v) {
    for (const int d : bfs_distances(g, v)) {
      if (d < 0) bad_args("diameter: graph is disconnected");
      best = std::max(best, d);
    }
  }
  return best;
}

}  // namespace decosim
