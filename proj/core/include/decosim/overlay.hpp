#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "decosim/rng.hpp"

namespace decosim {

enum class Topology { random_regular, small_world, scale_free, external };

const char* to_string(Topology t) noexcept;
std::optional<Topology> topology_from_string(std::string_view name) noexcept;

/// Undirected simple graph over node ids 0..n-1: no self-loops, no parallel
/// edges, symmetric sorted adjacency.
struct OverlayGraph {
  int n = 0;
  std::vector<std::vector<int>> adj;
  Topology topology = Topology::external;
  std::string params;  // generator parameters as recorded metadata

  int degree(int v) const noexcept { return static_cast<int>(adj[v].size()); }
  bool has_edge(int u, int v) const noexcept;
  std::size_t edge_count() const noexcept;
  int max_degree() const noexcept;

  bool operator==(const OverlayGraph&) const = default;
};

/// Random graph with (almost) uniform degree d, built by stub pairing with
/// retry. Requires n > d >= 1. When n*d is odd one node ends up with degree
/// d-1. Throws SimError(generation_failed) if no simple pairing is found
/// within the retry budget.
OverlayGraph gen_random_regular(int n, int d, RngStream& rng);

/// Watts-Strogatz small world: ring lattice with k nearest neighbors, each
/// edge rewired with probability beta avoiding self-loops and duplicates.
/// Requires n > k >= 2, k even, beta in [0, 1]. Edge count is preserved.
OverlayGraph gen_small_world(int n, int k, double beta, RngStream& rng);

/// Barabasi-Albert scale-free graph: seed clique of m+1 nodes, then each
/// new node attaches m edges to distinct existing nodes with probability
/// proportional to degree. Requires n > m >= 1. Connected by construction.
OverlayGraph gen_scale_free(int n, int m, RngStream& rng);

/// Edge-list text format: header line "n=<n>", then one "u v" line per
/// edge, 0-based ids.
void write_edge_list(const OverlayGraph& g, std::ostream& out);
OverlayGraph read_edge_list(std::istream& in);
OverlayGraph load_edge_list(const std::string& path);

/// BFS hop distances from origin; -1 marks unreachable nodes.
std::vector<int> bfs_distances(const OverlayGraph& g, int origin);
bool is_connected(const OverlayGraph& g);
/// Longest shortest path; requires a connected nonempty graph.
int diameter(const OverlayGraph& g);

}  // namespace decosim
