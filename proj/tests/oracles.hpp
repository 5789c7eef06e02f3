#pragma once

// Independent reference computations for the tests. None of these share
// code with the library beyond the StaticGraph container.

#include <bit>
#include <cstdint>
#include <vector>

#include "indset/verify.hpp"

namespace oracle {

using indset::Edge;
using indset::StaticGraph;
using indset::Vertex;

/// Exhaustive configuration-model enumeration: every perfect matching of
/// the n*d points, keeping only those that form a simple graph.
struct PairingCensus {
  std::uint64_t simple = 0;                       // accepted matchings
  std::vector<std::vector<std::uint64_t>> edge;   // edge[u][v]: accepted matchings containing uv
};

namespace detail {

inline void enumerate(std::vector<int>& mate, const std::vector<int>& urn_of,
                      std::vector<std::vector<int>>& mult, PairingCensus& out) {
  int first = -1;
  for (int p = 0; p < static_cast<int>(mate.size()); ++p) {
    if (mate[p] < 0) {
      first = p;
      break;
    }
  }
  if (first < 0) {
    ++out.simple;
    const int n = static_cast<int>(mult.size());
    for (int u = 0; u < n; ++u) {
      for (int v = 0; v < n; ++v) {
        if (mult[u][v] != 0) ++out.edge[u][v];
      }
    }
    return;
  }
  const int u = urn_of[first];
  for (int q = first + 1; q < static_cast<int>(mate.size()); ++q) {
    if (mate[q] >= 0) continue;
    const int v = urn_of[q];
    // Reject loops and multi-edges as soon as they appear.
    if (u == v || mult[u][v] != 0) continue;
    mate[first] = q;
    mate[q] = first;
    mult[u][v] = mult[v][u] = 1;
    enumerate(mate, urn_of, mult, out);
    mult[u][v] = mult[v][u] = 0;
    mate[first] = mate[q] = -1;
  }
}

}  // namespace detail

inline PairingCensus enumerate_simple_pairings(int n, int d) {
  PairingCensus out;
  out.edge.assign(n, std::vector<std::uint64_t>(n, 0));
  std::vector<int> mate(n * d, -1);
  std::vector<int> urn_of(n * d);
  for (int p = 0; p < n * d; ++p) urn_of[p] = p / d;
  std::vector<std::vector<int>> mult(n, std::vector<int>(n, 0));
  detail::enumerate(mate, urn_of, mult, out);
  return out;
}

/// Maximum independent set size by trying every subset. n <= 24.
inline int brute_force_mis(const StaticGraph& g) {
  const auto n = static_cast<int>(g.n_vertices());
  std::vector<std::uint32_t> rows(n, 0);
  for (int v = 0; v < n; ++v) {
    for (Vertex u : g.neighbors(v)) rows[v] |= 1u << u;
  }
  int best = 0;
  for (std::uint32_t s = 0; s < (1u << n); ++s) {
    bool independent = true;
    for (std::uint32_t rest = s; rest != 0 && independent; rest &= rest - 1) {
      const int v = std::countr_zero(rest);
      if (rows[v] & s) independent = false;
    }
    if (independent) best = std::max(best, std::popcount(s));
  }
  return best;
}

inline StaticGraph complete_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) edges.push_back({u, v});
  }
  return StaticGraph(n, edges);
}

inline StaticGraph k33() {
  std::vector<Edge> edges;
  for (Vertex u = 0; u < 3; ++u) {
    for (Vertex v = 3; v < 6; ++v) edges.push_back({u, v});
  }
  return StaticGraph(6, edges);
}

inline StaticGraph petersen() {
  std::vector<Edge> edges;
  for (Vertex k = 0; k < 5; ++k) {
    edges.push_back({k, static_cast<Vertex>((k + 1) % 5)});   // outer cycle
    edges.push_back({k, static_cast<Vertex>(k + 5)});         // spokes
    edges.push_back({static_cast<Vertex>(k + 5),
                     static_cast<Vertex>((k + 2) % 5 + 5)});  // inner star
  }
  return StaticGraph(10, edges);
}

}  // namespace oracle
