#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <istream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "indset/pairing.hpp"

namespace indset {

/// Immutable simple graph with sorted adjacency rows.
class StaticGraph {
 public:
  StaticGraph() = default;

  StaticGraph(std::size_t n, const std::vector<Edge>& edges) : adj_(n) {
    for (const Edge& e : edges) {
      if (e.u >= n || e.v >= n) throw std::out_of_range("edge endpoint >= n");
      if (e.u == e.v) throw std::invalid_argument("self-loop in edge list");
      adj_[e.u].push_back(e.v);
      adj_[e.v].push_back(e.u);
    }
    for (auto& row : adj_) {
      std::sort(row.begin(), row.end());
      if (std::adjacent_find(row.begin(), row.end()) != row.end()) {
        throw std::invalid_argument("multi-edge in edge list");
      }
    }
  }

  template <class Payload>
  static StaticGraph from_pairing(const BasicPairingState<Payload>& state) {
    return StaticGraph(state.n_vertices(), state.edges());
  }

  std::size_t size() const noexcept { return adj_.size(); }
  std::size_t n_vertices() const noexcept { return adj_.size(); }
  const std::vector<Vertex>& neighbors(Vertex v) const { return adj_[v]; }

  std::size_t edge_count() const {
    std::size_t twice = 0;
    for (const auto& row : adj_) twice += row.size();
    return twice / 2;
  }

  bool is_regular(std::size_t d) const {
    return std::all_of(adj_.begin(), adj_.end(),
                       [d](const auto& row) { return row.size() == d; });
  }

 private:
  std::vector<std::vector<Vertex>> adj_;
};

/// Parses the "u v" per line edge-list format. The vertex count is
/// `n` when given, else one more than the largest id seen.
inline StaticGraph read_edge_list(std::istream& in,
                                  std::optional<std::size_t> n = {}) {
  std::vector<Edge> edges;
  std::size_t max_id = 0;
  bool any = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    std::uint64_t u = 0, v = 0;
    if (!(fields >> u >> v)) {
      throw std::runtime_error("edge list line " + std::to_string(line_no) +
                               ": expected two vertex ids");
    }
    edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
    max_id = std::max<std::size_t>(max_id, std::max(u, v));
    any = true;
  }
  return StaticGraph(n ? *n : (any ? max_id + 1 : 0), edges);
}

struct Verdict {
  bool ok = true;
  std::string violation;

  explicit operator bool() const noexcept { return ok; }
};

/// Checks that I and V partition the vertex set and no edge lies inside I.
/// Works on anything with n_vertices() and neighbors(v), so a finished
/// pairing state can be checked without copying it.
template <class Graph = StaticGraph>
Verdict verify_solution(const Graph& g, const std::vector<Vertex>& independent,
                        const std::vector<Vertex>& cover) {
  const std::size_t n = g.n_vertices();
  std::vector<std::uint8_t> side(n, 0);  // 1 = I, 2 = V
  auto mark = [&](const std::vector<Vertex>& set, std::uint8_t tag,
                  const char* name) -> std::optional<Verdict> {
    for (Vertex v : set) {
      if (v >= n) {
        return Verdict{false, std::string(name) + " holds out-of-range vertex " +
                                  std::to_string(v)};
      }
      if (side[v] != 0) {
        return Verdict{false, "vertex " + std::to_string(v) +
                                  (side[v] == tag ? " listed twice in "
                                                  : " in both I and V: ") +
                                  name};
      }
      side[v] = tag;
    }
    return std::nullopt;
  };
  if (auto bad = mark(independent, 1, "I")) return *bad;
  if (auto bad = mark(cover, 2, "V")) return *bad;
  for (Vertex v = 0; v < n; ++v) {
    if (side[v] == 0) {
      return {false, "vertex " + std::to_string(v) + " in neither I nor V"};
    }
  }
  for (Vertex u = 0; u < n; ++u) {
    if (side[u] != 1) continue;
    for (Vertex v : g.neighbors(u)) {
      if (u < v && side[v] == 1) {
        return {false, "edge (" + std::to_string(u) + "," + std::to_string(v) +
                           ") inside I"};
      }
    }
  }
  return {};
}

namespace detail {

inline int mis_branch(std::uint64_t live, const std::vector<std::uint64_t>& rows,
                      int current, int best) {
  if (live == 0) return std::max(current, best);
  // Each remaining vertex adds at most one: prune when that cannot win.
  if (current + std::popcount(live) <= best) return best;

  // Vertices of degree <= 1 in the live subgraph are always safe to take.
  int pivot = -1;
  int pivot_deg = -1;
  for (std::uint64_t rest = live; rest != 0; rest &= rest - 1) {
    const int v = std::countr_zero(rest);
    const int deg = std::popcount(rows[v] & live);
    if (deg <= 1) {
      return mis_branch(live & ~(rows[v] | (1ULL << v)), rows, current + 1,
                        best);
    }
    if (deg > pivot_deg) {
      pivot = v;
      pivot_deg = deg;
    }
  }
  const std::uint64_t bit = 1ULL << pivot;
  best = mis_branch(live & ~(rows[pivot] | bit), rows, current + 1, best);
  best = mis_branch(live & ~bit, rows, current, best);
  return best;
}

}  // namespace detail

inline constexpr std::size_t kExactMisLimit = 40;

/// Size of a maximum independent set by branch and bound on a maximum
/// degree vertex. Bitset rows, so n is capped at kExactMisLimit.
inline int exact_mis(const StaticGraph& g) {
  if (g.size() > kExactMisLimit) {
    throw std::invalid_argument("exact_mis: n=" + std::to_string(g.size()) +
                                " exceeds the limit of " +
                                std::to_string(kExactMisLimit));
  }
  std::vector<std::uint64_t> rows(g.size(), 0);
  for (Vertex v = 0; v < g.size(); ++v) {
    for (Vertex u : g.neighbors(v)) rows[v] |= 1ULL << u;
  }
  const std::uint64_t all =
      g.size() == 64 ? ~0ULL : ((1ULL << g.size()) - 1);
  return detail::mis_branch(all, rows, 0, 0);
}

}  // namespace indset
