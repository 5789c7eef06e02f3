#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "indset/huge_alloc.hpp"
#include "indset/rng.hpp"

namespace indset {

using Vertex = std::uint32_t;
inline constexpr Vertex kNoVertex = std::numeric_limits<Vertex>::max();

struct GraphConfig {
  std::uint64_t n_vertices = 0;
  unsigned degree = 0;
  std::uint64_t seed = 0;

  std::uint64_t points() const { return n_vertices * degree; }

  // Throws std::invalid_argument when no simple d-regular graph on N
  // vertices exists or the instance does not fit 32-bit point ids.
  void validate() const {
    if (degree < 3) {
      throw std::invalid_argument("degree must be >= 3, got " +
                                  std::to_string(degree));
    }
    if (degree > std::numeric_limits<std::uint16_t>::max()) {
      throw std::invalid_argument("degree too large");
    }
    if (n_vertices <= degree) {
      throw std::invalid_argument(
          "need N > d for a simple d-regular graph (N=" +
          std::to_string(n_vertices) + ", d=" + std::to_string(degree) + ")");
    }
    if (points() % 2 != 0) {
      throw std::invalid_argument("d*N must be even (N=" +
                                  std::to_string(n_vertices) + ", d=" +
                                  std::to_string(degree) + ")");
    }
    if (points() >= std::numeric_limits<std::uint32_t>::max()) {
      throw std::invalid_argument("d*N exceeds the 32-bit point-id range");
    }
  }
};

struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Outcome of completing one vertex. `new_neighbors` views the tail of
/// the vertex's adjacency row and stays valid until that row changes.
struct GaOutcome {
  std::span<const Vertex> new_neighbors;
  bool exhausted = false;
};

// Default per-vertex payload: nothing.
struct NoPayload {};

/// Configuration-model state: d points per urn, paired on demand.
///
/// The pool holds one entry per point. Points of one urn are
/// interchangeable, so instead of tracking entry positions we keep a
/// per-vertex count of entries that were retired without being removed
/// (`stale`). A drawn entry of v is a live point with probability
/// antideg(v) / (antideg(v) + stale(v)); otherwise it is dropped. This
/// keeps draws uniform over live points with a single pool array.
///
/// `Payload` is caller state stored next to each urn's counters, so code
/// that reacts to a new link touches a single record per partner.
template <class Payload = NoPayload>
class BasicPairingState {
  struct Urn {
    std::uint16_t deg = 0;
    std::uint16_t antideg = 0;
    std::uint16_t stale = 0;
    [[no_unique_address]] Payload payload{};
  };

 public:
  explicit BasicPairingState(const GraphConfig& config)
      : config_(config),
        rng_(config.seed),
        coin_(SplitMix64::mix(config.seed ^ 0x5DEECE66DULL)) {
    config_.validate();
    const auto n = static_cast<std::size_t>(config_.n_vertices);
    const unsigned d = config_.degree;
    adj_.assign(n * d, kNoVertex);
    urns_.assign(n, Urn{0, static_cast<std::uint16_t>(d), 0, Payload{}});
    pool_.resize(n * d);
    for (std::size_t p = 0; p < pool_.size(); ++p) {
      pool_[p] = static_cast<Vertex>(p / d);
    }
    live_points_ = pool_.size();
  }

  const GraphConfig& config() const noexcept { return config_; }
  std::size_t n_vertices() const noexcept { return urns_.size(); }
  unsigned degree() const noexcept { return config_.degree; }

  unsigned deg(Vertex v) const noexcept { return urns_[v].deg; }
  unsigned antideg(Vertex v) const noexcept { return urns_[v].antideg; }

  Payload& payload(Vertex v) noexcept { return urns_[v].payload; }
  const Payload& payload(Vertex v) const noexcept { return urns_[v].payload; }

  std::span<const Vertex> neighbors(Vertex v) const noexcept {
    return {adj_.data() + static_cast<std::size_t>(v) * config_.degree,
            urns_[v].deg};
  }

  bool adjacent(Vertex u, Vertex v) const noexcept {
    const auto row = neighbors(u);
    return std::find(row.begin(), row.end(), v) != row.end();
  }

  // Cache hint for a vertex about to be completed or inspected.
  void prefetch(Vertex v) const noexcept {
    __builtin_prefetch(urns_.data() + v);
    __builtin_prefetch(adj_.data() + static_cast<std::size_t>(v) *
                                         config_.degree);
  }

  // Number of unpaired points; equals the sum of anti-degrees.
  std::size_t pool_size() const noexcept { return live_points_; }
  std::uint64_t links() const noexcept { return links_; }
  SplitMix64& rng() noexcept { return rng_; }

  /// Completes every free connection of `i` with partners drawn uniformly
  /// among unpaired points whose urn is neither `i` nor a neighbour of `i`.
  /// Inadmissible draws are redrawn. If no admissible point remains the
  /// call stops early, records `i` for terminal_loop_fixup and reports
  /// `exhausted`.
  GaOutcome subroutine_ga(Vertex i) {
    Urn& self = urns_[i];
    const std::size_t first_new = self.deg;
    const unsigned wanted = self.antideg;
    if (wanted == 0) return {neighbors(i).subspan(first_new), false};

    // Retire i's own points up front; they can never be partners of i.
    self.stale = static_cast<std::uint16_t>(self.stale + wanted);
    self.antideg = 0;
    live_points_ -= wanted;

    for (unsigned made = 0; made < wanted; ++made) {
      const std::optional<std::size_t> slot = draw_partner(i);
      if (!slot) {
        stuck_.push_back(i);
        // The unpaired points of i stay retired: they are discarded.
        return {neighbors(i).subspan(first_new), true};
      }
      const Vertex j = pool_[*slot];
      remove_entry(*slot);
      --urns_[j].antideg;
      --live_points_;
      link(i, j);
    }
    return {neighbors(i).subspan(first_new), false};
  }

  /// Vertices whose completion hit exhaustion since the last call. Their
  /// unpaired points are already discarded; callers must keep them out of
  /// the independent set.
  std::vector<Vertex> terminal_loop_fixup() {
    std::vector<Vertex> out;
    out.swap(stuck_);
    return out;
  }

  /// Pairs one free point of u with one of v. Used to replay a fixed
  /// construction; u and v must both be free, distinct and non-adjacent.
  void connect(Vertex u, Vertex v) {
    if (u == v || urns_[u].antideg == 0 || urns_[v].antideg == 0 ||
        adjacent(u, v)) {
      throw std::logic_error("connect: inadmissible pair");
    }
    for (Vertex w : {u, v}) {
      --urns_[w].antideg;
      ++urns_[w].stale;
      --live_points_;
    }
    link(u, v);
  }

  bool complete() const noexcept { return live_points_ == 0; }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(links_);
    for (Vertex u = 0; u < n_vertices(); ++u) {
      const std::size_t row_start = out.size();
      for (Vertex v : neighbors(u)) {
        if (u < v) out.push_back({u, v});
      }
      // Sorted by (u, v), so exports do not depend on pairing order.
      std::sort(out.begin() + static_cast<std::ptrdiff_t>(row_start), out.end(),
                [](const Edge& a, const Edge& b) { return a.v < b.v; });
    }
    return out;
  }

  // "u v" per line, u < v, 0-based, LF terminated.
  void write_edge_list(std::ostream& os) const {
    for (const Edge& e : edges()) os << e.u << ' ' << e.v << '\n';
  }

 private:
  static constexpr unsigned kMaxRejections = 64;

  void link(Vertex u, Vertex v) {
    const std::size_t d = config_.degree;
    adj_[u * d + urns_[u].deg++] = v;
    adj_[v * d + urns_[v].deg++] = u;
    ++links_;
  }

  void remove_entry(std::size_t slot) {
    pool_[slot] = pool_.back();
    pool_.pop_back();
  }

  // Slot draws are the only consumers of rng_ on the hot path, so the
  // slots of the next draws are known in advance up to small pool size
  // drift. Warm them in stages: the pool line three draws ahead, then the
  // urn and adjacency row of the entry two draws ahead.
  void prefetch_ahead(std::size_t size) const noexcept {
    const auto slot_of = [size](std::uint64_t r) {
      return static_cast<std::size_t>(
          (static_cast<__uint128_t>(r) * size) >> 64);
    };
    __builtin_prefetch(pool_.data() + slot_of(rng_.peek(3)));
    const Vertex v = pool_[slot_of(rng_.peek(2))];
    __builtin_prefetch(urns_.data() + v);
    __builtin_prefetch(adj_.data() + static_cast<std::size_t>(v) *
                                         config_.degree);
  }

  // Draws a uniformly random pool slot holding a live point. Drops stale
  // entries it lands on. Returns nullopt only when the pool is empty.
  std::optional<std::size_t> draw_live() {
    while (!pool_.empty()) {
      prefetch_ahead(pool_.size());
      const auto slot = static_cast<std::size_t>(rng_.below(pool_.size()));
      Urn& urn = urns_[pool_[slot]];
      if (urn.stale != 0) {
        const unsigned copies = urn.antideg + urn.stale;
        if (coin_.below(copies) >= urn.antideg) {
          --urn.stale;
          remove_entry(slot);
          continue;
        }
      }
      return slot;
    }
    return std::nullopt;
  }

  std::optional<std::size_t> draw_partner(Vertex i) {
    for (unsigned tries = 0; tries < kMaxRejections; ++tries) {
      const auto slot = draw_live();
      if (!slot) return std::nullopt;
      if (!adjacent(i, pool_[*slot])) return slot;
    }
    return scan_partner(i);
  }

  // Exact fallback once rejection keeps failing: purge stale entries and
  // pick uniformly among the admissible ones.
  std::optional<std::size_t> scan_partner(Vertex i) {
    std::size_t keep = 0;
    for (std::size_t s = 0; s < pool_.size(); ++s) {
      const Vertex v = pool_[s];
      if (urns_[v].stale != 0) {
        --urns_[v].stale;
        continue;
      }
      pool_[keep++] = v;
    }
    pool_.resize(keep);
    std::vector<std::size_t> admissible;
    for (std::size_t s = 0; s < pool_.size(); ++s) {
      if (pool_[s] != i && !adjacent(i, pool_[s])) admissible.push_back(s);
    }
    if (admissible.empty()) return std::nullopt;
    return admissible[rng_.below(admissible.size())];
  }

  GraphConfig config_;
  SplitMix64 rng_;
  SplitMix64 coin_;  // stale-entry tests, kept off the slot stream
  BigVector<Vertex> adj_;
  BigVector<Urn> urns_;
  BigVector<Vertex> pool_;
  std::size_t live_points_ = 0;
  std::uint64_t links_ = 0;
  std::vector<Vertex> stuck_;
};

using PairingState = BasicPairingState<>;

inline PairingState new_pairing(const GraphConfig& config) {
  return PairingState(config);
}

/// Generates a whole graph by completing vertices in a uniformly random
/// order. Returns false if any completion hit exhaustion.
template <class Payload>
bool generate_graph(BasicPairingState<Payload>& state) {
  std::vector<Vertex> order(state.n_vertices());
  for (Vertex v = 0; v < order.size(); ++v) order[v] = v;
  auto& rng = state.rng();
  for (std::size_t k = order.size(); k > 1; --k) {
    std::swap(order[k - 1], order[rng.below(k)]);
  }
  bool clean = true;
  for (Vertex v : order) {
    if (state.subroutine_ga(v).exhausted) clean = false;
  }
  state.terminal_loop_fixup();
  return clean;
}

}  // namespace indset
