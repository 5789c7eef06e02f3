#pragma once

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "indset/pairing.hpp"
#include "indset/site_queue.hpp"
#include "indset/small_vector.hpp"

// Precondition guard for the labeling operations. A violated contract is a
// defect in the caller, so it aborts instead of repairing state.
#define INDSET_EXPECT(cond, what)                                          \
  do {                                                                     \
    if (!(cond)) {                                                         \
      std::fprintf(stderr, "indset: contract violated: %s (%s:%d)\n",      \
                   what, __FILE__, __LINE__);                              \
      std::abort();                                                        \
    }                                                                      \
  } while (0)

namespace indset {

enum class Label : std::uint8_t { kUnlabeled, kP, kC, kI, kV };

// The three vertex sets of the labeling process: undecided (N, which
// includes P and C sites), independent (I) and cover (V).
enum class VertexSet : std::uint8_t { kUndecided, kIndependent, kCover };

inline const char* to_string(Label l) {
  switch (l) {
    case Label::kUnlabeled: return "-";
    case Label::kP: return "P";
    case Label::kC: return "C";
    case Label::kI: return "I";
    case Label::kV: return "V";
  }
  return "?";
}

// How virtual sites are consumed once no P site is pending.
enum class RulePolicy {
  // One rule application per outer iteration, highest priority first
  // (anti-degree 0, then 1, then 2, else the maximum); P candidates are
  // harvested again before the next one.
  kPrioritized,
  // Literal sweep: drain every anti-degree-0 site, then every 1, then
  // every 2, then delete one maximum site, then harvest.
  kSweep,
};

struct EngineOptions {
  RulePolicy policy = RulePolicy::kPrioritized;
  // Recheck site bookkeeping and the label partition after every outer
  // iteration. O(N) per iteration: tests only.
  bool debug_checks = false;
};

struct RunResult {
  unsigned degree = 0;
  std::uint64_t n_vertices = 0;
  std::uint64_t seed = 0;
  std::uint64_t independent_size = 0;
  double alpha = 0.0;
  double wall_ms = 0.0;
};

struct RunStats {
  std::uint64_t p_created = 0;      // vertices labeled P by the harvest
  std::uint64_t swaps = 0;
  std::uint64_t sites_created = 0;
  std::uint64_t merges = 0;
  std::uint64_t build_dels = 0;
  std::uint64_t restarts = 0;       // fresh seeds after the frontier died out
  std::uint64_t excluded = 0;       // vertices forced to V by exhaustion
  std::uint64_t pp_evictions = 0;   // P partners pulled out of a site to V
  std::uint64_t open_p_in_del = 0;  // P members still open at a max-delete
};

struct NullObserver {
  void on_progress(std::uint64_t /*links*/, std::uint64_t /*p_labeled*/) {}
};

using SiteId = std::uint32_t;
inline constexpr SiteId kNoSite = LazyFifoBuckets::kNil;

// Per-vertex engine state. Stored inside the pairing urn and packed so
// urn plus record fill 16 bytes.
struct [[gnu::packed]] VertexRecord {
  SiteId site = kNoSite;
  std::uint32_t pos = 0;  // index in the site's member list
  Label label = Label::kUnlabeled;
};

static_assert(sizeof(VertexRecord) == 9);

// One cache line per site: small member lists live inline.
struct alignas(64) VirtualSite {
  SmallVector<Vertex, 8> members;
  std::uint64_t antideg_sum = 0;
  bool alive = false;
};

/// Deferred-decision prioritized labeling interleaved with pairing-model
/// graph generation. One instance performs one run.
template <class Observer = NullObserver>
class DeferredEngine {
 public:
  explicit DeferredEngine(const GraphConfig& config, EngineOptions options = {},
                          Observer observer = {})
      : born_(std::chrono::steady_clock::now()),
        pairing_(config),
        options_(options),
        observer_(std::move(observer)),
        unlabeled_(config.degree) {
    for (Vertex v = 0; v < pairing_.n_vertices(); ++v) {
      unlabeled_.push(v, config.degree);
    }
  }

  // --- inspection -------------------------------------------------------

  const BasicPairingState<VertexRecord>& pairing() const noexcept {
    return pairing_;
  }
  Observer& observer() noexcept { return observer_; }
  const RunStats& stats() const noexcept { return stats_; }
  Label label(Vertex v) const noexcept { return rec(v).label; }
  SiteId site_of(Vertex v) const noexcept { return rec(v).site; }
  const VirtualSite& site(SiteId s) const { return sites_[s]; }
  bool site_in_queue(SiteId s) const noexcept {
    return s < sites_.size() && sites_[s].alive;
  }
  std::size_t active_sites() const noexcept { return active_sites_; }
  const std::vector<Vertex>& independent_set() const noexcept { return set_i_; }
  const std::vector<Vertex>& cover_set() const noexcept { return set_v_; }
  std::uint64_t p_labeled() const noexcept { return p_labeled_; }

  std::size_t decided() const noexcept { return set_i_.size() + set_v_.size(); }
  bool finished() const noexcept { return decided() == pairing_.n_vertices(); }

  bool in_set(Vertex v, VertexSet s) const noexcept {
    switch (s) {
      case VertexSet::kIndependent: return rec(v).label == Label::kI;
      case VertexSet::kCover: return rec(v).label == Label::kV;
      case VertexSet::kUndecided:
        return rec(v).label != Label::kI && rec(v).label != Label::kV;
    }
    return false;
  }

  // --- primitive operations --------------------------------------------

  /// Moves v from one vertex set to another; entering I or V sets the
  /// terminal label and detaches v from every pending structure.
  void op_move(Vertex v, VertexSet from, VertexSet to) {
    INDSET_EXPECT(in_set(v, from), "op_move: vertex not in source set");
    INDSET_EXPECT(!in_set(v, to), "op_move: vertex already in target set");
    INDSET_EXPECT(to != VertexSet::kUndecided,
                  "op_move: decided vertices never return to N");
    detach(v);
    if (to == VertexSet::kIndependent) {
      set_label(v, Label::kI);
      set_i_.push_back(v);
    } else {
      set_label(v, Label::kV);
      set_v_.push_back(v);
    }
  }

  /// Removes site s from the active set and decides its members: P to I,
  /// C to V.
  void op_del(SiteId s) {
    INDSET_EXPECT(s < sites_.size() && sites_[s].alive,
                  "op_del: unknown virtual site");
    std::vector<Vertex>& members = del_buf_;
    members.assign(sites_[s].members.begin(), sites_[s].members.end());
    sites_[s].members.clear();
    release_site(s);
    for (Vertex m : members) {
      INDSET_EXPECT(rec(m).label == Label::kP || rec(m).label == Label::kC,
                    "op_del: member is neither P nor C");
      rec(m).site = kNoSite;
    }
    for (Vertex m : members) {
      op_move(m, VertexSet::kUndecided,
              rec(m).label == Label::kP ? VertexSet::kIndependent
                                     : VertexSet::kCover);
    }
  }

  /// Flips P and C on every member of s.
  void swap_op(SiteId s) {
    INDSET_EXPECT(s < sites_.size() && sites_[s].alive,
                  "swap_op: unknown virtual site");
    for (Vertex m : sites_[s].members) {
      INDSET_EXPECT(rec(m).label == Label::kP || rec(m).label == Label::kC,
                    "swap_op: member is neither P nor C");
      set_label(m, rec(m).label == Label::kP ? Label::kC : Label::kP);
    }
    ++stats_.swaps;
  }

  /// Folds a just-completed P site and its new partners into one virtual
  /// site: fresh when none of them belonged to one, an expansion of the
  /// existing site otherwise, and the union when several sites are touched
  /// (the largest keeps its id). Partners already decided are skipped.
  SiteId create_or_update_virtual(Vertex p, std::span<const Vertex> partners) {
    INDSET_EXPECT(rec(p).label == Label::kP, "create_or_update: site is not P");
    touched_.clear();
    fresh_.clear();
    if (rec(p).site != kNoSite) touched_.push_back(rec(p).site);
    for (Vertex j : partners) {
      if (rec(j).label == Label::kI || rec(j).label == Label::kV) continue;
      if (rec(j).site != kNoSite) {
        INDSET_EXPECT(rec(j).label == Label::kC,
                      "create_or_update: partner inside a site is not C");
        if (std::find(touched_.begin(), touched_.end(), rec(j).site) ==
            touched_.end()) {
          touched_.push_back(rec(j).site);
        }
      } else {
        set_label(j, Label::kC);
        fresh_.push_back(j);
      }
    }

    SiteId base = kNoSite;
    for (SiteId t : touched_) {
      if (base == kNoSite ||
          sites_[t].members.size() > sites_[base].members.size()) {
        base = t;
      }
    }
    if (base == kNoSite) {
      base = allocate_site();
      ++stats_.sites_created;
    }
    VirtualSite& target = sites_[base];
    for (SiteId t : touched_) {
      if (t == base) continue;
      VirtualSite& other = sites_[t];
      for (Vertex m : other.members) add_member(base, m);
      target.antideg_sum += other.antideg_sum;
      other.members.clear();
      release_site(t);
      ++stats_.merges;
    }
    if (rec(p).site != base) {
      add_member(base, p);
      target.antideg_sum += pairing_.antideg(p);
    }
    for (Vertex j : fresh_) {
      add_member(base, j);
      target.antideg_sum += pairing_.antideg(j);
    }
    requeue(base);
    return base;
  }

  /// Completes i, puts it in I, then completes each undecided neighbour in
  /// adjacency order and puts it in V.
  void op_build_del(Vertex i) {
    INDSET_EXPECT(rec(i).label == Label::kUnlabeled,
                  "op_build_del: vertex already labeled");
    ++stats_.build_dels;
    complete(i);
    if (rec(i).label != Label::kV) {
      op_move(i, VertexSet::kUndecided, VertexSet::kIndependent);
    }
    const auto row = pairing_.neighbors(i);
    for (std::size_t k = 0; k < row.size(); ++k) cover_completed(row[k]);
  }

  /// Labels an unlabeled vertex P and queues it for the next drain.
  void mark_p(Vertex v) {
    INDSET_EXPECT(rec(v).label == Label::kUnlabeled, "mark_p: vertex labeled");
    set_label(v, Label::kP);
    set_p_[std::min(pairing_.antideg(v), 2u)].push_back(v);
    ++stats_.p_created;
  }

  /// Pairs one free point of u with one of v, outside any random draw.
  /// Used to replay fixed constructions.
  void link(Vertex u, Vertex v) {
    pairing_.connect(u, v);
    note_link_to(u);
    note_link_to(v);
  }

  /// Subroutine GA on v plus the bookkeeping every partner needs. A vertex
  /// that hits exhaustion is labeled V on the spot.
  GaOutcome complete(Vertex v) {
    if (rec(v).site != kNoSite && pairing_.antideg(v) != 0) {
      // Every open point of v is consumed or discarded below.
      sites_[rec(v).site].antideg_sum -= pairing_.antideg(v);
      requeue(rec(v).site);
    }
    GaOutcome out = pairing_.subroutine_ga(v);
    for (Vertex j : out.new_neighbors) {
      if (rec(j).site != kNoSite) __builtin_prefetch(&sites_[rec(j).site]);
    }
    for (Vertex j : out.new_neighbors) note_link_to(j);
    if (out.exhausted) {
      for (Vertex x : pairing_.terminal_loop_fixup()) exclude(x);
    }
    observer_.on_progress(pairing_.links(), p_labeled_);
    return out;
  }

  // --- the algorithms ---------------------------------------------------

  /// Runs to completion. wall_ms counts from construction, so it includes
  /// building the point pool.
  RunResult run() {
    const bool cubic = pairing_.degree() == 3;
    if (cubic) {
      seed_cover();
    } else {
      op_build_del(pick_min_unlabeled());
    }
    while (!finished()) {
      harvest();
      if (p_pending()) {
        drain();
      } else if (active_sites_ != 0) {
        apply_rules();
      } else {
        ++stats_.restarts;
        if (cubic) {
          seed_cover();
        } else {
          op_build_del(pick_min_unlabeled());
        }
      }
      if (options_.debug_checks) check_consistency();
    }
    const auto t1 = std::chrono::steady_clock::now();

    RunResult r;
    r.degree = pairing_.degree();
    r.n_vertices = pairing_.n_vertices();
    r.seed = pairing_.config().seed;
    r.independent_size = set_i_.size();
    r.alpha = static_cast<double>(set_i_.size()) /
              static_cast<double>(pairing_.n_vertices());
    r.wall_ms = std::chrono::duration<double, std::milli>(t1 - born_).count();
    return r;
  }

  /// Labels every unlabeled vertex with anti-degree <= 2 as P, in the
  /// order they became eligible.
  void harvest() {
    constexpr std::size_t kAhead = 8;
    for (std::size_t k = 0; k < candidates_.size(); ++k) {
      if (k + kAhead < candidates_.size()) {
        pairing_.prefetch(candidates_[k + kAhead]);
      }
      const Vertex v = candidates_[k];
      if (rec(v).label == Label::kUnlabeled && pairing_.antideg(v) <= 2) {
        mark_p(v);
      }
    }
    candidates_.clear();
  }

  bool p_pending() const noexcept {
    return !set_p_[0].empty() || !set_p_[1].empty() || !set_p_[2].empty();
  }

  /// Processes queued P sites in ascending anti-degree, FIFO within a
  /// bucket. Anti-degree 0 goes straight to I; otherwise the site is
  /// completed and grouped with its partners into a virtual site.
  void drain() {
    for (auto& bucket : set_p_) {
      for (std::size_t k = 0; k < bucket.size(); ++k) {
        if (k + 2 < bucket.size()) pairing_.prefetch(bucket[k + 2]);
        const Vertex l = bucket[k];
        if (rec(l).label != Label::kP || rec(l).site != kNoSite) continue;
        if (pairing_.antideg(l) == 0) {
          op_move(l, VertexSet::kUndecided, VertexSet::kIndependent);
          continue;
        }
        const GaOutcome out = complete(l);
        if (rec(l).label == Label::kV) continue;
        absorb_completion(l, out.new_neighbors);
      }
      bucket.clear();
    }
  }

  void apply_rules() {
    if (options_.policy == RulePolicy::kPrioritized) {
      SiteId s;
      if ((s = first_site(0)) != kNoSite) {
        rule_zero(s);
      } else if ((s = first_site(1)) != kNoSite) {
        rule_one(s);
      } else if ((s = first_site(2)) != kNoSite) {
        rule_two(s);
      } else {
        rule_max(set_a_.first_with_max_key(site_valid()));
      }
      return;
    }
    SiteId s;
    while ((s = first_site(0)) != kNoSite) rule_zero(s);
    while ((s = first_site(1)) != kNoSite) rule_one(s);
    while ((s = first_site(2)) != kNoSite) rule_two(s);
    if (active_sites_ != 0) rule_max(set_a_.first_with_max_key(site_valid()));
  }

  /// Anti-degree 0: swap, then delete.
  void rule_zero(SiteId s) {
    swap_op(s);
    op_del(s);
  }

  /// Anti-degree 1: swap, complete the single open member, cover the
  /// partner it just received, then delete.
  void rule_one(SiteId s) {
    swap_op(s);
    Vertex holder = kNoVertex;
    for (Vertex m : sites_[s].members) {
      if (pairing_.antideg(m) != 0) {
        holder = m;
        break;
      }
    }
    if (holder != kNoVertex) {
      const GaOutcome out = complete(holder);
      if (!out.new_neighbors.empty() && rec(holder).label != Label::kV) {
        cover_completed(out.new_neighbors.back());
      }
    }
    if (sites_[s].alive) op_del(s);
  }

  /// Anti-degree 2: swap, complete the open P members, relabel their new
  /// partners C and fold them into the site.
  void rule_two(SiteId s) {
    swap_op(s);
    scratch_.clear();
    for (Vertex m : sites_[s].members) {
      if (rec(m).label == Label::kP && pairing_.antideg(m) != 0) {
        scratch_.push_back(m);
      }
    }
    // Nothing below touches scratch_.
    for (std::size_t k = 0; k < scratch_.size(); ++k) {
      const Vertex i = scratch_[k];
      if (rec(i).label != Label::kP || pairing_.antideg(i) == 0) continue;
      const GaOutcome out = complete(i);
      if (rec(i).label == Label::kV) continue;
      absorb_completion(i, out.new_neighbors);
    }
  }

  /// Largest anti-degree: complete every open member, then delete.
  void rule_max(SiteId s) {
    scratch_.clear();
    for (Vertex m : sites_[s].members) {
      if (pairing_.antideg(m) != 0) {
        pairing_.prefetch(m);
        scratch_.push_back(m);
      }
    }
    for (std::size_t k = 0; k < scratch_.size(); ++k) {
      const Vertex m = scratch_[k];
      if (rec(m).site != s || pairing_.antideg(m) == 0) continue;
      if (rec(m).label == Label::kC) {
        complete(m);
      } else {
        // A P member with open points would enter I with fresh neighbours
        // that are not covered; send it to V instead.
        ++stats_.open_p_in_del;
        cover_completed(m);
      }
    }
    if (sites_[s].alive) op_del(s);
  }

  /// Throws std::logic_error describing the first broken invariant.
  void check_consistency() const {
    std::size_t counted = 0;
    for (SiteId s = 0; s < sites_.size(); ++s) {
      const VirtualSite& site = sites_[s];
      if (!site.alive) continue;
      std::uint64_t sum = 0;
      for (std::size_t k = 0; k < site.members.size(); ++k) {
        const Vertex m = site.members[k];
        if (rec(m).site != s || rec(m).pos != k) fail("member back-link");
        if (rec(m).label != Label::kP && rec(m).label != Label::kC) {
          fail("member label");
        }
        sum += pairing_.antideg(m);
        ++counted;
      }
      if (sum != site.antideg_sum) fail("site anti-degree sum");

    }
    std::size_t in_sites = 0;
    std::array<std::size_t, 5> per_label{};
    for (Vertex v = 0; v < pairing_.n_vertices(); ++v) {
      ++per_label[static_cast<int>(rec(v).label)];
      if (rec(v).site != kNoSite) ++in_sites;
      if (rec(v).label == Label::kI || rec(v).label == Label::kV) {
        if (rec(v).site != kNoSite) fail("decided vertex in a site");
      }
    }
    if (in_sites != counted) fail("dangling site tags");
    // Each live site must own exactly one live queue entry under its
    // current anti-degree sum.
    if (set_a_.count_valid(site_valid_strict()) != active_sites_) fail("queue entries");
    if (per_label[3] != set_i_.size() || per_label[4] != set_v_.size()) {
      fail("I/V lists out of sync");
    }
    if (per_label[1] != p_labeled_) fail("P counter");
  }

 private:
  VertexRecord& rec(Vertex v) noexcept { return pairing_.payload(v); }
  const VertexRecord& rec(Vertex v) const noexcept {
    return pairing_.payload(v);
  }

  [[noreturn]] static void fail(const char* what) {
    throw std::logic_error(std::string("inconsistent state: ") + what);
  }

  void set_label(Vertex v, Label l) {
    if (rec(v).label == Label::kP) --p_labeled_;
    if (l == Label::kP) ++p_labeled_;
    rec(v).label = l;
  }

  // v lost one free point to a partner that completed onto it.
  void note_link_to(Vertex j) {
    switch (rec(j).label) {
      case Label::kUnlabeled: {
        const unsigned a = pairing_.antideg(j);
        if (a > 2) {
          unlabeled_.push(j, a);
          if (unlabeled_.entries() > 2 * pairing_.n_vertices() + 1024) {
            unlabeled_.compact(unlabeled_valid());
          }
        } else if (a == 2) {
          candidates_.push_back(j);
        }
        break;
      }
      case Label::kP:
      case Label::kC:
        if (rec(j).site != kNoSite) {
          --sites_[rec(j).site].antideg_sum;
          requeue(rec(j).site);
        }
        break;
      case Label::kI:
      case Label::kV:
        INDSET_EXPECT(false, "decided vertex received a link");
    }
  }

  void detach(Vertex v) {
    if (rec(v).site != kNoSite) remove_from_site(v);
  }

  void exclude(Vertex x) {
    ++stats_.excluded;
    if (in_set(x, VertexSet::kUndecided)) {
      op_move(x, VertexSet::kUndecided, VertexSet::kCover);
    }
  }

  // Completes an undecided vertex and puts it in V.
  void cover_completed(Vertex j) {
    if (!in_set(j, VertexSet::kUndecided)) return;
    if (rec(j).site != kNoSite) remove_from_site(j);
    complete(j);
    if (in_set(j, VertexSet::kUndecided)) {
      op_move(j, VertexSet::kUndecided, VertexSet::kCover);
    }
  }

  void absorb_completion(Vertex p, std::span<const Vertex> partners) {
    // A P partner already inside a site would create a P-P edge; it is
    // covered instead.
    for (Vertex j : partners) {
      if (rec(j).label == Label::kP && rec(j).site != kNoSite) {
        ++stats_.pp_evictions;
        cover_completed(j);
      }
    }
    create_or_update_virtual(p, partners);
  }

  auto unlabeled_valid() const {
    return [this](Vertex v, unsigned key) {
      return rec(v).label == Label::kUnlabeled && pairing_.antideg(v) == key;
    };
  }

  // Uniform among unlabeled vertices of least anti-degree. Only called
  // right after a harvest, so every unlabeled vertex has anti-degree > 2
  // and sits in the buckets.
  Vertex pick_min_unlabeled() {
    const auto v = unlabeled_.pick_min(pairing_.rng(), unlabeled_valid());
    INDSET_EXPECT(v.has_value(), "no unlabeled vertex left to seed from");
    return *v;
  }

  auto site_valid() const {
    return [this](SiteId s, std::uint64_t, std::uint32_t stamp) {
      return stamps_[s] == stamp;
    };
  }

  // Full check for the debug pass: the live entry also carries the
  // site's current sum.
  auto site_valid_strict() const {
    return [this](SiteId s, std::uint64_t key, std::uint32_t stamp) {
      const VirtualSite& site = sites_[s];
      return site.alive && stamps_[s] == stamp && site.antideg_sum == key;
    };
  }

  SiteId first_site(std::uint64_t key) {
    return set_a_.first_with_key(key, site_valid());
  }

  void seed_cover() { cover_completed(pick_min_unlabeled()); }

  SiteId allocate_site() {
    SiteId s;
    if (!free_sites_.empty()) {
      s = free_sites_.back();
      free_sites_.pop_back();
    } else {
      s = static_cast<SiteId>(sites_.size());
      sites_.emplace_back();
      stamps_.push_back(0);
    }
    sites_[s].alive = true;
    ++active_sites_;
    sites_[s].antideg_sum = 0;
    sites_[s].members.clear();
    return s;
  }

  void release_site(SiteId s) {
    if (sites_[s].alive) --active_sites_;
    ++stamps_[s];  // retire its queue entry
    sites_[s].alive = false;
    sites_[s].antideg_sum = 0;
    free_sites_.push_back(s);
  }

  void add_member(SiteId s, Vertex v) {
    rec(v).site = s;
    rec(v).pos = static_cast<std::uint32_t>(sites_[s].members.size());
    sites_[s].members.push_back(v);
  }

  void remove_from_site(Vertex v) {
    const SiteId s = rec(v).site;
    VirtualSite& site = sites_[s];
    const Vertex last = site.members.back();
    site.members[rec(v).pos] = last;
    rec(last).pos = rec(v).pos;
    site.members.pop_back();
    site.antideg_sum -= pairing_.antideg(v);
    rec(v).site = kNoSite;
    if (site.members.empty()) {
      release_site(s);
    } else {
      requeue(s);
    }
  }

  void requeue(SiteId s) {
    VirtualSite& site = sites_[s];
    set_a_.push(s, site.antideg_sum, ++stamps_[s]);
    if (set_a_.entries() > 2 * active_sites_ + 4096) {
      set_a_.compact(site_valid());
    }
  }

  std::chrono::steady_clock::time_point born_;
  BasicPairingState<VertexRecord> pairing_;
  EngineOptions options_;
  Observer observer_;
  std::vector<VirtualSite> sites_;
  std::vector<SiteId> free_sites_;
  // Queue stamps per site, kept apart from the site records so stale
  // checks and compaction stay in cache. Bumped on every requeue and on
  // release, so only a site's newest entry matches.
  std::vector<std::uint32_t> stamps_;
  LazyFifoBuckets set_a_;
  std::size_t active_sites_ = 0;
  std::vector<Vertex> del_buf_;
  LazyMinBuckets unlabeled_;
  std::vector<Vertex> candidates_;
  std::array<std::vector<Vertex>, 3> set_p_;
  std::vector<Vertex> set_i_;
  std::vector<Vertex> set_v_;
  std::uint64_t p_labeled_ = 0;
  RunStats stats_;
  std::vector<SiteId> touched_;
  std::vector<Vertex> fresh_;
  std::vector<Vertex> scratch_;
};

inline RunResult run_d3(const GraphConfig& config, EngineOptions options = {}) {
  if (config.degree != 3) {
    throw std::invalid_argument("run_d3 requires degree 3");
  }
  DeferredEngine<> engine(config, options);
  return engine.run();
}

inline RunResult run_general(const GraphConfig& config,
                             EngineOptions options = {}) {
  if (config.degree <= 3) {
    throw std::invalid_argument("run_general requires degree > 3");
  }
  DeferredEngine<> engine(config, options);
  return engine.run();
}

inline RunResult run_algorithm(const GraphConfig& config,
                               EngineOptions options = {}) {
  config.validate();
  return config.degree == 3 ? run_d3(config, options)
                            : run_general(config, options);
}

}  // namespace indset
