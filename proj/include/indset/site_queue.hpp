#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "indset/huge_alloc.hpp"

namespace indset {

/// Bucket queue over integer keys with FIFO order inside a bucket.
///
/// Entries are appended, never unlinked: moving an id pushes a new
/// (id, stamp) entry and the owner bumps the id's stamp, which makes older
/// entries stale. The owner's `valid(id, key, stamp)` predicate identifies
/// live entries; stale ones are dropped when they reach a bucket front.
/// Order inside a bucket is that of the latest push, as with an intrusive
/// list, but an update costs one sequential append instead of touching
/// neighbouring nodes.
class LazyFifoBuckets {
 public:
  using Id = std::uint32_t;
  static constexpr Id kNil = std::numeric_limits<Id>::max();

  std::size_t entries() const noexcept { return entries_; }

  void push(Id id, std::uint64_t key, std::uint32_t stamp) {
    if (key >= buckets_.size()) buckets_.resize(key + 1);
    buckets_[key].items.push_back({id, stamp});
    ++entries_;
    if (key > max_) max_ = key;
  }

  template <class Valid>
  Id first_with_key(std::uint64_t key, Valid&& valid) {
    if (key >= buckets_.size()) return kNil;
    Bucket& b = buckets_[key];
    while (b.head < b.items.size()) {
      const Entry e = b.items[b.head];
      if (valid(e.id, key, e.stamp)) {
        if (b.head > 4096 && b.head * 2 > b.items.size()) {
          b.items.erase(b.items.begin(), b.items.begin() + b.head);
          b.head = 0;
        }
        return e.id;
      }
      ++b.head;
      --entries_;
    }
    b.items.clear();
    b.head = 0;
    return kNil;
  }

  template <class Valid>
  Id first_with_max_key(Valid&& valid) {
    if (buckets_.empty()) return kNil;
    max_ = std::min<std::uint64_t>(max_, buckets_.size() - 1);
    for (;; --max_) {
      const Id id = first_with_key(max_, valid);
      if (id != kNil || max_ == 0) return id;
    }
  }

  template <class Valid>
  std::size_t count_valid(Valid&& valid) const {
    std::size_t n = 0;
    for (std::uint64_t key = 0; key < buckets_.size(); ++key) {
      const Bucket& b = buckets_[key];
      for (std::size_t k = b.head; k < b.items.size(); ++k) {
        if (valid(b.items[k].id, key, b.items[k].stamp)) ++n;
      }
    }
    return n;
  }

  /// Drops every stale entry, keeping bucket order.
  template <class Valid>
  void compact(Valid&& valid) {
    entries_ = 0;
    for (std::uint64_t key = 0; key < buckets_.size(); ++key) {
      Bucket& b = buckets_[key];
      std::size_t keep = 0;
      for (std::size_t k = b.head; k < b.items.size(); ++k) {
        if (valid(b.items[k].id, key, b.items[k].stamp)) {
          b.items[keep++] = b.items[k];
        }
      }
      b.items.resize(keep);
      b.head = 0;
      entries_ += keep;
    }
  }

 private:
  struct Entry {
    Id id;
    std::uint32_t stamp;
  };
  struct Bucket {
    std::vector<Entry> items;
    std::size_t head = 0;
  };

  std::vector<Bucket> buckets_;
  std::uint64_t max_ = 0;
  std::size_t entries_ = 0;
};

/// Append-only buckets over a bounded, only-decreasing key, with a
/// uniform pick inside the smallest bucket that still holds a valid id.
///
/// An id is pushed once per key it takes and never moved, so an update
/// costs one sequential append. Entries whose id has since changed key or
/// left the structure are stale; the caller's `valid(id, key)` predicate
/// recognises them and they are dropped when a pick lands on them. Since
/// keys only decrease, each valid id sits in exactly one bucket, which
/// keeps picks uniform.
class LazyMinBuckets {
 public:
  using Id = std::uint32_t;

  explicit LazyMinBuckets(unsigned max_key) : buckets_(max_key + 1) {}

  std::size_t entries() const noexcept { return entries_; }

  void push(Id id, unsigned key) {
    buckets_[key].push_back(id);
    ++entries_;
    if (key < min_) min_ = key;
  }

  /// Returns a uniformly random valid id of the smallest key, or nullopt
  /// when none is left.
  template <class Rng, class Valid>
  std::optional<Id> pick_min(Rng& rng, Valid&& valid) {
    for (; min_ < buckets_.size(); ++min_) {
      auto& b = buckets_[min_];
      while (!b.empty()) {
        const std::size_t k = rng.below(b.size());
        const Id id = b[k];
        if (valid(id, min_)) return id;
        b[k] = b.back();
        b.pop_back();
        --entries_;
      }
    }
    return std::nullopt;
  }

  /// Drops every stale entry. Callers use it to bound memory.
  template <class Valid>
  void compact(Valid&& valid) {
    entries_ = 0;
    for (unsigned key = 0; key < buckets_.size(); ++key) {
      auto& b = buckets_[key];
      std::size_t keep = 0;
      for (Id id : b) {
        if (valid(id, key)) b[keep++] = id;
      }
      b.resize(keep);
      entries_ += keep;
    }
  }

 private:
  std::vector<BigVector<Id>> buckets_;
  std::size_t entries_ = 0;
  unsigned min_ = std::numeric_limits<unsigned>::max();
};

}  // namespace indset
