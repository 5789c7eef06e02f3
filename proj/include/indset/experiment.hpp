#pragma once

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <functional>
#include <istream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "indset/deferred.hpp"
#include "indset/io.hpp"
#include "indset/rng.hpp"
#include "indset/verify.hpp"

namespace indset {

/// Everything a batch needs. Flat key=value on disk.
struct ExperimentPlan {
  std::vector<unsigned> degrees;
  std::vector<std::uint64_t> sizes;
  std::uint64_t samples = 1;
  std::uint64_t base_seed = 1;
  std::string out;  // empty: stdout
  bool verify = false;
  bool trace = false;

  void validate() const {
    if (degrees.empty() || sizes.empty()) {
      throw std::invalid_argument("plan needs at least one degree and one N");
    }
    if (samples < 1) throw std::invalid_argument("plan needs samples >= 1");
    for (unsigned d : degrees) {
      for (std::uint64_t n : sizes) GraphConfig{n, d, 0}.validate();
    }
  }
};

namespace detail {

template <class T>
std::vector<T> parse_list(const std::string& value, const std::string& key) {
  std::vector<T> out;
  std::string item;
  std::istringstream in(value);
  while (std::getline(in, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    // Accept 1e6 style sizes as long as they are exact integers.
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size() || v < 0 || v > 1e18 ||
        v != static_cast<double>(static_cast<T>(v))) {
      throw std::invalid_argument("plan key '" + key + "': bad value '" + item + "'");
    }
    out.push_back(static_cast<T>(v));
  }
  return out;
}

inline bool parse_bool(const std::string& v, const std::string& key) {
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  throw std::invalid_argument("plan key '" + key + "': expected a boolean");
}

}  // namespace detail

/// Keys: d, n, samples, seed, out, verify, trace. '#' starts a comment.
inline ExperimentPlan parse_plan(std::istream& in) {
  ExperimentPlan plan;
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    line.erase(0, line.find_first_not_of(" \t\r"));
    line.erase(line.find_last_not_of(" \t\r") + 1);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("plan line without '=': " + line);
    }
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 1);
    key.erase(key.find_last_not_of(" \t") + 1);
    value.erase(0, value.find_first_not_of(" \t"));
    if (key == "d") {
      plan.degrees = detail::parse_list<unsigned>(value, key);
    } else if (key == "n") {
      plan.sizes = detail::parse_list<std::uint64_t>(value, key);
    } else if (key == "samples") {
      plan.samples = detail::parse_list<std::uint64_t>(value, key).at(0);
    } else if (key == "seed") {
      plan.base_seed = std::stoull(value);
    } else if (key == "out") {
      plan.out = value;
    } else if (key == "verify") {
      plan.verify = detail::parse_bool(value, key);
    } else if (key == "trace") {
      plan.trace = detail::parse_bool(value, key);
    } else {
      throw std::invalid_argument("unknown plan key '" + key + "'");
    }
  }
  return plan;
}

/// Rough peak memory of one run, for the large-N guardrail.
inline std::uint64_t estimate_run_bytes(const GraphConfig& c) {
  const std::uint64_t n = c.n_vertices;
  const std::uint64_t points = c.points();
  // Adjacency and point pool take 4 B per point; urn plus record 16 B
  // per vertex; queues, I/V lists and sites add roughly 24 B per vertex.
  return 8 * points + 40 * n;
}

/// P-fraction series over the growth of the graph.
struct TracePoint {
  std::uint64_t links = 0;
  std::uint64_t p_count = 0;
};

class PTraceObserver {
 public:
  PTraceObserver() = default;
  explicit PTraceObserver(const GraphConfig& c)
      : stride_(std::max<std::uint64_t>(1, (c.points() + 1999) / 2000)) {
    points_.push_back({0, 0});
    next_ = stride_;
  }

  void on_progress(std::uint64_t links, std::uint64_t p_count) {
    if (links < next_) return;
    points_.push_back({links, p_count});
    next_ = (links / stride_ + 1) * stride_;
  }

  // Closes the series with the final state.
  void finish(std::uint64_t links, std::uint64_t p_count) {
    if (points_.back().links != links) {
      points_.push_back({links, p_count});
    } else {
      points_.back().p_count = p_count;
    }
  }

  std::uint64_t stride() const noexcept { return stride_; }
  const std::vector<TracePoint>& points() const noexcept { return points_; }

 private:
  std::uint64_t stride_ = 1;
  std::uint64_t next_ = 1;
  std::vector<TracePoint> points_;
};

struct RunOutcome {
  RunResult result;
  RunStats stats;
  std::optional<Verdict> verdict;  // set when verification ran
  std::vector<TracePoint> trace;   // set when tracing ran
};

/// One complete run on a fresh engine, optionally verified and traced.
inline RunOutcome execute_run(const GraphConfig& config, bool verify,
                              bool trace = false, EngineOptions options = {}) {
  config.validate();
  RunOutcome out;
  auto finish = [&](auto& engine) {
    out.result = engine.run();
    out.stats = engine.stats();
    if (verify) {
      out.verdict = verify_solution(engine.pairing(), engine.independent_set(),
                                    engine.cover_set());
    }
  };
  if (trace) {
    DeferredEngine<PTraceObserver> engine(config, options, PTraceObserver(config));
    finish(engine);
    engine.observer().finish(engine.pairing().links(), engine.p_labeled());
    out.trace = engine.observer().points();
  } else {
    DeferredEngine<> engine(config, options);
    finish(engine);
  }
  return out;
}

/// CSV of a P-fraction series: links inserted, their share of all dN/2
/// links, and the share of vertices labeled P at that moment.
inline void write_trace(std::ostream& os, const RunResult& r,
                        const std::vector<TracePoint>& points) {
  const double total_links = static_cast<double>(r.degree) *
                             static_cast<double>(r.n_vertices) / 2.0;
  for (const TracePoint& p : points) {
    os << r.degree << ',' << r.n_vertices << ',' << r.seed << ',' << p.links
       << ',' << format_g(static_cast<double>(p.links) / total_links, 9) << ','
       << format_g(static_cast<double>(p.p_count) /
                       static_cast<double>(r.n_vertices), 9)
       << '\n';
  }
}

inline constexpr const char* kTraceColumns = "d,N,seed,links,link_fraction,p_fraction";


struct WorkItem {
  unsigned degree = 0;
  std::uint64_t n_vertices = 0;
  std::uint64_t run_index = 0;
  std::uint64_t seed = 0;
};

/// (d, N, run) items in plan order with their derived seeds.
inline std::vector<WorkItem> expand(const ExperimentPlan& plan) {
  std::vector<WorkItem> items;
  for (unsigned d : plan.degrees) {
    for (std::uint64_t n : plan.sizes) {
      for (std::uint64_t k = 0; k < plan.samples; ++k) {
        items.push_back({d, n, k, run_seed(plan.base_seed, d, n, k)});
      }
    }
  }
  return items;
}

struct BatchRecord {
  WorkItem item;
  std::optional<RunOutcome> outcome;
  std::string error;  // set when the run threw
};

/// Runs every item on `jobs` workers. `sink` is called on the calling
/// thread, once per item and in item order, so output written from it is
/// reproducible regardless of scheduling.
inline void run_batch(const std::vector<WorkItem>& items, bool verify,
                      bool trace, unsigned jobs,
                      const std::function<void(const BatchRecord&)>& sink) {
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(
                                                   std::max<std::size_t>(items.size(), 1))));
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::condition_variable ready;
  std::map<std::size_t, BatchRecord> done;

  auto worker = [&] {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= items.size()) return;
      BatchRecord rec{items[k], std::nullopt, {}};
      try {
        rec.outcome = execute_run(
            GraphConfig{items[k].n_vertices, items[k].degree, items[k].seed},
            verify, trace);
      } catch (const std::exception& e) {
        rec.error = e.what();
      }
      {
        std::lock_guard lock(mu);
        done.emplace(k, std::move(rec));
      }
      ready.notify_one();
    }
  };

  std::vector<std::jthread> pool;
  for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);

  for (std::size_t k = 0; k < items.size(); ++k) {
    BatchRecord rec;
    {
      std::unique_lock lock(mu);
      ready.wait(lock, [&] { return done.count(k) != 0; });
      auto it = done.find(k);
      rec = std::move(it->second);
      done.erase(it);
    }
    sink(rec);
  }
}

}  // namespace indset
