// indset_rrg: random regular graphs and prioritized independent sets.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "indset/deferred.hpp"
#include "indset/experiment.hpp"
#include "indset/io.hpp"
#include "indset/stats.hpp"
#include "indset/verify.hpp"

namespace {

using namespace indset;

enum Exit : int { kOk = 0, kUsage = 1, kVerifyFailed = 2, kDataError = 3 };

// Thrown for bad flag combinations found after parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

constexpr std::uint64_t kForceThreshold = 100'000'000;

void guard_size(const std::vector<GraphConfig>& configs, bool force) {
  std::uint64_t worst = 0;
  std::uint64_t largest_n = 0;
  for (const GraphConfig& c : configs) {
    worst = std::max(worst, estimate_run_bytes(c));
    largest_n = std::max(largest_n, c.n_vertices);
  }
  if (largest_n <= kForceThreshold) return;
  std::fprintf(stderr, "estimated memory per run: %.2f GiB (N=%llu)\n",
               static_cast<double>(worst) / (1ULL << 30),
               static_cast<unsigned long long>(largest_n));
  if (!force) throw UsageError("N > 1e8 requires --force");
}

std::ofstream open_out(const std::string& path, std::ios::openmode mode = std::ios::out) {
  std::ofstream f(path, mode | std::ios::binary);
  if (!f) throw DataError("cannot open '" + path + "' for writing");
  return f;
}

// Opens a run CSV for appending, writing the header when the file is new.
// An existing file must carry the same schema.
std::ofstream open_run_csv(const std::string& path) {
  bool fresh = !std::filesystem::exists(path) || std::filesystem::file_size(path) == 0;
  if (!fresh) {
    std::ifstream in(path);
    std::string schema, columns;
    std::getline(in, schema);
    std::getline(in, columns);
    if (schema != kSchemaLine || columns != kRunColumns) {
      throw DataError("'" + path + "' is not an indset-rrg v1 run file");
    }
  }
  std::ofstream out = open_out(path, std::ios::app);
  if (fresh) write_run_header(out);
  return out;
}

std::vector<Vertex> read_vertex_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  std::vector<Vertex> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(line, &used);
    } catch (const std::exception&) {
      throw DataError("'" + path + "': bad vertex id '" + line + "'");
    }
    out.push_back(static_cast<Vertex>(v));
  }
  return out;
}

void print_summaries(std::ostream& os, const std::vector<SampleSummary>& summaries) {
  for (const SampleSummary& s : summaries) {
    os << "d=" << s.degree << " N=" << s.n_vertices << " count=" << s.count
       << " mean=" << format_g(s.mean, 9);
    if (s.sd_defined()) {
      os << " sd=" << format_g(s.sd, 4) << " stderr=" << format_g(s.stderr_mean, 4);
    } else {
      os << " sd=undefined (count < 2)";
    }
    os << '\n';
  }
}

// --- run --------------------------------------------------------------

struct RunArgs {
  unsigned d = 0;
  std::uint64_t n = 0;
  std::uint64_t seed = 1;
  bool verify = false;
  bool force = false;
  std::string out;
  std::string edges;
  std::string iset;
};

int cmd_run(const RunArgs& a) {
  const GraphConfig config{a.n, a.d, a.seed};
  config.validate();
  guard_size({config}, a.force);

  DeferredEngine<> engine(config);
  const RunResult r = engine.run();

  std::cout << kSchemaLine << '\n' << kRunColumns << '\n' << format_run_row(r);
  if (!a.out.empty()) {
    std::ofstream out = open_run_csv(a.out);
    out << format_run_row(r) << std::flush;
  }
  if (!a.edges.empty()) {
    std::ofstream out = open_out(a.edges);
    engine.pairing().write_edge_list(out);
  }
  if (!a.iset.empty()) {
    std::ofstream out = open_out(a.iset);
    std::vector<Vertex> set = engine.independent_set();
    std::sort(set.begin(), set.end());
    for (Vertex v : set) out << v << '\n';
  }
  if (a.verify) {
    const Verdict v = verify_solution(engine.pairing(), engine.independent_set(),
                                      engine.cover_set());
    if (!v) {
      std::cerr << "verification failed: " << v.violation << '\n';
      return kVerifyFailed;
    }
    std::cerr << "verification ok\n";
  }
  return kOk;
}

// --- batch ------------------------------------------------------------

struct BatchArgs {
  std::string plan_file;
  std::vector<unsigned> d;
  std::vector<std::uint64_t> n;
  std::optional<std::uint64_t> samples;
  std::optional<std::uint64_t> seed;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  std::string out;
  bool verify = false;
  bool trace = false;
  bool force = false;
};

int cmd_batch(const BatchArgs& a) {
  ExperimentPlan plan;
  if (!a.plan_file.empty()) {
    std::ifstream in(a.plan_file);
    if (!in) throw DataError("cannot open plan '" + a.plan_file + "'");
    plan = parse_plan(in);
  }
  if (!a.d.empty()) plan.degrees = a.d;
  if (!a.n.empty()) plan.sizes = a.n;
  if (a.samples) plan.samples = *a.samples;
  if (a.seed) plan.base_seed = *a.seed;
  if (!a.out.empty()) plan.out = a.out;
  plan.verify = plan.verify || a.verify;
  plan.trace = plan.trace || a.trace;
  plan.validate();
  if (plan.trace && plan.out.empty()) {
    throw UsageError("tracing a batch needs an output path");
  }

  std::vector<GraphConfig> configs;
  for (unsigned d : plan.degrees) {
    for (std::uint64_t n : plan.sizes) configs.push_back({n, d, 0});
  }
  guard_size(configs, a.force);

  std::optional<std::ofstream> file;
  std::optional<std::ofstream> trace_file;
  if (!plan.out.empty()) {
    file = open_run_csv(plan.out);
    if (plan.trace) {
      const std::string path = plan.out + ".trace.csv";
      trace_file = open_out(path);
      *trace_file << kSchemaLine << '\n' << kTraceColumns << '\n';
    }
  } else {
    std::cout << kSchemaLine << '\n' << kRunColumns << '\n';
  }
  std::ostream& rows = file ? static_cast<std::ostream&>(*file) : std::cout;
  std::ostream& report = file ? std::cout : std::cerr;

  std::vector<RunResult> results;
  std::size_t verify_failures = 0;
  std::size_t errors = 0;
  run_batch(expand(plan), plan.verify, plan.trace, a.jobs,
            [&](const BatchRecord& rec) {
              const WorkItem& w = rec.item;
              if (!rec.outcome) {
                ++errors;
                rows << "# failed d=" << w.degree << " N=" << w.n_vertices
                     << " run=" << w.run_index << " seed=" << w.seed << ": "
                     << rec.error << '\n' << std::flush;
                return;
              }
              const RunOutcome& o = *rec.outcome;
              if (o.verdict && !*o.verdict) {
                ++verify_failures;
                rows << "# verification failed d=" << w.degree
                     << " N=" << w.n_vertices << " seed=" << w.seed << ": "
                     << o.verdict->violation << '\n' << std::flush;
                return;
              }
              rows << format_run_row(o.result) << std::flush;
              if (trace_file) write_trace(*trace_file, o.result, o.trace);
              results.push_back(o.result);
            });

  if (!results.empty()) print_summaries(report, summarize(results));
  if (errors != 0) report << errors << " run(s) failed\n";
  if (verify_failures != 0) {
    report << verify_failures << " run(s) failed verification\n";
    return kVerifyFailed;
  }
  return errors != 0 ? kDataError : kOk;
}

// --- fit --------------------------------------------------------------

struct FitArgs {
  std::string csv;
  std::optional<unsigned> d;
  std::string stderr_mode = "sample-sd";
  bool chi2_scale = false;
  std::string out;
  std::string plot;
};

int cmd_fit(const FitArgs& a) {
  const StderrMode mode = parse_stderr_mode(a.stderr_mode);
  std::ifstream in(a.csv);
  if (!in) throw DataError("cannot open '" + a.csv + "'");
  const ResultsFile file = read_results(in);
  std::vector<SampleSummary> summaries;
  try {
    summaries = summaries_of(file, mode);
  } catch (const std::invalid_argument& e) {
    throw DataError(e.what());
  }

  std::set<unsigned> degrees;
  for (const SampleSummary& s : summaries) degrees.insert(s.degree);
  unsigned degree = 0;
  if (a.d) {
    degree = *a.d;
  } else if (degrees.size() == 1) {
    degree = *degrees.begin();
  } else {
    throw UsageError("the file holds several degrees; pick one with --d");
  }

  const std::vector<FitPoint> points = fit_points(summaries, degree);
  FitResult fit;
  try {
    FitOptions options;
    options.scale_by_chi2 = a.chi2_scale;
    fit = gls_fit(points, options);
  } catch (const std::invalid_argument& e) {
    throw DataError(std::string("d=") + std::to_string(degree) + ": " + e.what());
  }

  const std::string json = fit_json(degree, fit).dump(2) + "\n";
  if (a.out.empty()) {
    std::cout << json;
  } else {
    open_out(a.out) << json;
  }
  if (!a.plot.empty()) {
    std::ofstream plot = open_out(a.plot);
    plot << kSchemaLine << "\nN,x,mean,stderr,fitted\n";
    for (const FitPoint& p : points) {
      const double x = 1.0 / std::log(static_cast<double>(p.n_vertices));
      plot << p.n_vertices << ',' << format_g(x, 12) << ','
           << format_g(p.mean, 12) << ',' << format_g(p.stderr_mean, 6) << ','
           << format_g(fit.a * x + fit.alpha_inf, 12) << '\n';
    }
  }
  return kOk;
}

// --- verify -----------------------------------------------------------

struct VerifyArgs {
  std::string edges;
  std::string iset;
  std::string vset;
  std::optional<unsigned> d;
  std::optional<std::uint64_t> n;
  std::uint64_t seed = 1;
  bool force = false;
};

int cmd_verify(const VerifyArgs& a) {
  Verdict verdict;
  if (!a.edges.empty()) {
    if (a.iset.empty()) throw UsageError("--edges needs --iset");
    std::ifstream in(a.edges);
    if (!in) throw DataError("cannot open '" + a.edges + "'");
    StaticGraph g;
    try {
      g = read_edge_list(in, a.n ? std::optional<std::size_t>(*a.n) : std::nullopt);
    } catch (const std::exception& e) {
      throw DataError(e.what());
    }
    const std::vector<Vertex> independent = read_vertex_list(a.iset);
    std::vector<Vertex> cover;
    if (!a.vset.empty()) {
      cover = read_vertex_list(a.vset);
    } else {
      // Without an explicit cover every vertex outside I belongs to V.
      std::vector<bool> in_i(g.n_vertices(), false);
      for (Vertex v : independent) {
        if (v < in_i.size()) in_i[v] = true;
      }
      for (Vertex v = 0; v < g.n_vertices(); ++v) {
        if (!in_i[v]) cover.push_back(v);
      }
    }
    verdict = verify_solution(g, independent, cover);
    if (verdict && g.n_vertices() <= kExactMisLimit) {
      std::cout << "maximum independent set size: " << exact_mis(g) << '\n';
    }
  } else {
    if (!a.d || !a.n) throw UsageError("verify needs --edges/--iset or --d/--n");
    const GraphConfig config{*a.n, *a.d, a.seed};
    config.validate();
    guard_size({config}, a.force);
    const RunOutcome o = execute_run(config, true);
    std::cout << kSchemaLine << '\n' << kRunColumns << '\n'
              << format_run_row(o.result);
    verdict = *o.verdict;
  }
  if (!verdict) {
    std::cout << "violation: " << verdict.violation << '\n';
    return kVerifyFailed;
  }
  std::cout << "ok\n";
  return kOk;
}

// --- trace ------------------------------------------------------------

struct TraceArgs {
  unsigned d = 0;
  std::uint64_t n = 0;
  std::uint64_t seed = 1;
  std::string out;
  bool force = false;
};

int cmd_trace(const TraceArgs& a) {
  const GraphConfig config{a.n, a.d, a.seed};
  config.validate();
  guard_size({config}, a.force);
  const RunOutcome o = execute_run(config, false, true);

  std::optional<std::ofstream> file;
  if (!a.out.empty()) file = open_out(a.out);
  std::ostream& os = file ? static_cast<std::ostream&>(*file) : std::cout;
  os << kSchemaLine << '\n' << kTraceColumns << '\n';
  write_trace(os, o.result, o.trace);
  const double total_p = static_cast<double>(o.stats.p_created) /
                         static_cast<double>(config.n_vertices);
  os << "# total_p_fraction=" << format_g(total_p, 9)
     << " alpha=" << format_g(o.result.alpha, 9) << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random regular graphs and prioritized independent sets"};
  app.require_subcommand(1);

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "one run; prints a CSV row");
  run_cmd->add_option("--d", run.d, "degree (>= 3)")->required();
  run_cmd->add_option("--n", run.n, "number of vertices")->required();
  run_cmd->add_option("--seed", run.seed, "RNG seed");
  run_cmd->add_flag("--verify", run.verify, "check the solution afterwards");
  run_cmd->add_flag("--force", run.force, "allow N > 1e8");
  run_cmd->add_option("--out", run.out, "append the row to this CSV");
  run_cmd->add_option("--edges", run.edges, "write the graph as an edge list");
  run_cmd->add_option("--iset", run.iset, "write the independent set, one id per line");

  BatchArgs batch;
  auto* batch_cmd = app.add_subcommand("batch", "many runs, summaries per (d, N)");
  batch_cmd->add_option("--plan", batch.plan_file, "key=value plan file");
  batch_cmd->add_option("--d", batch.d, "degrees")->delimiter(',');
  batch_cmd->add_option("--n", batch.n, "graph orders")->delimiter(',');
  batch_cmd->add_option("--samples", batch.samples, "runs per (d, N)")
      ->check(CLI::PositiveNumber);
  batch_cmd->add_option("--seed", batch.seed, "base seed");
  batch_cmd->add_option("--jobs", batch.jobs, "worker threads")->check(CLI::PositiveNumber);
  batch_cmd->add_option("--out", batch.out, "append rows to this CSV");
  batch_cmd->add_flag("--verify", batch.verify, "verify every run");
  batch_cmd->add_flag("--trace", batch.trace, "also write P-fraction series");
  batch_cmd->add_flag("--force", batch.force, "allow N > 1e8");

  FitArgs fit;
  auto* fit_cmd = app.add_subcommand("fit", "extrapolate alpha(N) = a/ln N + alpha_inf");
  fit_cmd->add_option("csv", fit.csv, "run CSV or d,N,samples,mean,sd table")->required();
  fit_cmd->add_option("--d", fit.d, "degree to fit");
  fit_cmd->add_option("--stderr-mode", fit.stderr_mode,
                      "meaning of the sd column of a table")
      ->check(CLI::IsMember({"sample-sd", "mean-se"}));
  fit_cmd->add_flag("--chi2-scale", fit.chi2_scale, "scale covariance by chi2/dof");
  fit_cmd->add_option("--out", fit.out, "write the JSON here");
  fit_cmd->add_option("--plot", fit.plot, "write plot-ready columns here");

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "check an independent set");
  verify_cmd->add_option("--edges", verify.edges, "edge list file");
  verify_cmd->add_option("--iset", verify.iset, "independent set file");
  verify_cmd->add_option("--vset", verify.vset, "cover file (default: complement)");
  verify_cmd->add_option("--d", verify.d, "degree, to generate and check a run");
  verify_cmd->add_option("--n", verify.n, "number of vertices");
  verify_cmd->add_option("--seed", verify.seed, "RNG seed");
  verify_cmd->add_flag("--force", verify.force, "allow N > 1e8");

  TraceArgs trace;
  auto* trace_cmd = app.add_subcommand("trace", "P-fraction series of one run");
  trace_cmd->add_option("--d", trace.d, "degree")->required();
  trace_cmd->add_option("--n", trace.n, "number of vertices")->required();
  trace_cmd->add_option("--seed", trace.seed, "RNG seed");
  trace_cmd->add_option("--out", trace.out, "CSV path (default stdout)");
  trace_cmd->add_flag("--force", trace.force, "allow N > 1e8");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*run_cmd) return cmd_run(run);
    if (*batch_cmd) return cmd_batch(batch);
    if (*fit_cmd) return cmd_fit(fit);
    if (*verify_cmd) return cmd_verify(verify);
    if (*trace_cmd) return cmd_trace(trace);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kDataError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDataError;
  }
  return kUsage;
}
