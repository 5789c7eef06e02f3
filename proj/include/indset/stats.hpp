#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/distributions/students_t.hpp>

#include "indset/deferred.hpp"

namespace indset {

struct SampleSummary {
  unsigned degree = 0;
  std::uint64_t n_vertices = 0;
  std::uint64_t count = 0;
  double mean = 0.0;
  double sd = std::numeric_limits<double>::quiet_NaN();  // NaN when count < 2
  double stderr_mean = std::numeric_limits<double>::quiet_NaN();

  bool sd_defined() const noexcept { return count >= 2; }
};

/// Mean, unbiased sd and standard error of the mean of one sample.
inline SampleSummary summarize_values(const std::vector<double>& values) {
  if (values.empty()) throw std::invalid_argument("summarize: empty group");
  SampleSummary s;
  s.count = values.size();
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(s.count);
  if (s.count >= 2) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.sd = std::sqrt(ss / static_cast<double>(s.count - 1));
    s.stderr_mean = s.sd / std::sqrt(static_cast<double>(s.count));
  }
  return s;
}

/// Groups runs by (d, N), ordered by d then N.
inline std::vector<SampleSummary> summarize(const std::vector<RunResult>& runs) {
  std::map<std::pair<unsigned, std::uint64_t>, std::vector<double>> groups;
  for (const RunResult& r : runs) {
    groups[{r.degree, r.n_vertices}].push_back(r.alpha);
  }
  std::vector<SampleSummary> out;
  for (const auto& [key, alphas] : groups) {
    SampleSummary s = summarize_values(alphas);
    s.degree = key.first;
    s.n_vertices = key.second;
    out.push_back(s);
  }
  return out;
}

// How the parenthesised uncertainty of a transcribed table row becomes the
// standard error of its mean.
enum class StderrMode {
  kSampleSd,  // the value is the per-run sd; stderr = sd / sqrt(samples)
  kMeanSe,    // the value already is the stderr of the mean
};

inline StderrMode parse_stderr_mode(const std::string& s) {
  if (s == "sample-sd") return StderrMode::kSampleSd;
  if (s == "mean-se") return StderrMode::kMeanSe;
  throw std::invalid_argument("unknown stderr mode '" + s +
                              "' (expected sample-sd or mean-se)");
}

inline const char* to_string(StderrMode m) {
  return m == StderrMode::kSampleSd ? "sample-sd" : "mean-se";
}

/// A published row: (d, N, samples, mean, uncertainty).
struct TableRow {
  unsigned degree = 0;
  std::uint64_t n_vertices = 0;
  std::uint64_t samples = 0;
  double mean = 0.0;
  double spread = 0.0;
};

inline SampleSummary summary_from_row(const TableRow& row, StderrMode mode) {
  SampleSummary s;
  s.degree = row.degree;
  s.n_vertices = row.n_vertices;
  s.count = row.samples;
  s.mean = row.mean;
  if (mode == StderrMode::kSampleSd) {
    if (row.samples == 0) {
      throw std::invalid_argument("sample-sd mode needs a positive sample count");
    }
    s.sd = row.spread;
    s.stderr_mean = row.spread / std::sqrt(static_cast<double>(row.samples));
  } else {
    s.stderr_mean = row.spread;
    if (row.samples > 0) {
      s.sd = row.spread * std::sqrt(static_cast<double>(row.samples));
    }
  }
  return s;
}

struct FitPoint {
  std::uint64_t n_vertices = 0;
  double mean = 0.0;
  double stderr_mean = 0.0;
};

struct FitOptions {
  // Rescale the parameter covariance by chi^2 / dof.
  bool scale_by_chi2 = false;
  double confidence = 0.99;
  // Multiplier reported alongside the t interval for comparison with the
  // published intervals.
  double fixed_quantile = 3.35;
};

struct FitResult {
  double a = 0.0;
  double se_a = 0.0;
  double alpha_inf = 0.0;
  double se_alpha = 0.0;
  double ci99_lo = 0.0;
  double ci99_hi = 0.0;
  double quantile_used = 0.0;
  double fixed_lo = 0.0;  // alpha_inf -+ fixed_quantile * se_alpha
  double fixed_hi = 0.0;
  double chi2 = 0.0;
  std::size_t n_points = 0;
  bool chi2_scaled = false;
};

/// Two-sided Student-t quantile for the given confidence level.
inline double t_quantile(double confidence, double dof) {
  boost::math::students_t dist(dof);
  return boost::math::quantile(boost::math::complement(dist, (1.0 - confidence) / 2.0));
}

/// Weighted least squares of mean = a / ln N + alpha_inf with weights
/// 1 / stderr^2. Solved in centred form, which is exact for two
/// parameters and avoids cancellation when all x = 1/ln N are close.
inline FitResult gls_fit(const std::vector<FitPoint>& points,
                         const FitOptions& options = {}) {
  if (points.size() < 3) {
    throw std::invalid_argument("gls_fit: need at least 3 points, got " +
                                std::to_string(points.size()));
  }
  std::set<std::uint64_t> seen;
  for (const FitPoint& p : points) {
    if (p.n_vertices < 2) throw std::invalid_argument("gls_fit: N must be >= 2");
    if (!(p.stderr_mean > 0.0) || !std::isfinite(p.stderr_mean)) {
      throw std::invalid_argument("gls_fit: stderr must be positive (N=" +
                                  std::to_string(p.n_vertices) + ")");
    }
    if (!seen.insert(p.n_vertices).second) {
      throw std::invalid_argument("gls_fit: duplicate N=" +
                                  std::to_string(p.n_vertices));
    }
  }

  // Sort so the floating-point sums do not depend on input order.
  std::vector<FitPoint> sorted = points;
  std::sort(sorted.begin(), sorted.end(),
            [](const FitPoint& l, const FitPoint& r) {
              return l.n_vertices < r.n_vertices;
            });

  double sw = 0.0, swx = 0.0, swy = 0.0;
  for (const FitPoint& p : sorted) {
    const double w = 1.0 / (p.stderr_mean * p.stderr_mean);
    const double x = 1.0 / std::log(static_cast<double>(p.n_vertices));
    sw += w;
    swx += w * x;
    swy += w * p.mean;
  }
  const double xbar = swx / sw;
  const double ybar = swy / sw;
  double sxx = 0.0, sxy = 0.0, sx2 = 0.0;
  for (const FitPoint& p : sorted) {
    const double w = 1.0 / (p.stderr_mean * p.stderr_mean);
    const double dx = 1.0 / std::log(static_cast<double>(p.n_vertices)) - xbar;
    sxx += w * dx * dx;
    sxy += w * dx * (p.mean - ybar);
    sx2 += w * (dx + xbar) * (dx + xbar);
  }
  if (!(sxx > 1e-14 * sx2)) {
    throw std::invalid_argument("gls_fit: degenerate design (all x equal)");
  }

  FitResult r;
  r.n_points = sorted.size();
  r.a = sxy / sxx;
  r.alpha_inf = ybar - r.a * xbar;
  for (const FitPoint& p : sorted) {
    const double x = 1.0 / std::log(static_cast<double>(p.n_vertices));
    const double res = (p.mean - r.a * x - r.alpha_inf) / p.stderr_mean;
    r.chi2 += res * res;
  }
  double var_a = 1.0 / sxx;
  double var_alpha = 1.0 / sw + xbar * xbar / sxx;
  const double dof = static_cast<double>(r.n_points - 2);
  if (options.scale_by_chi2) {
    const double factor = r.chi2 / dof;
    var_a *= factor;
    var_alpha *= factor;
    r.chi2_scaled = true;
  }
  r.se_a = std::sqrt(var_a);
  r.se_alpha = std::sqrt(var_alpha);
  r.quantile_used = t_quantile(options.confidence, dof);
  r.ci99_lo = r.alpha_inf - r.quantile_used * r.se_alpha;
  r.ci99_hi = r.alpha_inf + r.quantile_used * r.se_alpha;
  r.fixed_lo = r.alpha_inf - options.fixed_quantile * r.se_alpha;
  r.fixed_hi = r.alpha_inf + options.fixed_quantile * r.se_alpha;
  return r;
}

/// Fit points for one degree, ordered by N.
inline std::vector<FitPoint> fit_points(const std::vector<SampleSummary>& summaries,
                                        unsigned degree) {
  std::vector<FitPoint> out;
  for (const SampleSummary& s : summaries) {
    if (s.degree == degree) out.push_back({s.n_vertices, s.mean, s.stderr_mean});
  }
  return out;
}

}  // namespace indset
