#pragma once

// Discrete power-law fitting of degree distributions: maximum-likelihood
// scaling exponent for every candidate lower bound, lower bound chosen by
// minimum Kolmogorov-Smirnov distance, and a semi-parametric bootstrap
// goodness-of-fit p-value.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "linkbounds/corpus.hpp"
#include "linkbounds/csv.hpp"
#include "linkbounds/error.hpp"
#include "linkbounds/graph.hpp"
#include "linkbounds/hurwitz_zeta.hpp"
#include "linkbounds/parallel.hpp"
#include "linkbounds/windowing.hpp"

namespace linkbounds {

/// Positive integer observations (node degrees).
struct DegreeSample {
  std::vector<std::uint64_t> values;
  std::optional<Window> window;
  std::size_t excluded_isolated = 0;  // degree-0 nodes left out

  std::size_t size() const noexcept { return values.size(); }

  static DegreeSample of(std::vector<std::uint64_t> values) {
    for (auto v : values)
      if (v < 1) throw Error("degree sample values must be >= 1");
    DegreeSample s;
    s.values = std::move(values);
    return s;
  }
};

struct PowerLawFit {
  double alpha = 0.0;
  double alpha_closed_form = 0.0;
  std::uint64_t xmin = 1;
  double ks = 0.0;
  std::size_t n = 0;
  std::size_t n_tail = 0;
  double tail_ratio = 0.0;
  std::optional<double> p_value;

  bool significant() const noexcept { return p_value && *p_value >= 0.1; }
};

struct FitOptions {
  std::size_t min_tail = 10;
};

/// Result for one candidate lower bound.
struct XminCandidate {
  std::uint64_t xmin = 1;
  std::size_t n_tail = 0;
  double alpha = 0.0;
  double ks = 0.0;
};

inline DegreeSample degree_sequence(const CoauthorGraph& g) {
  DegreeSample s;
  s.window = g.window();
  for (NodeId v = 0; v < g.node_count(); ++v) {
    auto d = g.degree(v);
    if (d == 0)
      ++s.excluded_isolated;
    else
      s.values.push_back(d);
  }
  if (s.values.empty()) throw Error("graph has no node with positive degree");
  return s;
}

/// Approximate discrete MLE, 1 + n / sum ln(x / (xmin - 1/2)).
inline double alpha_closed_form(const std::vector<std::uint64_t>& tail, std::uint64_t xmin) {
  double sum = 0.0;
  for (auto x : tail) sum += std::log(static_cast<double>(x) / (static_cast<double>(xmin) - 0.5));
  return 1.0 + static_cast<double>(tail.size()) / sum;
}

namespace detail {

// Sorted sample compressed into distinct values with suffix aggregates.
struct DistinctValues {
  std::vector<std::uint64_t> value;
  std::vector<std::size_t> count;
  std::vector<std::size_t> tail_count;  // observations >= value[i]
  std::vector<double> tail_log_sum;     // sum of ln x over those observations

  explicit DistinctValues(std::vector<std::uint64_t> sorted) {
    for (std::size_t i = 0; i < sorted.size();) {
      std::size_t j = i;
      while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
      value.push_back(sorted[i]);
      count.push_back(j - i);
      i = j;
    }
    const std::size_t m = value.size();
    tail_count.assign(m + 1, 0);
    tail_log_sum.assign(m + 1, 0.0);
    for (std::size_t i = m; i-- > 0;) {
      tail_count[i] = tail_count[i + 1] + count[i];
      tail_log_sum[i] =
          tail_log_sum[i + 1] + static_cast<double>(count[i]) * std::log(static_cast<double>(value[i]));
    }
  }
};

// Solves E[ln X] = mean_log for the discrete power law on x >= xmin, i.e.
// the likelihood equation -zeta'(a, xmin) / zeta(a, xmin) = mean_log. The
// left side decreases strictly from +inf (a -> 1) to ln xmin (a -> inf).
inline double solve_alpha(std::uint64_t xmin, double mean_log, double start) {
  const double q = static_cast<double>(xmin);
  auto h = [&](double a) {
    auto z = hurwitz_zeta_with_derivative(a, q);
    return -z.ds / z.value - mean_log;
  };
  constexpr double kMinAlpha = 1.0 + 1e-9;
  constexpr double kMaxAlpha = 1e3;
  double x0 = std::clamp(std::isfinite(start) ? start : 2.0, kMinAlpha, kMaxAlpha);
  double h0 = h(x0);
  double lo, hi, hlo, hhi;
  if (h0 > 0) {
    lo = x0, hlo = h0;
    double step = 0.25;
    hi = x0 + step, hhi = h(hi);
    while (hhi > 0) {
      lo = hi, hlo = hhi;
      step *= 2;
      hi = hi + step;
      if (hi > kMaxAlpha) throw Error("power-law exponent diverges (degenerate tail)");
      hhi = h(hi);
    }
  } else {
    hi = x0, hhi = h0;
    lo = 1.0 + (x0 - 1.0) / 2, hlo = h(lo);
    while (hlo <= 0) {
      hi = lo, hhi = hlo;
      lo = 1.0 + (lo - 1.0) / 2;
      if (lo < kMinAlpha) return kMinAlpha;
      hlo = h(lo);
    }
  }
  if (hlo == 0) return lo;
  if (hhi == 0) return hi;
  // Safeguarded secant (falls back to bisection when the step leaves the bracket).
  double a = lo, fa = hlo, b = hi, fb = hhi;
  for (int iter = 0; iter < 200; ++iter) {
    double x = b - fb * (b - a) / (fb - fa);
    if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
    double fx = h(x);
    if (fx > 0)
      lo = x;
    else
      hi = x;
    a = b, fa = fb;
    b = x, fb = fx;
    if (fx == 0 || hi - lo < 1e-12 * x || std::abs(b - a) < 1e-13 * x) return x;
  }
  return 0.5 * (lo + hi);
}

// Exact supremum over integers x >= xmin of |empirical CDF - fitted CDF|.
inline double ks_distance(const DistinctValues& d, std::size_t first, double alpha) {
  const double n_tail = static_cast<double>(d.tail_count[first]);
  const double z0 = hurwitz_zeta(alpha, static_cast<double>(d.value[first]));
  double zx = z0;  // zeta(alpha, value[j])
  double cum = 0.0;
  double ks = 0.0;
  for (std::size_t j = first; j < d.value.size(); ++j) {
    const double x = static_cast<double>(d.value[j]);
    if (j > first) {
      if (d.value[j] != d.value[j - 1] + 1) zx = hurwitz_zeta(alpha, x);
    }
    // Just below x the empirical CDF still equals cum / n_tail.
    ks = std::max(ks, std::abs(cum / n_tail - (1.0 - zx / z0)));
    cum += static_cast<double>(d.count[j]);
    zx -= std::pow(x, -alpha);
    ks = std::max(ks, std::abs(cum / n_tail - (1.0 - zx / z0)));
  }
  return ks;
}

inline std::vector<XminCandidate> scan(const DistinctValues& d, const FitOptions& opts,
                                       std::vector<std::size_t>* index_out = nullptr) {
  std::vector<XminCandidate> out;
  for (std::size_t i = 0; i < d.value.size(); ++i) {
    const std::size_t n_tail = d.tail_count[i];
    if (n_tail < opts.min_tail) break;
    if (i + 1 == d.value.size()) break;  // constant tail: exponent unbounded
    const double xmin = static_cast<double>(d.value[i]);
    const double mean_log = d.tail_log_sum[i] / static_cast<double>(n_tail);
    const double approx =
        1.0 + 1.0 / (mean_log - std::log(xmin - 0.5));
    double alpha;
    try {
      alpha = solve_alpha(d.value[i], mean_log, approx);
    } catch (const Error&) {
      continue;
    }
    out.push_back({d.value[i], n_tail, alpha, ks_distance(d, i, alpha)});
    if (index_out) index_out->push_back(i);
  }
  return out;
}

inline std::vector<std::uint64_t> sorted_copy(const DegreeSample& sample) {
  auto v = sample.values;
  for (auto x : v)
    if (x < 1) throw Error("degree sample values must be >= 1");
  std::sort(v.begin(), v.end());
  return v;
}

inline PowerLawFit fit_sorted(std::vector<std::uint64_t> sorted, const FitOptions& opts) {
  if (opts.min_tail < 2) throw ConfigError("minimum tail size must be at least 2");
  const std::size_t n = sorted.size();
  if (n < opts.min_tail) throw Error("insufficient tail");
  DistinctValues d(std::move(sorted));
  std::vector<std::size_t> index;
  auto candidates = scan(d, opts, &index);
  if (candidates.empty()) {
    if (d.tail_count[0] >= opts.min_tail && d.value.size() == 1)
      throw Error("degenerate sample: all values are equal");
    throw Error("insufficient tail");
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < candidates.size(); ++i)
    if (candidates[i].ks < candidates[best].ks) best = i;
  const auto& c = candidates[best];
  PowerLawFit fit;
  fit.alpha = c.alpha;
  fit.xmin = c.xmin;
  fit.ks = c.ks;
  fit.n = n;
  fit.n_tail = c.n_tail;
  fit.tail_ratio = static_cast<double>(c.n_tail) / static_cast<double>(n);
  const std::size_t i = index[best];
  fit.alpha_closed_form =
      1.0 + static_cast<double>(c.n_tail) /
                (d.tail_log_sum[i] - static_cast<double>(c.n_tail) *
                                         std::log(static_cast<double>(c.xmin) - 0.5));
  return fit;
}

inline std::mt19937_64 derived_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace detail

/// Maximum-likelihood exponent for the tail {x >= xmin} of a fixed lower bound.
inline double fit_alpha(const std::vector<std::uint64_t>& tail, std::uint64_t xmin) {
  if (tail.size() < 2) throw Error("insufficient tail");
  double sum = 0.0;
  bool spread = false;
  for (auto x : tail) {
    if (x < xmin) throw Error("tail value below xmin");
    spread |= x != xmin;
    sum += std::log(static_cast<double>(x));
  }
  if (!spread) throw Error("degenerate sample: all values are equal");
  return detail::solve_alpha(xmin, sum / static_cast<double>(tail.size()),
                             alpha_closed_form(tail, xmin));
}

/// Every candidate lower bound (distinct observed values with at least
/// opts.min_tail observations at or above them), in increasing order.
inline std::vector<XminCandidate> scan_xmin(const DegreeSample& sample, const FitOptions& opts = {}) {
  detail::DistinctValues d(detail::sorted_copy(sample));
  return detail::scan(d, opts);
}

/// Fits alpha at every candidate xmin and keeps the xmin with the smallest
/// KS distance. p_value is left empty.
inline PowerLawFit fit_discrete(const DegreeSample& sample, const FitOptions& opts = {}) {
  return detail::fit_sorted(detail::sorted_copy(sample), opts);
}

/// Inverse-CDF sampler for P(X = x) = x^-alpha / zeta(alpha, xmin), x >= xmin.
class ZetaSampler {
 public:
  ZetaSampler(double alpha, std::uint64_t xmin) : alpha_(alpha), xmin_(xmin) {
    if (!(alpha > 1.0) || !std::isfinite(alpha)) throw ConfigError("alpha must be > 1");
    if (xmin < 1) throw ConfigError("xmin must be >= 1");
    z0_ = hurwitz_zeta(alpha, static_cast<double>(xmin));
    // ccdf_[t] = P(X >= xmin + t), re-anchored every 256 steps.
    double z = z0_;
    for (std::size_t t = 0; t < kTableSize; ++t) {
      const double x = static_cast<double>(xmin + t);
      if (t % 256 == 0 && t > 0) z = hurwitz_zeta(alpha, x);
      ccdf_.push_back(z / z0_);
      if (ccdf_.back() < 1e-12) break;
      z -= std::pow(x, -alpha);
    }
  }

  template <typename Rng>
  std::uint64_t operator()(Rng& rng) const {
    const double u = 1.0 - std::uniform_real_distribution<double>(0.0, 1.0)(rng);  // (0, 1]
    // Largest x with P(X >= x) >= u.
    auto it = std::upper_bound(ccdf_.begin(), ccdf_.end(), u,
                               [](double a, double b) { return a > b; });
    if (it != ccdf_.end()) return xmin_ + static_cast<std::uint64_t>(it - ccdf_.begin()) - 1;
    return beyond_table(u);
  }

  double alpha() const noexcept { return alpha_; }
  std::uint64_t xmin() const noexcept { return xmin_; }

 private:
  static constexpr std::size_t kTableSize = std::size_t{1} << 16;

  double ccdf(std::uint64_t x) const { return hurwitz_zeta(alpha_, static_cast<double>(x)) / z0_; }

  std::uint64_t beyond_table(double u) const {
    std::uint64_t lo = xmin_ + ccdf_.size() - 1;  // ccdf(lo) >= u
    std::uint64_t hi = lo;
    while (ccdf(hi) >= u) {
      lo = hi;
      if (hi > (std::uint64_t{1} << 62)) return hi;
      hi *= 2;
    }
    while (hi - lo > 1) {
      std::uint64_t mid = lo + (hi - lo) / 2;
      (ccdf(mid) >= u ? lo : hi) = mid;
    }
    return lo;
  }

  double alpha_;
  std::uint64_t xmin_;
  double z0_ = 1.0;
  std::vector<double> ccdf_;
};

/// n i.i.d. draws from the discrete power law, reproducible per seed.
inline DegreeSample sample_zeta(double alpha, std::uint64_t xmin, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw ConfigError("sample size must be positive");
  ZetaSampler draw(alpha, xmin);
  auto rng = detail::derived_rng(seed, 0);
  DegreeSample s;
  s.values.reserve(n);
  for (std::size_t i = 0; i < n; ++i) s.values.push_back(draw(rng));
  return s;
}

/// Semi-parametric bootstrap p-value: each replicate redraws every point
/// from the fitted power law with probability n_tail/n, otherwise from the
/// observed values below xmin, refits from scratch, and is counted when its
/// KS distance is at least the observed one. Replicates whose refit fails
/// are left out. Absent when n_boot is 0.
inline std::optional<double> gof_pvalue(const DegreeSample& sample, const PowerLawFit& fit,
                                        std::size_t n_boot, std::uint64_t seed,
                                        const FitOptions& opts = {}, unsigned jobs = 1) {
  if (n_boot == 0) return std::nullopt;
  if (n_boot < 100) throw ConfigError("n_boot must be 0 or at least 100");
  auto sorted = detail::sorted_copy(sample);
  std::vector<std::uint64_t> head(sorted.begin(),
                                  std::lower_bound(sorted.begin(), sorted.end(), fit.xmin));
  const std::size_t n = sorted.size();
  const double p_tail = head.empty() ? 1.0 : static_cast<double>(n - head.size()) / static_cast<double>(n);
  ZetaSampler draw(fit.alpha, fit.xmin);

  auto outcomes = parallel_map(n_boot, jobs, [&](std::size_t b) -> int {
    auto rng = detail::derived_rng(seed, b + 1);
    std::binomial_distribution<std::size_t> split(n, p_tail);
    const std::size_t n_tail = split(rng);
    std::vector<std::uint64_t> synthetic;
    synthetic.reserve(n);
    if (!head.empty()) {
      std::uniform_int_distribution<std::size_t> pick(0, head.size() - 1);
      for (std::size_t i = n_tail; i < n; ++i) synthetic.push_back(head[pick(rng)]);
    }
    for (std::size_t i = 0; i < n_tail; ++i) synthetic.push_back(draw(rng));
    std::sort(synthetic.begin(), synthetic.end());
    try {
      return detail::fit_sorted(std::move(synthetic), opts).ks >= fit.ks ? 1 : 0;
    } catch (const Error&) {
      return -1;
    }
  });
  std::size_t valid = 0, worse = 0;
  for (int o : outcomes) {
    if (o < 0) continue;
    ++valid;
    worse += static_cast<std::size_t>(o);
  }
  if (valid == 0) return std::nullopt;
  return static_cast<double>(worse) / static_cast<double>(valid);
}

struct WindowFit {
  Window window;
  std::size_t nodes = 0;
  std::size_t excluded_isolated = 0;
  std::optional<PowerLawFit> fit;
  std::string error;  // set when fit is absent
  std::vector<std::pair<std::uint64_t, double>> ccdf;  // (x, fraction of nodes with degree >= x)
};

/// Empirical CCDF at each distinct value.
inline std::vector<std::pair<std::uint64_t, double>> empirical_ccdf(const DegreeSample& sample) {
  auto sorted = detail::sorted_copy(sample);
  std::vector<std::pair<std::uint64_t, double>> out;
  const double n = static_cast<double>(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i)
    if (i == 0 || sorted[i] != sorted[i - 1])
      out.emplace_back(sorted[i], static_cast<double>(sorted.size() - i) / n);
  return out;
}

/// One fit per window. Failed fits are recorded, not thrown. Window i uses
/// bootstrap seed stream derived from (seed, i).
inline std::vector<WindowFit> powerlaw_over_windows(const Corpus& corpus,
                                                    const std::vector<Window>& windows,
                                                    std::size_t n_boot, std::uint64_t seed,
                                                    const FitOptions& opts = {},
                                                    bool include_solo_authors = true,
                                                    unsigned jobs = 1) {
  std::vector<WindowFit> out;
  for (std::size_t i = 0; i < windows.size(); ++i) {
    WindowFit row{windows[i], 0, 0, std::nullopt, {}, {}};
    auto g = build_graph(corpus, windows[i], include_solo_authors);
    row.nodes = g.node_count();
    try {
      auto sample = degree_sequence(g);
      row.excluded_isolated = sample.excluded_isolated;
      row.ccdf = empirical_ccdf(sample);
      auto fit = fit_discrete(sample, opts);
      fit.p_value = gof_pvalue(sample, fit, n_boot, detail::derived_rng(seed, i)(), opts, jobs);
      row.fit = fit;
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      row.error = e.what();
    }
    out.push_back(std::move(row));
  }
  return out;
}

/// `window_start,window_end,alpha,xmin,ks,n,n_tail,tail_ratio,p_value,significant`
inline void write_powerlaw_csv(std::ostream& out, const std::vector<WindowFit>& rows) {
  out << "window_start,window_end,alpha,xmin,ks,n,n_tail,tail_ratio,p_value,significant\n";
  for (const auto& r : rows) {
    out << r.window.start_year() << ',' << r.window.end_year() << ',';
    if (!r.fit) {
      out << ",,,,,,,\n";
      continue;
    }
    const auto& f = *r.fit;
    out << csv::fixed(f.alpha, 6) << ',' << f.xmin << ',' << csv::fixed(f.ks, 6) << ',' << f.n
        << ',' << f.n_tail << ',' << csv::fixed(f.tail_ratio, 8) << ','
        << csv::fixed(f.p_value, 4) << ',' << (f.p_value ? (f.significant() ? "true" : "false") : "")
        << '\n';
  }
}

/// `window_start,window_end,x,ccdf`
inline void write_ccdf_csv(std::ostream& out, const std::vector<WindowFit>& rows) {
  out << "window_start,window_end,x,ccdf\n";
  for (const auto& r : rows)
    for (const auto& [x, c] : r.ccdf)
      out << r.window.start_year() << ',' << r.window.end_year() << ',' << x << ','
          << csv::significant(c, 9) << '\n';
}

}  // namespace linkbounds
