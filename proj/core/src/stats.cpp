#include "coocnet/stats.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numeric>

#include "coocnet/error.hpp"

namespace coocnet {

std::string_view test_method_name(TestMethod method) {
  return method == TestMethod::kWilcoxon ? "wilcoxon" : "mann-whitney";
}

std::string_view test_mode_name(TestMode mode) {
  return mode == TestMode::kExact ? "exact" : "normal-approximation";
}

std::vector<double> midranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j < order.size() && values[order[j]] == values[order[i]]) ++j;
    const double rank = static_cast<double>(i + j + 1) / 2.0;
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = rank;
    i = j;
  }
  return ranks;
}

namespace {

// Sum of t^3 - t over tie groups.
double tie_term(std::span<const double> values) {
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  double sum = 0.0;
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    const auto t = static_cast<double>(j - i);
    sum += t * t * t - t;
    i = j;
  }
  return sum;
}

double clamp_p(double p) {
  if (!(p > 0.0)) return DBL_MIN;
  return std::min(p, 1.0);
}

// Two-sided p from a normal approximation with continuity correction.
double normal_two_sided(double stat, double mean, double variance) {
  if (!(variance > 0.0)) return 1.0;
  const double z = std::max(0.0, std::abs(stat - mean) - 0.5) / std::sqrt(variance);
  return clamp_p(std::erfc(z / std::sqrt(2.0)));
}

// Two-sided p from a discrete null distribution given as counts per value.
double exact_two_sided(const std::vector<double>& counts, std::size_t observed) {
  double total = 0.0, low = 0.0, high = 0.0;
  for (std::size_t s = 0; s < counts.size(); ++s) {
    total += counts[s];
    if (s <= observed) low += counts[s];
    if (s >= observed) high += counts[s];
  }
  return clamp_p(2.0 * std::min(low, high) / total);
}

// Midranks are multiples of 1/2; doubling makes them exact integers.
std::size_t doubled(double rank) { return static_cast<std::size_t>(std::llround(2.0 * rank)); }

double log_choose(double n, double k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

}  // namespace

TestResult wilcoxon_signed_rank(std::span<const std::pair<double, double>> pairs,
                                ModeSelection selection) {
  if (pairs.empty()) throw InvalidArgumentError("wilcoxon_signed_rank needs at least one pair");
  std::vector<double> magnitudes;
  std::vector<bool> positive;
  for (const auto& [x, y] : pairs) {
    const double d = x - y;
    if (d == 0.0) continue;
    magnitudes.push_back(std::abs(d));
    positive.push_back(d > 0.0);
  }
  if (magnitudes.empty()) throw DegenerateDataError("all paired differences are zero");

  const auto ranks = midranks(magnitudes);
  double w_plus = 0.0;
  std::size_t w_plus2 = 0;
  std::size_t total2 = 0;
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    total2 += doubled(ranks[i]);
    if (positive[i]) {
      w_plus += ranks[i];
      w_plus2 += doubled(ranks[i]);
    }
  }
  const double k = static_cast<double>(ranks.size());
  const double w_minus = k * (k + 1.0) / 2.0 - w_plus;

  TestResult result;
  result.method = TestMethod::kWilcoxon;
  result.statistic = std::min(w_plus, w_minus);

  const bool exact = selection == ModeSelection::kExact ||
                     (selection == ModeSelection::kAuto && ranks.size() <= kWilcoxonExactMax);
  if (exact) {
    // counts[s] = number of sign assignments whose doubled W+ equals s.
    std::vector<double> counts(total2 + 1, 0.0);
    counts[0] = 1.0;
    std::size_t reach = 0;
    for (double r : ranks) {
      const std::size_t step = doubled(r);
      for (std::size_t s = reach + 1; s-- > 0;) {
        if (counts[s] != 0.0) counts[s + step] += counts[s];
      }
      reach += step;
    }
    result.mode = TestMode::kExact;
    result.p_value = exact_two_sided(counts, w_plus2);
  } else {
    const double mean = k * (k + 1.0) / 4.0;
    const double variance = k * (k + 1.0) * (2.0 * k + 1.0) / 24.0 - tie_term(magnitudes) / 48.0;
    result.mode = TestMode::kNormalApproximation;
    result.p_value = normal_two_sided(w_plus, mean, variance);
  }
  return result;
}

TestResult mann_whitney_u(std::span<const double> a, std::span<const double> b,
                          ModeSelection selection) {
  if (a.empty() || b.empty()) throw InvalidArgumentError("mann_whitney_u needs two nonempty samples");
  std::vector<double> pooled(a.begin(), a.end());
  pooled.insert(pooled.end(), b.begin(), b.end());
  const auto ranks = midranks(pooled);

  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  double rank_sum_a = 0.0;
  std::size_t rank_sum_a2 = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    rank_sum_a += ranks[i];
    rank_sum_a2 += doubled(ranks[i]);
  }
  const double u_a = rank_sum_a - na * (na + 1.0) / 2.0;

  TestResult result;
  result.method = TestMethod::kMannWhitney;
  result.statistic = std::min(u_a, na * nb - u_a);

  const bool exact =
      selection == ModeSelection::kExact ||
      (selection == ModeSelection::kAuto && log_choose(na + nb, na) <= std::log(kMannWhitneyExactMax) + 1e-9);
  if (exact) {
    // ways[j][s]: subsets of size j with doubled rank sum s.
    const std::size_t take = a.size();
    std::size_t total2 = 0;
    for (double r : ranks) total2 += doubled(r);
    std::vector<std::vector<double>> ways(take + 1, std::vector<double>(total2 + 1, 0.0));
    ways[0][0] = 1.0;
    std::size_t reach = 0;
    for (double r : ranks) {
      const std::size_t step = doubled(r);
      for (std::size_t j = take; j-- > 0;) {
        for (std::size_t s = reach + 1; s-- > 0;) {
          if (ways[j][s] != 0.0) ways[j + 1][s + step] += ways[j][s];
        }
      }
      reach += step;
    }
    result.mode = TestMode::kExact;
    result.p_value = exact_two_sided(ways[take], rank_sum_a2);
  } else {
    const double n = na + nb;
    const double variance = na * nb / 12.0 * ((n + 1.0) - tie_term(pooled) / (n * (n - 1.0)));
    result.mode = TestMode::kNormalApproximation;
    result.p_value = normal_two_sided(u_a, na * nb / 2.0, variance);
  }
  return result;
}

double quantile_sorted(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw InvalidArgumentError("quantile of empty sample");
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + (sorted[hi] - sorted[lo]) * frac;
}

BoxSummary summarize(std::span<const double> values) {
  if (values.empty()) throw InvalidArgumentError("summary of empty sample");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());

  BoxSummary s;
  s.n = sorted.size();
  s.mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / static_cast<double>(s.n);
  s.min = sorted.front();
  s.max = sorted.back();
  s.q1 = quantile_sorted(sorted, 0.25);
  s.median = quantile_sorted(sorted, 0.5);
  s.q3 = quantile_sorted(sorted, 0.75);
  const double iqr = s.q3 - s.q1;
  const double lo_fence = s.q1 - 1.5 * iqr;
  const double hi_fence = s.q3 + 1.5 * iqr;
  s.whisker_low = s.max;
  s.whisker_high = s.min;
  for (double v : sorted) {
    if (v < lo_fence || v > hi_fence) {
      ++s.outliers;
    } else {
      s.whisker_low = std::min(s.whisker_low, v);
      s.whisker_high = std::max(s.whisker_high, v);
    }
  }
  return s;
}

}  // namespace coocnet
