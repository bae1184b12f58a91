#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace coocnet {

enum class TestMethod { kWilcoxon, kMannWhitney };
enum class TestMode { kExact, kNormalApproximation };

// kAuto picks exact enumeration below the size thresholds and the normal
// approximation above them.
enum class ModeSelection { kAuto, kExact, kNormal };

std::string_view test_method_name(TestMethod method);
std::string_view test_mode_name(TestMode mode);

struct TestResult {
  double statistic = 0.0;
  double p_value = 1.0;  // in (0, 1]
  TestMethod method = TestMethod::kWilcoxon;
  TestMode mode = TestMode::kExact;
};

// Largest number of nonzero differences handled exactly under kAuto.
inline constexpr std::size_t kWilcoxonExactMax = 20;
// Largest number of group assignments, C(|a|+|b|, |a|), handled exactly.
inline constexpr double kMannWhitneyExactMax = 1e5;

// Paired test on d = x - y. Zero differences are dropped and tied |d| get
// midranks. Statistic W = min(W+, W-). Two-sided p is
// min(1, 2 * min(P(T <= t), P(T >= t))) with T the null distribution of W+.
// The normal approximation applies tie and continuity corrections.
// Throws DegenerateDataError when every difference is zero, and
// InvalidArgumentError on empty input.
TestResult wilcoxon_signed_rank(std::span<const std::pair<double, double>> pairs,
                                ModeSelection selection = ModeSelection::kAuto);

// Independent two-sample rank test with midranks for ties. Statistic
// U = min(U_a, U_b); the two-sided p is defined like the Wilcoxon one over
// the null distribution of U_a. Throws InvalidArgumentError on an empty sample.
TestResult mann_whitney_u(std::span<const double> a, std::span<const double> b,
                          ModeSelection selection = ModeSelection::kAuto);

// 1-based ranks, ties receive the average of the ranks they span.
std::vector<double> midranks(std::span<const double> values);

// Linear-interpolation quantile of already sorted data (q in [0, 1]).
double quantile_sorted(std::span<const double> sorted, double q);

// Box-plot statistics; outliers lie beyond 1.5 IQR from the quartiles.
struct BoxSummary {
  std::size_t n = 0;
  double mean = 0.0;
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
  double whisker_low = 0.0;
  double whisker_high = 0.0;
  std::size_t outliers = 0;
};

// Throws InvalidArgumentError on empty input.
BoxSummary summarize(std::span<const double> values);

}  // namespace coocnet
