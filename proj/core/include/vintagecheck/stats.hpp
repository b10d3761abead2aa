#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

// Numeric primitives behind the test battery. Inputs never contain missing
// cells; callers drop those first (see drop_missing). Every function is pure
// and thread-safe.
namespace vintagecheck::stats {

// std::nullopt is the UNDEFINED outcome. It is never encoded as a number.
using MetricValue = std::optional<double>;

struct SummaryStats {
  double min = 0.0;
  double max = 0.0;
  double sum = 0.0;
  double mean = 0.0;
  double median = 0.0;

  friend bool operator==(const SummaryStats&, const SummaryStats&) = default;
};

// std::nullopt for an empty vector (no data).
std::optional<SummaryStats> summary_stats(std::span<const double> x);

// 1 when both are zero, UNDEFINED when exactly one is zero, otherwise
// m_old / m_new.
MetricValue magnitude_ratio(double m_old, double m_new);

struct MreResult {
  MetricValue value;             // UNDEFINED when every x_old is zero
  std::size_t used = 0;          // positions with x_old != 0
  std::size_t zero_skipped = 0;  // positions with x_old == 0
};

// Mean of |(x_old - x_new) / x_old| over positions with x_old != 0.
// Throws std::invalid_argument on length mismatch.
MreResult mean_relative_error(std::span<const double> x_old,
                              std::span<const double> x_new);

struct CorrelationResult {
  MetricValue value;  // UNDEFINED for n < 2 or a constant input
  std::size_t n = 0;
};

CorrelationResult pearson(std::span<const double> x, std::span<const double> y);

// Pearson coefficient of the average ranks.
CorrelationResult spearman(std::span<const double> x,
                           std::span<const double> y);

// 1-based ranks, ties receive the mean of the positions they span.
std::vector<double> average_ranks(std::span<const double> x);

// Asymptotic Kolmogorov survival function
//   Q(lambda) = 2 * sum_{k>=1} (-1)^(k-1) exp(-2 k^2 lambda^2),
// summed until a term drops below 1e-12 and clamped to [0, 1]. Q(0) = 1.
double kolmogorov_q(double lambda);

struct KsResult {
  double statistic = 0.0;  // D
  double p_value = 1.0;    // S
  std::size_t n_x = 0;
  std::size_t n_y = 0;
};

// Two-sample test; std::nullopt when either sample is empty.
std::optional<KsResult> ks_two_sample(std::span<const double> x,
                                      std::span<const double> y);

}  // namespace vintagecheck::stats
