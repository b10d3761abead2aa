#include "vintagecheck/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace vintagecheck::stats {
namespace {

// Neumaier compensated summation.
double accurate_sum(std::span<const double> x) {
  double sum = 0.0;
  double comp = 0.0;
  for (double v : x) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      comp += (sum - t) + v;
    } else {
      comp += (v - t) + sum;
    }
    sum = t;
  }
  return sum + comp;
}

void require_same_length(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("paired vectors differ in length");
  }
}

}  // namespace

std::optional<SummaryStats> summary_stats(std::span<const double> x) {
  if (x.empty()) return std::nullopt;
  std::vector<double> sorted(x.begin(), x.end());
  std::sort(sorted.begin(), sorted.end());
  SummaryStats s;
  s.min = sorted.front();
  s.max = sorted.back();
  s.sum = accurate_sum(sorted);
  s.mean = std::clamp(s.sum / static_cast<double>(sorted.size()), s.min, s.max);
  const std::size_t n = sorted.size();
  if (n % 2 == 1) {
    s.median = sorted[n / 2];
  } else {
    // Halve first so the midpoint cannot overflow.
    s.median = sorted[n / 2 - 1] / 2.0 + sorted[n / 2] / 2.0;
  }
  return s;
}

MetricValue magnitude_ratio(double m_old, double m_new) {
  const bool old_zero = m_old == 0.0;
  const bool new_zero = m_new == 0.0;
  if (old_zero && new_zero) return 1.0;
  if (old_zero || new_zero) return std::nullopt;
  return m_old / m_new;
}

MreResult mean_relative_error(std::span<const double> x_old,
                              std::span<const double> x_new) {
  require_same_length(x_old, x_new);
  MreResult r;
  double sum = 0.0;
  for (std::size_t i = 0; i < x_old.size(); ++i) {
    if (x_old[i] == 0.0) {
      ++r.zero_skipped;
      continue;
    }
    sum += std::abs((x_old[i] - x_new[i]) / x_old[i]);
    ++r.used;
  }
  if (r.used > 0) r.value = sum / static_cast<double>(r.used);
  return r;
}

CorrelationResult pearson(std::span<const double> x, std::span<const double> y) {
  require_same_length(x, y);
  CorrelationResult r;
  r.n = x.size();
  if (r.n < 2) return r;
  const double n = static_cast<double>(r.n);
  const double mx = accurate_sum(x) / n;
  const double my = accurate_sum(y) / n;
  double sxx = 0.0;
  double syy = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < r.n; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return r;
  // sqrt(sxx * syy) is exact for x == y, giving r = 1 exactly; the split
  // form only guards against overflow or underflow of the product.
  double denom = std::sqrt(sxx * syy);
  if (!std::isfinite(denom) || denom == 0.0) {
    denom = std::sqrt(sxx) * std::sqrt(syy);
  }
  r.value = std::clamp(sxy / denom, -1.0, 1.0);
  return r;
}

std::vector<double> average_ranks(std::span<const double> x) {
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> ranks(x.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i + 1;
    while (j < order.size() && x[order[j]] == x[order[i]]) ++j;
    // Positions i..j-1 (0-based) share ranks i+1..j.
    const double rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = rank;
    i = j;
  }
  return ranks;
}

CorrelationResult spearman(std::span<const double> x,
                           std::span<const double> y) {
  require_same_length(x, y);
  if (x.size() < 2) return CorrelationResult{std::nullopt, x.size()};
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  return pearson(rx, ry);
}

double kolmogorov_q(double lambda) {
  if (!(lambda > 0.0)) return 1.0;
  constexpr double kTermTol = 1e-12;
  constexpr int kMaxTerms = 1'000'000;
  const double a = -2.0 * lambda * lambda;
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= kMaxTerms; ++k) {
    const double term = std::exp(a * static_cast<double>(k) * k);
    sum += sign * term;
    if (term < kTermTol) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

std::optional<KsResult> ks_two_sample(std::span<const double> x,
                                      std::span<const double> y) {
  if (x.empty() || y.empty()) return std::nullopt;
  std::vector<double> a(x.begin(), x.end());
  std::vector<double> b(y.begin(), y.end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());

  // Walk the pooled sorted values; at each distinct value advance past every
  // copy in both samples, then compare the right-continuous ECDFs.
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == v) ++i;
    while (j < b.size() && b[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na -
                             static_cast<double>(j) / nb));
  }
  // Once one sample is exhausted its ECDF is 1; the largest remaining gap is
  // at the current position.
  d = std::max(d, std::abs(static_cast<double>(i) / na -
                           static_cast<double>(j) / nb));

  KsResult r;
  r.statistic = d;
  r.n_x = a.size();
  r.n_y = b.size();
  r.p_value = kolmogorov_q(d * std::sqrt(na * nb / (na + nb)));
  return r;
}

}  // namespace vintagecheck::stats
