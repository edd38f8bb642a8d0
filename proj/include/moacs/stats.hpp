// SPDX-FileCopyrightText: Copyright (c) 2026 The moacs-vmc Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef MOACS_STATS_HPP
#define MOACS_STATS_HPP

#include <cstddef>
#include <span>

namespace moacs {

/// Largest sample (after dropping zero differences) for which the exact
/// null distribution is computed.
inline constexpr std::size_t kWilcoxonExactLimit = 25;

struct WilcoxonResult {
  double w_plus = 0.0;
  double w_minus = 0.0;
  double statistic = 0.0;  // w_plus - w_minus; flips sign when a and b swap
  double p_value = 1.0;    // two-sided
  std::size_t n = 0;       // non-zero differences
  bool exact = true;
};

/// Wilcoxon signed-rank test on paired samples. Zero differences are dropped
/// and tied magnitudes share their average rank. For n <= 25 the p-value is
/// exact over all 2^n sign assignments; above that a normal approximation
/// with tie and continuity correction is used. Throws DomainError on length
/// mismatch and DegenerateSampleError when every difference is zero.
WilcoxonResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b);

/// Same test, forcing the normal approximation.
WilcoxonResult wilcoxon_signed_rank_normal(std::span<const double> a, std::span<const double> b);

/// Median (mean of the two central order statistics for even sizes).
double median(std::span<const double> values);

/// Sample standard deviation (n - 1 denominator); 0 for fewer than two values.
double sample_sd(std::span<const double> values);

/// released / total_pms. Throws DomainError unless 0 <= released <= total_pms
/// and total_pms > 0.
double packing_efficiency(double released, std::size_t total_pms);

}  // namespace moacs

#endif  // MOACS_STATS_HPP
