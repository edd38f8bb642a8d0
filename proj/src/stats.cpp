// SPDX-FileCopyrightText: Copyright (c) 2026 The moacs-vmc Authors
// SPDX-License-Identifier: Apache-2.0

#include "moacs/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "moacs/errors.hpp"

namespace moacs {

namespace {

struct SignedRanks {
  std::vector<std::int64_t> doubled_ranks;  // 2 * rank, so half ranks stay integral
  std::vector<bool> positive;
  double tie_correction = 0.0;  // sum of t^3 - t over tie groups
};

SignedRanks rank_differences(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DomainError("wilcoxon samples must have equal length");
  std::vector<double> diff;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    if (d != 0.0) diff.push_back(d);
  }
  if (diff.empty()) throw DegenerateSampleError("all paired differences are zero");

  std::vector<std::size_t> order(diff.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return std::abs(diff[x]) < std::abs(diff[y]); });

  SignedRanks out;
  out.doubled_ranks.assign(diff.size(), 0);
  out.positive.assign(diff.size(), false);
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && std::abs(diff[order[j + 1]]) == std::abs(diff[order[i]])) ++j;
    // Ranks i+1 .. j+1 averaged, doubled: (i+1) + (j+1).
    const auto doubled = static_cast<std::int64_t>(i + j + 2);
    for (std::size_t k = i; k <= j; ++k) out.doubled_ranks[order[k]] = doubled;
    const double t = static_cast<double>(j - i + 1);
    out.tie_correction += t * t * t - t;
    i = j + 1;
  }
  for (std::size_t i = 0; i < diff.size(); ++i) out.positive[i] = diff[i] > 0.0;
  return out;
}

WilcoxonResult base_result(const SignedRanks& r) {
  WilcoxonResult res;
  res.n = r.doubled_ranks.size();
  for (std::size_t i = 0; i < res.n; ++i) {
    const double rank = 0.5 * static_cast<double>(r.doubled_ranks[i]);
    (r.positive[i] ? res.w_plus : res.w_minus) += rank;
  }
  res.statistic = res.w_plus - res.w_minus;
  return res;
}

double normal_p(const SignedRanks& r, double w_plus) {
  const double n = static_cast<double>(r.doubled_ranks.size());
  const double mean = n * (n + 1.0) / 4.0;
  const double var = n * (n + 1.0) * (2.0 * n + 1.0) / 24.0 - r.tie_correction / 48.0;
  if (!(var > 0.0)) return 1.0;
  const double z = std::max(0.0, std::abs(w_plus - mean) - 0.5) / std::sqrt(var);
  return std::min(1.0, std::erfc(z / std::sqrt(2.0)));
}

}  // namespace

WilcoxonResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b) {
  const SignedRanks r = rank_differences(a, b);
  WilcoxonResult res = base_result(r);
  if (res.n > kWilcoxonExactLimit) {
    res.exact = false;
    res.p_value = normal_p(r, res.w_plus);
    return res;
  }

  // Null distribution of 2*W+ by dynamic programming over the sign of each
  // rank; count[s] is the number of the 2^n sign assignments with sum s.
  const std::int64_t total =
      std::accumulate(r.doubled_ranks.begin(), r.doubled_ranks.end(), std::int64_t{0});
  std::vector<std::uint64_t> count(static_cast<std::size_t>(total) + 1, 0);
  count[0] = 1;
  std::int64_t reach = 0;
  for (std::int64_t rank : r.doubled_ranks) {
    for (std::int64_t s = reach; s >= 0; --s) {
      if (count[static_cast<std::size_t>(s)] != 0) {
        count[static_cast<std::size_t>(s + rank)] += count[static_cast<std::size_t>(s)];
      }
    }
    reach += rank;
  }

  std::int64_t observed = 0;
  for (std::size_t i = 0; i < res.n; ++i) {
    if (r.positive[i]) observed += r.doubled_ranks[i];
  }
  std::uint64_t le = 0;
  std::uint64_t ge = 0;
  for (std::int64_t s = 0; s <= total; ++s) {
    const auto c = count[static_cast<std::size_t>(s)];
    if (s <= observed) le += c;
    if (s >= observed) ge += c;
  }
  const double assignments = std::ldexp(1.0, static_cast<int>(res.n));
  res.p_value = std::min(1.0, 2.0 * static_cast<double>(std::min(le, ge)) / assignments);
  return res;
}

WilcoxonResult wilcoxon_signed_rank_normal(std::span<const double> a,
                                           std::span<const double> b) {
  const SignedRanks r = rank_differences(a, b);
  WilcoxonResult res = base_result(r);
  res.exact = false;
  res.p_value = normal_p(r, res.w_plus);
  return res;
}

double median(std::span<const double> values) {
  if (values.empty()) throw DomainError("median of an empty sample");
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double sample_sd(std::span<const double> values) {
  if (values.size() < 2) return 0.0;
  const double mean =
      std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
  double ss = 0.0;
  for (double x : values) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

double packing_efficiency(double released, std::size_t total_pms) {
  if (total_pms == 0) throw DomainError("packing efficiency needs total_pms > 0");
  if (!(released >= 0.0 && released <= static_cast<double>(total_pms))) {
    throw DomainError("released PM count out of range");
  }
  return released / static_cast<double>(total_pms);
}

}  // namespace moacs
