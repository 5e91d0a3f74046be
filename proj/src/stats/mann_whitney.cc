#include "cookiescope/stats/mann_whitney.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "cookiescope/stats/descriptive.h"

namespace cookiescope::stats {

namespace {

constexpr double kTieEps = 1e-9;

struct Ranked {
  std::vector<double> ranks;  // pooled order: a then b
  double tie_term = 0;        // sum of t^3 - t over tie groups
};

Ranked midranks(std::span<const double> a, std::span<const double> b) {
  std::vector<double> pooled(a.begin(), a.end());
  pooled.insert(pooled.end(), b.begin(), b.end());
  std::vector<std::size_t> order(pooled.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return pooled[i] < pooled[j]; });
  Ranked out;
  out.ranks.resize(pooled.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && pooled[order[j + 1]] == pooled[order[i]]) ++j;
    const double rank = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t k = i; k <= j; ++k) out.ranks[order[k]] = rank;
    const double t = static_cast<double>(j - i + 1);
    out.tie_term += t * t * t - t;
    i = j + 1;
  }
  return out;
}

double exact_p(const std::vector<double>& ranks, std::size_t na, double u_obs) {
  const std::size_t n = ranks.size();
  const double m = static_cast<double>(na) * static_cast<double>(n - na) / 2.0;
  const double offset = static_cast<double>(na) * static_cast<double>(na + 1) / 2.0;
  const double observed = std::abs(u_obs - m) - kTieEps;
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(na), true);
  std::size_t total = 0, extreme = 0;
  // prev_permutation over a descending-sorted mask visits every subset once.
  do {
    double rank_sum = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (pick[i]) rank_sum += ranks[i];
    }
    ++total;
    if (std::abs(rank_sum - offset - m) >= observed) ++extreme;
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return static_cast<double>(extreme) / static_cast<double>(total);
}

double normal_p(double u, std::size_t na, std::size_t nb, double tie_term) {
  const double n1 = static_cast<double>(na), n2 = static_cast<double>(nb);
  const double n = n1 + n2;
  const double m = n1 * n2 / 2.0;
  const double var = n1 * n2 / 12.0 * ((n + 1) - tie_term / (n * (n - 1)));
  if (var <= 0) return 1.0;
  const double z = std::max(0.0, std::abs(u - m) - 0.5) / std::sqrt(var);
  return std::min(1.0, std::erfc(z / std::sqrt(2.0)));
}

}  // namespace

MwuResult mann_whitney_u(std::span<const double> a, std::span<const double> b,
                         MwuMethod method) {
  if (a.empty() || b.empty()) throw StatsError("Mann-Whitney U needs two non-empty samples");
  const std::size_t n = a.size() + b.size();
  const bool exact = method == MwuMethod::kExact ||
                     (method == MwuMethod::kAuto && n <= kExactMaxPooled);
  if (exact && n > kExactLimit) throw StatsError("exact Mann-Whitney U limited to 20 values");

  const Ranked ranked = midranks(a, b);
  double rank_sum_a = 0;
  for (std::size_t i = 0; i < a.size(); ++i) rank_sum_a += ranked.ranks[i];
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());

  MwuResult result;
  result.u_a = rank_sum_a - na * (na + 1) / 2.0;
  result.u_b = na * nb - result.u_a;
  result.exact = exact;
  result.p_two_sided = exact ? exact_p(ranked.ranks, a.size(), result.u_a)
                             : normal_p(result.u_a, a.size(), b.size(), ranked.tie_term);
  return result;
}

}  // namespace cookiescope::stats
