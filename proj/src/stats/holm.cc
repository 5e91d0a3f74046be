#include "cookiescope/stats/holm.h"

#include <algorithm>
#include <numeric>

#include "cookiescope/stats/descriptive.h"

namespace cookiescope::stats {

std::vector<double> holm_adjust(const std::vector<double>& p_values) {
  for (double p : p_values) {
    if (!(p >= 0.0 && p <= 1.0)) throw StatsError("p-value outside [0, 1]");
  }
  const std::size_t m = p_values.size();
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return p_values[i] < p_values[j]; });
  std::vector<double> adjusted(m);
  double running = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const double scaled = p_values[order[i]] * static_cast<double>(m - i);
    running = std::min(1.0, std::max(running, scaled));
    adjusted[order[i]] = running;
  }
  return adjusted;
}

}  // namespace cookiescope::stats
