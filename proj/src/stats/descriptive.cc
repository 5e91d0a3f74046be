#include "cookiescope/stats/descriptive.h"

#include <algorithm>
#include <cmath>

namespace cookiescope::stats {

double mean(std::span<const double> values) {
  if (values.empty()) throw StatsError("mean of empty series");
  double sum = 0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

double coefficient_of_variation(std::span<const double> values) {
  const double m = mean(values);
  double ss = 0;
  for (double v : values) ss += (v - m) * (v - m);
  const double sd = std::sqrt(ss / static_cast<double>(values.size()));
  if (m == 0) {
    if (sd == 0) return 0;
    throw StatsError("coefficient of variation undefined for zero mean");
  }
  return sd / m;
}

std::vector<EcdfPoint> ecdf(std::span<const double> values) {
  if (values.empty()) throw StatsError("ecdf of empty series");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  std::vector<EcdfPoint> points;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i + 1 < sorted.size() && sorted[i + 1] == sorted[i]) continue;
    points.push_back({sorted[i], static_cast<double>(i + 1) / n});
  }
  points.back().f = 1.0;
  return points;
}

}  // namespace cookiescope::stats
