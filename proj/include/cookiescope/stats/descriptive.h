#pragma once

#include <span>
#include <stdexcept>
#include <vector>

namespace cookiescope::stats {

class StatsError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

double mean(std::span<const double> values);

// Population standard deviation over the mean. An all-zero series gives 0.
// Throws StatsError on empty input or on a zero mean with nonzero spread.
double coefficient_of_variation(std::span<const double> values);

struct EcdfPoint {
  double x = 0;
  double f = 0;
  bool operator==(const EcdfPoint&) const = default;
};

// One point per distinct value, ascending; f is the share of values <= x.
std::vector<EcdfPoint> ecdf(std::span<const double> values);

}  // namespace cookiescope::stats
