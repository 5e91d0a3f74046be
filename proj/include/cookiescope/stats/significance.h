#pragma once

#include <string>
#include <vector>

#include "cookiescope/stats/descriptive.h"

namespace cookiescope::stats {

inline constexpr double kDefaultAlpha = 0.05;

struct SampleSeries {
  std::string site;
  std::string label;  // location or condition
  std::string mode;
  std::vector<double> values;
};

struct TestResult {
  std::string site;
  std::string mode;
  std::string label_a;
  std::string label_b;
  double u_statistic = 0;
  double p_raw = 1;
  double p_adjusted = 1;
  bool significant = false;
};

struct PairSummary {
  std::string label_a;
  std::string label_b;
  std::string mode;
  std::size_t tests = 0;
  std::size_t significant = 0;
  double fraction() const {
    return tests == 0 ? 0.0 : static_cast<double>(significant) / static_cast<double>(tests);
  }
};

struct SignificanceMatrix {
  double alpha = kDefaultAlpha;
  std::vector<TestResult> tests;    // sorted by (mode, label_a, label_b, site)
  std::vector<PairSummary> pairs;   // sorted by (mode, label_a, label_b)
};

// Two-sided MWU per site for every label pair and mode; Holm adjustment
// within each (label pair, mode) family across sites. Throws StatsError
// with fewer than two labels, duplicate series, empty series, or when the
// labels of a mode do not cover the same sites (the message lists them).
SignificanceMatrix significance_matrix(const std::vector<SampleSeries>& series,
                                       double alpha = kDefaultAlpha);

}  // namespace cookiescope::stats
