#pragma once

#include <map>
#include <string>
#include <vector>

namespace cookiescope::stats {

struct DeltaRow {
  std::string site;
  double mean_first = 0;
  double mean_second = 0;
  double delta = 0;  // mean_first - mean_second
};

struct DeltaReport {
  std::string sign_convention;  // e.g. "inner-minus-landing"
  std::vector<DeltaRow> rows;   // sorted by site
  std::vector<std::string> excluded;  // sites present on one side only
};

// Per-site mean(first) - mean(second). `first_name` and `second_name` only
// label the sign convention ("<first>-minus-<second>"). Sites with an empty
// series on either side are excluded.
DeltaReport delta_report(const std::map<std::string, std::vector<double>>& first,
                         const std::map<std::string, std::vector<double>>& second,
                         const std::string& first_name, const std::string& second_name);

struct RankedCmp {
  int rank = 0;
  std::string bucket;  // featured CMP name or "Others"
};

struct CmpSharePoint {
  int rank = 0;
  std::string bucket;
  std::size_t cumulative = 0;  // sites with this bucket at rank <= this rank
  double share = 0;            // cumulative / all CMP sites in the input
};

// Cumulative count per bucket at each distinct rank, for plotting share of
// CMP banners against popularity rank. Points sorted by (rank, bucket).
std::vector<CmpSharePoint> cmp_cumulative_share(std::vector<RankedCmp> sites);

}  // namespace cookiescope::stats
