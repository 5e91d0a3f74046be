#include "cookiescope/stats/reports.h"

#include <algorithm>
#include <set>

#include "cookiescope/stats/descriptive.h"

namespace cookiescope::stats {

DeltaReport delta_report(const std::map<std::string, std::vector<double>>& first,
                         const std::map<std::string, std::vector<double>>& second,
                         const std::string& first_name, const std::string& second_name) {
  DeltaReport report;
  report.sign_convention = first_name + "-minus-" + second_name;
  std::set<std::string> sites;
  for (const auto& [site, _] : first) sites.insert(site);
  for (const auto& [site, _] : second) sites.insert(site);
  for (const std::string& site : sites) {
    auto a = first.find(site);
    auto b = second.find(site);
    if (a == first.end() || b == second.end() || a->second.empty() || b->second.empty()) {
      report.excluded.push_back(site);
      continue;
    }
    const double ma = mean(a->second), mb = mean(b->second);
    report.rows.push_back({site, ma, mb, ma - mb});
  }
  return report;
}

std::vector<CmpSharePoint> cmp_cumulative_share(std::vector<RankedCmp> sites) {
  std::stable_sort(sites.begin(), sites.end(),
                   [](const RankedCmp& a, const RankedCmp& b) { return a.rank < b.rank; });
  std::set<std::string> buckets;
  for (const RankedCmp& s : sites) buckets.insert(s.bucket);
  std::map<std::string, std::size_t> running;
  std::vector<CmpSharePoint> points;
  const double total = static_cast<double>(sites.size());
  for (std::size_t i = 0; i < sites.size(); ++i) {
    ++running[sites[i].bucket];
    if (i + 1 < sites.size() && sites[i + 1].rank == sites[i].rank) continue;
    for (const std::string& bucket : buckets) {
      const std::size_t c = running[bucket];
      points.push_back({sites[i].rank, bucket, c, static_cast<double>(c) / total});
    }
  }
  return points;
}

}  // namespace cookiescope::stats
