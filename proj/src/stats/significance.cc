#include "cookiescope/stats/significance.h"

#include <map>
#include <set>

#include "cookiescope/stats/holm.h"
#include "cookiescope/stats/mann_whitney.h"

namespace cookiescope::stats {

SignificanceMatrix significance_matrix(const std::vector<SampleSeries>& series,
                                       double alpha) {
  // mode -> label -> site -> values
  std::map<std::string, std::map<std::string, std::map<std::string, const SampleSeries*>>> by;
  std::set<std::string> labels;
  for (const SampleSeries& s : series) {
    if (s.values.empty()) throw StatsError("empty series for " + s.site + "/" + s.label);
    if (!by[s.mode][s.label].emplace(s.site, &s).second) {
      throw StatsError("duplicate series " + s.site + "/" + s.label + "/" + s.mode);
    }
    labels.insert(s.label);
  }
  if (labels.size() < 2) throw StatsError("significance matrix needs at least two labels");

  SignificanceMatrix out;
  out.alpha = alpha;
  for (const auto& [mode, per_label] : by) {
    std::set<std::string> all_sites, asymmetric;
    for (const auto& [label, sites] : per_label) {
      for (const auto& [site, _] : sites) all_sites.insert(site);
    }
    for (const std::string& label : labels) {
      auto it = per_label.find(label);
      for (const std::string& site : all_sites) {
        if (it == per_label.end() || !it->second.contains(site)) asymmetric.insert(site);
      }
    }
    if (!asymmetric.empty()) {
      std::string list;
      for (const std::string& site : asymmetric) list += (list.empty() ? "" : ", ") + site;
      throw StatsError("mode " + mode + ": sites not present for every label: " + list);
    }

    for (auto a = per_label.begin(); a != per_label.end(); ++a) {
      for (auto b = std::next(a); b != per_label.end(); ++b) {
        std::vector<TestResult> family;
        std::vector<double> raw;
        for (const auto& [site, sa] : a->second) {
          const SampleSeries* sb = b->second.at(site);
          MwuResult r = mann_whitney_u(sa->values, sb->values);
          family.push_back({site, mode, a->first, b->first, r.u_a, r.p_two_sided, 1, false});
          raw.push_back(r.p_two_sided);
        }
        const std::vector<double> adjusted = holm_adjust(raw);
        PairSummary summary{a->first, b->first, mode, family.size(), 0};
        for (std::size_t i = 0; i < family.size(); ++i) {
          family[i].p_adjusted = adjusted[i];
          family[i].significant = adjusted[i] < alpha;
          if (family[i].significant) ++summary.significant;
        }
        out.tests.insert(out.tests.end(), family.begin(), family.end());
        out.pairs.push_back(summary);
      }
    }
  }
  return out;
}

}  // namespace cookiescope::stats
