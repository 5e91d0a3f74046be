#include "cookiescope/crawl/analyze.h"

#include <algorithm>
#include <fstream>
#include <random>
#include <set>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "cookiescope/crawl/crawl_config.h"
#include "cookiescope/crawl/record_store.h"
#include "cookiescope/stats/descriptive.h"
#include "cookiescope/stats/reports.h"
#include "cookiescope/stats/significance.h"

namespace cookiescope::crawl {

namespace {

using session::VisitRecord;
using SiteSeries = std::map<std::string, std::vector<double>>;

class Tsv {
 public:
  Tsv(const std::filesystem::path& path, const std::vector<std::string>& header) : out_(path) {
    if (!out_) throw AnalysisError("cannot write " + path.string());
    row(header);
  }
  template <typename... T>
  void line(const T&... fields) {
    std::vector<std::string> cells{fmt::format("{}", fields)...};
    row(cells);
  }
  void comment(const std::string& text) { out_ << "# " << text << '\n'; }

 private:
  void row(const std::vector<std::string>& cells) { out_ << fmt::format("{}\n", fmt::join(cells, "\t")); }
  std::ofstream out_;
};

std::string mode_name(const VisitRecord& r) { return std::string(engine::to_string(r.mode)); }

void note_exclusions(Tsv& tsv, const UsableRecords& usable) {
  for (const std::string& reason : usable.excluded_reasons) tsv.comment("excluded " + reason);
}

// Per-site mean of the metric over repetitions, for records passing `keep`.
template <typename Pred>
SiteSeries site_means(const std::vector<VisitRecord>& records, Metric metric, Pred keep) {
  SiteSeries raw;
  for (const VisitRecord& r : records) {
    if (!keep(r)) continue;
    if (auto v = final_value(r, metric)) raw[r.site].push_back(*v);
  }
  SiteSeries out;
  for (const auto& [site, values] : raw) out[site] = {stats::mean(values)};
  return out;
}

std::string tier_name(const RankRange& r) { return fmt::format("{}-{}", r.first, r.second); }

std::vector<std::filesystem::path> banner_effect(const UsableRecords& usable,
                                                 const AnalysisOptions& o) {
  const auto ecdf_path = o.output_dir / "banner_effect_ecdf.tsv";
  const auto summary_path = o.output_dir / "banner_effect_summary.tsv";
  Tsv ecdf(ecdf_path, {"mode", "metric", "x", "f"});
  Tsv summary(summary_path, {"mode", "metric", "sites", "mean", "ratio_to_no_interaction"});
  note_exclusions(ecdf, usable);
  note_exclusions(summary, usable);

  std::set<std::string> modes;
  for (const VisitRecord& r : usable.records) modes.insert(mode_name(r));
  for (Metric metric : kAllMetrics) {
    std::map<std::string, double> mode_mean;
    std::map<std::string, std::size_t> mode_sites;
    for (const std::string& mode : modes) {
      const SiteSeries per_site = site_means(usable.records, metric, [&](const VisitRecord& r) {
        return r.page_kind == "landing" && mode_name(r) == mode;
      });
      std::vector<double> values;
      for (const auto& [site, v] : per_site) values.push_back(v.front());
      if (values.empty()) continue;
      for (const stats::EcdfPoint& p : stats::ecdf(values)) {
        ecdf.line(mode, to_string(metric), p.x, p.f);
      }
      mode_mean[mode] = stats::mean(values);
      mode_sites[mode] = values.size();
    }
    const auto base = mode_mean.find(std::string(engine::to_string(engine::InteractionMode::kNone)));
    for (const auto& [mode, m] : mode_mean) {
      const std::string ratio = base != mode_mean.end() && base->second > 0
                                    ? fmt::format("{:.4f}", m / base->second)
                                    : std::string("NA");
      summary.line(mode, to_string(metric), mode_sites[mode], fmt::format("{:.4f}", m), ratio);
    }
  }
  return {ecdf_path, summary_path};
}

std::vector<std::filesystem::path> cmp_share(const UsableRecords& usable, const AnalysisOptions& o) {
  const engine::CmpRegistry registry = engine::load_cmp_registry(
      o.cmp_registry.empty() ? default_resource_paths().cmp_registry : o.cmp_registry);
  std::map<std::string, stats::RankedCmp> per_site;
  for (const VisitRecord& r : usable.records) {
    if (r.page_kind != "landing" || r.cmp.detected_via == engine::DetectedVia::kNone) continue;
    per_site.try_emplace(r.site, stats::RankedCmp{r.rank, registry.bucket(r.cmp.cmp_name)});
  }
  std::vector<stats::RankedCmp> sites;
  for (const auto& [site, cmp] : per_site) sites.push_back(cmp);
  const auto path = o.output_dir / "cmp_share.tsv";
  Tsv tsv(path, {"rank", "bucket", "cumulative", "share"});
  note_exclusions(tsv, usable);
  for (const stats::CmpSharePoint& p : stats::cmp_cumulative_share(sites)) {
    tsv.line(p.rank, p.bucket, p.cumulative, fmt::format("{:.6f}", p.share));
  }
  return {path};
}

std::vector<std::filesystem::path> consistency(const UsableRecords& usable, const AnalysisOptions& o) {
  std::set<std::string> locations;
  for (const VisitRecord& r : usable.records) locations.insert(r.location);
  if (locations.size() < 2) {
    throw AnalysisError(fmt::format("consistency needs records from at least two locations, found {}",
                                    locations.size()));
  }
  // (site, location, mode) -> values over repetitions
  std::map<std::tuple<std::string, std::string, std::string>, std::vector<double>> groups;
  for (const VisitRecord& r : usable.records) {
    if (r.page_kind != "landing") continue;
    if (auto v = final_value(r, o.metric)) groups[{r.site, r.location, mode_name(r)}].push_back(*v);
  }

  const auto cov_path = o.output_dir / "consistency_cov.tsv";
  Tsv cov(cov_path, {"site", "location", "mode", "n", "mean", "cov"});
  note_exclusions(cov, usable);
  std::vector<stats::SampleSeries> series;
  for (const auto& [key, values] : groups) {
    const auto& [site, location, mode] = key;
    std::string c;
    try {
      c = fmt::format("{:.6f}", stats::coefficient_of_variation(values));
    } catch (const stats::StatsError&) {
      c = "NA";
    }
    cov.line(site, location, mode, values.size(), fmt::format("{:.4f}", stats::mean(values)), c);
    series.push_back({site, location, mode, values});
  }

  const stats::SignificanceMatrix matrix = stats::significance_matrix(series);
  const auto tests_path = o.output_dir / "consistency_mwu.tsv";
  const auto pairs_path = o.output_dir / "consistency_matrix.tsv";
  Tsv tests(tests_path, {"mode", "location_a", "location_b", "site", "u", "p_raw", "p_holm", "significant"});
  for (const stats::TestResult& t : matrix.tests) {
    tests.line(t.mode, t.label_a, t.label_b, t.site, t.u_statistic, fmt::format("{:.6g}", t.p_raw),
               fmt::format("{:.6g}", t.p_adjusted), t.significant ? 1 : 0);
  }
  Tsv pairs(pairs_path, {"mode", "location_a", "location_b", "tests", "significant", "fraction"});
  pairs.comment(fmt::format("metric {}, alpha {}", to_string(o.metric), matrix.alpha));
  for (const stats::PairSummary& p : matrix.pairs) {
    pairs.line(p.mode, p.label_a, p.label_b, p.tests, p.significant, fmt::format("{:.4f}", p.fraction()));
  }
  return {cov_path, tests_path, pairs_path};
}

std::filesystem::path write_delta(const stats::DeltaReport& report, const UsableRecords& usable,
                                  const std::filesystem::path& path, Metric metric) {
  Tsv tsv(path, {"site", "mean_first", "mean_second", "delta"});
  tsv.comment(fmt::format("metric {}, delta is {}", to_string(metric), report.sign_convention));
  note_exclusions(tsv, usable);
  for (const std::string& site : report.excluded) tsv.comment("unpaired " + site);
  for (const stats::DeltaRow& row : report.rows) {
    tsv.line(row.site, fmt::format("{:.4f}", row.mean_first), fmt::format("{:.4f}", row.mean_second),
             fmt::format("{:.4f}", row.delta));
  }
  return path;
}

std::vector<std::filesystem::path> inner_vs_landing(const UsableRecords& usable, const AnalysisOptions& o) {
  std::vector<std::filesystem::path> out;
  std::set<std::string> modes;
  for (const VisitRecord& r : usable.records) modes.insert(mode_name(r));
  for (const std::string& mode : modes) {
    auto select = [&](const char* kind) {
      return site_means(usable.records, o.metric, [&](const VisitRecord& r) {
        return r.page_kind == kind && mode_name(r) == mode;
      });
    };
    const auto report = stats::delta_report(select("inner"), select("landing"), "inner", "landing");
    out.push_back(write_delta(report, usable, o.output_dir / fmt::format("inner_vs_landing_{}.tsv", mode),
                              o.metric));
  }
  return out;
}

std::vector<std::filesystem::path> mobile_vs_desktop(const UsableRecords& usable, const AnalysisOptions& o) {
  std::vector<std::filesystem::path> out;
  std::set<std::string> modes;
  for (const VisitRecord& r : usable.records) modes.insert(mode_name(r));
  for (const std::string& mode : modes) {
    auto select = [&](const char* profile) {
      return site_means(usable.records, o.metric, [&](const VisitRecord& r) {
        return r.page_kind == "landing" && r.profile == profile && mode_name(r) == mode;
      });
    };
    const auto report = stats::delta_report(select("mobile"), select("desktop"), "mobile", "desktop");
    out.push_back(write_delta(report, usable,
                              o.output_dir / fmt::format("mobile_vs_desktop_{}.tsv", mode), o.metric));
  }
  return out;
}

std::vector<std::filesystem::path> dnsmpi_compare(const UsableRecords& usable, const AnalysisOptions& o) {
  std::vector<VisitRecord> landing;
  for (const VisitRecord& r : usable.records) {
    if (r.page_kind == "landing") landing.push_back(r);
  }
  const SiteSeries values = site_means(landing, o.metric, [](const VisitRecord&) { return true; });
  const auto path = o.output_dir / "dnsmpi_compare.tsv";
  const auto summary_path = o.output_dir / "dnsmpi_compare_summary.tsv";
  Tsv tsv(path, {"tier", "cohort", "site", "value"});
  Tsv summary(summary_path, {"tier", "cohort", "sites", "mean"});
  tsv.comment(fmt::format("metric {}, seed {}", to_string(o.metric), o.seed));
  note_exclusions(tsv, usable);
  for (const DnsmpiCohorts& c : dnsmpi_cohorts(landing, o.tiers, o.seed)) {
    if (c.without_link.size() < c.with_link.size()) {
      tsv.comment(fmt::format("tier {}: only {} non-DNSMPI sites for {} DNSMPI sites", c.tier, c.pool,
                              c.with_link.size()));
    }
    for (const auto& [cohort, sites] : {std::pair{"dnsmpi", &c.with_link}, std::pair{"control", &c.without_link}}) {
      std::vector<double> v;
      for (const std::string& site : *sites) {
        auto it = values.find(site);
        if (it == values.end()) continue;
        tsv.line(c.tier, cohort, site, fmt::format("{:.4f}", it->second.front()));
        v.push_back(it->second.front());
      }
      summary.line(c.tier, cohort, v.size(), v.empty() ? std::string("NA") : fmt::format("{:.4f}", stats::mean(v)));
    }
  }
  return {path, summary_path};
}

}  // namespace

std::string_view to_string(Metric metric) {
  switch (metric) {
    case Metric::kFirstParty: return "first-party";
    case Metric::kThirdParty: return "third-party";
    case Metric::kTracking: return "tracking";
  }
  return "third-party";
}

std::optional<Metric> metric_from_string(std::string_view text) {
  for (Metric m : kAllMetrics) {
    if (to_string(m) == text) return m;
  }
  return std::nullopt;
}

std::optional<double> final_value(const VisitRecord& record, Metric metric) {
  const auto& counts = record.counts_post ? record.counts_post : record.counts_pre;
  if (!counts) return std::nullopt;
  switch (metric) {
    case Metric::kFirstParty: return static_cast<double>(counts->first_party);
    case Metric::kThirdParty: return static_cast<double>(counts->third_party);
    case Metric::kTracking: return static_cast<double>(counts->tracking);
  }
  return std::nullopt;
}

UsableRecords usable_records(std::vector<VisitRecord> records) {
  std::map<std::string, std::string> bad;
  for (const VisitRecord& r : records) {
    if (bad.contains(r.site)) continue;
    if (r.status != session::VisitStatus::kOk) {
      bad[r.site] = fmt::format("{} under {}/{}/{}/{}", session::to_string(r.status), r.location,
                                r.profile, mode_name(r), r.repetition);
    } else if (!r.counts_pre) {
      bad[r.site] = "record without cookie counts";
    }
  }
  UsableRecords out;
  for (VisitRecord& r : records) {
    if (!bad.contains(r.site)) out.records.push_back(std::move(r));
  }
  for (const auto& [site, reason] : bad) {
    out.excluded_sites.push_back(site);
    out.excluded_reasons.push_back(site + ": " + reason);
  }
  return out;
}

std::vector<VisitRecord> load_records(const std::vector<std::filesystem::path>& stores) {
  std::vector<VisitRecord> all;
  for (std::filesystem::path p : stores) {
    if (std::filesystem::is_directory(p)) p /= kRecordsFile;
    if (!std::filesystem::exists(p)) throw AnalysisError("no record store at " + p.string());
    StoreContents contents = RecordStore::read(p);
    for (const std::string& rejected : contents.rejected_lines) {
      fmt::print(stderr, "{}: skipped {}\n", p.string(), rejected);
    }
    std::move(contents.visits.begin(), contents.visits.end(), std::back_inserter(all));
  }
  if (all.empty()) throw AnalysisError("record store is empty");
  return all;
}

std::vector<DnsmpiCohorts> dnsmpi_cohorts(const std::vector<VisitRecord>& landing,
                                          const std::vector<RankRange>& tiers, std::uint64_t seed) {
  std::map<std::string, std::pair<int, bool>> sites;  // site -> (rank, has link)
  for (const VisitRecord& r : landing) {
    auto& entry = sites.try_emplace(r.site, r.rank, false).first->second;
    entry.second |= r.dnsmpi && r.dnsmpi->present;
  }
  std::mt19937_64 rng(seed);
  std::vector<DnsmpiCohorts> out;
  for (std::size_t t = 0; t < tiers.size(); ++t) {
    DnsmpiCohorts c;
    c.tier = tier_name(tiers[t]);
    std::vector<std::string> pool;
    for (const auto& [site, info] : sites) {
      if (range_index({tiers[t]}, info.first) != 0) continue;
      (info.second ? c.with_link : pool).push_back(site);
    }
    c.pool = pool.size();
    // Fisher-Yates with rejection sampling keeps the draw independent of
    // the standard library's distribution implementation.
    for (std::size_t i = pool.size(); i > 1; --i) {
      const std::uint64_t bound = i;
      const std::uint64_t limit = rng.max() - (rng.max() % bound);
      std::uint64_t x;
      do { x = rng(); } while (x >= limit);
      std::swap(pool[i - 1], pool[x % bound]);
    }
    pool.resize(std::min(pool.size(), c.with_link.size()));
    std::sort(pool.begin(), pool.end());
    c.without_link = std::move(pool);
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<std::filesystem::path> run_analysis(const std::string& subcommand,
                                                const AnalysisOptions& options) {
  if (std::find(kSubcommands.begin(), kSubcommands.end(), subcommand) == kSubcommands.end()) {
    throw AnalysisError("unknown analysis " + subcommand);
  }
  const UsableRecords usable = usable_records(load_records(options.stores));
  if (usable.records.empty()) {
    throw AnalysisError(fmt::format("every site was excluded ({} sites)", usable.excluded_sites.size()));
  }
  std::filesystem::create_directories(options.output_dir);
  if (subcommand == "banner-effect") return banner_effect(usable, options);
  if (subcommand == "cmp-share") return cmp_share(usable, options);
  if (subcommand == "consistency") return consistency(usable, options);
  if (subcommand == "inner-vs-landing") return inner_vs_landing(usable, options);
  if (subcommand == "mobile-vs-desktop") return mobile_vs_desktop(usable, options);
  return dnsmpi_compare(usable, options);
}

}  // namespace cookiescope::crawl
