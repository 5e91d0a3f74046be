#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cookiescope/crawl/targets.h"
#include "cookiescope/engine/cmp.h"
#include "cookiescope/session/visit_record.h"

namespace cookiescope::crawl {

class AnalysisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Metric { kFirstParty, kThirdParty, kTracking };
std::string_view to_string(Metric metric);  // first-party|third-party|tracking
std::optional<Metric> metric_from_string(std::string_view text);
inline constexpr Metric kAllMetrics[] = {Metric::kFirstParty, Metric::kThirdParty, Metric::kTracking};

// Post-interaction counts when an interaction ran, pre-interaction
// otherwise; nullopt when the record has neither.
std::optional<double> final_value(const session::VisitRecord& record, Metric metric);

struct UsableRecords {
  std::vector<session::VisitRecord> records;
  std::vector<std::string> excluded_sites;  // sorted
  std::vector<std::string> excluded_reasons;  // "site: reason", one per site
};

// Drops every site with a non-ok visit or a record lacking cookie counts
// under any location or condition.
UsableRecords usable_records(std::vector<session::VisitRecord> records);

struct AnalysisOptions {
  std::vector<std::filesystem::path> stores;  // record files or run directories
  std::filesystem::path output_dir = "analysis";
  Metric metric = Metric::kThirdParty;
  std::uint64_t seed = 20211116;
  std::vector<RankRange> tiers = kTieredRanges;
  std::filesystem::path cmp_registry;  // empty: bundled registry
};

// Reads and concatenates the stores (records from several vantage points
// merge this way). Throws AnalysisError when nothing readable is found.
std::vector<session::VisitRecord> load_records(const std::vector<std::filesystem::path>& stores);

inline const std::vector<std::string> kSubcommands = {
    "banner-effect", "cmp-share", "consistency", "inner-vs-landing", "mobile-vs-desktop",
    "dnsmpi-compare"};

// Writes the report files for one subcommand and returns their paths.
// Every report lists the sites excluded from it.
std::vector<std::filesystem::path> run_analysis(const std::string& subcommand,
                                                const AnalysisOptions& options);

struct DnsmpiCohorts {
  std::string tier;  // "a-b"
  std::vector<std::string> with_link;
  std::vector<std::string> without_link;  // sampled, same size when possible
  std::size_t pool = 0;                   // non-DNSMPI sites available
};

// Per tier: all DNSMPI sites, and an equally sized sample of the others
// drawn by a seeded Fisher-Yates shuffle of the sorted candidate list.
std::vector<DnsmpiCohorts> dnsmpi_cohorts(const std::vector<session::VisitRecord>& landing,
                                          const std::vector<RankRange>& tiers, std::uint64_t seed);

}  // namespace cookiescope::crawl
