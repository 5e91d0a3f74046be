#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cookiescope/crawl/crawl_config.h"
#include "cookiescope/crawl/record_store.h"
#include "cookiescope/crawl/visit_runner.h"

namespace cookiescope::crawl {

inline constexpr std::string_view kToolVersion = "1.0.0";

// The campaign cannot run at all: no cookie instrumentation, tracking
// protection stuck on, or no browser session obtainable.
class CampaignError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Site-major expansion: all (page, profile, mode, repetition) jobs of one
// site are adjacent so conditions are visited at similar times.
std::vector<VisitJob> expand_jobs(const CrawlConfig& config,
                                  const std::vector<InnerPagesRecord>& inner_pages = {});

struct RunControl {
  // Stop scheduling after this many visits (the run is then marked
  // aborted and can be resumed).
  std::optional<std::size_t> stop_after;
  std::function<void(const session::VisitRecord&)> on_record;
};

// Runs every job not already present in the output store, appending one
// record per visit, and writes the manifest (also when aborting).
RunManifest run_campaign(const CrawlConfig& config, const RunControl& control = {});

// Sites whose visits in this run span more than `bound` of schedule time.
std::vector<std::string> skew_violations(const std::vector<session::VisitRecord>& records,
                                         Millis bound);

std::map<std::string, std::string> tool_versions();

}  // namespace cookiescope::crawl
