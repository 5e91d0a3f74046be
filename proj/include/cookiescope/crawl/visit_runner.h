#pragma once

#include <filesystem>
#include <stop_token>
#include <string>
#include <vector>

#include "cookiescope/classify/blocklist.h"
#include "cookiescope/classify/public_suffix.h"
#include "cookiescope/corpus/corpus.h"
#include "cookiescope/crawl/crawl_config.h"
#include "cookiescope/engine/cmp.h"
#include "cookiescope/session/browser_session.h"
#include "cookiescope/session/visit_record.h"

namespace cookiescope::crawl {

// Immutable inputs shared by every worker.
struct Resources {
  corpus::Corpus corpus;
  classify::SuffixRules psl;
  classify::Blocklist blocklist;
  engine::CmpRegistry cmp_registry;
  std::vector<std::string> dnsmpi_phrases;
};

// Throws on the first unreadable or invalid resource.
Resources load_resources(const CrawlConfig& config);

struct VisitJob {
  Target target;
  std::string url;  // landing or inner page
  std::string page_kind = "landing";
  engine::InteractionMode mode = engine::InteractionMode::kNone;
  session::DeviceProfile profile;
  int repetition = 1;
};

struct VisitContext {
  const CrawlConfig* config;
  const Resources* resources;
  session::CookieMechanism cookie_mechanism;
  session::Clock::time_point campaign_start;
};

session::SessionOptions session_options(const CrawlConfig& config,
                                        const session::DeviceProfile& profile);

// "http://" + domain + "/" unless the target already names a scheme.
std::string landing_url(const Target& target);

// Screenshot path: screenshots/<profile>/<site>_<mode>_<rep>_<label>.png
std::filesystem::path screenshot_path(const CrawlConfig& config, const VisitJob& job,
                                      std::string_view label);

// One fresh-profile visit. Navigation failures, timeouts and page errors
// become the record status; only a failure to start the browser session
// escapes (session::SessionStartError) so the caller can count it.
session::VisitRecord run_visit(const VisitJob& job, const VisitContext& context,
                               std::stop_token stop = {});

}  // namespace cookiescope::crawl
