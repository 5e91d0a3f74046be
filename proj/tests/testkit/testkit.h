#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "cookiescope/classify/blocklist.h"
#include "cookiescope/classify/public_suffix.h"
#include "cookiescope/corpus/corpus.h"
#include "cookiescope/crawl/crawl_config.h"
#include "cookiescope/dom/dom_model.h"
#include "cookiescope/engine/cmp.h"
#include "cookiescope/fixtures/fixture_browser.h"
#include "cookiescope/fixtures/fixture_server.h"

namespace testkit {

namespace cs = cookiescope;

std::filesystem::path data_dir();
std::filesystem::path fixture_dir();
std::filesystem::path test_data_dir();
// Fresh empty directory under the system temp dir.
std::filesystem::path scratch_dir(const std::string& name);

const cs::corpus::Corpus& bundled_corpus();
const cs::classify::SuffixRules& bundled_psl();
const cs::engine::CmpRegistry& bundled_registry();

struct DetectionCase {
  std::string file;
  std::optional<cs::dom::NodeId> expected_banner;
  cs::dom::FramePath expected_frame_path;
  std::vector<std::string> tags;
  std::string language;
  bool has_tag(std::string_view tag) const;
};
std::vector<DetectionCase> detection_cases();

struct ExpectedStep {
  std::string strategy;
  std::optional<cs::dom::NodeId> target;
  std::string api_call;
};
struct InteractionCase {
  std::string file;
  std::string mode;
  cs::engine::CmpAnswer cmp;
  std::vector<ExpectedStep> expected_steps;
  std::string expected_note;
};
std::vector<InteractionCase> interaction_cases();

// Short names for parameterized test output.
void PrintTo(const DetectionCase& c, std::ostream* os);
void PrintTo(const InteractionCase& c, std::ostream* os);

cs::dom::DomSnapshot load_fixture_snapshot(const std::string& subdir, const std::string& file);

// Official public-suffix test vectors ("checkPublicSuffix(in, out);").
struct PslVector {
  std::optional<std::string> input;
  std::optional<std::string> expected;
};
std::vector<PslVector> psl_vectors();

// Straightforward restatement of the list algorithm over raw rule strings:
// every rule is tried against every host, the prevailing one picked by
// exception first, then label count. nullopt when no registrable domain.
std::optional<std::string> psl_oracle(const std::vector<std::string>& rules, const std::string& host);

// Two-sided exact MWU p by counting, over every split of the pooled
// values, pairwise wins (ties 1/2) instead of ranks.
double mwu_oracle_p(const std::vector<double>& a, const std::vector<double>& b);

// Closed-world web: world, HTTP server and WebDriver endpoint.
struct FixtureWeb {
  explicit FixtureWeb(cs::fixtures::BrowserOptions options = {});
  cs::fixtures::FixtureWorld world;
  std::unique_ptr<cs::fixtures::FixtureServer> server;
  std::unique_ptr<cs::fixtures::FixtureBrowser> browser;
};

// Timeouts scaled by 1/100 relative to the defaults, except the page-load
// budget, which keeps enough headroom for a loaded single-core machine.
cs::crawl::CrawlConfig e2e_config(const FixtureWeb& web, const std::filesystem::path& out,
                                  const std::vector<std::string>& hosts);

using Rng = std::mt19937_64;

}  // namespace testkit
