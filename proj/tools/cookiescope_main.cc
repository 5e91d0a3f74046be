#include <csignal>
#include <cstdlib>
#include <iostream>
#include <thread>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ranges.h>
#include <spdlog/spdlog.h>

#include "cookiescope/corpus/corpus.h"
#include "cookiescope/crawl/analyze.h"
#include "cookiescope/crawl/campaign.h"
#include "cookiescope/dom/snapshot_io.h"
#include "cookiescope/engine/banner_detector.h"
#include "cookiescope/engine/button_selector.h"
#include "cookiescope/fixtures/fixture_browser.h"
#include "cookiescope/fixtures/fixture_server.h"

namespace cs = cookiescope;

namespace {

std::atomic<bool> g_interrupted{false};

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

struct CrawlFlags {
  std::string config_file;
  std::string targets_file;
  std::string ranges;
  std::string modes;
  std::string profiles;
  std::optional<int> repetitions;
  std::optional<int> workers;
  std::string output_dir;
  std::string endpoint;
  std::string probe_bundle;
  std::string location;
  std::string contact;
  std::optional<long> politeness_ms;
  bool dnsmpi = false;
  bool inner_pages = false;
  bool no_screenshots = false;
  bool supplement = false;
  bool headed = false;
};

cs::crawl::CrawlConfig build_config(const CrawlFlags& f) {
  cs::crawl::CrawlConfig c = f.config_file.empty() ? cs::crawl::CrawlConfig{}
                                                   : cs::crawl::load_config_file(f.config_file);
  if (!f.targets_file.empty()) c.targets = cs::crawl::load_targets(f.targets_file);
  if (!f.ranges.empty()) c.targets = cs::crawl::select_ranges(c.targets, cs::crawl::parse_ranges(f.ranges));
  if (!f.modes.empty()) {
    c.modes.clear();
    for (const std::string& m : split(f.modes)) {
      auto mode = cs::engine::interaction_mode_from_string(m);
      if (!mode) throw cs::crawl::ConfigError("unknown mode " + m);
      c.modes.push_back(*mode);
    }
  }
  if (!f.profiles.empty()) {
    c.profiles.clear();
    for (const std::string& p : split(f.profiles)) {
      auto profile = cs::session::profile_by_name(p);
      if (!profile) throw cs::crawl::ConfigError("unknown profile " + p);
      c.profiles.push_back(*profile);
    }
  }
  if (f.repetitions) c.repetitions = *f.repetitions;
  if (f.workers) c.workers = *f.workers;
  if (!f.output_dir.empty()) c.output_dir = f.output_dir;
  if (const char* env = std::getenv("COOKIESCOPE_WEBDRIVER"); env && *env) c.endpoint = env;
  if (!f.endpoint.empty()) c.endpoint = f.endpoint;
  if (!f.probe_bundle.empty()) c.probe_bundle = f.probe_bundle;
  if (!f.location.empty()) c.location = f.location;
  if (!f.contact.empty()) c.contact = f.contact;
  if (f.politeness_ms) c.politeness_delay = cs::crawl::Millis(*f.politeness_ms);
  c.find_dnsmpi |= f.dnsmpi;
  c.inner_pages |= f.inner_pages;
  c.include_corpus_supplement |= f.supplement;
  if (f.no_screenshots) c.screenshots = false;
  if (f.headed) c.headless = false;
  if (c.targets.empty()) throw cs::crawl::ConfigError("no targets (use --targets or a config file)");
  return c;
}

int run_crawl(const CrawlFlags& flags) {
  const cs::crawl::CrawlConfig config = build_config(flags);
  spdlog::info("{} targets, {} workers, output {}", config.targets.size(), config.workers,
               config.output_dir.string());
  const cs::crawl::RunManifest m = cs::crawl::run_campaign(config);
  std::cout << cs::crawl::to_json(m).dump(2) << "\n";
  return m.aborted ? 2 : 0;
}

int run_detect(const std::string& snapshot_file, const std::string& mode, const std::string& cmp_json) {
  const auto paths = cs::crawl::default_resource_paths();
  const cs::corpus::Corpus corpus = cs::corpus::load_corpus(paths.corpus);
  const cs::dom::DomSnapshot snapshot = cs::dom::load_snapshot_file(snapshot_file);
  const auto finding = cs::engine::detect_banner(snapshot, corpus);
  nlohmann::ordered_json out;
  if (!finding) {
    out["banner"] = nullptr;
    std::cout << out.dump(2) << "\n";
    return 0;
  }
  out["banner"] = {{"banner_node", finding->banner_node},
                   {"anchor_node", finding->anchor_node},
                   {"frame_path", finding->frame_path}};
  nlohmann::ordered_json words = nlohmann::ordered_json::array();
  for (const auto& w : finding->matched_words) words.push_back({w.node_id, w.phrase});
  out["banner"]["matched_words"] = words;
  if (!mode.empty()) {
    auto m = cs::engine::interaction_mode_from_string(mode);
    if (!m) throw std::invalid_argument("unknown mode " + mode);
    cs::engine::CmpAnswer answer;
    if (!cmp_json.empty()) answer = cs::session::cmp_answer_from_json(nlohmann::json::parse(cmp_json));
    const auto plan = cs::engine::plan_interaction(snapshot, *finding, corpus, *m, answer,
                                                   cs::engine::load_cmp_registry(paths.cmp_registry));
    nlohmann::ordered_json steps = nlohmann::ordered_json::array();
    for (const auto& s : plan.steps) {
      steps.push_back({{"strategy", std::string(cs::engine::to_string(s.strategy))},
                       {"target", s.target ? nlohmann::ordered_json(*s.target) : nlohmann::ordered_json()},
                       {"api_call", s.api_call}});
    }
    out["plan"] = {{"mode", mode}, {"steps", steps}, {"note", plan.note}};
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_fixtures_serve(const std::string& world_file, const std::string& channel) {
  const cs::fixtures::FixtureWorld world = cs::fixtures::load_world(world_file);
  cs::fixtures::BrowserOptions options;
  if (channel == "chrome") options.channel = cs::fixtures::CookieChannel::kChromeOnly;
  else if (channel == "log") options.channel = cs::fixtures::CookieChannel::kLogOnly;
  else if (channel == "none") options.channel = cs::fixtures::CookieChannel::kNone;
  cs::fixtures::FixtureServer server(world);
  cs::fixtures::FixtureBrowser browser(world, server.port(), options);
  fmt::print("fixture web on 127.0.0.1:{} ({} hosts)\nWebDriver endpoint {}\n", server.port(),
             world.hosts.size(), browser.endpoint());
  std::cout.flush();
  std::signal(SIGINT, [](int) { g_interrupted = true; });
  std::signal(SIGTERM, [](int) { g_interrupted = true; });
  while (!g_interrupted) std::this_thread::sleep_for(std::chrono::milliseconds(100));
  browser.stop();
  server.stop();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cookie banner detection and cookie measurement crawler"};
  app.require_subcommand(1);
  std::string log_level = "info";
  app.add_option("--log-level", log_level, "trace|debug|info|warn|error");

  CrawlFlags crawl;
  auto* c = app.add_subcommand("crawl", "run a measurement campaign");
  c->add_option("--config", crawl.config_file, "JSON config file; flags override it");
  c->add_option("--targets", crawl.targets_file, "rank,domain list");
  c->add_option("--ranges", crawl.ranges, "rank ranges, e.g. 1-100,1001-1100, or 'tiered'");
  c->add_option("--modes", crawl.modes, "comma list of no-interaction,accept,reject");
  c->add_option("--profiles", crawl.profiles, "comma list of desktop,mobile");
  c->add_option("--repetitions", crawl.repetitions);
  c->add_option("--workers", crawl.workers);
  c->add_option("--out", crawl.output_dir, "output directory (records, manifest, screenshots)");
  c->add_option("--endpoint", crawl.endpoint, "WebDriver endpoint (default $COOKIESCOPE_WEBDRIVER)");
  c->add_option("--probe-bundle", crawl.probe_bundle, "probe script injected after each load");
  c->add_option("--location", crawl.location, "vantage point label stored in every record");
  c->add_option("--contact", crawl.contact, "contact appended to the user agent");
  c->add_option("--politeness-ms", crawl.politeness_ms, "per-worker pause between visits");
  c->add_flag("--dnsmpi", crawl.dnsmpi, "look for a Do Not Sell link on landing pages");
  c->add_flag("--inner-pages", crawl.inner_pages, "discover and visit up to 10 inner pages");
  c->add_flag("--no-screenshots", crawl.no_screenshots);
  c->add_flag("--corpus-supplement", crawl.supplement, "include supplementary corpus rows");
  c->add_flag("--headed", crawl.headed);

  cs::crawl::AnalysisOptions analysis;
  std::string analysis_name, metric = "third-party", tiers;
  auto* a = app.add_subcommand("analyze", "write report tables from record stores");
  a->add_option("analysis", analysis_name, "one of: " + fmt::format("{}", fmt::join(cs::crawl::kSubcommands, ", ")))
      ->required();
  a->add_option("--store", analysis.stores, "record files or run directories")->required();
  a->add_option("--out", analysis.output_dir);
  a->add_option("--metric", metric, "first-party|third-party|tracking");
  a->add_option("--seed", analysis.seed);
  a->add_option("--tiers", tiers, "rank tiers for dnsmpi-compare");
  a->add_option("--cmp-registry", analysis.cmp_registry);

  std::string snapshot_file, plan_mode, cmp_json;
  auto* d = app.add_subcommand("detect", "run banner detection (and planning) on a snapshot file");
  d->add_option("snapshot", snapshot_file)->required()->check(CLI::ExistingFile);
  d->add_option("--plan", plan_mode, "accept|reject");
  d->add_option("--cmp", cmp_json, "CMP answer JSON for planning");

  auto* f = app.add_subcommand("fixtures", "closed-world test web");
  f->require_subcommand(1);
  std::string world_file = (cs::fixtures::default_fixture_dir() / "world.json").string();
  std::string channel = "both";
  auto* serve = f->add_subcommand("serve", "serve the fixture world and a WebDriver endpoint");
  serve->add_option("--world", world_file);
  serve->add_option("--cookie-channel", channel)->check(CLI::IsMember({"both", "chrome", "log", "none"}));

  CLI11_PARSE(app, argc, argv);
  spdlog::set_level(spdlog::level::from_str(log_level));

  try {
    if (*c) return run_crawl(crawl);
    if (*a) {
      auto m = cs::crawl::metric_from_string(metric);
      if (!m) throw std::invalid_argument("unknown metric " + metric);
      analysis.metric = *m;
      if (!tiers.empty()) analysis.tiers = cs::crawl::parse_ranges(tiers);
      for (const auto& p : cs::crawl::run_analysis(analysis_name, analysis)) std::cout << p.string() << "\n";
      return 0;
    }
    if (*d) return run_detect(snapshot_file, plan_mode, cmp_json);
    if (*serve) return run_fixtures_serve(world_file, channel);
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return 1;
  }
  return 0;
}
