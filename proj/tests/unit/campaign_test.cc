#include <gtest/gtest.h>

#include <algorithm>
#include <map>

#include "cookiescope/crawl/analyze.h"
#include "cookiescope/crawl/campaign.h"
#include "testkit/testkit.h"

// End-to-end campaigns against the fixture web: real HTTP for pages and
// cookies, a WebDriver endpoint rendering the fixture snapshots.

namespace {

using namespace cookiescope;
using namespace cookiescope::crawl;
using engine::InteractionMode;
using session::VisitRecord;
using session::VisitStatus;

std::map<std::string, VisitRecord> by_site(const std::vector<VisitRecord>& records) {
  std::map<std::string, VisitRecord> out;
  for (const auto& r : records) out[r.site] = r;
  return out;
}

std::vector<VisitRecord> stored(const CrawlConfig& c) {
  return RecordStore::read(c.output_dir / kRecordsFile).visits;
}

// Cookie identity and value, without expiry (relative to wall time).
std::vector<std::string> cookie_fingerprint(const VisitRecord& r) {
  std::vector<std::string> out;
  for (const auto& c : r.cookies) {
    out.push_back(c.name + "=" + c.value + ";" + c.domain_attr + c.path + ";" +
                  std::string(session::to_string(c.observed_at)));
  }
  std::sort(out.begin(), out.end());
  return out;
}

TEST(Campaign, SixFixtureSitesInAcceptMode) {
  testkit::FixtureWeb web;
  auto config = testkit::e2e_config(web, testkit::scratch_dir("six-sites"),
                                    {"site-a.test", "site-b.test", "site-c.test", "site-d.test", "site-e.test",
                                     "site-f.test"});
  config.modes = {InteractionMode::kAccept};
  const RunManifest manifest = run_campaign(config);
  const auto sites = by_site(stored(config));
  ASSERT_EQ(sites.size(), 6u);

  const VisitRecord& a = sites.at("site-a.test");
  ASSERT_EQ(a.status, VisitStatus::kOk) << a.error;
  ASSERT_TRUE(a.banner);
  EXPECT_EQ(a.banner->banner_node, 10);
  ASSERT_TRUE(a.interaction);
  EXPECT_TRUE(a.interaction->success);
  EXPECT_EQ(a.interaction->clicked_node, 13);
  ASSERT_TRUE(a.counts_pre && a.counts_post);
  EXPECT_EQ(a.counts_post->first_party - a.counts_pre->first_party, 0u);
  EXPECT_EQ(a.counts_post->third_party - a.counts_pre->third_party, 4u);
  EXPECT_EQ(a.counts_post->tracking - a.counts_pre->tracking, 2u);
  EXPECT_EQ(a.cmp.detected_via, engine::DetectedVia::kTcfApi);
  EXPECT_EQ(a.cmp.cmp_id, 10);
  EXPECT_FALSE(a.screenshots.empty());
  for (const auto& shot : a.screenshots) EXPECT_TRUE(std::filesystem::exists(config.output_dir / shot)) << shot;

  for (const char* ok : {"site-b.test", "site-c.test", "site-d.test"}) {
    const VisitRecord& r = sites.at(ok);
    EXPECT_EQ(r.status, VisitStatus::kOk) << ok << ": " << r.error;
    EXPECT_TRUE(r.banner) << ok;
  }
  EXPECT_EQ(sites.at("site-e.test").status, VisitStatus::kLoadTimeout) << sites.at("site-e.test").error;
  EXPECT_EQ(sites.at("site-f.test").status, VisitStatus::kCrawlTimeout) << sites.at("site-f.test").error;

  EXPECT_EQ(manifest.attempted, 6u);
  EXPECT_EQ(manifest.scheduled, 6u);
  EXPECT_FALSE(manifest.aborted);
  EXPECT_EQ(manifest.status_counts.at("ok"), 4u);
  EXPECT_EQ(manifest.status_counts.at("load-timeout"), 1u);
  EXPECT_EQ(manifest.status_counts.at("crawl-timeout"), 1u);
  EXPECT_EQ(manifest.cookie_mechanism, "chrome-jar");
  EXPECT_EQ(to_json(read_manifest(config.output_dir)).dump(), to_json(manifest).dump());
}

TEST(Campaign, RejectStrategies) {
  testkit::FixtureWeb web;
  auto config = testkit::e2e_config(web, testkit::scratch_dir("reject"),
                                    {"site-b.test", "site-c.test", "site-d.test"});
  config.modes = {InteractionMode::kReject};
  run_campaign(config);
  const auto sites = by_site(stored(config));

  const auto& b = sites.at("site-b.test");
  ASSERT_TRUE(b.interaction) << b.error;
  EXPECT_TRUE(b.interaction->success);
  EXPECT_EQ(b.interaction->strategy, engine::Strategy::kWordClick);
  EXPECT_EQ(b.interaction->clicked_node, 14);
  EXPECT_EQ(b.cmp.cmp_name, "Quantcast");

  const auto& c = sites.at("site-c.test");
  ASSERT_TRUE(c.interaction) << c.error;
  EXPECT_TRUE(c.interaction->success);
  EXPECT_EQ(c.interaction->strategy, engine::Strategy::kSettingsThenWord);
  EXPECT_EQ(c.interaction->clicked_node, 32);
  EXPECT_EQ(c.interaction->clicks, 2);

  const auto& d = sites.at("site-d.test");
  ASSERT_TRUE(d.interaction) << d.error;
  EXPECT_TRUE(d.interaction->success);
  EXPECT_EQ(d.interaction->strategy, engine::Strategy::kCmpApi);
  EXPECT_EQ(d.interaction->api_call, "OneTrust.RejectAll()");
  EXPECT_EQ(d.cmp.detected_via, engine::DetectedVia::kCustomApi);
}

TEST(Campaign, RepeatedVisitsStartFromAnEmptyJar) {
  testkit::FixtureWeb web;
  auto config = testkit::e2e_config(web, testkit::scratch_dir("stateless"), {"site-a.test"});
  config.modes = {InteractionMode::kAccept};
  config.repetitions = 5;
  config.screenshots = false;
  run_campaign(config);
  const auto records = stored(config);
  ASSERT_EQ(records.size(), 5u);
  for (const auto& r : records) {
    ASSERT_EQ(r.status, VisitStatus::kOk) << r.error;
    EXPECT_EQ(cookie_fingerprint(r), cookie_fingerprint(records.front())) << "repetition " << r.repetition;
    EXPECT_EQ(r.counts_pre, records.front().counts_pre);
  }
}

TEST(Campaign, UnknownHostAndRedirect) {
  testkit::FixtureWeb web;
  auto config = testkit::e2e_config(web, testkit::scratch_dir("unreachable"), {"nowhere.test", "site-r.test"});
  config.screenshots = false;
  run_campaign(config);
  const auto sites = by_site(stored(config));
  EXPECT_EQ(sites.at("nowhere.test").status, VisitStatus::kUnreachable) << sites.at("nowhere.test").error;
  const auto& r = sites.at("site-r.test");
  EXPECT_EQ(r.status, VisitStatus::kOk) << r.error;
  EXPECT_EQ(r.url_final, "http://www.site-r.test/");
  EXPECT_EQ(r.target_url, "http://site-r.test/");
}

TEST(Campaign, InterruptedRunResumesWithoutDuplicates) {
  testkit::FixtureWeb web;
  auto config = testkit::e2e_config(web, testkit::scratch_dir("resume"),
                                    {"site-a.test", "site-b.test", "site-c.test", "site-d.test"});
  config.modes = {InteractionMode::kNone, InteractionMode::kAccept};
  config.screenshots = false;
  config.workers = 1;
  RunControl stop;
  stop.stop_after = 3;
  const auto first = run_campaign(config, stop);
  EXPECT_TRUE(first.aborted);
  EXPECT_EQ(first.attempted, 3u);
  EXPECT_EQ(stored(config).size(), 3u);

  const auto second = run_campaign(config);
  EXPECT_FALSE(second.aborted);
  EXPECT_EQ(second.resumed_skipped, 3u);
  EXPECT_EQ(second.attempted, 5u);
  const auto records = stored(config);
  ASSERT_EQ(records.size(), 8u);
  std::set<session::VisitKey> keys;
  for (const auto& r : records) EXPECT_TRUE(keys.insert(session::visit_key(r)).second);

  const auto third = run_campaign(config);
  EXPECT_EQ(third.attempted, 0u);
  EXPECT_EQ(third.resumed_skipped, 8u);
}

TEST(Campaign, RepeatedCampaignsAgree) {
  std::vector<std::vector<VisitRecord>> runs;
  for (int run = 0; run < 2; ++run) {
    testkit::FixtureWeb web;
    auto config = testkit::e2e_config(web, testkit::scratch_dir("determinism-" + std::to_string(run)),
                                      {"site-a.test", "site-b.test", "site-c.test", "site-d.test"});
    config.modes = {InteractionMode::kAccept, InteractionMode::kReject};
    run_campaign(config);
    auto records = stored(config);
    std::sort(records.begin(), records.end(),
              [](const auto& x, const auto& y) { return session::visit_key(x) < session::visit_key(y); });
    runs.push_back(records);
  }
  ASSERT_EQ(runs[0].size(), runs[1].size());
  for (std::size_t i = 0; i < runs[0].size(); ++i) {
    const auto& x = runs[0][i];
    const auto& y = runs[1][i];
    EXPECT_EQ(x.status, y.status) << x.site;
    EXPECT_EQ(x.banner, y.banner) << x.site;
    EXPECT_EQ(x.interaction, y.interaction) << x.site;
    EXPECT_EQ(x.cmp, y.cmp) << x.site;
    EXPECT_EQ(x.counts_pre, y.counts_pre) << x.site;
    EXPECT_EQ(x.counts_post, y.counts_post) << x.site;
    EXPECT_EQ(cookie_fingerprint(x), cookie_fingerprint(y)) << x.site;
    EXPECT_EQ(x.screenshots, y.screenshots) << x.site;
  }
}

TEST(Campaign, RefusesToRunWithoutCookieInstrumentation) {
  fixtures::BrowserOptions options;
  options.channel = fixtures::CookieChannel::kNone;
  testkit::FixtureWeb web(options);
  auto config = testkit::e2e_config(web, testkit::scratch_dir("no-channel"), {"site-a.test"});
  EXPECT_THROW(run_campaign(config), CampaignError);
  EXPECT_FALSE(std::filesystem::exists(config.output_dir / kRecordsFile) && !stored(config).empty());
}

TEST(Campaign, FallsBackToSetCookieLog) {
  fixtures::BrowserOptions options;
  options.channel = fixtures::CookieChannel::kLogOnly;
  testkit::FixtureWeb web(options);
  auto config = testkit::e2e_config(web, testkit::scratch_dir("log-channel"), {"site-a.test"});
  config.modes = {InteractionMode::kAccept};
  const auto manifest = run_campaign(config);
  EXPECT_EQ(manifest.cookie_mechanism, "set-cookie-log");
  const auto records = stored(config);
  ASSERT_EQ(records.size(), 1u);
  ASSERT_TRUE(records[0].counts_post) << records[0].error;
  EXPECT_EQ(records[0].cookie_mechanism, "set-cookie-log");
  EXPECT_EQ(records[0].counts_post->third_party - records[0].counts_pre->third_party, 4u);
}

TEST(Campaign, RefusesToRunWithTrackingProtection) {
  fixtures::BrowserOptions options;
  options.force_tracking_protection = true;
  testkit::FixtureWeb web(options);
  auto config = testkit::e2e_config(web, testkit::scratch_dir("tracking-protection"), {"site-a.test"});
  EXPECT_THROW(run_campaign(config), CampaignError);
}

TEST(Campaign, NoBrowserAtAll) {
  fixtures::BrowserOptions options;
  options.fail_session_starts = 1000;
  testkit::FixtureWeb web(options);
  auto config = testkit::e2e_config(web, testkit::scratch_dir("no-browser"), {"site-a.test"});
  EXPECT_THROW(run_campaign(config), CampaignError);
}

TEST(Campaign, AbortsAfterConsecutiveSessionFailures) {
  fixtures::BrowserOptions options;
  options.grant_session_starts = 1;  // the preflight session
  options.fail_session_starts = 1000;
  testkit::FixtureWeb web(options);
  auto config = testkit::e2e_config(web, testkit::scratch_dir("session-failures"),
                                    {"site-a.test", "site-b.test", "site-c.test", "site-d.test"});
  config.max_session_failures = 2;
  config.workers = 1;
  const auto manifest = run_campaign(config);
  EXPECT_TRUE(manifest.aborted);
  EXPECT_NE(manifest.abort_reason.find("session start"), std::string::npos) << manifest.abort_reason;
  EXPECT_EQ(manifest.attempted, 0u);
  EXPECT_TRUE(stored(config).empty());
  EXPECT_TRUE(read_manifest(config.output_dir).aborted);
}

TEST(Campaign, MobileProfileAndContactReachTheServer) {
  testkit::FixtureWeb web;
  auto config = testkit::e2e_config(web, testkit::scratch_dir("mobile"), {"site-a.test"});
  config.profiles = {session::mobile_profile()};
  config.contact = "crawler-ops@example.org";
  config.screenshots = false;
  run_campaign(config);
  const auto records = stored(config);
  ASSERT_EQ(records.size(), 1u);
  EXPECT_EQ(records[0].profile, "mobile");
  bool seen = false;
  for (const auto& req : web.server->requests()) {
    if (req.host != "site-a.test") continue;
    seen = true;
    EXPECT_NE(req.user_agent.find("Mobile"), std::string::npos) << req.user_agent;
    EXPECT_NE(req.user_agent.find("crawler-ops@example.org"), std::string::npos) << req.user_agent;
  }
  EXPECT_TRUE(seen);
}

TEST(Campaign, InnerPagesAndDnsmpi) {
  testkit::FixtureWeb web;
  auto config = testkit::e2e_config(web, testkit::scratch_dir("inner"), {"site-a.test"});
  config.inner_pages = true;
  config.find_dnsmpi = true;
  config.screenshots = false;
  run_campaign(config);
  const auto contents = RecordStore::read(config.output_dir / kRecordsFile);
  ASSERT_EQ(contents.inner_pages.size(), 1u);
  const auto& inner = contents.inner_pages[0].pages.inner_urls;
  EXPECT_FALSE(inner.empty());
  for (const auto& url : inner) {
    EXPECT_EQ(url.rfind("http://site-a.test/", 0), 0u) << url;
    EXPECT_NE(url, "http://site-a.test/");
  }
  std::size_t inner_visits = 0;
  for (const auto& r : contents.visits) {
    if (r.page_kind == "inner") {
      ++inner_visits;
      EXPECT_FALSE(r.dnsmpi) << "dnsmpi is searched on landing pages only";
    } else {
      ASSERT_TRUE(r.dnsmpi);
      EXPECT_TRUE(r.dnsmpi->present);
    }
  }
  EXPECT_EQ(inner_visits, inner.size());

  // A second run reuses the stored inner-page set.
  const auto again = run_campaign(config);
  EXPECT_EQ(again.attempted, 0u);
  EXPECT_EQ(RecordStore::read(config.output_dir / kRecordsFile).inner_pages.size(), 1u);
}

TEST(Campaign, LateBannerFoundOnALaterAttempt) {
  testkit::FixtureWeb web;
  auto config = testkit::e2e_config(web, testkit::scratch_dir("late"), {"site-l.test"});
  config.screenshots = false;
  run_campaign(config);
  const auto records = stored(config);
  ASSERT_EQ(records.size(), 1u);
  ASSERT_TRUE(records[0].banner) << records[0].error;
  EXPECT_GE(records[0].banner->attempt_index, 1);
  EXPECT_GE(records[0].detection_attempts, 2);
}

TEST(Campaign, StoreFeedsTheAnalysis) {
  testkit::FixtureWeb web;
  auto config = testkit::e2e_config(web, testkit::scratch_dir("to-analysis"),
                                    {"site-a.test", "site-b.test", "site-e.test"});
  config.modes = {InteractionMode::kNone, InteractionMode::kAccept};
  config.screenshots = false;
  run_campaign(config);
  AnalysisOptions o;
  o.stores = {config.output_dir};
  o.output_dir = config.output_dir / "analysis";
  const auto files = run_analysis("banner-effect", o);
  ASSERT_EQ(files.size(), 2u);
  std::ifstream in(files[1]);
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  EXPECT_NE(text.find("site-e.test"), std::string::npos) << text;  // excluded, listed
  EXPECT_NE(text.find("accept\tthird-party\t2"), std::string::npos) << text;
}

TEST(Campaign, ExpandJobsIsSiteMajor) {
  CrawlConfig c;
  c.targets = {{1, "a.test"}, {2, "b.test"}};
  c.modes = {InteractionMode::kNone, InteractionMode::kAccept};
  c.repetitions = 2;
  c.profiles = {session::desktop_profile(), session::mobile_profile()};
  const auto jobs = expand_jobs(c);
  ASSERT_EQ(jobs.size(), 16u);
  for (std::size_t i = 0; i < 8; ++i) EXPECT_EQ(jobs[i].target.domain, "a.test");
  for (std::size_t i = 8; i < 16; ++i) EXPECT_EQ(jobs[i].target.domain, "b.test");
}

TEST(Campaign, SkewViolations) {
  VisitRecord a, b, c;
  a.site = b.site = "x.test";
  c.site = "y.test";
  a.timings.schedule_ms = 0;
  b.timings.schedule_ms = 5000;
  c.timings.schedule_ms = 100;
  EXPECT_EQ(skew_violations({a, b, c}, Millis(1000)), std::vector<std::string>{"x.test"});
  EXPECT_TRUE(skew_violations({a, b, c}, Millis(10000)).empty());
}

}  // namespace
