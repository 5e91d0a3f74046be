#include "cookiescope/crawl/campaign.h"

#include <atomic>
#include <map>
#include <mutex>
#include <set>
#include <thread>

#include <fmt/chrono.h>
#include <fmt/format.h>
#include <httplib.h>
#include <openssl/opensslv.h>
#include <spdlog/spdlog.h>
#include <spdlog/version.h>
#include <unicode/uvernum.h>

#include "cookiescope/discovery/discovery.h"

namespace cookiescope::crawl {

namespace {

using session::VisitRecord;
using session::VisitStatus;

std::string utc_now() {
  return fmt::format("{:%Y-%m-%dT%H:%M:%SZ}", fmt::gmtime(std::time(nullptr)));
}

// Navigations made during inner-page discovery, on one live session.
class SessionNavigator : public discovery::Navigator {
 public:
  SessionNavigator(session::BrowserSession& session, Millis budget)
      : session_(session), budget_(budget) {}
  std::optional<std::string> final_url(const std::string& url) override {
    const auto outcome = session_.navigate(url, session::Deadline::after(budget_));
    if (outcome.status != session::NavigationStatus::kOk) return std::nullopt;
    return outcome.final_url;
  }

 private:
  session::BrowserSession& session_;
  Millis budget_;
};

// Opens a throwaway session to check the instrumentation before any visit.
session::CookieMechanism preflight(const CrawlConfig& config) {
  const session::Deadline deadline = session::Deadline::after(config.timeouts.hard);
  std::unique_ptr<session::BrowserSession> s;
  try {
    s = session::BrowserSession::start(session_options(config, config.profiles.front()), deadline);
  } catch (const session::SessionStartError& e) {
    throw CampaignError(std::string("no browser session: ") + e.what());
  }
  const auto mechanism = s->detect_cookie_mechanism(deadline);
  if (!mechanism) {
    throw CampaignError("no cookie instrumentation channel: neither the chrome-context cookie "
                        "store nor the Set-Cookie log is available");
  }
  if (const auto tp = s->tracking_protection_enabled(deadline); tp && *tp) {
    throw CampaignError("tracking protection is enabled in the browser profile");
  } else if (!tp) {
    spdlog::warn("tracking-protection preference unreadable; continuing");
  }
  return *mechanism;
}

InnerPagesRecord discover(const CrawlConfig& config, const Target& target,
                          const session::DeviceProfile& profile) {
  InnerPagesRecord record{target.domain, config.location, profile.name, {}};
  record.pages.landing_url = landing_url(target);
  const session::Deadline deadline = session::Deadline::after(config.timeouts.hard);
  auto s = session::BrowserSession::start(session_options(config, profile), deadline);
  const auto landing = s->navigate(record.pages.landing_url, deadline);
  if (landing.status != session::NavigationStatus::kOk) return record;
  record.pages.landing_url = landing.final_url;
  const dom::DomSnapshot snapshot = s->capture(deadline);
  SessionNavigator navigator(*s, config.timeouts.load);
  record.pages = discovery::find_inner_pages(navigator, landing.final_url, snapshot);
  return record;
}

}  // namespace

std::vector<VisitJob> expand_jobs(const CrawlConfig& config,
                                  const std::vector<InnerPagesRecord>& inner_pages) {
  std::vector<VisitJob> jobs;
  for (const Target& target : config.targets) {
    for (const session::DeviceProfile& profile : config.profiles) {
      std::vector<std::pair<std::string, std::string>> pages{{landing_url(target), "landing"}};
      for (const InnerPagesRecord& inner : inner_pages) {
        if (inner.site != target.domain || inner.profile != profile.name) continue;
        for (const std::string& url : inner.pages.inner_urls) pages.emplace_back(url, "inner");
      }
      for (const auto& [url, kind] : pages) {
        for (engine::InteractionMode mode : config.modes) {
          for (int rep = 1; rep <= config.repetitions; ++rep) {
            jobs.push_back({target, url, kind, mode, profile, rep});
          }
        }
      }
    }
  }
  return jobs;
}

std::vector<std::string> skew_violations(const std::vector<VisitRecord>& records, Millis bound) {
  std::map<std::string, std::pair<std::int64_t, std::int64_t>> span;
  for (const VisitRecord& r : records) {
    const std::int64_t t = r.timings.schedule_ms;
    auto [it, fresh] = span.try_emplace(r.site, t, t);
    if (!fresh) {
      it->second.first = std::min(it->second.first, t);
      it->second.second = std::max(it->second.second, t);
    }
  }
  std::vector<std::string> out;
  for (const auto& [site, s] : span) {
    if (s.second - s.first > bound.count()) out.push_back(site);
  }
  return out;
}

std::map<std::string, std::string> tool_versions() {
  return {
      {"cookiescope", std::string(kToolVersion)},
      {"record_format", std::to_string(session::kRecordVersion)},
      {"icu", U_ICU_VERSION},
      {"openssl", OPENSSL_VERSION_TEXT},
      {"httplib", CPPHTTPLIB_VERSION},
      {"nlohmann_json", fmt::format("{}.{}.{}", NLOHMANN_JSON_VERSION_MAJOR,
                                    NLOHMANN_JSON_VERSION_MINOR, NLOHMANN_JSON_VERSION_PATCH)},
      {"spdlog", fmt::format("{}.{}.{}", SPDLOG_VER_MAJOR, SPDLOG_VER_MINOR, SPDLOG_VER_PATCH)},
  };
}

RunManifest run_campaign(const CrawlConfig& config, const RunControl& control) {
  validate(config);
  const Resources resources = load_resources(config);
  std::filesystem::create_directories(config.output_dir);
  RecordStore store(config.output_dir);

  RunManifest manifest;
  manifest.config_hash = config_hash(config);
  manifest.started_at = utc_now();
  manifest.tool_versions = tool_versions();
  for (VisitStatus s : session::kAllStatuses) manifest.status_counts[std::string(session::to_string(s))] = 0;

  const session::CookieMechanism mechanism = preflight(config);
  manifest.cookie_mechanism = std::string(session::to_string(mechanism));

  const StoreContents existing = StoreContents(
      std::filesystem::exists(store.records_path()) ? RecordStore::read(store.records_path())
                                                    : StoreContents{});
  std::set<session::VisitKey> done;
  for (const VisitRecord& r : existing.visits) done.insert(session::visit_key(r));

  std::vector<InnerPagesRecord> inner = existing.inner_pages;
  if (config.inner_pages) {
    for (const Target& target : config.targets) {
      for (const session::DeviceProfile& profile : config.profiles) {
        const bool known = std::any_of(inner.begin(), inner.end(), [&](const InnerPagesRecord& r) {
          return r.site == target.domain && r.profile == profile.name && r.location == config.location;
        });
        if (known) continue;
        try {
          inner.push_back(discover(config, target, profile));
          store.append(inner.back());
        } catch (const std::exception& e) {
          spdlog::warn("inner-page discovery failed for {}: {}", target.domain, e.what());
        }
      }
    }
  } else {
    inner.clear();
  }

  const std::vector<VisitJob> all_jobs = expand_jobs(config, inner);
  std::vector<VisitJob> jobs;
  for (const VisitJob& job : all_jobs) {
    const session::VisitKey key{job.target.domain, job.url, std::string(engine::to_string(job.mode)),
                                job.profile.name, job.repetition};
    if (done.contains(key)) {
      ++manifest.resumed_skipped;
    } else {
      jobs.push_back(job);
    }
  }
  manifest.scheduled = all_jobs.size();

  const VisitContext context{&config, &resources, mechanism, session::Clock::now()};
  std::atomic<std::size_t> next{0};
  std::atomic<int> consecutive_start_failures{0};
  std::atomic<bool> abort{false};
  std::mutex mutex;  // guards the fields below
  std::vector<VisitRecord> finished;
  std::string abort_reason;

  auto worker = [&](std::stop_token stop) {
    while (!abort && !stop.stop_requested()) {
      const std::size_t i = next.fetch_add(1);
      if (i >= jobs.size()) return;
      if (control.stop_after && i >= *control.stop_after) {
        std::lock_guard lock(mutex);
        if (!abort.exchange(true)) abort_reason = fmt::format("stopped after {} visits", *control.stop_after);
        return;
      }
      try {
        VisitRecord record = run_visit(jobs[i], context, stop);
        consecutive_start_failures = 0;
        store.append(record);
        if (control.on_record) control.on_record(record);
        std::lock_guard lock(mutex);
        finished.push_back(std::move(record));
      } catch (const session::SessionStartError& e) {
        const int failures = ++consecutive_start_failures;
        spdlog::error("session start failed for {}: {}", jobs[i].url, e.what());
        if (failures >= config.max_session_failures) {
          std::lock_guard lock(mutex);
          if (!abort.exchange(true)) {
            abort_reason = fmt::format("{} consecutive session start failures: {}", failures, e.what());
          }
        }
      }
      if (config.politeness_delay.count() > 0) std::this_thread::sleep_for(config.politeness_delay);
    }
  };
  {
    std::vector<std::jthread> pool;
    const int n = std::min<int>(config.workers, static_cast<int>(std::max<std::size_t>(jobs.size(), 1)));
    for (int w = 0; w < n; ++w) pool.emplace_back(worker);
    // Joined explicitly: a jthread destructor would request a stop first.
    for (std::jthread& t : pool) t.join();
  }

  manifest.attempted = finished.size();
  for (const VisitRecord& r : finished) ++manifest.status_counts[std::string(session::to_string(r.status))];
  manifest.aborted = abort;
  manifest.abort_reason = abort_reason;
  manifest.skew_violations = skew_violations(finished, config.max_schedule_skew);
  for (const std::string& site : manifest.skew_violations) {
    spdlog::warn("visits of {} spread beyond the schedule skew bound", site);
  }
  manifest.finished_at = utc_now();
  write_manifest(config.output_dir, manifest);
  return manifest;
}

}  // namespace cookiescope::crawl
