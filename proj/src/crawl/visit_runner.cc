#include "cookiescope/crawl/visit_runner.h"

#include <thread>

#include <fmt/chrono.h>
#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "cookiescope/classify/cookie_classifier.h"
#include "cookiescope/discovery/discovery.h"
#include "cookiescope/engine/banner_detector.h"
#include "cookiescope/engine/button_selector.h"

namespace cookiescope::crawl {

namespace {

using session::Clock;
using session::Deadline;
using session::VisitStatus;

// Hard cap reached while the visit was waiting or talking to the browser.
struct CrawlTimeout {};

std::string utc_now() {
  return fmt::format("{:%Y-%m-%dT%H:%M:%SZ}", fmt::gmtime(std::time(nullptr)));
}

std::int64_t ms_between(Clock::time_point a, Clock::time_point b) {
  return std::chrono::duration_cast<Millis>(b - a).count();
}

void sleep_until(Clock::time_point t, const Deadline& deadline, std::stop_token stop) {
  const bool capped = t > deadline.at();
  const Clock::time_point wake = capped ? deadline.at() : t;
  while (Clock::now() < wake) {
    if (stop.stop_requested()) throw CrawlTimeout{};
    std::this_thread::sleep_for(std::min<Clock::duration>(wake - Clock::now(), Millis(50)));
  }
  if (capped) throw CrawlTimeout{};
}

class Visit {
 public:
  Visit(const VisitJob& job, const VisitContext& ctx, std::stop_token stop)
      : job_(job), ctx_(ctx), cfg_(*ctx.config), res_(*ctx.resources), stop_(stop) {}

  session::VisitRecord run() {
    record_.site = job_.target.domain;
    record_.rank = job_.target.rank;
    record_.location = cfg_.location;
    record_.page_kind = job_.page_kind;
    record_.target_url = job_.url;
    record_.mode = job_.mode;
    record_.profile = job_.profile.name;
    record_.repetition = job_.repetition;
    record_.timings.started_at = utc_now();
    const Clock::time_point start = Clock::now();
    record_.timings.schedule_ms = ms_between(ctx_.campaign_start, start);
    deadline_ = Deadline(start + cfg_.timeouts.hard);

    session_ = session::BrowserSession::start(session_options(cfg_, job_.profile), deadline_);
    try {
      body(start);
    } catch (const CrawlTimeout&) {
      fail(VisitStatus::kCrawlTimeout, "hard visit timeout reached");
    } catch (const session::TransportError& e) {
      if (e.deadline_hit() || deadline_.expired()) {
        fail(VisitStatus::kCrawlTimeout, e.what());
      } else {
        fail(VisitStatus::kException, e.what());
      }
    } catch (const dom::SnapshotError& e) {
      fail(VisitStatus::kException, std::string("structural: ") + e.what());
    } catch (const std::exception& e) {
      fail(deadline_.expired() ? VisitStatus::kCrawlTimeout : VisitStatus::kException, e.what());
    }
    session_->close();
    record_.timings.total_ms = ms_between(start, Clock::now());
    return std::move(record_);
  }

 private:
  void fail(VisitStatus status, std::string message) {
    record_.status = status;
    record_.error = std::move(message);
  }

  void shoot(std::string_view label) {
    if (!cfg_.screenshots) return;
    const auto path = screenshot_path(cfg_, job_, label);
    if (session_->screenshot(path, deadline_)) {
      record_.screenshots.push_back(std::filesystem::relative(path, cfg_.output_dir).string());
    }
  }

  void body(Clock::time_point start) {
    const session::NavigationOutcome nav = session_->navigate(job_.url, deadline_);
    record_.timings.load_ms = ms_between(start, Clock::now());
    switch (nav.status) {
      case session::NavigationStatus::kOk: break;
      case session::NavigationStatus::kUnreachable: return fail(VisitStatus::kUnreachable, nav.error);
      case session::NavigationStatus::kLoadTimeout: return fail(VisitStatus::kLoadTimeout, nav.error);
      case session::NavigationStatus::kCrawlTimeout: return fail(VisitStatus::kCrawlTimeout, nav.error);
    }
    record_.url_final = nav.final_url;
    const Clock::time_point t0 = Clock::now();  // dwell clock
    shoot("before");

    std::optional<dom::DomSnapshot> snapshot;
    std::optional<engine::BannerFinding> finding;
    for (std::size_t i = 0; i < cfg_.detection_schedule.size() && !finding; ++i) {
      sleep_until(t0 + cfg_.detection_schedule[i], deadline_, stop_);
      record_.detection_attempts = static_cast<int>(i + 1);
      try {
        snapshot = session_->capture(deadline_);
      } catch (const session::ProbeProtocolError& e) {
        spdlog::debug("{} attempt {}: {}", job_.url, i, e.what());
        continue;
      }
      finding = engine::detect_banner(*snapshot, res_.corpus);
      if (finding) finding->attempt_index = static_cast<int>(i);
    }
    if (finding) {
      session::BannerSummary summary{finding->banner_node, finding->anchor_node,
                                     finding->frame_path, finding->attempt_index, {}};
      for (const auto& m : finding->matched_words) {
        if (std::find(summary.matched_phrases.begin(), summary.matched_phrases.end(), m.phrase) ==
            summary.matched_phrases.end()) {
          summary.matched_phrases.push_back(m.phrase);
        }
      }
      record_.banner = std::move(summary);
      shoot("banner");
    }

    engine::CmpAnswer cmp_answer;
    try {
      cmp_answer = session_->query_cmp(res_.cmp_registry.markers(), deadline_);
    } catch (const session::ProbeProtocolError& e) {
      spdlog::debug("{} cmp query: {}", job_.url, e.what());
    }
    record_.cmp = engine::identify_cmp(cmp_answer, res_.cmp_registry);

    if (cfg_.find_dnsmpi && job_.page_kind == "landing" && snapshot) {
      record_.dnsmpi = discovery::find_dnsmpi(*snapshot, res_.dnsmpi_phrases);
    }

    sleep_until(t0 + cfg_.timeouts.dwell, deadline_, stop_);
    const std::string mechanism(session::to_string(ctx_.cookie_mechanism));
    record_.cookie_mechanism = mechanism;
    auto pre = session_->capture_cookies(ctx_.cookie_mechanism, session::Phase::kPreInteraction, deadline_);
    record_.counts_pre = classify::count_by_class(pre, job_.target.domain, res_.psl, res_.blocklist);
    record_.cookies = pre;

    if (job_.mode != engine::InteractionMode::kNone && finding && snapshot) {
      interact(*snapshot, *finding, cmp_answer);
      if (record_.interaction && record_.interaction->steps_attempted > 0) {
        sleep_until(Clock::now() + cfg_.timeouts.post_click_settle, deadline_, stop_);
        auto post = session_->capture_cookies(ctx_.cookie_mechanism, session::Phase::kPostInteraction, deadline_);
        record_.counts_post = classify::count_by_class(post, job_.target.domain, res_.psl, res_.blocklist);
        record_.cookies.insert(record_.cookies.end(), post.begin(), post.end());
      }
    }
    record_.status = VisitStatus::kOk;
  }

  bool click(const dom::FramePath& frame, dom::NodeId node) {
    const session::ClickResult r = session_->click(frame, node, deadline_);
    ++record_.interaction->clicks;
    shoot(fmt::format("after-click-{}", record_.interaction->clicks));
    return r.success;
  }

  void interact(const dom::DomSnapshot& snapshot, const engine::BannerFinding& finding,
                const engine::CmpAnswer& cmp_answer) {
    const engine::InteractionPlan plan = engine::plan_interaction(
        snapshot, finding, res_.corpus, job_.mode, cmp_answer, res_.cmp_registry);
    record_.interaction = session::InteractionResult{};
    session::InteractionResult& result = *record_.interaction;
    result.mode = job_.mode;
    result.note = plan.note;
    for (const engine::PlanStep& step : plan.steps) {
      ++result.steps_attempted;
      bool ok = false;
      try {
        switch (step.strategy) {
          case engine::Strategy::kWordClick:
            result.clicked_node = step.target;
            ok = click(step.frame_path, *step.target);
            break;
          case engine::Strategy::kCmpApi:
            result.api_call = step.api_call;
            ok = session_->cmp_reject(step.api_marker, deadline_).success;
            break;
          case engine::Strategy::kSettingsThenWord: {
            if (!click(step.frame_path, *step.target)) break;
            sleep_until(Clock::now() + cfg_.timeouts.settings_settle, deadline_, stop_);
            const dom::DomSnapshot dialog = session_->capture(deadline_);
            const auto again = engine::detect_banner(dialog, res_.corpus);
            if (!again) break;
            const auto reject = engine::select_button(dialog, *again, res_.corpus, corpus::Category::kReject);
            if (!reject) break;
            result.clicked_node = reject;
            ok = click(again->frame_path, *reject);
            break;
          }
        }
      } catch (const session::ProbeProtocolError& e) {
        result.note = e.what();
      }
      if (ok) {
        result.success = true;
        result.strategy = step.strategy;
        break;
      }
    }
  }

  const VisitJob& job_;
  const VisitContext& ctx_;
  const CrawlConfig& cfg_;
  const Resources& res_;
  std::stop_token stop_;
  Deadline deadline_;
  std::unique_ptr<session::BrowserSession> session_;
  session::VisitRecord record_;
};

}  // namespace

Resources load_resources(const CrawlConfig& config) {
  const ResourcePaths& p = config.resources;
  return {corpus::load_corpus(p.corpus, {config.include_corpus_supplement}),
          classify::SuffixRules::load(p.psl), classify::Blocklist::load(p.blocklist),
          engine::load_cmp_registry(p.cmp_registry), discovery::load_phrases(p.dnsmpi_phrases)};
}

session::SessionOptions session_options(const CrawlConfig& config,
                                        const session::DeviceProfile& profile) {
  session::SessionOptions options;
  options.endpoint = config.endpoint;
  options.profile = profile;
  options.profile.user_agent = session::with_contact_comment(profile.user_agent, config.contact);
  options.page_load_timeout = config.timeouts.load;
  options.script_timeout = std::min(config.timeouts.hard, Millis(30000));
  options.probe_bundle = config.probe_bundle;
  options.headless = config.headless;
  return options;
}

std::string landing_url(const Target& target) {
  if (target.domain.find("://") != std::string::npos) return target.domain;
  return "http://" + target.domain + "/";
}

std::filesystem::path screenshot_path(const CrawlConfig& config, const VisitJob& job,
                                      std::string_view label) {
  std::string site = job.target.domain;
  for (char& c : site) {
    if (c == '/' || c == ':') c = '_';
  }
  std::string name = fmt::format("{}_{}_{}_{}", site, engine::to_string(job.mode), job.repetition, label);
  if (job.page_kind != "landing") name = fmt::format("{}_{}", name, std::hash<std::string>{}(job.url) % 100000);
  return config.output_dir / "screenshots" / job.profile.name / (name + ".png");
}

session::VisitRecord run_visit(const VisitJob& job, const VisitContext& context,
                               std::stop_token stop) {
  return Visit(job, context, stop).run();
}

}  // namespace cookiescope::crawl
