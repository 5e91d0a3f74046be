#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "cookiescope/classify/cookie_classifier.h"
#include "cookiescope/discovery/discovery.h"
#include "cookiescope/engine/button_selector.h"
#include "cookiescope/engine/cmp.h"
#include "cookiescope/session/cookie.h"

namespace cookiescope::session {

inline constexpr int kRecordVersion = 1;

enum class VisitStatus { kOk, kUnreachable, kLoadTimeout, kCrawlTimeout, kException };
std::string_view to_string(VisitStatus status);  // ok|unreachable|load-timeout|crawl-timeout|exception
std::optional<VisitStatus> visit_status_from_string(std::string_view text);
inline constexpr VisitStatus kAllStatuses[] = {VisitStatus::kOk, VisitStatus::kUnreachable,
                                               VisitStatus::kLoadTimeout, VisitStatus::kCrawlTimeout,
                                               VisitStatus::kException};

struct BannerSummary {
  dom::NodeId banner_node = 0;
  dom::NodeId anchor_node = 0;
  dom::FramePath frame_path;
  int attempt_index = 0;
  std::vector<std::string> matched_phrases;
  bool operator==(const BannerSummary&) const = default;
};

struct InteractionResult {
  engine::InteractionMode mode = engine::InteractionMode::kAccept;
  std::optional<engine::Strategy> strategy;  // the step that succeeded
  std::optional<dom::NodeId> clicked_node;
  std::string api_call;                      // cmp-api steps
  bool success = false;
  int clicks = 0;
  int steps_attempted = 0;
  std::string note;
  bool operator==(const InteractionResult&) const = default;
};

struct Timings {
  std::string started_at;  // UTC ISO-8601
  std::int64_t schedule_ms = 0;  // since campaign start
  std::int64_t load_ms = 0;
  std::int64_t total_ms = 0;
  bool operator==(const Timings&) const = default;
};

struct VisitRecord {
  std::string site;
  int rank = 0;
  std::string location;
  std::string page_kind = "landing";  // landing|inner
  std::string target_url;
  std::string url_final;
  engine::InteractionMode mode = engine::InteractionMode::kNone;
  std::string profile;
  int repetition = 1;
  VisitStatus status = VisitStatus::kOk;
  std::string error;
  std::optional<BannerSummary> banner;
  int detection_attempts = 0;
  std::optional<InteractionResult> interaction;
  engine::CmpRecord cmp;
  std::optional<std::string> cookie_mechanism;
  std::vector<CookieRecord> cookies;  // both phases
  std::optional<classify::ClassCounts> counts_pre;
  std::optional<classify::ClassCounts> counts_post;
  std::vector<std::string> screenshots;
  std::optional<discovery::DnsmpiFinding> dnsmpi;
  Timings timings;

  bool operator==(const VisitRecord&) const = default;
};

// Resume identity.
using VisitKey = std::tuple<std::string, std::string, std::string, std::string, int>;
VisitKey visit_key(const VisitRecord& record);  // site, target_url, mode, profile, repetition

std::vector<CookieRecord> cookies_in_phase(const VisitRecord& record, Phase phase);

nlohmann::ordered_json to_json(const VisitRecord& record);
// Throws std::invalid_argument on missing fields or unknown versions.
VisitRecord visit_record_from_json(const nlohmann::json& value);

nlohmann::ordered_json to_json(const classify::ClassCounts& counts);
classify::ClassCounts class_counts_from_json(const nlohmann::json& value);

}  // namespace cookiescope::session
