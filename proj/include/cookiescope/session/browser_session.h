#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cookiescope/dom/dom_model.h"
#include "cookiescope/engine/cmp.h"
#include "cookiescope/session/cookie.h"
#include "cookiescope/session/deadline.h"
#include "cookiescope/session/device_profile.h"
#include "cookiescope/session/probe_protocol.h"
#include "cookiescope/session/webdriver_client.h"

namespace cookiescope::session {

// How the full cookie jar is read.
enum class CookieMechanism {
  kChromeJar,     // privileged context enumerating the browser cookie store
  kSetCookieLog,  // accumulated Set-Cookie headers from network instrumentation
};
std::string_view to_string(CookieMechanism mechanism);  // chrome-jar|set-cookie-log
std::optional<CookieMechanism> cookie_mechanism_from_string(std::string_view text);

// Scripts run in the privileged (chrome) context.
inline constexpr std::string_view kChromeCookieScript =
    "const out = [];"
    "for (const c of Services.cookies.cookies) {"
    " out.push({name: c.name, value: c.value, domain: c.host, path: c.path,"
    " secure: c.isSecure, httpOnly: c.isHttpOnly,"
    " expiry: c.isSession ? null : c.expiry}); }"
    "return out;";
inline constexpr std::string_view kChromeTrackingPrefScript =
    "return Services.prefs.getBoolPref('privacy.trackingprotection.enabled');";
// Extension command exposing the instrumentation log.
inline constexpr std::string_view kSetCookieLogPath = "/cookiescope/set-cookie-log";

struct SessionOptions {
  std::string endpoint;
  DeviceProfile profile;
  Millis page_load_timeout{60000};
  Millis script_timeout{30000};
  // Probe bundle evaluated after each navigation; none when the automation
  // endpoint provides the probe itself.
  std::optional<std::filesystem::path> probe_bundle;
  bool headless = true;
};

enum class NavigationStatus { kOk, kUnreachable, kLoadTimeout, kCrawlTimeout };

struct NavigationOutcome {
  NavigationStatus status = NavigationStatus::kOk;
  std::string final_url;
  std::string error;
};

// Session start failed (endpoint down, capabilities refused).
class SessionStartError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One fresh browser profile. Single owner; not safe for concurrent calls.
class BrowserSession {
 public:
  // Opens a new session with tracking protection off and third-party
  // cookies allowed, sized to the profile screen. Throws SessionStartError.
  static std::unique_ptr<BrowserSession> start(const SessionOptions& options,
                                               const Deadline& deadline);
  ~BrowserSession();
  BrowserSession(const BrowserSession&) = delete;
  BrowserSession& operator=(const BrowserSession&) = delete;

  const std::string& id() const { return id_; }
  const DeviceProfile& profile() const { return options_.profile; }

  // Loads the URL and injects the probe. Never throws for navigation
  // failures; they are mapped onto the outcome status.
  NavigationOutcome navigate(const std::string& url, const Deadline& deadline);
  std::string current_url(const Deadline& deadline);

  dom::DomSnapshot capture(const Deadline& deadline);
  ClickResult click(const dom::FramePath& frame_path, dom::NodeId node_id,
                    const Deadline& deadline);
  engine::CmpAnswer query_cmp(const std::vector<std::string>& markers, const Deadline& deadline);
  ClickResult cmp_reject(std::string_view marker, const Deadline& deadline);

  // Which mechanism works on this endpoint; nullopt when neither does.
  std::optional<CookieMechanism> detect_cookie_mechanism(const Deadline& deadline);
  std::vector<CookieRecord> capture_cookies(CookieMechanism mechanism, Phase phase,
                                            const Deadline& deadline);
  // Reads the tracking-protection preference through the chrome context.
  std::optional<bool> tracking_protection_enabled(const Deadline& deadline);

  // Writes a PNG. Returns false (and logs) on failure.
  bool screenshot(const std::filesystem::path& path, const Deadline& deadline);

  // DELETE /session; idempotent, never throws.
  void close();

 private:
  BrowserSession(WebDriverClient client, std::string id, SessionOptions options);
  ProbeMessage probe(const nlohmann::json& request, const Deadline& deadline);
  nlohmann::json run_chrome(std::string_view script, const Deadline& deadline);
  void inject_probe(const Deadline& deadline);

  WebDriverClient client_;
  std::string id_;
  SessionOptions options_;
  std::string probe_source_;
  bool closed_ = false;
};

// Set-Cookie log entries as served by the instrumentation endpoint:
// [{"host": ..., "path": ..., "header": ..., "time": epoch seconds}, ...]
std::vector<CookieRecord> replay_set_cookie_log(const nlohmann::json& log, Phase phase);

// Cookie objects from the chrome-context script or the standard cookie
// endpoint: {name, value, domain, path, secure, httpOnly, expiry}.
CookieRecord cookie_from_webdriver(const nlohmann::json& value, Phase phase);

// Decodes base64 (standard alphabet, padding optional). Throws on bad input.
std::string decode_base64(std::string_view text);

}  // namespace cookiescope::session
