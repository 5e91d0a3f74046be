#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cookiescope::session {

struct ScreenSize {
  int width = 0;
  int height = 0;
  bool operator==(const ScreenSize&) const = default;
};

struct DeviceProfile {
  std::string name;  // "desktop" | "mobile"
  std::string user_agent;
  ScreenSize screen;
  bool operator==(const DeviceProfile&) const = default;
};

inline constexpr std::string_view kDesktopUserAgent =
    "Mozilla/5.0 (X11; Linux x86_64; rv:95.0) Gecko/20100101 Firefox/95.0";
inline constexpr std::string_view kMobileUserAgent =
    "Mozilla/5.0 (Android 12; Mobile; rv:68.0) Gecko/68.0 Firefox/93.0";

DeviceProfile desktop_profile();  // 1366x768
DeviceProfile mobile_profile();   // 340x695

// "desktop" or "mobile"; nullopt otherwise.
std::optional<DeviceProfile> profile_by_name(std::string_view name);

// Throws std::invalid_argument on an empty name/agent or a non-positive screen.
void validate(const DeviceProfile& profile);

// Appends a parenthesised contact comment to the agent string, the polite
// way to identify a measurement crawler. Empty comment leaves it unchanged.
std::string with_contact_comment(std::string_view user_agent, std::string_view comment);

}  // namespace cookiescope::session
