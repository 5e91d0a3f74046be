#include "cookiescope/session/device_profile.h"

#include <stdexcept>

namespace cookiescope::session {

DeviceProfile desktop_profile() {
  return {"desktop", std::string(kDesktopUserAgent), {1366, 768}};
}

DeviceProfile mobile_profile() {
  return {"mobile", std::string(kMobileUserAgent), {340, 695}};
}

std::optional<DeviceProfile> profile_by_name(std::string_view name) {
  if (name == "desktop") return desktop_profile();
  if (name == "mobile") return mobile_profile();
  return std::nullopt;
}

void validate(const DeviceProfile& profile) {
  if (profile.name.empty()) throw std::invalid_argument("device profile without a name");
  if (profile.user_agent.empty()) {
    throw std::invalid_argument("device profile " + profile.name + " has no user agent");
  }
  if (profile.screen.width <= 0 || profile.screen.height <= 0) {
    throw std::invalid_argument("device profile " + profile.name + " has a non-positive screen");
  }
}

std::string with_contact_comment(std::string_view user_agent, std::string_view comment) {
  std::string out(user_agent);
  if (!comment.empty()) out += " (" + std::string(comment) + ")";
  return out;
}

}  // namespace cookiescope::session
