#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "cookiescope/dom/dom_model.h"

namespace cookiescope::discovery {

inline constexpr std::size_t kMaxInnerPages = 10;
inline constexpr std::size_t kMaxLinksTested = 50;

struct InnerPageSet {
  std::string landing_url;
  std::vector<std::string> inner_urls;
  std::size_t links_tested = 0;
  bool operator==(const InnerPageSet&) const = default;
};

// Loads a URL in the live session and reports where it ended up.
class Navigator {
 public:
  virtual ~Navigator() = default;
  // Final URL after redirects, or nullopt when the navigation failed.
  virtual std::optional<std::string> final_url(const std::string& url) = 0;
};

// Anchor hrefs of the landing snapshot in document order, resolved against
// the landing URL and normalized; candidates outside the landing origin,
// duplicates and the landing page itself are skipped without a navigation.
// Each remaining candidate is navigated (a failure still counts as tested)
// and kept when its final URL stays on the landing origin and is new.
// Stops at kMaxInnerPages accepted or kMaxLinksTested tested.
InnerPageSet find_inner_pages(Navigator& navigator, const std::string& landing_url,
                              const dom::DomSnapshot& landing_snapshot);

struct DnsmpiFinding {
  bool present = false;
  std::string link_text;  // the matched phrase
  std::string href;
  bool operator==(const DnsmpiFinding&) const = default;
};

// One phrase per line; '#' comments.
std::vector<std::string> load_phrases(const std::filesystem::path& path);

// First <a> with an href, in document order, whose text contains one of
// the phrases (normalized, case-insensitive).
DnsmpiFinding find_dnsmpi(const dom::DomSnapshot& snapshot,
                          const std::vector<std::string>& phrases);

}  // namespace cookiescope::discovery
