#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "cookiescope/classify/blocklist.h"
#include "cookiescope/classify/public_suffix.h"
#include "cookiescope/session/cookie.h"

namespace cookiescope::classify {

enum class Party { kFirst, kThird };
std::string_view to_string(Party party);

struct CookieClass {
  Party party = Party::kFirst;
  // The cookie host, or a parent of it no shorter than the registrable
  // domain, is blocklisted; independent of party.
  bool tracking = false;
  bool operator==(const CookieClass&) const = default;
};

// Throws DomainError when either domain has no registrable part.
CookieClass classify(const session::CookieRecord& cookie, std::string_view site_host,
                     const SuffixRules& rules, const Blocklist& blocklist);

struct ClassCounts {
  std::size_t first_party = 0;
  std::size_t third_party = 0;
  std::size_t tracking = 0;     // any party
  std::size_t tp_tracking = 0;  // tracking and third-party
  std::size_t unclassified = 0;
  bool operator==(const ClassCounts&) const = default;
};

// One count per distinct (name, domain_attr, path).
ClassCounts count_by_class(const std::vector<session::CookieRecord>& records,
                           std::string_view site_host, const SuffixRules& rules,
                           const Blocklist& blocklist);

}  // namespace cookiescope::classify
