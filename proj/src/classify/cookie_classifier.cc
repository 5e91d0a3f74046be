#include "cookiescope/classify/cookie_classifier.h"

#include <set>

namespace cookiescope::classify {

std::string_view to_string(Party party) {
  return party == Party::kFirst ? "first" : "third";
}

CookieClass classify(const session::CookieRecord& cookie, std::string_view site_host,
                     const SuffixRules& rules, const Blocklist& blocklist) {
  const std::string host = session::cookie_host(cookie);
  const std::string cookie_domain = rules.etld_plus_one(host);
  std::string_view site = site_host;
  if (site.starts_with('.')) site.remove_prefix(1);
  const std::string site_domain = rules.etld_plus_one(site);
  // The cookie host and each parent down to the registrable domain.
  bool tracking = false;
  for (std::string_view d = host; !tracking; d.remove_prefix(d.find('.') + 1)) {
    tracking = blocklist.contains(d);
    if (d.size() <= cookie_domain.size() || d.find('.') == std::string_view::npos) break;
  }
  return {cookie_domain == site_domain ? Party::kFirst : Party::kThird, tracking};
}

ClassCounts count_by_class(const std::vector<session::CookieRecord>& records,
                           std::string_view site_host, const SuffixRules& rules,
                           const Blocklist& blocklist) {
  ClassCounts counts;
  std::set<session::CookieKey> seen;
  for (const session::CookieRecord& cookie : records) {
    if (!seen.insert(session::cookie_key(cookie)).second) continue;
    CookieClass cls;
    try {
      cls = classify(cookie, site_host, rules, blocklist);
    } catch (const DomainError&) {
      ++counts.unclassified;
      continue;
    }
    if (cls.party == Party::kFirst) {
      ++counts.first_party;
    } else {
      ++counts.third_party;
    }
    if (cls.tracking) {
      ++counts.tracking;
      if (cls.party == Party::kThird) ++counts.tp_tracking;
    }
  }
  return counts;
}

}  // namespace cookiescope::classify
