#pragma once

#include <cstdint>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace cookiescope::session {

enum class Phase { kPreInteraction, kPostInteraction };
std::string_view to_string(Phase phase);  // pre-interaction|post-interaction
std::optional<Phase> phase_from_string(std::string_view text);

struct CookieRecord {
  std::string name;
  std::string value;
  // Verbatim, leading dot included. Host-only cookies carry the host.
  std::string domain_attr;
  std::string path = "/";
  bool secure = false;
  bool http_only = false;
  std::optional<std::int64_t> expiry;  // seconds since epoch; none = session
  Phase observed_at = Phase::kPreInteraction;

  bool operator==(const CookieRecord&) const = default;
};

// Cookie identity used for counting and deduplication.
using CookieKey = std::tuple<std::string, std::string, std::string>;
inline CookieKey cookie_key(const CookieRecord& c) {
  return {c.name, c.domain_attr, c.path};
}

// Domain attribute with a single leading dot removed, lowercased.
std::string cookie_host(const CookieRecord& cookie);

// Deterministic order: key, then value, then remaining attributes.
void sort_cookies(std::vector<CookieRecord>& cookies);

struct ParsedSetCookie {
  CookieRecord cookie;
  bool expired = false;  // Max-Age <= 0 or Expires in the past: a deletion
};

// RFC 6265 Set-Cookie parsing as a browser applies it for a response from
// `request_host` / `request_path`. Domain cookies keep a leading dot in
// domain_attr, host-only cookies carry the bare host. Returns nullopt for
// headers a browser ignores: no '=', empty name, or a Domain attribute the
// request host does not domain-match.
std::optional<ParsedSetCookie> parse_set_cookie(std::string_view header,
                                                std::string_view request_host,
                                                std::string_view request_path,
                                                std::int64_t now);

// Browser-side store keyed by (name, domain_attr, path).
class CookieJar {
 public:
  // Returns false when the header was ignored.
  bool apply(std::string_view header, std::string_view request_host,
             std::string_view request_path, std::int64_t now);
  void clear() { cookies_.clear(); }
  // Sorted, with observed_at set to `phase`.
  std::vector<CookieRecord> snapshot(Phase phase) const;
  std::size_t size() const { return cookies_.size(); }

 private:
  std::vector<CookieRecord> cookies_;
};

}  // namespace cookiescope::session
