#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace cookiescope::discovery {

// Just enough of an http(s) URL for prefix comparisons and link resolution.
struct Url {
  std::string scheme;  // lowercase
  std::string host;    // lowercase, no brackets handling beyond verbatim
  std::optional<int> port;  // absent when default for the scheme
  std::string path;    // "/" when empty
  std::optional<std::string> query;
  std::optional<std::string> fragment;

  // scheme://host[:port]
  std::string origin() const;
  // origin + path [+ ?query]; never includes the fragment.
  std::string without_fragment() const;
  std::string to_string() const;
  bool operator==(const Url&) const = default;
};

// Parses an absolute http or https URL. A bare host ("google.com/x") is
// read as https. Returns nullopt for other schemes or malformed input.
std::optional<Url> parse_url(std::string_view text);

// Resolves an href against a base URL (RFC 3986 reference resolution,
// http(s) only).
std::optional<Url> resolve_url(const Url& base, std::string_view href);

// Comparison form: fragment dropped, empty path and "/" identical, query
// kept verbatim, nothing percent-decoded.
std::string normalize_url(const Url& url);

// Same scheme, host and port: the URL "begins with" the landing FQDN.
bool same_origin_prefix(const Url& landing, const Url& candidate);

}  // namespace cookiescope::discovery
