#pragma once

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>

namespace cookiescope::classify {

class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The host is a public suffix itself (or shorter than one).
class NoRegistrableDomain : public DomainError {
 public:
  using DomainError::DomainError;
};

class PslParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Rules from the public suffix list, stored in ASCII-compatible (punycode)
// form so Unicode and punycode hosts match alike.
class SuffixRules {
 public:
  // Upstream list format: one rule per line (first whitespace-delimited
  // token), "//" comments, "*." wildcard prefix, "!" exception prefix.
  // Throws PslParseError on duplicates, on exceptions that no wildcard
  // covers, and on rules that fail IDNA conversion.
  static SuffixRules parse(std::string_view text);
  static SuffixRules load(const std::filesystem::path& path);

  std::size_t size() const { return normal_.size() + wildcard_.size() + exception_.size(); }

  // Number of labels in the public suffix of an ACE, lowercase host given
  // as labels; implements the prevailing-rule algorithm with the implicit
  // "*" default.
  std::size_t suffix_label_count(std::string_view ace_host) const;

  // Registrable domain: public suffix plus one label, spelled as in the
  // (lowercased) input. Throws DomainError for malformed hosts and
  // NoRegistrableDomain when nothing lies left of the suffix.
  std::string etld_plus_one(std::string_view host) const;
  std::string public_suffix(std::string_view host) const;

 private:
  std::unordered_set<std::string> normal_;
  std::unordered_set<std::string> wildcard_;   // stored without "*."
  std::unordered_set<std::string> exception_;  // stored without "!"
};

// UTS #46 ToASCII of a whole host name, lowercase. Throws DomainError.
std::string host_to_ascii(std::string_view host);

}  // namespace cookiescope::classify
