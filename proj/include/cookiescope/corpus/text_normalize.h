#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace cookiescope::corpus {

// NFKC case-folded, whitespace runs collapsed to one ASCII space, trimmed.
// Invalid UTF-8 sequences are replaced with U+FFFD.
std::string normalize_for_match(std::string_view text);

// Whitespace collapse and trim only (no case folding).
std::string collapse_whitespace(std::string_view text);

// Number of whitespace-separated tokens.
std::size_t count_words(std::string_view text);

// Dictionary-aware word segmentation (ICU word break rules) of an already
// normalized string; keeps only tokens containing a letter or digit.
std::vector<std::string> word_tokens(std::string_view normalized);

}  // namespace cookiescope::corpus
