#include "cookiescope/corpus/text_normalize.h"

#include <memory>
#include <stdexcept>

#include <unicode/brkiter.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

namespace cookiescope::corpus {

namespace {

const icu::Normalizer2& nfkc_casefold() {
  static const icu::Normalizer2* instance = [] {
    UErrorCode status = U_ZERO_ERROR;
    const icu::Normalizer2* n = icu::Normalizer2::getNFKCCasefoldInstance(status);
    if (U_FAILURE(status)) {
      throw std::runtime_error("ICU NFKC_Casefold unavailable");
    }
    return n;
  }();
  return *instance;
}

std::string collapse(const icu::UnicodeString& text) {
  icu::UnicodeString out;
  bool pending_space = false;
  for (int32_t i = 0; i < text.length();) {
    UChar32 c = text.char32At(i);
    i += U16_LENGTH(c);
    if (u_isUWhiteSpace(c) || c == 0x200B /* zero width space */) {
      pending_space = !out.isEmpty();
      continue;
    }
    if (pending_space) {
      out.append(static_cast<UChar>(' '));
      pending_space = false;
    }
    out.append(c);
  }
  std::string utf8;
  out.toUTF8String(utf8);
  return utf8;
}

}  // namespace

std::string normalize_for_match(std::string_view text) {
  icu::UnicodeString source = icu::UnicodeString::fromUTF8(
      icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
  UErrorCode status = U_ZERO_ERROR;
  icu::UnicodeString folded = nfkc_casefold().normalize(source, status);
  if (U_FAILURE(status)) return collapse(source);
  return collapse(folded);
}

std::string collapse_whitespace(std::string_view text) {
  return collapse(icu::UnicodeString::fromUTF8(
      icu::StringPiece(text.data(), static_cast<int32_t>(text.size()))));
}

std::size_t count_words(std::string_view text) {
  std::string collapsed = collapse_whitespace(text);
  if (collapsed.empty()) return 0;
  std::size_t words = 1;
  for (char c : collapsed) {
    if (c == ' ') ++words;
  }
  return words;
}

std::vector<std::string> word_tokens(std::string_view normalized) {
  icu::UnicodeString text = icu::UnicodeString::fromUTF8(icu::StringPiece(
      normalized.data(), static_cast<int32_t>(normalized.size())));
  UErrorCode status = U_ZERO_ERROR;
  std::unique_ptr<icu::BreakIterator> it(
      icu::BreakIterator::createWordInstance(icu::Locale::getRoot(), status));
  if (U_FAILURE(status)) throw std::runtime_error("ICU word iterator failed");
  it->setText(text);

  std::vector<std::string> tokens;
  int32_t start = it->first();
  for (int32_t end = it->next(); end != icu::BreakIterator::DONE;
       start = end, end = it->next()) {
    icu::UnicodeString piece = text.tempSubStringBetween(start, end);
    bool wordlike = false;
    for (int32_t i = 0; i < piece.length() && !wordlike;) {
      UChar32 c = piece.char32At(i);
      i += U16_LENGTH(c);
      wordlike = u_isalnum(c);
    }
    if (!wordlike) continue;
    std::string utf8;
    piece.toUTF8String(utf8);
    tokens.push_back(std::move(utf8));
  }
  return tokens;
}

}  // namespace cookiescope::corpus
