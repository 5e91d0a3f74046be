#pragma once

#include <string>
#include <vector>

namespace cookiescope::corpus {

// One detected banner: the texts of its buttons and the page language.
struct BannerObservation {
  std::vector<std::string> button_texts;
  std::string language;
};

struct MinedWord {
  std::string word;
  std::string language;
  double share = 0;  // banners containing the word / banners of the language
  std::size_t banners = 0;
  bool operator==(const MinedWord&) const = default;
};

// Per language, the words present on at least `min_share_percent` percent of
// that language's banners. Presence is counted once per banner. The
// threshold test is exact integer arithmetic: count * 100 >= percent * total.
// Ordered by language, then share descending, then word. Throws
// std::invalid_argument on empty input.
std::vector<MinedWord> mine_button_words(
    const std::vector<BannerObservation>& observations,
    unsigned min_share_percent = 1);

}  // namespace cookiescope::corpus
