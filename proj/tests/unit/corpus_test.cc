#include <gtest/gtest.h>

#include <set>

#include "cookiescope/corpus/button_mining.h"
#include "cookiescope/corpus/corpus.h"
#include "cookiescope/corpus/text_normalize.h"
#include "testkit/testkit.h"

namespace {

using namespace cookiescope::corpus;

std::vector<std::string> phrases(const std::vector<PhraseMatch>& matches) {
  std::vector<std::string> out;
  for (const auto& m : matches) out.push_back(m.phrase);
  return out;
}

const CategorySet kDetection{Category::kDetection};

TEST(CorpusFile, ReferenceSizes) {
  const Corpus& c = testkit::bundled_corpus();
  EXPECT_EQ(c.count(Category::kDetection), 80u);
  EXPECT_EQ(c.interaction_words().size(), 172u);
  const Corpus full = load_corpus(testkit::data_dir() / "corpus.tsv", {.include_supplement = true});
  std::size_t sv_reject_supplement = 0;
  for (const CorpusEntry& e : full.entries()) {
    if (e.supplement && e.language == "sv" && e.category == Category::kReject) ++sv_reject_supplement;
  }
  EXPECT_EQ(sv_reject_supplement, 13u);
  EXPECT_EQ(full.interaction_words().size(), 185u);
}

TEST(CorpusFile, EnglishDetectionWordsPresent) {
  std::set<std::string> en;
  for (const CorpusEntry* e : testkit::bundled_corpus().detection_words()) {
    if (e->language == "en") en.insert(e->phrase);
  }
  const std::set<std::string> expected{"cookies", "privacy", "policy", "consent",
                                       "accept", "agree", "personalized", "legitimate interest"};
  EXPECT_EQ(en, expected);
}

TEST(CorpusParse, Errors) {
  EXPECT_THROW(parse_corpus(""), CorpusError);
  EXPECT_THROW(parse_corpus("# only a comment\n"), CorpusError);
  try {
    parse_corpus("cookies\ten\tdetection\nfoo\txx\tdetection\n");
    FAIL() << "unknown language accepted";
  } catch (const CorpusError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
  EXPECT_THROW(parse_corpus("cookies\ten\tdetection\nCookies\ten\tdetection\n"), CorpusError);
  EXPECT_THROW(parse_corpus("cookies\ten\n"), CorpusError);
  EXPECT_THROW(parse_corpus("cookies\ten\tbanana\n"), CorpusError);
  EXPECT_NO_THROW(parse_corpus("cookies\ten\tdetection\ncookies\ten\taccept\n"));
}

TEST(CorpusParse, SupplementRowsDroppedByDefault) {
  const std::string text = "reject\ten\treject\navvisa\tsv\treject\tsupplement\n";
  EXPECT_EQ(parse_corpus(text).entries().size(), 1u);
  EXPECT_EQ(parse_corpus(text, {.include_supplement = true}).entries().size(), 2u);
}

TEST(MatchText, Examples) {
  const Corpus& c = testkit::bundled_corpus();
  EXPECT_EQ(phrases(match_text("We use cookies to improve your experience", c, kDetection)),
            std::vector<std::string>{"cookies"});
  EXPECT_EQ(phrases(match_text("LEGITIMATE  \n INTEREST settings", c, kDetection)),
            std::vector<std::string>{"legitimate interest"});
  EXPECT_TRUE(match_text("Lorem ipsum dolor", c, kDetection).empty());
}

TEST(MatchText, LongestFirst) {
  const Corpus& c = testkit::bundled_corpus();
  const auto m = match_text("Accept all cookies", c, {Category::kAccept});
  ASSERT_GE(m.size(), 2u);
  for (std::size_t i = 1; i < m.size(); ++i) {
    EXPECT_GE(normalize_for_match(m[i - 1].phrase).size(), normalize_for_match(m[i].phrase).size());
  }
}

TEST(Normalize, CaseWidthAndWhitespace) {
  EXPECT_EQ(normalize_for_match("  ACCEPT  All\u200b "), "accept all");
  EXPECT_EQ(normalize_for_match("ＡＣＣＥＰＴ"), "accept");  // full-width
  EXPECT_EQ(count_words("Accept all cookies"), 3u);
  EXPECT_EQ(count_words(""), 0u);
}

TEST(MaximalMatches, NestedMatchDropped) {
  const Corpus& c = testkit::bundled_corpus();
  const std::string text = normalize_for_match("Continue without accepting");
  const auto spans = maximal_matches(text, c, CategorySet::interaction());
  ASSERT_FALSE(spans.empty());
  for (const auto& s : spans) EXPECT_NE(s.entry->category, Category::kAccept) << s.entry->phrase;
}

// Random strings over a small alphabet biased toward corpus fragments.
std::string random_text(testkit::Rng& rng) {
  static const std::vector<std::string> kPieces = {
      "cook", "ies", "privacy", " ", "  ", "\n", "ACCEPT", "agree", "pol", "icy", "x", "Datenschutz",
      "legitimate", "interest", "同意", "クッキー", "consent", "ø", "tab\t"};
  std::uniform_int_distribution<std::size_t> pick(0, kPieces.size() - 1), len(0, 8);
  std::string out;
  for (std::size_t i = 0, n = len(rng); i < n; ++i) out += kPieces[pick(rng)];
  return out;
}

std::set<std::string> as_set(const std::vector<PhraseMatch>& m) {
  std::set<std::string> out;
  for (const auto& x : m) out.insert(x.phrase + "/" + std::string(to_string(x.category)));
  return out;
}

TEST(MatchTextProperty, MonotoneUnderExtension) {
  const Corpus& c = testkit::bundled_corpus();
  testkit::Rng rng(11);
  for (int i = 0; i < 2000; ++i) {
    const std::string t = random_text(rng), s = random_text(rng);
    const auto before = as_set(match_text(t, c, kDetection));
    const auto after = as_set(match_text(t + s, c, kDetection));
    ASSERT_TRUE(std::includes(after.begin(), after.end(), before.begin(), before.end()))
        << "'" << t << "' + '" << s << "'";
  }
}

std::string shout_and_stretch(const std::string& s) {
  std::string out;
  for (char ch : s) {
    if (ch == ' ') {
      out += "   ";
    } else {
      out += static_cast<char>(ch >= 'a' && ch <= 'z' ? ch - 32 : ch);
    }
  }
  return out;
}

TEST(MatchTextProperty, CaseAndWhitespaceInvariant) {
  const Corpus& c = testkit::bundled_corpus();
  testkit::Rng rng(12);
  for (int i = 0; i < 2000; ++i) {
    const std::string t = random_text(rng);
    ASSERT_EQ(as_set(match_text(t, c, kDetection)), as_set(match_text(shout_and_stretch(t), c, kDetection))) << t;
  }
}

TEST(ButtonMining, Examples) {
  std::vector<BannerObservation> obs;
  for (int i = 0; i < 200; ++i) {
    BannerObservation o{{}, "en"};
    if (i < 150) o.button_texts.push_back("Accept all");
    if (i == 0) o.button_texts.push_back("Whatever");
    o.button_texts.push_back("More");
    obs.push_back(o);
  }
  const auto words = mine_button_words(obs);
  auto find = [&](const std::string& w) {
    return std::find_if(words.begin(), words.end(), [&](const MinedWord& m) { return m.word == w; });
  };
  ASSERT_NE(find("accept"), words.end());
  EXPECT_DOUBLE_EQ(find("accept")->share, 150.0 / 200.0);
  EXPECT_EQ(find("whatever"), words.end());  // 0.5 %
  EXPECT_DOUBLE_EQ(find("more")->share, 1.0);

  std::vector<BannerObservation> agree(100, BannerObservation{{"I agree", "agree"}, "en"});
  const auto a = mine_button_words(agree);
  auto it = std::find_if(a.begin(), a.end(), [](const MinedWord& m) { return m.word == "agree"; });
  ASSERT_NE(it, a.end());
  EXPECT_DOUBLE_EQ(it->share, 1.0);
  EXPECT_EQ(it->banners, 100u);
  EXPECT_THROW(mine_button_words({}), std::invalid_argument);
}

TEST(ButtonMiningProperty, SharesWithinBoundsAndExactThreshold) {
  testkit::Rng rng(13);
  static const char* kWords[] = {"accept", "reject", "ok", "settings", "more", "close", "allow", "deny"};
  std::uniform_int_distribution<int> nb(1, 300), nw(0, 4), pick(0, 7), lang(0, 2);
  static const char* kLangs[] = {"en", "de", "fr"};
  for (int round = 0; round < 200; ++round) {
    std::vector<BannerObservation> obs(static_cast<std::size_t>(nb(rng)));
    for (auto& o : obs) {
      o.language = kLangs[lang(rng)];
      for (int i = nw(rng); i > 0; --i) o.button_texts.push_back(kWords[pick(rng)]);
    }
    std::map<std::string, std::size_t> per_lang;
    std::map<std::pair<std::string, std::string>, std::size_t> presence;
    for (const auto& o : obs) {
      ++per_lang[o.language];
      std::set<std::string> seen(o.button_texts.begin(), o.button_texts.end());
      for (const auto& w : seen) ++presence[{o.language, w}];
    }
    std::size_t expected_count = 0;
    for (const auto& [key, count] : presence) {
      if (count * 100 >= per_lang[key.first]) ++expected_count;
    }
    const auto words = mine_button_words(obs);
    ASSERT_EQ(words.size(), expected_count);
    for (const auto& w : words) {
      ASSERT_GT(w.share, 0.01 - 1e-12);
      ASSERT_LE(w.share, 1.0);
    }
  }
}

}  // namespace
