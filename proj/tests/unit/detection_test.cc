#include <gtest/gtest.h>

#include <chrono>

#include "cookiescope/engine/banner_detector.h"
#include "testkit/testkit.h"

namespace {

using namespace cookiescope;
using dom::DomNode;
using dom::NodeId;

class DetectionFixture : public ::testing::TestWithParam<testkit::DetectionCase> {};

TEST_P(DetectionFixture, FindsExpectedBanner) {
  const testkit::DetectionCase& c = GetParam();
  const dom::DomSnapshot snap = testkit::load_fixture_snapshot("detection", c.file);
  const auto finding = engine::detect_banner(snap, testkit::bundled_corpus());
  if (!c.expected_banner) {
    EXPECT_FALSE(finding) << "unexpected banner " << finding->banner_node;
    return;
  }
  ASSERT_TRUE(finding);
  EXPECT_EQ(finding->banner_node, *c.expected_banner);
  EXPECT_EQ(finding->frame_path, c.expected_frame_path);
  EXPECT_EQ(engine::check_finding(snap, *finding), std::nullopt);
}

std::string case_name(const ::testing::TestParamInfo<testkit::DetectionCase>& info) {
  std::string name = info.param.file.substr(0, info.param.file.find('.'));
  return name;
}

INSTANTIATE_TEST_SUITE_P(Fixtures, DetectionFixture, ::testing::ValuesIn(testkit::detection_cases()), case_name);

TEST(DetectionSuite, CoversRequiredShapes) {
  const auto cases = testkit::detection_cases();
  EXPECT_GE(cases.size(), 30u);
  std::size_t non_english = 0;
  for (const auto& c : cases) non_english += c.has_tag("non-english");
  EXPECT_GE(non_english, 5u);
  for (const char* tag : {"fixed-position", "positive-z-index", "iframe", "display-none", "negative-z-index",
                          "table", "body-anchor", "shadow-dom"}) {
    EXPECT_TRUE(std::any_of(cases.begin(), cases.end(), [&](const auto& c) { return c.has_tag(tag); })) << tag;
  }
}

TEST(DetectionSuite, WholeSuiteUnderTenSeconds) {
  const auto cases = testkit::detection_cases();
  std::vector<dom::DomSnapshot> snaps;
  for (const auto& c : cases) snaps.push_back(testkit::load_fixture_snapshot("detection", c.file));
  const auto start = std::chrono::steady_clock::now();
  for (const auto& s : snaps) (void)engine::detect_banner(s, testkit::bundled_corpus());
  EXPECT_LT(std::chrono::steady_clock::now() - start, std::chrono::seconds(10));
}

TEST(Detection, MissingBodyIsStructuralError) {
  dom::DomSnapshot s;
  s.viewport = {100, 100};
  s.root.node_id = 1;
  s.root.tag = "html";
  s.root.bbox = {0, 0, 100, 100};
  DomNode head;
  head.node_id = 2;
  head.tag = "head";
  s.root.children.push_back(head);
  EXPECT_THROW(engine::detect_banner(s, testkit::bundled_corpus()), dom::SnapshotError);
}

// Subtrees carrying banner words that must never be picked up.
DomNode random_decoy(testkit::Rng& rng, NodeId& next) {
  static const char* kTexts[] = {"We use cookies", "Privacy policy", "Accept", "I agree to the consent terms",
                                 "Datenschutz", "クッキー"};
  std::uniform_int_distribution<int> kind(0, 6), text(0, 5);
  DomNode wrapper;
  wrapper.node_id = next++;
  wrapper.tag = "div";
  wrapper.bbox = {0, 0, 400, 100};
  DomNode leaf;
  leaf.node_id = next++;
  leaf.tag = "p";
  leaf.own_text = kTexts[text(rng)];
  leaf.bbox = {0, 0, 400, 30};
  switch (kind(rng)) {
    case 0: wrapper.display_none = leaf.display_none = true; break;
    case 1: wrapper.visibility_hidden = leaf.visibility_hidden = true; break;
    case 2: wrapper.opacity = leaf.opacity = 0; break;
    case 3:
      wrapper.position = dom::Position::kAbsolute;
      wrapper.z_index = -1 - static_cast<int>(rng() % 100);
      break;
    case 4: wrapper.tag = "table"; break;
    case 5: leaf.is_scripted_text = true; leaf.tag = "script"; break;
    case 6: wrapper.bbox = leaf.bbox = {-3000, -3000, 50, 20}; break;
  }
  wrapper.children.push_back(leaf);
  return wrapper;
}

TEST(DetectionProperty, DecoysNeverChangeTheBanner) {
  testkit::Rng rng(21);
  const auto cases = testkit::detection_cases();
  for (const auto& c : cases) {
    if (!c.expected_banner || !c.expected_frame_path.empty()) continue;
    const dom::DomSnapshot base = testkit::load_fixture_snapshot("detection", c.file);
    for (int round = 0; round < 25; ++round) {
      dom::DomSnapshot s = base;
      DomNode& body = s.root.children.at(0);
      NodeId next = 100000;
      std::uniform_int_distribution<int> count(1, 4);
      for (int i = count(rng); i > 0; --i) {
        std::uniform_int_distribution<std::size_t> at(0, body.children.size());
        body.children.insert(body.children.begin() + static_cast<long>(at(rng)), random_decoy(rng, next));
      }
      const auto finding = engine::detect_banner(s, testkit::bundled_corpus());
      ASSERT_TRUE(finding) << c.file << " round " << round;
      ASSERT_EQ(finding->banner_node, *c.expected_banner) << c.file << " round " << round;
    }
  }
}

DomNode random_page_node(testkit::Rng& rng, NodeId& next, int depth) {
  static const char* kTexts[] = {"", "", "cookies", "news", "accept", "weather", "privacy", "sport"};
  std::uniform_int_distribution<int> d8(0, 7);
  DomNode n;
  n.node_id = next++;
  n.tag = d8(rng) < 2 ? "table" : "div";
  n.own_text = kTexts[d8(rng)];
  n.bbox = {double(d8(rng) * 100), double(d8(rng) * 80), double(50 + d8(rng) * 40), double(d8(rng) * 30)};
  n.display_none = d8(rng) == 0;
  if (d8(rng) == 1) n.position = dom::Position::kFixed;
  if (d8(rng) == 2) {
    n.position = dom::Position::kRelative;
    n.z_index = d8(rng) - 3;
  }
  if (depth > 0) {
    for (int i = d8(rng) % 4; i > 0; --i) n.children.push_back(random_page_node(rng, next, depth - 1));
  }
  return n;
}

TEST(DetectionProperty, FindingsSatisfyContainmentInvariants) {
  testkit::Rng rng(22);
  int found = 0;
  for (int round = 0; round < 2000; ++round) {
    dom::DomSnapshot s;
    s.viewport = {1000, 700};
    NodeId next = 1;
    s.root.node_id = next++;
    s.root.tag = "body";
    s.root.bbox = {0, 0, 1000, 700};
    for (int i = 0; i < 4; ++i) s.root.children.push_back(random_page_node(rng, next, 3));
    const auto finding = engine::detect_banner(s, testkit::bundled_corpus());
    if (!finding) continue;
    ++found;
    ASSERT_EQ(engine::check_finding(s, *finding), std::nullopt) << "round " << round;
  }
  EXPECT_GT(found, 100);
}

}  // namespace
