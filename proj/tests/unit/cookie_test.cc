#include <gtest/gtest.h>

#include "cookiescope/session/cookie.h"
#include "testkit/testkit.h"

namespace {

using namespace cookiescope::session;

constexpr std::int64_t kNow = 1'600'000'000;

TEST(SetCookie, HostOnlyDefaults) {
  const auto p = parse_set_cookie("sid=abc", "WWW.Example.com", "/a/b/page", kNow);
  ASSERT_TRUE(p);
  EXPECT_EQ(p->cookie.name, "sid");
  EXPECT_EQ(p->cookie.value, "abc");
  EXPECT_EQ(p->cookie.domain_attr, "www.example.com");
  EXPECT_EQ(p->cookie.path, "/a/b");
  EXPECT_EQ(p->cookie.expiry, std::nullopt);
  EXPECT_FALSE(p->expired);
}

TEST(SetCookie, Attributes) {
  const auto p = parse_set_cookie("id = 7 ; Domain=.Example.com; Path=/x; Secure; HttpOnly; Max-Age=60",
                                  "www.example.com", "/", kNow);
  ASSERT_TRUE(p);
  EXPECT_EQ(p->cookie.domain_attr, ".example.com");
  EXPECT_EQ(p->cookie.path, "/x");
  EXPECT_TRUE(p->cookie.secure);
  EXPECT_TRUE(p->cookie.http_only);
  EXPECT_EQ(p->cookie.expiry, kNow + 60);
  EXPECT_EQ(cookie_host(p->cookie), "example.com");
}

TEST(SetCookie, ExpiresAndDeletion) {
  const auto future = parse_set_cookie("a=1; Expires=Wed, 21 Oct 2099 07:28:00 GMT", "h.test", "/", kNow);
  ASSERT_TRUE(future);
  EXPECT_FALSE(future->expired);
  EXPECT_EQ(future->cookie.expiry, 4096250880);
  const auto past = parse_set_cookie("a=1; Expires=Thu, 01-Jan-1970 00:00:00 GMT", "h.test", "/", kNow);
  ASSERT_TRUE(past);
  EXPECT_TRUE(past->expired);
  EXPECT_TRUE(parse_set_cookie("a=1; Max-Age=0", "h.test", "/", kNow)->expired);
}

TEST(SetCookie, IgnoredHeaders) {
  EXPECT_FALSE(parse_set_cookie("novalue", "h.test", "/", kNow));
  EXPECT_FALSE(parse_set_cookie("=v", "h.test", "/", kNow));
  EXPECT_FALSE(parse_set_cookie("a=1; Domain=other.test", "h.test", "/", kNow));
  EXPECT_FALSE(parse_set_cookie("a=1; Domain=xh.test", "h.test", "/", kNow));
}

TEST(CookieJar, ReplacesByKeyAndDeletes) {
  CookieJar jar;
  EXPECT_TRUE(jar.apply("a=1", "h.test", "/", kNow));
  EXPECT_TRUE(jar.apply("a=2", "h.test", "/", kNow));
  EXPECT_TRUE(jar.apply("a=3; Domain=h.test", "h.test", "/", kNow));
  EXPECT_EQ(jar.size(), 2u);
  EXPECT_TRUE(jar.apply("a=; Max-Age=0", "h.test", "/", kNow));
  EXPECT_EQ(jar.size(), 1u);
  EXPECT_FALSE(jar.apply("bad", "h.test", "/", kNow));
  const auto snap = jar.snapshot(Phase::kPostInteraction);
  ASSERT_EQ(snap.size(), 1u);
  EXPECT_EQ(snap[0].domain_attr, ".h.test");
  EXPECT_EQ(snap[0].observed_at, Phase::kPostInteraction);
}

TEST(CookieJarProperty, SnapshotIsSortedAndKeyUnique) {
  testkit::Rng rng(51);
  std::uniform_int_distribution<int> pick(0, 3);
  const char* names[] = {"a", "b", "c", "d"};
  const char* paths[] = {"/", "/x", "/y", "/x/z"};
  for (int round = 0; round < 500; ++round) {
    CookieJar jar;
    for (int i = 0; i < 20; ++i) {
      std::string h = std::string(names[pick(rng)]) + "=" + std::to_string(pick(rng)) + "; Path=" + paths[pick(rng)];
      if (pick(rng) == 0) h += "; Max-Age=0";
      if (pick(rng) == 1) h += "; Domain=site.test";
      jar.apply(h, "www.site.test", "/", kNow);
    }
    const auto snap = jar.snapshot(Phase::kPreInteraction);
    for (std::size_t i = 1; i < snap.size(); ++i) {
      ASSERT_LT(cookie_key(snap[i - 1]), cookie_key(snap[i]));
    }
  }
}

TEST(Phase, RoundTrips) {
  EXPECT_EQ(phase_from_string(to_string(Phase::kPreInteraction)), Phase::kPreInteraction);
  EXPECT_EQ(phase_from_string(to_string(Phase::kPostInteraction)), Phase::kPostInteraction);
  EXPECT_EQ(phase_from_string("during"), std::nullopt);
}

}  // namespace
