#pragma once

#include <cstddef>
#include <span>

namespace cookiescope::stats {

enum class MwuMethod { kAuto, kExact, kNormal };

// Exact enumeration is used up to this pooled size under kAuto.
inline constexpr std::size_t kExactMaxPooled = 12;
// Hard limit for an explicit exact request.
inline constexpr std::size_t kExactLimit = 20;

struct MwuResult {
  double u_a = 0;  // U for sample a; u_a + u_b == |a| * |b|
  double u_b = 0;
  double p_two_sided = 1;
  bool exact = false;
};

// Ranks are midranks over the pooled sample.
// Exact: share of the C(N, |a|) splits of the pooled midranks whose U is at
// least as far from |a||b|/2 as the observed one.
// Normal: continuity correction 0.5 and tie-corrected variance; a zero
// variance (all values tied) gives p = 1.
// Throws StatsError on an empty sample or an exact request above kExactLimit.
MwuResult mann_whitney_u(std::span<const double> a, std::span<const double> b,
                         MwuMethod method = MwuMethod::kAuto);

}  // namespace cookiescope::stats
