#pragma once

#include <algorithm>
#include <chrono>

namespace cookiescope::session {

using Clock = std::chrono::steady_clock;
using Millis = std::chrono::milliseconds;

// Absolute point on the monotonic clock that bounds a whole visit.
class Deadline {
 public:
  Deadline() : at_(Clock::time_point::max()) {}
  explicit Deadline(Clock::time_point at) : at_(at) {}
  static Deadline after(Millis budget) { return Deadline(Clock::now() + budget); }

  Clock::time_point at() const { return at_; }
  bool expired() const { return Clock::now() >= at_; }
  Millis remaining() const {
    if (at_ == Clock::time_point::max()) return Millis(24LL * 3600 * 1000);
    return std::max(Millis(0), std::chrono::duration_cast<Millis>(at_ - Clock::now()));
  }
  // The tighter of this deadline and now + budget.
  Deadline capped(Millis budget) const {
    return Deadline(std::min(at_, Clock::now() + budget));
  }

 private:
  Clock::time_point at_;
};

}  // namespace cookiescope::session
