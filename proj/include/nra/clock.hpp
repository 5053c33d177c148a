#pragma once

#include <chrono>
#include <cstdint>
#include <limits>

namespace nra {

/// Time source for budgets. Wall mode reads a monotonic clock; Work mode
/// counts abstract work units so that runs are reproducible bit for bit.
class Clock {
 public:
  enum class Mode { Wall, Work };

  explicit Clock(Mode mode = Mode::Wall, double units_per_second = 4000.0)
      : mode_(mode), units_per_second_(units_per_second), start_(std::chrono::steady_clock::now()) {}

  Mode mode() const { return mode_; }
  void tick(std::uint64_t units = 1) { work_ += units; }
  std::uint64_t work() const { return work_; }

  /// Seconds since construction.
  double now() const {
    if (mode_ == Mode::Work) return static_cast<double>(work_) / units_per_second_;
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  Mode mode_;
  double units_per_second_;
  std::chrono::steady_clock::time_point start_;
  std::uint64_t work_ = 0;
};

class Deadline {
 public:
  Deadline() = default;
  Deadline(Clock* clock, double seconds_from_now) : clock_(clock), at_(clock->now() + seconds_from_now) {}

  static Deadline never() { return {}; }

  bool expired() const { return clock_ && clock_->now() >= at_; }
  void tick(std::uint64_t units = 1) const {
    if (clock_) clock_->tick(units);
  }
  Clock* clock() const { return clock_; }

 private:
  Clock* clock_ = nullptr;
  double at_ = std::numeric_limits<double>::infinity();
};

}  // namespace nra
