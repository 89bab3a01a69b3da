#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace decosim {

/// Simulation time in integer ticks.
using Tick = std::int64_t;

/// Single-threaded discrete-event engine.
///
/// Events fire in nondecreasing timestamp order; same-tick events fire in
/// insertion order (FIFO). Scheduling into the past is a fatal simulation
/// error. One engine instance per simulation run; independent runs may
/// execute concurrently, each with its own engine and RngStream.
class Simulation {
 public:
  using Event = std::function<void()>;

  Tick now() const noexcept { return now_; }

  /// Enqueues `event` at time `at`; throws SimError(schedule_in_past) if
  /// `at` precedes the current time.
  void schedule(Tick at, Event event);

  /// Processes events until the queue drains.
  void run();

  std::uint64_t scheduled_count() const noexcept { return next_seq_; }
  std::uint64_t processed_count() const noexcept { return processed_; }
  std::size_t pending_count() const noexcept { return heap_.size(); }

 private:
  struct Entry {
    Tick at;
    std::uint64_t seq;
    Event fn;
  };

  static bool fires_later(const Entry& a, const Entry& b) noexcept {
    return a.at != b.at ? a.at > b.at : a.seq > b.seq;
  }

  std::vector<Entry> heap_;  // min-heap on (at, seq)
  Tick now_ = 0;
  std::uint64_t next_seq_ = 0;
  std::uint64_t processed_ = 0;
};

}  // namespace decosim
