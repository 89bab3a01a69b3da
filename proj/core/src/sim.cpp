#include "decosim/sim.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "decosim/error.hpp"

namespace decosim {

void Simulation::schedule(Tick at, Event event) {
  if (at < now_) {
    throw SimError(ErrorCode::schedule_in_past,
                   "schedule: event at tick " + std::to_string(at) +
                       " precedes current tick " + std::to_string(now_));
  }
  heap_.push_back(Entry{at, next_seq_++, std::move(event)});
  std::push_heap(heap_.begin(), heap_.end(), fires_later);
}

void Simulation::run() {
  while (!heap_.empty()) {
    std::pop_heap(heap_.begin(), heap_.end(), fires_later);
    Entry entry = std::move(heap_.back());
    heap_.pop_back();
    now_ = entry.at;
    ++processed_;
    entry.fn();
  }
}

}  // namespace decosim
