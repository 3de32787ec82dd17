#ifndef EDSIM_CALENDAR_HPP
#define EDSIM_CALENDAR_HPP

#include <cstdint>
#include <optional>
#include <queue>
#include <stdexcept>
#include <vector>

namespace edsim {

// Simulation clock value, minutes since simulation start.
using SimTime = double;

struct PastTimeError : std::logic_error {
  using std::logic_error::logic_error;
};

enum class EventKind : uint8_t {
  PatientArrival,
  TriageDone,
  PhysicianShiftStart,
  PhysicianShiftEnd,
  PhysicianFree,
  ImagingBegin,
  ImagingRead,
  Departure,
};

const char* event_kind_name(EventKind k);

struct EventRecord {
  SimTime fire_time = 0.0;
  uint64_t sequence = 0;  // assigned at scheduling, breaks time ties
  EventKind kind = EventKind::PatientArrival;
  int64_t subject = -1;   // entity id (patient, physician or order)
};

// Future event list ordered by (fire_time, sequence). Pop order is total
// and deterministic; the clock equals the fire time of the last pop.
class EventCalendar {
 public:
  void schedule(SimTime at, EventKind kind, int64_t subject);
  std::optional<EventRecord> pop_next();
  std::optional<SimTime> next_time() const {
    if (heap_.empty()) return std::nullopt;
    return heap_.top().fire_time;
  }

  SimTime clock() const { return clock_; }
  size_t size() const { return heap_.size(); }
  bool empty() const { return heap_.empty(); }
  uint64_t scheduled_count() const { return next_sequence_; }
  uint64_t popped_count() const { return popped_; }

 private:
  struct Later {
    bool operator()(const EventRecord& a, const EventRecord& b) const {
      if (a.fire_time != b.fire_time) return a.fire_time > b.fire_time;
      return a.sequence > b.sequence;
    }
  };

  std::priority_queue<EventRecord, std::vector<EventRecord>, Later> heap_;
  SimTime clock_ = 0.0;
  uint64_t next_sequence_ = 0;
  uint64_t popped_ = 0;
};

}  // namespace edsim

#endif
