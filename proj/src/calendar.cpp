#include "edsim/calendar.hpp"

namespace edsim {

const char* event_kind_name(EventKind k) {
  switch (k) {
    case EventKind::PatientArrival: return "arrival";
    case EventKind::TriageDone: return "triage_done";
    case EventKind::PhysicianShiftStart: return "shift_start";
    case EventKind::PhysicianShiftEnd: return "shift_end";
    case EventKind::PhysicianFree: return "physician_free";
    case EventKind::ImagingBegin: return "imaging_begin";
    case EventKind::ImagingRead: return "imaging_read";
    case EventKind::Departure: return "departure";
  }
  return "unknown";
}

void EventCalendar::schedule(SimTime at, EventKind kind, int64_t subject) {
  if (at < clock_) {
    throw PastTimeError("event scheduled at " + std::to_string(at) +
                        " before clock " + std::to_string(clock_));
  }
  heap_.push(EventRecord{at, next_sequence_++, kind, subject});
}

std::optional<EventRecord> EventCalendar::pop_next() {
  if (heap_.empty()) return std::nullopt;
  EventRecord top = heap_.top();
  heap_.pop();
  clock_ = top.fire_time;
  ++popped_;
  return top;
}

}  // namespace edsim
