#include <doctest.h>

#include <vector>

#include "edsim/calendar.hpp"
#include "edsim/rng.hpp"

using namespace edsim;

TEST_CASE("single event pops at its time") {
  EventCalendar cal;
  cal.schedule(5.0, EventKind::PatientArrival, 1);
  CHECK(cal.size() == 1);
  auto ev = cal.pop_next();
  REQUIRE(ev.has_value());
  CHECK(ev->fire_time == 5.0);
  CHECK(cal.clock() == 5.0);
}

TEST_CASE("simultaneous events pop in insertion order") {
  EventCalendar cal;
  cal.schedule(5.0, EventKind::PatientArrival, 10);  // A
  cal.schedule(5.0, EventKind::TriageDone, 20);      // B
  auto a = cal.pop_next();
  auto b = cal.pop_next();
  CHECK(a->subject == 10);
  CHECK(b->subject == 20);
  CHECK(a->sequence < b->sequence);
}

TEST_CASE("scheduling before the clock is a model bug") {
  EventCalendar cal;
  cal.schedule(10.0, EventKind::PatientArrival, 1);
  cal.pop_next();
  CHECK(cal.clock() == 10.0);
  CHECK_THROWS_AS(cal.schedule(9.0, EventKind::TriageDone, 1), PastTimeError);
}

TEST_CASE("pops come out in time order") {
  EventCalendar cal;
  cal.schedule(3.0, EventKind::PatientArrival, 3);
  cal.schedule(1.0, EventKind::PatientArrival, 1);
  cal.schedule(2.0, EventKind::PatientArrival, 2);
  CHECK(cal.pop_next()->fire_time == 1.0);
  CHECK(cal.pop_next()->fire_time == 2.0);
  CHECK(cal.pop_next()->fire_time == 3.0);
  CHECK(!cal.pop_next().has_value());
}

TEST_CASE("empty calendar signals empty") {
  EventCalendar cal;
  CHECK(!cal.pop_next().has_value());
  CHECK(!cal.next_time().has_value());
}

TEST_CASE("random interleaving keeps pop times non-decreasing and loses nothing") {
  RngStream rng(7, "calendar-prop");
  for (int trial = 0; trial < 20; ++trial) {
    EventCalendar cal;
    uint64_t scheduled = 0, popped = 0;
    double last_pop = 0.0;
    for (int step = 0; step < 500; ++step) {
      if (rng.next_double() < 0.6) {
        cal.schedule(cal.clock() + rng.next_double() * 100.0,
                     EventKind::PatientArrival, step);
        ++scheduled;
      } else if (auto ev = cal.pop_next()) {
        CHECK(ev->fire_time >= last_pop);
        last_pop = ev->fire_time;
        ++popped;
      }
      CHECK(scheduled == popped + cal.size());
    }
  }
}

TEST_CASE("two calendars fed the same schedule produce identical pops") {
  RngStream rng(11, "calendar-det");
  std::vector<std::pair<double, int>> plan;
  for (int i = 0; i < 200; ++i) plan.push_back({rng.next_double() * 50.0, i});
  EventCalendar a, b;
  for (auto [t, s] : plan) {
    a.schedule(t, EventKind::PatientArrival, s);
    b.schedule(t, EventKind::PatientArrival, s);
  }
  while (true) {
    auto ea = a.pop_next();
    auto eb = b.pop_next();
    CHECK(ea.has_value() == eb.has_value());
    if (!ea) break;
    CHECK(ea->fire_time == eb->fire_time);
    CHECK(ea->sequence == eb->sequence);
    CHECK(ea->subject == eb->subject);
  }
}
