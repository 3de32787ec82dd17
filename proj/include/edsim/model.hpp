#ifndef EDSIM_MODEL_HPP
#define EDSIM_MODEL_HPP

#include <cstdint>
#include <deque>
#include <functional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "edsim/calendar.hpp"
#include "edsim/params.hpp"
#include "edsim/rng.hpp"

namespace edsim {

struct NoPhysicianError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UnstaffedPodError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UndefinedInteractionError : std::logic_error {
  using std::logic_error::logic_error;
};
struct IncompleteTrailError : std::logic_error {
  using std::logic_error::logic_error;
};

constexpr SimTime kUnset = -1.0;

struct ImagingOrder {
  int patient = -1;
  int index = 0;  // k-th order of this patient
  SimTime placed_at = kUnset;
  SimTime begin_at = kUnset;
  SimTime end_at = kUnset;
  SimTime read_at = kUnset;
  int image_count = 1;
  bool read = false;
};

enum class DispositionKind : uint8_t { Admit, Discharge };

struct Patient {
  int id = -1;  // arrival index; also the CRN key
  int esi = 3;
  SimTime arrival = kUnset;
  SimTime triage_done = kUnset;
  SimTime bed_assigned = kUnset;
  SimTime first_eval_start = kUnset;
  SimTime disposition = kUnset;
  SimTime departure = kUnset;
  DispositionKind disposition_kind = DispositionKind::Discharge;

  int pod = -1;
  bool in_trauma_bay = false;
  int assigned_physician = -1;

  int interactions_total = 0;
  int interactions_done = 0;
  int plan_orders = 0;    // total orders this visit will generate
  int orders_placed = 0;
  int unread_orders = 0;
  bool awaiting_order_placement = false;
  std::vector<int> orders;  // indices into EdModel::orders()

  bool eligible = false;  // ready for the next evaluation

  bool being_seen = false;
  bool departed = false;
  double face_time = 0.0;
};

enum class Activity : uint8_t { Idle, Evaluating, Charting, Handoff, Off };

struct Physician {
  int id = -1;
  int pod = -1;
  SimTime shift_start = 0;
  SimTime shift_end = 0;
  bool on_shift = false;
  bool retiring = false;  // shift ended while busy, hand off when free
  Activity activity = Activity::Off;
  int current_patient = -1;
  int current_interaction = 0;
  std::vector<int> panel;
  std::deque<int> pending_order_release;  // patients owed an order placement
  double pending_handoff_minutes = 0.0;
  bool wake_scheduled = false;
};

struct PodState {
  PodSpec spec;
  int occupied = 0;
  int bays_occupied = 0;
  std::vector<int> physicians;  // all physician ids ever staffing this pod
};

// Flow record emitted per departed patient.
struct PatientRecord {
  int esi = 0;
  SimTime arrival = 0;
  SimTime bed_assigned = 0;
  double time_in_ed = 0;
  double bed_to_disposition = 0;
  double disposition_to_departure = 0;
  double waiting_room_wait = 0;
  double face_time = 0;
  int order_count = 0;
  bool admitted = false;
};

// One replication of the ED: owns the calendar, the entities and the
// purpose-keyed random streams. Single-threaded; independent replications
// run in their own instances.
class EdModel {
 public:
  EdModel(const ModelParams& params, uint64_t seed, uint64_t replication);

  // Runs events through `horizon` minutes. Returns the final clock.
  SimTime run(SimTime horizon);

  const std::vector<PatientRecord>& records() const { return records_; }
  const std::vector<Patient>& patients() const { return patients_; }
  const std::vector<ImagingOrder>& orders() const { return orders_; }
  const EventCalendar& calendar() const { return calendar_; }

  void set_event_log(std::ostream* log) { event_log_ = log; }
  // Extra run-time invariant checks (bed conservation at every departure).
  void set_check_invariants(bool on) { check_invariants_ = on; }

  // exposed for unit tests
  static int pick_least_loaded(const std::vector<const Physician*>& candidates);

 private:
  RngStream patient_stream(const char* purpose, uint64_t a, uint64_t b = 0) const;

  void dispatch(const EventRecord& ev);
  void handle_arrival(int patient);
  void handle_triage_done(int patient);
  void try_assign_bed(int patient);
  void assign_bed(int patient, int pod, bool trauma_bay);
  int select_physician(int patient, int pod);
  void physician_free(int physician);
  void finish_activity(Physician& doc);
  void decide_next(Physician& doc);
  void start_evaluation(Physician& doc, int patient);
  void return_to_workstation(Physician& doc, int patient, int interaction);
  void return_pending_orders_now(Physician& doc);
  void place_order(int patient);
  void handle_imaging_read(int order);
  void after_evaluation(Physician& doc, int patient);
  void maybe_dispose(int patient);
  void dispose(int patient);
  void handle_departure(int patient);
  void handle_shift_start(int physician);
  void handle_shift_end(int physician);
  void perform_handoff(Physician& doc);
  void wake(Physician& doc);
  int next_eligible_patient(const Physician& doc) const;
  void collect(const Patient& p);
  void check_bed_conservation() const;

  ModelParams params_;
  ArrivalProfile profile_;
  uint64_t seed_ = 0;
  uint64_t replication_ = 0;

  EventCalendar calendar_;
  RngStream arrivals_stream_;
  std::vector<Patient> patients_;
  std::vector<ImagingOrder> orders_;
  std::vector<Physician> physicians_;
  std::vector<PodState> pods_;
  // waiting room, ordered by (ESI, arrival time, id)
  std::set<std::tuple<int, double, int>> waiting_room_;
  std::vector<PatientRecord> records_;
  SimTime horizon_ = 0;
  std::ostream* event_log_ = nullptr;
  bool check_invariants_ = false;
};

}  // namespace edsim

#endif
