#include "edsim/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace edsim {

namespace {
constexpr double kMinutesPerDay = 24.0 * 60.0;
constexpr double kOrderSeparation = 20.0;
}  // namespace

EdModel::EdModel(const ModelParams& params, uint64_t seed, uint64_t replication)
    : params_(params),
      profile_(params.arrival_profile()),
      seed_(seed),
      replication_(replication),
      arrivals_stream_(seed, "arrivals", replication) {
  pods_.reserve(params_.pods.size());
  for (const auto& spec : params_.pods) {
    PodState ps;
    ps.spec = spec;
    pods_.push_back(std::move(ps));
  }
}

RngStream EdModel::patient_stream(const char* purpose, uint64_t a, uint64_t b) const {
  return RngStream(seed_, purpose, replication_, a, b);
}

SimTime EdModel::run(SimTime horizon) {
  horizon_ = horizon;

  // Staff the pods: one physician instance per (pod, shift, day, slot).
  // The day before the start is included so wrap-around night shifts cover
  // the opening hours; a few days past the horizon stay staffed so patients
  // already in the department can be flushed to completion.
  int days = static_cast<int>(horizon / kMinutesPerDay) + 4;
  for (size_t pi = 0; pi < pods_.size(); ++pi) {
    for (const auto& shift : pods_[pi].spec.shifts) {
      double duration = shift.end_hour > shift.start_hour
                            ? (shift.end_hour - shift.start_hour) * 60.0
                            : (24.0 - shift.start_hour + shift.end_hour) * 60.0;
      for (int day = -1; day < days; ++day) {
        double start = day * kMinutesPerDay + shift.start_hour * 60.0;
        double end = start + duration;
        if (end <= 0.0) continue;
        for (int slot = 0; slot < shift.physicians; ++slot) {
          Physician doc;
          doc.id = static_cast<int>(physicians_.size());
          doc.pod = static_cast<int>(pi);
          doc.shift_start = std::max(0.0, start);
          doc.shift_end = end;
          physicians_.push_back(doc);
          pods_[pi].physicians.push_back(doc.id);
          calendar_.schedule(doc.shift_start, EventKind::PhysicianShiftStart, doc.id);
          calendar_.schedule(doc.shift_end, EventKind::PhysicianShiftEnd, doc.id);
        }
      }
    }
  }

  // first arrival
  SimTime t0 = profile_.next_arrival(0.0, arrivals_stream_);
  if (t0 <= horizon) {
    Patient p;
    p.id = 0;
    p.arrival = t0;
    patients_.push_back(p);
    calendar_.schedule(t0, EventKind::PatientArrival, 0);
  }

  // No new arrivals start after the horizon, but the calendar is drained so
  // everyone already in the department completes; records would otherwise be
  // right-truncated toward short stays.
  SimTime last = 0.0;
  while (auto next = calendar_.next_time()) {
    auto ev = calendar_.pop_next();
    last = ev->fire_time;
    if (event_log_) {
      (*event_log_) << ev->fire_time << ',' << ev->sequence << ','
                    << event_kind_name(ev->kind) << ',' << ev->subject << '\n';
    }
    dispatch(*ev);
  }
  return std::min(horizon, std::max(last, calendar_.clock()));
}

void EdModel::dispatch(const EventRecord& ev) {
  switch (ev.kind) {
    case EventKind::PatientArrival: handle_arrival(static_cast<int>(ev.subject)); break;
    case EventKind::TriageDone: handle_triage_done(static_cast<int>(ev.subject)); break;
    case EventKind::PhysicianShiftStart: handle_shift_start(static_cast<int>(ev.subject)); break;
    case EventKind::PhysicianShiftEnd: handle_shift_end(static_cast<int>(ev.subject)); break;
    case EventKind::PhysicianFree: physician_free(static_cast<int>(ev.subject)); break;
    case EventKind::ImagingRead: handle_imaging_read(static_cast<int>(ev.subject)); break;
    case EventKind::Departure: handle_departure(static_cast<int>(ev.subject)); break;
    default: break;
  }
}

void EdModel::handle_arrival(int pid) {
  Patient& p = patients_[pid];
  SimTime now = calendar_.clock();

  // draw severity and the imaging-order plan for this visit
  {
    auto s = patient_stream("esi", pid);
    double u = s.next_double();
    double acc = 0.0;
    p.esi = 5;
    for (int level = 1; level <= 5; ++level) {
      acc += params_.esi_mix[level - 1];
      if (u < acc) {
        p.esi = level;
        break;
      }
    }
  }
  p.interactions_total = params_.interactions_per_esi[p.esi - 1];
  {
    auto s = patient_stream("orders", pid);
    double u = s.next_double();
    const OrderPmf& pmf = params_.order_profiles[p.esi - 1];
    double total = pmf[0] + pmf[1] + pmf[2] + pmf[3];
    double acc = 0.0;
    p.plan_orders = 3;
    for (int k = 0; k < 4; ++k) {
      acc += pmf[k] / total;
      if (u < acc) {
        p.plan_orders = k;
        break;
      }
    }
  }

  // schedule the next arrival before anything else touches the calendar
  SimTime tn = profile_.next_arrival(now, arrivals_stream_);
  if (tn <= horizon_) {
    Patient next;
    next.id = static_cast<int>(patients_.size());
    next.arrival = tn;
    int nid = next.id;
    patients_.push_back(next);
    calendar_.schedule(tn, EventKind::PatientArrival, nid);
  }

  Patient& pr = patients_[pid];  // re-resolve, vector may have grown
  if (pr.esi == 1) {
    auto s = patient_stream("bypass", pid);
    if (s.next_double() < params_.trauma_bypass_probability) {
      for (size_t i = 0; i < pods_.size(); ++i) {
        if (pods_[i].bays_occupied < pods_[i].spec.trauma_bays) {
          pr.triage_done = now;
          assign_bed(pid, static_cast<int>(i), true);
          return;
        }
      }
    }
  }
  auto s = patient_stream("triage", pid);
  calendar_.schedule(now + params_.triage_time.sample(s), EventKind::TriageDone, pid);
}

void EdModel::handle_triage_done(int pid) {
  patients_[pid].triage_done = calendar_.clock();
  try_assign_bed(pid);
}

void EdModel::try_assign_bed(int pid) {
  const Patient& p = patients_[pid];
  int chosen = -1;
  // Low-acuity patients steer away from trauma-capable pods so those
  // beds stay open for ESI 1-2.
  for (int pass = 0; pass < 2 && chosen < 0; ++pass) {
    int best_free = 0;
    for (size_t i = 0; i < pods_.size(); ++i) {
      const PodState& pod = pods_[i];
      if (!pod.spec.accepts[p.esi - 1]) continue;
      if (p.esi >= 4 && pass == 0 && pod.spec.trauma_capable) continue;
      int free = pod.spec.beds - pod.occupied;
      if (free > best_free) {
        best_free = free;
        chosen = static_cast<int>(i);
      }
    }
    if (p.esi < 4) break;  // single pass, all accepting pods considered
  }
  if (chosen >= 0) {
    assign_bed(pid, chosen, false);
  } else {
    waiting_room_.insert({p.esi, p.arrival, pid});
  }
}

void EdModel::assign_bed(int pid, int pod, bool trauma_bay) {
  Patient& p = patients_[pid];
  p.pod = pod;
  p.in_trauma_bay = trauma_bay;
  if (trauma_bay) {
    ++pods_[pod].bays_occupied;
  } else {
    ++pods_[pod].occupied;
  }
  p.bed_assigned = calendar_.clock();
  int doc_id = select_physician(pid, pod);
  p.assigned_physician = doc_id;
  physicians_[doc_id].panel.push_back(pid);
  p.eligible = true;
  wake(physicians_[doc_id]);
}

int EdModel::pick_least_loaded(const std::vector<const Physician*>& candidates) {
  int best = -1;
  size_t best_panel = std::numeric_limits<size_t>::max();
  for (const Physician* doc : candidates) {
    if (doc->panel.size() < best_panel ||
        (doc->panel.size() == best_panel && (best < 0 || doc->id < best))) {
      best_panel = doc->panel.size();
      best = doc->id;
    }
  }
  return best;
}

int EdModel::select_physician(int /*pid*/, int pod) {
  std::vector<const Physician*> candidates;
  for (int id : pods_[pod].physicians) {
    const Physician& doc = physicians_[id];
    if (doc.on_shift && !doc.retiring) candidates.push_back(&doc);
  }
  int best = pick_least_loaded(candidates);
  if (best < 0) {
    throw NoPhysicianError("pod " + std::to_string(pod) + " unstaffed at t=" +
                           std::to_string(calendar_.clock()));
  }
  return best;
}

void EdModel::wake(Physician& doc) {
  if (doc.on_shift && doc.activity == Activity::Idle && !doc.wake_scheduled) {
    doc.wake_scheduled = true;
    calendar_.schedule(calendar_.clock(), EventKind::PhysicianFree, doc.id);
  }
}

void EdModel::physician_free(int doc_id) {
  Physician& doc = physicians_[doc_id];
  doc.wake_scheduled = false;
  if (doc.activity == Activity::Off) return;
  finish_activity(doc);
}

void EdModel::finish_activity(Physician& doc) {
  switch (doc.activity) {
    case Activity::Evaluating: {
      int pid = doc.current_patient;
      doc.current_patient = -1;
      after_evaluation(doc, pid);
      return;
    }
    case Activity::Charting:
    case Activity::Handoff:
      doc.activity = Activity::Idle;
      break;
    case Activity::Idle:
      break;
    case Activity::Off:
      return;
  }
  if (doc.retiring) {
    return_pending_orders_now(doc);
    perform_handoff(doc);
    return;
  }
  decide_next(doc);
}

void EdModel::return_pending_orders_now(Physician& doc) {
  while (!doc.pending_order_release.empty()) {
    int pid = doc.pending_order_release.front();
    doc.pending_order_release.pop_front();
    place_order(pid);
  }
}

void EdModel::after_evaluation(Physician& doc, int pid) {
  Patient& p = patients_[pid];
  p.interactions_done += 1;
  p.being_seen = false;
  p.eligible = false;
  int k = p.interactions_done;

  // one order released per completed interaction; any remainder of the plan
  // is released all at once after the final interaction
  int to_queue = 0;
  if (p.orders_placed < p.plan_orders) {
    to_queue = k == p.interactions_total ? p.plan_orders - p.orders_placed
               : p.orders_placed < k     ? 1
                                         : 0;
  }
  if (to_queue > 0) {
    p.awaiting_order_placement = true;
    for (int i = 0; i < to_queue; ++i) doc.pending_order_release.push_back(pid);
  } else if (p.unread_orders == 0 && p.interactions_done < p.interactions_total) {
    // nothing pending: ready for the next interaction as soon as the
    // physician gets back to them
    p.eligible = true;
  }
  maybe_dispose(pid);

  if (doc.retiring) {
    doc.activity = Activity::Idle;
    return_pending_orders_now(doc);
    perform_handoff(doc);
    return;
  }

  if (k >= 2) {
    auto s = patient_stream("routing", pid, static_cast<uint64_t>(k));
    if (s.next_double() < params_.chain_probability) {
      int next = next_eligible_patient(doc);
      if (next >= 0) {
        start_evaluation(doc, next);
        return;
      }
    }
  }
  return_to_workstation(doc, pid, k);
}

void EdModel::return_to_workstation(Physician& doc, int pid, int k) {
  return_pending_orders_now(doc);
  // keyed by the evaluation just finished, not a per-physician counter, so
  // paired scenarios under common random numbers stay aligned
  auto s = patient_stream("charting", static_cast<uint64_t>(pid),
                          static_cast<uint64_t>(k));
  double dur = params_.charting_time.sample(s) * params_.charting_scale;
  doc.activity = Activity::Charting;
  calendar_.schedule(calendar_.clock() + dur, EventKind::PhysicianFree, doc.id);
}

void EdModel::place_order(int pid) {
  Patient& p = patients_[pid];
  int idx = p.orders_placed;
  SimTime now = calendar_.clock();
  SimTime placed = now;
  if (!p.orders.empty()) {
    placed = std::max(placed, orders_[p.orders.back()].placed_at + kOrderSeparation);
  }

  auto s = patient_stream("imaging", pid, static_cast<uint64_t>(idx));
  const auto& iv = params_.interval_scales;
  double otb = params_.order_to_begin.quantile(s.next_double()) * params_.imaging_scale *
               iv[0] * (1.0 - params_.reduction_otb);
  double bte = params_.begin_to_end.quantile(s.next_double()) * params_.imaging_scale * iv[1];
  double etr = params_.end_to_read.quantile(s.next_double()) * params_.imaging_scale *
               iv[2] * (1.0 - params_.reduction_etr);

  ImagingOrder order;
  order.patient = pid;
  order.index = idx;
  order.placed_at = placed;
  order.begin_at = placed + otb;
  order.end_at = order.begin_at + bte;
  order.read_at = order.end_at + etr;
  {
    auto ic = patient_stream("imgcount", pid, static_cast<uint64_t>(idx));
    double u = ic.next_double();
    double acc = 0.0;
    order.image_count = static_cast<int>(params_.image_count_probs.size());
    for (size_t i = 0; i < params_.image_count_probs.size(); ++i) {
      acc += params_.image_count_probs[i];
      if (u < acc) {
        order.image_count = static_cast<int>(i) + 1;
        break;
      }
    }
  }

  int oid = static_cast<int>(orders_.size());
  orders_.push_back(order);
  p.orders.push_back(oid);
  p.orders_placed += 1;
  p.unread_orders += 1;
  p.awaiting_order_placement = false;
  calendar_.schedule(order.read_at, EventKind::ImagingRead, oid);
}

void EdModel::handle_imaging_read(int oid) {
  ImagingOrder& order = orders_[oid];
  order.read = true;
  Patient& p = patients_[order.patient];
  p.unread_orders -= 1;
  if (p.unread_orders > 0) return;
  if (p.interactions_done < p.interactions_total && !p.awaiting_order_placement) {
    p.eligible = true;
    if (p.assigned_physician >= 0) wake(physicians_[p.assigned_physician]);
  } else {
    maybe_dispose(order.patient);
  }
}

void EdModel::maybe_dispose(int pid) {
  const Patient& p = patients_[pid];
  if (p.interactions_done == p.interactions_total && p.orders_placed == p.plan_orders &&
      p.unread_orders == 0 && !p.awaiting_order_placement && p.disposition == kUnset) {
    dispose(pid);
  }
}

void EdModel::dispose(int pid) {
  Patient& p = patients_[pid];
  p.disposition = calendar_.clock();
  auto s = patient_stream("dispo", pid);
  bool admit = s.next_double() < params_.admit_probability[p.esi - 1];
  p.disposition_kind = admit ? DispositionKind::Admit : DispositionKind::Discharge;
  const TriangularDist& dist = admit ? params_.admit_delay : params_.discharge_delay;
  double delay = dist.quantile(s.next_double()) * params_.departure_delay_scale *
                 params_.departure_scale_by_esi[p.esi - 1];
  p.departure = p.disposition + delay;
  if (p.assigned_physician >= 0) {
    auto& panel = physicians_[p.assigned_physician].panel;
    panel.erase(std::remove(panel.begin(), panel.end(), pid), panel.end());
  }
  calendar_.schedule(p.departure, EventKind::Departure, pid);
}

void EdModel::handle_departure(int pid) {
  Patient& p = patients_[pid];
  p.departed = true;
  PodState& pod = pods_[p.pod];
  if (p.in_trauma_bay) {
    pod.bays_occupied -= 1;
  } else {
    pod.occupied -= 1;
  }
  collect(p);
  if (check_invariants_) check_bed_conservation();

  if (!p.in_trauma_bay) {
    for (auto it = waiting_room_.begin(); it != waiting_room_.end(); ++it) {
      int esi = std::get<0>(*it);
      int wid = std::get<2>(*it);
      if (pod.spec.accepts[esi - 1]) {
        waiting_room_.erase(it);
        assign_bed(wid, p.pod, false);
        break;
      }
    }
  }
}

void EdModel::handle_shift_start(int doc_id) {
  Physician& doc = physicians_[doc_id];
  doc.on_shift = true;
  doc.activity = Activity::Idle;
  wake(doc);
}

void EdModel::handle_shift_end(int doc_id) {
  Physician& doc = physicians_[doc_id];
  doc.on_shift = false;
  if (doc.activity == Activity::Idle) {
    return_pending_orders_now(doc);
    perform_handoff(doc);
  } else {
    doc.retiring = true;
  }
}

void EdModel::perform_handoff(Physician& doc) {
  doc.retiring = false;
  doc.activity = Activity::Off;
  if (doc.panel.empty()) return;

  std::vector<const Physician*> arriving;
  std::vector<const Physician*> remaining;
  for (int id : pods_[doc.pod].physicians) {
    const Physician& other = physicians_[id];
    if (id == doc.id || !other.on_shift || other.retiring) continue;
    if (other.shift_start > doc.shift_start) {
      arriving.push_back(&other);
    } else {
      remaining.push_back(&other);
    }
  }
  int recv_id = pick_least_loaded(arriving);
  if (recv_id < 0) recv_id = pick_least_loaded(remaining);
  if (recv_id < 0) {
    throw UnstaffedPodError("pod " + std::to_string(doc.pod) +
                            " has no receiver for handoff at t=" +
                            std::to_string(calendar_.clock()));
  }
  Physician& recv = physicians_[recv_id];
  for (int pid : doc.panel) {
    patients_[pid].assigned_physician = recv_id;
    recv.panel.push_back(pid);
  }
  recv.pending_handoff_minutes +=
      params_.handoff_minutes_per_patient * static_cast<double>(doc.panel.size());
  doc.panel.clear();
  wake(recv);
}

void EdModel::decide_next(Physician& doc) {
  if (!doc.on_shift) return;
  if (doc.pending_handoff_minutes > 0.0) {
    double minutes = doc.pending_handoff_minutes;
    doc.pending_handoff_minutes = 0.0;
    doc.activity = Activity::Handoff;
    calendar_.schedule(calendar_.clock() + minutes, EventKind::PhysicianFree, doc.id);
    return;
  }
  int next = next_eligible_patient(doc);
  if (next >= 0) {
    start_evaluation(doc, next);
  } else {
    doc.activity = Activity::Idle;
  }
}

int EdModel::next_eligible_patient(const Physician& doc) const {
  int best = -1;
  for (int pid : doc.panel) {
    const Patient& p = patients_[pid];
    if (!p.eligible || p.being_seen || p.interactions_done >= p.interactions_total) continue;
    if (best < 0) {
      best = pid;
      continue;
    }
    // strict acuity first; within a level, patients returning from imaging
    // are picked up before first evaluations, then longest in the
    // department. Arrival is a scenario-invariant tiebreak, which keeps
    // paired comparisons aligned.
    const Patient& b = patients_[best];
    int pr = p.interactions_done > 0 ? 0 : 1;
    int br = b.interactions_done > 0 ? 0 : 1;
    if (p.esi != b.esi           ? p.esi < b.esi
        : pr != br               ? pr < br
        : p.arrival != b.arrival ? p.arrival < b.arrival
                                 : pid < best) {
      best = pid;
    }
  }
  return best;
}

void EdModel::start_evaluation(Physician& doc, int pid) {
  Patient& p = patients_[pid];
  int k = p.interactions_done + 1;
  if (k > p.interactions_total) {
    throw UndefinedInteractionError("interaction " + std::to_string(k) +
                                    " undefined for ESI " + std::to_string(p.esi));
  }
  auto s = patient_stream("service", pid, static_cast<uint64_t>(k));
  double dur = params_.interaction_times[p.esi - 1][k - 1].sample(s);
  if (k == 1) p.first_eval_start = calendar_.clock();
  p.being_seen = true;
  p.face_time += dur;
  doc.activity = Activity::Evaluating;
  doc.current_patient = pid;
  doc.current_interaction = k;
  calendar_.schedule(calendar_.clock() + dur, EventKind::PhysicianFree, doc.id);
}

void EdModel::collect(const Patient& p) {
  auto ordered = [](SimTime a, SimTime b) { return a == kUnset || b == kUnset || a <= b; };
  if (!(ordered(p.arrival, p.triage_done) && ordered(p.triage_done, p.bed_assigned) &&
        ordered(p.bed_assigned, p.first_eval_start) &&
        ordered(p.first_eval_start, p.disposition) &&
        ordered(p.disposition, p.departure) && p.bed_assigned != kUnset &&
        p.disposition != kUnset && p.departure != kUnset)) {
    throw IncompleteTrailError("timestamp trail out of order for patient " +
                               std::to_string(p.id));
  }
  PatientRecord r;
  r.esi = p.esi;
  r.arrival = p.arrival;
  r.bed_assigned = p.bed_assigned;
  r.time_in_ed = p.departure - p.bed_assigned;
  r.bed_to_disposition = p.disposition - p.bed_assigned;
  r.disposition_to_departure = p.departure - p.disposition;
  r.waiting_room_wait = p.bed_assigned - p.triage_done;
  r.face_time = p.face_time;
  r.order_count = static_cast<int>(p.orders.size());
  r.admitted = p.disposition_kind == DispositionKind::Admit;
  records_.push_back(r);
}

void EdModel::check_bed_conservation() const {
  std::vector<int> occupied(pods_.size(), 0);
  std::vector<int> bays(pods_.size(), 0);
  for (const Patient& p : patients_) {
    if (p.pod < 0 || p.bed_assigned == kUnset || p.departed) continue;
    if (p.in_trauma_bay) {
      ++bays[p.pod];
    } else {
      ++occupied[p.pod];
    }
  }
  for (size_t i = 0; i < pods_.size(); ++i) {
    if (occupied[i] != pods_[i].occupied || bays[i] != pods_[i].bays_occupied ||
        pods_[i].occupied > pods_[i].spec.beds ||
        pods_[i].bays_occupied > pods_[i].spec.trauma_bays) {
      throw std::logic_error("bed conservation violated in pod " + std::to_string(i));
    }
  }
}

}  // namespace edsim
