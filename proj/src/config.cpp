#include "edsim/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace edsim {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, const std::set<std::string>& known,
                    const std::string& path) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!known.count(it.key())) {
      throw ValidationError("unknown key: " + path + it.key());
    }
  }
}

TriangularDist read_tria(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 3) {
    throw ValidationError(path + ": triangular distribution needs [min, mode, max]");
  }
  double lo = j[0], md = j[1], hi = j[2];
  if (!(lo <= md && md <= hi && lo < hi)) {
    throw ValidationError(path + ": requires min <= mode <= max and min < max");
  }
  return TriangularDist(lo, md, hi);
}

json tria_json(const TriangularDist& t) { return json::array({t.min, t.mode, t.max}); }

OrderPmf read_pmf(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 4) {
    throw ValidationError(path + ": order pmf needs 4 probabilities (0..3 orders)");
  }
  OrderPmf pmf{};
  double sum = 0.0;
  for (int k = 0; k < 4; ++k) {
    pmf[k] = j[k];
    if (pmf[k] < 0.0) throw ValidationError(path + ": probability < 0");
    sum += pmf[k];
  }
  if (std::fabs(sum - 1.0) > 0.02) {
    throw ValidationError(path + ": probabilities sum to " + std::to_string(sum) +
                          ", expected 1");
  }
  return pmf;
}

std::array<OrderPmf, 5> read_profiles(const json& j, const std::string& path,
                                      const std::array<OrderPmf, 5>& fallback) {
  std::array<OrderPmf, 5> rows = fallback;
  if (!j.is_object()) throw ValidationError(path + ": expected an object keyed esi1..esi5");
  reject_unknown(j, {"esi1", "esi2", "esi3", "esi4", "esi5"}, path + ".");
  for (int e = 1; e <= 5; ++e) {
    std::string key = "esi" + std::to_string(e);
    if (j.contains(key)) rows[e - 1] = read_pmf(j[key], path + "." + key);
  }
  return rows;
}

void apply_model(const json& j, ModelParams& p) {
  reject_unknown(j, {"arrival", "esi_mix", "order_profiles", "interaction_times",
                     "imaging", "triage_time", "charting_time", "charting_scale",
                     "admit_probability", "discharge_delay", "admit_delay",
                     "departure_delay_scale", "departure_scale_by_esi",
                     "trauma_bypass_probability", "chain_probability",
                     "handoff_minutes_per_patient", "image_count_probs", "pods"},
                 "model.");

  if (j.contains("arrival")) {
    const json& a = j["arrival"];
    reject_unknown(a, {"hourly_rates", "day_multipliers"}, "model.arrival.");
    if (a.contains("hourly_rates")) {
      if (!a["hourly_rates"].is_array() || a["hourly_rates"].size() != 24) {
        throw ValidationError("model.arrival.hourly_rates: needs 24 entries");
      }
      for (int h = 0; h < 24; ++h) p.hourly_rates[h] = a["hourly_rates"][h];
    }
    if (a.contains("day_multipliers")) {
      if (!a["day_multipliers"].is_array() || a["day_multipliers"].size() != 7) {
        throw ValidationError("model.arrival.day_multipliers: needs 7 entries");
      }
      for (int d = 0; d < 7; ++d) p.day_multipliers[d] = a["day_multipliers"][d];
    }
  }
  if (j.contains("esi_mix")) {
    if (!j["esi_mix"].is_array() || j["esi_mix"].size() != 5) {
      throw ValidationError("model.esi_mix: needs 5 shares");
    }
    double sum = 0.0;
    for (int e = 0; e < 5; ++e) {
      p.esi_mix[e] = j["esi_mix"][e];
      if (p.esi_mix[e] < 0) throw ValidationError("model.esi_mix: share < 0");
      sum += p.esi_mix[e];
    }
    if (std::fabs(sum - 1.0) > 0.02) throw ValidationError("model.esi_mix: shares must sum to 1");
  }
  if (j.contains("order_profiles")) {
    p.order_profiles = read_profiles(j["order_profiles"], "model.order_profiles",
                                     p.order_profiles);
  }
  if (j.contains("interaction_times")) {
    const json& t = j["interaction_times"];
    if (!t.is_array() || t.size() != 5) {
      throw ValidationError("model.interaction_times: needs 5 rows (ESI 1..5)");
    }
    for (int e = 0; e < 5; ++e) {
      const json& row = t[e];
      if (!row.is_array() || static_cast<int>(row.size()) != p.interactions_per_esi[e]) {
        throw ValidationError("model.interaction_times: ESI " + std::to_string(e + 1) +
                              " needs " + std::to_string(p.interactions_per_esi[e]) +
                              " triangles");
      }
      for (int k = 0; k < static_cast<int>(row.size()); ++k) {
        p.interaction_times[e][k] =
            read_tria(row[k], "model.interaction_times[" + std::to_string(e) + "][" +
                                  std::to_string(k) + "]");
      }
    }
  }
  if (j.contains("imaging")) {
    const json& im = j["imaging"];
    reject_unknown(im, {"order_to_begin", "begin_to_end", "end_to_read", "scale",
                        "interval_scales"},
                   "model.imaging.");
    if (im.contains("order_to_begin"))
      p.order_to_begin = read_tria(im["order_to_begin"], "model.imaging.order_to_begin");
    if (im.contains("begin_to_end"))
      p.begin_to_end = read_tria(im["begin_to_end"], "model.imaging.begin_to_end");
    if (im.contains("end_to_read"))
      p.end_to_read = read_tria(im["end_to_read"], "model.imaging.end_to_read");
    if (im.contains("scale")) p.imaging_scale = im["scale"];
    if (im.contains("interval_scales")) {
      const json& v = im["interval_scales"];
      if (!v.is_array() || v.size() != 3)
        throw ValidationError("model.imaging.interval_scales: expected 3 values");
      for (int k = 0; k < 3; ++k) {
        p.interval_scales[k] = v[k];
        if (p.interval_scales[k] <= 0.0)
          throw ValidationError("model.imaging.interval_scales: must be positive");
      }
    }
  }
  if (j.contains("triage_time")) p.triage_time = read_tria(j["triage_time"], "model.triage_time");
  if (j.contains("charting_time"))
    p.charting_time = read_tria(j["charting_time"], "model.charting_time");
  if (j.contains("charting_scale")) p.charting_scale = j["charting_scale"];
  if (j.contains("admit_probability")) {
    if (!j["admit_probability"].is_array() || j["admit_probability"].size() != 5) {
      throw ValidationError("model.admit_probability: needs 5 entries");
    }
    for (int e = 0; e < 5; ++e) {
      p.admit_probability[e] = j["admit_probability"][e];
      if (p.admit_probability[e] < 0 || p.admit_probability[e] > 1) {
        throw ValidationError("model.admit_probability: not a probability");
      }
    }
  }
  if (j.contains("discharge_delay"))
    p.discharge_delay = read_tria(j["discharge_delay"], "model.discharge_delay");
  if (j.contains("admit_delay")) p.admit_delay = read_tria(j["admit_delay"], "model.admit_delay");
  if (j.contains("departure_delay_scale")) p.departure_delay_scale = j["departure_delay_scale"];
  if (j.contains("departure_scale_by_esi")) {
    if (!j["departure_scale_by_esi"].is_array() || j["departure_scale_by_esi"].size() != 5) {
      throw ValidationError("model.departure_scale_by_esi: needs 5 entries");
    }
    for (int e = 0; e < 5; ++e) p.departure_scale_by_esi[e] = j["departure_scale_by_esi"][e];
  }
  if (j.contains("trauma_bypass_probability")) {
    p.trauma_bypass_probability = j["trauma_bypass_probability"];
    if (p.trauma_bypass_probability < 0 || p.trauma_bypass_probability > 1) {
      throw ValidationError("model.trauma_bypass_probability: not a probability");
    }
  }
  if (j.contains("chain_probability")) {
    p.chain_probability = j["chain_probability"];
    if (p.chain_probability < 0 || p.chain_probability > 1) {
      throw ValidationError("model.chain_probability: not a probability");
    }
  }
  if (j.contains("handoff_minutes_per_patient"))
    p.handoff_minutes_per_patient = j["handoff_minutes_per_patient"];
  if (j.contains("image_count_probs")) {
    p.image_count_probs = j["image_count_probs"].get<std::vector<double>>();
    if (p.image_count_probs.empty()) {
      throw ValidationError("model.image_count_probs: must be nonempty");
    }
  }
  if (j.contains("pods")) {
    if (!j["pods"].is_array() || j["pods"].empty()) {
      throw ValidationError("model.pods: needs at least one pod");
    }
    p.pods.clear();
    int pi = 0;
    for (const json& pj : j["pods"]) {
      std::string path = "model.pods[" + std::to_string(pi++) + "].";
      reject_unknown(pj, {"beds", "trauma_capable", "trauma_bays", "accepts", "shifts"}, path);
      PodSpec pod;
      pod.beds = pj.value("beds", 12);
      pod.trauma_capable = pj.value("trauma_capable", false);
      pod.trauma_bays = pj.value("trauma_bays", 0);
      if (pod.beds <= 0) throw ValidationError(path + "beds: must be positive");
      if (!pj.contains("accepts")) throw ValidationError(path + "accepts: required");
      for (int level : pj["accepts"].get<std::vector<int>>()) {
        if (level < 1 || level > 5) throw ValidationError(path + "accepts: ESI out of 1..5");
        pod.accepts[level - 1] = true;
      }
      if (!pod.trauma_capable && pod.accepts[0]) {
        throw ValidationError(path + "accepts: non-trauma-capable pod cannot take ESI 1");
      }
      if (!pj.contains("shifts")) throw ValidationError(path + "shifts: required");
      for (const json& sj : pj["shifts"]) {
        reject_unknown(sj, {"start_hour", "end_hour", "physicians"}, path + "shifts.");
        ShiftSpec shift;
        shift.start_hour = sj.value("start_hour", 0.0);
        shift.end_hour = sj.value("end_hour", 0.0);
        shift.physicians = sj.value("physicians", 1);
        if (shift.physicians < 0) throw ValidationError(path + "shifts.physicians: negative");
        pod.shifts.push_back(shift);
      }
      p.pods.push_back(std::move(pod));
    }
  }
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  json root;
  try {
    root = text.empty() ? json::object() : json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what());
  }
  if (!root.is_object()) throw ParseError("config root must be an object");

  RunConfig cfg;
  reject_unknown(root, {"seed", "replications", "horizon_minutes", "warmup_minutes",
                        "model", "scenario", "validation_targets"},
                 "");
  if (root.contains("seed")) cfg.scenario.base_seed = root["seed"].get<uint64_t>();
  if (root.contains("replications")) {
    cfg.scenario.replications = root["replications"];
    if (cfg.scenario.replications < 2) {
      throw ValidationError("replications: needs at least 2");
    }
  }
  if (root.contains("horizon_minutes")) {
    cfg.scenario.horizon_minutes = root["horizon_minutes"];
    if (cfg.scenario.horizon_minutes <= 0) throw ValidationError("horizon_minutes: must be positive");
  }
  if (root.contains("warmup_minutes")) {
    cfg.scenario.warmup_minutes = root["warmup_minutes"];
    if (cfg.scenario.warmup_minutes < 0) throw ValidationError("warmup_minutes: negative");
  }
  if (root.contains("model")) apply_model(root["model"], cfg.scenario.model);
  if (root.contains("scenario")) {
    const json& s = root["scenario"];
    reject_unknown(s, {"r_otb", "r_etr", "order_profile_override"}, "scenario.");
    if (s.contains("r_otb")) cfg.scenario.r_otb = s["r_otb"];
    if (s.contains("r_etr")) cfg.scenario.r_etr = s["r_etr"];
    if (cfg.scenario.r_otb < 0 || cfg.scenario.r_otb > 1 || cfg.scenario.r_etr < 0 ||
        cfg.scenario.r_etr > 1) {
      throw ValidationError("scenario reductions must lie in [0, 1]");
    }
    if (s.contains("order_profile_override") && !s["order_profile_override"].is_null()) {
      cfg.scenario.order_profile_override =
          read_profiles(s["order_profile_override"], "scenario.order_profile_override",
                        cfg.scenario.model.order_profiles);
    }
  }
  if (root.contains("validation_targets")) {
    if (!root["validation_targets"].is_array() || root["validation_targets"].size() != 5) {
      throw ValidationError("validation_targets: needs 5 per-ESI means");
    }
    for (int e = 0; e < 5; ++e) cfg.validation_targets[e] = root["validation_targets"][e];
  }
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string emit_defaults() {
  const RunConfig cfg;
  const ModelParams& p = cfg.scenario.model;
  json j;
  j["seed"] = cfg.scenario.base_seed;
  j["replications"] = cfg.scenario.replications;
  j["horizon_minutes"] = cfg.scenario.horizon_minutes;
  j["warmup_minutes"] = cfg.scenario.warmup_minutes;

  json m;
  m["arrival"]["hourly_rates"] = p.hourly_rates;
  m["arrival"]["day_multipliers"] = p.day_multipliers;
  m["esi_mix"] = p.esi_mix;
  json profiles;
  for (int e = 0; e < 5; ++e) profiles["esi" + std::to_string(e + 1)] = p.order_profiles[e];
  m["order_profiles"] = profiles;
  json times = json::array();
  for (int e = 0; e < 5; ++e) {
    json row = json::array();
    for (int k = 0; k < p.interactions_per_esi[e]; ++k) {
      row.push_back(tria_json(p.interaction_times[e][k]));
    }
    times.push_back(row);
  }
  m["interaction_times"] = times;
  m["imaging"]["order_to_begin"] = tria_json(p.order_to_begin);
  m["imaging"]["begin_to_end"] = tria_json(p.begin_to_end);
  m["imaging"]["end_to_read"] = tria_json(p.end_to_read);
  m["imaging"]["scale"] = p.imaging_scale;
  m["imaging"]["interval_scales"] = p.interval_scales;
  m["triage_time"] = tria_json(p.triage_time);
  m["charting_time"] = tria_json(p.charting_time);
  m["charting_scale"] = p.charting_scale;
  m["admit_probability"] = p.admit_probability;
  m["discharge_delay"] = tria_json(p.discharge_delay);
  m["admit_delay"] = tria_json(p.admit_delay);
  m["departure_delay_scale"] = p.departure_delay_scale;
  m["departure_scale_by_esi"] = p.departure_scale_by_esi;
  m["trauma_bypass_probability"] = p.trauma_bypass_probability;
  m["chain_probability"] = p.chain_probability;
  m["handoff_minutes_per_patient"] = p.handoff_minutes_per_patient;
  m["image_count_probs"] = p.image_count_probs;
  json pods = json::array();
  for (const PodSpec& pod : p.pods) {
    json pj;
    pj["beds"] = pod.beds;
    pj["trauma_capable"] = pod.trauma_capable;
    pj["trauma_bays"] = pod.trauma_bays;
    json accepts = json::array();
    for (int e = 0; e < 5; ++e) {
      if (pod.accepts[e]) accepts.push_back(e + 1);
    }
    pj["accepts"] = accepts;
    json shifts = json::array();
    for (const ShiftSpec& s : pod.shifts) {
      shifts.push_back({{"start_hour", s.start_hour},
                        {"end_hour", s.end_hour},
                        {"physicians", s.physicians}});
    }
    pj["shifts"] = shifts;
    pods.push_back(pj);
  }
  m["pods"] = pods;
  j["model"] = m;
  j["scenario"] = {{"r_otb", cfg.scenario.r_otb}, {"r_etr", cfg.scenario.r_etr}};
  j["validation_targets"] = cfg.validation_targets;
  return j.dump(2) + "\n";
}

std::string csv_number(double value, int decimals) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value,
                                 std::chars_format::fixed, decimals);
  return std::string(buf, end);
}

}  // namespace edsim
