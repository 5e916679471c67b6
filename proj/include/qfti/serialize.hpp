#pragma once

// JSON wire formats: the circuit schema
// {n_sites, site_dim, gates: [{kind, targets, params}], ordering_note}
// with deterministic field order, and the pulse-schedule schema with times
// in seconds at full double precision.

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <variant>

#include "qfti/circuit.hpp"
#include "qfti/schedule.hpp"

namespace qfti {

using json = nlohmann::ordered_json;

inline std::string gate_kind_name(GateKind k) {
  switch (k) {
    case GateKind::Rotation: return "rotation";
    case GateKind::PhaseGate: return "phase";
    case GateKind::IsingPair: return "ising";
    case GateKind::Hadamard: return "hadamard";
    case GateKind::CPhase: return "cphase";
    case GateKind::Swap: return "swap";
    case GateKind::PiPulse: return "pi_pulse";
    case GateKind::TailoredEvolution: return "tailored";
  }
  throw std::logic_error("gate_kind_name: unknown kind");
}

inline GateKind gate_kind_from_name(const std::string& s) {
  if (s == "rotation") return GateKind::Rotation;
  if (s == "phase") return GateKind::PhaseGate;
  if (s == "ising") return GateKind::IsingPair;
  if (s == "hadamard") return GateKind::Hadamard;
  if (s == "cphase") return GateKind::CPhase;
  if (s == "swap") return GateKind::Swap;
  if (s == "pi_pulse") return GateKind::PiPulse;
  if (s == "tailored") return GateKind::TailoredEvolution;
  throw std::runtime_error("unknown gate kind: " + s);
}

inline json gate_to_json(const Gate& g) {
  json j;
  j["kind"] = gate_kind_name(g.kind);
  json targets = json::array();
  if (g.kind != GateKind::TailoredEvolution) {
    targets.push_back(g.q1);
    if (g.two_site()) targets.push_back(g.q2);
  }
  j["targets"] = targets;
  json params = json::object();
  switch (g.kind) {
    case GateKind::Rotation:
      params["theta"] = g.theta;
      params["phi"] = g.phi;
      break;
    case GateKind::PhaseGate:
    case GateKind::IsingPair:
    case GateKind::CPhase: params["phi"] = g.phi; break;
    case GateKind::Hadamard:
    case GateKind::Swap: break;
    case GateKind::PiPulse:
      params["transition"] = g.transition == Transition::ZeroPrimeZero ? "0p-0" : "0p-+1";
      params["phase"] = g.phi;
      break;
    case GateKind::TailoredEvolution: {
      json rows = json::array();
      for (Eigen::Index r = 0; r < g.coupling.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < g.coupling.cols(); ++c) row.push_back(g.coupling(r, c));
        rows.push_back(row);
      }
      params["coupling"] = rows;
      params["duration"] = g.duration;
      break;
    }
  }
  j["params"] = params;
  return j;
}

inline Gate gate_from_json(const json& j) {
  Gate g;
  g.kind = gate_kind_from_name(j.at("kind").get<std::string>());
  const auto& targets = j.at("targets");
  const auto& params = j.at("params");
  if (g.kind != GateKind::TailoredEvolution) {
    g.q1 = targets.at(0).get<int>();
    if (targets.size() > 1) g.q2 = targets.at(1).get<int>();
  }
  switch (g.kind) {
    case GateKind::Rotation:
      g.theta = params.at("theta").get<double>();
      g.phi = params.at("phi").get<double>();
      break;
    case GateKind::PhaseGate:
    case GateKind::IsingPair:
    case GateKind::CPhase: g.phi = params.at("phi").get<double>(); break;
    case GateKind::Hadamard:
    case GateKind::Swap: break;
    case GateKind::PiPulse: {
      const std::string t = params.at("transition").get<std::string>();
      if (t == "0p-0") g.transition = Transition::ZeroPrimeZero;
      else if (t == "0p-+1") g.transition = Transition::ZeroPrimePlusOne;
      else throw std::runtime_error("unknown pi-pulse transition: " + t);
      g.phi = params.at("phase").get<double>();
      break;
    }
    case GateKind::TailoredEvolution: {
      const auto& rows = params.at("coupling");
      const auto n = static_cast<Eigen::Index>(rows.size());
      g.coupling.resize(n, n);
      for (Eigen::Index r = 0; r < n; ++r)
        for (Eigen::Index c = 0; c < n; ++c) g.coupling(r, c) = rows.at(r).at(c).get<double>();
      g.duration = params.at("duration").get<double>();
      break;
    }
  }
  return g;
}

inline json circuit_to_json(const Circuit& c) {
  json j;
  j["n_sites"] = c.n_sites;
  j["site_dim"] = c.site_dim;
  json gates = json::array();
  for (const Gate& g : c.gates) gates.push_back(gate_to_json(g));
  j["gates"] = gates;
  j["ordering_note"] = c.ordering_note;
  return j;
}

inline Circuit circuit_from_json(const json& j) {
  Circuit c;
  c.n_sites = j.at("n_sites").get<int>();
  c.site_dim = j.at("site_dim").get<int>();
  c.ordering_note = j.value("ordering_note", std::string(kOrderingNote));
  for (const auto& gj : j.at("gates")) c.gates.push_back(gate_from_json(gj));
  return c;
}

inline json schedule_to_json(const PulseSchedule& s) {
  json j;
  j["n_ions"] = s.n_ions;
  j["total_time"] = s.total_time;
  json entries = json::array();
  for (const auto& e : s.entries) {
    json ej;
    ej["start_time"] = e.start_time;
    ej["duration"] = e.duration;
    json action;
    if (const auto* p = std::get_if<MicrowavePulse>(&e.action)) {
      action["kind"] = "microwave_pulse";
      action["ion"] = p->ion;
      action["transition"] = p->transition == Transition::ZeroPrimeZero ? "0p-0" : "0p-+1";
      action["area"] = p->area;
      action["phase"] = p->phase;
    } else if (const auto* f = std::get_if<FreeEvolution>(&e.action)) {
      action["kind"] = "free_evolution";
      action["coupled"] = f->coupled;
    } else if (const auto* c = std::get_if<CoupleIon>(&e.action)) {
      action["kind"] = "couple";
      action["ion"] = c->ion;
    } else if (const auto* u = std::get_if<UncoupleIon>(&e.action)) {
      action["kind"] = "uncouple";
      action["ion"] = u->ion;
    } else if (const auto* ph = std::get_if<PhaseShift>(&e.action)) {
      action["kind"] = "phase_shift";
      action["ion"] = ph->ion;
      action["phi"] = ph->phi;
    }
    ej["action"] = action;
    entries.push_back(ej);
  }
  j["entries"] = entries;
  return j;
}

inline PulseSchedule schedule_from_json(const json& j) {
  PulseSchedule s;
  s.n_ions = j.at("n_ions").get<int>();
  s.total_time = j.at("total_time").get<double>();
  for (const auto& ej : j.at("entries")) {
    ScheduleEntry e;
    e.start_time = ej.at("start_time").get<double>();
    e.duration = ej.at("duration").get<double>();
    const auto& a = ej.at("action");
    const std::string kind = a.at("kind").get<std::string>();
    if (kind == "microwave_pulse") {
      MicrowavePulse p;
      p.ion = a.at("ion").get<int>();
      p.transition =
          a.at("transition").get<std::string>() == "0p-0" ? Transition::ZeroPrimeZero
                                                          : Transition::ZeroPrimePlusOne;
      p.area = a.at("area").get<double>();
      p.phase = a.at("phase").get<double>();
      e.action = p;
    } else if (kind == "free_evolution") {
      FreeEvolution f;
      f.coupled = a.at("coupled").get<std::vector<int>>();
      e.action = f;
    } else if (kind == "couple") {
      e.action = CoupleIon{a.at("ion").get<int>()};
    } else if (kind == "uncouple") {
      e.action = UncoupleIon{a.at("ion").get<int>()};
    } else if (kind == "phase_shift") {
      e.action = PhaseShift{a.at("ion").get<int>(), a.at("phi").get<double>()};
    } else {
      throw std::runtime_error("unknown schedule action: " + kind);
    }
    s.entries.push_back(e);
  }
  return s;
}

}  // namespace qfti
