/* Copyright 2026 The littlesync Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include <nlohmann/json.hpp>

#include <set>
#include <string>
#include <vector>

#include "little/census.hpp"
#include "little/trigger.hpp"

// JSON encodings shared by the CLI and the session boundary. Field names are
// camelCase; schemas/ documents every message.

namespace little {

using Json = nlohmann::ordered_json;

/// Thrown for malformed requests (bad fields, unknown names).
class RequestError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline const char* origin_name(Origin o) { return o == Origin::Prelude ? "prelude" : "program"; }

inline Json error_json(const std::exception& e) {
  Json err{{"kind", "internal"}, {"message", e.what()}};
  if (const auto* le = dynamic_cast<const LittleError*>(&e)) {
    err["kind"] = dynamic_cast<const ParseError*>(&e) ? "parse" : dynamic_cast<const EvalError*>(&e) ? "eval" : "svg";
    err["message"] = le->message();
    if (le->pos().line) {
      err["line"] = le->pos().line;
      err["column"] = le->pos().column;
      err["origin"] = origin_name(le->pos().origin);
    }
  } else if (dynamic_cast<const std::invalid_argument*>(&e) || dynamic_cast<const nlohmann::json::exception*>(&e)) {
    err["kind"] = "request";
  }
  return err;
}

inline Json locations_json(const Program& p, const FrozenSet& frozen, bool include_prelude = false) {
  auto name = location_namer(p);
  Json out = Json::array();
  for_each_literal(p, [&](const NumLiteral& l) {
    if (l.loc.origin == Origin::Prelude && !include_prelude) return;
    Json j{{"id", l.loc.id.value},
           {"name", name(l.loc.id)},
           {"value", l.value},
           {"origin", origin_name(l.loc.origin)},
           {"frozen", frozen.contains(l.loc.id)}};
    if (l.range) j["range"] = {l.range->lo, l.range->hi};
    out.push_back(std::move(j));
  });
  return out;
}

inline Json loc_names(const std::set<LocId>& s, const LocNamer& name) {
  Json out = Json::array();
  for (auto l : s) out.push_back(name(l));
  return out;
}

inline Json canvas_json(const std::vector<IndexedShape>& canvas, const LocNamer& name) {
  Json out = Json::array();
  for (const auto& s : canvas) {
    Json slots = Json::array();
    for (const auto& slot : s.slots) {
      std::set<LocId> locs = locs_of(*slot.trace, FrozenSet{});
      slots.push_back({{"slot", slot.name},
                       {"attr", slot.attr},
                       {"value", slot.value},
                       {"trace", to_sexpr(*slot.trace, name)},
                       {"locations", loc_names(locs, name)}});
    }
    out.push_back({{"index", s.index},
                   {"kind", s.kind},
                   {"hidden", s.hidden},
                   {"zonesDisabled", s.zones_disabled},
                   {"slots", std::move(slots)}});
  }
  return out;
}

inline std::string caption(const ZoneAssignment& za, const LocNamer& name) {
  if (!za.chosen) return "Inactive";
  std::string s = "Active:";
  for (auto l : location_set(*za.chosen)) s += " " + name(l);
  return s;
}

inline Json highlight_json(const HighlightInfo& h, const LocNamer& name) {
  std::set<LocId> yellow;
  for (auto l : h.chosen)
    if (!h.solved.contains(l) && !h.failed.contains(l)) yellow.insert(l);
  return {{"active", h.active},
          {"yellow", loc_names(yellow, name)},
          {"green", loc_names(h.solved, name)},
          {"red", loc_names(h.failed, name)},
          {"gray", loc_names(h.contributing, name)}};
}

inline Json zones_json(const Prepared& prep) {
  auto name = location_namer(prep.program);
  Json out = Json::array();
  for (const auto& za : prep.gamma.zones) {
    Json j{{"shape", za.shape}, {"zone", za.zone.name}, {"active", za.chosen.has_value()}};
    Json attrs = Json::array();
    for (std::size_t i = 0; i < za.zone.attrs.size(); ++i) {
      Json a{{"slot", za.zone.attrs[i].slot}, {"offset", offset_name(za.zone.attrs[i].offset)}};
      if (za.chosen) a["location"] = name((*za.chosen)[i]);
      attrs.push_back(std::move(a));
    }
    j["attrs"] = std::move(attrs);
    if (za.chosen) {
      j["candidates"] = za.candidates.count;
    } else {
      j["reason"] = za.candidates.inactive_reason;
    }
    j["caption"] = caption(za, name);
    j["highlight"] = highlight_json(highlight_info(prep.gamma, za.shape, za.zone.name), name);
    out.push_back(std::move(j));
  }
  return out;
}

inline const char* status_name(AttrStatus s) {
  switch (s) {
    case AttrStatus::Solved: return "solved";
    case AttrStatus::Failed: return "failed";
    case AttrStatus::Unchanged: return "unchanged";
  }
  return "?";
}

inline const char* status_name(ActionStatus s) {
  switch (s) {
    case ActionStatus::Ok: return "ok";
    case ActionStatus::Inactive: return "inactive";
    case ActionStatus::Unsolvable: return "unsolvable";
    case ActionStatus::EvalFailed: return "evalFailed";
  }
  return "?";
}

inline Json classification_json(const Classification& c) {
  Json j{{"kind", class_name(c.kind)}, {"hits", c.hits}};
  if (!c.diagnostic.empty()) j["diagnostic"] = c.diagnostic;
  return j;
}

/// Diagnostics for an action: per-attribute outcomes plus highlight classes.
inline Json action_json(const Prepared& prep, const ActionResult& r) {
  auto name = location_namer(prep.program);
  Json outcomes = Json::array();
  for (const auto& o : r.trigger.outcomes) {
    Json j{{"slot", o.slot},
           {"location", name(o.loc)},
           {"offset", offset_name(o.offset)},
           {"original", o.original},
           {"target", o.target},
           {"status", status_name(o.status)}};
    if (o.value) j["value"] = *o.value;
    if (!o.reasons.empty()) {
      Json rs = Json::array();
      for (auto x : o.reasons) rs.push_back(reason_name(x));
      j["reasons"] = std::move(rs);
    }
    outcomes.push_back(std::move(j));
  }
  Json bindings = Json::array();
  for (const auto& b : r.trigger.delta) bindings.push_back({{"location", name(b.loc)}, {"id", b.loc.value}, {"value", b.value}});
  Json j{{"status", status_name(r.status)}};
  if (!r.message.empty()) j["message"] = r.message;
  j["bindings"] = std::move(bindings);
  j["outcomes"] = std::move(outcomes);
  j["highlight"] = highlight_json(r.highlight, name);
  j["classification"] = classification_json(r.classification);
  j["source"] = r.new_source;
  return j;
}

/// {bindings: [[locId, value]...], names, classification}
inline Json candidate_json(const Candidate& c, const Classification& cls, const LocNamer& name) {
  Json bindings = Json::array(), names = Json::array();
  for (const auto& b : c.delta) {
    bindings.push_back({b.loc.value, b.value});
    names.push_back(name(b.loc));
  }
  Json j{{"bindings", std::move(bindings)}, {"names", std::move(names)}, {"classification", class_name(cls.kind)}};
  if (!cls.diagnostic.empty()) j["diagnostic"] = cls.diagnostic;
  return j;
}

struct ActionRequest {
  Action action;
  std::optional<Heuristic> heuristic;
};

/// Accepts {shapeIndex|shape, zone, dx, dy, heuristic?, choose?}; `choose` is a
/// name or a list of names.
inline ActionRequest action_from_json(const Json& j) {
  if (!j.is_object()) throw RequestError("action must be a JSON object");
  ActionRequest r;
  if (j.contains("shapeIndex"))
    r.action.shape = j.at("shapeIndex").get<std::size_t>();
  else if (j.contains("shape"))
    r.action.shape = j.at("shape").get<std::size_t>();
  else
    throw RequestError("action needs shapeIndex");
  if (!j.contains("zone")) throw RequestError("action needs zone");
  r.action.zone = j.at("zone").get<std::string>();
  r.action.dx = j.value("dx", 0.0);
  r.action.dy = j.value("dy", 0.0);
  if (j.contains("heuristic")) {
    auto h = heuristic_from_name(j.at("heuristic").get<std::string>());
    if (!h) throw RequestError("heuristic must be fair, biased or none");
    r.heuristic = h;
  }
  if (j.contains("choose")) {
    const auto& c = j.at("choose");
    if (c.is_string())
      r.action.choose.push_back(c.get<std::string>());
    else
      r.action.choose = c.get<std::vector<std::string>>();
  }
  return r;
}

/// Hard equations addressed by output slot: [{shape, slot, value}].
inline UpdateRequest update_request_from_json(const Json& j, const std::vector<IndexedShape>& canvas,
                                              std::vector<ValuePath>& holes) {
  const Json& eqs = j.is_object() ? j.at("hard") : j;
  if (!eqs.is_array() || eqs.empty()) throw RequestError("expected a non-empty list of hard equations");
  UpdateRequest req;
  for (const auto& e : eqs) {
    const auto shape = e.at("shape").get<std::size_t>();
    const auto slot = e.at("slot").get<std::string>();
    if (shape >= canvas.size()) throw RequestError("no shape with index " + std::to_string(shape));
    const Slot* s = canvas[shape].slot(slot);
    if (!s) throw RequestError("shape " + std::to_string(shape) + " has no numeric slot '" + slot + "'");
    req.hard.push_back({e.at("value").get<double>(), s->trace});
    holes.push_back(s->path);
  }
  std::set<ValuePath> hard_paths(holes.begin(), holes.end());
  for (const auto& shape : canvas)
    for (const auto& s : shape.slots)
      if (!hard_paths.contains(s.path)) req.soft.push_back({s.value, s.trace});
  return req;
}

inline Json stats_json(const std::string& file, const ProgramStats& s, bool timing = true) {
  Json j{{"file", file},
         {"shapes", s.shapes},
         {"zones", s.zones},
         {"inactive", s.inactive},
         {"unambiguous", s.unambiguous},
         {"ambiguous", s.ambiguous},
         {"ambiguousMean", s.ambiguous_mean()},
         {"preEquations", s.pre_equations},
         {"outsideFragment", s.outside_fragment},
         {"insideFragment", s.inside_fragment},
         {"solvedD1", s.solved_d1},
         {"unsolvedD1", s.unsolved_d1},
         {"solvedD100", s.solved_d100},
         {"unsolvedD100", s.unsolved_d100}};
  if (timing)
    j["timingMs"] = {{"parse", s.parse_ms}, {"eval", s.eval_ms}, {"prepare", s.prepare_ms}, {"solve", s.solve_ms}};
  return j;
}

}  // namespace little
