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

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "little/assign.hpp"
#include "little/eval.hpp"
#include "little/prelude.hpp"
#include "little/synthesis.hpp"
#include "little/unparse.hpp"

namespace little {

enum class AttrStatus : std::uint8_t { Solved, Failed, Unchanged };

struct AttrOutcome {
  std::string slot;
  LocId loc;
  Offset offset;
  double original = 0;
  double target = 0;
  std::optional<double> value;  // solved location value
  AttrStatus status = AttrStatus::Unchanged;
  std::vector<FailReason> reasons;
};

struct TriggerResult {
  Substitution rho;  // rho followed by the solved bindings
  std::vector<Binding> delta;
  std::vector<AttrOutcome> outcomes;

  bool any_failed() const {
    for (const auto& o : outcomes)
      if (o.status == AttrStatus::Failed) return true;
    return false;
  }
};

/// Maps mouse offsets to a substitution for one (shape, zone) under a fixed
/// attribute assignment. Every attribute is solved against the original rho;
/// the results are appended in zone attribute order, so a location assigned to
/// two attributes ends up with the value solved last.
class Trigger {
 public:
  Trigger(Substitution rho, ZoneSpec zone, LocTuple theta, std::vector<Slot> slots)
      : rho_(std::move(rho)), zone_(std::move(zone)), theta_(std::move(theta)), slots_(std::move(slots)) {}

  TriggerResult operator()(double dx, double dy) const {
    TriggerResult out{rho_, {}, {}};
    for (std::size_t i = 0; i < zone_.attrs.size(); ++i) {
      const auto& za = zone_.attrs[i];
      const Slot& s = slots_[i];
      AttrOutcome o{za.slot, theta_[i], za.offset, s.value, apply_offset(za.offset, s.value, dx, dy), {}, {}, {}};
      const bool moved = (za.offset == Offset::PlusDx || za.offset == Offset::MinusDx) ? dx != 0 : dy != 0;
      if (!moved) {
        o.status = AttrStatus::Unchanged;
      } else if (auto r = solve(rho_, theta_[i], o.target, *s.trace)) {
        o.status = AttrStatus::Solved;
        o.value = *r.value;
        out.rho.push(theta_[i], *r.value);
        out.delta.push_back({theta_[i], *r.value});
      } else {
        o.status = AttrStatus::Failed;
        o.reasons = r.reasons;
      }
      out.outcomes.push_back(std::move(o));
    }
    return out;
  }

  const ZoneSpec& zone() const { return zone_; }
  const LocTuple& theta() const { return theta_; }

 private:
  Substitution rho_;
  ZoneSpec zone_;
  LocTuple theta_;
  std::vector<Slot> slots_;
};

inline Trigger compute_trigger(const Substitution& rho, const ZoneAssignment& za) {
  if (!za.chosen) throw std::invalid_argument("zone " + za.zone.name + " is Inactive");
  std::vector<Slot> slots;
  for (const Slot* s : za.candidates.slots) slots.push_back(*s);
  return Trigger(rho, za.zone, *za.chosen, std::move(slots));
}

// --- highlighting -----------------------------------------------------------

struct HighlightInfo {
  bool active = false;
  std::set<LocId> chosen;        // yellow before a drag
  std::set<LocId> contributing;  // gray: in the zone's traces but not chosen
  std::set<LocId> solved;        // green after a trigger
  std::set<LocId> failed;        // red after a trigger
};

inline HighlightInfo highlight_info(const ShapeAssignment& gamma, std::size_t shape, std::string_view zone,
                                    const TriggerResult* result = nullptr) {
  HighlightInfo h;
  const ZoneAssignment* za = gamma.find(shape, zone);
  if (!za || !za->chosen) return h;
  h.active = true;
  h.chosen.insert(za->chosen->begin(), za->chosen->end());
  for (const auto& locs : za->candidates.per_attr)
    for (auto l : locs)
      if (!h.chosen.contains(l)) h.contributing.insert(l);
  if (result) {
    for (const auto& o : result->outcomes) {
      if (o.status == AttrStatus::Solved) h.solved.insert(o.loc);
      if (o.status == AttrStatus::Failed) h.failed.insert(o.loc);
    }
  }
  return h;
}

// --- end-to-end action -------------------------------------------------------

struct SessionOptions {
  FreezePolicy freeze;
  AssignOptions assign;
  EvalOptions eval;
};

/// A program evaluated and prepared for direct manipulation.
struct Prepared {
  Program program;
  ValuePtr output;
  std::vector<IndexedShape> canvas;
  FrozenSet frozen;
  Substitution rho0;
  ShapeAssignment gamma;
};

inline Prepared prepare(Program program, const SessionOptions& opts) {
  Prepared p;
  p.output = eval_program(program, opts.eval);
  p.canvas = index_canvas(p.output);
  p.frozen = frozen_set(program, opts.freeze);
  p.rho0 = initial_substitution(program);
  p.program = std::move(program);
  p.gamma = assign_zones(p.canvas, p.frozen, opts.assign);
  return p;
}

struct Action {
  std::size_t shape = 0;
  std::string zone;
  double dx = 0;
  double dy = 0;
  std::vector<std::string> choose;  // alias or "l<id>" names that override the heuristic
};

enum class ActionStatus : std::uint8_t { Ok, Inactive, Unsolvable, EvalFailed };

struct ActionResult {
  ActionStatus status = ActionStatus::Ok;
  std::string message;
  std::string new_source;  // original source unless the update succeeded
  ValuePtr output;         // output of new_source
  LocTuple theta;
  TriggerResult trigger;
  HighlightInfo highlight;
  Classification classification;
};

namespace detail {

inline LocTuple apply_choice(const Program& program, const ZoneAssignment& za, const std::vector<std::string>& names) {
  std::vector<LocId> wanted;
  for (const auto& n : names) {
    auto l = resolve_location(program, n);
    if (!l) throw std::invalid_argument("unknown location name '" + n + "'");
    wanted.push_back(*l);
  }
  LocTuple t = *za.chosen;
  for (std::size_t i = 0; i < t.size(); ++i)
    for (auto l : wanted)
      if (std::binary_search(za.candidates.per_attr[i].begin(), za.candidates.per_attr[i].end(), l)) {
        t[i] = l;
        break;
      }
  return t;
}

}  // namespace detail

/// Solve for the drag, rewrite the program text and re-run it. The trigger is
/// built from the assignment computed before the drag.
inline ActionResult apply_action(const Prepared& prep, const Action& action, const SessionOptions& opts) {
  ActionResult out;
  out.new_source = prep.program.source;
  out.output = prep.output;
  if (action.shape >= prep.canvas.size()) {
    out.status = ActionStatus::Inactive;
    out.message = "no shape with index " + std::to_string(action.shape);
    return out;
  }
  const ZoneAssignment* za = prep.gamma.find(action.shape, action.zone);
  if (!za) {
    out.status = ActionStatus::Inactive;
    out.message = "shape " + std::to_string(action.shape) + " (" + prep.canvas[action.shape].kind + ") has no zone '" +
                  action.zone + "'";
    return out;
  }
  if (!za->chosen) {
    out.status = ActionStatus::Inactive;
    out.message = "zone " + action.zone + " is Inactive: " + za->candidates.inactive_reason;
    return out;
  }
  ZoneAssignment chosen = *za;
  if (!action.choose.empty()) chosen.chosen = detail::apply_choice(prep.program, *za, action.choose);
  out.theta = *chosen.chosen;

  Trigger trig = compute_trigger(prep.rho0, chosen);
  out.trigger = trig(action.dx, action.dy);
  ShapeAssignment one;
  one.zones.push_back(chosen);
  out.highlight = highlight_info(one, action.shape, action.zone, &out.trigger);

  bool any_moved = false, any_solved = false;
  for (const auto& o : out.trigger.outcomes) {
    any_moved = any_moved || o.status != AttrStatus::Unchanged;
    any_solved = any_solved || o.status == AttrStatus::Solved;
  }
  if (any_moved && !any_solved) {
    out.status = ActionStatus::Unsolvable;
    out.message = "no attribute of zone " + action.zone + " could be solved";
    return out;
  }
  if (out.trigger.delta.empty()) {
    out.classification.kind = UpdateClass::Faithful;
    return out;
  }

  Substitution delta;
  for (const auto& b : out.trigger.delta) delta.push(b.loc, b.value);
  std::string text = rewrite_literals(prep.program, delta);
  try {
    Program updated = parse_program(text, rewrite_prelude_literals(prep.program, delta));
    ValuePtr v = eval_program(updated, opts.eval);
    index_canvas(v);
    out.output = std::move(v);
  } catch (const std::exception& e) {
    out.status = ActionStatus::EvalFailed;
    out.message = std::string("updated program failed: ") + e.what();
    return out;
  }
  out.new_source = std::move(text);

  UpdateRequest req;
  std::vector<ValuePath> holes;
  const auto& shape = prep.canvas[action.shape];
  for (const auto& o : out.trigger.outcomes) {
    if (o.status == AttrStatus::Unchanged) continue;
    const Slot* s = shape.slot(o.slot);
    req.hard.push_back({o.target, s->trace});
    holes.push_back(s->path);
  }
  out.classification = classify_update(prep.program, req, holes, out.trigger.rho, opts.eval);
  return out;
}

}  // namespace little
