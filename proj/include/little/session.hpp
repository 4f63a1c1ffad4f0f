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
#include <string>
#include <utility>
#include <vector>

#include "little/json.hpp"
#include "little/prelude.hpp"

namespace little {

inline SessionOptions session_options_from_json(const Json& j, SessionOptions base = {}) {
  if (!j.is_object()) throw RequestError("options must be a JSON object");
  if (j.contains("heuristic")) {
    auto h = heuristic_from_name(j.at("heuristic").get<std::string>());
    if (!h) throw RequestError("heuristic must be fair, biased or none");
    base.assign.heuristic = *h;
  }
  base.assign.avoid_unsolvable = j.value("avoidUnsolvable", base.assign.avoid_unsolvable);
  base.freeze.freeze_default = j.value("freezeDefault", base.freeze.freeze_default);
  base.freeze.freeze_prelude = j.value("freezePrelude", base.freeze.freeze_prelude);
  return base;
}

/// Server side of the editor boundary. One message in, one response out:
///
///   parse    {source, options?}  load a program; clears the undo history
///   run      {}                  SVG and indexed canvas of the current program
///   prepare  {}                  zones, assignments and captions
///   trigger  {action}            preview a drag without changing state
///   commit   {action}            apply a drag, record history, re-prepare
///   undo     {}                  restore the previous program text
///
/// Every response carries {type, ok}; failures add {error}. A single writer is
/// assumed; callers serialize messages.
class Session {
 public:
  explicit Session(std::string prelude_source = std::string(kPrelude), SessionOptions opts = {})
      : prelude_(std::move(prelude_source)), opts_(opts) {}

  Json handle(const Json& msg) {
    std::string type = msg.is_object() && msg.contains("type") && msg["type"].is_string() ? msg["type"].get<std::string>() : "";
    Json out{{"type", type}, {"ok", true}};
    try {
      if (type == "parse")
        on_parse(msg, out);
      else if (type == "run")
        on_run(out);
      else if (type == "prepare")
        on_prepare(out);
      else if (type == "trigger")
        on_action(msg, out, false);
      else if (type == "commit")
        on_action(msg, out, true);
      else if (type == "undo")
        on_undo(out);
      else
        throw RequestError("unknown message type '" + type + "'");
    } catch (const std::exception& e) {
      Json err{{"type", type}, {"ok", false}, {"error", error_json(e)}};
      return err;
    }
    return out;
  }

  const std::string& source() const { return source_; }
  std::size_t history_size() const { return history_.size(); }
  const SessionOptions& options() const { return opts_; }

 private:
  void load(const std::string& source) {
    Program p = parse_program(source, prelude_);
    source_ = source;
    program_ = std::move(p);
    prepared_.reset();
  }

  const Program& program() const {
    if (!program_) throw RequestError("no program loaded; send parse first");
    return *program_;
  }

  const Prepared& prepared() {
    if (!prepared_) prepared_ = prepare(program(), opts_);
    return *prepared_;
  }

  void on_parse(const Json& msg, Json& out) {
    if (!msg.contains("source") || !msg["source"].is_string()) throw RequestError("parse needs a source string");
    if (msg.contains("options")) opts_ = session_options_from_json(msg["options"], opts_);
    load(msg["source"].get<std::string>());
    history_.clear();
    out["source"] = source_;
    out["locations"] = locations_json(*program_, frozen_set(*program_, opts_.freeze));
  }

  void on_run(Json& out) {
    ValuePtr v = prepared_ ? prepared_->output : eval_program(program(), opts_.eval);
    auto canvas = index_canvas(v);
    out["svg"] = to_svg_xml(v);
    out["canvas"] = canvas_json(canvas, location_namer(program()));
  }

  void on_prepare(Json& out) {
    const Prepared& p = prepared();
    out["svg"] = to_svg_xml(p.output);
    out["canvas"] = canvas_json(p.canvas, location_namer(p.program));
    out["zones"] = zones_json(p);
    out["heuristic"] = heuristic_name(opts_.assign.heuristic);
  }

  void on_action(const Json& msg, Json& out, bool commit) {
    if (!msg.contains("action")) throw RequestError("message needs an action");
    ActionRequest req = action_from_json(msg["action"]);
    SessionOptions opts = opts_;
    if (req.heuristic) opts.assign.heuristic = *req.heuristic;
    std::optional<Prepared> local;
    const Prepared* prep = nullptr;
    if (opts.assign.heuristic == opts_.assign.heuristic) {
      prep = &prepared();
    } else {
      local = prepare(program(), opts);
      prep = &*local;
    }
    ActionResult r = apply_action(*prep, req.action, opts);
    out["result"] = action_json(*prep, r);
    if (r.status == ActionStatus::Ok) out["svg"] = to_svg_xml(r.output);
    if (!commit) return;
    const bool changed = r.status == ActionStatus::Ok && r.new_source != source_;
    out["committed"] = changed;
    if (changed) {
      history_.push_back(source_);
      load(r.new_source);
      on_prepare(out);
    }
    out["source"] = source_;
  }

  void on_undo(Json& out) {
    out["undone"] = !history_.empty();
    if (!history_.empty()) {
      load(history_.back());
      history_.pop_back();
    }
    out["source"] = source_;
  }

  std::string prelude_;
  SessionOptions opts_;
  std::string source_;
  std::optional<Program> program_;
  std::optional<Prepared> prepared_;
  std::vector<std::string> history_;
};

}  // namespace little
