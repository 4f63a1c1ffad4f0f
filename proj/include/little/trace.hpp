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

#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "little/common.hpp"
#include "little/ops.hpp"
#include "little/substitution.hpp"

namespace little {

class Trace;
using TracePtr = std::shared_ptr<const Trace>;

/// Data-flow history of a run-time number: either the location of the literal
/// it came from, or a primitive operator applied to argument traces.
class Trace {
 public:
  static TracePtr leaf(LocId loc) { return TracePtr(new Trace(loc)); }
  static TracePtr apply(Op op, std::vector<TracePtr> args) { return TracePtr(new Trace(op, std::move(args))); }

  bool is_loc() const { return is_loc_; }
  LocId loc() const { return loc_; }
  Op op() const { return op_; }
  const std::vector<TracePtr>& args() const { return args_; }

 private:
  explicit Trace(LocId loc) : is_loc_(true), loc_(loc) {}
  Trace(Op op, std::vector<TracePtr> args) : op_(op), args_(std::move(args)) {}

  bool is_loc_ = false;
  LocId loc_{};
  Op op_ = Op::Plus;
  std::vector<TracePtr> args_;
};

// Convenience builders, mostly for tests.
inline TracePtr tloc(std::uint32_t id) { return Trace::leaf(LocId{id}); }
inline TracePtr top(Op op, std::vector<TracePtr> args) { return Trace::apply(op, std::move(args)); }

inline bool trace_equal(const Trace& a, const Trace& b) {
  if (&a == &b) return true;
  if (a.is_loc() != b.is_loc()) return false;
  if (a.is_loc()) return a.loc() == b.loc();
  if (a.op() != b.op() || a.args().size() != b.args().size()) return false;
  for (std::size_t i = 0; i < a.args().size(); ++i)
    if (!trace_equal(*a.args()[i], *b.args()[i])) return false;
  return true;
}

using LocNamer = std::function<std::string(LocId)>;

inline std::string default_loc_name(LocId l) { return "l" + std::to_string(l.value); }

/// Prefix s-expression, e.g. "(+ l3 (* l1 l7))". Locations print via `namer`.
inline std::string to_sexpr(const Trace& t, const LocNamer& namer = default_loc_name) {
  if (t.is_loc()) return namer(t.loc());
  std::string s = "(";
  s += op_name(t.op());
  for (const auto& a : t.args()) {
    s += ' ';
    s += to_sexpr(*a, namer);
  }
  return s + ")";
}

inline std::size_t occurrences(const Trace& t, LocId loc) {
  if (t.is_loc()) return t.loc() == loc ? 1 : 0;
  std::size_t n = 0;
  for (const auto& a : t.args()) n += occurrences(*a, loc);
  return n;
}

inline void for_each_leaf(const Trace& t, const std::function<void(LocId)>& f) {
  if (t.is_loc()) {
    f(t.loc());
    return;
  }
  for (const auto& a : t.args()) for_each_leaf(*a, f);
}

/// Non-frozen locations appearing in a trace, ascending.
inline std::set<LocId> locs_of(const Trace& t, const FrozenSet& frozen) {
  std::set<LocId> out;
  for_each_leaf(t, [&](LocId l) {
    if (!frozen.contains(l)) out.insert(l);
  });
  return out;
}

class TraceEvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnboundLocationError : public TraceEvalError {
 public:
  using TraceEvalError::TraceEvalError;
};

namespace detail {

inline double eval_trace_raw(const Substitution& rho, const Trace& t) {
  if (t.is_loc()) {
    auto v = rho.lookup(t.loc());
    if (!v) throw UnboundLocationError("unbound location " + default_loc_name(t.loc()));
    return *v;
  }
  if (!op_info(t.op()).numeric) throw TraceEvalError("non-numeric operator in trace: " + std::string(op_name(t.op())));
  double args[2] = {0, 0};
  for (std::size_t i = 0; i < t.args().size() && i < 2; ++i) args[i] = eval_trace_raw(rho, *t.args()[i]);
  return apply_numeric_op(t.op(), std::span<const double>(args, t.args().size()));
}

}  // namespace detail

/// Interprets a trace under a location environment with the evaluator's float
/// operations. Throws TraceEvalError on an unbound location, a non-numeric
/// operator, or a non-finite result (intermediate infinities are allowed, as
/// they are during evaluation).
inline double eval_trace(const Substitution& rho, const Trace& t) {
  const double r = detail::eval_trace_raw(rho, t);
  if (!std::isfinite(r)) throw TraceEvalError("domain error evaluating " + to_sexpr(t));
  return r;
}

inline std::optional<double> try_eval_trace(const Substitution& rho, const Trace& t) {
  try {
    return eval_trace(rho, t);
  } catch (const TraceEvalError&) {
    return std::nullopt;
  }
}

}  // namespace little
