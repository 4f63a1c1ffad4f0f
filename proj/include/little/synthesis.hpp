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

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "little/eval.hpp"
#include "little/solver.hpp"
#include "little/unparse.hpp"
#include "little/value.hpp"

namespace little {

// --- value contexts ---------------------------------------------------------

/// A value whose numbers at `holes` are placeholders.
struct ValueContext {
  ValuePtr value;
  std::vector<ValuePath> holes;
};

namespace detail {

inline int hole_index(const std::vector<ValuePath>& holes, const ValuePath& p) {
  for (std::size_t i = 0; i < holes.size(); ++i)
    if (holes[i] == p) return static_cast<int>(i);
  return -1;
}

inline bool hole_below(const std::vector<ValuePath>& holes, const ValuePath& p) {
  for (const auto& h : holes)
    if (h.size() > p.size() && std::equal(p.begin(), p.end(), h.begin())) return true;
  return false;
}

inline bool similar_rec(const ValuePtr& a, const std::vector<ValuePath>& ha, const ValuePtr& b,
                        const std::vector<ValuePath>& hb, ValuePath& path) {
  const int ia = hole_index(ha, path);
  const int ib = hole_index(hb, path);
  if (ia >= 0 || ib >= 0) return ia == ib;
  if (a == b && !hole_below(ha, path) && !hole_below(hb, path)) return true;
  if (a->node.index() != b->node.index()) return false;
  if (const auto* x = a->as<Value::Num>()) return trace_equal(*x->trace, *b->as<Value::Num>()->trace);
  if (const auto* x = a->as<Value::Str>()) return x->s == b->as<Value::Str>()->s;
  if (const auto* x = a->as<Value::Bool>()) return x->b == b->as<Value::Bool>()->b;
  if (a->is<Value::Nil>()) return true;
  if (const auto* x = a->as<Value::Cons>()) {
    const auto* y = b->as<Value::Cons>();
    path.push_back(Step::Head);
    bool ok = similar_rec(x->head, ha, y->head, hb, path);
    path.back() = Step::Tail;
    ok = ok && similar_rec(x->tail, ha, y->tail, hb, path);
    path.pop_back();
    return ok;
  }
  if (const auto* x = a->as<Value::Closure>()) return x->fun_id == b->as<Value::Closure>()->fun_id;
  const auto* x = a->as<Value::PrimFn>();
  const auto* y = b->as<Value::PrimFn>();
  if (x->op != y->op || x->args.size() != y->args.size()) return false;
  for (std::size_t i = 0; i < x->args.size(); ++i) {
    ValuePath none;
    if (!similar_rec(x->args[i], {}, y->args[i], {}, none)) return false;
  }
  return true;
}

}  // namespace detail

/// Structural equality up to numbers: numbers are similar when their traces
/// are equal, holes only match the hole with the same index.
inline bool value_context_similar(const ValueContext& a, const ValueContext& b) {
  ValuePath path;
  return detail::similar_rec(a.value, a.holes, b.value, b.holes, path);
}

inline bool values_similar(const ValuePtr& a, const ValuePtr& b) { return value_context_similar({a, {}}, {b, {}}); }

// --- update requests --------------------------------------------------------

struct Equation {
  double value = 0;  // target (hard) or original value (soft)
  TracePtr trace;
};

/// j hard constraints (user-updated numbers) and k-j soft ones (the rest).
struct UpdateRequest {
  std::vector<Equation> hard;
  std::vector<Equation> soft;
};

struct InferOptions {
  bool disjoint = false;  // L_i minus every other L_j
  std::size_t max_tuples = 10000;
};

struct Candidate {
  Substitution rho;            // rho0 followed by the new bindings
  std::vector<Binding> delta;  // the new bindings, in equation order
};

struct InferResult {
  std::vector<Candidate> candidates;
  bool truncated = false;
  std::size_t tuples = 0;  // size of the full product, before the cap
};

/// Candidate local updates: one solved location per hard equation, each solved
/// against rho0. Tuples are enumerated in ascending location-id order; updates
/// with the same effective bindings are reported once.
inline InferResult infer_local_updates(const Substitution& rho0, const UpdateRequest& req, const FrozenSet& frozen,
                                       const InferOptions& opts = {}) {
  InferResult out;
  const std::size_t m = req.hard.size();
  if (m == 0) return out;
  std::vector<std::vector<LocId>> sets(m);
  for (std::size_t i = 0; i < m; ++i) {
    auto s = locs_of(*req.hard[i].trace, frozen);
    sets[i].assign(s.begin(), s.end());
  }
  if (opts.disjoint) {
    std::vector<std::vector<LocId>> reduced(m);
    for (std::size_t i = 0; i < m; ++i)
      for (auto l : sets[i]) {
        bool shared = false;
        for (std::size_t j = 0; j < m && !shared; ++j)
          if (j != i) shared = std::binary_search(sets[j].begin(), sets[j].end(), l);
        if (!shared) reduced[i].push_back(l);
      }
    sets = std::move(reduced);
  }
  double total = 1;
  for (const auto& s : sets) total *= static_cast<double>(s.size());
  if (total == 0) return out;
  out.tuples = total > 1e18 ? static_cast<std::size_t>(-1) : static_cast<std::size_t>(total);

  // Each equation is solved independently against rho0.
  std::vector<std::vector<std::optional<double>>> solved(m);
  for (std::size_t i = 0; i < m; ++i)
    for (auto l : sets[i]) solved[i].push_back(solve(rho0, l, req.hard[i].value, *req.hard[i].trace).value);

  std::set<std::vector<std::pair<std::uint32_t, double>>> seen;
  std::vector<std::size_t> idx(m, 0);
  std::size_t visited = 0;
  for (;;) {
    if (visited == opts.max_tuples) {
      out.truncated = true;
      break;
    }
    ++visited;
    bool ok = true;
    for (std::size_t i = 0; i < m && ok; ++i) ok = solved[i][idx[i]].has_value();
    if (ok) {
      Candidate c;
      c.rho = rho0;
      std::map<std::uint32_t, double> effective;
      for (std::size_t i = 0; i < m; ++i) {
        const LocId l = sets[i][idx[i]];
        const double k = *solved[i][idx[i]];
        c.rho.push(l, k);
        c.delta.push_back({l, k});
        effective[l.value] = k;
      }
      if (seen.insert({effective.begin(), effective.end()}).second) out.candidates.push_back(std::move(c));
    }
    std::size_t i = m;
    while (i > 0) {
      --i;
      if (++idx[i] < sets[i].size()) break;
      idx[i] = 0;
      if (i == 0) return out;
    }
  }
  return out;
}

// --- classification ---------------------------------------------------------

enum class UpdateClass : std::uint8_t { Faithful, FaithfulVacuous, Plausible, Neither };

inline const char* class_name(UpdateClass c) {
  switch (c) {
    case UpdateClass::Faithful: return "Faithful";
    case UpdateClass::FaithfulVacuous: return "FaithfulVacuous";
    case UpdateClass::Plausible: return "Plausible";
    case UpdateClass::Neither: return "Neither";
  }
  return "?";
}

struct Classification {
  UpdateClass kind = UpdateClass::Neither;
  std::size_t hits = 0;  // hard constraints met
  std::string diagnostic;
};

inline bool hits_target(double actual, double target) {
  return std::abs(actual - target) <= 1e-9 * std::max(1.0, std::abs(target));
}

/// Re-evaluates the program under rho and compares the output at `holes`
/// (hard constraints first, then soft) against the request. An output whose
/// shape or traces changed makes the update vacuously faithful.
inline Classification classify_update(const Program& program, const UpdateRequest& req,
                                      const std::vector<ValuePath>& holes, const Substitution& rho,
                                      EvalOptions opts = {}) {
  Classification out;
  ValuePtr before, after;
  try {
    before = eval_program(program, opts);
    after = eval_program(substitute_ast(rho, program), opts);
  } catch (const LittleError& e) {
    out.diagnostic = e.what();
    return out;
  }
  for (const auto& h : holes) {
    auto v = value_at(after, h);
    if (!v || !v->is<Value::Num>()) {
      out.kind = UpdateClass::FaithfulVacuous;
      out.diagnostic = "output no longer has a number at " + path_str(h);
      return out;
    }
  }
  if (!value_context_similar({before, holes}, {after, holes})) {
    out.kind = UpdateClass::FaithfulVacuous;
    out.diagnostic = "output is not structurally similar to the original";
    return out;
  }
  for (std::size_t i = 0; i < req.hard.size() && i < holes.size(); ++i)
    if (hits_target(value_at(after, holes[i])->as<Value::Num>()->n, req.hard[i].value)) ++out.hits;
  if (out.hits == req.hard.size())
    out.kind = UpdateClass::Faithful;
  else if (out.hits > 0)
    out.kind = UpdateClass::Plausible;
  return out;
}

}  // namespace little
