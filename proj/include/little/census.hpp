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

#include <chrono>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "little/trigger.hpp"

namespace little {

/// Zone and pre-equation statistics for one program.
struct ProgramStats {
  std::size_t shapes = 0;
  std::size_t zones = 0;
  std::size_t inactive = 0;
  std::size_t unambiguous = 0;
  std::size_t ambiguous = 0;
  std::size_t ambiguous_candidates = 0;  // sum of candidate counts over ambiguous zones

  std::size_t pre_equation_tuples = 0;  // before de-duplication
  std::size_t pre_equations = 0;
  std::size_t outside_fragment = 0;
  std::size_t inside_fragment = 0;
  std::size_t unsolved_d1 = 0;
  std::size_t solved_d1 = 0;
  std::size_t unsolved_d100 = 0;  // among those solved for d=1
  std::size_t solved_d100 = 0;

  double parse_ms = 0;
  double eval_ms = 0;
  double prepare_ms = 0;
  double solve_ms = 0;  // total over every solve call

  double ambiguous_mean() const {
    return ambiguous == 0 ? 0 : static_cast<double>(ambiguous_candidates) / static_cast<double>(ambiguous);
  }

  ProgramStats& operator+=(const ProgramStats& o) {
    shapes += o.shapes;
    zones += o.zones;
    inactive += o.inactive;
    unambiguous += o.unambiguous;
    ambiguous += o.ambiguous;
    ambiguous_candidates += o.ambiguous_candidates;
    pre_equation_tuples += o.pre_equation_tuples;
    pre_equations += o.pre_equations;
    outside_fragment += o.outside_fragment;
    inside_fragment += o.inside_fragment;
    unsolved_d1 += o.unsolved_d1;
    solved_d1 += o.solved_d1;
    unsolved_d100 += o.unsolved_d100;
    solved_d100 += o.solved_d100;
    parse_ms += o.parse_ms;
    eval_ms += o.eval_ms;
    prepare_ms += o.prepare_ms;
    solve_ms += o.solve_ms;
    return *this;
  }
};

namespace detail {

inline double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace detail

/// Census of a prepared program. Pre-equations are (l, n, t) for every
/// attribute of every active zone and every unfrozen l in its trace, kept once
/// per (l, t). Solvability at d=100 is only tested for those solved at d=1.
inline ProgramStats census(const Prepared& prep) {
  ProgramStats st;
  st.shapes = prep.canvas.size();
  std::set<std::pair<std::uint32_t, std::string>> seen;
  for (const auto& za : prep.gamma.zones) {
    ++st.zones;
    if (!za.chosen) {
      ++st.inactive;
      continue;
    }
    if (za.candidates.count == 1) {
      ++st.unambiguous;
    } else {
      ++st.ambiguous;
      st.ambiguous_candidates += za.candidates.count;
    }
    for (std::size_t i = 0; i < za.candidates.slots.size(); ++i) {
      const Slot& s = *za.candidates.slots[i];
      for (auto l : za.candidates.per_attr[i]) {
        ++st.pre_equation_tuples;
        if (!seen.insert({l.value, to_sexpr(*s.trace)}).second) continue;
        ++st.pre_equations;
        if (!in_fragment(l, *s.trace)) {
          ++st.outside_fragment;
          continue;
        }
        ++st.inside_fragment;
        auto t0 = std::chrono::steady_clock::now();
        const bool d1 = solve(prep.rho0, l, s.value + 1, *s.trace).value.has_value();
        const bool d100 = d1 && solve(prep.rho0, l, s.value + 100, *s.trace).value.has_value();
        st.solve_ms += detail::ms_since(t0);
        if (!d1) {
          ++st.unsolved_d1;
          continue;
        }
        ++st.solved_d1;
        ++(d100 ? st.solved_d100 : st.unsolved_d100);
      }
    }
  }
  return st;
}

/// Parses, evaluates and prepares `source`, timing each phase.
inline ProgramStats census_source(const std::string& source, const std::string& prelude_source,
                                  const SessionOptions& opts = {}) {
  auto t0 = std::chrono::steady_clock::now();
  Program p = parse_program(source, prelude_source);
  const double parse_ms = detail::ms_since(t0);

  t0 = std::chrono::steady_clock::now();
  eval_program(p, opts.eval);
  const double eval_ms = detail::ms_since(t0);

  t0 = std::chrono::steady_clock::now();
  Prepared prep = prepare(std::move(p), opts);
  const double prepare_ms = detail::ms_since(t0);

  ProgramStats st = census(prep);
  st.parse_ms = parse_ms;
  st.eval_ms = eval_ms;
  st.prepare_ms = prepare_ms;
  return st;
}

}  // namespace little
