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

// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>

#include "hygiene.hpp"
#include "oracle.hpp"
#include "test_util.hpp"

namespace little {
namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) { return std::chrono::duration<double, std::milli>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    if (pass) detail.str("");
    if (!pass) detail << "; ";
    pass = false;
    detail << what;
  }
};

using Check = std::function<void(Outcome&)>;

std::string fmt(double v) { return format_number(v); }

struct SineWave {
  Program p = testing::load("sineWaveOfBoxes.little");
  LocId x0 = testing::loc(p, "x0"), y0 = testing::loc(p, "y0"), sep = testing::loc(p, "sep"),
        amp = testing::loc(p, "amp");
  LocId l0 = testing::prelude_literals(p, "zeroTo")[0].loc.id;
  LocId l1 = testing::prelude_literals(p, "range")[0].loc.id;
};

std::map<LocId, double> candidate_values(const Program& p, const FrozenSet& frozen, double target) {
  auto canvas = index_canvas(eval_program(p));
  UpdateRequest req;
  req.hard.push_back({target, canvas.at(2).slot("x")->trace});
  std::map<LocId, double> out;
  for (const auto& c : infer_local_updates(initial_substitution(p), req, frozen).candidates) {
    if (c.delta.size() != 1) return {};
    out[c.delta[0].loc] = c.delta[0].value;
  }
  return out;
}

bool same_values(const std::map<LocId, double>& got, const std::map<LocId, double>& want) {
  if (got.size() != want.size()) return false;
  for (const auto& [l, v] : want) {
    auto it = got.find(l);
    if (it == got.end() || std::abs(it->second - v) > 1e-9) return false;
  }
  return true;
}

std::string show_values(const Program& p, const std::map<LocId, double>& m) {
  auto name = location_namer(p);
  std::string s = "{";
  for (const auto& [l, v] : m) s += (s.size() > 1 ? ", " : "") + name(l) + "=" + fmt(v);
  return s + "}";
}

void four_candidates(Outcome& o) {
  const auto t0 = Clock::now();
  SineWave s;
  auto thawed = candidate_values(s.p, frozen_set(s.p, {false, false}), 155);
  auto frozen = candidate_values(s.p, frozen_set(s.p), 155);
  const double ms = ms_since(t0);
  o.require(same_values(thawed, {{s.x0, 95}, {s.sep, 52.5}, {s.l0, 1.5}, {s.l1, 1.75}}),
            "prelude unfrozen gave " + show_values(s.p, thawed));
  o.require(same_values(frozen, {{s.x0, 95}, {s.sep, 52.5}}), "prelude frozen gave " + show_values(s.p, frozen));
  o.require(ms < 1000, "took " + fmt(ms) + "ms");
  if (o.pass) o.detail << show_values(s.p, thawed) << " / " << show_values(s.p, frozen) << " in " << fmt(std::round(ms * 10) / 10) << "ms";
}

void trace_reproduction(Outcome& o) {
  SineWave s;
  auto canvas = index_canvas(eval_program(s.p));
  const double want[] = {50, 80, 110};
  for (int i = 0; i < 3; ++i) {
    TracePtr k = Trace::leaf(s.l0);
    for (int j = 0; j < i; ++j) k = top(Op::Plus, {Trace::leaf(s.l1), k});
    TracePtr expected = top(Op::Plus, {Trace::leaf(s.x0), top(Op::Mult, {k, Trace::leaf(s.sep)})});
    const Slot* x = canvas.at(i).slot("x");
    o.require(x && x->value == want[i], "box " + std::to_string(i + 1) + " x = " + (x ? fmt(x->value) : "missing"));
    o.require(x && trace_equal(*x->trace, *expected),
              "box " + std::to_string(i + 1) + " trace " + (x ? to_sexpr(*x->trace) : ""));
  }
  if (o.pass) o.detail << "x = 50, 80, 110; box 3 trace " << to_sexpr(*canvas[2].slot("x")->trace, location_namer(s.p));
}

void fair_rotation(Outcome& o) {
  SineWave s;
  Prepared prep = prepare(s.p, {});
  const std::vector<LocTuple> theta = {{s.x0, s.y0}, {s.x0, s.amp}, {s.sep, s.y0}, {s.sep, s.amp}};
  for (std::size_t i = 0; i < 12; ++i) {
    const ZoneAssignment* za = prep.gamma.find(i, "Interior");
    o.require(za && za->chosen && *za->chosen == theta[i % 4], "box " + std::to_string(i) + " off rotation");
  }
  if (o.pass) o.detail << "12 boxes cycle {x0,y0} {x0,amp} {sep,y0} {sep,amp}";
}

void biased_heuristic(Outcome& o) {
  Program p = testing::load("sineWaveBiased.little");
  SessionOptions opts;
  opts.assign.heuristic = Heuristic::Biased;
  Prepared prep = prepare(p, opts);
  const LocId a = testing::loc(p, "a"), b = testing::loc(p, "b");
  std::size_t interiors = 0;
  for (const auto& za : prep.gamma.zones) {
    if (za.zone.name != "Interior") continue;
    ++interiors;
    o.require(za.chosen.has_value(), "box " + std::to_string(za.shape) + " Interior inactive");
    if (!za.chosen) continue;
    for (auto l : *za.chosen)
      o.require(l != a && l != b, "box " + std::to_string(za.shape) + " assigned a or b");
  }
  o.require(interiors == 12, std::to_string(interiors) + " Interior zones");
  if (o.pass) o.detail << "12 Interior zones, none use a or b";
}

void solver_oracle(Outcome& o) {
  using namespace oracle;
  const auto t0 = Clock::now();
  EquationGen gen(20261019);
  const Shape shapes[] = {Shape::AdditionOnly, Shape::SingleOccurrence, Shape::Mixed};
  int solved = 0, domain = 0, bad = 0;
  double worst = 0;
  for (int i = 0; i < 3000; ++i) {
    const RandomEquation eq = gen.make(shapes[i % 3]);
    auto env = eq.env;
    env.erase(kX);
    auto r = solve(to_rho(env), kX, eq.target, *eq.trace);
    if (!r) {
      if (!in_fragment(kX, *eq.trace) || !r.failed_with(FailReason::DomainError)) ++bad;
      ++domain;
      continue;
    }
    env[kX] = *r.value;
    const double err = rel_err(forward(env, *eq.trace), eq.target);
    worst = std::max(worst, err);
    if (err > 1e-6) ++bad;
    ++solved;
  }
  o.require(solved >= 1000, std::to_string(solved) + " equations solved");
  o.require(bad == 0, std::to_string(bad) + " equations off target or failing for structural reasons");

  int agree = 0, disagree = 0;
  EquationGen inter(7);
  for (int i = 0; i < 1000; ++i) {
    RandomEquation eq = inter.make(Shape::AdditionOnly);
    if (occurrences(*eq.trace, kX) != 1) continue;
    auto env = eq.env;
    env.erase(kX);
    auto a = solve_a(to_rho(env), kX, eq.target, *eq.trace);
    auto b = solve_b(to_rho(env), kX, eq.target, *eq.trace);
    if (a && b && rel_err(*a.value, *b.value) <= 1e-9)
      ++agree;
    else
      ++disagree;
  }
  o.require(disagree == 0 && agree > 0, std::to_string(disagree) + " solveA/solveB disagreements");

  SineWave s;
  auto canvas = index_canvas(eval_program(s.p));
  auto zero = solve(initial_substitution(s.p), s.sep, 80, *canvas[0].slot("x")->trace);
  o.require(!zero && zero.failed_with(FailReason::DomainError), "*(0, sep) did not fail with DomainError");

  const double ms = ms_since(t0);
  o.require(ms < 10000, "took " + fmt(ms) + "ms");
  if (o.pass)
    o.detail << solved << " solved (" << domain << " domain errors), worst rel err " << worst << ", " << agree
             << " A/B agreements, " << fmt(std::round(ms)) << "ms";
}

void plausible_drag(Outcome& o) {
  Program p = testing::load("xyRect.little");
  Prepared prep = prepare(p, {});
  ActionResult r = apply_action(prep, {0, "Interior", 30, 10, {}}, {});
  o.require(r.status == ActionStatus::Ok, "action status " + std::string(status_name(r.status)) + ": " + r.message);
  if (!o.pass) return;
  auto canvas = index_canvas(eval_program(parse_program(r.new_source, kPrelude)));
  const double x = canvas[0].slot("x")->value, y = canvas[0].slot("y")->value;
  o.require(x == 130 || y == 110, "neither x nor y hit: x=" + fmt(x) + " y=" + fmt(y));
  o.require(r.classification.kind == UpdateClass::Plausible,
            std::string("classified ") + class_name(r.classification.kind));
  if (o.pass) o.detail << "x=" << fmt(x) << " y=" << fmt(y) << ", Plausible with " << r.classification.hits << " hit";
}

void census_row(Outcome& o) {
  ProgramStats s = census_source(testing::read_corpus("sineWaveOfBoxes.little"), std::string(kPrelude), {});
  o.require(s.shapes == 12, std::to_string(s.shapes) + " shapes");
  o.require(s.zones == 108, std::to_string(s.zones) + " zones");
  o.require(s.inactive == 0, std::to_string(s.inactive) + " inactive");
  o.require(s.unambiguous == 36, std::to_string(s.unambiguous) + " unambiguous");
  o.require(s.ambiguous == 72, std::to_string(s.ambiguous) + " ambiguous");
  o.require(std::abs(s.ambiguous_mean() - 2.67) < 0.005, "mean " + fmt(s.ambiguous_mean()));
  if (o.pass) o.detail << "12 shapes, 108 zones, 0 inactive, 36 unambiguous, 72 ambiguous (mean " << std::round(s.ambiguous_mean() * 100) / 100 << ")";
}

void performance(Outcome& o) {
  const std::string source = testing::read_corpus("sineWaveOfBoxes.little");
  const auto t0 = Clock::now();
  Program p = parse_program(source, kPrelude);
  const double parse_ms = ms_since(t0);
  const auto t1 = Clock::now();
  Prepared prep = prepare(std::move(p), {});
  const double prepare_ms = ms_since(t1);
  const double total = parse_ms + prepare_ms;
  o.require(total < 250, "parse+eval+prepare took " + fmt(total) + "ms");

  std::size_t calls = 0;
  double solve_ms = 0;
  for (const auto& za : prep.gamma.zones) {
    if (!za.chosen) continue;
    for (std::size_t i = 0; i < za.chosen->size(); ++i) {
      const Slot* slot = za.candidates.slots[i];
      const auto ts = Clock::now();
      (void)solve(prep.rho0, (*za.chosen)[i], slot->value + 10, *slot->trace);
      solve_ms += ms_since(ts);
      ++calls;
    }
  }
  const double mean = calls ? solve_ms / static_cast<double>(calls) : 0;
  o.require(calls > 0 && mean < 1, "solve mean " + fmt(mean) + "ms over " + std::to_string(calls) + " calls");
  if (o.pass)
    o.detail << "parse " << std::round(parse_ms * 100) / 100 << "ms + eval/prepare " << std::round(prepare_ms * 100) / 100
             << "ms; solve mean " << mean * 1000 << "us over " << calls << " calls";
}

void svg_hygiene(Outcome& o) {
  std::size_t files = 0;
  for (const auto& name : testing::corpus_files()) {
    const std::string problem = hygiene::check(eval_program(testing::load(name)));
    o.require(problem.empty(), name + ": " + problem);
    ++files;
  }
  if (o.pass) o.detail << files << " bundled programs round-trip";
}

}  // namespace
}  // namespace little

int main() {
  using namespace little;
  const std::pair<const char*, Check> checks[] = {
      {"four-candidate reproduction", four_candidates},
      {"trace reproduction", trace_reproduction},
      {"fair-heuristic rotation", fair_rotation},
      {"biased-heuristic example", biased_heuristic},
      {"solver oracle suite", solver_oracle},
      {"plausibility on overconstrained drags", plausible_drag},
      {"census methodology", census_row},
      {"desk-scale performance", performance},
      {"svg hygiene", svg_hygiene},
  };
  int failed = 0, index = 0;
  for (const auto& [name, check] : checks) {
    Outcome o;
    try {
      check(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    std::printf("%s [%d] %s: %s\n", o.pass ? "PASS" : "FAIL", ++index, name, o.detail.str().c_str());
    failed += o.pass ? 0 : 1;
  }
  std::printf("%d/%d criteria passed\n", index - failed, index);
  return failed == 0 ? 0 : 1;
}
