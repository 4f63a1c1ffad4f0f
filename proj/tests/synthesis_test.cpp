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

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>

#include "test_util.hpp"

namespace little {
namespace {

using testing::load;
using testing::parse;

struct Target {
  std::size_t shape;
  std::string slot;
  double value;
};

struct Request {
  UpdateRequest req;
  std::vector<ValuePath> holes;
};

Request make_request(const std::vector<IndexedShape>& canvas, const std::vector<Target>& targets) {
  Request r;
  std::set<ValuePath> hard;
  for (const auto& t : targets) {
    const Slot* s = canvas.at(t.shape).slot(t.slot);
    EXPECT_NE(s, nullptr) << t.slot;
    r.req.hard.push_back({t.value, s->trace});
    r.holes.push_back(s->path);
    hard.insert(s->path);
  }
  for (const auto& shape : canvas)
    for (const auto& s : shape.slots)
      if (!hard.contains(s.path)) r.req.soft.push_back({s.value, s.trace});
  return r;
}

using Effective = std::map<std::uint32_t, double>;

std::set<Effective> effective_set(const InferResult& r) {
  std::set<Effective> out;
  for (const auto& c : r.candidates) {
    Effective e;
    for (const auto& b : c.delta) e[b.loc.value] = b.value;
    out.insert(e);
  }
  return out;
}

TEST(Similarity, ReflexiveOverTheCorpus) {
  for (const auto& name : testing::corpus_files()) {
    SCOPED_TRACE(name);
    ValuePtr v = eval_program(load(name));
    EXPECT_TRUE(values_similar(v, v));
    EXPECT_TRUE(values_similar(v, eval_program(load(name))));
  }
}

TEST(Similarity, NumbersWithEqualTracesAreSimilar) {
  Program p = load("sineWaveOfBoxes.little");
  Substitution rho = initial_substitution(p);
  rho.push(testing::loc(p, "sep"), 41);
  ValuePtr a = eval_program(p), b = eval_program(apply_substitution(rho, p));
  EXPECT_NE(show(*a), show(*b));
  EXPECT_TRUE(values_similar(a, b));
  EXPECT_TRUE(values_similar(b, a));
}

TEST(Similarity, ChangedStructureIsNotSimilar) {
  ValuePtr a = eval_program(parse("(let n 3 (zeroTo n))"));
  ValuePtr b = eval_program(parse("(let n 4 (zeroTo n))"));
  EXPECT_FALSE(values_similar(a, b));
  EXPECT_FALSE(values_similar(b, a));
  ValuePtr c = eval_program(parse("['x' 1]"));
  ValuePtr d = eval_program(parse("['y' 1]"));
  EXPECT_FALSE(values_similar(c, d));
}

TEST(Similarity, HolesMatchOnlyTheSameIndex) {
  Program p = parse("[1 2]");
  ValuePtr v = eval_program(p);
  const ValuePath first{Step::Head}, second{Step::Tail, Step::Head};
  EXPECT_TRUE(value_context_similar({v, {first}}, {v, {first}}));
  EXPECT_FALSE(value_context_similar({v, {first}}, {v, {second}}));
  EXPECT_FALSE(value_context_similar({v, {first, second}}, {v, {second, first}}));
  EXPECT_FALSE(value_context_similar({v, {first}}, {v, {}}));
}

TEST(Similarity, SymmetricOnRandomPairs) {
  std::vector<ValuePtr> values;
  for (const auto& name : testing::corpus_files()) {
    Program p = load(name);
    values.push_back(eval_program(p));
    Substitution rho = initial_substitution(p);
    for (const auto& l : literals(p))
      if (l.loc.origin == Origin::UserProgram) rho.push(l.loc.id, l.value + 1);
    try {
      values.push_back(eval_program(apply_substitution(rho, p)));
    } catch (const LittleError&) {
    }
  }
  for (const auto& a : values)
    for (const auto& b : values) EXPECT_EQ(values_similar(a, b), values_similar(b, a));
}

struct SineWave {
  Program p = load("sineWaveOfBoxes.little");
  Substitution rho0 = initial_substitution(p);
  std::vector<IndexedShape> canvas = index_canvas(eval_program(p));
  std::uint32_t x0 = testing::loc(p, "x0").value;
  std::uint32_t sep = testing::loc(p, "sep").value;
  std::uint32_t l0 = testing::prelude_literals(p, "zeroTo")[0].loc.id.value;
  std::uint32_t l1 = testing::prelude_literals(p, "range")[0].loc.id.value;
};

TEST(Candidates, SineWaveFrozenPrelude) {
  SineWave s;
  Request r = make_request(s.canvas, {{2, "x", 155}});
  InferResult res = infer_local_updates(s.rho0, r.req, frozen_set(s.p));
  ASSERT_EQ(res.candidates.size(), 2u);
  EXPECT_EQ(res.tuples, 2u);
  EXPECT_FALSE(res.truncated);
  std::map<std::uint32_t, double> got;
  for (const auto& c : res.candidates) {
    ASSERT_EQ(c.delta.size(), 1u);
    got[c.delta[0].loc.value] = c.delta[0].value;
  }
  EXPECT_NEAR(got.at(s.x0), 95, 1e-9);
  EXPECT_NEAR(got.at(s.sep), 52.5, 1e-9);
}

TEST(Candidates, SineWaveUnfrozenPrelude) {
  SineWave s;
  Request r = make_request(s.canvas, {{2, "x", 155}});
  InferResult res = infer_local_updates(s.rho0, r.req, frozen_set(s.p, {false, false}));
  ASSERT_EQ(res.candidates.size(), 4u);
  std::map<std::uint32_t, double> got;
  for (const auto& c : res.candidates) got[c.delta[0].loc.value] = c.delta[0].value;
  EXPECT_NEAR(got.at(s.x0), 95, 1e-9);
  EXPECT_NEAR(got.at(s.sep), 52.5, 1e-9);
  EXPECT_NEAR(got.at(s.l0), 1.5, 1e-9);
  EXPECT_NEAR(got.at(s.l1), 1.75, 1e-9);
}

TEST(Candidates, EmptyRequestHasNoCandidates) {
  SineWave s;
  EXPECT_TRUE(infer_local_updates(s.rho0, {}, frozen_set(s.p)).candidates.empty());
}

TEST(Candidates, DisjointDropsSharedLocations) {
  SineWave s;
  Request r = make_request(s.canvas, {{1, "x", 90}, {1, "y", 150}});
  auto all = infer_local_updates(s.rho0, r.req, frozen_set(s.p));
  auto disjoint = infer_local_updates(s.rho0, r.req, frozen_set(s.p), {.disjoint = true});
  EXPECT_EQ(all.tuples, disjoint.tuples);  // x and y share no location
  Request shared = make_request(s.canvas, {{1, "x", 90}, {2, "x", 120}});
  auto none = infer_local_updates(s.rho0, shared.req, frozen_set(s.p), {.disjoint = true});
  EXPECT_EQ(none.tuples, 0u);
  EXPECT_TRUE(none.candidates.empty());
  EXPECT_EQ(infer_local_updates(s.rho0, shared.req, frozen_set(s.p)).tuples, 4u);
}

TEST(Candidates, CapTruncatesEnumeration) {
  SineWave s;
  Request r = make_request(s.canvas, {{1, "x", 90}, {2, "x", 120}, {3, "x", 160}});
  auto capped = infer_local_updates(s.rho0, r.req, frozen_set(s.p, {false, false}), {.max_tuples = 5});
  EXPECT_TRUE(capped.truncated);
  EXPECT_EQ(capped.tuples, 64u);
  EXPECT_LE(capped.candidates.size(), 5u);
}

// Randomized targets over the corpus: no candidate binds a frozen location,
// and each single-equation candidate satisfies its equation.
TEST(CandidateProperties, RespectFrozenAndSolveTheirEquation) {
  std::mt19937 rng(17);
  for (const auto& name : testing::corpus_files()) {
    SCOPED_TRACE(name);
    Program p = load(name);
    auto canvas = index_canvas(eval_program(p));
    if (canvas.empty()) continue;
    const Substitution rho0 = initial_substitution(p);
    std::vector<LocId> user;
    for (const auto& l : literals(p))
      if (l.loc.origin == Origin::UserProgram) user.push_back(l.loc.id);
    for (int i = 0; i < 40; ++i) {
      FrozenSet frozen = frozen_set(p);
      for (auto l : user)
        if (rng() % 3 == 0) frozen.insert(l);
      const auto& shape = canvas[rng() % canvas.size()];
      if (shape.slots.empty()) continue;
      const Slot& slot = shape.slots[rng() % shape.slots.size()];
      const double target = slot.value + std::uniform_real_distribution<double>(-40, 40)(rng);
      Request r = make_request(canvas, {{shape.index, slot.name, target}});
      for (const auto& c : infer_local_updates(rho0, r.req, frozen).candidates) {
        for (const auto& b : c.delta) EXPECT_FALSE(frozen.contains(b.loc));
        const double got = eval_trace(c.rho, *slot.trace);
        EXPECT_NEAR(got, target, 1e-6 * std::max(1.0, std::abs(target))) << to_sexpr(*slot.trace);
      }
    }
  }
}

TEST(CandidateProperties, SoftOrderDoesNotMatter) {
  SineWave s;
  Request r = make_request(s.canvas, {{2, "x", 155}, {4, "y", 130}});
  auto base = effective_set(infer_local_updates(s.rho0, r.req, frozen_set(s.p, {false, false})));
  std::mt19937 rng(4);
  for (int i = 0; i < 10; ++i) {
    std::shuffle(r.req.soft.begin(), r.req.soft.end(), rng);
    EXPECT_EQ(effective_set(infer_local_updates(s.rho0, r.req, frozen_set(s.p, {false, false}))), base);
  }
}

TEST(Classify, SineWaveCandidatesAreFaithful) {
  SineWave s;
  Request r = make_request(s.canvas, {{2, "x", 155}});
  for (const auto& c : infer_local_updates(s.rho0, r.req, frozen_set(s.p)).candidates) {
    Classification cls = classify_update(s.p, r.req, r.holes, c.rho);
    EXPECT_EQ(cls.kind, UpdateClass::Faithful) << cls.diagnostic;
    EXPECT_EQ(cls.hits, 1u);
  }
}

TEST(Classify, IdentityIsFaithful) {
  for (const auto& name : testing::corpus_files()) {
    SCOPED_TRACE(name);
    Program p = load(name);
    auto canvas = index_canvas(eval_program(p));
    if (canvas.empty()) continue;
    const Slot& slot = canvas[0].slots[0];
    Request r = make_request(canvas, {{0, slot.name, slot.value}});
    EXPECT_EQ(classify_update(p, r.req, r.holes, initial_substitution(p)).kind, UpdateClass::Faithful);
  }
}

TEST(Classify, SharedLiteralIsPlausible) {
  Program p = load("xyRect.little");
  auto canvas = index_canvas(eval_program(p));
  Request r = make_request(canvas, {{0, "x", 130}, {0, "y", 110}});
  auto res = infer_local_updates(initial_substitution(p), r.req, frozen_set(p));
  // Both equations solve the one literal, so the later binding wins.
  ASSERT_EQ(res.candidates.size(), 1u);
  for (const auto& c : res.candidates) {
    Classification cls = classify_update(p, r.req, r.holes, c.rho);
    EXPECT_EQ(cls.kind, UpdateClass::Plausible);
    EXPECT_EQ(cls.hits, 1u);
  }
}

TEST(Classify, StructuralChangeIsVacuous) {
  Program p = parse("(def n 3)\n(svg (map (\\i (rect 'red' (* i 10) 0 5 5)) (zeroTo n)))");
  auto canvas = index_canvas(eval_program(p));
  Request r = make_request(canvas, {{1, "x", 10}});
  Substitution rho = initial_substitution(p);
  rho.push(testing::loc(p, "n"), 4);
  EXPECT_EQ(classify_update(p, r.req, r.holes, rho).kind, UpdateClass::FaithfulVacuous);
}

TEST(Classify, EvaluationFailureIsNeither) {
  Program p = parse("(def d 2)\n(svg [(rect 'red' (div 10 d) 0 5 5)])");
  auto canvas = index_canvas(eval_program(p));
  Request r = make_request(canvas, {{0, "x", 5}});
  Substitution rho = initial_substitution(p);
  rho.push(testing::loc(p, "d"), 0);
  Classification cls = classify_update(p, r.req, r.holes, rho);
  EXPECT_EQ(cls.kind, UpdateClass::Neither);
  EXPECT_FALSE(cls.diagnostic.empty());
}

}  // namespace
}  // namespace little
