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

#include <cmath>
#include <random>

#include "test_util.hpp"

namespace little {
namespace {

using testing::load;
using testing::num;
using testing::parse;

struct SineWave {
  Program p = load("sineWaveOfBoxes.little");
  LocId x0 = testing::loc(p, "x0");
  LocId sep = testing::loc(p, "sep");
  LocId l0 = testing::prelude_literals(p, "zeroTo")[0].loc.id;
  LocId l1 = testing::prelude_literals(p, "range")[0].loc.id;

  TracePtr box_x(int i) const {
    TracePtr k = Trace::leaf(l0);
    for (int j = 0; j < i; ++j) k = top(Op::Plus, {Trace::leaf(l1), k});
    return top(Op::Plus, {Trace::leaf(x0), top(Op::Mult, {k, Trace::leaf(sep)})});
  }
};

TEST(Eval, BareLiteralCarriesItsLocation) {
  Program p = parse("5");
  ValuePtr v = eval_program(p);
  ASSERT_TRUE(v->is<Value::Num>());
  EXPECT_EQ(num(v), 5);
  const Trace& t = *v->as<Value::Num>()->trace;
  ASSERT_TRUE(t.is_loc());
  EXPECT_EQ(t.loc(), testing::user_literal(p, 0).loc.id);
}

TEST(Eval, OperatorResultsRecordTheirOperands) {
  Program p = parse("(let [a b] [3 4] (* a (+ b 1)))");
  ValuePtr v = eval_program(p);
  EXPECT_EQ(num(v), 15);
  EXPECT_EQ(to_sexpr(*v->as<Value::Num>()->trace, location_namer(p)), "(* a (+ b l" +
                                                                         std::to_string(testing::user_literal(p, 2).loc.id.value) +
                                                                         "))");
}

TEST(Eval, SineWaveBoxTraces) {
  SineWave s;
  auto canvas = index_canvas(eval_program(s.p));
  ASSERT_EQ(canvas.size(), 12u);
  const double expected[] = {50, 80, 110};
  for (int i = 0; i < 3; ++i) {
    const Slot* x = canvas[i].slot("x");
    ASSERT_NE(x, nullptr);
    EXPECT_EQ(x->value, expected[i]);
    EXPECT_TRUE(trace_equal(*x->trace, *s.box_x(i))) << to_sexpr(*x->trace);
  }
}

TEST(Eval, ControlFlowLeavesNoTrace) {
  // The branch taken depends on a, but the result only records data flow.
  Program p = parse("(let [a b] [1 2] (if (< a 5) b 0))");
  ValuePtr v = eval_program(p);
  const Trace& t = *v->as<Value::Num>()->trace;
  ASSERT_TRUE(t.is_loc());
  EXPECT_EQ(t.loc(), testing::loc(p, "b"));
}

TEST(Eval, StringsConcatenateWithoutTraces) {
  ValuePtr v = eval_program(parse("(+ 'n = ' (toString 12))"));
  ASSERT_TRUE(v->is<Value::Str>());
  EXPECT_EQ(v->as<Value::Str>()->s, "n = 12");
  ValuePtr b = eval_program(parse("(< 1 2)"));
  ASSERT_TRUE(b->is<Value::Bool>());
  EXPECT_TRUE(b->as<Value::Bool>()->b);
}

TEST(Eval, PreludeListFunctions) {
  EXPECT_EQ(show(*eval_program(parse("(map (\\x (* 2 x)) (range 1 4))"))), "[2 4 6 8]");
  EXPECT_EQ(show(*eval_program(parse("(zeroTo 3)"))), "[0 1 2]");
  EXPECT_EQ(show(*eval_program(parse("(foldr + 0 [1 2 3])"))), "6");
  EXPECT_EQ(show(*eval_program(parse("(concat [[1] [] [2 3]])"))), "[1 2 3]");
  EXPECT_EQ(show(*eval_program(parse("(reverse [1 2 3])"))), "[3 2 1]");
  EXPECT_EQ(show(*eval_program(parse("(nth [5 6 7] 2)"))), "7");
  EXPECT_EQ(show(*eval_program(parse("(len (list1N 4))"))), "4");
  EXPECT_EQ(show(*eval_program(parse("(clamp 0 10 12)"))), "10");
}

TEST(Eval, IntegerFriendlyOpsHaveAdditionOnlyTraces) {
  Program p = parse("(let [x0 sep] [50 30] (+ x0 (mult 2 sep)))");
  ValuePtr v = eval_program(p);
  EXPECT_EQ(num(v), 110);
  const Trace& t = *v->as<Value::Num>()->trace;
  const auto pc = count_plus(initial_substitution(p), testing::loc(p, "sep"), t);
  ASSERT_TRUE(pc.has_value()) << to_sexpr(t);
  EXPECT_EQ(pc->c, 2);
  EXPECT_EQ(num(eval_program(parse("(minus 7 3)"))), 4);
  EXPECT_EQ(num(eval_program(parse("(div 7 2)"))), 3);
  EXPECT_THROW(eval_program(parse("(mult 1.5 3)")), EvalError);
  EXPECT_THROW(eval_program(parse("(mult -1 3)")), EvalError);
  EXPECT_THROW(eval_program(parse("(div 4 0)")), EvalError);
}

TEST(Eval, ErrorsCarryTheNearestLocation) {
  try {
    eval_program(parse("(svg\n  [(rect 'red' q 1 2 3)])"));
    FAIL();
  } catch (const EvalError& e) {
    EXPECT_EQ(e.pos().line, 2);
    EXPECT_NE(e.message().find("unbound variable 'q'"), std::string::npos);
  }
  EXPECT_THROW(eval_program(parse("(case 3 ([] 0))")), EvalError);
  EXPECT_THROW(eval_program(parse("(5 3)")), EvalError);
  EXPECT_THROW(eval_program(parse("(+ 1 true)")), EvalError);
  EXPECT_THROW(eval_program(parse("((\\[a b] a) [1])")), EvalError);
  EXPECT_THROW(eval_program(parse("(if 1 2 3)")), EvalError);
}

TEST(Eval, DeepRecursionIsReportedNotFatal) {
  EvalOptions opts;
  opts.max_depth = 200;
  EXPECT_THROW(eval_program(parse("(defrec f (\\x (f x)))\n(f 1)"), opts), EvalError);
}

TEST(EvalTrace, Examples) {
  Substitution rho;
  rho.push(LocId{9}, 7);
  EXPECT_EQ(eval_trace(rho, *tloc(9)), 7);
  EXPECT_THROW(eval_trace(rho, *tloc(10)), UnboundLocationError);
  EXPECT_THROW(eval_trace(rho, *top(Op::Div, {tloc(9), top(Op::Minus, {tloc(9), tloc(9)})})), TraceEvalError);

  SineWave s;
  Substitution rho0 = initial_substitution(s.p);
  EXPECT_EQ(eval_trace(rho0, *s.box_x(2)), 110);
  Substitution moved = rho0;
  moved.push(s.sep, 52.5);
  EXPECT_EQ(eval_trace(moved, *s.box_x(2)), 155);
}

TEST(LocsOf, SineWaveBoxes) {
  SineWave s;
  auto canvas = index_canvas(eval_program(s.p));
  FrozenSet frozen = frozen_set(s.p);
  const LocId y0 = testing::loc(s.p, "y0"), amp = testing::loc(s.p, "amp");
  for (const auto& shape : canvas) {
    EXPECT_EQ(locs_of(*shape.slot("x")->trace, frozen), (std::set<LocId>{s.x0, s.sep}));
    if (shape.index == 0 || shape.index == 6) continue;  // sin(0) and sin(pi) still depend on amp
    EXPECT_EQ(locs_of(*shape.slot("y")->trace, frozen), (std::set<LocId>{y0, amp}));
  }
  EXPECT_TRUE(locs_of(*Trace::leaf(s.l0), frozen).empty());
}

// Every traced number re-evaluates to itself under rho0.
void expect_sound(const Program& p) {
  Substitution rho0 = initial_substitution(p);
  ValuePtr v = eval_program(p);
  for_each_number(v, [&](const ValuePath& path, const Value::Num& n) {
    if (!std::isfinite(n.n)) return;
    EXPECT_EQ(eval_trace(rho0, *n.trace), n.n) << path_str(path) << " " << to_sexpr(*n.trace);
  });
}

TEST(TraceSoundness, Corpus) {
  for (const auto& name : testing::corpus_files()) {
    SCOPED_TRACE(name);
    expect_sound(load(name));
  }
}

TEST(TraceSoundness, RandomArithmetic) {
  std::mt19937 rng(11);
  auto pick = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };
  std::function<std::string(int)> gen = [&](int d) -> std::string {
    if (d == 0 || pick(4) == 0) {
      if (pick(2)) return "v" + std::to_string(pick(4));
      return format_number(std::uniform_int_distribution<int>(1, 40)(rng) / 4.0);
    }
    static const char* bin[] = {"+", "-", "*", "/", "pow", "arctan2"};
    static const char* un[] = {"sin", "cos", "sqrt", "floor", "round", "ceiling"};
    if (pick(3) == 0) return std::string("(") + un[pick(6)] + " " + gen(d - 1) + ")";
    return std::string("(") + bin[pick(6)] + " " + gen(d - 1) + " " + gen(d - 1) + ")";
  };
  for (int i = 0; i < 300; ++i) {
    const std::string src = "(def [v0 v1 v2 v3] [1.5 2 3.25 7])\n[" + gen(4) + " " + gen(4) + "]";
    SCOPED_TRACE(src);
    expect_sound(parse(src));
  }
}

TEST(SubstitutionIdentity, ReapplyingInitialValuesChangesNothing) {
  for (const auto& name : testing::corpus_files()) {
    SCOPED_TRACE(name);
    Program p = load(name);
    Program q = apply_substitution(initial_substitution(p), p);
    ValuePtr a = eval_program(p), b = eval_program(q);
    EXPECT_TRUE(values_similar(a, b));
    EXPECT_EQ(show(*a), show(*b));
  }
}

TEST(Determinism, RepeatedEvaluation) {
  Program p = load("ferris.little");
  EXPECT_EQ(show(*eval_program(p)), show(*eval_program(p)));
  EXPECT_EQ(to_svg_xml(eval_program(p)), to_svg_xml(eval_program(load("ferris.little"))));
}

TEST(Sugar, IfMatchesCaseEncoding) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> d(-20, 20);
  for (int i = 0; i < 300; ++i) {
    const std::string a = std::to_string(d(rng)), b = std::to_string(d(rng));
    const std::string c = i % 3 == 0 ? (i % 2 ? "true" : "false") : "(< " + a + " " + b + ")";
    const std::string then_e = "(+ " + a + " 1)", else_e = "[" + b + "]";
    Program sugar = parse("(if " + c + " " + then_e + " " + else_e + ")");
    Program core = parse("(case " + c + " (true " + then_e + ") (false " + else_e + "))");
    ValuePtr x = eval_program(sugar), y = eval_program(core);
    EXPECT_EQ(show(*x), show(*y));
    EXPECT_TRUE(values_similar(x, y));
  }
}

}  // namespace
}  // namespace little
