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

#include <numbers>
#include <string>
#include <vector>

#include "little/ast.hpp"
#include "little/unparse.hpp"
#include "little/value.hpp"

namespace little {

struct EvalOptions {
  std::size_t max_depth = 4000;
};

namespace detail {

class Evaluator {
 public:
  explicit Evaluator(EvalOptions opts) : opts_(opts) {}

  ValuePtr eval(const Env& env, const Expr& e) {
    if (++depth_ > opts_.max_depth) {
      depth_ = 0;
      throw EvalError("recursion depth limit exceeded", e.pos);
    }
    ValuePtr v = std::visit([&](const auto& n) { return node(env, e, n); }, e.node);
    --depth_;
    return v;
  }

  ValuePtr apply(const ValuePtr& f, const ValuePtr& arg, SourcePos pos) {
    if (const auto* c = f->as<Value::Closure>()) {
      Env env = c->env;
      if (!c->self.empty()) env = env_bind(env, c->self, f);
      if (!match(*c->param, arg, env))
        throw EvalError("argument " + show(*arg) + " does not match parameter " + pattern_str(*c->param), pos);
      return eval(env, *c->body);
    }
    if (const auto* p = f->as<Value::PrimFn>()) {
      std::vector<ValuePtr> args = p->args;
      args.push_back(arg);
      if (static_cast<int>(args.size()) < op_arity(p->op))
        return std::make_shared<const Value>(Value{Value::PrimFn{p->op, std::move(args)}});
      return apply_op(p->op, args, pos);
    }
    throw EvalError("cannot apply a " + kind_name(*f) + " (" + show(*f) + ")", pos);
  }

  ValuePtr apply_op(Op op, const std::vector<ValuePtr>& args, SourcePos pos) {
    auto num = [&](std::size_t i) -> const Value::Num& {
      const auto* n = args[i]->as<Value::Num>();
      if (!n)
        throw EvalError(std::string("operator ") + std::string(op_name(op)) + " expects a number, got " +
                            kind_name(*args[i]),
                        pos);
      return *n;
    };
    auto traced = [&](std::initializer_list<std::size_t> idx) {
      double xs[2] = {0, 0};
      std::vector<TracePtr> ts;
      std::size_t k = 0;
      for (auto i : idx) {
        const auto& n = num(i);
        xs[k++] = n.n;
        ts.push_back(n.trace);
      }
      return vnum(apply_numeric_op(op, std::span<const double>(xs, k)), Trace::apply(op, std::move(ts)));
    };
    switch (op) {
      case Op::Pi: return vnum(std::numbers::pi, Trace::apply(Op::Pi, {}));
      case Op::Not: {
        const auto* b = args[0]->as<Value::Bool>();
        if (!b) throw EvalError("not expects a boolean, got " + kind_name(*args[0]), pos);
        return vbool(!b->b);
      }
      case Op::ToString: return vstr(show(*args[0]));
      case Op::Cos:
      case Op::Sin:
      case Op::Arccos:
      case Op::Arcsin:
      case Op::Round:
      case Op::Floor:
      case Op::Ceiling:
      case Op::Sqrt: return traced({0});
      case Op::Plus: {
        const auto* s0 = args[0]->as<Value::Str>();
        const auto* s1 = args[1]->as<Value::Str>();
        if (s0 || s1) {
          if ((!s0 && !args[0]->is<Value::Num>()) || (!s1 && !args[1]->is<Value::Num>()))
            throw EvalError("+ expects two numbers or strings", pos);
          return vstr(show(*args[0]) + show(*args[1]));
        }
        return traced({0, 1});
      }
      case Op::Minus:
      case Op::Mult:
      case Op::Div:
      case Op::Mod:
      case Op::Pow:
      case Op::Arctan2: return traced({0, 1});
      case Op::Lt: return vbool(num(0).n < num(1).n);
      case Op::Gt: return vbool(num(0).n > num(1).n);
      case Op::Le: return vbool(num(0).n <= num(1).n);
      case Op::Ge: return vbool(num(0).n >= num(1).n);
      case Op::Eq: return vbool(prim_equal(*args[0], *args[1], pos));
    }
    throw EvalError("unknown operator", pos);
  }

 private:
  static std::string pattern_str(const Pattern& p) { return unparse_pattern(p); }

  static bool prim_equal(const Value& a, const Value& b, SourcePos pos) {
    if (const auto* x = a.as<Value::Num>()) {
      const auto* y = b.as<Value::Num>();
      return y && x->n == y->n;
    }
    if (const auto* x = a.as<Value::Str>()) {
      const auto* y = b.as<Value::Str>();
      return y && x->s == y->s;
    }
    if (const auto* x = a.as<Value::Bool>()) {
      const auto* y = b.as<Value::Bool>();
      return y && x->b == y->b;
    }
    if (a.is<Value::Nil>()) return b.is<Value::Nil>();
    throw EvalError("= expects numbers, strings, booleans or []", pos);
  }

  bool match(const Pattern& p, const ValuePtr& v, Env& env) {
    return std::visit(
        [&](const auto& n) -> bool {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Pattern::Var>) {
            if (n.name != "_") env = env_bind(env, n.name, v);
            return true;
          } else if constexpr (std::is_same_v<T, Pattern::Num>) {
            const auto* x = v->as<Value::Num>();
            return x && x->n == n.value;
          } else if constexpr (std::is_same_v<T, Pattern::Str>) {
            const auto* x = v->as<Value::Str>();
            return x && x->s == n.value;
          } else if constexpr (std::is_same_v<T, Pattern::Bool>) {
            const auto* x = v->as<Value::Bool>();
            return x && x->b == n.value;
          } else if constexpr (std::is_same_v<T, Pattern::Nil>) {
            return v->is<Value::Nil>();
          } else {
            const auto* c = v->as<Value::Cons>();
            return c && match(*n.head, c->head, env) && match(*n.tail, c->tail, env);
          }
        },
        p.node);
  }

  ValuePtr bind_rec(const Env& env, const Pattern& p, const Expr& bound, SourcePos pos) {
    ValuePtr v = eval(env, bound);
    const auto* c = v->as<Value::Closure>();
    if (!c) throw EvalError("recursive binding must be a function", pos);
    Value::Closure rc = *c;
    rc.self = std::get<Pattern::Var>(p.node).name;
    return std::make_shared<const Value>(Value{std::move(rc)});
  }

 public:
  Env bind(const Env& env, const Pattern& p, const Expr& bound, bool rec, SourcePos pos) {
    ValuePtr v = rec ? bind_rec(env, p, bound, pos) : eval(env, bound);
    Env out = env;
    if (!match(p, v, out)) throw EvalError("value " + show(*v) + " does not match pattern " + pattern_str(p), pos);
    return out;
  }

 private:
  ValuePtr node(const Env&, const Expr&, const Expr::Num& n) {
    return vnum(n.lit.value, Trace::leaf(n.lit.loc.id));
  }
  ValuePtr node(const Env&, const Expr&, const Expr::Str& n) { return vstr(n.value); }
  ValuePtr node(const Env&, const Expr&, const Expr::Bool& n) { return vbool(n.value); }
  ValuePtr node(const Env&, const Expr&, const Expr::Nil&) { return vnil(); }
  ValuePtr node(const Env& env, const Expr&, const Expr::Cons& n) {
    auto h = eval(env, *n.head);
    return vcons(std::move(h), eval(env, *n.tail));
  }
  ValuePtr node(const Env& env, const Expr& e, const Expr::Var& n) {
    if (const ValuePtr* v = env_lookup(env, n.name)) return *v;
    throw EvalError("unbound variable '" + n.name + "'", e.pos);
  }
  ValuePtr node(const Env&, const Expr&, const Expr::OpRef& n) {
    return std::make_shared<const Value>(Value{Value::PrimFn{n.op, {}}});
  }
  ValuePtr node(const Env& env, const Expr& e, const Expr::Fun& n) {
    return std::make_shared<const Value>(Value{Value::Closure{n.param, n.body, env, {}, e.id}});
  }
  ValuePtr node(const Env& env, const Expr& e, const Expr::App& n) {
    auto f = eval(env, *n.fn);
    auto a = eval(env, *n.arg);
    return apply(f, a, e.pos);
  }
  ValuePtr node(const Env& env, const Expr& e, const Expr::PrimOp& n) {
    std::vector<ValuePtr> args;
    args.reserve(n.args.size());
    for (const auto& a : n.args) args.push_back(eval(env, *a));
    return apply_op(n.op, args, e.pos);
  }
  ValuePtr node(const Env& env, const Expr& e, const Expr::Let& n) {
    return eval(bind(env, *n.pattern, *n.bound, n.rec, e.pos), *n.body);
  }
  ValuePtr node(const Env& env, const Expr& e, const Expr::Case& n) {
    auto v = eval(env, *n.scrutinee);
    for (const auto& b : n.branches) {
      Env out = env;
      if (match(*b.pattern, v, out)) return eval(out, *b.body);
    }
    if (n.style == CaseStyle::If) throw EvalError("if expects a boolean, got " + kind_name(*v), e.pos);
    throw EvalError("no case branch matches " + show(*v), e.pos);
  }

  EvalOptions opts_;
  std::size_t depth_ = 0;
};

}  // namespace detail

/// Evaluates the prelude definitions and returns the resulting environment.
inline Env eval_prelude(const Program& p, EvalOptions opts = {}) {
  detail::Evaluator ev(opts);
  Env env;
  for (const auto& d : p.prelude) env = ev.bind(env, *d.pattern, *d.bound, d.rec, d.pos);
  return env;
}

/// Evaluates the program's main expression (prelude in scope). Every number in
/// the result carries the trace of the literals it was computed from.
inline ValuePtr eval_program(const Program& p, EvalOptions opts = {}) {
  Env env = eval_prelude(p, opts);
  detail::Evaluator ev(opts);
  return ev.eval(env, *p.main);
}

/// Evaluates a standalone expression in `env`.
inline ValuePtr eval_expr(const Expr& e, const Env& env = {}, EvalOptions opts = {}) {
  detail::Evaluator ev(opts);
  return ev.eval(env, e);
}

}  // namespace little
