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

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "little/ast.hpp"
#include "little/trace.hpp"

namespace little {

struct Value;
using ValuePtr = std::shared_ptr<const Value>;

struct EnvNode;
using Env = std::shared_ptr<const EnvNode>;

struct EnvNode {
  std::string name;
  ValuePtr value;
  Env next;
};

inline Env env_bind(Env env, std::string name, ValuePtr v) {
  return std::make_shared<const EnvNode>(EnvNode{std::move(name), std::move(v), std::move(env)});
}

inline const ValuePtr* env_lookup(const Env& env, const std::string& name) {
  for (const EnvNode* n = env.get(); n; n = n->next.get())
    if (n->name == name) return &n->value;
  return nullptr;
}

struct Value {
  struct Num {
    double n;
    TracePtr trace;
  };
  struct Str {
    std::string s;
  };
  struct Bool {
    bool b;
  };
  struct Nil {};
  struct Cons {
    ValuePtr head, tail;
  };
  struct Closure {
    PatternPtr param;
    ExprPtr body;
    Env env;
    std::string self;  // non-empty for a letrec-bound function
    std::uint32_t fun_id;
  };
  /// A primitive operator used as a value, possibly partially applied.
  struct PrimFn {
    Op op;
    std::vector<ValuePtr> args;
  };

  std::variant<Num, Str, Bool, Nil, Cons, Closure, PrimFn> node;

  template <class T>
  const T* as() const {
    return std::get_if<T>(&node);
  }
  template <class T>
  bool is() const {
    return std::holds_alternative<T>(node);
  }
};

inline ValuePtr vnum(double n, TracePtr t) { return std::make_shared<const Value>(Value{Value::Num{n, std::move(t)}}); }
inline ValuePtr vstr(std::string s) { return std::make_shared<const Value>(Value{Value::Str{std::move(s)}}); }
inline ValuePtr vbool(bool b) { return std::make_shared<const Value>(Value{Value::Bool{b}}); }
inline ValuePtr vnil() {
  static const ValuePtr nil = std::make_shared<const Value>(Value{Value::Nil{}});
  return nil;
}
inline ValuePtr vcons(ValuePtr h, ValuePtr t) {
  return std::make_shared<const Value>(Value{Value::Cons{std::move(h), std::move(t)}});
}
inline ValuePtr vlist(const std::vector<ValuePtr>& items) {
  ValuePtr out = vnil();
  for (auto it = items.rbegin(); it != items.rend(); ++it) out = vcons(*it, out);
  return out;
}

/// Elements of a proper list, or nullopt if `v` is not one.
inline std::optional<std::vector<ValuePtr>> list_items(const ValuePtr& v) {
  std::vector<ValuePtr> out;
  const Value* cur = v.get();
  for (;;) {
    if (cur->is<Value::Nil>()) return out;
    const auto* c = cur->as<Value::Cons>();
    if (!c) return std::nullopt;
    out.push_back(c->head);
    cur = c->tail.get();
  }
}

inline std::string kind_name(const Value& v) {
  switch (v.node.index()) {
    case 0: return "number";
    case 1: return "string";
    case 2: return "boolean";
    case 3: return "empty list";
    case 4: return "list";
    default: return "function";
  }
}

/// Display form used by toString and diagnostics.
inline std::string show(const Value& v) {
  return std::visit(
      [&](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Value::Num>) {
          return format_number(n.n);
        } else if constexpr (std::is_same_v<T, Value::Str>) {
          return n.s;
        } else if constexpr (std::is_same_v<T, Value::Bool>) {
          return n.b ? "true" : "false";
        } else if constexpr (std::is_same_v<T, Value::Nil>) {
          return "[]";
        } else if constexpr (std::is_same_v<T, Value::Cons>) {
          std::string s = "[";
          const Value* cur = &v;
          bool first = true;
          while (const auto* c = cur->as<Value::Cons>()) {
            const auto* hs = c->head->as<Value::Str>();
            s += (first ? "" : " ") + (hs ? "'" + hs->s + "'" : show(*c->head));
            first = false;
            cur = c->tail.get();
          }
          if (!cur->is<Value::Nil>()) s += " | " + show(*cur);
          return s + "]";
        } else {
          return "<fun>";
        }
      },
      v.node);
}

// --- structural addressing --------------------------------------------------

enum class Step : std::uint8_t { Head, Tail };
using ValuePath = std::vector<Step>;

inline std::string path_str(const ValuePath& p) {
  std::string s;
  for (auto st : p) s += st == Step::Head ? 'h' : 't';
  return s;
}

inline ValuePtr value_at(const ValuePtr& root, const ValuePath& path) {
  ValuePtr cur = root;
  for (auto st : path) {
    const auto* c = cur->as<Value::Cons>();
    if (!c) return nullptr;
    cur = st == Step::Head ? c->head : c->tail;
  }
  return cur;
}

/// Path to the i-th element of a list rooted at `base`.
inline ValuePath list_elem_path(ValuePath base, std::size_t i) {
  base.insert(base.end(), i, Step::Tail);
  base.push_back(Step::Head);
  return base;
}

/// Calls f(path, num) for every number reachable through cons cells.
template <class F>
void for_each_number(const ValuePtr& v, F&& f, ValuePath& path) {
  if (const auto* n = v->as<Value::Num>()) {
    f(path, *n);
  } else if (const auto* c = v->as<Value::Cons>()) {
    path.push_back(Step::Head);
    for_each_number(c->head, f, path);
    path.back() = Step::Tail;
    for_each_number(c->tail, f, path);
    path.pop_back();
  }
}

template <class F>
void for_each_number(const ValuePtr& v, F&& f) {
  ValuePath path;
  for_each_number(v, f, path);
}

}  // namespace little
