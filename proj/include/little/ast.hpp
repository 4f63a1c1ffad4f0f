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

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "little/common.hpp"
#include "little/ops.hpp"
#include "little/substitution.hpp"
#include "little/trace.hpp"

namespace little {

// The core forms below are what evaluation sees. The small "style" tags only
// remember which surface sugar produced a node so unparse can print it back.

enum class Annotation : std::uint8_t { None, Freeze, Thaw };

struct Range {
  double lo = 0;
  double hi = 0;
};

struct SourceSpan {
  std::size_t begin = 0;  // byte offsets of the numeric text only
  std::size_t end = 0;
};

struct NumLiteral {
  double value = 0;
  Location loc;
  Annotation annotation = Annotation::None;
  std::optional<Range> range;
  SourceSpan span;
};

enum class ListStyle : std::uint8_t { Start, Continue };

struct Pattern;
using PatternPtr = std::shared_ptr<const Pattern>;

struct Pattern {
  struct Var {
    std::string name;
  };
  struct Num {
    double value;
  };
  struct Str {
    std::string value;
  };
  struct Bool {
    bool value;
  };
  struct Nil {
    bool implicit;  // closes a bracket literal rather than written as []
  };
  struct Cons {
    PatternPtr head, tail;
    ListStyle style;
  };

  std::variant<Var, Num, Str, Bool, Nil, Cons> node;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

enum class LetStyle : std::uint8_t { Let, Def, DefInline };
enum class CaseStyle : std::uint8_t { Case, If };

struct Branch {
  PatternPtr pattern;
  ExprPtr body;
};

struct Expr {
  struct Num {
    NumLiteral lit;
  };
  struct Str {
    std::string value;
  };
  struct Bool {
    bool value;
  };
  struct Nil {
    bool implicit;
  };
  struct Cons {
    ExprPtr head, tail;
    ListStyle style;
  };
  struct Var {
    std::string name;
  };
  /// A bare operator used as a first-class value, e.g. `(foldr + 0 xs)`.
  struct OpRef {
    Op op;
  };
  struct Fun {
    PatternPtr param;
    ExprPtr body;
    bool continues;  // inner lambda of a multi-parameter lambda
  };
  struct App {
    ExprPtr fn, arg;
    bool inner;  // partial application produced by a multi-argument call
  };
  struct PrimOp {
    Op op;
    std::vector<ExprPtr> args;
  };
  struct Let {
    PatternPtr pattern;
    ExprPtr bound, body;
    bool rec;
    LetStyle style;
  };
  struct Case {
    ExprPtr scrutinee;
    std::vector<Branch> branches;
    CaseStyle style;
  };

  using Node = std::variant<Num, Str, Bool, Nil, Cons, Var, OpRef, Fun, App, PrimOp, Let, Case>;

  Node node;
  SourcePos pos;
  std::uint32_t id = 0;  // stable per parse; survives substitution
};

struct TopDef {
  PatternPtr pattern;
  ExprPtr bound;
  bool rec = false;
  SourcePos pos;
};

/// A parsed program together with the prelude it runs against.
struct Program {
  std::vector<TopDef> prelude;
  ExprPtr main;
  std::string source;
  std::string prelude_source;
  /// Canonical variable names for literals immediately bound to a variable.
  std::unordered_map<LocId, std::string> aliases;
};

// --- traversal helpers ------------------------------------------------------

template <class F>
void for_each_literal(const Expr& e, F&& f) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Expr::Num>) {
          f(n.lit);
        } else if constexpr (std::is_same_v<T, Expr::Cons>) {
          for_each_literal(*n.head, f);
          for_each_literal(*n.tail, f);
        } else if constexpr (std::is_same_v<T, Expr::Fun>) {
          for_each_literal(*n.body, f);
        } else if constexpr (std::is_same_v<T, Expr::App>) {
          for_each_literal(*n.fn, f);
          for_each_literal(*n.arg, f);
        } else if constexpr (std::is_same_v<T, Expr::PrimOp>) {
          for (const auto& a : n.args) for_each_literal(*a, f);
        } else if constexpr (std::is_same_v<T, Expr::Let>) {
          for_each_literal(*n.bound, f);
          for_each_literal(*n.body, f);
        } else if constexpr (std::is_same_v<T, Expr::Case>) {
          for_each_literal(*n.scrutinee, f);
          for (const auto& b : n.branches) for_each_literal(*b.body, f);
        }
      },
      e.node);
}

template <class F>
void for_each_literal(const Program& p, F&& f) {
  for (const auto& d : p.prelude) for_each_literal(*d.bound, f);
  if (p.main) for_each_literal(*p.main, f);
}

/// Every literal in location order (prelude first).
inline std::vector<NumLiteral> literals(const Program& p) {
  std::vector<NumLiteral> out;
  for_each_literal(p, [&](const NumLiteral& l) { out.push_back(l); });
  return out;
}

/// rho0: every location mapped to its literal value.
inline Substitution initial_substitution(const Program& p) {
  Substitution rho;
  for_each_literal(p, [&](const NumLiteral& l) { rho.push(l.loc.id, l.value); });
  return rho;
}

struct FreezePolicy {
  bool freeze_default = false;  // only thawed (`?`) literals may change
  bool freeze_prelude = true;
};

inline bool is_frozen(const NumLiteral& l, const FreezePolicy& policy) {
  if (l.loc.origin == Origin::Prelude && policy.freeze_prelude) return true;
  if (l.annotation == Annotation::Freeze) return true;
  if (policy.freeze_default) return l.annotation != Annotation::Thaw;
  return false;
}

inline FrozenSet frozen_set(const Program& p, const FreezePolicy& policy = {}) {
  FrozenSet out;
  for_each_literal(p, [&](const NumLiteral& l) {
    if (is_frozen(l, policy)) out.insert(l.loc.id);
  });
  return out;
}

/// Debug names for locations: the alias when it is unambiguous, otherwise "l<id>".
inline LocNamer location_namer(const Program& p) {
  auto counts = std::make_shared<std::unordered_map<std::string, int>>();
  for (const auto& [loc, name] : p.aliases) ++(*counts)[name];
  auto aliases = std::make_shared<std::unordered_map<LocId, std::string>>(p.aliases);
  return [counts, aliases](LocId l) {
    auto it = aliases->find(l);
    if (it != aliases->end() && counts->at(it->second) == 1) return it->second;
    return default_loc_name(l);
  };
}

/// Resolves an alias or "l<id>" spelling back to a location.
inline std::optional<LocId> resolve_location(const Program& p, const std::string& name) {
  if (name.size() > 1 && name[0] == 'l' && name.find_first_not_of("0123456789", 1) == std::string::npos)
    return LocId{static_cast<std::uint32_t>(std::stoul(name.substr(1)))};
  std::optional<LocId> found;
  for (const auto& [loc, alias] : p.aliases) {
    if (alias != name) continue;
    if (found) return std::nullopt;
    found = loc;
  }
  return found;
}

}  // namespace little
