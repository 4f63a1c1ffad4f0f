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
#include <string>
#include <vector>

#include "little/ast.hpp"
#include "little/parser.hpp"

namespace little {

namespace detail {

inline std::string quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out + "'";
}

inline std::string literal_text(const NumLiteral& l) {
  std::string s = format_number(l.value);
  if (l.annotation == Annotation::Freeze) s += '!';
  if (l.annotation == Annotation::Thaw) s += '?';
  if (l.range) s += "{" + format_number(l.range->lo) + "-" + format_number(l.range->hi) + "}";
  return s;
}

inline std::string pattern_text(const Pattern& p) {
  return std::visit(
      [&](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Pattern::Var>) {
          return n.name;
        } else if constexpr (std::is_same_v<T, Pattern::Num>) {
          return format_number(n.value);
        } else if constexpr (std::is_same_v<T, Pattern::Str>) {
          return quote(n.value);
        } else if constexpr (std::is_same_v<T, Pattern::Bool>) {
          return n.value ? "true" : "false";
        } else if constexpr (std::is_same_v<T, Pattern::Nil>) {
          return "[]";
        } else {
          std::string s = "[" + pattern_text(*n.head);
          const Pattern* tail = n.tail.get();
          for (;;) {
            const auto* c = std::get_if<Pattern::Cons>(&tail->node);
            if (!c || c->style != ListStyle::Continue) break;
            s += " " + pattern_text(*c->head);
            tail = c->tail.get();
          }
          const auto* nil = std::get_if<Pattern::Nil>(&tail->node);
          if (!(nil && nil->implicit)) s += " | " + pattern_text(*tail);
          return s + "]";
        }
      },
      p.node);
}

class Printer {
 public:
  std::string top(const Expr& e) {
    std::string out;
    const Expr* cur = &e;
    for (;;) {
      const auto* let = std::get_if<Expr::Let>(&cur->node);
      if (!let || let->style != LetStyle::Def) break;
      out += std::string(let->rec ? "(defrec " : "(def ") + pattern_text(*let->pattern) + " " +
             expr(*let->bound) + ")\n";
      cur = let->body.get();
    }
    return out + expr(*cur) + "\n";
  }

  std::string expr(const Expr& e) {
    return std::visit([&](const auto& n) { return node(n); }, e.node);
  }

 private:
  std::string node(const Expr::Num& n) { return literal_text(n.lit); }
  std::string node(const Expr::Str& n) { return quote(n.value); }
  std::string node(const Expr::Bool& n) { return n.value ? "true" : "false"; }
  std::string node(const Expr::Nil&) { return "[]"; }
  std::string node(const Expr::Var& n) { return n.name; }
  std::string node(const Expr::OpRef& n) { return std::string(op_name(n.op)); }

  std::string node(const Expr::Cons& n) {
    std::string s = "[" + expr(*n.head);
    const Expr* tail = n.tail.get();
    for (;;) {
      const auto* c = std::get_if<Expr::Cons>(&tail->node);
      if (!c || c->style != ListStyle::Continue) break;
      s += " " + expr(*c->head);
      tail = c->tail.get();
    }
    const auto* nil = std::get_if<Expr::Nil>(&tail->node);
    if (!(nil && nil->implicit)) s += " | " + expr(*tail);
    return s + "]";
  }

  std::string node(const Expr::Fun& n) {
    std::vector<const Pattern*> params{n.param.get()};
    const Expr* body = n.body.get();
    for (;;) {
      const auto* f = std::get_if<Expr::Fun>(&body->node);
      if (!f || !f->continues) break;
      params.push_back(f->param.get());
      body = f->body.get();
    }
    std::string ps;
    if (params.size() == 1) {
      ps = pattern_text(*params[0]);
    } else {
      ps = "(";
      for (std::size_t i = 0; i < params.size(); ++i) ps += (i ? " " : "") + pattern_text(*params[i]);
      ps += ")";
    }
    return "(\\" + ps + " " + expr(*body) + ")";
  }

  std::string node(const Expr::App& n) {
    std::vector<const Expr*> args{n.arg.get()};
    const Expr* fn = n.fn.get();
    for (;;) {
      const auto* a = std::get_if<Expr::App>(&fn->node);
      if (!a || !a->inner) break;
      args.push_back(a->arg.get());
      fn = a->fn.get();
    }
    std::string s = "(" + expr(*fn);
    for (auto it = args.rbegin(); it != args.rend(); ++it) s += " " + expr(**it);
    return s + ")";
  }

  std::string node(const Expr::PrimOp& n) {
    std::string s = "(" + std::string(op_name(n.op));
    for (const auto& a : n.args) s += " " + expr(*a);
    return s + ")";
  }

  std::string node(const Expr::Let& n) {
    std::string kw;
    if (n.style == LetStyle::Let)
      kw = n.rec ? "letrec" : "let";
    else
      kw = n.rec ? "defrec" : "def";
    return "(" + kw + " " + pattern_text(*n.pattern) + " " + expr(*n.bound) + " " + expr(*n.body) + ")";
  }

  std::string node(const Expr::Case& n) {
    if (n.style == CaseStyle::If && n.branches.size() == 2)
      return "(if " + expr(*n.scrutinee) + " " + expr(*n.branches[0].body) + " " + expr(*n.branches[1].body) + ")";
    std::string s = "(case " + expr(*n.scrutinee);
    for (const auto& b : n.branches) s += " (" + pattern_text(*b.pattern) + " " + expr(*b.body) + ")";
    return s + ")";
  }
};

}  // namespace detail

/// Canonical concrete syntax for an expression. Comments and layout are not kept.
inline std::string unparse(const Expr& e) { return detail::Printer{}.expr(e); }

/// Canonical concrete syntax for the user program (top-level defs one per line).
inline std::string unparse(const Program& p) { return detail::Printer{}.top(*p.main); }

inline std::string unparse_pattern(const Pattern& p) { return detail::pattern_text(p); }

// --- substitution application ------------------------------------------------

inline ExprPtr apply_substitution(const Substitution& rho, const ExprPtr& e) {
  if (rho.empty()) return e;
  auto sub = [&](const ExprPtr& x) { return apply_substitution(rho, x); };
  auto rebuilt = std::make_shared<Expr>(*e);
  std::visit(
      [&](auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Expr::Num>) {
          if (auto v = rho.lookup(n.lit.loc.id)) n.lit.value = *v;
        } else if constexpr (std::is_same_v<T, Expr::Cons>) {
          n.head = sub(n.head);
          n.tail = sub(n.tail);
        } else if constexpr (std::is_same_v<T, Expr::Fun>) {
          n.body = sub(n.body);
        } else if constexpr (std::is_same_v<T, Expr::App>) {
          n.fn = sub(n.fn);
          n.arg = sub(n.arg);
        } else if constexpr (std::is_same_v<T, Expr::PrimOp>) {
          for (auto& a : n.args) a = sub(a);
        } else if constexpr (std::is_same_v<T, Expr::Let>) {
          n.bound = sub(n.bound);
          n.body = sub(n.body);
        } else if constexpr (std::is_same_v<T, Expr::Case>) {
          n.scrutinee = sub(n.scrutinee);
          for (auto& b : n.branches) b.body = sub(b.body);
        }
      },
      rebuilt->node);
  return rebuilt;
}

namespace detail {

inline std::string rewrite_spans(const std::string& source, const std::vector<NumLiteral>& lits,
                                 const Substitution& rho) {
  struct Edit {
    SourceSpan span;
    std::string text;
  };
  std::vector<Edit> edits;
  for (const auto& l : lits) {
    auto v = rho.lookup(l.loc.id);
    if (!v || *v == l.value) continue;
    edits.push_back({l.span, format_number(*v)});
  }
  std::sort(edits.begin(), edits.end(), [](const Edit& a, const Edit& b) { return a.span.begin > b.span.begin; });
  std::string out = source;
  for (const auto& ed : edits) out.replace(ed.span.begin, ed.span.end - ed.span.begin, ed.text);
  return out;
}

inline std::vector<NumLiteral> literals_from(const Program& p, Origin origin) {
  std::vector<NumLiteral> out;
  for_each_literal(p, [&](const NumLiteral& l) {
    if (l.loc.origin == origin) out.push_back(l);
  });
  return out;
}

}  // namespace detail

/// User source text with each literal bound by rho replaced by its new value.
/// Comments, layout and annotations are kept; unchanged literals keep their spelling.
inline std::string rewrite_literals(const Program& p, const Substitution& rho) {
  return detail::rewrite_spans(p.source, detail::literals_from(p, Origin::UserProgram), rho);
}

inline std::string rewrite_prelude_literals(const Program& p, const Substitution& rho) {
  return detail::rewrite_spans(p.prelude_source, detail::literals_from(p, Origin::Prelude), rho);
}

/// Applies rho to every literal of the program, prelude included. Both source
/// texts are rewritten and reparsed, so locations and node ids are unchanged.
inline Program apply_substitution(const Substitution& rho, const Program& p) {
  if (rho.empty()) return p;
  return parse_program(rewrite_literals(p, rho), rewrite_prelude_literals(p, rho));
}

/// Expression-level substitution over the whole program without touching the
/// source text. Cheaper than apply_substitution; spans become stale.
inline Program substitute_ast(const Substitution& rho, const Program& p) {
  Program out = p;
  for (auto& d : out.prelude) d.bound = apply_substitution(rho, d.bound);
  out.main = apply_substitution(rho, p.main);
  return out;
}

// --- structural equality ----------------------------------------------------

inline bool pattern_equal(const Pattern& a, const Pattern& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b.node);
        if constexpr (std::is_same_v<T, Pattern::Var>) {
          return x.name == y.name;
        } else if constexpr (std::is_same_v<T, Pattern::Num> || std::is_same_v<T, Pattern::Str> ||
                             std::is_same_v<T, Pattern::Bool>) {
          return x.value == y.value;
        } else if constexpr (std::is_same_v<T, Pattern::Nil>) {
          return x.implicit == y.implicit;
        } else {
          return x.style == y.style && pattern_equal(*x.head, *y.head) && pattern_equal(*x.tail, *y.tail);
        }
      },
      a.node);
}

/// Same tree, same literals (value, location, annotations) and same node ids.
inline bool expr_equal(const Expr& a, const Expr& b) {
  if (a.id != b.id || a.node.index() != b.node.index()) return false;
  auto eq = [](const ExprPtr& x, const ExprPtr& y) { return expr_equal(*x, *y); };
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b.node);
        if constexpr (std::is_same_v<T, Expr::Num>) {
          const auto &l = x.lit, &r = y.lit;
          if (l.value != r.value || !(l.loc == r.loc) || l.annotation != r.annotation) return false;
          if (l.range.has_value() != r.range.has_value()) return false;
          return !l.range || (l.range->lo == r.range->lo && l.range->hi == r.range->hi);
        } else if constexpr (std::is_same_v<T, Expr::Str> || std::is_same_v<T, Expr::Bool>) {
          return x.value == y.value;
        } else if constexpr (std::is_same_v<T, Expr::Nil>) {
          return x.implicit == y.implicit;
        } else if constexpr (std::is_same_v<T, Expr::Cons>) {
          return x.style == y.style && eq(x.head, y.head) && eq(x.tail, y.tail);
        } else if constexpr (std::is_same_v<T, Expr::Var>) {
          return x.name == y.name;
        } else if constexpr (std::is_same_v<T, Expr::OpRef>) {
          return x.op == y.op;
        } else if constexpr (std::is_same_v<T, Expr::Fun>) {
          return x.continues == y.continues && pattern_equal(*x.param, *y.param) && eq(x.body, y.body);
        } else if constexpr (std::is_same_v<T, Expr::App>) {
          return x.inner == y.inner && eq(x.fn, y.fn) && eq(x.arg, y.arg);
        } else if constexpr (std::is_same_v<T, Expr::PrimOp>) {
          if (x.op != y.op || x.args.size() != y.args.size()) return false;
          for (std::size_t i = 0; i < x.args.size(); ++i)
            if (!eq(x.args[i], y.args[i])) return false;
          return true;
        } else if constexpr (std::is_same_v<T, Expr::Let>) {
          return x.rec == y.rec && x.style == y.style && pattern_equal(*x.pattern, *y.pattern) &&
                 eq(x.bound, y.bound) && eq(x.body, y.body);
        } else {
          if (x.style != y.style || x.branches.size() != y.branches.size() || !eq(x.scrutinee, y.scrutinee))
            return false;
          for (std::size_t i = 0; i < x.branches.size(); ++i)
            if (!pattern_equal(*x.branches[i].pattern, *y.branches[i].pattern) ||
                !eq(x.branches[i].body, y.branches[i].body))
              return false;
          return true;
        }
      },
      a.node);
}

inline bool program_equal(const Program& a, const Program& b) {
  if (a.prelude.size() != b.prelude.size()) return false;
  for (std::size_t i = 0; i < a.prelude.size(); ++i) {
    const auto &x = a.prelude[i], &y = b.prelude[i];
    if (x.rec != y.rec || !pattern_equal(*x.pattern, *y.pattern) || !expr_equal(*x.bound, *y.bound)) return false;
  }
  return expr_equal(*a.main, *b.main);
}

}  // namespace little
