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

#include <cctype>
#include <charconv>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "little/ast.hpp"

namespace little {

namespace detail {

// --- reader: text -> s-expressions ------------------------------------------

struct SExpr {
  enum class Kind { List, Bracket, Number, String, Symbol };

  Kind kind = Kind::Symbol;
  SourcePos pos;
  std::vector<SExpr> items;
  std::ptrdiff_t bar = -1;  // Bracket: index of the first item after '|'

  std::string text;  // Symbol name / String contents
  double number = 0;
  Annotation annotation = Annotation::None;
  std::optional<Range> range;
  SourceSpan span;

  bool is_symbol(std::string_view s) const { return kind == Kind::Symbol && text == s; }
};

class Reader {
 public:
  Reader(std::string_view src, Origin origin) : src_(src), origin_(origin) {}

  std::vector<SExpr> read_all() {
    std::vector<SExpr> out;
    skip_space();
    while (!eof()) {
      out.push_back(read());
      skip_space();
    }
    return out;
  }

 private:
  bool eof() const { return i_ >= src_.size(); }
  char peek(std::size_t k = 0) const { return i_ + k < src_.size() ? src_[i_ + k] : '\0'; }

  SourcePos here() const { return {line_, static_cast<int>(i_ - line_start_) + 1, origin_}; }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, here()); }

  void advance() {
    if (src_[i_] == '\n') {
      ++line_;
      line_start_ = i_ + 1;
    }
    ++i_;
  }

  void skip_space() {
    while (!eof()) {
      char c = peek();
      if (c == ';') {
        while (!eof() && peek() != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  static bool is_delim(char c) {
    return c == '\0' || std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == '[' ||
           c == ']' || c == '|' || c == '\'' || c == ';';
  }

  bool at_lambda() const {
    return peek() == '\\' || (static_cast<unsigned char>(peek()) == 0xCE && static_cast<unsigned char>(peek(1)) == 0xBB);
  }

  bool at_number() const {
    char c = peek();
    auto digit = [](char d) { return std::isdigit(static_cast<unsigned char>(d)) != 0; };
    if (digit(c)) return true;
    if (c == '.' && digit(peek(1))) return true;
    if (c == '-' && (digit(peek(1)) || (peek(1) == '.' && digit(peek(2))))) return true;
    return false;
  }

  SExpr read() {
    SExpr e;
    e.pos = here();
    char c = peek();
    if (c == '(' || c == '[') {
      const char close = c == '(' ? ')' : ']';
      e.kind = c == '(' ? SExpr::Kind::List : SExpr::Kind::Bracket;
      advance();
      for (;;) {
        skip_space();
        if (eof()) throw ParseError(std::string("unterminated '") + c + "'", e.pos);
        if (peek() == close) {
          advance();
          break;
        }
        if (peek() == ')' || peek() == ']') fail(std::string("mismatched '") + peek() + "'");
        if (peek() == '|') {
          if (e.kind != SExpr::Kind::Bracket || e.bar >= 0 || e.items.empty()) fail("unexpected '|'");
          advance();
          e.bar = static_cast<std::ptrdiff_t>(e.items.size());
          continue;
        }
        e.items.push_back(read());
      }
      if (e.bar >= 0 && static_cast<std::size_t>(e.bar) + 1 != e.items.size())
        throw ParseError("expected exactly one expression after '|'", e.pos);
      return e;
    }
    if (c == ')' || c == ']') fail(std::string("unexpected '") + c + "'");
    if (c == '|') fail("unexpected '|'");
    if (c == '\'') return read_string();
    if (at_lambda()) {
      e.kind = SExpr::Kind::Symbol;
      e.text = "\\";
      if (peek() == '\\') {
        advance();
      } else {
        advance();
        advance();
      }
      return e;
    }
    if (at_number()) return read_number();
    e.kind = SExpr::Kind::Symbol;
    // A quote inside a symbol is a prime (x0'); only a leading quote opens a string.
    while (!is_delim(peek()) || (peek() == '\'' && !e.text.empty())) {
      e.text += peek();
      advance();
    }
    if (e.text.empty()) fail("unexpected character");
    return e;
  }

  SExpr read_string() {
    SExpr e;
    e.kind = SExpr::Kind::String;
    e.pos = here();
    advance();
    for (;;) {
      if (eof()) throw ParseError("unterminated string", e.pos);
      char c = peek();
      if (c == '\'') {
        advance();
        break;
      }
      if (c == '\\') {
        advance();
        if (eof()) throw ParseError("unterminated string", e.pos);
        char d = peek();
        e.text += d == 'n' ? '\n' : d;
        advance();
        continue;
      }
      e.text += c;
      advance();
    }
    return e;
  }

  double parse_double(std::string_view s, SourcePos pos) const {
    double v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
      throw ParseError("malformed number '" + std::string(s) + "'", pos);
    return v;
  }

  std::size_t scan_numeral(std::size_t j) const {
    auto digit = [&](std::size_t k) { return k < src_.size() && std::isdigit(static_cast<unsigned char>(src_[k])); };
    if (j < src_.size() && src_[j] == '-') ++j;
    while (digit(j)) ++j;
    if (j < src_.size() && src_[j] == '.') {
      ++j;
      while (digit(j)) ++j;
    }
    if (j < src_.size() && (src_[j] == 'e' || src_[j] == 'E')) {
      std::size_t k = j + 1;
      if (k < src_.size() && (src_[k] == '+' || src_[k] == '-')) ++k;
      if (digit(k)) {
        j = k;
        while (digit(j)) ++j;
      }
    }
    return j;
  }

  SExpr read_number() {
    SExpr e;
    e.kind = SExpr::Kind::Number;
    e.pos = here();
    const std::size_t begin = i_;
    const std::size_t end = scan_numeral(i_);
    e.number = parse_double(src_.substr(begin, end - begin), e.pos);
    e.span = {begin, end};
    while (i_ < end) advance();
    if (peek() == '!') {
      e.annotation = Annotation::Freeze;
      advance();
    } else if (peek() == '?') {
      e.annotation = Annotation::Thaw;
      advance();
    }
    if (peek() == '{') {
      SourcePos rpos = here();
      advance();
      std::size_t close = src_.find('}', i_);
      if (close == std::string_view::npos) throw ParseError("unterminated range annotation", rpos);
      e.range = parse_range(src_.substr(i_, close - i_), rpos);
      while (i_ <= close) advance();
    }
    if (!is_delim(peek())) fail("malformed number");
    return e;
  }

  Range parse_range(std::string_view body, SourcePos pos) const {
    auto trim = [](std::string_view s) {
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
      return s;
    };
    // The separator is the first '-' that is not a leading sign.
    std::size_t k = 0;
    while (k < body.size() && std::isspace(static_cast<unsigned char>(body[k]))) ++k;
    if (k < body.size() && body[k] == '-') ++k;
    std::size_t sep = body.find('-', k);
    while (sep != std::string_view::npos && sep > 0 && (body[sep - 1] == 'e' || body[sep - 1] == 'E'))
      sep = body.find('-', sep + 1);
    if (sep == std::string_view::npos)
      throw ParseError("range annotation must have the form {lo-hi}", pos);
    auto lo_s = trim(body.substr(0, sep));
    auto hi_s = trim(body.substr(sep + 1));
    auto numeric = [](std::string_view s) {
      double v;
      auto r = std::from_chars(s.data(), s.data() + s.size(), v);
      return !s.empty() && r.ec == std::errc{} && r.ptr == s.data() + s.size();
    };
    if (!numeric(lo_s) || !numeric(hi_s))
      throw ParseError("range bounds must be numeric literals (range expressions are not supported)", pos);
    Range r{parse_double(lo_s, pos), parse_double(hi_s, pos)};
    if (r.lo > r.hi) throw ParseError("range annotation has lo > hi", pos);
    return r;
  }

  std::string_view src_;
  Origin origin_;
  std::size_t i_ = 0;
  int line_ = 1;
  std::size_t line_start_ = 0;
};

// --- converter: s-expressions -> core AST -----------------------------------

inline bool is_operator_spelling(std::string_view s) {
  return !s.empty() && s.find_first_not_of("+-*/<>=%^&!~@#$") == std::string_view::npos;
}

class Converter {
 public:
  Converter(Program& program, std::uint32_t& next_loc, std::uint32_t& next_node, Origin origin)
      : program_(program), next_loc_(next_loc), next_node_(next_node), origin_(origin) {}

  ExprPtr expr(const SExpr& s) {
    using K = SExpr::Kind;
    switch (s.kind) {
      case K::Number: {
        NumLiteral lit;
        lit.value = s.number;
        lit.loc = {LocId{next_loc_++}, origin_};
        lit.annotation = s.annotation;
        lit.range = s.range;
        lit.span = s.span;
        return make(Expr::Num{lit}, s.pos);
      }
      case K::String: return make(Expr::Str{s.text}, s.pos);
      case K::Symbol: return symbol(s);
      case K::Bracket: return bracket(s);
      case K::List: return form(s);
    }
    throw ParseError("unreachable", s.pos);
  }

  PatternPtr pattern(const SExpr& s) {
    using K = SExpr::Kind;
    switch (s.kind) {
      case K::Number:
        if (s.annotation != Annotation::None || s.range)
          throw ParseError("annotations are not allowed in patterns", s.pos);
        return pat(Pattern::Num{s.number});
      case K::String: return pat(Pattern::Str{s.text});
      case K::Symbol:
        if (s.text == "true" || s.text == "false") return pat(Pattern::Bool{s.text == "true"});
        if (!is_identifier(s.text)) throw ParseError("invalid pattern variable '" + s.text + "'", s.pos);
        return pat(Pattern::Var{s.text});
      case K::Bracket: {
        if (s.items.empty()) return pat(Pattern::Nil{false});
        const std::size_t n_elems = s.bar >= 0 ? static_cast<std::size_t>(s.bar) : s.items.size();
        PatternPtr tail = s.bar >= 0 ? pattern(s.items.back()) : pat(Pattern::Nil{true});
        std::vector<PatternPtr> elems;
        for (std::size_t i = 0; i < n_elems; ++i) elems.push_back(pattern(s.items[i]));
        for (std::size_t i = n_elems; i-- > 0;)
          tail = pat(Pattern::Cons{elems[i], tail, i == 0 ? ListStyle::Start : ListStyle::Continue});
        return tail;
      }
      case K::List: throw ParseError("unexpected parenthesized pattern", s.pos);
    }
    throw ParseError("unreachable", s.pos);
  }

  /// Top-level forms: definitions followed by (for programs) a main expression.
  ExprPtr program(const std::vector<SExpr>& forms) {
    if (forms.empty()) throw ParseError("empty program", {1, 1, origin_});
    return defs_then(forms, 0);
  }

  std::vector<TopDef> prelude(const std::vector<SExpr>& forms) {
    std::vector<TopDef> out;
    for (const auto& f : forms) {
      if (!is_def(f) || f.items.size() != 3) throw ParseError("prelude may only contain (def p e) forms", f.pos);
      auto p = pattern(f.items[1]);
      check_pattern(*p, f.items[1].pos);
      bool rec = f.items[0].is_symbol("defrec");
      if (rec) check_rec_pattern(*p, f.items[1].pos);
      auto bound = expr(f.items[2]);
      collect_aliases(*p, *bound);
      out.push_back({p, bound, rec, f.pos});
    }
    return out;
  }

 private:
  static bool is_identifier(std::string_view s) {
    if (s.empty()) return false;
    if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    for (char c : s)
      if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'')) return false;
    return true;
  }

  static bool is_def(const SExpr& s) {
    return s.kind == SExpr::Kind::List && !s.items.empty() &&
           (s.items[0].is_symbol("def") || s.items[0].is_symbol("defrec"));
  }

  ExprPtr make(Expr::Node node, SourcePos pos) {
    auto e = std::make_shared<Expr>();
    e->node = std::move(node);
    e->pos = pos;
    e->id = next_node_++;
    return e;
  }

  static PatternPtr pat(Pattern::Cons c) { return std::make_shared<const Pattern>(Pattern{std::move(c)}); }
  template <class T>
  static PatternPtr pat(T node) {
    return std::make_shared<const Pattern>(Pattern{std::move(node)});
  }

  ExprPtr defs_then(const std::vector<SExpr>& forms, std::size_t i) {
    const SExpr& f = forms[i];
    const bool last = i + 1 == forms.size();
    if (is_def(f) && f.items.size() == 3) {
      if (last) throw ParseError("program has no main expression after this definition", f.pos);
      const bool rec = f.items[0].is_symbol("defrec");
      auto p = pattern(f.items[1]);
      check_pattern(*p, f.items[1].pos);
      if (rec) check_rec_pattern(*p, f.items[1].pos);
      auto bound = expr(f.items[2]);
      collect_aliases(*p, *bound);
      auto rest = defs_then(forms, i + 1);
      return make(Expr::Let{p, bound, rest, rec, LetStyle::Def}, f.pos);
    }
    if (!last) throw ParseError("only definitions may precede the main expression", f.pos);
    return expr(f);
  }

  ExprPtr symbol(const SExpr& s) {
    if (s.text == "true" || s.text == "false") return make(Expr::Bool{s.text == "true"}, s.pos);
    if (auto op = op_from_name(s.text)) {
      if (op_arity(*op) == 0) throw ParseError("operator '" + s.text + "' must be applied: (" + s.text + ")", s.pos);
      return make(Expr::OpRef{*op}, s.pos);
    }
    if (is_operator_spelling(s.text)) throw ParseError("unknown primitive '" + s.text + "'", s.pos);
    if (s.text == "\\" || is_keyword(s.text)) throw ParseError("unexpected keyword '" + s.text + "'", s.pos);
    if (!is_identifier(s.text)) throw ParseError("invalid identifier '" + s.text + "'", s.pos);
    return make(Expr::Var{s.text}, s.pos);
  }

  static bool is_keyword(std::string_view s) {
    static const std::set<std::string_view> kw = {"let", "letrec", "def", "defrec", "if", "case"};
    return kw.contains(s);
  }

  ExprPtr bracket(const SExpr& s) {
    if (s.items.empty()) return make(Expr::Nil{false}, s.pos);
    const std::size_t n_elems = s.bar >= 0 ? static_cast<std::size_t>(s.bar) : s.items.size();
    std::vector<ExprPtr> elems;
    for (std::size_t i = 0; i < n_elems; ++i) elems.push_back(expr(s.items[i]));
    ExprPtr tail = s.bar >= 0 ? expr(s.items.back()) : make(Expr::Nil{true}, s.pos);
    for (std::size_t i = n_elems; i-- > 0;)
      tail = make(Expr::Cons{elems[i], tail, i == 0 ? ListStyle::Start : ListStyle::Continue}, s.items[i].pos);
    return tail;
  }

  void expect_arity(const SExpr& s, std::size_t n, const char* shape) {
    if (s.items.size() != n) throw ParseError(std::string("malformed form, expected ") + shape, s.pos);
  }

  ExprPtr form(const SExpr& s) {
    if (s.items.empty()) throw ParseError("empty application ()", s.pos);
    const SExpr& head = s.items[0];
    if (head.kind == SExpr::Kind::Symbol) {
      const std::string& h = head.text;
      if (h == "\\") return lambda(s);
      if (h == "let" || h == "letrec") {
        expect_arity(s, 4, "(let p e1 e2)");
        return let(s, h == "letrec", LetStyle::Let);
      }
      if (h == "def" || h == "defrec") {
        if (s.items.size() == 3) throw ParseError("(def p e) is only allowed at top level", s.pos);
        expect_arity(s, 4, "(def p e1 e2)");
        return let(s, h == "defrec", LetStyle::DefInline);
      }
      if (h == "if") {
        expect_arity(s, 4, "(if e1 e2 e3)");
        auto c = expr(s.items[1]);
        auto a = expr(s.items[2]);
        auto b = expr(s.items[3]);
        std::vector<Branch> br{{pat(Pattern::Bool{true}), a}, {pat(Pattern::Bool{false}), b}};
        return make(Expr::Case{c, std::move(br), CaseStyle::If}, s.pos);
      }
      if (h == "case") return case_of(s);
      if (auto op = op_from_name(h)) {
        const auto want = static_cast<std::size_t>(op_arity(*op));
        if (s.items.size() - 1 != want)
          throw ParseError("operator '" + h + "' expects " + std::to_string(want) + " argument(s)", s.pos);
        std::vector<ExprPtr> args;
        for (std::size_t i = 1; i < s.items.size(); ++i) args.push_back(expr(s.items[i]));
        return make(Expr::PrimOp{*op, std::move(args)}, s.pos);
      }
      if (is_operator_spelling(h)) throw ParseError("unknown primitive '" + h + "'", head.pos);
    }
    if (s.items.size() < 2) throw ParseError("application needs at least one argument", s.pos);
    ExprPtr fn = expr(head);
    for (std::size_t i = 1; i < s.items.size(); ++i) {
      const bool inner = i + 1 < s.items.size();
      fn = make(Expr::App{fn, expr(s.items[i]), inner}, s.pos);
    }
    return fn;
  }

  ExprPtr lambda(const SExpr& s) {
    expect_arity(s, 3, "(\\p e)");
    const SExpr& params = s.items[1];
    std::vector<PatternPtr> ps;
    if (params.kind == SExpr::Kind::List) {
      if (params.items.empty()) throw ParseError("lambda needs at least one parameter", params.pos);
      for (const auto& p : params.items) ps.push_back(pattern(p));
    } else {
      ps.push_back(pattern(params));
    }
    std::set<std::string> seen;
    for (const auto& p : ps) check_pattern(*p, params.pos, &seen);
    ExprPtr body = expr(s.items[2]);
    for (std::size_t i = ps.size(); i-- > 0;) body = make(Expr::Fun{ps[i], body, i > 0}, s.pos);
    return body;
  }

  ExprPtr let(const SExpr& s, bool rec, LetStyle style) {
    auto p = pattern(s.items[1]);
    check_pattern(*p, s.items[1].pos);
    if (rec) check_rec_pattern(*p, s.items[1].pos);
    auto bound = expr(s.items[2]);
    collect_aliases(*p, *bound);
    auto body = expr(s.items[3]);
    return make(Expr::Let{p, bound, body, rec, style}, s.pos);
  }

  ExprPtr case_of(const SExpr& s) {
    if (s.items.size() < 3) throw ParseError("case needs a scrutinee and at least one branch", s.pos);
    auto scrut = expr(s.items[1]);
    std::vector<Branch> branches;
    for (std::size_t i = 2; i < s.items.size(); ++i) {
      const SExpr& b = s.items[i];
      if (b.kind != SExpr::Kind::List || b.items.size() != 2) throw ParseError("case branch must be (p e)", b.pos);
      auto p = pattern(b.items[0]);
      check_pattern(*p, b.items[0].pos);
      branches.push_back({p, expr(b.items[1])});
    }
    return make(Expr::Case{scrut, std::move(branches), CaseStyle::Case}, s.pos);
  }

  void check_pattern(const Pattern& p, SourcePos pos, std::set<std::string>* seen_in = nullptr) {
    std::set<std::string> local;
    std::set<std::string>& seen = seen_in ? *seen_in : local;
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Pattern::Var>) {
            if (n.name != "_" && !seen.insert(n.name).second)
              throw ParseError("duplicate pattern variable '" + n.name + "'", pos);
          } else if constexpr (std::is_same_v<T, Pattern::Cons>) {
            check_pattern(*n.head, pos, &seen);
            check_pattern(*n.tail, pos, &seen);
          }
        },
        p.node);
  }

  static void check_rec_pattern(const Pattern& p, SourcePos pos) {
    if (!std::holds_alternative<Pattern::Var>(p.node))
      throw ParseError("recursive bindings must bind a single variable", pos);
  }

  void collect_aliases(const Pattern& p, const Expr& e) {
    if (const auto* v = std::get_if<Pattern::Var>(&p.node)) {
      if (const auto* n = std::get_if<Expr::Num>(&e.node)) program_.aliases[n->lit.loc.id] = v->name;
      return;
    }
    const auto* pc = std::get_if<Pattern::Cons>(&p.node);
    const auto* ec = std::get_if<Expr::Cons>(&e.node);
    if (pc && ec) {
      collect_aliases(*pc->head, *ec->head);
      collect_aliases(*pc->tail, *ec->tail);
    }
  }

  Program& program_;
  std::uint32_t& next_loc_;
  std::uint32_t& next_node_;
  Origin origin_;
};

}  // namespace detail

/// Parses `source` against `prelude_source`. Locations are numbered in source
/// order, prelude first, starting at 1.
inline Program parse_program(std::string_view source, std::string_view prelude_source) {
  Program program;
  program.source = std::string(source);
  program.prelude_source = std::string(prelude_source);
  std::uint32_t next_loc = 1;
  std::uint32_t next_node = 1;
  {
    detail::Reader reader(program.prelude_source, Origin::Prelude);
    auto forms = reader.read_all();
    detail::Converter conv(program, next_loc, next_node, Origin::Prelude);
    program.prelude = conv.prelude(forms);
  }
  detail::Reader reader(program.source, Origin::UserProgram);
  auto forms = reader.read_all();
  detail::Converter conv(program, next_loc, next_node, Origin::UserProgram);
  program.main = conv.program(forms);
  return program;
}

}  // namespace little
