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

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "little/substitution.hpp"
#include "little/trace.hpp"

namespace little {

// Univariate solving of value-trace equations n = t for one location l.

enum class FailReason : std::uint8_t {
  LocAbsent,            // l does not occur (or is frozen)
  MultipleOccurrences,  // single-occurrence solver only
  NotAdditionOnly,      // addition-only solver only
  NonInvertibleOp,
  DomainError,
};

inline const char* reason_name(FailReason r) {
  switch (r) {
    case FailReason::LocAbsent: return "LocAbsent";
    case FailReason::MultipleOccurrences: return "MultipleOccurrences";
    case FailReason::NotAdditionOnly: return "NotAdditionOnly";
    case FailReason::NonInvertibleOp: return "NonInvertibleOp";
    case FailReason::DomainError: return "DomainError";
  }
  return "?";
}

struct SolveResult {
  std::optional<double> value;
  std::vector<FailReason> reasons;  // empty on success

  static SolveResult ok(double v) { return {v, {}}; }
  static SolveResult fail(FailReason r) { return {std::nullopt, {r}}; }

  explicit operator bool() const { return value.has_value(); }
  bool failed_with(FailReason r) const {
    for (auto x : reasons)
      if (x == r) return true;
    return false;
  }
};

inline constexpr double kMinDivisor = 1e-12;

struct PlusCount {
  double c = 0;  // occurrences of l
  double s = 0;  // sum of the other leaves under rho
};

/// Occurrence count and partial sum for an addition-only trace; nullopt if t
/// uses any operator other than +. Throws UnboundLocationError for an unbound
/// leaf other than l.
inline std::optional<PlusCount> count_plus(const Substitution& rho, LocId l, const Trace& t) {
  if (t.is_loc()) {
    if (t.loc() == l) return PlusCount{1, 0};
    auto v = rho.lookup(t.loc());
    if (!v) throw UnboundLocationError("unbound location " + default_loc_name(t.loc()));
    return PlusCount{0, *v};
  }
  if (t.op() != Op::Plus) return std::nullopt;
  auto a = count_plus(rho, l, *t.args()[0]);
  if (!a) return std::nullopt;
  auto b = count_plus(rho, l, *t.args()[1]);
  if (!b) return std::nullopt;
  return PlusCount{a->c + b->c, a->s + b->s};
}

namespace detail {

inline SolveResult finite_or_domain(double v) {
  return std::isfinite(v) ? SolveResult::ok(v) : SolveResult::fail(FailReason::DomainError);
}

/// Value x with op(x) = n.
inline SolveResult invert_unary(Op op, double n) {
  switch (op) {
    case Op::Cos:
      if (n < -1 || n > 1) return SolveResult::fail(FailReason::DomainError);
      return finite_or_domain(std::acos(n));
    case Op::Sin:
      if (n < -1 || n > 1) return SolveResult::fail(FailReason::DomainError);
      return finite_or_domain(std::asin(n));
    case Op::Arccos:
      if (n < 0 || n > std::numbers::pi) return SolveResult::fail(FailReason::DomainError);
      return finite_or_domain(std::cos(n));
    case Op::Arcsin:
      if (n < -std::numbers::pi / 2 || n > std::numbers::pi / 2) return SolveResult::fail(FailReason::DomainError);
      return finite_or_domain(std::sin(n));
    case Op::Sqrt:
      if (n < 0) return SolveResult::fail(FailReason::DomainError);
      return finite_or_domain(n * n);
    default: return SolveResult::fail(FailReason::NonInvertibleOp);
  }
}

/// Value x with op(n1, x) = n (the unknown is the right operand).
inline SolveResult invert_left(Op op, double n1, double n) {
  switch (op) {
    case Op::Plus: return finite_or_domain(n - n1);
    case Op::Minus: return finite_or_domain(n1 - n);
    case Op::Mult:
      if (std::abs(n1) < kMinDivisor) return SolveResult::fail(FailReason::DomainError);
      return finite_or_domain(n / n1);
    case Op::Div:
      if (std::abs(n) < kMinDivisor || std::abs(n1) < kMinDivisor) return SolveResult::fail(FailReason::DomainError);
      return finite_or_domain(n1 / n);
    case Op::Pow:
      if (n1 <= 0 || n1 == 1 || n <= 0) return SolveResult::fail(FailReason::DomainError);
      return finite_or_domain(std::log(n) / std::log(n1));
    default: return SolveResult::fail(FailReason::NonInvertibleOp);
  }
}

/// Value x with op(x, n2) = n (the unknown is the left operand).
inline SolveResult invert_right(Op op, double n2, double n) {
  switch (op) {
    case Op::Plus: return finite_or_domain(n - n2);
    case Op::Minus: return finite_or_domain(n + n2);
    case Op::Mult:
      if (std::abs(n2) < kMinDivisor) return SolveResult::fail(FailReason::DomainError);
      return finite_or_domain(n / n2);
    case Op::Div:
      if (std::abs(n2) < kMinDivisor) return SolveResult::fail(FailReason::DomainError);
      return finite_or_domain(n * n2);
    case Op::Pow:
      if (n <= 0 || std::abs(n2) < kMinDivisor) return SolveResult::fail(FailReason::DomainError);
      return finite_or_domain(std::pow(n, 1 / n2));
    default: return SolveResult::fail(FailReason::NonInvertibleOp);
  }
}

inline bool invertible_unary(Op op) {
  return op == Op::Cos || op == Op::Sin || op == Op::Arccos || op == Op::Arcsin || op == Op::Sqrt;
}
inline bool invertible_binary(Op op) {
  return op == Op::Plus || op == Op::Minus || op == Op::Mult || op == Op::Div || op == Op::Pow;
}

/// One inversion step: target for the single child of `t` that contains l.
/// `side` is the index of that child.
inline SolveResult peel(const Substitution& rho, const Trace& t, std::size_t side, double n) {
  const auto& args = t.args();
  if (args.size() == 1) return invert_unary(t.op(), n);
  if (!invertible_binary(t.op())) return SolveResult::fail(FailReason::NonInvertibleOp);
  double other = 0;
  try {
    other = eval_trace(rho, *args[1 - side]);
  } catch (const UnboundLocationError&) {
    throw;
  } catch (const TraceEvalError&) {
    return SolveResult::fail(FailReason::DomainError);
  }
  return side == 1 ? invert_left(t.op(), other, n) : invert_right(t.op(), other, n);
}

inline SolveResult solve_b_rec(const Substitution& rho, LocId l, double n, const Trace& t) {
  if (t.is_loc()) return SolveResult::ok(n);
  const auto& args = t.args();
  std::size_t side = 0;
  while (side < args.size() && occurrences(*args[side], l) == 0) ++side;
  auto next = peel(rho, t, side, n);
  if (!next) return next;
  return solve_b_rec(rho, l, *next.value, *args[side]);
}

inline SolveResult solve_nested_rec(const Substitution& rho, LocId l, double n, const Trace& t) {
  if (auto pc = count_plus(rho, l, t)) {
    if (pc->c == 0) return SolveResult::fail(FailReason::LocAbsent);
    return finite_or_domain((n - pc->s) / pc->c);
  }
  const auto& args = t.args();
  std::size_t side = args.size();
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (occurrences(*args[i], l) == 0) continue;
    if (side != args.size()) return SolveResult::fail(FailReason::MultipleOccurrences);
    side = i;
  }
  if (side == args.size()) return SolveResult::fail(FailReason::LocAbsent);
  auto next = peel(rho, t, side, n);
  if (!next) return next;
  return solve_nested_rec(rho, l, *next.value, *args[side]);
}

}  // namespace detail

/// Addition-only solver: (n - s) / c.
inline SolveResult solve_a(const Substitution& rho, LocId l, double n, const Trace& t) {
  auto pc = count_plus(rho, l, t);
  if (!pc) return SolveResult::fail(FailReason::NotAdditionOnly);
  if (pc->c == 0) return SolveResult::fail(FailReason::LocAbsent);
  return detail::finite_or_domain((n - pc->s) / pc->c);
}

/// Single-occurrence solver: invert operators top-down along the path to l.
inline SolveResult solve_b(const Substitution& rho, LocId l, double n, const Trace& t) {
  const auto occ = occurrences(t, l);
  if (occ == 0) return SolveResult::fail(FailReason::LocAbsent);
  if (occ > 1) return SolveResult::fail(FailReason::MultipleOccurrences);
  return detail::solve_b_rec(rho, l, n, t);
}

/// Mixed solver: invert operators while l is confined to one operand, then
/// finish with the addition-only solver. Covers traces such as
/// (+ x0 (* (+ l1 (+ l1 l0)) sep)) where l1 occurs twice below a *.
inline SolveResult solve_nested(const Substitution& rho, LocId l, double n, const Trace& t) {
  return detail::solve_nested_rec(rho, l, n, t);
}

/// Tries the addition-only, single-occurrence and mixed solvers in turn.
/// Frozen locations are treated as absent.
inline SolveResult solve(const Substitution& rho, LocId l, double n, const Trace& t, const FrozenSet* frozen = nullptr) {
  if (frozen && frozen->contains(l)) return SolveResult::fail(FailReason::LocAbsent);
  SolveResult out;
  for (auto route : {solve_a, solve_b, solve_nested}) {
    auto r = route(rho, l, n, t);
    if (r) return r;
    for (auto reason : r.reasons) {
      bool seen = false;
      for (auto x : out.reasons) seen = seen || x == reason;
      if (!seen) out.reasons.push_back(reason);
    }
  }
  return out;
}

/// Which solver route applies syntactically to (l, t), ignoring numeric domains.
enum class Fragment : std::uint8_t { None, AdditionOnly, SingleOccurrence, Mixed };

namespace detail {

inline bool addition_only(const Trace& t) {
  if (t.is_loc()) return true;
  if (t.op() != Op::Plus) return false;
  return addition_only(*t.args()[0]) && addition_only(*t.args()[1]);
}

inline bool invertible_path(LocId l, const Trace& t, bool allow_sum) {
  if (t.is_loc()) return true;
  if (allow_sum && addition_only(t)) return true;
  const auto& args = t.args();
  std::size_t side = args.size();
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (occurrences(*args[i], l) == 0) continue;
    if (side != args.size()) return false;
    side = i;
  }
  if (side == args.size()) return false;
  const bool ok = args.size() == 1 ? invertible_unary(t.op()) : invertible_binary(t.op());
  return ok && invertible_path(l, *args[side], allow_sum);
}

}  // namespace detail

inline Fragment fragment_of(LocId l, const Trace& t) {
  const auto occ = occurrences(t, l);
  if (occ == 0) return Fragment::None;
  if (detail::addition_only(t)) return Fragment::AdditionOnly;
  if (occ == 1 && detail::invertible_path(l, t, false)) return Fragment::SingleOccurrence;
  if (detail::invertible_path(l, t, true)) return Fragment::Mixed;
  return Fragment::None;
}

inline bool in_fragment(LocId l, const Trace& t) { return fragment_of(l, t) != Fragment::None; }

}  // namespace little
