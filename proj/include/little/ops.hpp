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

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <string_view>

namespace little {

enum class Op : std::uint8_t {
  Pi,
  Not,
  Cos,
  Sin,
  Arccos,
  Arcsin,
  Round,
  Floor,
  Ceiling,
  Sqrt,
  ToString,
  Plus,
  Minus,
  Mult,
  Div,
  Lt,
  Gt,
  Le,
  Ge,
  Eq,
  Mod,
  Pow,
  Arctan2,
};

struct OpInfo {
  Op op;
  std::string_view name;
  int arity;
  bool numeric;  // result is a traced number when applied to numbers
};

inline constexpr std::array<OpInfo, 23> kOps = {{
    {Op::Pi, "pi", 0, true},
    {Op::Not, "not", 1, false},
    {Op::Cos, "cos", 1, true},
    {Op::Sin, "sin", 1, true},
    {Op::Arccos, "arccos", 1, true},
    {Op::Arcsin, "arcsin", 1, true},
    {Op::Round, "round", 1, true},
    {Op::Floor, "floor", 1, true},
    {Op::Ceiling, "ceiling", 1, true},
    {Op::Sqrt, "sqrt", 1, true},
    {Op::ToString, "toString", 1, false},
    {Op::Plus, "+", 2, true},
    {Op::Minus, "-", 2, true},
    {Op::Mult, "*", 2, true},
    {Op::Div, "/", 2, true},
    {Op::Lt, "<", 2, false},
    {Op::Gt, ">", 2, false},
    {Op::Le, "<=", 2, false},
    {Op::Ge, ">=", 2, false},
    {Op::Eq, "=", 2, false},
    {Op::Mod, "mod", 2, true},
    {Op::Pow, "pow", 2, true},
    {Op::Arctan2, "arctan2", 2, true},
}};

inline constexpr const OpInfo& op_info(Op op) { return kOps[static_cast<std::size_t>(op)]; }
inline constexpr std::string_view op_name(Op op) { return op_info(op).name; }
inline constexpr int op_arity(Op op) { return op_info(op).arity; }

inline std::optional<Op> op_from_name(std::string_view name) {
  for (const auto& info : kOps)
    if (info.name == name) return info.op;
  return std::nullopt;
}

/// Numeric interpretation of an operator that yields a number. Rounding is half-up.
inline double apply_numeric_op(Op op, std::span<const double> a) {
  switch (op) {
    case Op::Pi: return std::numbers::pi;
    case Op::Cos: return std::cos(a[0]);
    case Op::Sin: return std::sin(a[0]);
    case Op::Arccos: return std::acos(a[0]);
    case Op::Arcsin: return std::asin(a[0]);
    case Op::Round: return std::floor(a[0] + 0.5);
    case Op::Floor: return std::floor(a[0]);
    case Op::Ceiling: return std::ceil(a[0]);
    case Op::Sqrt: return std::sqrt(a[0]);
    case Op::Plus: return a[0] + a[1];
    case Op::Minus: return a[0] - a[1];
    case Op::Mult: return a[0] * a[1];
    case Op::Div: return a[0] / a[1];
    case Op::Mod: return std::fmod(a[0], a[1]);
    case Op::Pow: return std::pow(a[0], a[1]);
    case Op::Arctan2: return std::atan2(a[0], a[1]);
    default: return std::nan("");
  }
}

}  // namespace little
