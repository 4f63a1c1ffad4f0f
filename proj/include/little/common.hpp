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

#include <charconv>
#include <compare>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <system_error>

namespace little {

/// Parser-assigned identity of a numeric literal.
struct LocId {
  std::uint32_t value = 0;

  friend constexpr auto operator<=>(LocId, LocId) = default;
};

enum class Origin : std::uint8_t { Prelude, UserProgram };

struct Location {
  LocId id;
  Origin origin = Origin::UserProgram;

  friend constexpr bool operator==(const Location&, const Location&) = default;
};

struct SourcePos {
  int line = 0;  // 1-based; 0 means unknown
  int column = 0;
  Origin origin = Origin::UserProgram;

  std::string str() const {
    if (line == 0) return "?";
    std::string s = origin == Origin::Prelude ? "prelude:" : "";
    return s + std::to_string(line) + ":" + std::to_string(column);
  }
};

/// Base of every error the library raises. Carries the nearest source position.
class LittleError : public std::runtime_error {
 public:
  LittleError(const std::string& what, SourcePos pos)
      : std::runtime_error(pos.line ? pos.str() + ": " + what : what), pos_(pos), message_(what) {}

  const SourcePos& pos() const { return pos_; }
  const std::string& message() const { return message_; }

 private:
  SourcePos pos_;
  std::string message_;
};

class ParseError : public LittleError {
  using LittleError::LittleError;
};

class EvalError : public LittleError {
  using LittleError::LittleError;
};

class SvgError : public LittleError {
 public:
  explicit SvgError(const std::string& what) : LittleError(what, {}) {}
};

/// Shortest decimal that reads back as the same double; integers have no decimal point.
inline std::string format_number(double n) {
  if (n == 0) return "0";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, n);
  if (res.ec != std::errc{}) return std::to_string(n);
  return std::string(buf, res.ptr);
}

}  // namespace little

template <>
struct std::hash<little::LocId> {
  std::size_t operator()(little::LocId l) const noexcept { return std::hash<std::uint32_t>{}(l.value); }
};
