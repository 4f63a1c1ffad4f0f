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
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "little/little.hpp"

#ifndef LITTLE_CORPUS
#error "LITTLE_CORPUS must point at the bundled corpus directory"
#endif

namespace little::testing {

inline std::string read_corpus(const std::string& name) {
  std::ifstream in(std::string(LITTLE_CORPUS) + "/" + name, std::ios::binary);
  if (!in) throw std::runtime_error("missing corpus file " + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::vector<std::string> corpus_files() {
  std::vector<std::string> out;
  for (const auto& e : std::filesystem::directory_iterator(LITTLE_CORPUS))
    if (e.path().extension() == ".little") out.push_back(e.path().filename().string());
  std::sort(out.begin(), out.end());
  return out;
}

inline Program load(const std::string& name) { return parse_program(read_corpus(name), kPrelude); }

inline Program parse(std::string_view src) { return parse_program(src, kPrelude); }

/// Location of the unique literal aliased to `name`.
inline LocId loc(const Program& p, const std::string& name) {
  auto l = resolve_location(p, name);
  if (!l) throw std::runtime_error("no location named " + name);
  return *l;
}

/// The n-th (0-based) literal of the user program.
inline NumLiteral user_literal(const Program& p, std::size_t n) {
  std::vector<NumLiteral> user;
  for (const auto& l : literals(p))
    if (l.loc.origin == Origin::UserProgram) user.push_back(l);
  return user.at(n);
}

/// Literals of the prelude definition bound to `def_name`, in order.
inline std::vector<NumLiteral> prelude_literals(const Program& p, const std::string& def_name) {
  for (const auto& d : p.prelude) {
    const auto* v = std::get_if<Pattern::Var>(&d.pattern->node);
    if (!v || v->name != def_name) continue;
    std::vector<NumLiteral> out;
    for_each_literal(*d.bound, [&](const NumLiteral& l) { out.push_back(l); });
    return out;
  }
  throw std::runtime_error("no prelude definition " + def_name);
}

inline double num(const ValuePtr& v) { return v->as<Value::Num>()->n; }

}  // namespace little::testing
