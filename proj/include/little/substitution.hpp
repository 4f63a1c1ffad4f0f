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

#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "little/common.hpp"

namespace little {

struct Binding {
  LocId loc;
  double value = 0;

  friend bool operator==(const Binding&, const Binding&) = default;
};

/// Ordered location -> number bindings. Bindings apply left to right, so the
/// rightmost binding of a location wins.
class Substitution {
 public:
  Substitution() = default;
  Substitution(std::initializer_list<Binding> init) {
    for (const auto& b : init) push(b.loc, b.value);
  }

  /// rho (+) (loc -> value)
  void push(LocId loc, double value) {
    bindings_.push_back({loc, value});
    effective_[loc] = value;
  }

  Substitution plus(LocId loc, double value) const {
    Substitution out = *this;
    out.push(loc, value);
    return out;
  }

  void append(const Substitution& other) {
    for (const auto& b : other.bindings_) push(b.loc, b.value);
  }

  std::optional<double> lookup(LocId loc) const {
    auto it = effective_.find(loc);
    if (it == effective_.end()) return std::nullopt;
    return it->second;
  }

  bool binds(LocId loc) const { return effective_.contains(loc); }

  const std::vector<Binding>& bindings() const { return bindings_; }
  std::size_t size() const { return bindings_.size(); }
  bool empty() const { return bindings_.empty(); }

  /// Bindings added after the first `prefix` ones.
  std::vector<Binding> suffix(std::size_t prefix) const {
    if (prefix >= bindings_.size()) return {};
    return {bindings_.begin() + static_cast<std::ptrdiff_t>(prefix), bindings_.end()};
  }

 private:
  std::vector<Binding> bindings_;
  std::unordered_map<LocId, double> effective_;
};

/// Locations synthesis must never change.
class FrozenSet {
 public:
  FrozenSet() = default;
  explicit FrozenSet(std::unordered_set<LocId> locs) : locs_(std::move(locs)) {}

  bool contains(LocId l) const { return locs_.contains(l); }
  void insert(LocId l) { locs_.insert(l); }
  std::size_t size() const { return locs_.size(); }
  bool is_superset_of(const FrozenSet& other) const {
    for (auto l : other.locs_)
      if (!contains(l)) return false;
    return true;
  }

 private:
  std::unordered_set<LocId> locs_;
};

}  // namespace little
