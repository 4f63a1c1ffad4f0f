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
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "little/solver.hpp"
#include "little/svg.hpp"
#include "little/zones.hpp"

namespace little {

/// One location per zone attribute, in ZoneSpec attribute order (theta).
using LocTuple = std::vector<LocId>;

/// Sorted, de-duplicated range of an attribute assignment.
inline std::vector<LocId> location_set(const LocTuple& t) {
  std::vector<LocId> s = t;
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

struct ZoneCandidates {
  bool active = false;
  std::string inactive_reason;
  std::vector<std::vector<LocId>> per_attr;  // locsOf each attribute trace, ascending
  std::vector<const Slot*> slots;
  std::size_t count = 0;  // size of the product, computed without enumeration
  std::vector<LocTuple> tuples;  // lexicographic, at most `cap`
  bool truncated = false;
};

inline constexpr std::size_t kCandidateCap = 10000;

/// Cartesian product of the attributes' location sets. An attribute that is
/// missing, non-numeric or fully frozen makes the zone Inactive.
inline ZoneCandidates candidate_assignments(const IndexedShape& shape, const ZoneSpec& zone, const FrozenSet& frozen,
                                            std::size_t cap = kCandidateCap) {
  ZoneCandidates out;
  double count = 1;
  for (const auto& za : zone.attrs) {
    const Slot* s = shape.slot(za.slot);
    if (!s) {
      out.inactive_reason = "attribute '" + za.slot + "' is missing or not a number";
      out.per_attr.clear();
      out.slots.clear();
      return out;
    }
    auto locs = locs_of(*s->trace, frozen);
    out.slots.push_back(s);
    out.per_attr.emplace_back(locs.begin(), locs.end());
    count *= static_cast<double>(locs.size());
  }
  if (count == 0) {
    out.inactive_reason = "every location is frozen for some attribute";
    return out;
  }
  out.active = true;
  out.count = count > 1e18 ? static_cast<std::size_t>(-1) : static_cast<std::size_t>(count);
  const std::size_t m = out.per_attr.size();
  std::vector<std::size_t> idx(m, 0);
  for (;;) {
    if (out.tuples.size() == cap) {
      out.truncated = true;
      break;
    }
    LocTuple t(m);
    for (std::size_t i = 0; i < m; ++i) t[i] = out.per_attr[i][idx[i]];
    out.tuples.push_back(std::move(t));
    std::size_t i = m;
    bool done = true;
    while (i > 0) {
      --i;
      if (++idx[i] < out.per_attr[i].size()) {
        done = false;
        break;
      }
      idx[i] = 0;
    }
    if (done) break;
  }
  return out;
}

enum class Heuristic : std::uint8_t { Fair, Biased, None };

inline std::optional<Heuristic> heuristic_from_name(std::string_view s) {
  if (s == "fair") return Heuristic::Fair;
  if (s == "biased") return Heuristic::Biased;
  if (s == "none") return Heuristic::None;
  return std::nullopt;
}

inline const char* heuristic_name(Heuristic h) {
  switch (h) {
    case Heuristic::Fair: return "fair";
    case Heuristic::Biased: return "biased";
    case Heuristic::None: return "none";
  }
  return "?";
}

struct AssignOptions {
  Heuristic heuristic = Heuristic::Fair;
  bool avoid_unsolvable = false;  // prefer tuples whose equations are all in the solver fragment
};

struct ZoneAssignment {
  std::size_t shape = 0;
  ZoneSpec zone;
  ZoneCandidates candidates;
  std::optional<LocTuple> chosen;  // empty iff Inactive
};

/// gamma: every zone of every shape, in assignment order.
struct ShapeAssignment {
  std::vector<ZoneAssignment> zones;

  const ZoneAssignment* find(std::size_t shape, std::string_view zone) const {
    for (const auto& z : zones)
      if (z.shape == shape && z.zone.name == zone) return &z;
    return nullptr;
  }
};

/// Occurrences of each location, with multiplicity, across every slot of every shape.
inline std::unordered_map<LocId, std::size_t> location_counts(const std::vector<IndexedShape>& canvas) {
  std::unordered_map<LocId, std::size_t> counts;
  for (const auto& s : canvas)
    for (const auto& slot : s.slots) for_each_leaf(*slot.trace, [&](LocId l) { ++counts[l]; });
  return counts;
}

namespace detail {

inline bool tuple_in_fragment(const ZoneCandidates& c, const LocTuple& t) {
  for (std::size_t i = 0; i < t.size(); ++i)
    if (!in_fragment(t[i], *c.slots[i]->trace)) return false;
  return true;
}

}  // namespace detail

/// Greedy assignment over zones in document order (shape index, then table order).
/// Fair picks the tuple whose location set has been used least so far; Biased
/// first minimizes the product of canvas-wide location counts and falls back to
/// the fair criterion; None takes the first tuple. Remaining ties go to the
/// lexicographically smallest tuple.
inline ShapeAssignment assign_zones(const std::vector<IndexedShape>& canvas, const FrozenSet& frozen,
                                    const AssignOptions& opts = {}) {
  ShapeAssignment gamma;
  std::map<std::vector<LocId>, std::size_t> usage;
  std::unordered_map<LocId, std::size_t> counts;
  if (opts.heuristic == Heuristic::Biased) counts = location_counts(canvas);

  for (const auto& shape : canvas) {
    for (auto& zone : zones_for(shape)) {
      ZoneAssignment za{shape.index, zone, candidate_assignments(shape, zone, frozen), std::nullopt};
      if (za.candidates.active) {
        std::vector<std::size_t> pool;
        for (std::size_t i = 0; i < za.candidates.tuples.size(); ++i)
          if (!opts.avoid_unsolvable || detail::tuple_in_fragment(za.candidates, za.candidates.tuples[i]))
            pool.push_back(i);
        if (pool.empty())
          for (std::size_t i = 0; i < za.candidates.tuples.size(); ++i) pool.push_back(i);

        std::size_t best = pool.front();
        if (opts.heuristic != Heuristic::None) {
          auto score = [&](std::size_t i) {
            double s = 1;
            for (auto l : location_set(za.candidates.tuples[i])) s *= static_cast<double>(counts[l]);
            return s;
          };
          auto used = [&](std::size_t i) {
            auto it = usage.find(location_set(za.candidates.tuples[i]));
            return it == usage.end() ? std::size_t{0} : it->second;
          };
          for (auto i : pool) {
            if (opts.heuristic == Heuristic::Biased) {
              const double si = score(i), sb = score(best);
              if (si < sb || (si == sb && used(i) < used(best))) best = i;
            } else if (used(i) < used(best)) {
              best = i;
            }
          }
        }
        za.chosen = za.candidates.tuples[best];
        ++usage[location_set(*za.chosen)];
      }
      gamma.zones.push_back(std::move(za));
    }
  }
  return gamma;
}

inline ShapeAssignment assign_fair(const std::vector<IndexedShape>& canvas, const FrozenSet& frozen) {
  return assign_zones(canvas, frozen, {Heuristic::Fair, false});
}

inline ShapeAssignment assign_biased(const std::vector<IndexedShape>& canvas, const FrozenSet& frozen) {
  return assign_zones(canvas, frozen, {Heuristic::Biased, false});
}

}  // namespace little
