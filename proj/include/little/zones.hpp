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

#include <string>
#include <vector>

#include "little/svg.hpp"

namespace little {

enum class Offset : std::uint8_t { PlusDx, MinusDx, PlusDy, MinusDy };

inline double apply_offset(Offset o, double n, double dx, double dy) {
  switch (o) {
    case Offset::PlusDx: return n + dx;
    case Offset::MinusDx: return n - dx;
    case Offset::PlusDy: return n + dy;
    case Offset::MinusDy: return n - dy;
  }
  return n;
}

inline const char* offset_name(Offset o) {
  switch (o) {
    case Offset::PlusDx: return "+dx";
    case Offset::MinusDx: return "-dx";
    case Offset::PlusDy: return "+dy";
    case Offset::MinusDy: return "-dy";
  }
  return "?";
}

struct ZoneAttr {
  std::string slot;  // Slot::name, e.g. "width" or "points[1][0]"
  Offset offset;
};

struct ZoneSpec {
  std::string name;
  std::vector<ZoneAttr> attrs;
};

namespace detail {

inline ZoneSpec zone(std::string name, std::vector<ZoneAttr> attrs) { return {std::move(name), std::move(attrs)}; }

inline std::vector<ZoneSpec> point_zones(const IndexedShape& s, bool edges_and_interior) {
  std::vector<ZoneSpec> out;
  const std::size_t k = s.points.size();
  auto pt = [&](std::size_t i, std::vector<ZoneAttr>& a) {
    a.push_back({s.slots[s.points[i].first].name, Offset::PlusDx});
    a.push_back({s.slots[s.points[i].second].name, Offset::PlusDy});
  };
  for (std::size_t i = 0; i < k; ++i) {
    ZoneSpec z{"Point" + std::to_string(i + 1), {}};
    pt(i, z.attrs);
    out.push_back(std::move(z));
  }
  if (!edges_and_interior || k < 2) return out;
  for (std::size_t i = 0; i < k; ++i) {
    ZoneSpec z{"Edge" + std::to_string(i + 1), {}};
    pt(i, z.attrs);
    pt((i + 1) % k, z.attrs);
    out.push_back(std::move(z));
  }
  ZoneSpec interior{"Interior", {}};
  for (std::size_t i = 0; i < k; ++i) pt(i, interior.attrs);
  out.push_back(std::move(interior));
  return out;
}

}  // namespace detail

/// Zones of a shape in table order. Polygons get Point_i, Edge_i (points i and
/// i+1, wrapping) and Interior; polylines and paths get Point_i only.
inline std::vector<ZoneSpec> zones_for(const IndexedShape& s) {
  using detail::zone;
  constexpr auto pdx = Offset::PlusDx, mdx = Offset::MinusDx, pdy = Offset::PlusDy, mdy = Offset::MinusDy;
  if (s.zones_disabled) return {};
  if (s.kind == "rect") {
    return {
        zone("Interior", {{"x", pdx}, {"y", pdy}}),
        zone("RightEdge", {{"width", pdx}}),
        zone("BotRightCorner", {{"width", pdx}, {"height", pdy}}),
        zone("BotEdge", {{"height", pdy}}),
        zone("BotLeftCorner", {{"x", pdx}, {"width", mdx}, {"height", mdy}}),
        zone("LeftEdge", {{"x", pdx}, {"width", mdx}}),
        zone("TopLeftCorner", {{"x", pdx}, {"y", pdy}, {"width", mdx}, {"height", mdy}}),
        zone("TopEdge", {{"y", pdy}, {"height", mdy}}),
        zone("TopRightCorner", {{"y", pdy}, {"width", pdx}, {"height", mdy}}),
    };
  }
  if (s.kind == "line") {
    return {
        zone("Point1", {{"x1", pdx}, {"y1", pdy}}),
        zone("Point2", {{"x2", pdx}, {"y2", pdy}}),
        zone("Edge", {{"x1", pdx}, {"y1", pdy}, {"x2", pdx}, {"y2", pdy}}),
    };
  }
  if (s.kind == "ellipse") {
    return {
        zone("Interior", {{"cx", pdx}, {"cy", pdy}}),
        zone("RightEdge", {{"rx", pdx}}),
        zone("BotEdge", {{"ry", pdy}}),
    };
  }
  if (s.kind == "circle") {
    return {
        zone("Interior", {{"cx", pdx}, {"cy", pdy}}),
        zone("RightEdge", {{"r", pdx}}),
        zone("BotEdge", {{"r", pdy}}),
    };
  }
  if (s.kind == "polygon") return detail::point_zones(s, true);
  if (s.kind == "polyline" || s.kind == "path") return detail::point_zones(s, false);
  return {};
}

inline std::optional<ZoneSpec> find_zone(const IndexedShape& s, std::string_view name) {
  for (auto& z : zones_for(s))
    if (z.name == name) return z;
  return std::nullopt;
}

}  // namespace little
