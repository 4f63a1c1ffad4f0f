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
#include <cmath>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

#include "little/value.hpp"

namespace little {

/// Pixel-style number printing: at most 4 decimals, trailing zeros trimmed.
inline std::string svg_number(double n) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", n);
  std::string s = buf;
  if (s.find('.') != std::string::npos) {
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
  }
  if (s == "-0") s = "0";
  return s;
}

/// Color numbers: 0..360 is a hue, (360, 500] runs from black to white.
/// Values outside [0, 500] are clamped.
inline std::string color_number(double n) {
  n = std::clamp(n, 0.0, 500.0);
  if (n <= 360) return "hsl(" + svg_number(n) + ",100%,50%)";
  const long level = std::lround((n - 360) / 140 * 255);
  const std::string l = std::to_string(level);
  return "rgb(" + l + "," + l + "," + l + ")";
}

/// One traced number of a shape, addressed by attribute name and list indices,
/// e.g. "x", "points[2][1]", "d[4]", "fill[0]".
struct Slot {
  std::string name;
  std::string attr;
  double value = 0;
  TracePtr trace;
  ValuePath path;  // from the canvas root
};

struct IndexedShape {
  std::size_t index = 0;
  std::string kind;
  bool hidden = false;
  bool zones_disabled = false;  // ['ZONES' 'none']
  ValuePath path;               // to the [kind attrs children] node
  std::vector<Slot> slots;
  std::vector<std::string> attr_names;  // in source order, including non-numeric ones
  /// Indices into `slots` of the (x, y) coordinate pairs of points/path shapes.
  std::vector<std::pair<std::size_t, std::size_t>> points;

  const Slot* slot(std::string_view name) const {
    for (const auto& s : slots)
      if (s.name == name) return &s;
    return nullptr;
  }
};

namespace detail {

struct RawNode {
  std::string kind;
  std::vector<std::pair<std::string, ValuePtr>> attrs;
  std::vector<ValuePath> attr_value_paths;
  std::vector<ValuePtr> children;
  ValuePath children_path;
};

inline RawNode read_node(const ValuePtr& v, const ValuePath& path) {
  auto items = list_items(v);
  if (!items || items->size() != 3) throw SvgError("SVG node must be a list [kind attributes children], got " + show(*v));
  const auto* kind = (*items)[0]->as<Value::Str>();
  if (!kind) throw SvgError("SVG node kind must be a string, got " + show(*(*items)[0]));
  RawNode node;
  node.kind = kind->s;
  auto attrs = list_items((*items)[1]);
  if (!attrs) throw SvgError("attributes of <" + node.kind + "> must be a list");
  ValuePath attrs_path = path;
  attrs_path.push_back(Step::Tail);
  attrs_path.push_back(Step::Head);
  for (std::size_t i = 0; i < attrs->size(); ++i) {
    auto pair = list_items((*attrs)[i]);
    const Value::Str* key = pair && pair->size() == 2 ? (*pair)[0]->as<Value::Str>() : nullptr;
    if (!key) throw SvgError("attribute of <" + node.kind + "> must be a pair [name value], got " + show(*(*attrs)[i]));
    node.attrs.emplace_back(key->s, (*pair)[1]);
    ValuePath vp = list_elem_path(attrs_path, i);
    vp.push_back(Step::Tail);
    vp.push_back(Step::Head);
    node.attr_value_paths.push_back(std::move(vp));
  }
  auto children = list_items((*items)[2]);
  if (!children) throw SvgError("children of <" + node.kind + "> must be a list");
  node.children = std::move(*children);
  node.children_path = path;
  node.children_path.push_back(Step::Tail);
  node.children_path.push_back(Step::Tail);
  node.children_path.push_back(Step::Head);
  return node;
}

inline bool is_container(std::string_view kind) { return kind == "svg" || kind == "g"; }

inline bool is_text_child(const ValuePtr& v, std::string* text) {
  auto items = list_items(v);
  if (!items || items->size() != 2) return false;
  const auto* k = (*items)[0]->as<Value::Str>();
  if (!k || k->s != "TEXT") return false;
  *text = show(*(*items)[1]);
  return true;
}

inline std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

inline bool is_path_command(std::string_view s) {
  return s.size() == 1 && std::string_view("MLHVCSQTAZmlhvcsqtaz").find(s[0]) != std::string_view::npos;
}

inline std::string attr_text(const std::string& key, const ValuePtr& v) {
  if (const auto* n = v->as<Value::Num>()) {
    if (key == "fill" || key == "stroke") return color_number(n->n);
    return svg_number(n->n);
  }
  if (const auto* s = v->as<Value::Str>()) return s->s;
  if (const auto* b = v->as<Value::Bool>()) return b->b ? "true" : "false";
  auto items = list_items(v);
  if (!items) throw SvgError("malformed value for attribute '" + key + "': " + show(*v));
  if (key == "points") {
    std::string out;
    for (const auto& pt : *items) {
      auto xy = list_items(pt);
      if (!xy || xy->size() != 2 || !(*xy)[0]->is<Value::Num>() || !(*xy)[1]->is<Value::Num>())
        throw SvgError("points must be a list of [x y] number pairs, got " + show(*pt));
      if (!out.empty()) out += ' ';
      out += svg_number((*xy)[0]->as<Value::Num>()->n) + "," + svg_number((*xy)[1]->as<Value::Num>()->n);
    }
    return out;
  }
  if ((key == "fill" || key == "stroke") && items->size() == 4) {
    std::string out = "rgba(";
    for (std::size_t i = 0; i < 4; ++i) {
      const auto* n = (*items)[i]->as<Value::Num>();
      if (!n) throw SvgError("rgba color must contain 4 numbers, got " + show(*v));
      out += (i ? "," : "") + svg_number(n->n);
    }
    return out + ")";
  }
  if (key == "d") {
    std::string out;
    for (const auto& it : *items) {
      std::string tok;
      if (const auto* n = it->as<Value::Num>()) {
        tok = svg_number(n->n);
      } else if (const auto* s = it->as<Value::Str>(); s && is_path_command(s->s)) {
        tok = s->s;
      } else {
        throw SvgError("path data must contain commands and numbers, got " + show(*it));
      }
      if (!out.empty()) out += ' ';
      out += tok;
    }
    return out;
  }
  throw SvgError("malformed list value for attribute '" + key + "': " + show(*v));
}

inline bool dropped_attr(std::string_view key) { return key == "ZONES" || key == "HIDDEN"; }

inline void write_xml(const ValuePtr& v, const ValuePath& path, std::string& out, int indent, bool root) {
  RawNode node = read_node(v, path);
  std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  out += pad + "<" + node.kind;
  if (root) out += " xmlns=\"http://www.w3.org/2000/svg\"";
  for (const auto& [k, val] : node.attrs) {
    if (dropped_attr(k)) continue;
    out += " " + k + "=\"" + xml_escape(attr_text(k, val)) + "\"";
  }
  std::string text;
  std::vector<std::size_t> element_children;
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    std::string t;
    if (is_text_child(node.children[i], &t))
      text += t;
    else
      element_children.push_back(i);
  }
  if (element_children.empty() && text.empty()) {
    out += "/>\n";
    return;
  }
  out += ">";
  out += xml_escape(text);
  if (!element_children.empty()) {
    out += "\n";
    for (auto i : element_children)
      write_xml(node.children[i], list_elem_path(node.children_path, i), out, indent + 1, false);
    out += pad;
  }
  out += "</" + node.kind + ">\n";
}

inline std::size_t pair_count(char cmd) {
  switch (cmd) {
    case 'M':
    case 'L':
    case 'T': return 1;
    case 'S':
    case 'Q': return 2;
    case 'C': return 3;
    default: return 0;
  }
}

inline void index_shape(const RawNode& node, IndexedShape& shape) {
  for (std::size_t a = 0; a < node.attrs.size(); ++a) {
    const auto& [key, val] = node.attrs[a];
    const ValuePath& vpath = node.attr_value_paths[a];
    shape.attr_names.push_back(key);
    if (key == "HIDDEN") shape.hidden = true;
    if (key == "ZONES") {
      const auto* s = val->as<Value::Str>();
      if (s && s->s == "none") shape.zones_disabled = true;
    }
    if (dropped_attr(key)) continue;
    if (const auto* n = val->as<Value::Num>()) {
      shape.slots.push_back({key, key, n->n, n->trace, vpath});
      continue;
    }
    auto items = list_items(val);
    if (!items) continue;
    if (key == "points") {
      for (std::size_t i = 0; i < items->size(); ++i) {
        auto xy = list_items((*items)[i]);
        if (!xy || xy->size() != 2) continue;
        const auto* x = (*xy)[0]->as<Value::Num>();
        const auto* y = (*xy)[1]->as<Value::Num>();
        if (!x || !y) continue;
        ValuePath pp = list_elem_path(vpath, i);
        std::string base = key + "[" + std::to_string(i) + "]";
        shape.slots.push_back({base + "[0]", key, x->n, x->trace, list_elem_path(pp, 0)});
        shape.slots.push_back({base + "[1]", key, y->n, y->trace, list_elem_path(pp, 1)});
        shape.points.emplace_back(shape.slots.size() - 2, shape.slots.size() - 1);
      }
      continue;
    }
    // d, rgba colors and any other list: every number is a slot.
    char cmd = 0;
    std::size_t pending = 0;
    std::vector<std::size_t> run;
    for (std::size_t i = 0; i < items->size(); ++i) {
      const auto& it = (*items)[i];
      if (const auto* s = it->as<Value::Str>()) {
        cmd = s->s.empty() ? 0 : static_cast<char>(std::toupper(static_cast<unsigned char>(s->s[0])));
        pending = key == "d" ? pair_count(cmd) : 0;
        run.clear();
        continue;
      }
      const auto* n = it->as<Value::Num>();
      if (!n) continue;
      shape.slots.push_back({key + "[" + std::to_string(i) + "]", key, n->n, n->trace, list_elem_path(vpath, i)});
      if (pending == 0) continue;
      run.push_back(shape.slots.size() - 1);
      if (run.size() == 2) {
        shape.points.emplace_back(run[0], run[1]);
        run.clear();
        if (--pending == 0) pending = pair_count(cmd);  // implicit repetition of the command
      }
    }
  }
}

inline void index_nodes(const ValuePtr& v, const ValuePath& path, std::vector<IndexedShape>& out) {
  RawNode node = read_node(v, path);
  if (is_container(node.kind)) {
    for (std::size_t i = 0; i < node.children.size(); ++i) {
      std::string t;
      if (is_text_child(node.children[i], &t)) continue;
      index_nodes(node.children[i], list_elem_path(node.children_path, i), out);
    }
    return;
  }
  IndexedShape shape;
  shape.index = out.size();
  shape.kind = node.kind;
  shape.path = path;
  index_shape(node, shape);
  out.push_back(std::move(shape));
}

inline void check_root(const ValuePtr& root) {
  RawNode node = read_node(root, {});
  if (node.kind != "svg") throw SvgError("canvas root must be an 'svg' node, got '" + node.kind + "'");
}

}  // namespace detail

/// SVG 1.1 XML for a canvas value.
inline std::string to_svg_xml(const ValuePtr& root) {
  detail::check_root(root);
  std::string out;
  detail::write_xml(root, {}, out, 0, true);
  return out;
}

/// Shapes of the canvas in document pre-order (containers are not shapes).
inline std::vector<IndexedShape> index_canvas(const ValuePtr& root) {
  detail::check_root(root);
  std::vector<IndexedShape> out;
  detail::index_nodes(root, {}, out);
  return out;
}

}  // namespace little
