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

// little: run, manipulate and measure little programs from the command line.
//
//   little run FILE [-o out.svg]
//   little act FILE ACTION [-o out.little]
//   little candidates FILE EQUATIONS
//   little stats FILE|DIR...
//   little session            (JSON lines on stdin/stdout)
//   little serve [--port N]   (POST /session)
//
// Exit codes: 0 ok, 1 parse/eval/usage error, 2 inactive or unsolvable action.

#include <CLI11.hpp>
#include <httplib.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <vector>

#include "little/little.hpp"

namespace fs = std::filesystem;
using little::Json;

namespace {

constexpr int kOk = 0;
constexpr int kError = 1;
constexpr int kRejected = 2;

struct Globals {
  std::string prelude_path;
  std::string heuristic = "fair";
  bool freeze_default = false;
  bool unfreeze_prelude = false;
  bool avoid_unsolvable = false;
  bool json = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw little::RequestError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw little::RequestError("cannot write " + path);
  out << text;
}

/// Inline JSON when the argument looks like JSON, otherwise a file name.
Json read_json_arg(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\r\n");
  const bool inline_json = first != std::string::npos && (arg[first] == '{' || arg[first] == '[');
  return Json::parse(inline_json ? arg : read_file(arg));
}

std::string prelude_source(const Globals& g) {
  return g.prelude_path.empty() ? std::string(little::kPrelude) : read_file(g.prelude_path);
}

little::SessionOptions session_options(const Globals& g) {
  little::SessionOptions o;
  auto h = little::heuristic_from_name(g.heuristic);
  if (!h) throw little::RequestError("--heuristic must be fair, biased or none");
  o.assign.heuristic = *h;
  o.assign.avoid_unsolvable = g.avoid_unsolvable;
  o.freeze.freeze_default = g.freeze_default;
  o.freeze.freeze_prelude = !g.unfreeze_prelude;
  return o;
}

int report(const std::exception& e, const Globals& g) {
  if (g.json)
    std::cout << Json{{"ok", false}, {"error", little::error_json(e)}}.dump(2) << "\n";
  else
    std::cerr << "error: " << e.what() << "\n";
  return kError;
}

int cmd_run(const Globals& g, const std::string& file, const std::string& out_path) {
  auto opts = session_options(g);
  little::Prepared prep = little::prepare(little::parse_program(read_file(file), prelude_source(g)), opts);
  const std::string svg = little::to_svg_xml(prep.output);
  std::size_t active = 0;
  for (const auto& z : prep.gamma.zones) active += z.chosen ? 1 : 0;
  if (g.json) {
    if (!out_path.empty()) write_output(out_path, svg);
    Json j{{"ok", true},
           {"shapes", prep.canvas.size()},
           {"zones", prep.gamma.zones.size()},
           {"active", active},
           {"canvas", little::canvas_json(prep.canvas, little::location_namer(prep.program))},
           {"assignments", little::zones_json(prep)}};
    if (out_path.empty()) j["svg"] = svg;
    std::cout << j.dump(2) << "\n";
    return kOk;
  }
  write_output(out_path, svg);
  std::ostream& log = out_path.empty() || out_path == "-" ? std::cerr : std::cout;
  log << prep.canvas.size() << " shapes, " << prep.gamma.zones.size() << " zones (" << active << " active, "
      << prep.gamma.zones.size() - active << " inactive)\n";
  auto name = little::location_namer(prep.program);
  for (const auto& z : prep.gamma.zones)
    log << "  shape " << z.shape << " " << prep.canvas[z.shape].kind << " " << z.zone.name << ": "
        << little::caption(z, name) << "\n";
  return kOk;
}

int cmd_act(const Globals& g, const std::string& file, const std::string& action_arg, const std::string& out_path) {
  auto opts = session_options(g);
  little::ActionRequest req = little::action_from_json(read_json_arg(action_arg));
  if (req.heuristic) opts.assign.heuristic = *req.heuristic;
  little::Prepared prep = little::prepare(little::parse_program(read_file(file), prelude_source(g)), opts);
  little::ActionResult r = little::apply_action(prep, req.action, opts);
  Json diag = little::action_json(prep, r);
  const int code = r.status == little::ActionStatus::Ok            ? kOk
                   : r.status == little::ActionStatus::EvalFailed ? kError
                                                                   : kRejected;
  // With --json and no -o the program travels inside the diagnostics.
  if (r.status == little::ActionStatus::Ok && !(g.json && out_path.empty())) write_output(out_path, r.new_source);
  if (g.json) {
    std::cout << diag.dump(2) << "\n";
  } else {
    std::ostream& log = std::cerr;
    log << "status: " << diag["status"].get<std::string>();
    if (diag.contains("message")) log << " (" << diag["message"].get<std::string>() << ")";
    log << "\n";
    for (const auto& o : diag["outcomes"]) {
      log << "  " << o["slot"].get<std::string>() << " -> " << o["location"].get<std::string>() << ": "
          << o["status"].get<std::string>();
      if (o.contains("value")) log << " = " << little::format_number(o["value"].get<double>());
      if (o.contains("reasons")) log << " " << o["reasons"].dump();
      log << "\n";
    }
    const auto& h = diag["highlight"];
    log << "  yellow " << h["yellow"].dump() << " green " << h["green"].dump() << " red " << h["red"].dump()
        << " gray " << h["gray"].dump() << "\n";
    log << "classification: " << diag["classification"]["kind"].get<std::string>() << "\n";
  }
  return code;
}

int cmd_candidates(const Globals& g, const std::string& file, const std::string& eq_arg, bool disjoint) {
  auto opts = session_options(g);
  little::Prepared prep = little::prepare(little::parse_program(read_file(file), prelude_source(g)), opts);
  std::vector<little::ValuePath> holes;
  little::UpdateRequest req = little::update_request_from_json(read_json_arg(eq_arg), prep.canvas, holes);
  little::InferOptions io;
  io.disjoint = disjoint;
  auto res = little::infer_local_updates(prep.rho0, req, prep.frozen, io);
  auto name = little::location_namer(prep.program);
  Json list = Json::array();
  for (const auto& c : res.candidates) {
    auto cls = little::classify_update(prep.program, req, holes, c.rho, opts.eval);
    list.push_back(little::candidate_json(c, cls, name));
  }
  Json out{{"tuples", res.tuples}, {"truncated", res.truncated}, {"candidates", std::move(list)}};
  std::cout << out.dump(2) << "\n";
  return kOk;
}

std::vector<std::string> expand_inputs(const std::vector<std::string>& inputs) {
  std::vector<std::string> files;
  for (const auto& in : inputs) {
    if (fs::is_directory(in)) {
      std::vector<std::string> found;
      for (const auto& e : fs::directory_iterator(in))
        if (e.is_regular_file() && e.path().extension() == ".little") found.push_back(e.path().string());
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else {
      files.push_back(in);
    }
  }
  return files;
}

int cmd_stats(const Globals& g, const std::vector<std::string>& inputs, bool timing) {
  auto opts = session_options(g);
  const std::string prelude = prelude_source(g);
  const auto files = expand_inputs(inputs);

  struct Row {
    std::string file;
    std::optional<little::ProgramStats> stats;
    std::string error;
  };
  std::vector<std::future<Row>> jobs;
  for (const auto& f : files)
    jobs.push_back(std::async(std::launch::async, [&, f] {
      Row r{f, std::nullopt, {}};
      try {
        r.stats = little::census_source(read_file(f), prelude, opts);
      } catch (const std::exception& e) {
        r.error = e.what();
      }
      return r;
    }));

  little::ProgramStats total;
  std::size_t failed = 0;
  Json rows = Json::array();
  std::ostringstream text;
  auto line = [&](const std::string& file, const little::ProgramStats& s) {
    char buf[512];
    std::snprintf(buf, sizeof buf, "%-28s %6zu %6zu %6zu %6zu %6zu (%.2f) %6zu %6zu %6zu %6zu %6zu", file.c_str(),
                  s.shapes, s.zones, s.inactive, s.unambiguous, s.ambiguous, s.ambiguous_mean(), s.pre_equations,
                  s.outside_fragment, s.inside_fragment, s.solved_d1, s.solved_d100);
    text << buf;
    if (timing) {
      std::snprintf(buf, sizeof buf, "  %8.2f %8.2f %8.2f %8.3f", s.parse_ms, s.eval_ms, s.prepare_ms, s.solve_ms);
      text << buf;
    }
    text << "\n";
  };
  text << "file                         shapes  zones inactv unambg  ambiguous     preq  out-f   in-f   d=1  d=100";
  if (timing) text << "  parse-ms  eval-ms  prep-ms solve-ms";
  text << "\n";
  for (auto& job : jobs) {
    Row r = job.get();
    const std::string label = fs::path(r.file).filename().string();
    if (!r.stats) {
      ++failed;
      rows.push_back({{"file", label}, {"error", r.error}});
      std::cerr << r.file << ": " << r.error << "\n";
      continue;
    }
    total += *r.stats;
    rows.push_back(little::stats_json(label, *r.stats, timing));
    line(label, *r.stats);
  }
  line("TOTAL", total);
  if (g.json) {
    Json out{{"files", std::move(rows)}, {"total", little::stats_json("TOTAL", total, timing)}, {"failed", failed}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << text.str();
  }
  return failed ? kError : kOk;
}

int cmd_session(const Globals& g) {
  little::Session session(prelude_source(g), session_options(g));
  std::string line;
  while (std::getline(std::cin, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    Json reply;
    try {
      reply = session.handle(Json::parse(line));
    } catch (const std::exception& e) {
      reply = Json{{"type", ""}, {"ok", false}, {"error", little::error_json(e)}};
    }
    std::cout << reply.dump() << std::endl;
  }
  return kOk;
}

int cmd_serve(const Globals& g, const std::string& host, int port) {
  little::Session session(prelude_source(g), session_options(g));
  std::mutex mu;
  httplib::Server server;
  server.Post("/session", [&](const httplib::Request& req, httplib::Response& res) {
    Json reply;
    try {
      Json msg = Json::parse(req.body);
      std::lock_guard lock(mu);
      reply = session.handle(msg);
    } catch (const std::exception& e) {
      reply = Json{{"type", ""}, {"ok", false}, {"error", little::error_json(e)}};
    }
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_content(reply.dump(), "application/json");
  });
  server.Options("/session", [](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
  });
  std::cerr << "listening on http://" << host << ":" << port << "/session\n";
  return server.listen(host, port) ? kOk : kError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Run and directly manipulate little programs"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--prelude", g.prelude_path, "Prelude source replacing the built-in one")->check(CLI::ExistingFile);
  app.add_option("--heuristic", g.heuristic, "Zone assignment heuristic")
      ->check(CLI::IsMember({"fair", "biased", "none"}));
  app.add_flag("--freeze-default", g.freeze_default, "Freeze every literal not marked with ?");
  app.add_flag("--unfreeze-prelude", g.unfreeze_prelude, "Allow updates to prelude literals");
  app.add_flag("--avoid-unsolvable", g.avoid_unsolvable, "Prefer assignments the solver can handle");
  app.add_flag("--json", g.json, "Machine-readable output");

  std::string file, out_path, arg;
  auto* run = app.add_subcommand("run", "Evaluate a program and export SVG");
  run->fallthrough();
  run->add_option("file", file, "Program")->required()->check(CLI::ExistingFile);
  run->add_option("-o,--output", out_path, "SVG output (default stdout)");

  auto* act = app.add_subcommand("act", "Apply a zone drag and write the updated program");
  act->fallthrough();
  act->add_option("file", file, "Program")->required()->check(CLI::ExistingFile);
  act->add_option("action", arg, "Action JSON, inline or a file")->required();
  act->add_option("-o,--output", out_path, "Program output (default stdout)");

  bool disjoint = false;
  auto* cand = app.add_subcommand("candidates", "List local updates for hard equations");
  cand->fallthrough();
  cand->add_option("file", file, "Program")->required()->check(CLI::ExistingFile);
  cand->add_option("equations", arg, "[{shape, slot, value}] inline or a file")->required();
  cand->add_flag("--disjoint", disjoint, "Use only locations unique to each equation");

  std::vector<std::string> inputs;
  bool no_timing = false;
  auto* stats = app.add_subcommand("stats", "Zone and solver census");
  stats->fallthrough();
  stats->add_option("inputs", inputs, "Programs or directories of .little files")->required();
  stats->add_flag("--no-timing", no_timing, "Omit timing columns");

  auto* session = app.add_subcommand("session", "Serve session messages as JSON lines on stdin");
  session->fallthrough();

  std::string host = "127.0.0.1";
  int port = 8765;
  auto* serve = app.add_subcommand("serve", "Serve session messages over HTTP");
  serve->fallthrough();
  serve->add_option("--host", host, "Bind address");
  serve->add_option("--port", port, "Port");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kError;
  }

  try {
    if (*run) return cmd_run(g, file, out_path);
    if (*act) return cmd_act(g, file, arg, out_path);
    if (*cand) return cmd_candidates(g, file, arg, disjoint);
    if (*stats) return cmd_stats(g, inputs, !no_timing);
    if (*session) return cmd_session(g);
    if (*serve) return cmd_serve(g, host, port);
  } catch (const std::exception& e) {
    return report(e, g);
  }
  return kError;
}
