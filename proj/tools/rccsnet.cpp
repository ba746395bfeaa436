#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "httplib.h"
#include "rccsnet/export.hpp"
#include "rccsnet/properties.hpp"
#include "rccsnet/service.hpp"

using namespace rccsnet;

namespace {

int write_file(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    return 0;
  }
  std::ofstream f(path);
  if (!f) {
    std::cerr << "cannot write " << path << "\n";
    return 1;
  }
  f << content;
  return 0;
}

int cmd_encode(const Process& p, const std::string& dot, const std::string& json, std::size_t radius, bool forward_only) {
  Lazy n = forward_only ? encode(p) : encode_reversible(initial_state(p));
  Net view = neighbourhood(n, n.initial, radius);
  std::size_t fwd = 0, bwd = 0;
  for (const auto& [t, a] : view.transitions) (t.dir == Direction::fwd ? fwd : bwd)++;
  std::cerr << "places " << view.places.size() << ", forward transitions " << fwd << ", reversing transitions " << bwd
            << "\n";
  int rc = 0;
  if (!dot.empty()) rc |= write_file(dot, to_dot(view, n.initial));
  if (!json.empty()) rc |= write_file(json, to_json(view, n.initial).dump(2) + "\n");
  if (dot.empty() && json.empty()) {
    for (const auto& pl : view.places) std::cout << "place " << pl.text() << (n.initial.count(pl) ? " *" : "") << "\n";
    for (const auto& [t, a] : view.transitions)
      std::cout << "transition " << render_name(t) << " " << render_set(a.pre) << " -> " << render_set(a.post) << "\n";
  }
  return rc;
}

int cmd_check(const Process& p, std::size_t depth) {
  nlohmann::json failures = nlohmann::json::array();
  for (const auto& [name, v] : run_all_checks(p, depth)) {
    std::cerr << (v.ok ? "ok   " : "FAIL ") << name << " (depth " << depth << ") " << v.witness.dump() << "\n";
    if (!v.ok) {
      auto j = v.to_json();
      j["property"] = name;
      failures.push_back(j);
    }
  }
  if (failures.empty()) return 0;
  std::cout << failures.dump(2) << "\n";
  return 2;
}

void show(const Stepper& s, std::ostream& out) {
  out << "term: " << render(s.term()) << "\n";
  out << "rccs: " << render(s.state()) << "\n";
  out << "marking: " << render_set(s.marking()) << "\n";
  auto en = s.enabled();
  if (en.empty()) out << "no enabled transitions\n";
  else out << "enabled transitions:\n";
  for (std::size_t i = 0; i < en.size(); ++i) out << "  " << i + 1 << ") " << render_name(en[i]) << "\n";
}

int cmd_simulate(const Process& p, std::istream& in, std::ostream& out) {
  Stepper s(p);
  show(s, out);
  std::string line;
  while (out << "> " << std::flush, std::getline(in, line)) {
    std::istringstream ls(line);
    std::string cmd;
    ls >> cmd;
    if (cmd.empty()) continue;
    if (cmd == "quit" || cmd == "q") break;
    if (cmd == "history") {
      for (const auto& t : s.history()) out << "  " << render_name(t) << "\n";
      continue;
    }
    if (cmd == "undo") {
      if (!s.undo()) out << "nothing to undo\n";
      show(s, out);
      continue;
    }
    auto en = s.enabled();
    std::size_t k = 0;
    try {
      k = std::stoul(cmd);
    } catch (const std::exception&) {
      k = 0;
    }
    if (k == 0 || k > en.size()) {
      out << "choose 1.." << en.size() << ", undo, history or quit\n";
      continue;
    }
    s.fire(en[k - 1]);
    show(s, out);
  }
  return 0;
}

int cmd_serve(int port) {
  httplib::Server server;
  SessionStore store;
  install_routes(server, store);
  std::cerr << "listening on port " << port << "\n";
  if (!server.listen("0.0.0.0", port)) {
    std::cerr << "cannot listen on port " << port << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CCS and RCCS processes as reversible unravel nets"};
  app.require_subcommand(1);
  std::string term, dot, json;
  std::size_t depth = 6, radius = 1;
  int port = 8080;
  bool forward_only = false;

  auto* enc = app.add_subcommand("encode", "print or export the net of a term");
  enc->add_option("term", term, "CCS term")->required();
  auto* dot_opt = enc->add_option("--dot", dot, "write DOT to PATH (stdout without PATH)")->expected(0, 1);
  auto* json_opt = enc->add_option("--json", json, "write JSON to PATH (stdout without PATH)")->expected(0, 1);
  enc->add_option("--radius", radius, "firing steps explored around the initial marking");
  enc->add_flag("--forward-only", forward_only, "omit reversing transitions");

  auto* chk = app.add_subcommand("check", "run the property suites on a term");
  chk->add_option("term", term, "CCS term")->required();
  chk->add_option("--depth", depth, "exploration depth");

  auto* sim = app.add_subcommand("simulate", "step a term interactively");
  sim->add_option("term", term, "CCS term")->required();

  auto* srv = app.add_subcommand("serve", "start the HTTP session service");
  srv->add_option("--port", port, "port");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  if (srv->parsed()) return cmd_serve(port);
  if (dot_opt->count() > 0 && dot.empty()) dot = "-";
  if (json_opt->count() > 0 && json.empty()) json = "-";
  Process p;
  std::string text = term;
  auto pos = text.find("|>");
  if (pos != std::string::npos) {
    std::string mem = text.substr(0, pos);
    mem.erase(std::remove_if(mem.begin(), mem.end(), ::isspace), mem.end());
    if (mem != "<>") {
      std::cerr << "only initial RCCS states <> |> P can be given as input\n";
      return 1;
    }
    text = text.substr(pos + 2);
  }
  try {
    p = parse_process(text);
  } catch (const std::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  }
  try {
    if (enc->parsed()) return cmd_encode(p, dot, json, radius, forward_only);
    if (chk->parsed()) return cmd_check(p, depth);
    return cmd_simulate(p, std::cin, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
