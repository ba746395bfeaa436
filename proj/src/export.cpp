#include "rccsnet/export.hpp"

#include <map>
#include <sstream>

namespace rccsnet {

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

const char* kind_name(PlaceName::Kind k) {
  switch (k) {
    case PlaceName::Kind::proc: return "proc";
    case PlaceName::Kind::key: return "key";
    default: return "sync_key";
  }
}

}  // namespace

std::string to_dot(const Net& n, const Marking& marked) {
  std::map<PlaceName, std::string> pid;
  std::ostringstream out;
  out << "digraph net {\n  rankdir=TB;\n";
  for (const auto& p : n.places) {
    std::string id = "p" + std::to_string(pid.size());
    pid.emplace(p, id);
    out << "  " << id << " [shape=circle, label=" << quote(p.text() + (marked.count(p) ? " *" : ""));
    if (p.is_key()) out << ", style=filled, fillcolor=lightblue";
    if (marked.count(p)) out << ", penwidth=2";
    out << "];\n";
  }
  std::size_t k = 0;
  for (const auto& [t, a] : n.transitions) {
    std::string id = "t" + std::to_string(k++);
    out << "  " << id << " [shape=box, label=" << quote(render_name(t));
    if (t.dir == Direction::bwd) out << ", peripheries=2, color=red";
    out << "];\n";
    for (const auto& p : a.pre) out << "  " << pid.at(p) << " -> " << id << ";\n";
    for (const auto& p : a.post) out << "  " << id << " -> " << pid.at(p) << ";\n";
  }
  out << "}\n";
  return out.str();
}

nlohmann::json to_json(const Marking& m) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& p : m) j.push_back(p.text());
  return j;
}

nlohmann::json to_json(const Net& n, const Marking& marked) {
  nlohmann::json places = nlohmann::json::array(), trans = nlohmann::json::array();
  for (const auto& p : n.places)
    places.push_back({{"name", p.text()}, {"kind", kind_name(p.kind())}, {"marked", marked.count(p) > 0}});
  for (const auto& [t, a] : n.transitions)
    trans.push_back({{"name", render_name(t)},
                     {"direction", t.dir == Direction::fwd ? "fwd" : "bwd"},
                     {"label", render(label_of(t.base))},
                     {"preset", to_json(a.pre)},
                     {"postset", to_json(a.post)}});
  return {{"places", places}, {"transitions", trans}, {"marking", to_json(marked)}};
}

Net neighbourhood(const Lazy& n, const Marking& m, std::size_t radius) {
  Net out;
  out.initial = m;
  std::set<Marking> seen{m};
  std::vector<Marking> frontier{m};
  for (std::size_t d = 0; !frontier.empty(); ++d) {
    std::vector<Marking> next;
    for (const auto& x : frontier) {
      Net tr = n.truncate(x);
      out.places.insert(x.begin(), x.end());
      out.merge(tr);
      if (d >= radius) continue;
      for (const auto& t : enabled(tr, x)) {
        Marking y = fire(tr, x, t);
        if (seen.insert(y).second) next.push_back(std::move(y));
      }
    }
    frontier.swap(next);
  }
  return out;
}

}  // namespace rccsnet
