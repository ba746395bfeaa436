#include "rccsnet/names.hpp"

namespace rccsnet {

std::string render(const Decoration& d) {
  switch (d.kind) {
    case Decoration::Kind::par_side: return "|" + std::to_string(d.index) + ":";
    case Decoration::Kind::sum_branch: return "+" + std::to_string(d.index) + ":";
    case Decoration::Kind::past: return "^" + render(d.action) + ".";
    case Decoration::Kind::restr: return "\\" + d.chan + ":";
  }
  return "";
}

std::string render(const Path& p) { return render(p, ""); }

std::string render(const Path& p, const std::string& tail) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i].kind == Decoration::Kind::restr)
      return s + "(" + render(Path(p.begin() + static_cast<std::ptrdiff_t>(i) + 1, p.end()), tail) + ")\\" + p[i].chan;
    s += render(p[i]);
  }
  return s + tail;
}

Path concat(Path p, const Path& q) {
  p.insert(p.end(), q.begin(), q.end());
  return p;
}

TransitionName TransitionName::act(Path path, Action a) {
  TransitionName t;
  t.parts_.emplace_back(std::move(path), std::move(a));
  t.text_ = t.parts_[0].text;
  return t;
}

TransitionName TransitionName::sync(ActName t1, ActName t2) {
  if (t1.action.is_tau() || t2.action != dual(t1.action))
    throw std::invalid_argument("sync components must carry dual visible labels: " + t1.text + ", " + t2.text);
  if (t2 < t1) std::swap(t1, t2);
  TransitionName t;
  t.sync_ = true;
  t.text_ = t1.text + "*" + t2.text;
  t.parts_ = {std::move(t1), std::move(t2)};
  return t;
}

PlaceName PlaceName::proc(Path path, Process residual) {
  PlaceName p;
  p.kind_ = Kind::proc;
  p.text_ = render(path, render(residual));
  p.path_ = std::move(path);
  p.residual_ = std::move(residual);
  return p;
}

PlaceName PlaceName::key(Path path, Action a) {
  PlaceName p;
  p.kind_ = Kind::key;
  p.text_ = render(path, "_" + render(a));
  p.path_ = std::move(path);
  p.action_ = std::move(a);
  return p;
}

PlaceName PlaceName::sync_key(const TransitionName& t) {
  if (!t.is_sync()) throw std::invalid_argument("sync key place needs a sync transition: " + t.text());
  PlaceName p;
  p.kind_ = Kind::sync_key;
  p.text_ = "s{" + t.text() + "}";
  p.sync_ = t;
  return p;
}

Action label_of(const TransitionName& t) { return t.is_sync() ? Action::tau() : t.first().action; }

}  // namespace rccsnet
