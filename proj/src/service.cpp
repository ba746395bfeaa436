#include "rccsnet/service.hpp"

#include "httplib.h"
#include "rccsnet/export.hpp"

namespace rccsnet {

Stepper::Stepper(const Process& p)
    : term_(canonical(p)), state_(initial_state(term_)) {
  net_ = encode_reversible(state_);
  marking_ = net_.initial;
}

std::vector<DirectedTransition> Stepper::enabled() const { return rccsnet::enabled(net_, marking_); }

void Stepper::fire(const DirectedTransition& t) {
  Net tr = net_.truncate(marking_);
  Marking next = rccsnet::fire(tr, marking_, t);
  auto steps = t.dir == Direction::fwd ? rccs_forward_steps(state_) : rccs_backward_steps(state_);
  for (const auto& s : steps) {
    if (!(s.transition == t.base)) continue;
    if (marking_of(s.target) != next)
      throw std::logic_error("marking of " + render(s.target) + " differs from the net after " + render_name(t));
    state_ = s.target;
    marking_ = std::move(next);
    if (!history_.empty() && history_.back().base == t.base && history_.back().dir != t.dir)
      history_.pop_back();
    else
      history_.push_back(t);
    return;
  }
  throw std::logic_error("no RCCS step matches " + render_name(t));
}

bool Stepper::fire(const std::string& name) {
  for (const auto& t : enabled())
    if (render_name(t) == name) {
      fire(t);
      return true;
    }
  return false;
}

bool Stepper::undo() {
  if (history_.empty()) return false;
  DirectedTransition last = history_.back();
  fire(DirectedTransition{last.base, last.dir == Direction::fwd ? Direction::bwd : Direction::fwd});
  return true;
}

nlohmann::json Stepper::state_json() const {
  nlohmann::json en = nlohmann::json::array(), hist = nlohmann::json::array();
  for (const auto& t : enabled())
    en.push_back({{"name", render_name(t)},
                  {"direction", t.dir == Direction::fwd ? "fwd" : "bwd"},
                  {"label", render(label_of(t.base))}});
  for (const auto& t : history_) hist.push_back(render_name(t));
  return {{"term", render(term_)},
          {"rccs", render(state_)},
          {"marking", to_json(marking_)},
          {"enabled", en},
          {"history", hist}};
}

nlohmann::json Stepper::net_json(std::size_t radius) const {
  return to_json(neighbourhood(net_, marking_, radius), marking_);
}

std::shared_ptr<SessionStore::Session> SessionStore::find(const std::string& id) {
  std::lock_guard<std::mutex> lk(mu_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw ServiceError(404, "no session " + id);
  return it->second;
}

nlohmann::json SessionStore::create(const std::string& term) {
  Process p;
  try {
    p = parse_process(term);
  } catch (const std::exception& e) {
    throw ServiceError(400, e.what());
  }
  auto s = std::make_shared<Session>(p);
  std::string id;
  {
    std::lock_guard<std::mutex> lk(mu_);
    id = "s" + std::to_string(next_++);
    sessions_.emplace(id, s);
  }
  std::lock_guard<std::mutex> lk(s->mu);
  return {{"id", id}, {"state", s->stepper.state_json()}};
}

nlohmann::json SessionStore::get(const std::string& id) {
  auto s = find(id);
  std::lock_guard<std::mutex> lk(s->mu);
  return s->stepper.state_json();
}

nlohmann::json SessionStore::fire(const std::string& id, const std::string& transition) {
  auto s = find(id);
  std::lock_guard<std::mutex> lk(s->mu);
  if (!s->stepper.fire(transition)) throw ServiceError(409, "transition " + transition + " is not enabled");
  return s->stepper.state_json();
}

nlohmann::json SessionStore::undo(const std::string& id) {
  auto s = find(id);
  std::lock_guard<std::mutex> lk(s->mu);
  if (!s->stepper.undo()) throw ServiceError(409, "nothing to undo");
  return s->stepper.state_json();
}

nlohmann::json SessionStore::net(const std::string& id, std::size_t radius) {
  auto s = find(id);
  std::lock_guard<std::mutex> lk(s->mu);
  return s->stepper.net_json(radius);
}

void SessionStore::remove(const std::string& id) {
  std::lock_guard<std::mutex> lk(mu_);
  if (!sessions_.erase(id)) throw ServiceError(404, "no session " + id);
}

namespace {

template <class F>
void guarded(httplib::Response& res, F&& f) {
  try {
    res.set_content(f().dump(), "application/json");
  } catch (const ServiceError& e) {
    res.status = e.status;
    res.set_content(nlohmann::json{{"error", e.what()}}.dump(), "application/json");
  } catch (const nlohmann::json::exception& e) {
    res.status = 400;
    res.set_content(nlohmann::json{{"error", e.what()}}.dump(), "application/json");
  } catch (const std::exception& e) {
    res.status = 500;
    res.set_content(nlohmann::json{{"error", e.what()}}.dump(), "application/json");
  }
}

std::string body_field(const httplib::Request& req, const char* field) {
  auto j = nlohmann::json::parse(req.body);
  if (!j.is_object() || !j.contains(field) || !j[field].is_string())
    throw ServiceError(400, std::string("request body needs a string field '") + field + "'");
  return j[field].get<std::string>();
}

}  // namespace

void install_routes(httplib::Server& server, SessionStore& store) {
  server.Post("/sessions", [&store](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { return store.create(body_field(req, "term")); });
  });
  server.Get(R"(/sessions/([^/]+))", [&store](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { return store.get(req.matches[1]); });
  });
  server.Delete(R"(/sessions/([^/]+))", [&store](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      store.remove(req.matches[1]);
      return nlohmann::json{{"deleted", std::string(req.matches[1])}};
    });
  });
  server.Post(R"(/sessions/([^/]+)/fire)", [&store](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { return store.fire(req.matches[1], body_field(req, "transition")); });
  });
  server.Post(R"(/sessions/([^/]+)/undo)", [&store](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { return store.undo(req.matches[1]); });
  });
  server.Get(R"(/sessions/([^/]+)/net)", [&store](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      std::size_t radius = 1;
      if (req.has_param("radius")) {
        try {
          radius = std::stoul(req.get_param_value("radius"));
        } catch (const std::exception&) {
          throw ServiceError(400, "radius must be a non-negative integer");
        }
        if (radius > 8) throw ServiceError(400, "radius is limited to 8");
      }
      return store.net(req.matches[1], radius);
    });
  });
}

}  // namespace rccsnet
