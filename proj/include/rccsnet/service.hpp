#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>

#include "rccsnet/encoder.hpp"

namespace httplib {
class Server;
}

namespace rccsnet {

// one simulation: an RCCS state and the marking of its reversible net, kept in step
class Stepper {
 public:
  explicit Stepper(const Process& p);

  const Process& term() const { return term_; }
  const RProcess& state() const { return state_; }
  const Marking& marking() const { return marking_; }
  std::vector<DirectedTransition> enabled() const;
  const std::vector<DirectedTransition>& history() const { return history_; }

  // fires the enabled transition with this rendered name; false if there is none
  bool fire(const std::string& name);
  void fire(const DirectedTransition& t);
  bool undo();

  nlohmann::json state_json() const;
  nlohmann::json net_json(std::size_t radius) const;

 private:
  Process term_;
  Lazy net_;
  RProcess state_;
  Marking marking_;
  std::vector<DirectedTransition> history_;
};

class ServiceError : public std::runtime_error {
 public:
  ServiceError(int status, const std::string& msg) : std::runtime_error(msg), status(status) {}
  int status;
};

class SessionStore {
 public:
  nlohmann::json create(const std::string& term);
  nlohmann::json get(const std::string& id);
  nlohmann::json fire(const std::string& id, const std::string& transition);
  nlohmann::json undo(const std::string& id);
  nlohmann::json net(const std::string& id, std::size_t radius);
  void remove(const std::string& id);

 private:
  struct Session {
    std::mutex mu;
    Stepper stepper;
    explicit Session(const Process& p) : stepper(p) {}
  };
  std::shared_ptr<Session> find(const std::string& id);

  std::mutex mu_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::size_t next_ = 1;
};

void install_routes(httplib::Server& server, SessionStore& store);

}  // namespace rccsnet
