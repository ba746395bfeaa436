#pragma once

#include <string>

#include "json.hpp"

namespace rccsnet {

struct Verdict {
  bool ok = true;
  std::string violated_condition;
  nlohmann::json witness;

  static Verdict pass() { return {}; }
  static Verdict fail(std::string cond, nlohmann::json w) { return {false, std::move(cond), std::move(w)}; }

  nlohmann::json to_json() const {
    return {{"ok", ok},
            {"violated_condition", ok ? nlohmann::json(nullptr) : nlohmann::json(violated_condition)},
            {"witness", witness}};
  }
};

}  // namespace rccsnet
