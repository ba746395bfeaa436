#pragma once

#include <string>

#include "rccsnet/encoder.hpp"

namespace rccsnet {

std::string to_dot(const Net& n, const Marking& marked);
nlohmann::json to_json(const Net& n, const Marking& marked);
nlohmann::json to_json(const Marking& m);

// union of the truncations at every marking within radius steps of m
Net neighbourhood(const Lazy& n, const Marking& m, std::size_t radius);

}  // namespace rccsnet
