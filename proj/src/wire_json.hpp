#pragma once

#include <json.hpp>

#include "plgen/log.hpp"

namespace plgen::detail {

nlohmann::ordered_json event_json(const Event& e);

}  // namespace plgen::detail
