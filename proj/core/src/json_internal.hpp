#pragma once

#include <optional>

#include "json.hpp"
#include "metent/body.hpp"

namespace metent::detail {

using Json = nlohmann::json;

Body body_from_json(const Json& j, std::optional<std::size_t> default_dim);
Json body_json(const Body& body);

}  // namespace metent::detail
