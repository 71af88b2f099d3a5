#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "metent/body.hpp"

namespace metent {

/// Parses the recursive body schema
///   {"type":"ball","radius":r,"dim":n} | {"type":"ellipsoid","semiaxes":[...]}
///   | {"type":"vpolytope","vertices":[[...],...]} | {"type":"polar","of":B}
///   | {"type":"intersect","parts":[B,...]} | {"type":"scale","factor":s,"of":B}
///   | {"type":"minkowski","parts":[B,...]}
/// A ball without "dim" takes its dimension from sibling parts, then from
/// default_dim. Errors are InputError naming the JSON path (and the byte
/// position for syntax errors).
Body parse_body(std::string_view text, std::optional<std::size_t> default_dim = std::nullopt);
Body load_body(const std::filesystem::path& path,
               std::optional<std::size_t> default_dim = std::nullopt);

/// Serializes with full precision; balls always carry "dim".
std::string body_to_json(const Body& body, int indent = -1);

}  // namespace metent
