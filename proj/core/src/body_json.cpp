#include "metent/body_json.hpp"

#include <fstream>
#include <sstream>

#include "json_internal.hpp"
#include "metent/error.hpp"

namespace metent {
namespace detail {
namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw InputError("body JSON at " + (path.empty() ? std::string("/") : path) + ": " + msg);
}

double number(const Json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

Vector vector_of(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a non-empty array of numbers");
  Vector v;
  v.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(number(j[i], path + "/" + std::to_string(i)));
  return v;
}

const Json& field(const Json& j, const char* key, const std::string& path) {
  if (!j.contains(key)) fail(path, std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::optional<std::size_t> infer_dim(const Json& j) {
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) return std::nullopt;
  const auto type = j["type"].get<std::string>();
  if (j.contains("dim") && j["dim"].is_number_unsigned()) return j["dim"].get<std::size_t>();
  if (type == "ellipsoid" && j.contains("semiaxes") && j["semiaxes"].is_array()) {
    return j["semiaxes"].size();
  }
  if (type == "vpolytope" && j.contains("vertices") && j["vertices"].is_array() &&
      !j["vertices"].empty() && j["vertices"][0].is_array()) {
    return j["vertices"][0].size();
  }
  if ((type == "polar" || type == "scale") && j.contains("of")) return infer_dim(j["of"]);
  if ((type == "intersect" || type == "minkowski") && j.contains("parts") && j["parts"].is_array()) {
    for (const auto& p : j["parts"]) {
      if (auto d = infer_dim(p)) return d;
    }
  }
  return std::nullopt;
}

Body parse(const Json& j, std::optional<std::size_t> hint, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  const auto& type_j = field(j, "type", path);
  if (!type_j.is_string()) fail(path + "/type", "expected a string");
  const auto type = type_j.get<std::string>();
  if (auto own = infer_dim(j)) hint = own;

  try {
    if (type == "ball") {
      if (!hint) fail(path, "ball needs \"dim\" (or a sibling or default dimension)");
      return Body::ball(*hint, number(field(j, "radius", path), path + "/radius"));
    }
    if (type == "ellipsoid") {
      return Body::ellipsoid(vector_of(field(j, "semiaxes", path), path + "/semiaxes"));
    }
    if (type == "vpolytope") {
      const auto& vs = field(j, "vertices", path);
      if (!vs.is_array() || vs.empty()) fail(path + "/vertices", "expected a non-empty array");
      std::vector<Vector> verts;
      for (std::size_t i = 0; i < vs.size(); ++i) {
        verts.push_back(vector_of(vs[i], path + "/vertices/" + std::to_string(i)));
      }
      return Body::vpolytope(std::move(verts));
    }
    if (type == "polar") return Body::polar(parse(field(j, "of", path), hint, path + "/of"));
    if (type == "scale") {
      const double s = number(field(j, "factor", path), path + "/factor");
      return Body::scale(s, parse(field(j, "of", path), hint, path + "/of"));
    }
    if (type == "intersect" || type == "minkowski") {
      const auto& ps = field(j, "parts", path);
      if (!ps.is_array() || ps.empty()) fail(path + "/parts", "expected a non-empty array");
      std::vector<Body> parts;
      for (std::size_t i = 0; i < ps.size(); ++i) {
        parts.push_back(parse(ps[i], hint, path + "/parts/" + std::to_string(i)));
      }
      return type == "intersect" ? Body::intersect(std::move(parts))
                                 : Body::minkowski(std::move(parts));
    }
  } catch (const InputError& e) {
    const std::string what = e.what();
    if (what.rfind("body JSON at", 0) == 0) throw;
    fail(path, what);
  }
  fail(path + "/type", "unknown body type \"" + type + "\"");
}

Json vec_json(const Vector& v) { return Json(v); }

}  // namespace

Body body_from_json(const Json& j, std::optional<std::size_t> default_dim) {
  return parse(j, default_dim, "");
}

Json body_json(const Body& body) {
  Json j;
  j["type"] = std::string(to_string(body.kind()));
  switch (body.kind()) {
    case BodyKind::ball:
      j["radius"] = body.radius();
      j["dim"] = body.dim();
      break;
    case BodyKind::ellipsoid:
      j["semiaxes"] = vec_json(body.semiaxes());
      break;
    case BodyKind::vpolytope: {
      Json vs = Json::array();
      for (const auto& v : body.vertices()) vs.push_back(vec_json(v));
      j["vertices"] = std::move(vs);
      break;
    }
    case BodyKind::polar:
      j["of"] = body_json(body.operand());
      break;
    case BodyKind::scale:
      j["factor"] = body.factor();
      j["of"] = body_json(body.operand());
      break;
    case BodyKind::intersect:
    case BodyKind::minkowski: {
      Json ps = Json::array();
      for (const auto& p : body.parts()) ps.push_back(body_json(p));
      j["parts"] = std::move(ps);
      break;
    }
  }
  return j;
}

}  // namespace detail

Body parse_body(std::string_view text, std::optional<std::size_t> default_dim) {
  detail::Json j;
  try {
    j = detail::Json::parse(text);
  } catch (const detail::Json::parse_error& e) {
    throw InputError("body JSON syntax error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  return detail::body_from_json(j, default_dim);
}

Body load_body(const std::filesystem::path& path, std::optional<std::size_t> default_dim) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open body file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_body(ss.str(), default_dim);
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

std::string body_to_json(const Body& body, int indent) {
  return detail::body_json(body).dump(indent);
}

}  // namespace metent
