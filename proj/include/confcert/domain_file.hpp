#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "confcert/geometry.hpp"

namespace confcert {

/// Malformed or invalid user input (domain files, command arguments).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parsed domain file: {"dim": 2|3, "points": [[...], ...], "radius": r}.
struct DomainSpec {
  int dim = 2;
  std::vector<std::vector<double>> points;
  double radius = 1.0;
};

inline DomainSpec parse_domain(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("domain file is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw InputError("domain file must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (key != "dim" && key != "points" && key != "radius") throw InputError("unknown field in domain file: \"" + key + "\"");
  }
  for (const char* key : {"dim", "points", "radius"})
    if (!j.contains(key)) throw InputError(std::string("domain file is missing field \"") + key + "\"");

  DomainSpec dom;
  if (!j["dim"].is_number_integer()) throw InputError("\"dim\" must be an integer");
  dom.dim = j["dim"].get<int>();
  if (dom.dim != 2 && dom.dim != 3) throw InputError("\"dim\" must be 2 or 3");
  if (!j["radius"].is_number()) throw InputError("\"radius\" must be a number");
  dom.radius = j["radius"].get<double>();
  if (!(dom.radius > 0.0)) throw InputError("\"radius\" must be positive");
  const auto& pts = j["points"];
  if (!pts.is_array() || pts.empty()) throw InputError("\"points\" must be a nonempty array");
  for (const auto& p : pts) {
    if (!p.is_array() || p.size() != static_cast<std::size_t>(dom.dim))
      throw InputError("each point must be an array of " + std::to_string(dom.dim) + " numbers");
    std::vector<double> c;
    for (const auto& v : p) {
      if (!v.is_number()) throw InputError("point coordinates must be numbers");
      c.push_back(v.get<double>());
    }
    dom.points.push_back(std::move(c));
  }
  return dom;
}

inline std::string serialize_domain(const DomainSpec& dom) {
  nlohmann::json j;
  j["dim"] = dom.dim;
  j["points"] = dom.points;
  j["radius"] = dom.radius;
  return j.dump(2) + "\n";
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// 64-bit FNV-1a, printed as 16 hex digits.
inline std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

template <std::size_t N>
RoundedConvexBody<N> make_body(const DomainSpec& dom) {
  if (dom.dim != static_cast<int>(N)) throw InputError("dimension mismatch");
  std::vector<Vec<N>> pts;
  for (const auto& p : dom.points) {
    Vec<N> v{};
    for (std::size_t i = 0; i < N; ++i) v[i] = p.at(i);
    pts.push_back(v);
  }
  try {
    return RoundedConvexBody<N>(pts, dom.radius);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

inline DomainSpec scaled_domain(const DomainSpec& dom, double lambda) {
  DomainSpec out = dom;
  for (auto& p : out.points)
    for (auto& c : p) c *= lambda;
  out.radius *= lambda;
  return out;
}

}  // namespace confcert
