#pragma once

// Germ specification files. One germ per JSON object:
//
//   {
//     "name": "ex43",
//     "variables": ["x", "y", "z"],
//     "f": "(x^3 + y^2 + z^5)*z",
//     "z0": "x",                                  optional
//     "structured": {"g": "y^2 - x^3", "p": 2, "h": "1"},   optional
//     "components": [["y", "x^3 + 6*z^5"]],       optional
//     "seed": 1                                    optional, default 1 (number or string)
//   }

#include <algorithm>
#include <cctype>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include "betainv/cli/parse.hpp"
#include "betainv/ring/format.hpp"
#include "betainv/sbasis/ideal.hpp"
#include "json.hpp"

namespace betainv {

using Json = nlohmann::ordered_json;

struct StructuredForm {
  std::string g, h;
  unsigned p = 2;
};

struct GermSpec {
  std::string name;
  std::vector<std::string> variables;
  std::string f;
  std::optional<std::string> z0;
  std::optional<StructuredForm> structured;
  std::vector<std::vector<std::string>> components;
  std::uint64_t seed = 1;
};

/// A spec with every expression parsed in its frame.
struct ParsedSpec {
  GermSpec spec;
  QRingPtr ring;
  QPoly f;
  std::optional<QPoly> z0;
  std::optional<QPoly> g, h;
  std::vector<QIdeal> components;
};

namespace detail {

inline bool valid_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

inline Error spec_error(const std::string& where, const std::string& what) {
  return Error(ErrorKind::input, where + ": " + what);
}

inline QPoly parse_field(const std::string& where, const std::string& text, const QRingPtr& ring) {
  try {
    return parse<Rational>(text, ring);
  } catch (const Error& e) {
    throw spec_error(where, e.what());
  }
}

}  // namespace detail

inline Json to_json(const GermSpec& s) {
  Json j;
  j["name"] = s.name;
  j["variables"] = s.variables;
  j["f"] = s.f;
  if (s.z0) j["z0"] = *s.z0;
  if (s.structured) j["structured"] = {{"g", s.structured->g}, {"p", s.structured->p}, {"h", s.structured->h}};
  if (!s.components.empty()) j["components"] = s.components;
  j["seed"] = std::to_string(s.seed);
  return j;
}

inline GermSpec spec_from_json(const Json& j, const std::string& where = "spec") {
  if (!j.is_object()) throw detail::spec_error(where, "expected a JSON object");
  static const std::set<std::string> known = {"name", "variables", "f", "z0", "structured", "components", "seed"};
  for (const auto& [key, _] : j.items())
    if (!known.count(key)) throw detail::spec_error(where, "unknown field '" + key + "'");
  GermSpec s;
  try {
    s.name = j.value("name", std::string("germ"));
    if (!j.contains("variables")) throw detail::spec_error(where, "missing 'variables'");
    s.variables = j.at("variables").get<std::vector<std::string>>();
    if (!j.contains("f")) throw detail::spec_error(where, "missing 'f'");
    s.f = j.at("f").get<std::string>();
    if (j.contains("z0") && !j.at("z0").is_null()) s.z0 = j.at("z0").get<std::string>();
    if (j.contains("structured") && !j.at("structured").is_null()) {
      const auto& st = j.at("structured");
      StructuredForm form;
      form.g = st.at("g").get<std::string>();
      form.h = st.value("h", std::string("1"));
      form.p = st.at("p").get<unsigned>();
      s.structured = form;
    }
    if (j.contains("components")) s.components = j.at("components").get<std::vector<std::vector<std::string>>>();
    if (j.contains("seed")) {
      const auto& v = j.at("seed");
      if (v.is_string()) {
        const std::string t = v.get<std::string>();
        const auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), s.seed);
        if (t.empty() || ec != std::errc() || end != t.data() + t.size())
          throw detail::spec_error(where, "seed must be a non-negative 64-bit integer");
      } else {
        s.seed = v.get<std::uint64_t>();
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw detail::spec_error(where, e.what());
  }
  return s;
}

/// Parses and validates every expression. A structured form must satisfy
/// f = g^p h exactly.
inline ParsedSpec parse_spec(const GermSpec& s) {
  const std::string where = "spec '" + s.name + "'";
  if (s.variables.empty()) throw detail::spec_error(where, "no variables");
  if (s.variables.size() > 8) throw detail::spec_error(where, "at most 8 variables are supported");
  std::set<std::string> seen;
  for (const auto& v : s.variables) {
    if (!detail::valid_identifier(v)) throw detail::spec_error(where, "bad variable name '" + v + "'");
    if (!seen.insert(v).second) throw detail::spec_error(where, "duplicate variable '" + v + "'");
  }
  ParsedSpec p;
  p.spec = s;
  p.ring = QRing::make(s.variables);
  p.f = detail::parse_field(where + " f", s.f, p.ring);
  if (s.z0) p.z0 = detail::parse_field(where + " z0", *s.z0, p.ring);
  if (s.structured) {
    if (s.structured->p < 2) throw detail::spec_error(where, "structured p must be > 1");
    p.g = detail::parse_field(where + " g", s.structured->g, p.ring);
    p.h = detail::parse_field(where + " h", s.structured->h, p.ring);
    if (p.g->pow(s.structured->p) * *p.h != p.f) throw detail::spec_error(where, "f != g^p h");
  }
  for (const auto& gens : s.components) {
    QIdeal I(p.ring);
    for (const auto& g : gens) I.add(detail::parse_field(where + " component", g, p.ring));
    if (I.is_zero()) throw detail::spec_error(where, "empty component hint");
    p.components.push_back(I);
  }
  return p;
}

inline GermSpec load_spec_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::input, "cannot read " + path.string());
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::input, path.string() + ": " + e.what());
  }
  return spec_from_json(j, path.string());
}

/// A file, or every *.json file of a directory in name order.
inline std::vector<std::filesystem::path> spec_paths(const std::filesystem::path& path) {
  namespace fs = std::filesystem;
  if (!fs::exists(path)) throw Error(ErrorKind::input, "no such file or directory: " + path.string());
  if (!fs::is_directory(path)) return {path};
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(path))
    if (e.is_regular_file() && e.path().extension() == ".json") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  if (out.empty()) throw Error(ErrorKind::input, "no .json specs in " + path.string());
  return out;
}

}  // namespace betainv
