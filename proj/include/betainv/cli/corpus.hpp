#pragma once

// Built-in germ corpus: three worked surface examples, the smooth-critical-
// locus germ y^2 + z^2, the structured plane-curve family f = g^p h, and the
// suspension partners h used with it.

#include <string>
#include <vector>

#include "betainv/cli/spec.hpp"

namespace betainv {

inline GermSpec make_spec(std::string name, std::vector<std::string> vars, std::string f,
                          std::optional<std::string> z0 = std::nullopt) {
  GermSpec s;
  s.name = std::move(name);
  s.variables = std::move(vars);
  s.f = std::move(f);
  s.z0 = std::move(z0);
  return s;
}

inline std::vector<GermSpec> surface_corpus() {
  std::vector<GermSpec> out;
  auto ex43 = make_spec("ex43", {"x", "y", "z"}, "(x^3 + y^2 + z^5)*z", "x");
  ex43.components = {{"y", "x^3 + 6*z^5"}, {"z", "x^3 + y^2"}};
  out.push_back(ex43);
  auto ex44 = make_spec("ex44", {"x", "y", "z"}, "(z^2 - x^2 - y^2)*(z - x)", "x");
  ex44.components = {{"y", "3*z + x"}};
  out.push_back(ex44);
  auto ex45 = make_spec("ex45", {"x", "y", "z"}, "z^2 + (y^2 - x^3)^2", "x");
  ex45.components = {{"z", "y^2 - x^3"}};
  out.push_back(ex45);
  auto smooth = make_spec("smooth-sigma", {"x", "y", "z"}, "y^2 + z^2", "x");
  smooth.components = {{"y", "z"}};
  out.push_back(smooth);
  return out;
}

struct PlaneCurveEntry {
  std::string g;
  unsigned p;
  std::string h;
};

/// f = g^p h with both branches of the closed formula (h(0) = 0 and h(0) != 0).
inline std::vector<PlaneCurveEntry> plane_curve_family() {
  return {{"y^2 - x^3", 2, "1"},   {"y", 2, "x"},         {"y^2 - x^3", 2, "y"},     {"y", 3, "x"},
          {"y", 2, "1"},           {"y^2 - x^3", 3, "1"}, {"y^2 - x^5", 2, "1"},     {"y", 2, "x^2 + y^3"},
          {"y - x^2", 2, "y + x^2"}, {"x", 2, "y^2 - x^3"}, {"y^2 - x^3", 2, "1 + x"}, {"y^3 - x^4", 2, "1"},
          {"y", 4, "1"}};
}

inline std::vector<GermSpec> plane_curve_corpus() {
  std::vector<GermSpec> out;
  unsigned i = 0;
  for (const auto& e : plane_curve_family()) {
    char name[16];
    std::snprintf(name, sizeof name, "plane%02u", ++i);
    GermSpec s = make_spec(name, {"x", "y"}, "(" + e.g + ")^" + std::to_string(e.p) + "*(" + e.h + ")");
    s.structured = StructuredForm{e.g, e.h, e.p};
    out.push_back(s);
  }
  return out;
}

struct SuspensionPartner {
  std::vector<std::string> variables;
  std::string h;
};

inline std::vector<SuspensionPartner> suspension_partners() {
  return {{{"w"}, "w^2"}, {{"w", "v"}, "w^3 + v^2"}, {{"w", "v"}, "w^2 + v^2"}};
}

/// Every corpus germ with a 1-dimensional critical locus.
inline std::vector<GermSpec> full_corpus() {
  auto out = surface_corpus();
  for (auto& s : plane_curve_corpus()) out.push_back(s);
  return out;
}

inline std::optional<GermSpec> corpus_spec(const std::string& name) {
  for (const auto& s : full_corpus())
    if (s.name == name) return s;
  return std::nullopt;
}

}  // namespace betainv
