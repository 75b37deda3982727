#pragma once

// JSON rendering of analyses, cycles and check verdicts. Integers are
// written as decimal strings so consumers never overflow; booleans stay
// booleans. Field names are stable (see README).

#include <string>

#include "betainv/cli/spec.hpp"
#include "betainv/invariants/constructions.hpp"

#ifndef BETAINV_VERSION
#define BETAINV_VERSION "1.0.0"
#endif

namespace betainv {

inline constexpr const char* kEngineName = "betainv";
inline constexpr const char* kEngineVersion = BETAINV_VERSION;
inline constexpr const char* kReportFormat = "1";

template <class T>
std::string num(T v) {
  return std::to_string(v);
}

inline Json to_json(const CheckResult& r) {
  Json details = Json::object();
  for (const auto& d : r.details) {
    std::visit(
        [&](const auto& v) {
          using V = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<V, std::int64_t>) details[d.key] = num(v);
          else details[d.key] = v;
        },
        d.value);
  }
  return {{"name", r.name}, {"verdict", to_string(r.verdict)}, {"reason", r.reason}, {"details", details}};
}

inline Json to_json(const QIdeal& I) {
  Json gens = Json::array();
  for (const auto& g : I.generators()) gens.push_back(to_string(g));
  return gens;
}

inline Json to_json(const GermContext<Rational>& ctx, const CycleComponent& c) {
  Json j;
  j["ideal"] = to_json(ctx.in_user(c.ideal));
  j["multiplicity"] = num(c.multiplicity);
  j["branches"] = num(c.branches);
  j["z0_section"] = num(c.section);
  j["mult0"] = num(c.mult0);
  j["certified"] = c.certified_prime;
  j["mult0_confident"] = c.mult0_confident;
  if (!c.warning.empty()) j["warning"] = c.warning;
  return j;
}

inline Json to_json(const GermContext<Rational>& ctx, const CurveCycle& Z) {
  Json arr = Json::array();
  for (const auto& c : Z.components) arr.push_back(to_json(ctx, c));
  return arr;
}

inline Json context_json(const GermContext<Rational>& ctx) {
  return {{"z0", to_string(ctx.z0_form)},
          {"z0_hint_used", ctx.hint_used},
          {"forms_tried", num(ctx.attempts)},
          {"seed", num(ctx.seed)}};
}

inline Json to_json(const LocalNumbers& n) {
  return {{"gamma_empty", n.gamma_empty},
          {"mu_restricted", num(n.mu_restricted)},
          {"lambda0", num(n.lambda0)},
          {"gamma_dot_z0", num(n.gamma_z0)},
          {"gamma_dot_f", num(n.gamma_f)},
          {"lambda1_cycle", num(n.lambda1_cycle)},
          {"lambda1_slice", num(n.lambda1_slice)}};
}

/// The invariant report of an analysis.
inline Json to_json(const Analysis& a) {
  Json j;
  j["context"] = context_json(a.ctx);
  j["lambda0"] = num(a.lambda0);
  j["lambda1"] = num(a.lambda1);
  j["mu_restricted"] = num(a.mu_restricted);
  j["sum_mu_circ"] = num(a.sum_mu_circ);
  j["betti_diff"] = num(a.betti_diff);
  j["beta"] = num(a.beta);
  j["beta_formulas"] = {num(a.beta_formula[0]), num(a.beta_formula[1]), num(a.beta_formula[2])};
  j["intersections"] = to_json(a.numbers);
  j["le_cycle"] = to_json(a.ctx, a.polar.lambda);
  if (a.polar.gamma) j["polar_curve"] = to_json(a.ctx, *a.polar.gamma);
  j["certified"] = a.certified;
  return j;
}

/// Removes timing fields (recursively) so two reports can be compared.
inline Json strip_timing(Json j) {
  if (j.is_object()) {
    j.erase("timing");
    for (auto& [_, v] : j.items()) v = strip_timing(v);
  } else if (j.is_array()) {
    for (auto& v : j) v = strip_timing(v);
  }
  return j;
}

}  // namespace betainv
