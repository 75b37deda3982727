#pragma once

// Golden assertions over the built-in corpus. Deterministic: fixed seeds,
// fixed z0 hints, results reported in a fixed order.

#include "betainv/cli/commands.hpp"

namespace betainv {

struct Assertion {
  std::string name, expected, actual;
  bool pass = false;
};

namespace detail {

using Assertions = std::vector<Assertion>;

struct Collector {
  Assertions out;
  std::string prefix;

  template <class A, class B>
  void eq(const std::string& what, const A& expected, const B& actual) {
    std::ostringstream e, a;
    e << std::boolalpha << expected;
    a << std::boolalpha << actual;
    out.push_back({prefix + what, e.str(), a.str(), e.str() == a.str()});
  }
  void verdict(const CheckResult& r, Verdict v) { eq(r.name + " verdict", to_string(v), to_string(r.verdict)); }
};

inline std::optional<std::int64_t> detail_int(const CheckResult& r, const std::string& key) {
  for (const auto& d : r.details)
    if (d.key == key)
      if (auto* v = std::get_if<std::int64_t>(&d.value)) return *v;
  return std::nullopt;
}

inline std::string int_or_missing(const std::optional<std::int64_t>& v) { return v ? std::to_string(*v) : "missing"; }

inline Analysis corpus_analysis(const std::string& name, bool with_gamma) {
  const ParsedSpec ps = parse_spec(*corpus_spec(name));
  return analyze(make_context(ps.f, ps.z0, ps.spec.seed), with_gamma);
}

inline bool cycle_is(const GermContext<Rational>& ctx, const CycleComponent& c, const std::vector<std::string>& gens) {
  QIdeal H(ctx.user_ring);
  for (const auto& g : gens) H.add(parse<Rational>(g, ctx.user_ring));
  return ideal_equal(saturate_at_origin(H), saturate_at_origin(ctx.in_user(c.ideal)));
}

inline Assertions golden_ex43() {
  Collector c{{}, "ex43 "};
  const Analysis a = corpus_analysis("ex43", true);
  c.eq("lambda0", 13, a.lambda0);
  c.eq("lambda1", 2, a.lambda1);
  c.eq("beta", 12, a.beta);
  c.eq("betti_diff", 11, a.betti_diff);
  c.eq("polar components", 1, a.polar.gamma->components.size());
  if (a.polar.gamma->components.size() == 1) {
    const auto& g = a.polar.gamma->components[0];
    c.eq("polar component is V(y, x^3 + 6*z^5)", true, cycle_is(a.ctx, g, {"y", "x^3 + 6*z^5"}));
    c.eq("polar multiplicity", 1, g.multiplicity);
  }
  c.eq("le components", 1, a.polar.lambda.components.size());
  if (a.polar.lambda.components.size() == 1) {
    const auto& l = a.polar.lambda.components[0];
    c.eq("le component is V(z, x^3 + y^2)", true, cycle_is(a.ctx, l, {"z", "x^3 + y^2"}));
    c.eq("mu_circ", 1, l.multiplicity);
    c.eq("mult0", 2, l.mult0);
    c.eq("z0 section", 2, l.section);
  }
  c.verdict(check_identities(a), Verdict::hold);
  const auto t = check_thm42(a, parse<Rational>("y", a.ctx.user_ring));
  c.verdict(t, Verdict::hold);
  c.eq("gamma2.V(x,y)", "5", int_or_missing(detail_int(t, "gamma2_z0_z1")));
  return c.out;
}

inline Assertions golden_ex44() {
  Collector c{{}, "ex44 "};
  const Analysis a = corpus_analysis("ex44", true);
  c.eq("beta", 2, a.beta);
  c.eq("betti_diff", -1, a.betti_diff);
  c.eq("sum_mu_circ", 3, a.sum_mu_circ);
  c.eq("polar components", 1, a.polar.gamma->components.size());
  if (a.polar.gamma->components.size() == 1)
    c.eq("polar component is V(y, 3*z + x)", true, cycle_is(a.ctx, a.polar.gamma->components[0], {"y", "3*z + x"}));
  c.verdict(check_identities(a), Verdict::hold);
  const auto t = check_thm42(a);
  c.verdict(t, Verdict::undecided);
  c.eq("thm42 reason", "no candidate h", t.reason);
  return c.out;
}

inline Assertions golden_ex45() {
  Collector c{{}, "ex45 "};
  const Analysis a = corpus_analysis("ex45", false);
  c.eq("lambda0", 5, a.lambda0);
  c.eq("lambda1", 2, a.lambda1);
  c.eq("beta", 4, a.beta);
  c.verdict(check_identities(a), Verdict::hold);
  const auto p = check_prop41(a.ctx);
  c.eq("gamma2.V(x,y)", "1", int_or_missing(detail_int(p, "gamma2_z0_z1")));
  c.verdict(check_cor46(a), Verdict::hold);
  const auto s = check_prop31(parse("(y^2 - x^3)^2", {"x", "y"}), parse("z^2", {"z"}), std::nullopt, 1);
  c.verdict(s.check, Verdict::hold);
  c.eq("beta of (y^2-x^3)^2 + z^2", 4, s.beta_f);
  return c.out;
}

inline Assertions golden_smooth() {
  Collector c{{}, "smooth-sigma "};
  const Analysis a = corpus_analysis("smooth-sigma", false);
  c.eq("gamma empty", true, a.numbers.gamma_empty);
  c.eq("mu_restricted", 1, a.mu_restricted);
  c.eq("lambda1", 1, a.lambda1);
  c.eq("beta", 0, a.beta);
  c.verdict(check_gll(a), Verdict::hold);
  c.verdict(check_beta_conjecture(a), Verdict::hold);
  c.verdict(check_identities(a), Verdict::hold);
  return c.out;
}

inline Assertions golden_plane_curve(const GermSpec& spec) {
  Collector c{{}, spec.name + " "};
  const ParsedSpec ps = parse_spec(spec);
  const auto r = beta_plane_curve({*ps.g, *ps.h, spec.structured->p}, spec.seed);
  c.verdict(r.check, Verdict::hold);
  static const std::vector<std::pair<std::string, std::int64_t>> known = {
      {"(y^2 - x^3)^2*(1)", 4}, {"(y)^2*(x)", 2}, {"(y^2 - x^3)^2*(y)", 12}};
  for (const auto& [f, beta] : known)
    if (spec.f == f) c.eq("beta", beta, r.pipeline);
  return c.out;
}

inline Assertions golden_suspension(const GermSpec& spec, const SuspensionPartner& h) {
  Collector c{{}, spec.name + " + " + h.h + " "};
  const ParsedSpec ps = parse_spec(spec);
  const auto r = check_prop31(ps.f, parse(h.h, h.variables), ps.z0, spec.seed);
  c.verdict(r.check, Verdict::hold);
  return c.out;
}

inline Assertions golden_identities(const GermSpec& spec) {
  Collector c{{}, spec.name + " "};
  const ParsedSpec ps = parse_spec(spec);
  c.verdict(check_identities(analyze(make_context(ps.f, ps.z0, spec.seed))), Verdict::hold);
  return c.out;
}

inline Assertions golden_independence(const GermSpec& spec) {
  Collector c{{}, spec.name + " "};
  const ParsedSpec ps = parse_spec(spec);
  c.verdict(z0_independence(ps.f, 3, spec.seed).check, Verdict::hold);
  return c.out;
}

}  // namespace detail

/// Runs every golden assertion on up to `jobs` threads.
inline std::vector<Assertion> run_selftest(unsigned jobs) {
  using Task = std::function<detail::Assertions()>;
  std::vector<std::pair<std::string, Task>> tasks = {
      {"ex43", detail::golden_ex43}, {"ex44", detail::golden_ex44}, {"ex45", detail::golden_ex45},
      {"smooth-sigma", detail::golden_smooth}};
  for (const auto& s : plane_curve_corpus()) tasks.push_back({s.name, [s] { return detail::golden_plane_curve(s); }});
  for (const auto& s : plane_curve_corpus())
    for (const auto& h : suspension_partners())
      tasks.push_back({s.name + " + " + h.h, [s, h] { return detail::golden_suspension(s, h); }});
  for (const auto& s : full_corpus()) tasks.push_back({s.name + " identities", [s] { return detail::golden_identities(s); }});
  for (const auto& s : surface_corpus())
    tasks.push_back({s.name + " independence", [s] { return detail::golden_independence(s); }});

  std::vector<detail::Assertions> results(tasks.size());
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < tasks.size();) {
      try {
        results[i] = tasks[i].second();
      } catch (const std::exception& e) {
        results[i] = {{tasks[i].first, "no error", e.what(), false}};
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  std::vector<Assertion> out;
  for (auto& r : results) out.insert(out.end(), r.begin(), r.end());
  return out;
}

inline Outcome selftest_report(unsigned jobs) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto rows = run_selftest(jobs);
  Json list = Json::array();
  std::size_t failed = 0;
  for (const auto& r : rows) {
    list.push_back({{"name", r.name}, {"expected", r.expected}, {"actual", r.actual}, {"pass", r.pass}});
    if (!r.pass) ++failed;
  }
  const int code = failed ? kExitCheckFailed : kExitOk;
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  Json doc;
  doc["engine"] = {{"name", kEngineName}, {"version", kEngineVersion}, {"format", kReportFormat}};
  doc["input"] = {{"command", "selftest"}};
  doc["status"] = {{"exit_code", num(code)}, {"outcome", outcome_name(code)}};
  doc["result"] = {{"assertions", list}, {"passed", num(rows.size() - failed)}, {"failed", num(failed)}};
  doc["checks"] = Json::array();
  doc["warnings"] = Json::array();
  doc["timing"] = {{"elapsed_ms", num(static_cast<std::uint64_t>(ms))}};
  return {doc, code};
}

}  // namespace betainv
