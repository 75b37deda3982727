#pragma once

// Subcommands. Each request produces one report document and an exit code:
//   0  every requested check holds / the computation completed
//   2  a check failed (including internal cross-checks)
//   3  undecided (no candidate h, budget exhausted, uncertified data, ...)
//   4  input error

#include <gmp.h>

#include <chrono>
#include <functional>
#include <future>
#include <mutex>
#include <thread>

#include "betainv/cli/cache.hpp"
#include "betainv/cli/corpus.hpp"

namespace betainv {

enum ExitCode : int { kExitOk = 0, kExitCheckFailed = 2, kExitUndecided = 3, kExitInputError = 4 };

inline const char* outcome_name(int code) {
  switch (code) {
    case kExitOk: return "ok";
    case kExitCheckFailed: return "check failed";
    case kExitUndecided: return "undecided";
    case kExitInputError: return "input error";
  }
  return "unknown";
}

/// Input error beats a failed check, which beats undecided, which beats ok.
inline int worst_exit(int a, int b) {
  auto rank = [](int c) { return c == kExitInputError ? 3 : c == kExitCheckFailed ? 2 : c == kExitUndecided ? 1 : 0; };
  return rank(a) >= rank(b) ? a : b;
}

inline int exit_for(Verdict v) {
  switch (v) {
    case Verdict::hold: return kExitOk;
    case Verdict::fail: return kExitCheckFailed;
    case Verdict::undecided: return kExitUndecided;
  }
  return kExitUndecided;
}

inline int exit_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::input:
    case ErrorKind::frame_mismatch:
    case ErrorKind::not_one_dimensional:
      return kExitInputError;
    case ErrorKind::internal_inconsistency:
    case ErrorKind::inconsistent_lambda1:
      return kExitCheckFailed;
    default:
      return kExitUndecided;
  }
}

struct RunOptions {
  std::optional<std::string> z0;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> prime;  // --field fp:<prime>
  std::optional<std::uint64_t> budget;
  unsigned trials = 3;
  std::optional<std::string> h;      // thm42 candidate or suspension partner
  std::vector<std::string> h_vars;   // frame of a suspension partner
  bool use_cache = true;
  std::filesystem::path cache_dir = ReportCache::default_dir();
  unsigned jobs = 0;                 // 0: hardware concurrency

  Json to_json() const {
    Json j;
    j["z0"] = z0 ? Json(*z0) : Json();
    j["seed"] = seed ? Json(num(*seed)) : Json();
    j["field"] = prime ? "fp:" + num(*prime) : "qq";
    j["budget"] = budget ? Json(num(*budget)) : Json();
    j["trials"] = num(trials);
    j["h"] = h ? Json(*h) : Json();
    j["h_variables"] = h_vars;
    return j;
  }
};

/// Parses "qq" or "fp:<prime>".
inline std::optional<std::uint64_t> parse_field_flag(const std::string& s) {
  if (s == "qq") return std::nullopt;
  if (s.rfind("fp:", 0) != 0) throw Error(ErrorKind::input, "--field must be qq or fp:<prime>");
  const std::string digits = s.substr(3);
  if (digits.empty() || digits.size() > 18 || !std::all_of(digits.begin(), digits.end(), ::isdigit)) {
    throw Error(ErrorKind::input, "bad prime in --field: " + digits);
  }
  const std::uint64_t p = std::stoull(digits);
  mpz_class z(digits);
  if (mpz_probab_prime_p(z.get_mpz_t(), 30) == 0) throw Error(ErrorKind::input, digits + " is not a prime");
  if (p <= (std::uint64_t{1} << 20) || p >= (std::uint64_t{1} << 62)) {
    throw Error(ErrorKind::input, "the --field prime must lie in (2^20, 2^62)");
  }
  return p;
}

inline const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = {"gll", "prop41", "thm42", "cor46", "beta-conj", "identities"};
  return names;
}

struct Request {
  std::string command;
  std::string check;  // for "check"
  GermSpec spec;
  RunOptions options;

  Json to_json() const {
    Json j;
    j["command"] = command;
    if (!check.empty()) j["check"] = check;
    j["spec"] = betainv::to_json(spec);
    j["options"] = options.to_json();
    return j;
  }
};

struct Outcome {
  Json report;
  int exit_code = kExitOk;
};

namespace detail {

struct Builder {
  Json result = Json::object();
  Json checks = Json::array();
  Json warnings = Json::array();
  int code = kExitOk;

  void check(const CheckResult& r, bool affects_exit = true) {
    checks.push_back(to_json(r));
    if (affects_exit) code = worst_exit(code, exit_for(r.verdict));
  }
  void warn(const std::string& w) {
    for (const auto& x : warnings)
      if (x == w) return;
    warnings.push_back(w);
  }
};

inline GermContext<Rational> context_for(const ParsedSpec& ps) {
  return make_context(ps.f, ps.z0, ps.spec.seed);
}

/// -1 smooth at 0, 0 isolated, 1 curve, >= 2 larger.
inline int critical_dimension(const QPoly& f) {
  QIdeal J(f.ring());
  for (std::size_t i = 0; i < f.ring()->size(); ++i) J.add(partial(f, i));
  if (J.is_zero()) return static_cast<int>(f.ring()->size());
  return dim_at_origin(J);
}

inline QPoly parse_partner(const RunOptions& o) {
  if (!o.h) throw Error(ErrorKind::input, "--h-expr is required");
  if (o.h_vars.empty()) throw Error(ErrorKind::input, "--h-vars is required with --h-expr for suspend");
  return parse<Rational>(*o.h, QRing::make(o.h_vars));
}

inline void modular_prepass(Builder& b, const GermContext<Rational>& ctx, const LocalNumbers& exact, std::uint64_t p) {
  try {
    const LocalNumbers mod = modular_numbers(ctx, p);
    const bool agree = mod == exact;
    b.result["modular_prepass"] = {{"prime", num(p)}, {"numbers", to_json(mod)}, {"agrees", agree}};
    if (!agree) b.warn("numbers modulo " + num(p) + " differ from the rational ones (bad prime)");
  } catch (const Error& e) {
    b.result["modular_prepass"] = {{"prime", num(p)}, {"error", e.what()}};
    b.warn(std::string("modular pre-pass skipped: ") + e.what());
  }
}

inline CheckResult check_component_hints(const Analysis& a, const ParsedSpec& ps) {
  CheckResult r;
  r.name = "component-hints";
  std::vector<QIdeal> computed;
  for (const auto& c : a.polar.lambda.components) computed.push_back(saturate_at_origin(a.ctx.in_user(c.ideal)));
  if (a.polar.gamma)
    for (const auto& c : a.polar.gamma->components) computed.push_back(saturate_at_origin(a.ctx.in_user(c.ideal)));
  bool all = true;
  for (std::size_t i = 0; i < ps.components.size(); ++i) {
    const QIdeal H = saturate_at_origin(ps.components[i]);
    bool hit = false;
    for (const auto& C : computed)
      if (ideal_equal(H, C)) hit = true;
    r.add("hint" + std::to_string(i + 1), hit);
    all = all && hit;
  }
  return r.set(all ? Verdict::hold : Verdict::fail,
               all ? "every hinted component was found" : "a hinted component is not a polar or Le component");
}

inline void analysis_warnings(Builder& b, const Analysis& a) {
  for (const auto& w : a.warnings) b.warn(w);
}

inline void polar_surface_json(Builder& b, const GermContext<Rational>& ctx) {
  Json s;
  try {
    const QIdeal S = polar_surface(ctx);
    s["generators"] = to_json(ctx.in_user(S));
    s["dimension"] = "2";
    const QIdeal line = S + ctx.var(0) + ctx.var(1);
    if (auto v = vdim_local(line)) s["gamma2_dot_z0_z1"] = num(*v);
    else s["gamma2_dot_z0_z1"] = Json();
  } catch (const Error& e) {
    s["error"] = e.what();
  }
  b.result["polar_surface"] = s;
}

inline void milnor_route(Builder& b, const ParsedSpec& ps, int d, bool allowed) {
  b.result["critical_locus_dimension"] = std::to_string(d);
  if (!allowed) {
    throw Error(ErrorKind::input, "this command needs a 1-dimensional critical locus; got dimension " + std::to_string(d));
  }
  b.result["milnor_number"] = num(d < 0 ? std::uint64_t{0} : milnor_number(ps.f));
  b.warn(d < 0 ? "f is smooth at the origin; beta is undefined" : "isolated critical point; beta is undefined, reporting the Milnor number");
}

inline void run_command(Builder& b, const Request& req, const ParsedSpec& ps) {
  const std::string& cmd = req.command;
  const auto& o = req.options;

  if (cmd == "plane-curve") {
    if (!ps.g || !ps.h) throw Error(ErrorKind::input, "plane-curve needs a structured form (g, p, h)");
    StructuredPlaneCurve s{*ps.g, *ps.h, ps.spec.structured->p};
    const auto r = beta_plane_curve(s, ps.spec.seed);
    b.result["formula"] = num(r.formula);
    b.result["pipeline"] = num(r.pipeline);
    b.check(r.check);
    if (!Field<Rational>::is_zero(value_at_origin(s.h)) || s.h.is_constant()) return;
    try {
      b.check(mu_product_formula(s.g, s.h));
    } catch (const Error& e) {
      b.warn(std::string("mu product formula skipped: ") + e.what());
    }
    return;
  }

  const bool milnor_ok = cmd == "analyze" || cmd == "beta" || cmd == "le" || cmd == "polar";
  const int d = critical_dimension(ps.f);
  if (d != 1) {
    if (d >= 2) throw Error(ErrorKind::not_one_dimensional, "critical locus has dimension " + std::to_string(d) + " at the origin");
    milnor_route(b, ps, d, milnor_ok);
    return;
  }

  if (cmd == "suspend") {
    std::vector<QPoly> partners;
    if (o.h) partners.push_back(parse_partner(o));
    else
      for (const auto& sp : suspension_partners()) partners.push_back(parse<Rational>(sp.h, QRing::make(sp.variables)));
    Json rows = Json::array();
    for (const auto& h : partners) {
      const auto r = check_prop31(ps.f, h, ps.z0, ps.spec.seed);
      rows.push_back({{"h", to_string(h)}, {"mu_h", num(r.mu_h)}, {"beta_g", num(r.beta_g)}, {"beta_f", num(r.beta_f)}});
      b.check(r.check);
    }
    b.result["suspensions"] = rows;
    return;
  }

  if (cmd == "independence") {
    const auto r = z0_independence(ps.f, o.trials, ps.spec.seed);
    Json rows = Json::array();
    for (const auto& t : r.trials)
      rows.push_back({{"z0", t.z0}, {"lambda0", num(t.lambda0)}, {"lambda1", num(t.lambda1)}, {"beta", num(t.beta)}});
    b.result["trials"] = rows;
    b.check(r.check);
    return;
  }

  const auto ctx = context_for(ps);
  for (const auto& n : ctx.notes) b.warn(n);

  if (cmd == "le") {
    b.result["context"] = context_json(ctx);
    if (o.prime) {
      const LocalNumbers n = modular_numbers(ctx, *o.prime);
      b.result["field"] = "fp:" + num(*o.prime);
      b.result["intersections"] = to_json(n);
      b.result["lambda0"] = num(n.lambda0);
      b.result["lambda1"] = num(n.lambda1_cycle);
      b.warn("computed modulo " + num(*o.prime) + "; an unlucky prime can change the numbers");
      if (static_cast<std::int64_t>(n.lambda1_cycle) != n.lambda1_slice) {
        throw Error(ErrorKind::inconsistent_lambda1, "lambda1 disagrees modulo " + num(*o.prime));
      }
      return;
    }
    const auto P = polar_ideals(ctx);
    const auto n = local_numbers(ctx, P);
    b.result["field"] = "qq";
    b.result["intersections"] = to_json(n);
    if (static_cast<std::int64_t>(n.lambda1_cycle) != n.lambda1_slice) {
      throw Error(ErrorKind::inconsistent_lambda1, "lambda1 from the Le cycle is " + num(n.lambda1_cycle) +
                                                       " but the slice identity gives " + num(n.lambda1_slice));
    }
    b.result["lambda0"] = num(n.lambda0);
    b.result["lambda1"] = num(n.lambda1_cycle);
    b.result["mu_restricted"] = num(n.mu_restricted);
    return;
  }

  if (cmd == "polar") {
    const auto C = polar_and_le(ctx, true);
    b.result["context"] = context_json(ctx);
    b.result["gamma_empty"] = C.ideals.gamma_empty;
    b.result["polar_curve"] = to_json(ctx, *C.gamma);
    b.result["le_cycle"] = to_json(ctx, C.lambda);
    polar_surface_json(b, ctx);
    for (const auto* Z : {&*C.gamma, &C.lambda})
      for (const auto& c : Z->components)
        if (!c.certified_prime) b.warn(c.warning);
    return;
  }

  if (cmd == "check" && req.check == "prop41") {
    b.result["context"] = context_json(ctx);
    b.check(check_prop41(ctx));
    return;
  }

  const bool with_gamma = cmd == "analyze";
  const Analysis a = analyze(ctx, with_gamma);
  analysis_warnings(b, a);
  std::optional<QPoly> h;
  if (o.h) h = parse<Rational>(*o.h, ps.ring);

  if (cmd == "analyze" || cmd == "beta") {
    b.result = to_json(a);
    if (o.prime) modular_prepass(b, ctx, a.numbers, *o.prime);
    b.check(check_identities(a));
    if (cmd == "beta") return;
    polar_surface_json(b, ctx);
    // Paper-level checks are reported; only the identities and the
    // component hints decide the exit code of analyze.
    b.check(check_gll(a), false);
    b.check(check_beta_conjecture(a), false);
    b.check(check_prop41(ctx), false);
    b.check(check_thm42(a, h), false);
    b.check(check_cor46(a), false);
    if (!ps.components.empty()) b.check(check_component_hints(a, ps));
    return;
  }

  if (cmd == "check") {
    b.result["context"] = context_json(ctx);
    b.result["beta"] = num(a.beta);
    if (req.check == "gll") b.check(check_gll(a));
    else if (req.check == "thm42") b.check(check_thm42(a, h));
    else if (req.check == "cor46") b.check(check_cor46(a));
    else if (req.check == "beta-conj") b.check(check_beta_conjecture(a));
    else if (req.check == "identities") b.check(check_identities(a));
    else throw Error(ErrorKind::input, "unknown check '" + req.check + "'");
    return;
  }
  throw Error(ErrorKind::input, "unknown command '" + cmd + "'");
}

}  // namespace detail

/// Runs one request without the cache.
inline Outcome execute(const Request& req) {
  const auto t0 = std::chrono::steady_clock::now();
  detail::Builder b;
  Json error;
  try {
    if (req.command == "check" &&
        std::find(check_names().begin(), check_names().end(), req.check) == check_names().end()) {
      throw Error(ErrorKind::input, "unknown check '" + req.check + "'");
    }
    GermSpec spec = req.spec;
    if (req.options.z0) spec.z0 = *req.options.z0;
    if (req.options.seed) spec.seed = *req.options.seed;
    const ParsedSpec ps = parse_spec(spec);
    detail::run_command(b, req, ps);
  } catch (const Error& e) {
    b.code = worst_exit(b.code, exit_for(e.kind()));
    error = {{"kind", to_string(e.kind())}, {"message", e.what()}};
  } catch (const std::bad_alloc&) {
    b.code = worst_exit(b.code, kExitUndecided);
    error = {{"kind", "out of memory"}, {"message", "out of memory"}};
  }
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  Json doc;
  doc["engine"] = {{"name", kEngineName}, {"version", kEngineVersion}, {"format", kReportFormat}};
  doc["input"] = req.to_json();
  doc["status"] = {{"exit_code", num(b.code)}, {"outcome", outcome_name(b.code)}};
  if (!error.is_null()) doc["status"]["error"] = error;
  doc["result"] = b.result;
  doc["checks"] = b.checks;
  doc["warnings"] = b.warnings;
  doc["timing"] = {{"elapsed_ms", num(static_cast<std::uint64_t>(ms))}};
  return {doc, b.code};
}

/// Runs one request through the on-disk cache. Input errors are not cached.
inline Outcome execute_cached(const Request& req, bool* hit = nullptr) {
  if (hit) *hit = false;
  if (!req.options.use_cache) return execute(req);
  ReportCache cache(req.options.cache_dir);
  const std::string key = ReportCache::key(req.to_json());
  if (auto doc = cache.load(key)) {
    if (hit) *hit = true;
    return {*doc, std::stoi(doc->at("status").at("exit_code").get<std::string>())};
  }
  Outcome out = execute(req);
  if (out.exit_code != kExitInputError) {
    try {
      cache.store(key, out.report);
    } catch (const Error&) {
      out.report["warnings"].push_back("result not cached: cache directory not writable");
    }
  }
  return out;
}

/// Runs requests on up to `jobs` worker threads; results keep input order.
inline std::vector<Outcome> execute_batch(const std::vector<Request>& reqs, unsigned jobs) {
  std::vector<Outcome> out(reqs.size());
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(1, reqs.size())));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < reqs.size();) out[i] = execute_cached(reqs[i]);
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return out;
}

/// Resolves a spec argument: a file, a directory of *.json files,
/// "corpus" (every built-in germ) or "corpus:<name>".
inline std::vector<GermSpec> resolve_specs(const std::string& arg) {
  if (arg == "corpus") return full_corpus();
  if (arg.rfind("corpus:", 0) == 0) {
    const std::string name = arg.substr(7);
    if (auto s = corpus_spec(name)) return {*s};
    throw Error(ErrorKind::input, "no corpus germ named '" + name + "'");
  }
  std::vector<GermSpec> out;
  for (const auto& p : spec_paths(arg)) out.push_back(load_spec_file(p));
  return out;
}

}  // namespace betainv
