// betainv command line tool. Reports are JSON on stdout; the exit code
// summarises them (0 ok, 2 check failed, 3 undecided, 4 input error).

#include <iostream>

#include "CLI11.hpp"
#include "betainv/cli/selftest.hpp"

using namespace betainv;

namespace {

struct Flags {
  std::string z0, field = "qq", h, h_vars, cache_dir;
  std::uint64_t seed = 0, budget = 0;
  unsigned trials = 3, jobs = 0;
  bool no_cache = false, compact = false;
};

void add_common(CLI::App* app, Flags& f) {
  app->add_option("--z0", f.z0, "linear form to try first as z0");
  app->add_option("--seed", f.seed, "seed for generic choices (overrides the spec)");
  app->add_option("--field", f.field, "qq, or fp:<prime> for a modular pre-pass");
  app->add_option("--budget", f.budget, "step budget per standard basis");
  app->add_option("--trials", f.trials, "number of z0 forms for independence")->check(CLI::Range(3u, 100u));
  app->add_option("--h-expr", f.h, "candidate h for thm42, or the suspension partner");
  app->add_option("--h-vars", f.h_vars, "comma separated variables of the suspension partner");
  app->add_flag("--no-cache", f.no_cache, "neither read nor write the report cache");
  app->add_option("--cache-dir", f.cache_dir, "cache directory (default $BETAINV_CACHE_DIR or ./cache)");
  app->add_option("--jobs", f.jobs, "worker threads for directories and selftest");
  app->add_flag("--compact", f.compact, "print each report on one line");
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

RunOptions to_options(const Flags& f, bool seed_given, bool budget_given) {
  RunOptions o;
  if (!f.z0.empty()) o.z0 = f.z0;
  if (seed_given) o.seed = f.seed;
  o.prime = parse_field_flag(f.field);
  if (budget_given) o.budget = f.budget;
  o.trials = f.trials;
  if (!f.h.empty()) o.h = f.h;
  o.h_vars = split_commas(f.h_vars);
  o.use_cache = !f.no_cache;
  if (!f.cache_dir.empty()) o.cache_dir = f.cache_dir;
  o.jobs = f.jobs;
  return o;
}

void print(const Json& doc, bool compact) { std::cout << (compact ? doc.dump() : doc.dump(2)) << "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Beta invariant, Le numbers and polar cycles of polynomial germs with a 1-dimensional critical locus"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kEngineVersion);
  Flags flags;
  std::vector<std::string> specs;
  std::string check_name;

  const std::vector<std::pair<std::string, std::string>> germ_commands = {
      {"analyze", "full report: Le numbers, cycles, beta and every check"},
      {"beta", "beta by all three formulas"},
      {"le", "Le numbers and the restricted Milnor number"},
      {"polar", "polar curve, Le cycle and polar surface"},
      {"suspend", "beta of the suspension by h against mu(h) beta"},
      {"plane-curve", "closed formula for f = g^p h against the pipeline"},
      {"independence", "beta under several generic z0"}};
  std::vector<CLI::App*> subs;
  for (const auto& [name, help] : germ_commands) {
    auto* s = app.add_subcommand(name, help);
    s->add_option("specs", specs, "spec file, directory, corpus or corpus:<name>")->required();
    add_common(s, flags);
    subs.push_back(s);
  }
  auto* check = app.add_subcommand("check", "run one check: gll, prop41, thm42, cor46, beta-conj, identities");
  check->add_option("name", check_name, "check name")->required()->check(CLI::IsMember(check_names()));
  check->add_option("specs", specs, "spec file, directory, corpus or corpus:<name>")->required();
  add_common(check, flags);
  subs.push_back(check);
  auto* selftest = app.add_subcommand("selftest", "golden assertions over the built-in corpus");
  selftest->add_option("--jobs", flags.jobs, "worker threads");
  selftest->add_flag("--compact", flags.compact, "print the report on one line");
  auto* corpus = app.add_subcommand("corpus", "write the built-in corpus as spec files");
  std::string corpus_dir;
  corpus->add_option("dir", corpus_dir, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInputError;
  }

  try {
    if (*selftest) {
      const Outcome out = selftest_report(flags.jobs);
      print(out.report, flags.compact);
      return out.exit_code;
    }
    if (*corpus) {
      std::filesystem::create_directories(corpus_dir);
      for (const auto& s : full_corpus()) {
        std::ofstream(std::filesystem::path(corpus_dir) / (s.name + ".json")) << to_json(s).dump(2) << "\n";
      }
      return kExitOk;
    }
    CLI::App* used = nullptr;
    for (auto* s : subs)
      if (*s) used = s;
    const bool seed_given = used->count("--seed") > 0;
    const bool budget_given = used->count("--budget") > 0;
    const RunOptions opts = to_options(flags, seed_given, budget_given);
    if (opts.budget) default_step_budget() = *opts.budget;

    std::vector<Request> reqs;
    for (const auto& arg : specs)
      for (auto& s : resolve_specs(arg)) reqs.push_back({used->get_name(), check_name, std::move(s), opts});
    const auto outs = execute_batch(reqs, opts.jobs);
    int code = kExitOk;
    if (outs.size() == 1) {
      print(outs[0].report, flags.compact);
      code = outs[0].exit_code;
    } else if (flags.compact) {
      for (const auto& o : outs) print(o.report, true);
    } else {
      Json arr = Json::array();
      for (const auto& o : outs) arr.push_back(o.report);
      print(arr, false);
    }
    for (const auto& o : outs) code = worst_exit(code, o.exit_code);
    return code;
  } catch (const Error& e) {
    std::cerr << "betainv: " << e.what() << "\n";
    return exit_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "betainv: " << e.what() << "\n";
    return kExitInputError;
  }
}
