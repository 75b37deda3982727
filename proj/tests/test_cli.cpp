#include <gtest/gtest.h>

#include <fstream>

#include "betainv/cli/selftest.hpp"

using namespace betainv;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("betainv_test_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

Request request(const std::string& command, const std::string& germ, const fs::path& cache) {
  Request r;
  r.command = command;
  r.spec = *corpus_spec(germ);
  r.options.cache_dir = cache;
  return r;
}

std::string field(const Json& doc, std::initializer_list<const char*> path) {
  const Json* j = &doc;
  for (const char* k : path) j = &j->at(k);
  return j->get<std::string>();
}

}  // namespace

TEST(Spec, RoundTripThroughJson) {
  for (const auto& s : full_corpus()) {
    const GermSpec back = spec_from_json(Json::parse(to_json(s).dump()));
    EXPECT_EQ(to_json(back).dump(), to_json(s).dump());
  }
}

TEST(Spec, Validation) {
  const Json good = {{"name", "g"}, {"variables", {"x", "y", "z"}}, {"f", "y^2 + z^2"}};
  EXPECT_NO_THROW(parse_spec(spec_from_json(good)));
  Json extra = good;
  extra["colour"] = "red";
  EXPECT_THROW(spec_from_json(extra), Error);
  Json missing = good;
  missing.erase("f");
  EXPECT_THROW(spec_from_json(missing), Error);
  Json unknown_var = good;
  unknown_var["f"] = "y^2 + w^2";
  EXPECT_THROW(parse_spec(spec_from_json(unknown_var)), Error);
  Json dup = good;
  dup["variables"] = {"x", "x", "z"};
  EXPECT_THROW(parse_spec(spec_from_json(dup)), Error);
  Json seed = good;
  seed["seed"] = "18446744073709551615";
  EXPECT_EQ(spec_from_json(seed).seed, 18446744073709551615ULL);
  seed["seed"] = "-3";
  EXPECT_THROW(spec_from_json(seed), Error);
}

TEST(Spec, StructuredFormMustMatch) {
  GermSpec s = plane_curve_corpus().front();
  EXPECT_NO_THROW(parse_spec(s));
  s.f = "(y^2 - x^3)^2*(1 + x)";
  EXPECT_THROW(parse_spec(s), Error);
}

TEST(Spec, LoadFileAndDirectory) {
  const fs::path dir = scratch_dir("specs");
  for (const auto& s : surface_corpus()) std::ofstream(dir / (s.name + ".json")) << to_json(s).dump(2);
  std::ofstream(dir / "notes.txt") << "ignored";
  const auto specs = resolve_specs(dir.string());
  ASSERT_EQ(specs.size(), 4u);
  EXPECT_EQ(specs[0].name, "ex43");
  std::ofstream(dir / "broken.json") << "{ not json";
  EXPECT_THROW(resolve_specs(dir.string()), Error);
  EXPECT_THROW(resolve_specs((dir / "absent").string()), Error);
  EXPECT_THROW(resolve_specs("corpus:nothing"), Error);
  EXPECT_EQ(resolve_specs("corpus").size(), full_corpus().size());
  fs::remove_all(dir);
}

TEST(Corpus, Completeness) {
  for (const char* name : {"ex43", "ex44", "ex45", "smooth-sigma"}) EXPECT_TRUE(corpus_spec(name).has_value()) << name;
  EXPECT_GE(plane_curve_corpus().size(), 10u);
  EXPECT_EQ(suspension_partners().size(), 3u);
}

TEST(Report, AnalyzeSurfaceGerm) {
  const fs::path cache = scratch_dir("analyze");
  Request r = request("analyze", "ex43", cache);
  r.options.use_cache = false;
  const Outcome o = execute(r);
  EXPECT_EQ(o.exit_code, kExitOk);
  EXPECT_EQ(field(o.report, {"result", "lambda0"}), "13");
  EXPECT_EQ(field(o.report, {"result", "lambda1"}), "2");
  EXPECT_EQ(field(o.report, {"result", "beta"}), "12");
  EXPECT_EQ(field(o.report, {"status", "exit_code"}), "0");
  EXPECT_TRUE(o.report.contains("timing"));
  // Reports round-trip through text.
  EXPECT_EQ(Json::parse(o.report.dump()), o.report);
  fs::remove_all(cache);
}

TEST(Report, ExitCodes) {
  const fs::path cache = scratch_dir("exit");
  Request thm = request("check", "ex44", cache);
  thm.check = "thm42";
  thm.options.use_cache = false;
  const Outcome u = execute(thm);
  EXPECT_EQ(u.exit_code, kExitUndecided);
  EXPECT_EQ(u.report["checks"][0]["reason"], "no candidate h");

  Request bad = request("beta", "ex43", cache);
  bad.spec.f = "x + ";
  EXPECT_EQ(execute(bad).exit_code, kExitInputError);

  Request dim2 = request("beta", "ex43", cache);
  dim2.spec.f = "x^2";
  EXPECT_EQ(execute(dim2).exit_code, kExitInputError);

  Request isolated = request("beta", "ex43", cache);
  isolated.spec.f = "x^2 + y^2 + z^3";
  isolated.spec.components.clear();
  const Outcome m = execute(isolated);
  EXPECT_EQ(m.exit_code, kExitOk);

  Request unknown = request("check", "ex43", cache);
  unknown.check = "nonsense";
  EXPECT_EQ(execute(unknown).exit_code, kExitInputError);
  fs::remove_all(cache);
}

TEST(Report, ExitCodeOrdering) {
  EXPECT_EQ(worst_exit(kExitOk, kExitUndecided), kExitUndecided);
  EXPECT_EQ(worst_exit(kExitUndecided, kExitCheckFailed), kExitCheckFailed);
  EXPECT_EQ(worst_exit(kExitCheckFailed, kExitInputError), kExitInputError);
  EXPECT_EQ(exit_for(Verdict::hold), kExitOk);
  EXPECT_EQ(exit_for(Verdict::fail), kExitCheckFailed);
  EXPECT_EQ(exit_for(Verdict::undecided), kExitUndecided);
}

TEST(Report, FieldFlag) {
  EXPECT_FALSE(parse_field_flag("qq").has_value());
  EXPECT_EQ(parse_field_flag("fp:2147483647"), 2147483647ULL);
  EXPECT_THROW(parse_field_flag("fp:101"), Error);
  EXPECT_THROW(parse_field_flag("fp:2147483646"), Error);
  EXPECT_THROW(parse_field_flag("zz"), Error);
}

TEST(Cache, HitIsIdenticalModuloTiming) {
  const fs::path cache = scratch_dir("hit");
  const Request r = request("le", "ex45", cache);
  bool hit = true;
  const Outcome first = execute_cached(r, &hit);
  EXPECT_FALSE(hit);
  const Outcome second = execute_cached(r, &hit);
  EXPECT_TRUE(hit);
  EXPECT_EQ(strip_timing(first.report).dump(), strip_timing(second.report).dump());
  EXPECT_EQ(first.exit_code, second.exit_code);
  const std::string key = ReportCache::key(r.to_json());
  EXPECT_TRUE(fs::exists(cache / (key + ".json")));
  fs::remove_all(cache);
}

TEST(Cache, KeysSeparateFlagsAndVersions) {
  const fs::path cache = scratch_dir("keys");
  Request a = request("beta", "ex45", cache);
  Request b = a;
  b.options.seed = 2;
  Request c = a;
  c.options.use_cache = false;  // bypass flag does not change the request identity
  EXPECT_NE(ReportCache::key(a.to_json()), ReportCache::key(b.to_json()));
  EXPECT_EQ(ReportCache::key(a.to_json()), ReportCache::key(c.to_json()));
  EXPECT_NE(ReportCache::key(a.to_json()), ReportCache::key(a.to_json(), "0.0.0-other"));
  EXPECT_EQ(ReportCache::key(a.to_json()).size(), 64u);
  fs::remove_all(cache);
}

TEST(Cache, CorruptEntryIsEvicted) {
  const fs::path cache = scratch_dir("corrupt");
  const Request r = request("le", "ex45", cache);
  const std::string key = ReportCache::key(r.to_json());
  execute_cached(r);
  std::ofstream(cache / (key + ".json"), std::ios::trunc) << "{\"key\": \"trunc";
  bool hit = true;
  const Outcome o = execute_cached(r, &hit);
  EXPECT_FALSE(hit);
  EXPECT_EQ(o.exit_code, kExitOk);
  ReportCache store(cache);
  EXPECT_TRUE(store.load(key).has_value());
  fs::remove_all(cache);
}

TEST(Cache, InputErrorsAreNotStored) {
  const fs::path cache = scratch_dir("noinput");
  Request r = request("beta", "ex43", cache);
  r.spec.f = "x +";
  EXPECT_EQ(execute_cached(r).exit_code, kExitInputError);
  EXPECT_FALSE(fs::exists(cache / (ReportCache::key(r.to_json()) + ".json")));
  fs::remove_all(cache);
}

TEST(Cache, ConcurrentWritersOfOneKey) {
  const fs::path cache = scratch_dir("concurrent");
  ReportCache store(cache);
  const Json doc = {{"status", {{"exit_code", "0"}}}, {"payload", std::string(4096, 'x')}};
  std::vector<std::thread> pool;
  for (int t = 0; t < 8; ++t)
    pool.emplace_back([&] {
      for (int i = 0; i < 20; ++i) store.store("k", doc);
    });
  for (auto& t : pool) t.join();
  EXPECT_EQ(store.load("k"), doc);
  std::size_t files = 0;
  for (const auto& e : fs::directory_iterator(cache)) files += e.is_regular_file();
  EXPECT_EQ(files, 1u);  // no leftover temporaries
  fs::remove_all(cache);
}

TEST(Batch, KeepsInputOrder) {
  const fs::path cache = scratch_dir("batch");
  std::vector<Request> reqs;
  for (const char* g : {"ex45", "smooth-sigma", "plane01", "plane02"}) {
    Request r = request("beta", g, cache);
    r.options.use_cache = false;
    reqs.push_back(r);
  }
  const auto out = execute_batch(reqs, 3);
  ASSERT_EQ(out.size(), 4u);
  EXPECT_EQ(field(out[0].report, {"result", "beta"}), "4");
  EXPECT_EQ(field(out[1].report, {"result", "beta"}), "0");
  EXPECT_EQ(field(out[2].report, {"result", "beta"}), "4");
  EXPECT_EQ(field(out[3].report, {"result", "beta"}), "2");
  fs::remove_all(cache);
}

TEST(Report, Determinism) {
  const fs::path cache = scratch_dir("det");
  Request r = request("analyze", "ex45", cache);
  r.options.use_cache = false;
  EXPECT_EQ(strip_timing(execute(r).report).dump(), strip_timing(execute(r).report).dump());
  fs::remove_all(cache);
}
