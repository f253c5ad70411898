#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "pgc/errors.hpp"
#include "pgc/verify.hpp"

using namespace pgc;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("pgc_test_" + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

void spit(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

std::string report(const RunConfig& config) {
  Workspace ws(config);
  std::vector<ReportRow> rows;
  for (const auto& s : config.suites) {
    auto r = run_suite(s, config, ws);
    rows.insert(rows.end(), r.begin(), r.end());
  }
  std::ostringstream out;
  write_report(out, rows, config.format);
  return out.str();
}

}  // namespace

TEST_CASE("cache stores blocks and reloads them unchanged") {
  TempDir tmp;
  const std::vector<Label> labels{0, 1, 2};
  const int m = 1, degree = 0;
  std::vector<CanonicalGraph> fresh;
  std::string name;
  {
    BasisCache cache(tmp.path);
    fresh = cache.block(labels, BasisKind::projective_based, degree, m);
    name = cache.file_name(labels, BasisKind::projective_based, degree, m);
  }
  CHECK(fs::exists(tmp.path / name));
  CHECK(fs::exists(tmp.path / "manifest.json"));
  CHECK(fresh == enumerate_basis(labels, m, edges_for(BasisKind::projective_based, degree, m),
                                 BasisKind::projective_based));
  BasisCache again(tmp.path);
  CHECK(again.block(labels, BasisKind::projective_based, degree, m) == fresh);

  BasisCache off;
  CHECK_FALSE(off.enabled());
  CHECK(off.block(labels, BasisKind::projective_based, degree, m) == fresh);
}

TEST_CASE("corrupt cache contents raise LoadError") {
  const std::vector<Label> labels{0, 1, 2};
  auto prime = [&](const fs::path& dir) {
    BasisCache cache(dir);
    cache.block(labels, BasisKind::projective_based, 0, 1);
    return cache.file_name(labels, BasisKind::projective_based, 0, 1);
  };
  SUBCASE("truncated block file") {
    TempDir tmp;
    auto name = prime(tmp.path);
    std::string text = slurp(tmp.path / name);
    spit(tmp.path / name, text.substr(0, text.size() / 2));
    BasisCache cache(tmp.path);
    CHECK_THROWS_AS(cache.block(labels, BasisKind::projective_based, 0, 1), LoadError);
  }
  SUBCASE("manifest disagrees with the file") {
    TempDir tmp;
    auto name = prime(tmp.path);
    auto j = nlohmann::json::parse(slurp(tmp.path / "manifest.json"));
    j["files"][name] = j["files"][name].get<std::size_t>() + 1;
    spit(tmp.path / "manifest.json", j.dump());
    BasisCache cache(tmp.path);
    CHECK_THROWS_AS(cache.block(labels, BasisKind::projective_based, 0, 1), LoadError);
  }
  SUBCASE("unsupported format version") {
    TempDir tmp;
    prime(tmp.path);
    auto j = nlohmann::json::parse(slurp(tmp.path / "manifest.json"));
    j["format_version"] = kCacheFormatVersion + 1;
    spit(tmp.path / "manifest.json", j.dump());
    BasisCache cache(tmp.path);
    CHECK_THROWS_AS(cache.block(labels, BasisKind::projective_based, 0, 1), LoadError);
  }
  SUBCASE("unreadable manifest") {
    TempDir tmp;
    prime(tmp.path);
    spit(tmp.path / "manifest.json", "{not json");
    BasisCache cache(tmp.path);
    CHECK_THROWS_AS(cache.block(labels, BasisKind::projective_based, 0, 1), LoadError);
  }
}

TEST_CASE("RunConfig validation") {
  RunConfig ok;
  CHECK_NOTHROW(ok.validate());
  auto bad = [](auto tweak) {
    RunConfig c;
    tweak(c);
    return c;
  };
  CHECK_THROWS_AS(bad([](RunConfig& c) { c.arity = 0; }).validate(), ArgumentError);
  CHECK_THROWS_AS(bad([](RunConfig& c) { c.max_internal = -1; }).validate(), ArgumentError);
  CHECK_THROWS_AS(bad([](RunConfig& c) { c.degree_min = 2, c.degree_max = 1; }).validate(), ArgumentError);
  CHECK_THROWS_AS(bad([](RunConfig& c) { c.format = "xml"; }).validate(), ArgumentError);
  CHECK_THROWS_AS(bad([](RunConfig& c) { c.workers = 0; }).validate(), ArgumentError);
  CHECK_THROWS_AS(bad([](RunConfig& c) { c.suites = {"nope"}; }).validate(), ArgumentError);

  RunConfig range;
  range.degree_min = -1;
  range.degree_max = 1;
  CHECK(range.degree_selected(0));
  CHECK_FALSE(range.degree_selected(2));
  CHECK_FALSE(range.degree_selected(-2));
}

TEST_CASE("feasibility limit") {
  CHECK_NOTHROW(check_feasible(3, BasisKind::projective_based, 2));
  CHECK(total_cost(3, BasisKind::projective_based, 2) > 0);
  CHECK_THROWS_AS(check_feasible(3, BasisKind::projective_based, 2, 1.0), InfeasibleError);
  CHECK_THROWS_AS(check_feasible(8, BasisKind::projective_all, 6), InfeasibleError);
  try {
    check_feasible(3, BasisKind::projective_based, 2, 1.0);
  } catch (const InfeasibleError& e) {
    CHECK(std::string(e.what()).find("m=") != std::string::npos);
  }
}

TEST_CASE("CSV report format") {
  std::vector<ReportRow> rows{{"d2", "n=3, M=2", "0", "0", Status::pass},
                              {"x", "say \"hi\"", "1", "2", Status::fail},
                              {"y", "plain", "-", "3", Status::info}};
  std::ostringstream out;
  write_report(out, rows, "csv");
  CHECK(out.str() ==
        "suite,parameter,expected,actual,status\n"
        "d2,\"n=3, M=2\",0,0,PASS\n"
        "x,\"say \"\"hi\"\"\",1,2,FAIL\n"
        "y,plain,-,3,INFO\n");
  CHECK_FALSE(all_pass(rows));
  rows.erase(rows.begin() + 1);
  CHECK(all_pass(rows));
}

TEST_CASE("reports do not depend on the worker count or the cache") {
  TempDir tmp;
  RunConfig c;
  c.arity = 3;
  c.max_internal = 1;
  c.suites = {"d2", "homology", "psi"};
  c.format = "csv";
  const std::string plain = report(c);
  c.workers = 4;
  CHECK(report(c) == plain);
  c.cache_dir = tmp.path.string();
  CHECK(report(c) == plain);
  CHECK(report(c) == plain);
}
