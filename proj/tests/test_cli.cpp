#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

#include "pbwgate/report.hpp"

using namespace pbwgate;

namespace {

int run_cli(const std::string &args) {
  std::string cmd = std::string(PBWGATE_CLI) + " " + args + " > /dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::filesystem::path scratch(const std::string &name) {
  auto dir = std::filesystem::temp_directory_path() / "pbwgate_test_cli";
  std::filesystem::create_directories(dir);
  return dir / name;
}

const Record &find(const Report &r, const std::string &check) {
  for (const auto &rec : r.records)
    if (rec.check == check)
      return rec;
  throw Error("missing record " + check);
}

nlohmann::json without_timing(nlohmann::ordered_json j) {
  for (auto &r : j["records"])
    r.erase("millis");
  return j;
}

} // namespace

TEST_CASE("alpha on sl2 Borel") {
  auto report = run_command("alpha", catalog_get("sl2-borel"));
  CHECK(report.consistent());
  const auto &alpha = find(report, "alpha-class");
  CHECK(alpha.verdict == "α non-trivial");
  CHECK(alpha.witness["a(e)(f,f)"]["f"] == "2");
  CHECK(alpha.witness["a(h)(f,f)"]["f"] == "0");
  const auto &c = find(report, "connecting-cocycle");
  CHECK(c.witness["c(e)(f)"]["h"] == "-1");
  CHECK(c.witness["c(e)(f)"]["e"] == "0");
  CHECK(c.witness["c(h)(f)"]["h"] == "0");
}

TEST_CASE("split on diagonal sl2 up to degree 3") {
  RunOptions opts;
  opts.max_degree = 3;
  auto report = run_command("split", catalog_get("diagonal-sl2"), opts);
  CHECK(report.consistent());
  const auto &rec = find(report, "pbw-splitting");
  REQUIRE(rec.witness["levels"].size() == 4);
  for (const auto &l : rec.witness["levels"]) {
    CHECK(l["equivariant"] == true);
    CHECK(l["section"] == true);
  }
  CHECK(rec.witness["levels"][3]["target_dim"] == 20);
}

TEST_CASE("every record has an anchor and the renderings agree") {
  for (const auto &name : {"sl2-borel", "heisenberg-nonsplit", "jacobi-broken-negative-control"}) {
    CAPTURE(name);
    RunOptions opts;
    opts.max_degree = 3;
    auto report = run_command("all", catalog_get(name), opts);
    CHECK(report.consistent());
    auto j = report.to_json();
    auto text = report.summary();
    REQUIRE(j["records"].size() == report.records.size());
    for (std::size_t i = 0; i < report.records.size(); ++i) {
      const auto &r = report.records[i];
      CHECK_FALSE(r.anchor.empty());
      CHECK(j["records"][i]["verdict"] == r.verdict);
      CHECK(j["records"][i]["consistent"] == r.consistent);
      std::string line = std::string(r.consistent ? "  ok    " : "  FAIL  ") + r.check + ": " + r.verdict;
      CHECK(text.find(line) != std::string::npos);
    }
  }
}

TEST_CASE("negative control") {
  auto p = catalog_get("jacobi-broken-negative-control");
  auto report = run_command("all", p);
  CHECK(report.consistent());
  CHECK(find(report, "validate").verdict == "Lie axioms violated");
  CHECK(find(report, "bg-conditions").witness["condition2"] == false);
  CHECK_THROWS_AS(run_command("alpha", p), InputError);
  p.settings.negative_control = false;
  CHECK_THROWS_AS(run_command("validate", p), InputError);
}

TEST_CASE("usage errors") {
  auto p = catalog_get("sl2-borel");
  CHECK_THROWS_AS(run_command("frobnicate", p), InputError);
  CHECK_THROWS_AS(run_command("twisted", p), InputError);
  RunOptions opts;
  opts.module = "W";
  CHECK_THROWS_AS(run_command("twisted", p, opts), Error);
  opts.module = "n";
  CHECK(run_command("twisted", p, opts).records.size() == 1);
}

TEST_CASE("settings.checks selects what all runs") {
  auto p = catalog_get("sl2-borel");
  p.settings.checks = {"alpha"};
  auto report = run_command("all", p);
  for (const auto &r : report.records)
    CHECK((r.check == "validate" || r.check == "connecting-cocycle" || r.check == "alpha-class" ||
           r.check == "alpha-wedge"));
}

TEST_CASE("reports are deterministic") {
  RunOptions opts;
  opts.max_degree = 3;
  auto p = catalog_get("semidirect-split");
  CHECK(without_timing(run_command("all", p, opts).to_json()) ==
        without_timing(run_command("all", p, opts).to_json()));
}

TEST_CASE("binary exit codes") {
  CHECK(run_cli("list") == 0);
  auto out = scratch("out.json");
  CHECK(run_cli("all --example sl2-borel --max-degree 3 --json " + out.string()) == 0);
  std::ifstream is(out);
  auto j = nlohmann::json::parse(is);
  CHECK(j["consistent"] == true);

  CHECK(run_cli("twisted --example sl2-borel") == 2);
  CHECK(run_cli("alpha") == 2);
  CHECK(run_cli("alpha --example nope") == 2);
  CHECK(run_cli("alpha --input /nonexistent/file.json") == 2);
  CHECK(run_cli("alpha --example sl2-borel --input x.json") == 2);

  auto bad = scratch("bad.json");
  std::ofstream(bad) << "{\"name\": \"x\", \"g\": {\"dim\": 2,";
  CHECK(run_cli("validate --input " + bad.string()) == 2);

  auto good = scratch("borel.json");
  std::ofstream(good) << serialize_problem(catalog_get("sl2-borel"));
  CHECK(run_cli("alpha --input " + good.string()) == 0);
}

TEST_CASE("all on the full catalog exits 0") {
  for (const auto &name : catalog_list()) {
    CAPTURE(name);
    CHECK(run_cli("all --example " + name) == 0);
  }
}
