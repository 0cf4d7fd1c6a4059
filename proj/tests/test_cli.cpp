// Copyright 2026 The qesdirac Authors
// SPDX-License-Identifier: Apache-2.0

#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "catch_amalgamated.hpp"
#include "qes/cli.hpp"

using namespace qes;
using namespace qes::cli;
using Catch::Approx;
using json = nlohmann::ordered_json;

namespace {

struct Result {
  int code = 0;
  std::string out, err;
};

Result run_in_process(const RunConfig& c, const std::string& input = "") {
  std::ostringstream out, err;
  std::istringstream in(input);
  Result r;
  r.code = run(c, out, err, in);
  r.out = out.str();
  r.err = err.str();
  return r;
}

RunConfig solve_cfg(Family f, int nr, int k, double a1, double a2) {
  RunConfig c;
  c.command = Command::Solve;
  c.family = f;
  c.n_r = nr;
  if (f == Family::NonRel)
    c.ell = k;
  else
    c.kappa = k;
  c.a1 = a1;
  c.a2 = a2;
  return c;
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("qesdirac_test_" + name);
}

struct Proc {
  int code = -1;
  std::string out;
};

Proc shell(const std::string& args) {
  const std::string cmd = std::string(QESDIRAC_EXE) + " " + args + " 2>/dev/null";
  Proc p;
  FILE* f = popen(cmd.c_str(), "r");
  if (!f) return p;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, f)) > 0) p.out.append(buf, n);
  const int status = pclose(f);
  p.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return p;
}

}  // namespace

TEST_CASE("solve emits the state, energy and diagnostics", "[cli]") {
  const Result r = run_in_process(solve_cfg(Family::N2, 0, 1, 1.0, 1.0));
  REQUIRE(r.code == kExitOk);
  CHECK(r.err.empty());
  const json j = json::parse(r.out);
  CHECK(j["family"] == "n2");
  CHECK(j["label"] == "1s1/2");
  CHECK(j["E"].get<double>() == Approx(0.722616337180567).epsilon(1e-14));
  CHECK(j["constrained"]["a3"].get<double>() == Approx(2.53164804194792).epsilon(1e-14));
  CHECK(j["diagnostics"]["ode_pass"] == true);
  CHECK(j["diagnostics"]["spinor_pass"] == true);
}

TEST_CASE("solve for the third-root and nonrel families", "[cli]") {
  RunConfig c = solve_cfg(Family::N3, 1, 1, 2.0, 2.0);
  c.a3 = 2.0;
  const json j3 = json::parse(run_in_process(c).out);
  CHECK(j3["E"].get<double>() == Approx(0.049696115066652).epsilon(1e-13));
  CHECK(j3["roots"].size() == 1);
  const json jn = json::parse(run_in_process(solve_cfg(Family::NonRel, 0, 0, 1.0, 1.0)).out);
  CHECK(jn["E"].get<double>() == Approx(-0.37743883312334636 * 0.37743883312334636).epsilon(1e-13));
  CHECK_FALSE(jn.contains("kappa"));
}

TEST_CASE("JSON numbers carry at most 15 significant digits", "[cli]") {
  CHECK(num(0.72261633718056695).get<double>() == 0.722616337180567);
  CHECK(num(std::nan("")).is_null());
  CHECK(csv_num(0.1) == "0.10000000000000001");
}

TEST_CASE("solve is deterministic", "[cli]") {
  const RunConfig c = solve_cfg(Family::N2, 2, 3, 1.3, 0.7);
  CHECK(run_in_process(c).out == run_in_process(c).out);
}

TEST_CASE("usage errors", "[cli]") {
  RunConfig missing = solve_cfg(Family::N2, 0, 1, 1.0, 1.0);
  missing.a2.reset();
  Result r = run_in_process(missing);
  CHECK(r.code == kExitUsage);
  CHECK(r.out.empty());
  const json e = json::parse(r.err);
  CHECK(e["error"]["kind"] == "usage_error");

  RunConfig extra = solve_cfg(Family::N2, 0, 1, 1.0, 1.0);
  extra.a3 = 1.0;
  CHECK(run_in_process(extra).code == kExitUsage);

  RunConfig no_family = solve_cfg(Family::N2, 0, 1, 1.0, 1.0);
  no_family.family.reset();
  CHECK(run_in_process(no_family).code == kExitUsage);

  RunConfig csv = solve_cfg(Family::N2, 0, 1, 1.0, 1.0);
  csv.format = Format::Csv;
  CHECK(run_in_process(csv).code == kExitUsage);

  RunConfig table;
  table.command = Command::Table;
  table.which = "table3";
  CHECK(run_in_process(table).code == kExitUsage);
}

TEST_CASE("library errors map to exit 1", "[cli]") {
  json doc = json::parse(run_in_process(solve_cfg(Family::N2, 1, 1, 1.0, 1.0)).out);
  doc["kappa"] = 0;
  RunConfig v;
  v.command = Command::Verify;
  v.input = "-";
  const Result r = run_in_process(v, doc.dump());
  CHECK(r.code == kExitSolver);
  CHECK(json::parse(r.err)["error"]["kind"] == "domain_error");
}

TEST_CASE("out-of-domain flags are usage errors", "[cli]") {
  CHECK(run_in_process(solve_cfg(Family::N2, 0, 1, -1.0, 1.0)).code == kExitUsage);
  CHECK(run_in_process(solve_cfg(Family::N2, -1, 1, 1.0, 1.0)).code == kExitUsage);
}

TEST_CASE("solve output round-trips through verify", "[cli][verify]") {
  for (auto f : {Family::N2, Family::N3, Family::NonRel}) {
    RunConfig c = solve_cfg(f, 1, f == Family::NonRel ? 0 : 2, 1.0, 1.0);
    if (f == Family::N3) c.a3 = 1.0;
    const std::string solved = run_in_process(c).out;
    RunConfig v;
    v.command = Command::Verify;
    v.input = "-";
    const Result r = run_in_process(v, solved);
    INFO(family_name(f) << ": " << r.err);
    REQUIRE(r.code == kExitOk);
    CHECK(json::parse(r.out)["pass"] == true);

    json tampered = json::parse(solved);
    tampered["E"] = tampered["E"].get<double>() * 1.001;
    CHECK(run_in_process(v, tampered.dump()).code == kExitVerify);
  }
}

TEST_CASE("verify input rejects malformed documents", "[cli][verify]") {
  RunConfig v;
  v.command = Command::Verify;
  v.input = "-";
  CHECK(run_in_process(v, "not json").code == kExitUsage);
  CHECK(run_in_process(v, R"({"family":"n4"})").code == kExitUsage);
  CHECK(run_in_process(v, R"({"family":"n2","a":{"a1":1,"a2":1}})").code == kExitUsage);
}

TEST_CASE("table output", "[cli][table]") {
  RunConfig c;
  c.command = Command::Table;
  c.which = "table1";
  c.format = Format::Csv;
  const Result r1 = run_in_process(c);
  std::istringstream lines(r1.out);
  std::string line;
  int n = 0, disputed = 0;
  while (std::getline(lines, line)) {
    ++n;
    disputed += line.find("DISPUTED") != std::string::npos;
  }
  CHECK(n == 16);
  CHECK(disputed == 10);
  CHECK(r1.code == kExitOk);

  c.which = "table2";
  c.format = Format::Json;
  const Result r2 = run_in_process(c);
  CHECK(r2.code == kExitOk);
  const json j = json::parse(r2.out);
  CHECK(j["rows"].size() == 15);
  CHECK(j["rows"][0]["constraint_status"] == "DISPUTED");
}

TEST_CASE("wavefunction and potential samples", "[cli]") {
  RunConfig c = solve_cfg(Family::N2, 1, 1, 1.0, 1.0);
  c.command = Command::Wavefunction;
  c.format = Format::Csv;
  c.points = 50;
  const Result w = run_in_process(c);
  REQUIRE(w.code == kExitOk);
  CHECK(w.out.rfind("r,F,G\n", 0) == 0);
  CHECK(std::count(w.out.begin(), w.out.end(), '\n') == 51);

  c.command = Command::Potential;
  const Result p = run_in_process(c);
  REQUIRE(p.code == kExitOk);
  CHECK(p.out.rfind("r,V,V_eff\n", 0) == 0);
}

TEST_CASE("verify suite writes the errata", "[cli][verify]") {
  const auto path = temp_path("errata.md");
  std::filesystem::remove(path);
  RunConfig c;
  c.command = Command::Verify;
  c.errata_path = path.string();
  const Result r = run_in_process(c);
  CHECK(r.code == kExitOk);
  const json j = json::parse(r.out);
  CHECK(j["pass"] == true);
  std::ifstream f(path);
  REQUIRE(f);
  const std::string md((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  for (const auto& id : j["errata"]) CHECK(md.find("## " + id.get<std::string>()) != std::string::npos);
  CHECK(md.find("## nonrel-coulomb-limit") != std::string::npos);
  std::filesystem::remove(path);
}

TEST_CASE("output file option", "[cli]") {
  const auto path = temp_path("solve.json");
  RunConfig c = solve_cfg(Family::N2, 0, 2, 1.0, 1.0);
  c.output = path.string();
  const Result r = run_in_process(c);
  CHECK(r.code == kExitOk);
  CHECK(r.out.empty());
  std::ifstream f(path);
  CHECK(json::parse(f)["kappa"] == 2);
  std::filesystem::remove(path);
}

TEST_CASE("tolerance from the environment", "[cli]") {
  CHECK(threshold_from_env(nullptr) == kResidualThreshold);
  CHECK(threshold_from_env("1e-4") == 1e-4);
  CHECK_THROWS_AS(threshold_from_env("abc"), UsageError);
  CHECK_THROWS_AS(threshold_from_env("-1"), UsageError);
  CHECK_THROWS_AS(threshold_from_env("0"), UsageError);
}

TEST_CASE("executable exit codes", "[cli][process]") {
  Proc ok = shell("solve --family n2 --nr 0 --kappa 1 --a1 1 --a2 1");
  CHECK(ok.code == 0);
  CHECK(json::parse(ok.out)["label"] == "1s1/2");
  CHECK(shell("solve --family n2 --nr 0 --kappa 1 --a1 1").code == 2);
  CHECK(shell("frobnicate").code == 2);
  CHECK(shell("solve --family n5 --nr 0 --kappa 1 --a1 1 --a2 1").code == 2);
  CHECK(shell("solve --family n2 --nr 0 --kappa 1 --a1 -1 --a2 1").code == 2);
  CHECK(shell("table table1 --format csv").code == 0);
  CHECK(QESDIRAC_EXE[0] != '\0');
  const std::string env = "QES_RESIDUAL_TOL=bogus ";
  const int status = std::system((env + QESDIRAC_EXE +
                                  " solve --family n2 --nr 0 --kappa 1 --a1 1 --a2 1 >/dev/null 2>&1")
                                     .c_str());
  CHECK(WEXITSTATUS(status) == 2);
}
