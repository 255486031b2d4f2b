#include "doctest.h"

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <string>

#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int status;
  std::string out;
};

// Runs the CLI through the shell; stderr is merged in when `merge` is set.
Run run(const std::string& args, bool merge = false) {
  std::string cmd = std::string(INFODIST_CLI_PATH) + " " + args + (merge ? " 2>&1" : " 2>/dev/null");
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int raw = pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

std::string trim(std::string s) {
  while (!s.empty() && (s.back() == '\n' || s.back() == ' ')) s.pop_back();
  return s;
}

struct Fixtures {
  fs::path dir;
  Fixtures() : dir(fs::temp_directory_path() / "infodist_cli_test") {
    fs::create_directories(dir);
    for (const char* name : {"appendix-f-u1", "appendix-f-u2", "appendix-f-u2prime", "appendix-f-game"})
      REQUIRE(run(std::string("catalog ") + name + " -o " + path(name)).status == 0);
  }
  ~Fixtures() { fs::remove_all(dir); }
  std::string path(const std::string& name) const { return (dir / (name + ".json")).string(); }
};

}  // namespace

TEST_CASE("distance and value on the worked example") {
  const Fixtures f;
  const Run d = run("distance " + f.path("appendix-f-u1") + " " + f.path("appendix-f-u2"));
  CHECK(d.status == 0);
  CHECK(std::stod(d.out) == doctest::Approx(0.5).epsilon(1e-6));
  const Run d2 = run("--format json distance " + f.path("appendix-f-u1") + " " + f.path("appendix-f-u2prime"));
  const auto j = nlohmann::json::parse(d2.out);
  CHECK(j["distance"].get<double>() == doctest::Approx(1.0).epsilon(1e-6));
  const Run v = run("--format json value " + f.path("appendix-f-u2") + " " + f.path("appendix-f-game"));
  CHECK(nlohmann::json::parse(v.out)["value"].get<double>() == doctest::Approx(0.5).epsilon(1e-6));
  const Run cmp = run("--format json compare " + f.path("appendix-f-u2") + " " + f.path("appendix-f-u1"));
  CHECK(nlohmann::json::parse(cmp.out)["better"].get<bool>());
}

TEST_CASE("worked-example reproduction table") {
  const Run r = run("--format csv repro-appendix-f");
  CHECK(r.status == 0);
  CHECK(r.out.rfind("quantity,value", 0) == 0);
  CHECK(r.out.find("d(u1,u2),0.5") != std::string::npos);
  CHECK(r.out.find("d(u1,u2'),1") != std::string::npos);
}

TEST_CASE("blackwell table") {
  const Run r = run("blackwell-table --p 0.75 --nmax 2");
  CHECK(r.status == 0);
  CHECK(r.out.rfind("n,l,p,d1_lp,d1_closed_form", 0) == 0);
  CHECK(r.out.find("0.1875") != std::string::npos);
}

TEST_CASE("exit codes and error reporting") {
  CHECK(run("").status == 2);
  CHECK(run("--format yaml repro-appendix-f").status == 2);
  CHECK(run("--tol 0.5 repro-appendix-f").status == 2);
  CHECK(run("--help").status == 0);
  const Run missing = run("distance /nonexistent/a.json /nonexistent/b.json", true);
  CHECK(missing.status == 1);
  const auto e = nlohmann::json::parse(trim(missing.out));
  CHECK(e["error"] == "FileFormat");
  const Run bad = run("catalog email --eps 0", true);
  CHECK(bad.status == 1);
  CHECK(nlohmann::json::parse(trim(bad.out))["error"] == "InvalidParameters");
  const Fixtures f;
  // 2^3 x 2^2 pure-rule profiles exceed a budget of 10 cells.
  const Run budget = run("--budget 10 value --normal-form " + f.path("appendix-f-u1") + " " + f.path("appendix-f-game"), true);
  CHECK(budget.status == 1);
  CHECK(nlohmann::json::parse(trim(budget.out))["error"] == "BudgetExceeded");
  // markov games reports a null value instead of failing.
  const Run games = run("--format json --seed 0 --budget 10 markov games -N 4 -l 2 -p 1");
  CHECK(games.status == 0);
  CHECK(nlohmann::json::parse(games.out)["value"].is_null());
}

TEST_CASE("seeded output is reproducible") {
  const Run a = run("--format csv --seed 3 markov sample -N 8");
  const Run b = run("--format csv --seed 3 markov sample -N 8");
  CHECK(a.status == 0);
  CHECK(a.out == b.out);
  CHECK_FALSE(a.out.empty());
  const Run c = run("--format csv --seed 4 markov sample -N 8");
  CHECK(a.out != c.out);
  const Run unseeded = run("markov sample -N 4", true);
  CHECK(unseeded.out.find("notice: no --seed given, using seed 0") != std::string::npos);
  CHECK(run("markov sample -N 4 --seed 1", true).out.find("notice") == std::string::npos);
}
