#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "support.hpp"

using namespace testing;

namespace {

struct Run {
  int status;
  std::string out;
};

Run run_cli(const std::string& args) {
  const std::string cmd = std::string(HOPFKIT_CLI) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, p)) out.append(buf, n);
  int st = pclose(p);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::path(HOPFKIT_SCRATCH);
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("element parser") {
  auto ac = family("ac2n:2");
  Tensor t = T(ac, "x (x) x*g");
  CHECK(t.order() == 2);
  CHECK(t == outer(generator(ac, "x"), generator(ac, "x") * generator(ac, "g")));
  CHECK(T(ac, "0", 2).is_zero());
  CHECK(T(ac, "0", 1).is_zero());
  auto e2 = family("en:2");
  Tensor lead = T(e2, "1/2*(1 (x) 1 + 1 (x) g + g (x) 1 - g (x) g)");
  Tensor r0 = rmatrix(e2, "en:2", "en-a:[[0,0],[0,0]]");
  CHECK(lead == r0);
  CHECK(T(e2, "x1*x1", 1).is_zero());
  CHECK(T(e2, "x2*x1") == -T(e2, "x1*x2"));
  CHECK(T(e2, "g^2", 1) == Tensor::one(e2, 1));
  CHECK_THROWS_AS(T(e2, "x3 (x) g"), ConfigError);
  CHECK_THROWS_AS(T(e2, "x1 (x) "), ConfigError);
  CHECK_THROWS_AS(T(e2, "(x1 + g"), ConfigError);
  CHECK_THROWS_AS(T(e2, "x1 (x) g", 3), ConfigError);
  auto h8 = family_with_r("h8", "h8omega:z8");
  CHECK(T(h8, "z8^8 * 1", 1) == Tensor::one(h8, 1));
}

TEST_CASE("parser round trip on canonical tensors") {
  std::mt19937_64 rng(5);
  for (const char* s : {"en:2", "h8", "ac2n:2", "radford:2,2", "h2n2:3", "ac4dual"}) {
    auto h = family(s);
    for (int order = 1; order <= 2; ++order)
      for (int t = 0; t < 20; ++t) {
        Tensor x = random_tensor(h, order, rng, 0.1);
        CHECK(T(h, format_tensor(x), order) == x);
      }
    for (std::size_t i = 0; i < h->dim; ++i) CHECK(T(h, format_tensor(Tensor::basis(h, 1, i)), 1) == Tensor::basis(h, 1, i));
  }
}

TEST_CASE("classify en:2") {
  Run r = run_cli("classify --family en:2 --r 'en-a:[[0,0],[0,0]]'");
  CHECK(r.status == 0);
  Json j = Json::parse(r.out);
  CHECK(j["dims"]["precartier"] == 4);
  CHECK(j["dims"]["cartier"] == 1);
  CHECK(j["flags"]["matches_paper_theorem"] == true);
}

TEST_CASE("classify h8 enumerate") {
  Run r = run_cli("classify --family h8 --r enumerate --no-cohomology");
  CHECK(r.status == 0);
  Json j = Json::parse(r.out);
  REQUIRE(j.is_array());
  CHECK(j.size() == 8);
  for (const auto& rep : j) CHECK(rep["dims"]["precartier"] == 0);
}

TEST_CASE("cohomology en:3") {
  Run r = run_cli("cohomology --family en:3");
  CHECK(r.status == 0);
  Json j = Json::parse(r.out);
  CHECK(j["dims"]["h2"] == 6);
}

TEST_CASE("json output is deterministic") {
  const std::string args = "classify --family ac2n:2 --r enumerate";
  Run a = run_cli(args), b = run_cli(args);
  CHECK(a.status == 0);
  CHECK(a.out == b.out);
  CHECK_FALSE(a.out.empty());
}

TEST_CASE("exit status contract") {
  CHECK(run_cli("classify --family nosuch:1 --r none").status == 2);
  CHECK(run_cli("classify --family en:2 --r 'en-a:[[1,2]]'").status == 2);
  CHECK(run_cli("classify --family h8 --r h8omega:z8 --field cyclotomic:4").status == 2);
  CHECK(run_cli("quantize --family en:2").status == 2);
  CHECK(run_cli("classify --family en:2 --r 'en-a:[[0,0],[0,0]]' --expected /nonexistent.json").status == 2);

  // Corrupted table: the E(2) entry claims dimension 5.
  Json table = expected_table_to_json(default_expected_table());
  bool corrupted = false;
  for (auto& row : table)
    if (row["family"] == "en:2" && row["r"] == "en-a") {
      row["dims"]["precartier"] = 5;
      corrupted = true;
    }
  REQUIRE(corrupted);
  auto path = scratch("corrupted.json");
  std::ofstream(path) << table.dump(2);
  CHECK(run_cli("classify --family en:2 --r 'en-a:[[0,0],[0,0]]' --expected " + path.string()).status == 1);
  // The untouched table round-trips and passes.
  auto good = scratch("default.json");
  std::ofstream(good) << expected_table_to_json(default_expected_table()).dump(2);
  CHECK(run_cli("classify --family en:2 --r 'en-a:[[0,0],[0,0]]' --expected " + good.string()).status == 0);
}

TEST_CASE("other subcommands") {
  CHECK(run_cli("build --family radford:2,3").status == 0);
  Run v = run_cli("verify --family h8 --r enumerate");
  CHECK(v.status == 0);
  Run q = run_cli("quantize --family ac2n:2 --r ac22:q=0,a=1 --chi 'x (x) x*g'");
  CHECK(q.status == 0);
  Run e = run_cli("enumerate-r --family h2n2:2");
  CHECK(e.status == 0);
  CHECK(Json::parse(e.out)["r_matrices"].size() == 4);
  Run t = run_cli("classify --family en:1 --r 'en-a:[[1]]' --format table");
  CHECK(t.status == 0);
  CHECK(t.out.find("en-a:[[1]]") != std::string::npos);
  Run p = run_cli("classify --family en:2 --r 'en-a:[[0,0],[0,0]]' --field prime:97");
  CHECK(p.status == 0);
  CHECK(Json::parse(p.out)["dims"]["precartier"] == 4);

  auto cfg = scratch("batch.json");
  std::ofstream(cfg) << R"([{"command":"classify","family":"en:1","r":"en-a:[[2]]"},
                            {"command":"classify","family":"ac4dual","r":"ac4dual"}])";
  Run b = run_cli("batch --config " + cfg.string());
  CHECK(b.status == 0);
}
