#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string("'") + GALSUM_BIN + "' " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

nlohmann::json json_of(const std::string& args) {
  const auto r = run(args + " --format json");
  REQUIRE(r.code == 0);
  return nlohmann::json::parse(r.out);
}

std::filesystem::path tmp(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("galsum_test_" + std::to_string(::getpid()) + "_" + name);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("documented invocations") {
  const auto r = run("galsum --set 1,2,3 --alpha 1/2");
  CHECK(r.code == 0);
  CHECK(r.out.find("6.385410681680") != std::string::npos);

  const auto b = json_of("constant-b --terms 10000");
  CHECK(std::abs(b["value"].get<double>() - 2.78422) <= 5e-5);

  const auto rep = json_of("resonate-l --q 13 --auto-set");
  CHECK(rep["kind"] == "L_half");
  CHECK(rep["implied_bound"].get<double>() <= rep["true_extremum"].get<double>());
  CHECK(rep["sound"] == true);
  CHECK(rep["rows"].is_array());
}

TEST_CASE("every subcommand answers --help") {
  for (const char* c : {"primes", "factor", "galsum", "galsub", "qnorm", "sigma-p", "construct", "complete-set",
                        "divisor-sum", "profile", "constant-b", "sqrt-prime-sum", "predicates", "coprime-adjust",
                        "dyadic-split", "gamma-brute", "char-table", "char-sum", "w-kernel", "l-half",
                        "orthogonality", "resonate-l", "resonate-charsum", "zeta", "zscan", "kernels", "lemma53",
                        "resonator", "moment", "subsum-bound", "sweep"}) {
    INFO(c);
    CHECK(run(std::string(c) + " --help").code == 0);
  }
}

TEST_CASE("exit codes") {
  CHECK(run("galsum --set 1,2 --alpha 0.5").code == 2);
  CHECK(run("galsum --set 1,2 --alpha 3/2").code == 2);
  CHECK(run("char-table --q 9").code == 2);
  CHECK(run("orthogonality --q 5 --m 5 --n 1 --nu 0").code == 2);
  CHECK(run("nosuchcommand").code == 2);
  CHECK(run("galsum --set 1,x").code == 2);
  CHECK(run("zeta --sigma 0.7 --t 10 --tol 1e-300").code == 3);
  CHECK(run("factor --n 1000000007*998244353").code == 0);
}

TEST_CASE("sweeps are deterministic and validate ranges") {
  const auto a = tmp("a.csv"), b = tmp("b.csv");
  const std::string args = "sweep --kind gal-random --count 20 --max-size 40 --universe 500 --seed 99 --format csv --out ";
  REQUIRE(run(args + a.string()).code == 0);
  REQUIRE(run(args + b.string()).code == 0);
  const auto sa = slurp(a);
  CHECK(!sa.empty());
  CHECK(sa == slurp(b));
  // a different thread count must not change a byte
  REQUIRE(run(args + b.string() + " --threads 3").code == 0);
  CHECK(sa == slurp(b));
  REQUIRE(run("sweep --kind gal-random --count 20 --max-size 40 --universe 500 --seed 100 --format csv --out " + b.string()).code == 0);
  CHECK(sa != slurp(b));
  std::filesystem::remove(a);
  std::filesystem::remove(b);

  CHECK(run("sweep --kind primorial --N 5..3").code == 2);
  CHECK(run("sweep --kind construction --N 2^12..2^10").code == 2);

  const auto prim = run("sweep --kind primorial --N 2^10..2^14 --format csv");
  REQUIRE(prim.code == 0);
  std::istringstream lines(prim.out);
  std::string line;
  int rows = -1;
  while (std::getline(lines, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 5);
}

TEST_CASE("JSON round trip") {
  const auto j = json_of("galsum --set 1,2,3,4,5,6 --alpha 1/2");
  const auto again = nlohmann::json::parse(j.dump());
  CHECK(again == j);
  const auto csv = run("galsum --set 1,2,3,4,5,6 --alpha 1/2 --format csv");
  REQUIRE(csv.code == 0);
  // 17 significant digits: the CSV and JSON doubles are the same binary64
  const auto header_end = csv.out.find('\n');
  const std::string row = csv.out.substr(header_end + 1);
  const double from_csv = std::stod(row.substr(0, row.find(',')));
  CHECK(from_csv == j["value"].get<double>());

  const auto big = json_of("factor --n 2^70*3");
  CHECK(big["n"].is_string());
  const auto small = json_of("factor --n 360");
  CHECK(small["n"].is_number_unsigned());
}

TEST_CASE("config file with command-line override") {
  const auto cfg = tmp("run.cfg");
  {
    std::ofstream f(cfg);
    f << "# example\ncommand = galsum\nset = 1,2\nalpha = 1/2\nformat = json\n";
  }
  const auto base = run("--config " + cfg.string());
  REQUIRE(base.code == 0);
  CHECK(std::abs(nlohmann::json::parse(base.out)["value"].get<double>() - (2 + std::sqrt(2.0))) < 1e-14);
  const auto over = run("--config " + cfg.string() + " galsum --set 1,2,3");
  REQUIRE(over.code == 0);
  CHECK(std::abs(nlohmann::json::parse(over.out)["value"].get<double>() - 6.3854106816800726) < 1e-14);
  {
    std::ofstream f(cfg);
    f << "command = galsum\nbogus = 1\n";
  }
  CHECK(run("--config " + cfg.string()).code == 2);
  std::filesystem::remove(cfg);
}
