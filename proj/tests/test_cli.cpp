#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "metent_cli/cli.hpp"

namespace fs = std::filesystem;
using metent::cli::run;

namespace {

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "metent");
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const char* name) { return std::string(METENT_TEST_DATA) + "/" + name; }

}  // namespace

TEST_CASE("grid specs") {
  const auto lin = metent::cli::parse_grid("1:3:3");
  CHECK(lin == std::vector<double>{1.0, 2.0, 3.0});
  const auto lg = metent::cli::parse_grid("0.5:4:4:log");
  REQUIRE(lg.size() == 4);
  CHECK(lg[1] == doctest::Approx(1.0));
  CHECK(lg[3] == 4.0);
  CHECK_THROWS(metent::cli::parse_grid("1:2"));
  CHECK_THROWS(metent::cli::parse_grid("0:2:3"));
  CHECK_THROWS(metent::cli::parse_grid("1:2:3:ln"));
  CHECK_THROWS(metent::cli::parse_grid("a:2:3"));
}

TEST_CASE("help and usage errors") {
  CHECK(invoke({"--help"}).code == metent::cli::ok);
  CHECK(invoke({}).code == metent::cli::input_error);
  CHECK(invoke({"cover", "--body", data("ellipse.json")}).code == metent::cli::input_error);
  CHECK(invoke({"frobnicate"}).code == metent::cli::input_error);
}

TEST_CASE("bad bodies and configs exit with input errors") {
  const auto missing = invoke({"cover", "--body", "/nonexistent.json", "--seed", "1"});
  CHECK(missing.code == metent::cli::input_error);
  CHECK(missing.err.find("error") != std::string::npos);
  CHECK(invoke({"cover", "--body", data("config.json"), "--seed", "1"}).code ==
        metent::cli::input_error);
  CHECK(invoke({"staircase", "--body", data("ellipse.json"), "--seed", "1", "--grid", "4:1:3"}).code ==
        metent::cli::input_error);
  CHECK(invoke({"cover", "--body", data("ellipse.json"), "--seed", "1", "--R0", "3"}).code ==
        metent::cli::input_error);
}

TEST_CASE("cover prints a bracket") {
  const auto r = invoke({"cover", "--body", data("interval.json"), "--dim", "1", "--seed", "3",
                         "--t", "2", "--budget", "2000"});
  CHECK(r.code == metent::cli::ok);
  CHECK(r.out.find("lower/upper = 15/15") != std::string::npos);
}

TEST_CASE("staircase CSV on stdout and in an output directory") {
  const auto r = invoke({"staircase", "--body", data("ellipse.json"), "--seed", "3", "--grid",
                         "1:2:2", "--budget", "2000", "--workers", "2"});
  CHECK(r.code == metent::cli::ok);
  CHECK(r.out.rfind("t,lower_bits,upper_bits", 0) == 0);

  const fs::path dir = fs::temp_directory_path() / "metent_cli_test";
  fs::remove_all(dir);
  const auto w = invoke({"staircase", "--body", data("ellipse.json"), "--seed", "3", "--grid",
                         "1:2:2", "--budget", "2000", "--out", dir.string()});
  CHECK(w.code == metent::cli::ok);
  std::size_t files = 0;
  for (const auto& e : fs::directory_iterator(dir)) {
    ++files;
    CHECK(e.path().filename().string().rfind("staircase_seed3_c", 0) == 0);
  }
  CHECK(files == 1);
  fs::remove_all(dir);
}

TEST_CASE("duality, gamma and combine subcommands") {
  CHECK(invoke({"duality", "--body", data("ellipse.json"), "--seed", "2", "--grid", "1:2:2",
                "--alpha", "2", "--budget", "2000"})
            .code == metent::cli::ok);
  const auto g = invoke({"gamma", "--body", data("ellipse.json"), "--seed", "2", "--budget", "2000"});
  CHECK(g.code == metent::cli::ok);
  CHECK(g.out.find("\"gamma_prime\"") != std::string::npos);
  const auto c = invoke({"combine", "--body", data("interval.json"), "--dim", "1", "--seed", "2",
                         "--budget", "2000", "--config", data("config.json")});
  CHECK(c.code == metent::cli::ok);
  CHECK(c.out.find("\"separation\": 0.5") != std::string::npos);
  CHECK(invoke({"combine", "--body", data("interval.json"), "--dim", "1", "--seed", "2", "--kind",
                "sideways"})
            .code == metent::cli::input_error);
}

TEST_CASE("iterate and probe subcommands") {
  const auto d = invoke({"iterate", "--body", data("interval.json"), "--dim", "1", "--seed", "2",
                         "--kind", "dual", "--budget", "2000"});
  CHECK(d.code == metent::cli::ok);
  CHECK(d.out.find("\"telescope\"") != std::string::npos);
  const auto p = invoke({"iterate", "--body", data("interval.json"), "--dim", "1", "--seed", "2",
                         "--kind", "primal", "--budget", "2000"});
  CHECK(p.code == metent::cli::input_error);
  CHECK(p.err.find("does not increase") != std::string::npos);
  const auto pr = invoke({"probe", "--seed", "2", "--kind", "zonotope", "--config", data("config.json"),
                          "--budget", "2000"});
  CHECK(pr.code == metent::cli::ok);
  CHECK(pr.out.find("\"records\"") != std::string::npos);
}
