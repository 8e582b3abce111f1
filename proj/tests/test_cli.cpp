#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "besilab/cli.hpp"
#include "besilab/errors.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace besilab;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome call(std::vector<std::string> args) {
  args.insert(args.begin(), "besicovitch-lab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string scratch(const std::string& name) {
  fs::path p = fs::path(BESILAB_TEST_TMP) / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p.string();
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), {}};
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("certify-main writes a passing report") {
    auto dir = scratch("main");
    auto r = call({"certify-main", "--out", dir});
    CHECK(r.code == 0);
    CHECK(r.out.find("PASS certify-main lhs_lower_bound") != std::string::npos);
    auto j = nlohmann::json::parse(slurp(fs::path(dir) / "report.json"));
    CHECK(j["rows"].size() == 7);
    CHECK(j["params"]["p"] == "4,8/5,8");
    auto csv = slurp(fs::path(dir) / "report.csv");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 8);
  }

  TEST_CASE("halfspace defaults pass and record fits") {
    auto dir = scratch("halfspace");
    auto r = call({"halfspace", "--eps", "2^-3..2^-6", "--out", dir});
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(slurp(fs::path(dir) / "report.json"));
    CHECK(j["fits"].size() >= 1);
    CHECK(j["rows"].size() == 4);
  }

  TEST_CASE("malformed exponents exit with 1") {
    auto dir = scratch("bad");
    auto r = call({"certify-main", "--p", "4,4,4", "--out", dir});
    CHECK(r.code == 1);
    CHECK(r.err.find("homogeneity violated") != std::string::npos);
    CHECK_FALSE(fs::exists(fs::path(dir) / "report.json"));
    CHECK(call({"certify-main", "--bogus", "1"}).code == 1);
    CHECK(call({}).code == 1);
  }

  TEST_CASE("config files fill options that were not given") {
    auto dir = scratch("config");
    fs::path cfg = fs::path(dir) / "cfg.json";
    std::ofstream(cfg) << R"({"experiment": "halfspace", "eps": [0.125, 0.0625, 0.03125], "out": ")" << dir
                       << R"(/from-config"})";
    auto r = call({"halfspace", "--config", cfg.string()});
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(slurp(fs::path(dir) / "from-config" / "report.json"));
    CHECK(j["rows"].size() == 3);
    auto over = call({"halfspace", "--config", cfg.string(), "--eps", "0.25,0.125,0.0625,0.03125", "--out", dir + "/flag"});
    CHECK(over.code == 0);
    CHECK(nlohmann::json::parse(slurp(fs::path(dir) / "flag" / "report.json"))["rows"].size() == 4);

    std::ofstream(cfg) << R"({"experiment": "halfspace", "unknown_field": 3})";
    auto bad = call({"halfspace", "--config", cfg.string()});
    CHECK(bad.code == 1);
    CHECK(bad.err.find("unknown_field") != std::string::npos);
    std::ofstream(cfg) << R"({"experiment": "s-l1"})";
    CHECK(call({"halfspace", "--config", cfg.string()}).code == 1);
  }

  TEST_CASE("plot kinds") {
    auto dir = scratch("plot");
    for (std::string kind : {"perron", "triangle", "degenerate"}) {
      CHECK(call({"plot", "--kind", kind, "--out", dir}).code == 0);
      auto first = slurp(fs::path(dir) / (kind + ".svg"));
      CHECK(first.rfind("<svg", 0) == 0);
      CHECK(call({"plot", "--kind", kind, "--out", dir}).code == 0);
      CHECK(slurp(fs::path(dir) / (kind + ".svg")) == first);
    }
    auto r = call({"plot", "--kind", "histogram", "--out", dir});
    CHECK(r.code == 1);
    CHECK(r.err.find("unsupported kind") != std::string::npos);
  }

  TEST_CASE("a failing verdict exits with 2") {
    auto dir = scratch("sl1");
    auto r = call({"s-l1", "--eps", "0.125,0.0625", "--out", dir});
    CHECK(r.code == 2);
    CHECK(r.out.find("FAIL s-l1") != std::string::npos);
    CHECK(fs::exists(fs::path(dir) / "report.json"));
  }

  TEST_CASE("reports do not depend on the thread count") {
    auto a = scratch("threads1"), b = scratch("threads3");
    CHECK(call({"certify-degenerate", "--depths", "4..6", "--threads", "1", "--out", a}).code == 0);
    CHECK(call({"certify-degenerate", "--depths", "4..6", "--threads", "3", "--out", b}).code == 0);
    CHECK(slurp(fs::path(a) / "report.json") == slurp(fs::path(b) / "report.json"));
    CHECK(slurp(fs::path(a) / "report.csv") == slurp(fs::path(b) / "report.csv"));
  }

  TEST_CASE("argument helpers") {
    auto v = cli::parse_gamma_vec("1,0;0,1");
    CHECK(v.v3.x == -1.0);
    CHECK(v.v3.y == -1.0);
    CHECK_THROWS_AS(cli::parse_gamma_vec("1,0;0,1;1,1"), Error);
    CHECK_THROWS_AS(cli::parse_vec4("1,2,3"), Error);
    auto x = cli::default_boundary_point(ball4());
    CHECK(std::abs(ball4().value(x)) < 1e-12);
    auto h = cli::default_boundary_point(parse_domain("halfspace:1,0,0,0"));
    CHECK(h == Vec4{0.0, 0.0, 0.0, 0.0});
  }
}
