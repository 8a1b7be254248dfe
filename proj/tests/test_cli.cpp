#include "doctest.h"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <string>

#include <json.hpp>

namespace {

struct CommandResult {
  int exit_code = -1;
  std::string out;
};

CommandResult run_cli(const std::string& args) {
  CommandResult res;
  const std::string cmd = std::string(HLT_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf;
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe))
    res.out.append(buf.data(), n);
  const int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

}  // namespace

TEST_CASE("constants subcommand emits valid JSON with the sharp constant") {
  const auto res = run_cli("constants --d 3 --s 0.5");
  REQUIRE(res.exit_code == 0);
  const auto j = nlohmann::json::parse(res.out);
  CHECK(j["command"] == "constants");
  CHECK(std::abs(j["hardy_constant"].get<double>() - 2.0 / std::numbers::pi) <
        1e-12);
  CHECK(std::abs(j["kernel_normalization"].get<double>() -
                 1.0 / (2.0 * std::numbers::pi * std::numbers::pi)) < 1e-12);
}

TEST_CASE("invalid parameters exit with code 2") {
  CHECK(run_cli("constants --d 1 --s 0.5").exit_code == 2);
  CHECK(run_cli("lt-verify --family pyramid --n 128").exit_code == 2);
  CHECK(run_cli("lt-constant --gamma -1 --sobolev-const 1").exit_code == 2);
}

TEST_CASE("unknown subcommand fails") {
  CHECK(run_cli("frobnicate").exit_code != 0);
}

TEST_CASE("verification subcommands succeed") {
  const auto hardy = run_cli("verify-hardy --d 3 --s 0.5");
  CHECK(hardy.exit_code == 0);
  CHECK(nlohmann::json::parse(hardy.out)["pass"] == true);

  const auto ims = run_cli("verify-ims");
  CHECK(ims.exit_code == 0);
  CHECK(nlohmann::json::parse(ims.out)["pass"] == true);
}

TEST_CASE("sobolev-constant output is deterministic") {
  const auto a = run_cli("sobolev-constant --q 2");
  const auto b = run_cli("sobolev-constant --q 2");
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  const auto j = nlohmann::json::parse(a.out);
  CHECK(j["bound"].get<double>() == doctest::Approx(20.083057099).epsilon(1e-6));
}

TEST_CASE("lt-verify emits the documented CSV") {
  const auto res = run_cli(
      "lt-verify --d 1 --s 0.25 --gamma 1 --family gaussian --depths 1 "
      "--n 128");
  REQUIRE(res.exit_code == 0);
  const std::string header =
      "family,depth,n_points,L,count,riesz_mean,integral,constant,ratio\n";
  CHECK(res.out.substr(0, header.size()) == header);
  // exactly one data row, comma-separated, starting with the family name
  const auto body = res.out.substr(header.size());
  CHECK(body.substr(0, 9) == "gaussian,");
  CHECK(body.find('\n') == body.size() - 1);
}

TEST_CASE("lt-constant reports the chain pieces consistently") {
  const auto res =
      run_cli("lt-constant --gamma 1 --d 1 --s 0.25 --sobolev-const 1");
  REQUIRE(res.exit_code == 0);
  const auto j = nlohmann::json::parse(res.out);
  const double p_star = j["p_star"].get<double>();
  CHECK(j["q_exp"].get<double>() ==
        doctest::Approx(2.0 * p_star / (p_star - 1.0)).epsilon(1e-9));
  CHECK(j["c_final"].get<double>() > 0.0);
}
