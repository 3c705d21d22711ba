#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include "nasq/io.hpp"
#include "nasq/states.hpp"

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(NASQ_CLI_PATH) + " " + args + " 2>&1";
  RunResult res;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  while (fgets(buf.data(), int(buf.size()), pipe)) res.out += buf.data();
  const int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("cli classify on generated states") {
  const auto mixed = temp_file("nasq_cli_mixed.json");
  nasq::save_state(mixed, nasq::DensityMatrix::maximally_mixed({2, 2}));
  auto res = run_cli("classify --input " + mixed.string());
  CHECK(res.exit_code == 0);
  CHECK(res.out.find("\"verdict\":\"AS\"") != std::string::npos);

  const auto bell = temp_file("nasq_cli_bell.json");
  nasq::save_state(bell, nasq::werner({1.0, std::numbers::pi / 4, 0.0}));
  res = run_cli("classify --input " + bell.string());
  CHECK(res.exit_code == 0);
  CHECK(res.out.find("\"verdict\":\"Entangled\"") != std::string::npos);

  const auto sep = temp_file("nasq_cli_sep.json");
  nasq::save_state(sep, nasq::werner({0.4, std::numbers::pi / 12, 0.0}));
  res = run_cli("classify --input " + sep.string());
  CHECK(res.exit_code == 0);
  CHECK(res.out.find("\"verdict\":\"NonAS-Separable\"") != std::string::npos);

  std::filesystem::remove(mixed);
  std::filesystem::remove(bell);
  std::filesystem::remove(sep);
}

TEST_CASE("cli exit codes: parse failure and unsupported dims") {
  const auto junk = temp_file("nasq_cli_junk.json");
  std::ofstream(junk) << "{not json";
  CHECK(run_cli("classify --input " + junk.string()).exit_code == 2);
  std::filesystem::remove(junk);

  CHECK(run_cli("classify --input /does/not/exist.json").exit_code == 2);

  const auto big = temp_file("nasq_cli_3x3.json");
  nasq::save_state(big, nasq::random_density({3, 3}, 9, 1));
  CHECK(run_cli("classify --input " + big.string()).exit_code == 3);
  std::filesystem::remove(big);
}

TEST_CASE("cli measure: closed form on the Bell state, zero on AS") {
  const auto bell = temp_file("nasq_cli_bell2.json");
  nasq::save_state(bell, nasq::werner({1.0, std::numbers::pi / 4, 0.0}));
  auto res = run_cli("measure --input " + bell.string() +
                     " --measure relent --mode closed");
  CHECK(res.exit_code == 0);
  CHECK(res.out.find("\"value\":1.0") != std::string::npos);

  // unsupported combination: closed form for trace distance
  res = run_cli("measure --input " + bell.string() +
                " --measure trace --mode closed");
  CHECK(res.exit_code == 4);

  const auto mixed = temp_file("nasq_cli_mixed2.json");
  nasq::save_state(mixed, nasq::DensityMatrix::maximally_mixed({2, 2}));
  res = run_cli("measure --input " + mixed.string() +
                " --measure bures --mode aligned");
  CHECK(res.exit_code == 0);
  CHECK(res.out.find("\"value\":0.0") != std::string::npos);

  std::filesystem::remove(bell);
  std::filesystem::remove(mixed);
}

TEST_CASE("cli sweep writes the documented CSV header") {
  const auto csv = temp_file("nasq_cli_sweep.csv");
  auto res = run_cli("sweep-werner --grid 0:1:5 --out " + csv.string());
  CHECK(res.exit_code == 0);
  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  CHECK(header == "p,n_relent,n_bures,n_witness,classification");
  int rows = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) ++rows;
  }
  CHECK(rows == 5);
  std::filesystem::remove(csv);

  CHECK(run_cli("sweep-werner --grid 0:1:5 --out /no/such/dir/file.csv")
            .exit_code == 5);
}

TEST_CASE("cli oracle: unknown suite exits 6, small suite passes") {
  CHECK(run_cli("oracle --suite nonsense").exit_code == 6);
  auto res = run_cli("oracle --suite witness-identity --trials 4 --seed 5");
  CHECK(res.exit_code == 0);
  CHECK(res.out.find("\"failures\":0") != std::string::npos);
}

TEST_CASE("cli states round-trip through gen with full precision") {
  const auto path = temp_file("nasq_cli_gen.json");
  CHECK(run_cli("gen --family random --d 3 --rank 4 --seed 9 --out " +
                path.string())
            .exit_code == 0);
  const nasq::DensityMatrix rho = nasq::load_state(path);
  const std::string once = nasq::state_to_json_string(rho);
  CHECK(once == nasq::state_to_json_string(nasq::state_from_json_string(once)));
  std::filesystem::remove(path);
}

}  // TEST_SUITE
