// End-to-end checks of the command-line surface: exit codes, key output
// lines, and byte determinism of written reports across job counts.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout only
};

RunResult run_cli(const std::string& args) {
  const std::string command =
      std::string(NEWVEC_CLI_PATH) + " " + args + " 2>/dev/null";
  RunResult result;
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buffer;
  while (std::size_t n = fread(buffer.data(), 1, buffer.size(), pipe)) {
    result.output.append(buffer.data(), n);
  }
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

std::string temp_path(const std::string& name) {
  return std::string("cli_test_") + name;
}

}  // namespace

TEST_CASE("verify identity exits 0") {
  const auto result = run_cli("verify identity --n-max 12 --k-max 60");
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("[PASS] identity") != std::string::npos);
}

TEST_CASE("verify projector exits 0 on a reduced grid") {
  const auto result =
      run_cli("verify projector --q-set 2,3,5 --n-max 3 --r-max 6 --c-max 6");
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("[PASS] projector") != std::string::npos);
}

TEST_CASE("verify conjugation exits 0 for the rotation matrix") {
  const auto result =
      run_cli("verify conjugation --gamma 0,-1,1,0 --samples 50 --seed 7");
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("obstruction 4") != std::string::npos);
}

TEST_CASE("eval enew prints the normalization and the expansion") {
  const auto result = run_cli("eval enew --n 2 --ideal 2^2");
  CHECK(result.exit_code == 0);
  CHECK(result.output.rfind("7\n", 0) == 0);  // first line is the value
  CHECK(result.output.find("+1*e{K1(2)}") != std::string::npos);
  CHECK(result.output.find("-2*e{K1(1)}") != std::string::npos);
  CHECK(result.output.find("+1*e{K}") != std::string::npos);
}

TEST_CASE("eval enew with a character conductor uses magnitude profiles") {
  const auto result =
      run_cli("eval enew --n 2 --ideal 2^2 --chi-conductor 2");
  CHECK(result.exit_code == 0);
  CHECK(result.output.rfind("1\n", 0) == 0);
  CHECK(result.output.find("Z*K'(2)") != std::string::npos);
}

TEST_CASE("usage errors exit 2 with a diagnostic") {
  CHECK(run_cli("eval enew --n 2 --ideal 4^1").exit_code == 2);
  CHECK(run_cli("eval enew --n 2").exit_code == 2);          // missing --ideal
  CHECK(run_cli("eval enew --n 2 --ideal 2 --chi-conductor 3").exit_code == 2);
  CHECK(run_cli("verify conjugation --gamma 1,2,3").exit_code == 2);
  CHECK(run_cli("nonsense").exit_code == 2);
}

TEST_CASE("simulate produces deterministic reports independent of --jobs") {
  const std::string config_path = temp_path("config.json");
  {
    std::ofstream config(config_path);
    config << R"({"rank": 2,
                  "places": [{"q": 2}, {"q": 3}],
                  "r_max": 2,
                  "entries": 80,
                  "generic_fraction": "2/3",
                  "seed": 99,
                  "mode": "unfixed"})";
  }
  const std::string out1 = temp_path("report1.json");
  const std::string out4 = temp_path("report4.json");
  const std::string spectrum_out = temp_path("spectrum.json");
  CHECK(run_cli("simulate --config " + config_path + " --out " + out1 +
                " --spectrum-out " + spectrum_out + " --jobs 1")
            .exit_code == 0);
  CHECK(run_cli("simulate --config " + config_path + " --out " + out4 +
                " --jobs 4")
            .exit_code == 0);
  CHECK(slurp(out1) == slurp(out4));
  CHECK(slurp(out1).find("\"pass\": true") != std::string::npos);

  // Feeding the emitted spectrum back reproduces the same report bytes.
  const std::string out_replay = temp_path("report_replay.json");
  CHECK(run_cli("simulate --config " + config_path + " --spectrum " +
                spectrum_out + " --out " + out_replay + " --jobs 2")
            .exit_code == 0);
  CHECK(slurp(out1) == slurp(out_replay));

  // CSV flavor.
  const std::string out_csv = temp_path("report.csv");
  CHECK(run_cli("simulate --config " + config_path + " --report csv --out " +
                out_csv)
            .exit_code == 0);
  const std::string csv = slurp(out_csv);
  CHECK(csv.rfind("ideal,norm,refined_count", 0) == 0);

  CHECK(run_cli("simulate --config does_not_exist.json").exit_code == 2);
  std::remove(config_path.c_str());
  std::remove(out1.c_str());
  std::remove(out4.c_str());
  std::remove(out_replay.c_str());
  std::remove(out_csv.c_str());
  std::remove(spectrum_out.c_str());
}

TEST_CASE("verify bounds report format is machine readable") {
  const std::string out = temp_path("bounds.json");
  // Reduced grid keeps this fast; exit code reflects the dominating sweep.
  const auto result =
      run_cli("verify bounds --q-set 3,5 --n-max 2 --r-max 4 --profiles 50 "
              "--seed 4 --report json --out " + out);
  CHECK((result.exit_code == 0 || result.exit_code == 1));
  const std::string body = slurp(out);
  CHECK(body.find("\"command\": \"verify bounds\"") != std::string::npos);
  CHECK(body.find("bounds/normalization") != std::string::npos);
  CHECK(body.find("bounds/central-decay") != std::string::npos);
  std::remove(out.c_str());
}
