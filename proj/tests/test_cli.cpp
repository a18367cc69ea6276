#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "padlock/cli.hpp"

using nlohmann::json;

namespace {

struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};

CliResult run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = padlock::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream f(path, std::ios::binary);
  f << content;
  return path;
}

}  // namespace

TEST_CASE("cli: bounds") {
  const CliResult r = run_cli({"bounds", "--k", "6", "--n", "11"});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["lower"] == 11);
  CHECK(doc["upper"] == 11);
}

TEST_CASE("cli: construct with inline verification") {
  const CliResult r =
      run_cli({"construct", "--scheme", "bose", "--n", "12", "--verify"});
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string system_line, report_line;
  REQUIRE(std::getline(lines, system_line));
  REQUIRE(std::getline(lines, report_line));
  const json sys = json::parse(system_line);
  CHECK(sys["padlocks"] == 9);
  CHECK(sys["n"] == 12);
  const json report = json::parse(report_line);
  CHECK(report["verdict"] == true);
  CHECK(report["padlocks"] == 9);
}

TEST_CASE("cli: construct output round-trips through verify") {
  const CliResult built = run_cli({"construct", "--scheme", "two", "--n", "9"});
  REQUIRE(built.code == 0);
  const auto path = temp_file("padlock_cli_two9.json", built.out);

  const CliResult verified =
      run_cli({"verify", "--system", path.string(), "--k", "2"});
  REQUIRE(verified.code == 0);
  CHECK(json::parse(verified.out)["verdict"] == true);

  // A false verdict is an ordinary reported outcome.
  const CliResult wrong_k =
      run_cli({"verify", "--system", path.string(), "--k", "3"});
  CHECK(wrong_k.code == 0);
  CHECK(json::parse(wrong_k.out)["verdict"] == false);

  // Byte-identical across runs.
  const CliResult again = run_cli({"construct", "--scheme", "two", "--n", "9"});
  CHECK(again.out == built.out);
}

TEST_CASE("cli: formula schemes") {
  const CliResult r = run_cli({"construct", "--scheme", "dnf", "--formula",
                               "A.B + A.C + B.D + E"});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["padlocks"] == 5);
}

TEST_CASE("cli: table emits CSV") {
  const CliResult r = run_cli({"table", "--n", "11", "--k-max", "11"});
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string header;
  REQUIRE(std::getline(lines, header));
  CHECK(header == "k,n,lower,upper,upper_witness");
  std::string row;
  int rows = 0;
  std::string k2_row;
  while (std::getline(lines, row)) {
    ++rows;
    if (row.rfind("2,", 0) == 0) k2_row = row;
  }
  CHECK(rows == 11);
  CHECK(k2_row == "2,11,6,6,two-of-n");
}

TEST_CASE("cli: knot build, verify, search") {
  const CliResult built = run_cli({"knot", "--build", "2", "4"});
  REQUIRE(built.code == 0);
  const auto path = temp_file("padlock_cli_knot24.txt", built.out);

  const CliResult verified = run_cli(
      {"knot", "--verify", path.string(), "--k", "2", "--n", "4"});
  REQUIRE(verified.code == 0);
  CHECK(json::parse(verified.out)["verdict"] == true);

  const CliResult searched = run_cli({"knot", "--search", "1", "2", "4"});
  REQUIRE(searched.code == 0);
  const json doc = json::parse(searched.out);
  CHECK(doc["found"] == true);
  CHECK(doc["length"] == 4);
}

TEST_CASE("cli: share and reconstruct") {
  const CliResult built = run_cli({"construct", "--scheme", "two", "--n", "5"});
  REQUIRE(built.code == 0);
  const auto sys_path = temp_file("padlock_cli_share_sys.json", built.out);

  const CliResult dealt = run_cli({"share", "--system", sys_path.string(),
                                   "--secret", "3", "--seed", "11"});
  REQUIRE(dealt.code == 0);
  const auto shares_path = temp_file("padlock_cli_share_file.json", dealt.out);

  const CliResult good = run_cli({"reconstruct", "--system", sys_path.string(),
                                  "--shares", shares_path.string(),
                                  "--coalition", "1,4"});
  REQUIRE(good.code == 0);
  const json ok = json::parse(good.out);
  CHECK(ok["ok"] == true);
  CHECK(ok["secret"] == 3);

  const CliResult lone = run_cli({"reconstruct", "--system", sys_path.string(),
                                  "--shares", shares_path.string(),
                                  "--coalition", "2"});
  REQUIRE(lone.code == 0);
  CHECK(json::parse(lone.out)["ok"] == false);

  // Shares bound to a different circuit are refused.
  const CliResult other = run_cli({"construct", "--scheme", "benaloh"});
  const auto other_path = temp_file("padlock_cli_other_sys.json", other.out);
  const CliResult mismatch =
      run_cli({"reconstruct", "--system", other_path.string(), "--shares",
               shares_path.string(), "--coalition", "0,1"});
  CHECK(mismatch.code == 1);
}

TEST_CASE("cli: --out writes the document to a file") {
  const auto path = std::filesystem::temp_directory_path() / "padlock_cli_out.json";
  std::filesystem::remove(path);
  const CliResult r = run_cli({"construct", "--scheme", "benaloh", "--out",
                               path.string(), "--verify", "--k", "2"});
  REQUIRE(r.code == 0);
  // Only the report goes to stdout; the system landed in the file.
  const json report = json::parse(r.out);
  CHECK(report["verdict"] == false);  // the pairwise device is no 2-threshold
  std::ifstream in(path);
  json sys;
  in >> sys;
  CHECK(sys["padlocks"] == 4);
}

TEST_CASE("cli: exit codes") {
  CHECK(run_cli({"construct", "--scheme", "nope"}).code == 2);
  CHECK(run_cli({"bounds", "--k", "6"}).code == 2);
  CHECK(run_cli({}).code == 2);

  const auto bad = temp_file("padlock_cli_bad.json", "{not json");
  const CliResult r = run_cli({"verify", "--system", bad.string(), "--k", "2"});
  CHECK(r.code == 2);
  CHECK(r.err.find("padlock_cli_bad.json") != std::string::npos);

  // Structurally broken documents name the offending path.
  const auto broken = temp_file(
      "padlock_cli_broken.json",
      R"({"n":1,"padlocks":1,"circuit":{"t":"thr","m":2,"ch":[{"t":"lock","id":0}]},"keys":[[0]]})");
  const CliResult s = run_cli({"verify", "--system", broken.string(), "--k", "1"});
  CHECK(s.code == 2);
  CHECK(s.err.find("circuit") != std::string::npos);

  // Capacity failures are runtime errors, not usage errors.
  const CliResult big =
      run_cli({"construct", "--scheme", "direct", "--k", "2", "--n", "30", "--verify"});
  CHECK(big.code == 1);
}
