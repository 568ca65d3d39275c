#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <string>

using json = nlohmann::json;

namespace {

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun run(const std::string& args) {
  const char* exe = std::getenv("CMTWIST_CLI");
  if (!exe) throw std::runtime_error("CMTWIST_CLI is not set");
  const std::string cmd = std::string(exe) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) throw std::runtime_error("popen failed");
  CliRun r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::filesystem::path fresh_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("cmtwist-test-" + name + "-" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  return dir;
}

}  // namespace

TEST(Cli, VerifySixtyFive) {
  const CliRun r = run("verify --q 7 --R 65");
  ASSERT_EQ(r.code, 0) << r.out;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["config"]["prec"], 192);
  EXPECT_EQ(j["config"]["method"], "both");
  EXPECT_EQ(j["divisors"].back()["d"], 65);
  EXPECT_EQ(j["divisors"].back()["ord_P"], 2);
  EXPECT_EQ(j["divisors"].back()["msl_ord"], 1);
  EXPECT_EQ(j["divisors"].back()["phi_coeffs"], json::parse(R"([["4","0"]])"));
  for (const auto& c : j["checks"]) EXPECT_EQ(c["status"], "PASS") << c["name"];
  EXPECT_TRUE(j["passed"].get<bool>());
}

TEST(Cli, VerifyTwentyThree) {
  const CliRun r = run("verify --q 23 --R 5 --format tsv");
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("ord_P(phi) = k_d d=5\tPASS"), std::string::npos) << r.out;
}

TEST(Cli, InvalidInputExitsFour) {
  EXPECT_EQ(run("verify --q 7 --R 29").code, 4);
  EXPECT_EQ(run("verify --q 15 --R 5").code, 4);
  EXPECT_EQ(run("verify --q 7 --R 5 --method fast").code, 4);
  EXPECT_EQ(run("verify --q 7 --R 5 --prec 10").code, 4);
  EXPECT_EQ(run("verify --q 7").code, 4);
  EXPECT_EQ(run("lvalue --q 7 --d 3 --R 5").code, 4);
  EXPECT_EQ(run("frobnicate").code, 4);
}

TEST(Cli, LValueOfConductorFortyNine) {
  const CliRun r = run("lvalue --q 7 --d 1");
  ASSERT_EQ(r.code, 0) << r.out;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["msl_ord"], -1);
  ASSERT_EQ(j["values"].size(), 2u);
  const auto& a = j["values"][0];
  const auto& e = j["values"][1];
  EXPECT_EQ(a["method"], "afe");
  EXPECT_EQ(e["method"], "eisenstein");
  // the two lines agree within the printed bounds
  const double diff = std::abs(std::stod(a["re"].get<std::string>()) - std::stod(e["re"].get<std::string>()));
  EXPECT_LE(diff, std::stod(a["err"].get<std::string>()) + std::stod(e["err"].get<std::string>()));
  EXPECT_NEAR(std::stod(a["re"].get<std::string>()), 0.96665585280840577, 1e-15);
  EXPECT_EQ(a["w_re"].get<std::string>().substr(0, 8), "1.000000");
}

TEST(Cli, ScanEnumeratesFamilyAndResumes) {
  const auto dir = fresh_dir("scan");
  const std::string args = "scan --q 7 --max-R 100 --method afe --cache-dir " + dir.string();
  const CliRun first = run(args);
  ASSERT_EQ(first.code, 0) << first.out;
  const json a = json::parse(first.out);
  std::vector<std::int64_t> Rs;
  for (const auto& row : a["rows"]) Rs.push_back(row["R"]);
  EXPECT_EQ(Rs, (std::vector<std::int64_t>{5, 13, 17, 41, 61, 65, 73, 85, 89, 97}));
  EXPECT_EQ(a["computed"], 10);
  EXPECT_EQ(a["cache_hits"], 0);

  // drop two entries as if the scan had been interrupted
  std::filesystem::remove(dir / "verify-q7-R85-P192-afe.json");
  std::filesystem::remove(dir / "verify-q7-R97-P192-afe.json");
  const json b = json::parse(run(args).out);
  EXPECT_EQ(b["cache_hits"], 8);
  EXPECT_EQ(b["computed"], 2);
  for (std::size_t i = 0; i < Rs.size(); ++i) {
    EXPECT_EQ(b["rows"][i]["status"], "PASS");
    EXPECT_EQ(b["rows"][i]["ord_P"], a["rows"][i]["ord_P"]);
  }
  std::filesystem::remove_all(dir);
}

TEST(Cli, EmptyScan) {
  const CliRun r = run("scan --q 7 --max-R 4 --format tsv");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "R\tk\tstatus\tord_P\tsource\n");
}

TEST(Cli, StaleCacheEntryIsIgnored) {
  const auto dir = fresh_dir("stale");
  const std::string args = "verify --q 7 --R 5 --method afe --cache-dir " + dir.string();
  const CliRun first = run(args);
  ASSERT_EQ(first.code, 0);
  // a header written for another precision is not reused
  const auto entry = dir / "verify-q7-R5-P192-afe.json";
  std::string text;
  {
    std::ifstream in(entry);
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  const std::size_t pos = text.find("P=192");
  ASSERT_NE(pos, std::string::npos);
  text.replace(pos, 5, "P=256");
  text.replace(text.find("\"passed\": true"), 14, "\"passed\": false");
  {
    std::ofstream out(entry);
    out << text;
  }
  EXPECT_EQ(run(args).code, 0);
  std::filesystem::remove_all(dir);
}

TEST(Cli, ReportsAreDeterministic) {
  const std::string args = "verify --q 23 --R 5 --method afe";
  const CliRun a = run(args);
  const CliRun b = run(args);
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, Selftest) {
  const CliRun r = run("selftest");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos) << r.out;
}
