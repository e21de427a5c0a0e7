#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace {

namespace fs = std::filesystem;

struct Run {
  int code = -1;
  std::string out;
};

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

fs::path scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("fqpw_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

Run run(const std::string& args) {
  const fs::path out = scratch() / "stdout.txt";
  const std::string cmd = std::string(FQPW_CLI_PATH) + " " + args + " > " + out.string() + " 2>/dev/null";
  const int st = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  r.out = slurp(out);
  return r;
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::stringstream ss(s);
  for (std::string l; std::getline(ss, l);) v.push_back(l);
  return v;
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> v;
  std::stringstream ss(s);
  for (std::string c; std::getline(ss, c, ',');) v.push_back(c);
  return v;
}

const std::string kLi = std::string(FQPW_DATA_DIR) + "/li2fesio4.json";

}  // namespace

TEST(Cli, EstimateSweep) {
  const auto r = run("estimate --material " + kLi + " --np-min 3 --np-max 9 --eps 0.043");
  ASSERT_EQ(r.code, 0);
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 8u);
  EXPECT_EQ(ls[0], "n_p,N,lambda_T,lambda_U,lambda_V,lambda_nu,lambda_total,calls,toffoli_per_call,toffoli_total,qubits,runtime_s");
  long double prev = 0;
  for (std::size_t i = 1; i < ls.size(); ++i) {
    const auto c = split(ls[i]);
    ASSERT_EQ(c.size(), 12u);
    EXPECT_EQ(std::stoi(c[0]), int(i) + 2);
    const long double tot = std::stold(c[9]);
    EXPECT_GT(tot, prev);
    prev = tot;
  }
  EXPECT_EQ(r.out.find('\r'), std::string::npos);
}

TEST(Cli, EstimateDeterministicAndJson) {
  const fs::path a = scratch() / "a.csv", b = scratch() / "b.csv", j = scratch() / "r.json";
  ASSERT_EQ(run("estimate --material " + kLi + " --np-min 3 --np-max 4 --d 30 40 --clock 1e8 1e4 --csv " +
                a.string() + " --json " + j.string()).code, 0);
  ASSERT_EQ(run("estimate --material " + kLi + " --np-min 3 --np-max 4 --d 30 40 --clock 1e8 1e4 --csv " +
                b.string()).code, 0);
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_EQ(lines(slurp(a)).size(), 1u + 2 * 2 * 2);
  const auto doc = nlohmann::json::parse(slurp(j));
  ASSERT_EQ(doc["rows"].size(), 8u);
  EXPECT_EQ(doc["rows"][0]["itemized"]["swap p&q"], "5616");
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run("estimate --material " + kLi + " --np-min 5 --np-max 4").code, 2);
  EXPECT_EQ(run("estimate --material /nonexistent.json").code, 2);
  EXPECT_EQ(run("estimate").code, 2);
  EXPECT_EQ(run("bogus").code, 2);
  EXPECT_EQ(run("lambda --material " + kLi + " --n-p 13").code, 2);
  EXPECT_EQ(run("--help").code, 0);
  EXPECT_EQ(run("estimate --help").code, 0);
}

TEST(Cli, SchemaErrorExitCode) {
  const fs::path bad = scratch() / "bad.json";
  std::ofstream(bad) << R"({"name":"x","lattice":{"a":[1,2],"unit":"angstrom"},"atoms":[]})";
  EXPECT_EQ(run("lambda --material " + bad.string() + " --n-p 3").code, 2);
}

TEST(Cli, VerifyPassesAndDetectsFault) {
  const auto ok = run("verify --seed 7");
  ASSERT_EQ(ok.code, 0);
  const auto doc = nlohmann::json::parse(ok.out);
  EXPECT_TRUE(doc["passed"].get<bool>());
  EXPECT_GE(doc["checks"].size(), 30u);
  const auto bad = run("verify --max-eta 1 --inject-lambda-scale 0.5");
  EXPECT_EQ(bad.code, 1);
  const auto bdoc = nlohmann::json::parse(bad.out);
  bool be_failed = false;
  for (const auto& c : bdoc["checks"])
    if (c["name"] == "block_encoding" && !c["pass"].get<bool>()) be_failed = true;
  EXPECT_TRUE(be_failed);
  EXPECT_EQ(run("verify --max-eta 4").code, 2);
  EXPECT_EQ(run("verify --n-p 5").code, 2);
}

TEST(Cli, PropsPassThrough) {
  auto r = run("props diffusivity --hop-distance 3e-10 --attempt-frequency 1e13 --e-t 0.5 --e-i 0 --temperature 300");
  ASSERT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j["value"].get<double>() / 3.6e-15, 1.0, 0.02);

  r = run("props voltage --lithiated -1.0 --delithiated -0.8 --lithium -0.2 --n 1");
  ASSERT_EQ(r.code, 0);
  EXPECT_NEAR(nlohmann::json::parse(r.out)["value"].get<double>(), 0.0, 1e-12);

  const fs::path e = scratch() / "e.json";
  std::ofstream(e) << R"({"lithiated": -1.0, "delithiated": -0.8, "n": 1})";
  EXPECT_EQ(run("props voltage --energies " + e.string()).code, 2);
  char li[64];
  std::snprintf(li, sizeof li, "%.17g", -0.2 + 1.0 / 27.211386245988);  // Delta E = -1 eV
  r = run("props voltage --energies " + e.string() + " --lithium " + li);
  ASSERT_EQ(r.code, 0);
  EXPECT_NEAR(nlohmann::json::parse(r.out)["value"].get<double>(), 1.0, 1e-9);

  char poor[64];
  std::snprintf(poor, sizeof poor, "%.17g", 1.025 / 27.211386245988);
  r = run("props stability --e-rich 0 --e-poor " + std::string(poor) +
          " --e-o2 0 --z-prime 1 --s-o2 2.124e-3");
  ASSERT_EQ(r.code, 0);
  EXPECT_NEAR(nlohmann::json::parse(r.out)["value"].get<double>(), 965.16, 0.05);
  EXPECT_EQ(run("props stability --e-rich 0 --e-poor 0 --e-o2 0 --z-prime 0").code, 2);
}

TEST(Cli, LambdaAndQubits) {
  auto r = run("lambda --material " + kLi + " --n-p 4");
  ASSERT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_GT(j["lambda_total"].get<double>(), j["lambda_T"].get<double>());
  r = run("qubits --material " + kLi + " --n-p 4 --eps 0.043");
  ASSERT_EQ(r.code, 0);
  j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["leading_term"].get<long>(), 1872);
}
