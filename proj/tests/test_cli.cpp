#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "weyl/cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = weyl::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("weyl_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string file(const std::string& name, const std::string& body) {
    fs::path p = dir_ / name;
    std::ofstream(p) << body;
    return p.string();
  }

  fs::path dir_;
};

const char* kSchrodinger = R"({"basis":[
  {"skew":[{"sigma":"+","alpha":0,"beta":0,"coeff":"1/2"}]},
  {"skew":[{"sigma":"+","alpha":1,"beta":1,"coeff":"1/2"}]},
  {"skew":[{"sigma":"+","alpha":1,"beta":0,"coeff":"1"}]},
  {"skew":[{"sigma":"-","alpha":1,"beta":0,"coeff":"1"}]},
  {"skew":[{"sigma":"+","alpha":2,"beta":0,"coeff":"1"}]},
  {"skew":[{"sigma":"-","alpha":2,"beta":0,"coeff":"1"}]}]})";

}  // namespace

TEST_F(CliTest, Selftest) {
  auto r = run({"selftest"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.err.find("table1: 15/15"), std::string::npos);
  auto j = json::parse(r.out);
  EXPECT_TRUE(j["ok"].get<bool>());
  EXPECT_EQ(j["report"][0], "table1: 15/15");
}

TEST_F(CliTest, ClosureOfNumberOperator) {
  auto g = file("g.json", R"([{"skew":[{"sigma":"+","alpha":1,"beta":1,"coeff":"1"}]}])");
  auto r = run({"closure", "--gens", g});
  ASSERT_EQ(r.code, 0);
  auto j = json::parse(r.out);
  EXPECT_EQ(j["outcome"], "finite");
  EXPECT_EQ(j["dim"], 1);
  for (const char* key : {"outcome", "dim", "basis", "witness", "rule"}) EXPECT_TRUE(j.contains(key)) << key;
}

TEST_F(CliTest, ClosureInfiniteCarriesChain) {
  auto g = file("g.json", R"({"gens":[{"skew":[{"sigma":"+","alpha":1,"beta":1,"coeff":"1/2"}]},
                                       {"skew":[{"sigma":"+","alpha":3,"beta":0,"coeff":"1"}]}]})");
  auto j = json::parse(run({"closure", "--gens", g}).out);
  EXPECT_EQ(j["outcome"], "infinite");
  EXPECT_EQ(j["rule"], "PerpWithFreeHam");
  EXPECT_GE(j["witness"]["chain"]["degrees"].size(), 4u);
}

TEST_F(CliTest, EnumerateSchrodinger) {
  auto b = file("b.json", kSchrodinger);
  auto r = run({"enumerate", "--basis", b, "--markdown"});
  ASSERT_EQ(r.code, 0);
  auto j = json::parse(r.out);
  EXPECT_EQ(j["count"], 22);
  EXPECT_NE(j["markdown"].get<std::string>().find("| wh1 | 4 | 2 |"), std::string::npos);
}

TEST_F(CliTest, Classify) {
  auto b = file("b.json", kSchrodinger);
  auto j = json::parse(run({"classify", "--basis", b}).out);
  EXPECT_EQ(j["catalog"]["name"], "Schrodinger");
  EXPECT_EQ(j["fingerprint"]["derived_series"], json({6, 6}));
  auto nc = file("nc.json", R"([{"skew":[{"sigma":"+","alpha":1,"beta":0,"coeff":"1"}]},
                               {"skew":[{"sigma":"-","alpha":1,"beta":0,"coeff":"1"}]}])");
  EXPECT_EQ(run({"classify", "--basis", nc}).code, 1);
}

TEST_F(CliTest, Igusa) {
  auto e1 = file("e1.json", R"({"skew":[{"sigma":"-","alpha":3,"beta":0,"coeff":"1"}]})");
  auto e2 = file("e2.json", R"({"skew":[{"sigma":"+","alpha":3,"beta":0,"coeff":"1"}]})");
  auto j = json::parse(run({"igusa", "--e1", e1, "--e2", e2, "--samples", "256", "--seed", "7"}).out);
  EXPECT_EQ(j["verdict"], "infinite");
  EXPECT_EQ(j["sigma"]["s"], 0.5);
  EXPECT_TRUE(j.contains("a0b0"));
  EXPECT_TRUE(j.contains("delta"));
  EXPECT_EQ(j["identity_check"]["verdict"], "inconclusive");
}

TEST_F(CliTest, SimulatePresetsAndCsv) {
  auto c = file("c.json", R"({"preset":"sinusoid","h":0.01,"t":1,"amplitude":[0,0.2],"omega":[0,1],"offset":[1]})");
  auto csv = (dir_ / "f.csv").string();
  auto r = run({"simulate", "--algebra", "wh2", "--controls", c, "--fock-dim", "32", "--csv", csv});
  ASSERT_EQ(r.code, 0) << r.out;
  auto j = json::parse(r.out);
  EXPECT_EQ(j["f"].size(), 4u);
  EXPECT_GT(j["fidelity"]["vacuum"].get<double>(), 1 - 1e-9);
  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "t,f1,f2,f3,f4");
  auto arrays = file("a.json", R"({"h":0.1,"u":[[1,1,1],[0,0.1,0.2],[0,0,0],[0,0,0],[0.1,0.1,0.1]]})");
  auto s = run({"simulate", "--algebra", "schrodinger", "--controls", arrays, "--no-oracle"});
  ASSERT_EQ(s.code, 0) << s.out;
  EXPECT_EQ(json::parse(s.out)["n_steps"], 2);
}

TEST_F(CliTest, MalformedJsonPointsAtField) {
  auto g = file("g.json", R"({"gens":[{"skew":[{"sigma":"+","alpha":1,"beta":0,"coeff":"0.5"}]}]})");
  auto r = run({"closure", "--gens", g});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(json::parse(r.out)["pointer"], "/gens/0/skew/0/coeff");
  auto c = file("c.json", R"({"preset":"square","h":0.01,"t":1})");
  auto s = run({"simulate", "--controls", c});
  EXPECT_EQ(s.code, 2);
  EXPECT_EQ(json::parse(s.out)["pointer"], "/preset");
  auto broken = file("x.json", "{not json");
  EXPECT_EQ(run({"closure", "--gens", broken}).code, 2);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"closure"}).code, 2);
  EXPECT_EQ(run({"closure", "--gens", (dir_ / "missing.json").string()}).code, 2);
  EXPECT_EQ(run({"simulate", "--algebra", "sl3", "--controls", "x"}).code, 2);
}

TEST_F(CliTest, HelpDocumentsExitCodes) {
  auto r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("Exit codes"), std::string::npos);
}

TEST_F(CliTest, DomainErrorOnBlowUp) {
  auto c = file("c.json", R"({"preset":"constant","h":0.1,"t":40,"values":[0,0,0,5]})");
  auto r = run({"simulate", "--algebra", "schrodinger", "--controls", c, "--no-oracle"});
  EXPECT_EQ(r.code, 1);
  EXPECT_TRUE(json::parse(r.out).contains("blow_up"));
}

TEST_F(CliTest, OutputIsDeterministic) {
  auto b = file("b.json", kSchrodinger);
  auto a = run({"enumerate", "--basis", b});
  auto c = run({"enumerate", "--basis", b});
  EXPECT_EQ(a.out, c.out);
}

TEST_F(CliTest, ExecutableExitCode) {
  const std::string cmd = std::string(WEYL_LIE_EXE) + " selftest > /dev/null 2>&1";
  int status = std::system(cmd.c_str());
  EXPECT_EQ(WEXITSTATUS(status), 0);
  status = std::system((std::string(WEYL_LIE_EXE) + " closure > /dev/null 2>&1").c_str());
  EXPECT_EQ(WEXITSTATUS(status), 2);
}
