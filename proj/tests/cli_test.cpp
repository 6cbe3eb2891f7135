#include <json.hpp>

#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

struct CliResult {
  std::string out;
  int status = -1;
};

CliResult run(const std::string& args, const std::string& env = "") {
  const std::string cmd = "cd " ITPHI_DATA " && " + env + " " ITPHI_CLI " " + args + " 2>/dev/null";
  CliResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int st = pclose(pipe);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string without_timing(const std::string& report) {
  if (report.empty()) return report;
  auto j = nlohmann::json::parse(report);
  j.erase("wall_time_ms");
  return j.dump(2) + "\n";
}

std::string golden_path(const std::string& name) { return std::string(ITPHI_GOLDEN) + "/" + name + ".json"; }

struct Case {
  const char* name;
  const char* args;
  int status;
};

class Golden : public testing::TestWithParam<Case> {};

TEST_P(Golden, MatchesFile) {
  const Case& c = GetParam();
  const CliResult r = run(c.args);
  EXPECT_EQ(r.status, c.status);
  const std::string got = without_timing(r.out);
  if (std::getenv("ITPHI_UPDATE_GOLDEN")) std::ofstream(golden_path(c.name)) << got;
  std::ifstream in(golden_path(c.name));
  ASSERT_TRUE(in) << "missing " << golden_path(c.name);
  std::stringstream want;
  want << in.rdbuf();
  EXPECT_EQ(got, want.str());
}

INSTANTIATE_TEST_SUITE_P(
    Cli, Golden,
    testing::Values(Case{"algebra_check", "algebra check fix3.alg", 0},
                    Case{"phi", "phi fix3.alg s1s2.mod", 0},
                    Case{"phi_periodic", "phi fix1.alg s.fix1.mod --nmax 8", 0},
                    Case{"phi_div", "phi-div fix3.alg s1s2.mod", 0},
                    Case{"phidim", "phidim fix3.alg", 0},
                    Case{"phidim_kupisch", "phidim --kupisch 2,2 --cyclic", 0},
                    Case{"phidim_indec", "phidim fix4.alg --indec indec.fix4.json", 0},
                    Case{"phidim_sample", "phidim fix5.alg --sample 200 --seed 3", 0},
                    Case{"dims", "dims fix2.alg", 0},
                    Case{"tilt_verify", "tilt verify fix2.alg tilt.fix2.mod", 0},
                    Case{"tilt_verify_stalled", "tilt verify fix2.alg p1p2.mod", 1},
                    Case{"tilt_verify_not_rigid", "tilt verify fix2.alg s1s2.fix2.mod", 1},
                    Case{"tilt_endo", "tilt endo fix3.alg tilt.fix3.mod", 0},
                    Case{"tilt_bongartz", "tilt bongartz fix3.alg tilt.fix3.mod", 0},
                    Case{"ope", "ope fix1.alg s.fix1.mod", 0},
                    Case{"selftest", "selftest --seed 42", 0}),
    [](const testing::TestParamInfo<Case>& info) { return std::string(info.param.name); });

TEST(Cli, HelpListsEverySubcommand) {
  const CliResult top = run("--help");
  EXPECT_EQ(top.status, 0);
  for (const char* sub : {"algebra", "phi", "phi-div", "phidim", "dims", "tilt", "ope", "selftest"})
    EXPECT_NE(top.out.find(sub), std::string::npos) << sub;
  const CliResult tilt = run("tilt --help");
  for (const char* sub : {"verify", "endo", "bongartz"}) EXPECT_NE(tilt.out.find(sub), std::string::npos) << sub;
  EXPECT_NE(run("algebra --help").out.find("check"), std::string::npos);
  const CliResult phidim = run("phidim --help");
  for (const char* flag : {"--indec", "--kupisch", "--cyclic", "--sample"})
    EXPECT_NE(phidim.out.find(flag), std::string::npos) << flag;
}

TEST(Cli, ReportRoundTripIsByteIdentical) {
  for (const char* args : {"phi fix3.alg s1s2.mod", "tilt verify fix2.alg p1p2.mod", "selftest --seed 1"}) {
    const CliResult r = run(args);
    ASSERT_FALSE(r.out.empty()) << args;
    EXPECT_EQ(nlohmann::json::parse(r.out).dump(2) + "\n", r.out) << args;
  }
}

TEST(Cli, ReportFields) {
  const auto j = nlohmann::json::parse(run("phi fix3.alg s1s2.mod --seed 9").out);
  EXPECT_EQ(j["result"]["phi"]["kind"], "Exact");
  EXPECT_EQ(j["result"]["phi"]["value"], 2);
  EXPECT_EQ(j["seed"], 9);
  EXPECT_EQ(j["inputs"]["algebra"].get<std::string>().size(), 64u);
  EXPECT_EQ(j["inputs"]["module"].get<std::string>().size(), 64u);
  EXPECT_TRUE(j["wall_time_ms"].is_number_integer());
  EXPECT_EQ(j["command"].size(), 5u);
}

TEST(Cli, SeedFromEnvironment) {
  EXPECT_EQ(nlohmann::json::parse(run("phi fix3.alg s1s2.mod", "ITPHI_SEED=17").out)["seed"], 17);
  EXPECT_EQ(nlohmann::json::parse(run("phi fix3.alg s1s2.mod --seed 4", "ITPHI_SEED=17").out)["seed"], 4);
  EXPECT_EQ(run("phi fix3.alg s1s2.mod", "ITPHI_SEED=abc").status, 2);
}

TEST(Cli, FailureNamesTheReason) {
  const auto j = nlohmann::json::parse(run("tilt verify fix2.alg p1p2.mod").out);
  EXPECT_EQ(j["status"], "failure");
  EXPECT_EQ(j["failure"]["kind"], "CoresolutionStalled");
}

class InputErrors : public testing::Test {
 protected:
  std::string write(const std::string& name, const std::string& text) {
    const std::string path = testing::TempDir() + name;
    std::ofstream(path) << text;
    return path;
  }
  std::string diagnostics(const std::string& args) {
    const std::string cmd = "cd " ITPHI_DATA " && " ITPHI_CLI " " + args + " 2>&1 >/dev/null";
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    char buf[1024];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    pclose(pipe);
    return out;
  }
};

TEST_F(InputErrors, ExitTwoWithLocation) {
  const auto bad_vertex = write("bad_vertex.alg", R"({"prime": 2, "vertices": 2, "arrows": [{"from": 0, "to": 5, "label": "a"}]})");
  EXPECT_EQ(run("algebra check " + bad_vertex).status, 2);
  EXPECT_NE(diagnostics("algebra check " + bad_vertex).find("/arrows/0/to"), std::string::npos);

  const auto truncated = write("truncated.alg", R"({"prime": 2, "vert)");
  EXPECT_EQ(run("algebra check " + truncated).status, 2);
  EXPECT_NE(diagnostics("algebra check " + truncated).find("at byte"), std::string::npos);

  const auto wrong_shape = write("wrong_shape.mod", R"({"dims": [1, 1, 0], "arrows": {"a": [[1, 1]]}})");
  EXPECT_EQ(run("phi fix3.alg " + wrong_shape).status, 2);
  EXPECT_NE(diagnostics("phi fix3.alg " + wrong_shape).find("/arrows/a/0"), std::string::npos);

  const auto violates = write("violates.mod", R"({"dims": [1, 1, 1], "arrows": {"a": [[1]], "b": [[1]]}})");
  EXPECT_EQ(run("phi fix3.alg " + violates).status, 2);

  EXPECT_EQ(run("phi fix3.alg missing.mod").status, 2);
  EXPECT_EQ(run("phidim --kupisch 1,3").status, 2);
  EXPECT_EQ(run("phidim --kupisch 2,x").status, 2);
  EXPECT_EQ(run("phi fix3.alg").status, 2);
  EXPECT_EQ(run("frobnicate").status, 2);
}

TEST_F(InputErrors, UnknownLabelInRelation) {
  const auto p = write("unknown.alg",
                       R"({"prime": 3, "vertices": 1, "arrows": [{"from": 0, "to": 0, "label": "x"}],
                           "relations": [[{"coeff": 1, "path": ["x", "y"]}]], "length_bound": 3})");
  EXPECT_EQ(run("algebra check " + p).status, 2);
  EXPECT_NE(diagnostics("algebra check " + p).find("/relations/0/0/path/1"), std::string::npos);
}

}  // namespace
