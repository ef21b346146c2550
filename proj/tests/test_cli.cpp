#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include <gtest/gtest.h>

namespace {

const std::string kCli = FOGMATCH_CLI_PATH;
const std::filesystem::path kData = FOGMATCH_TEST_DATA_DIR;

int run(const std::string& args) {
  const int status = std::system((kCli + " " + args + " >/dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::filesystem::path scratch(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("fogmatch_cli_" + name);
}

TEST(Cli, Demo) { EXPECT_EQ(run("demo-counterexample"), 0); }

TEST(Cli, RunWritesCsvAndTraces) {
  const auto out = scratch("golden.csv");
  ASSERT_EQ(run("run --config " + (kData / "golden.cfg").string() + " --out " + out.string() + " --trace-stages"), 0);
  EXPECT_TRUE(std::filesystem::exists(out));
  EXPECT_TRUE(std::filesystem::exists(out.string() + ".stages.jsonl"));
  std::ifstream a(out), b(kData / "golden_seed42.csv");
  std::stringstream sa, sb;
  sa << a.rdbuf();
  sb << b.rdbuf();
  EXPECT_EQ(sa.str(), sb.str());
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("run --config " + (kData / "bad.cfg").string() + " --out " + scratch("bad.csv").string()), 1);
  EXPECT_EQ(run("run --config /nonexistent.cfg --out " + scratch("x.csv").string()), 1);
  EXPECT_EQ(run("run --config " + (kData / "infeasible.cfg").string() + " --out " + scratch("inf.csv").string()), 2);
  EXPECT_EQ(run("run --config " + (kData / "golden.cfg").string() + " --out /nonexistent-dir/out.csv"), 3);
  EXPECT_EQ(run("verify --config " + (kData / "golden.cfg").string()), 0);
  EXPECT_NE(run("no-such-command"), 0);
}

}  // namespace
