#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "test_util.hpp"

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " \"" + std::string(BDIFF_CLI_PATH) + "\" " + args + " 2>/dev/null";
  RunResult r;
  FILE* p = popen(cmd.c_str(), "r");
  if (p == nullptr) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const std::string& name) { return std::string(BDIFF_TEST_DATA) + "/" + name; }

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("bdiff_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& content) {
    const fs::path p = dir_ / name;
    std::ofstream(p, std::ios::binary) << content;
    return p.string();
  }

  fs::path dir_;
};

TEST_F(CliTest, Version) {
  const auto r = run("version");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("bdiff ", 0), 0u);
}

TEST_F(CliTest, DiffJson) {
  const auto r = run("diff --format json " + data("move_copy_left.py") + " " + data("move_copy_right.py"));
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_TRUE(j.is_array());
  int bm = 0, bc = 0;
  for (const auto& a : j) {
    bm += a["type"] == "BM";
    bc += a["type"] == "BC";
  }
  EXPECT_EQ(bm, 1);
  EXPECT_EQ(bc, 1);
}

TEST_F(CliTest, DiffTextAndHtml) {
  const auto text = run("diff --format text " + data("indent_shift_left.py") + " " + data("indent_shift_right.py"));
  ASSERT_EQ(text.code, 0);
  EXPECT_NE(text.out.find("BM 4-5 -> 9-10 indent +4"), std::string::npos) << text.out;

  const std::string out = (dir_ / "page.html").string();
  const auto html = run("diff --format html --out " + out + " " + data("indent_shift_left.py") + " " +
                        data("indent_shift_right.py"));
  ASSERT_EQ(html.code, 0);
  EXPECT_TRUE(html.out.empty());
  const std::string page = testutil::read_file(out);
  EXPECT_EQ(page.rfind("<!DOCTYPE html>", 0), 0u);
}

TEST_F(CliTest, ExitCode) {
  const std::string a = write("a.txt", "x\ny\n"), b = write("b.txt", "x\nz\n");
  EXPECT_EQ(run("diff --exit-code " + a + " " + b).code, 1);
  EXPECT_EQ(run("diff --exit-code " + a + " " + a).code, 0);
  EXPECT_EQ(run("diff " + a + " " + b).code, 0);
}

TEST_F(CliTest, UsageErrors) {
  const std::string a = write("a.txt", "x\n");
  EXPECT_EQ(run("diff --bogus " + a + " " + a).code, 2);
  EXPECT_EQ(run("diff " + a).code, 2);
  EXPECT_EQ(run("diff " + a + " " + (dir_ / "missing").string()).code, 2);
  EXPECT_EQ(run("diff --format xml " + a + " " + a).code, 2);
  EXPECT_EQ(run("diff --min-bm 1 " + a + " " + a).code, 2);
  EXPECT_EQ(run("").code, 2);
  const std::string bin = write("b.bin", std::string("ab\0cd\n", 6));
  EXPECT_EQ(run("diff " + a + " " + bin).code, 2);
}

TEST_F(CliTest, ConfigFileAndFlagPrecedence) {
  const std::string left = data("move_copy_left.py"), right = data("move_copy_right.py");
  const std::string cfg = write("bdiff.conf", "# no blocks\ndisable = BM,BC\n");
  const std::string env = "BDIFF_CONFIG=" + cfg;
  const auto no_blocks = run("diff --format json " + left + " " + right, env);
  ASSERT_EQ(no_blocks.code, 0);
  EXPECT_EQ(no_blocks.out.find("\"BM\""), std::string::npos);
  EXPECT_EQ(no_blocks.out.find("\"BC\""), std::string::npos);

  const auto flag_wins = run("diff --format json --disable LU " + left + " " + right, env);
  ASSERT_EQ(flag_wins.code, 0);
  EXPECT_NE(flag_wins.out.find("\"BM\""), std::string::npos);

  const std::string bad = write("bad.conf", "tab-size = lots\n");
  EXPECT_EQ(run("diff " + left + " " + right, "BDIFF_CONFIG=" + bad).code, 2);
  EXPECT_EQ(run("diff " + left + " " + right, "BDIFF_CONFIG=" + (dir_ / "none").string()).code, 2);
}

TEST_F(CliTest, EvalWritesCases) {
  const fs::path corpus = dir_ / "corpus";
  fs::create_directories(corpus);
  fs::copy_file(data("move_copy_left.py"), corpus / "one.py");
  fs::copy_file(data("indent_shift_left.py"), corpus / "two.py");
  const fs::path out = dir_ / "out";
  const auto r = run("eval " + corpus.string() + " --cases 5 --seed 3 --format json --out " +
                     out.string());
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["total"]["cases"], 5);
  EXPECT_EQ(j["total"]["unsoundCases"], 0);
  for (const char* f : {"left", "right", "truth.json", "computed.json", "source.txt"}) {
    EXPECT_TRUE(fs::exists(out / "case_00001" / f)) << f;
  }
  EXPECT_TRUE(fs::exists(out / "case_00005"));
  EXPECT_TRUE(fs::exists(out / "report.json"));
  EXPECT_TRUE(fs::exists(out / "report.txt"));

  const auto again = run("eval " + corpus.string() + " --cases 5 --seed 3 --format json");
  EXPECT_EQ(again.out, r.out);
}

TEST_F(CliTest, EvalEmptyCorpus) {
  const fs::path corpus = dir_ / "empty";
  fs::create_directories(corpus);
  EXPECT_EQ(run("eval " + corpus.string()).code, 2);
  EXPECT_EQ(run("eval " + (dir_ / "missing").string()).code, 2);
}

}  // namespace
