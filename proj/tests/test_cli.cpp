#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "wshrink/io.hpp"

namespace fs = std::filesystem;
using namespace wshrink;

namespace {

struct Run {
  int code = -1;
  std::string err;
};

Run run_cli(const std::string& args, const fs::path& dir) {
  const auto err_path = dir / "stderr.txt";
  const std::string cmd = std::string(WSHRINK_CLI) + " " + args + " >" + (dir / "stdout.txt").string() + " 2>" +
                          err_path.string();
  const int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.err = read_file(err_path);
  return r;
}

double printed_lambda(const std::string& err) {
  const auto pos = err.find("lambda=");
  if (pos == std::string::npos) return NAN;
  return parse_double(err.substr(pos + 7, err.find('\n', pos) - pos - 7));
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("wshrink_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, ConstantInputIsReproduced) {
  std::vector<double> v(256, 0.25);
  write_column_csv(dir_ / "in.csv", v);
  const auto r = run_cli("denoise -i " + (dir_ / "in.csv").string() + " -o " + (dir_ / "out.csv").string(), dir_);
  ASSERT_EQ(r.code, 0) << r.err;
  const auto out = read_column_csv(dir_ / "out.csv");
  ASSERT_EQ(out.size(), v.size());
  for (double x : out) EXPECT_NEAR(x, 0.25, 1e-12);
}

TEST_F(Cli, LambdaGrowsWithDelta) {
  const auto in = (dir_ / "in.csv").string();
  write_column_csv(in, std::vector<double>(512, 0.0));
  double previous = 0.0;
  for (const char* delta : {"0", "0.5", "1", "3"}) {
    const auto r = run_cli("denoise -i " + in + " -o " + (dir_ / "out.csv").string() + " --delta " + delta, dir_);
    ASSERT_EQ(r.code, 0) << r.err;
    const double lambda = printed_lambda(r.err);
    EXPECT_GT(lambda, previous) << delta;
    previous = lambda;
  }
}

TEST_F(Cli, DenoiseMatchesGolden) {
  const auto in = fs::path(WSHRINK_TEST_DATA) / "cusp_uniform_256.csv";
  const auto golden = read_file(fs::path(WSHRINK_TEST_DATA) / "cusp_uniform_256_denoised.csv");
  for (int rep = 0; rep < 2; ++rep) {
    const auto r = run_cli("denoise -i " + in.string() + " -o " + (dir_ / "out.csv").string() +
                               " --alpha 0.5 --delta 1",
                           dir_);
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(read_file(dir_ / "out.csv"), golden);
  }
}

TEST_F(Cli, PaddingRequiresFlag) {
  const auto in = (dir_ / "in.csv").string();
  write_column_csv(in, std::vector<double>(300, 1.0));
  const auto out = (dir_ / "out.csv").string();
  EXPECT_EQ(run_cli("denoise -i " + in + " -o " + out, dir_).code, 1);
  EXPECT_FALSE(fs::exists(out));
  ASSERT_EQ(run_cli("denoise -i " + in + " -o " + out + " --n-pad truncate", dir_).code, 0);
  EXPECT_EQ(read_column_csv(out).size(), 256u);
  ASSERT_EQ(run_cli("denoise -i " + in + " -o " + out + " --n-pad zero", dir_).code, 0);
  EXPECT_EQ(read_column_csv(out).size(), 300u);
}

TEST_F(Cli, UsageErrors) {
  const auto in = (dir_ / "in.csv").string();
  write_column_csv(in, std::vector<double>(64, 1.0));
  const auto out = (dir_ / "out.csv").string();
  EXPECT_EQ(run_cli("denoise -i " + in + " -o " + out + " --bogus", dir_).code, 1);
  EXPECT_EQ(run_cli("denoise -i " + (dir_ / "missing.csv").string() + " -o " + out, dir_).code, 1);
  EXPECT_EQ(run_cli("denoise -i " + in + " -o " + out + " --alpha -1", dir_).code, 1);
  EXPECT_EQ(run_cli("denoise -i " + in + " -o " + out + " --alpha 2", dir_).code, 1);
  EXPECT_EQ(run_cli("", dir_).code, 1);
  EXPECT_FALSE(fs::exists(out));
}

TEST_F(Cli, EmptyPlanWritesHeaderOnly) {
  const auto plan = dir_ / "plan.json";
  atomic_write(plan, R"({"signal": "cusp", "alpha": 1, "n": [256, 512], "trials": 0})");
  const auto reports = dir_ / "r.jsonl";
  const auto summary = dir_ / "s.csv";
  const auto r = run_cli("simulate " + plan.string() + " --seed 5 --reports " + reports.string() + " --summary " +
                             summary.string(),
                         dir_);
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(read_file(reports), "");
  EXPECT_EQ(read_file(summary), std::string(kSummaryHeader) + "\n");
}

TEST_F(Cli, SimulateIsDeterministicAndFeedsRates) {
  const auto plan = dir_ / "plan.json";
  atomic_write(plan, R"({"signal": "weierstrass", "alpha": 0.5, "M": 1,
                         "noise": {"family": "rademacher", "b": 1},
                         "n": [256, 512, 1024, 2048], "deltas": [1], "trials": 4})");
  std::string first;
  for (const char* workers : {"1", "3"}) {
    const auto r = run_cli("simulate " + plan.string() + " --seed 17 --workers " + workers + " --reports " +
                               (dir_ / "r.jsonl").string() + " --summary " + (dir_ / "s.csv").string(),
                           dir_);
    ASSERT_EQ(r.code, 0) << r.err;
    const auto text = read_file(dir_ / "r.jsonl");
    if (first.empty()) {
      first = text;
    } else {
      EXPECT_EQ(text, first);
    }
  }
  std::size_t lines = 0;
  for (char c : first) lines += c == '\n';
  EXPECT_EQ(lines, 16u);

  const auto r = run_cli("rates " + (dir_ / "s.csv").string() + " --alpha 0.5 -o " + (dir_ / "rates.csv").string(),
                         dir_);
  ASSERT_EQ(r.code, 0) << r.err;
  const auto table = read_file(dir_ / "rates.csv");
  EXPECT_EQ(table.rfind("alpha,delta,exponent,target,intercept,residual,points\n", 0), 0u);
  EXPECT_NE(table.find(",0.5,"), std::string::npos);
}

TEST_F(Cli, MalformedPlans) {
  const auto plan = dir_ / "plan.json";
  const std::string tail = " --seed 1 --reports " + (dir_ / "r.jsonl").string() + " --summary " +
                           (dir_ / "s.csv").string();
  for (const char* text : {R"({"signal": "cusp", "alpha": 1, "n": [256]})",
                           R"({"signal": "cusp", "alpha": 1, "n": [256], "trials": 1, "extra": 0})",
                           R"({"signal": "cusp", "alpha": 1, "n": [300], "trials": 1})", R"({"signal": )"}) {
    atomic_write(plan, text);
    EXPECT_EQ(run_cli("simulate " + plan.string() + tail, dir_).code, 1) << text;
  }
  atomic_write(plan, R"({"signal": "cusp", "alpha": 1, "n": [256], "trials": 1})");
  EXPECT_EQ(run_cli("simulate " + plan.string() + " --reports x --summary y", dir_).code, 1);
}

TEST_F(Cli, VerifyPasses) {
  const auto r = run_cli("verify", dir_);
  EXPECT_EQ(r.code, 0) << read_file(dir_ / "stdout.txt");
}
