/*
 * Copyright 2026 The csmoute Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "csmoute/csv.hpp"
#include "csmoute/detail/text.hpp"
#include "csmoute/io.hpp"
#include "support/support.hpp"

namespace csmoute {
namespace {

namespace fs = std::filesystem;

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / ("csmoute_cli_" + std::to_string(::getpid())) / info->name();
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }

  void TearDown() override { fs::remove_all(dir_.parent_path()); }

  /// Runs the CLI with `args`; stdout and stderr go to files in the work dir.
  int run(const std::string& args) {
    const std::string cmd = std::string("\"") + CSMOUTE_CLI_PATH + "\" " + args + " > \"" + (dir_ / "stdout").string() +
                            "\" 2> \"" + (dir_ / "stderr").string() + "\"";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  std::string out() const { return read_file(dir_ / "stdout"); }
  std::string err() const { return read_file(dir_ / "stderr"); }
  fs::path path(const std::string& name) const { return dir_ / name; }

  void write(const std::string& name, const std::string& text) const { std::ofstream(dir_ / name) << text; }

  /// 100/40 two-feature CSV.
  std::string blobs_csv(const std::string& name, std::size_t maj = 100, std::size_t min = 40) const {
    Rng rng(99);
    auto ds = testing::two_blobs(maj, min, 2, rng);
    ds.minority_name = "pos";
    ds.majority_name = "neg";
    write(name, to_csv(ds));
    return (dir_ / name).string();
  }

  fs::path dir_;
};

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  for (auto l : detail::split_lines(text)) {
    if (!detail::trim(l).empty()) out.emplace_back(l);
  }
  return out;
}

std::size_t count_suffix(const std::vector<std::string>& lines, const std::string& suffix) {
  std::size_t n = 0;
  for (const auto& l : lines) n += l.size() >= suffix.size() && l.compare(l.size() - suffix.size(), suffix.size(), suffix) == 0;
  return n;
}

TEST_F(Cli, ResampleBalances) {
  const auto in = blobs_csv("in.csv");
  ASSERT_EQ(run("resample " + in + " --method csmoute --ratio 0.5 --k-smote 5 --k-smute 5 --seed 7 -o " +
                path("out.csv").string()),
            0)
      << err();
  const auto lines = lines_of(read_file(path("out.csv")));
  ASSERT_EQ(lines.size(), 141u);
  EXPECT_EQ(count_suffix(lines, ",pos"), 70u);
  EXPECT_EQ(count_suffix(lines, ",neg"), 70u);
  EXPECT_TRUE(fs::exists(path("out.csv.lineage.json")));
}

TEST_F(Cli, SmoteEndpointKeepsMajority) {
  const auto in = blobs_csv("in.csv");
  ASSERT_EQ(run("resample " + in + " --ratio 1.0 --seed 3 -o " + path("out.csv").string()), 0) << err();
  std::vector<std::string> before, after;
  for (const auto& l : lines_of(read_file(in))) {
    if (l.ends_with(",neg")) before.push_back(l);
  }
  for (const auto& l : lines_of(read_file(path("out.csv")))) {
    if (l.ends_with(",neg")) after.push_back(l);
  }
  EXPECT_EQ(before, after);
}

TEST_F(Cli, ResampleIsReproducible) {
  const auto in = blobs_csv("in.csv");
  ASSERT_EQ(run("resample " + in + " --ratio 0.3 --seed 11 -o " + path("a.csv").string()), 0);
  ASSERT_EQ(run("resample " + in + " --ratio 0.3 --seed 11 -o " + path("b.csv").string()), 0);
  EXPECT_EQ(read_file(path("a.csv")), read_file(path("b.csv")));
  EXPECT_EQ(read_file(path("a.csv.lineage.json")), read_file(path("b.csv.lineage.json")));
}

TEST_F(Cli, MissingInputExitsTwo) {
  EXPECT_EQ(run("resample " + path("nope.csv").string() + " --seed 1 -o " + path("out.csv").string()), 2);
  EXPECT_FALSE(fs::exists(path("out.csv")));
  EXPECT_NE(err().find("nope.csv"), std::string::npos);
}

TEST_F(Cli, UsageErrorsExitThree) {
  const auto in = blobs_csv("in.csv");
  EXPECT_EQ(run("resample " + in), 3);
  EXPECT_EQ(run("resample " + in + " --seed 1 --method nearmiss"), 3);
  EXPECT_EQ(run("resample " + in + " --seed 1 --ratio 2"), 3);
  EXPECT_EQ(run("frobnicate"), 3);
}

TEST_F(Cli, CategorizeGlass1) {
  ASSERT_EQ(run("categorize " + testing::keel_file("glass1").string()), 0) << err();
  const auto lines = lines_of(out());
  ASSERT_EQ(lines.size(), 2u);
  EXPECT_EQ(lines[0], "name,ir,samples,features,safe_pct,borderline_pct,rare_pct,outlier_pct");
  EXPECT_TRUE(lines[1].starts_with("glass1,1.82,214,9,")) << lines[1];
}

TEST_F(Cli, CategorizeKeepsInputOrder) {
  ASSERT_EQ(run("categorize " + testing::keel_file("haberman").string() + " " + testing::keel_file("glass1").string()),
            0);
  const auto lines = lines_of(out());
  ASSERT_EQ(lines.size(), 3u);
  EXPECT_TRUE(lines[1].starts_with("haberman,"));
  EXPECT_TRUE(lines[2].starts_with("glass1,"));
}

TEST_F(Cli, CategorizeTooSmallExitsThree) {
  write("small.csv", "x,Class\n1,a\n2,a\n3,b\n4,b\n5,b\n");
  EXPECT_EQ(run("categorize " + path("small.csv").string()), 3);
  EXPECT_NE(err().find("at least 6"), std::string::npos);
}

class CliBenchmark : public Cli {
 protected:
  std::string config(const std::string& datasets, const std::string& extra = "") {
    const std::string text = "[experiment]\nseed = 5\ndatasets = " + datasets +
                             "\nmethods = none, rus, smute\nclassifiers = lr\n"
                             "[grid]\nsmute_k = 1, 3\n" + extra;
    write("bench.ini", text);
    return path("bench.ini").string();
  }
};

TEST_F(CliBenchmark, RunsAndReruns) {
  blobs_csv("a.csv", 40, 12);
  blobs_csv("b.csv", 30, 9);
  blobs_csv("c.csv", 50, 15);
  blobs_csv("d.csv", 35, 10);
  blobs_csv("e.csv", 45, 14);
  const auto cfg = config("a.csv, b.csv, c.csv, d.csv, e.csv");
  ASSERT_EQ(run("benchmark -q -c " + cfg + " -o " + path("r1").string() + " -j 1"), 0) << err();
  ASSERT_EQ(run("benchmark -q -c " + cfg + " -o " + path("r2").string() + " -j 3"), 0) << err();
  for (const char* f : {"folds.csv", "averages.csv", "averages.json", "folds.json", "wilcoxon.csv", "friedman.csv",
                        "ranks.csv", "taxonomy.csv", "manifest.json"}) {
    EXPECT_EQ(read_file(path("r1") / f), read_file(path("r2") / f)) << f;
  }
  // 5 datasets x 3 methods x 1 classifier x 3 metrics x 10 folds.
  EXPECT_EQ(lines_of(read_file(path("r1") / "folds.csv")).size(), 1u + 5 * 3 * 3 * 10);
  EXPECT_EQ(lines_of(read_file(path("r1") / "averages.csv")).size(), 1u + 5 * 3 * 3);

  ASSERT_EQ(run("compare " + (path("r1") / "averages.csv").string() + " --taxonomy " +
                (path("r1") / "taxonomy.csv").string() + " -o " + path("cmp").string()),
            0)
      << err();
  EXPECT_EQ(read_file(path("cmp") / "wilcoxon.csv"), read_file(path("r1") / "wilcoxon.csv"));
}

TEST_F(CliBenchmark, FailedCellExitsFour) {
  blobs_csv("a.csv", 40, 12);
  blobs_csv("tiny.csv", 20, 2);
  const auto cfg = config("a.csv, tiny.csv");
  std::string text = read_file(cfg);
  text.replace(text.find("none, rus, smute"), 16, "none, smote");
  write("bench.ini", text);
  EXPECT_EQ(run("benchmark -q -c " + cfg + " -o " + path("r").string()), 4);
  const auto failures = lines_of(read_file(path("r") / "failures.csv"));
  ASSERT_EQ(failures.size(), 2u);
  EXPECT_TRUE(failures[1].starts_with("tiny,smote,lr,")) << failures[1];
  EXPECT_TRUE(fs::exists(path("r") / "averages.csv"));
}

TEST_F(CliBenchmark, ConfigErrors) {
  blobs_csv("a.csv", 40, 12);
  write("bad.ini", "[experiment]\nseed = 1\ndatasets = a.csv\nspeed = fast\n");
  EXPECT_EQ(run("benchmark -c " + path("bad.ini").string()), 3);
  write("noseed.ini", "[experiment]\ndatasets = a.csv\n");
  EXPECT_EQ(run("benchmark -c " + path("noseed.ini").string()), 3);
  EXPECT_EQ(run("benchmark -c " + path("absent.ini").string()), 2);
  write("nodata.ini", "[experiment]\nseed = 1\ndatasets = missing.csv\n");
  EXPECT_EQ(run("benchmark -c " + path("nodata.ini").string()), 2);
}

TEST_F(Cli, SweepSingleDataset) {
  const auto in = blobs_csv("in.csv", 40, 12);
  ASSERT_EQ(run("sweep " + in + " --seed 2 --k-smote 3 --k-smute 3"), 0) << err();
  const auto lines = lines_of(out());
  ASSERT_EQ(lines.size(), 34u);
  EXPECT_EQ(lines[0], "classifier,ratio,metric,mean,ci_low,ci_high,n_datasets");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = detail::split_trimmed(lines[i], ',');
    EXPECT_EQ(f[3], f[4]);
    EXPECT_EQ(f[3], f[5]);
  }
}

}  // namespace
}  // namespace csmoute
