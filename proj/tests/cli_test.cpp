/*
 * Copyright 2026 The balsplit Authors.
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

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "balsplit/csv.hpp"
#include "cli.hpp"
#include "gtest/gtest.h"

namespace balsplit::cli {
namespace {

namespace fs = std::filesystem;

struct Invocation {
  int code;
  std::string out;
  std::string err;
};

Invocation invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           (std::string("balsplit_cli_") + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(CliTest, SynthIsDeterministic) {
  const auto a = invoke({"synth", "--census", "A=800,B=1000,C=600", "--dim", "2", "--seed", "7", "--out", path("a.csv")});
  const auto b = invoke({"synth", "--census", "A=800,B=1000,C=600", "--dim", "2", "--seed", "7", "--out", path("b.csv")});
  ASSERT_EQ(a.code, kExitOk) << a.err;
  ASSERT_EQ(b.code, kExitOk) << b.err;
  const auto table = read_csv(path("a.csv"));
  EXPECT_EQ(table.rows.size(), 2400u);
  EXPECT_EQ(table.header, (std::vector<std::string>{"x0", "x1", "label"}));
  EXPECT_EQ(slurp(path("a.csv")), slurp(path("b.csv")));
}

TEST_F(CliTest, SynthRejectsSingleClassAndMalformedCensus) {
  EXPECT_EQ(invoke({"synth", "--census", "A=1", "--out", path("x.csv")}).code, kExitError);
  EXPECT_EQ(invoke({"synth", "--census", "A:1,B:2", "--out", path("x.csv")}).code, kExitError);
}

TEST_F(CliTest, SplitWritesPartitionsAndSummary) {
  ASSERT_EQ(invoke({"synth", "--census", "A=800,B=1000", "--seed", "1", "--out", path("data.csv")}).code, 0);
  const auto r = invoke({"split", path("data.csv"), "--strategy", "balanced", "--train-ratio", "0.7", "--seed", "42",
                         "--out", path("out")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("A\t630\t170"), std::string::npos) << r.out;
  const auto train = read_csv(path("out/train.csv"));
  const auto test = read_csv(path("out/test.csv"));
  EXPECT_EQ(train.rows.size(), 1260u);
  EXPECT_EQ(test.rows.size(), 540u);
  EXPECT_EQ(train.header, test.header);
}

TEST_F(CliTest, SplitIndicesOnly) {
  ASSERT_EQ(invoke({"synth", "--census", "A=30,B=50", "--out", path("data.csv")}).code, 0);
  const auto r = invoke({"split", path("data.csv"), "--strategy", "stratified", "--train-ratio", "0.5",
                         "--indices-only", "--out", path("idx")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::ifstream in(path("idx/split.json"));
  const auto j = nlohmann::json::parse(in);
  EXPECT_EQ(j.at("train_indices").size(), 40u);
  EXPECT_EQ(j.at("test_indices").size(), 40u);
  EXPECT_EQ(j.at("per_class_counts").at("A").at("train"), 15);
  EXPECT_FALSE(fs::exists(path("idx/train.csv")));
}

TEST_F(CliTest, SplitInfeasibleExitsTwoWithLimit) {
  ASSERT_EQ(invoke({"synth", "--census", "A=800,B=1000,C=600", "--out", path("multi.csv")}).code, 0);
  const auto r = invoke({"split", path("multi.csv"), "--strategy", "balanced", "--train-ratio", "0.9",
                         "--out", path("o")});
  EXPECT_EQ(r.code, kExitInfeasible);
  EXPECT_NE(r.err.find("0.75"), std::string::npos) << r.err;
  EXPECT_TRUE(r.out.empty());
}

TEST_F(CliTest, SplitValidationErrors) {
  ASSERT_EQ(invoke({"synth", "--census", "A=10,B=10", "--out", path("d.csv")}).code, 0);
  EXPECT_EQ(invoke({"split", path("d.csv"), "--train-ratio", "1.5", "--out", path("o")}).code, kExitError);
  EXPECT_EQ(invoke({"split", path("d.csv"), "--strategy", "kfold", "--train-ratio", "0.5"}).code, kExitError);
  EXPECT_EQ(invoke({"split", path("missing.csv"), "--train-ratio", "0.5"}).code, kExitError);
  EXPECT_EQ(invoke({"split", path("d.csv")}).code, kExitError);  // --train-ratio required
  EXPECT_EQ(invoke({}).code, kExitError);
  EXPECT_EQ(invoke({"frobnicate"}).code, kExitError);
}

TEST_F(CliTest, HelpExitsZero) {
  const auto r = invoke({"split", "--help"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("--train-ratio"), std::string::npos);
}

TEST_F(CliTest, LimitBinaryCensus) {
  ASSERT_EQ(invoke({"synth", "--census", "A=800,B=1000", "--out", path("bin.csv")}).code, 0);
  const auto r = invoke({"limit", path("bin.csv")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("8/9"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("0.889"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("minority class: A"), std::string::npos) << r.out;
}

TEST_F(CliTest, LimitCustomerSchemaCensus) {
  // Customer-shaped file: Segmentation column triggers the default schema.
  std::ofstream f(path("Train.csv"));
  f << "ID,Gender,Ever_Married,Age,Graduated,Profession,Work_Experience,Spending_Score,Family_Size,Var_1,"
       "Segmentation\n";
  const std::pair<const char*, int> census[] = {{"A", 1972}, {"B", 1858}, {"C", 1970}, {"D", 2268}};
  int id = 0;
  for (const auto& [segment, count] : census) {
    for (int i = 0; i < count; ++i, ++id) {
      f << id << ',' << (id % 2 ? "Male" : "Female") << ',' << (id % 3 ? "Yes" : "") << ',' << 20 + id % 50 << ','
        << (id % 5 ? "No" : "Yes") << ",Artist," << (id % 7 ? std::to_string(id % 4) : "") << ",Low,"
        << (id % 11 ? "3" : "") << ",Cat_" << id % 3 << ',' << segment << '\n';
    }
  }
  f.close();
  const auto r = invoke({"limit", path("Train.csv")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("samples: 8068"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("minority class: B (1858 samples, ratio 0.2303 ~ 0.23)"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("~ 0.92\n"), std::string::npos) << r.out;
}

TEST_F(CliTest, LimitSingleClassFails) {
  std::ofstream(path("one.csv")) << "x,label\n1,a\n2,a\n";
  EXPECT_EQ(invoke({"limit", path("one.csv")}).code, kExitError);
}

TEST_F(CliTest, BenchFlagsOneRatio) {
  const auto r = invoke({"bench", "--census", "A=80,B=120,C=60", "--strategies", "balanced", "--ratios", "0.6",
                         "--forest-trees", "3", "--seed-count", "2", "--out", path("bench")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("Balanced split"), std::string::npos) << r.out;
  EXPECT_EQ(r.out.find("Random split"), std::string::npos) << r.out;
  EXPECT_TRUE(fs::exists(path("bench/manifest.json")));
  EXPECT_TRUE(fs::exists(path("bench/plots/knn_f1.csv")));
}

TEST_F(CliTest, BenchConfigFile) {
  std::ofstream(path("run.toml")) << "# small grid\n"
                                     "[bench]\n"
                                     "census = \"A=50,B=70\"\n"
                                     "strategies = [\"random\", \"balanced\"]\n"
                                     "ratios = [0.5, 0.6]\n"
                                     "classifiers = [\"knn\"]\n"
                                     "seed-count = 2\n"
                                     "knn-k = 3\n"
                                     "out = \"" + path("cfg_out") + "\"\n";
  const auto r = invoke({"bench", "--config", path("run.toml")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::ifstream in(path("cfg_out/manifest.json"));
  const auto manifest = nlohmann::json::parse(in);
  EXPECT_EQ(manifest.at("rows"), 2 * 2 * 1 * 2);
  EXPECT_EQ(manifest.at("config").at("knn").at("k"), 3);
}

TEST_F(CliTest, BenchZeroSeedsFails) {
  std::ofstream(path("zero.toml")) << "[bench]\nseed-count = 0\n";
  EXPECT_EQ(invoke({"bench", "--config", path("zero.toml"), "--out", path("z")}).code, kExitError);
  EXPECT_EQ(invoke({"bench", "--classifiers", "svm", "--out", path("z")}).code, kExitError);
}

TEST_F(CliTest, BenchConfigUnknownKeyFails) {
  std::ofstream(path("typo.toml")) << "[bench]\nseed-cnt = 1\n";
  EXPECT_EQ(invoke({"bench", "--config", path("typo.toml"), "--out", path("t")}).code, kExitError);
}

}  // namespace
}  // namespace balsplit::cli
