/* Copyright 2026 The Memotion Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
#include "memotion/cli.h"

#include <unistd.h>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "gtest/gtest.h"
#include "memotion/dataset.h"
#include "memotion/metrics.h"
#include "memotion/models.h"
#include "nlohmann/json.hpp"

namespace memotion {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun Cli(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = RunCli(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

// One synthetic corpus per test binary, written once.
class CliTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = fs::path(::testing::TempDir()) / ("memotion_cli_" + std::to_string(getpid()));
    fs::create_directories(dir_);
    CliRun r = Cli({"synth", "--out-dir", dir_.string(), "--records", "60", "--seed", "2020"});
    ASSERT_EQ(r.code, 0) << r.err;
  }
  static void TearDownTestSuite() { fs::remove_all(dir_); }

  static std::string P(const std::string& name) { return (dir_ / name).string(); }
  static std::string Corpus() { return P("corpus.csv"); }
  static std::string Images() { return P("images.memb"); }

  static CliRun TrainHumour(const std::string& out, const std::string& epochs = "4") {
    return Cli({"train", "--corpus", Corpus(), "--image-embeddings", Images(), "--task", "B-humour", "--arch",
                "mnn1", "--epochs", epochs, "--seed", "3", "--out", out});
  }

  static fs::path dir_;
};

fs::path CliTest::dir_;

TEST_F(CliTest, TrainWritesLoadableCheckpointQuickly) {
  const auto start = std::chrono::steady_clock::now();
  CliRun r = TrainHumour(P("quick.mmck"));
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_LT(seconds, 60.0);
  TrainedModel m = LoadCheckpoint(P("quick.mmck"));
  EXPECT_EQ(m.model.config().head, Head::kBHumour);
  EXPECT_EQ(m.model.config().architecture, Architecture::kMnn1);
  json report = json::parse(Slurp(P("quick.mmck.report.json")));
  EXPECT_EQ(report["epochs_run"], 4);
  EXPECT_EQ(report["dev_ids"].size(), 9u);
  json manifest = json::parse(Slurp(P("quick.mmck.manifest.json")));
  EXPECT_EQ(manifest["tool_version"], kToolVersion);
  EXPECT_TRUE(manifest["inputs"].contains("corpus"));
  EXPECT_TRUE(manifest["inputs"].contains("image_embeddings"));
}

TEST_F(CliTest, ManifestRerunIsByteIdentical) {
  ASSERT_EQ(TrainHumour(P("first.mmck")).code, 0);
  CliRun r = Cli({"train", "--manifest", P("first.mmck.manifest.json"), "--out", P("second.mmck")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(Slurp(P("first.mmck")), Slurp(P("second.mmck")));
  json a = json::parse(Slurp(P("first.mmck.manifest.json")));
  json b = json::parse(Slurp(P("second.mmck.manifest.json")));
  EXPECT_EQ(a["artifacts"]["checkpoint_fnv1a64"], b["artifacts"]["checkpoint_fnv1a64"]);
  EXPECT_FALSE(fs::exists(P("second.mmck.replay.cfg")));
}

TEST_F(CliTest, ImageModelWithoutImagesIsMissingInput) {
  CliRun r = Cli({"train", "--corpus", Corpus(), "--arch", "mnn1", "--epochs", "1", "--out", P("x.mmck")});
  EXPECT_EQ(r.code, kExitMissingInput);
  EXPECT_FALSE(r.err.empty());
}

TEST_F(CliTest, TextModelTrainsWithoutImages) {
  CliRun r = Cli({"train", "--corpus", Corpus(), "--arch", "bilstm", "--epochs", "1", "--out", P("text.mmck")});
  EXPECT_EQ(r.code, 0) << r.err;
}

TEST_F(CliTest, PredictReproducesDevScore) {
  ASSERT_EQ(TrainHumour(P("dev.mmck"), "6").code, 0);
  json report = json::parse(Slurp(P("dev.mmck.report.json")));
  const double best = report["dev_macro_f1"][report["best_epoch"].get<size_t>() - 1];

  // Gold and prediction files restricted to the dev ids.
  std::set<std::string> dev;
  for (const auto& id : report["dev_ids"]) dev.insert(id.get<std::string>());
  std::ifstream in(Corpus());
  std::ofstream gold(P("dev_gold.csv"));
  std::string line;
  std::getline(in, line);
  gold << line << "\n";
  size_t kept = 0;
  while (std::getline(in, line)) {
    if (dev.count(line.substr(0, line.find(',')))) {
      gold << line << "\n";
      ++kept;
    }
  }
  gold.close();
  ASSERT_EQ(kept, dev.size());

  CliRun p = Cli({"predict", "--checkpoint", P("dev.mmck"), "--corpus", P("dev_gold.csv"), "--image-embeddings",
               Images(), "--out", P("dev_pred.csv")});
  ASSERT_EQ(p.code, 0) << p.err;
  CliRun e = Cli({"evaluate", "--gold", P("dev_gold.csv"), "--pred", P("dev_pred.csv"), "--task", "B-humour", "--json"});
  ASSERT_EQ(e.code, 0) << e.err;
  EXPECT_DOUBLE_EQ(json::parse(e.out)["heads"]["B-humour"]["macro_f1"].get<double>(), best);
}

TEST_F(CliTest, PredictWritesOneRowPerRecordEvenUnlabeled) {
  ASSERT_EQ(TrainHumour(P("rows.mmck"), "1").code, 0);
  std::ofstream(P("unlabeled.csv")) << "id,image,description\nsyn0001,syn0001.jpg,hello sunny\nzz,zz.jpg,no image\n";
  CliRun p = Cli({"predict", "--checkpoint", P("rows.mmck"), "--corpus", P("unlabeled.csv"), "--image-embeddings",
               Images(), "--out", P("rows.csv")});
  ASSERT_EQ(p.code, 0) << p.err;
  std::istringstream rows(Slurp(P("rows.csv")));
  std::string line;
  size_t n = 0;
  std::getline(rows, line);
  EXPECT_EQ(line, "id,sentiment,humorous,sarcastic,offensive,motivational,humour_scale,sarcasm_scale,offense_scale");
  while (std::getline(rows, line)) {
    ++n;
    EXPECT_TRUE(line.starts_with("syn0001,,0,") || line.starts_with("syn0001,,1,") ||
                line.starts_with("zz,,0,") || line.starts_with("zz,,1,"))
        << line;
  }
  EXPECT_EQ(n, 2u);

  CliRun full = Cli({"predict", "--checkpoint", P("rows.mmck"), "--corpus", Corpus(), "--image-embeddings", Images(),
                  "--out", P("full.csv")});
  ASSERT_EQ(full.code, 0);
  std::istringstream all(Slurp(P("full.csv")));
  n = 0;
  while (std::getline(all, line)) ++n;
  EXPECT_EQ(n, 61u);
}

TEST_F(CliTest, EvaluateGoldAgainstItself) {
  for (const char* task : {"A", "B", "C"}) {
    CliRun e = Cli({"evaluate", "--gold", Corpus(), "--pred", Corpus(), "--task", task, "--json"});
    ASSERT_EQ(e.code, 0) << e.err;
    for (const auto& [head, score] : json::parse(e.out)["heads"].items()) {
      EXPECT_EQ(score["macro_f1"].get<double>(), 1.0) << head;
    }
  }
}

TEST_F(CliTest, EvaluateLengthMismatchFails) {
  std::ofstream(P("short.csv")) << "id,sentiment\nsyn0001,positive\n";
  CliRun e = Cli({"evaluate", "--gold", Corpus(), "--pred", P("short.csv"), "--task", "A"});
  EXPECT_EQ(e.code, kExitSchema);
  EXPECT_NE(e.err.find("LengthMismatch"), std::string::npos) << e.err;
}

TEST_F(CliTest, StatsJsonCountsEveryRecord) {
  CliRun r = Cli({"stats", "--corpus", Corpus(), "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  json j = json::parse(r.out);
  size_t total = 0;
  for (const auto& [cls, count] : j["heads"]["A"].items()) total += count.get<size_t>();
  EXPECT_EQ(total, 60u);
}

TEST_F(CliTest, BuildVocabListsTrainingWords) {
  ASSERT_EQ(Cli({"build-vocab", "--corpus", Corpus(), "--out", P("vocab.txt")}).code, 0);
  const std::string vocab = Slurp(P("vocab.txt"));
  EXPECT_NE(vocab.find("sunny\n"), std::string::npos);
}

TEST_F(CliTest, GridSearchSmallGrid) {
  std::ofstream(P("grid.cfg")) << "grid_lstm_layers = 1\ngrid_epochs = 1,2\ngrid_learning_rates = 0.001\n";
  CliRun r = Cli({"gridsearch", "--corpus", Corpus(), "--image-embeddings", Images(), "--config", P("grid.cfg"),
               "--threads", "2", "--out", P("grid.mmck")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(P("grid.mmck")));
}

TEST(CliNormalize, GoldenLines) {
  CliRun r = Cli({"normalize"}, "I can't believe it!!! http://x.co/a\nSooooo GOOOD #win\n");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "i can not believe it\nso god win\n");
}

TEST(CliExitCodes, Arguments) {
  EXPECT_EQ(Cli({}).code, kExitBadArgs);
  EXPECT_EQ(Cli({"bogus"}).code, kExitBadArgs);
  EXPECT_EQ(Cli({"stats"}).code, kExitBadArgs);
  EXPECT_EQ(Cli({"stats", "--corpus", "/nonexistent/corpus.csv"}).code, kExitMissingInput);
  EXPECT_EQ(Cli({"--version"}).code, kExitOk);
}

TEST(CliExitCodes, Mapping) {
  EXPECT_EQ(ExitCodeFor(ErrorCode::kConfigError), kExitBadArgs);
  EXPECT_EQ(ExitCodeFor(ErrorCode::kMissingModality), kExitMissingInput);
  EXPECT_EQ(ExitCodeFor(ErrorCode::kBadMagic), kExitSchema);
  EXPECT_EQ(ExitCodeFor(ErrorCode::kNonFiniteLoss), kExitNumeric);
}

TEST(CliConfig, UnknownKeyIsRejected) {
  const fs::path dir = fs::path(::testing::TempDir()) / ("memotion_cfg_" + std::to_string(getpid()));
  fs::create_directories(dir);
  ASSERT_EQ(Cli({"synth", "--out-dir", dir.string(), "--records", "20"}).code, 0);
  std::ofstream((dir / "bad.cfg").string()) << "epochs = 1\nlearnign_rate = 0.1\n";
  CliRun r = Cli({"train", "--corpus", (dir / "corpus.csv").string(), "--arch", "bilstm", "--config",
               (dir / "bad.cfg").string(), "--out", (dir / "m.mmck").string()});
  EXPECT_EQ(r.code, kExitBadArgs);
  EXPECT_NE(r.err.find("learnign_rate"), std::string::npos) << r.err;
  fs::remove_all(dir);
}

}  // namespace
}  // namespace memotion
