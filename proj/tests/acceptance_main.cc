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
// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gradient_suite.h"
#include "memotion/cli.h"
#include "memotion/dataset.h"
#include "memotion/error.h"
#include "memotion/metrics.h"
#include "memotion/models.h"
#include "memotion/synthetic.h"
#include "memotion/textnorm.h"
#include "memotion/training.h"
#include "metric_fixture.h"

namespace memotion {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double Seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string Fmt(const char* format, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), format, args...);
  return buf;
}

Outcome GradientSuite() {
  const auto start = std::chrono::steady_clock::now();
  std::vector<testing::SuiteEntry> entries = testing::OpGradientSuite();
  for (auto& e : testing::ModelGradientSuite()) entries.push_back(std::move(e));
  const double elapsed = Seconds(start);
  double worst = 0;
  std::string worst_name, failures;
  size_t checked = 0;
  for (const auto& e : entries) {
    checked += e.result.checked;
    if (e.result.max_rel_error >= worst) {
      worst = e.result.max_rel_error;
      worst_name = e.name + "/" + e.result.worst;
    }
    if (!(e.result.max_rel_error < 1e-4) || e.result.checked == 0) failures += " " + e.name;
  }
  Outcome o;
  o.pass = failures.empty() && elapsed < 60;
  o.detail = Fmt("%zu checks (%zu ops+architectures), max rel err %.2e at %s, %.1f s", checked, entries.size(),
                 worst, worst_name.c_str(), elapsed);
  if (!failures.empty()) o.detail += "; failing:" + failures;
  return o;
}

Outcome NormalizationGoldens() {
  const ContractionDict& dict = ContractionDict::Builtin();
  struct Golden {
    std::string name;
    std::string got;
    std::string want;
  };
  const std::vector<Golden> goldens = {
      {"url", JoinTokens(Normalize("grumpy cat GrumpyCatPics.com", dict)), "grumpy cat"},
      {"hashtag", SplitHashtag("#10YearChallenge"), "10 Year Challenge"},
      {"gng", JoinTokens(ExpandContractions({"gng"}, dict)), "going"},
      {"ASAP", JoinTokens(ExpandContractions({"ASAP"}, dict)), "as soon as possible"},
      {"Nooooo", CollapseElongation("Nooooo"), "No"},
      {"suuuppperrr", CollapseElongation("suuuppperrr"), "super"},
  };
  Outcome o{true, ""};
  for (const auto& g : goldens) {
    if (g.got != g.want) {
      o.pass = false;
      o.detail += g.name + " gave '" + g.got + "' ";
    }
  }
  if (o.pass) o.detail = Fmt("%zu/%zu transformations exact", goldens.size(), goldens.size());
  return o;
}

double BruteMacro(const std::vector<int>& gold, const std::vector<int>& pred, int m) {
  double sum = 0;
  for (int c = 0; c < m; ++c) {
    double tp = 0, fp = 0, fn = 0;
    for (size_t i = 0; i < gold.size(); ++i) {
      tp += gold[i] == c && pred[i] == c;
      fp += gold[i] != c && pred[i] == c;
      fn += gold[i] == c && pred[i] != c;
    }
    const double p = tp + fp > 0 ? tp / (tp + fp) : 0;
    const double r = tp + fn > 0 ? tp / (tp + fn) : 0;
    sum += p + r > 0 ? 2 * p * r / (p + r) : 0;
  }
  return sum / m;
}

double BruteMicro(const std::vector<int>& gold, const std::vector<int>& pred) {
  if (gold.empty()) return 0;
  double hits = 0;
  for (size_t i = 0; i < gold.size(); ++i) hits += gold[i] == pred[i];
  return hits / static_cast<double>(gold.size());
}

Outcome MetricOracle() {
  double worst = 0;
  size_t cases = 0, micro_not_accuracy = 0;
  auto check = [&](const std::vector<int>& gold, const std::vector<int>& pred, size_t m, double macro,
                   double micro) {
    ConfusionMatrix cm = Confusion(gold, pred, m);
    worst = std::max({worst, std::abs(MacroF1(cm) - macro), std::abs(MicroF1(cm) - micro)});
    micro_not_accuracy += MicroF1(cm) != Accuracy(cm);
    ++cases;
  };
  Rng rng(4242);
  for (int i = 0; i < 1000; ++i) {
    const size_t m = 1 + rng.Below(4), n = rng.Below(21);
    std::vector<int> gold(n), pred(n);
    for (size_t k = 0; k < n; ++k) {
      gold[k] = static_cast<int>(rng.Below(m));
      pred[k] = static_cast<int>(rng.Below(m));
    }
    check(gold, pred, m, BruteMacro(gold, pred, static_cast<int>(m)), BruteMicro(gold, pred));
  }
  // Second oracle: scikit-learn values recorded in the fixture.
  size_t sklearn = 0;
  for (const auto& c : testing::LoadMetricCases(MEMOTION_FIXTURE_DIR "/metric_cases.txt")) {
    check(c.gold, c.pred, c.classes, c.macro_f1, c.micro_f1);
    ++sklearn;
  }
  return {worst <= 1e-12 && micro_not_accuracy == 0 && sklearn == 1000,
          Fmt("%zu cases (1000 brute-force + %zu scikit-learn), max |diff| %.1e, micro!=accuracy %zu", cases, sklearn,
              worst, micro_not_accuracy)};
}

Outcome ShapeLedger() {
  std::string problems;
  auto expect = [&](bool ok, const std::string& what) {
    if (!ok) problems += what + "; ";
  };
  auto reference = [](Architecture arch) {
    ModelConfig c;
    c.architecture = arch;
    c.seq_len = 4;
    c.vocab_size = 6;
    return c;
  };
  const TokenSequence seq{{2, 3, 4, 0}, 3};
  MemeClassifier mnn1(reference(Architecture::kMnn1));
  expect(mnn1.FindParameter("image.w")->shape() == ag::Shape{128, 2048}, "MNN-I image 2048->128");
  mnn1.Predict(seq, {});
  expect(mnn1.last_fused_width() == 256, "MNN-I concat 256");
  MemeClassifier mnn2(reference(Architecture::kMnn2));
  expect(mnn2.FindParameter("image.w")->shape() == ag::Shape{256, 2048}, "MNN-II image 2048->256");
  expect(mnn2.FindParameter("text_fusion.w")->shape()[0] == 256, "MNN-II text fusion 256");
  mnn2.Predict(seq, {});
  expect(mnn2.last_fused_width() == 512, "MNN-II concat 512");

  const std::vector<std::pair<Architecture, std::function<void(ModelConfig&)>>> bad = {
      {Architecture::kMnn1, [](ModelConfig& c) { c.image_proj = 256; }},
      {Architecture::kMnn1, [](ModelConfig& c) { c.lstm_hidden = 100; }},
      {Architecture::kMnn1, [](ModelConfig& c) { c.image_dim = 1024; }},
      {Architecture::kMnn2, [](ModelConfig& c) { c.image_proj = 128; }},
      {Architecture::kMnn2, [](ModelConfig& c) { c.text_fusion = 200; }},
      {Architecture::kBiLstmGlove, [](ModelConfig& c) { c.bilstm_hidden = 7; }},
  };
  size_t rejected = 0;
  for (const auto& [arch, edit] : bad) {
    ModelConfig c = reference(arch);
    edit(c);
    try {
      MemeClassifier m(c);
    } catch (const Error& e) {
      rejected += e.code() == ErrorCode::kConfigError;
    }
  }
  expect(rejected == bad.size(), Fmt("only %zu/%zu misconfigurations rejected", rejected, bad.size()));
  return {problems.empty(),
          problems.empty() ? Fmt("MNN-I 2048->128 concat 256, MNN-II 2048->256 fusion 256 concat 512, %zu/%zu "
                                 "misconfigurations rejected",
                                 rejected, bad.size())
                           : problems};
}

Outcome Oversampling() {
  std::vector<MemeRecord> records;
  const std::vector<size_t> counts = {4160, 2200, 630};
  for (size_t cls = 0; cls < counts.size(); ++cls) {
    for (size_t i = 0; i < counts[cls]; ++i) {
      MemeRecord r;
      r.id = "c" + std::to_string(cls) + "_" + std::to_string(i);
      r.labels.sentiment = static_cast<Sentiment>(cls);
      records.push_back(std::move(r));
    }
  }
  const auto out = OversampleMinority(records, Head::kA, 2020);
  const std::vector<size_t> hist = ClassDistribution(out, Head::kA);
  std::multiset<std::string> ids;
  for (const auto& r : out) ids.insert(r.id);
  size_t missing = 0;
  for (const auto& r : records) missing += !ids.count(r.id);
  return {hist == std::vector<size_t>{4160, 4160, 4160} && missing == 0,
          Fmt("histogram %zu/%zu/%zu from 4160/2200/630, %zu original ids missing", hist[0], hist[1], hist[2],
              missing)};
}

struct ArmResult {
  double dev_macro_f1 = 0;
  size_t train = 0;
  size_t dev = 0;
};

ArmResult TrainArm(const SyntheticCorpus& corpus, const ImageEmbeddingMap& images, Architecture arch) {
  ModelConfig mc;
  mc.architecture = arch;
  mc.head = Head::kA;
  // Reference widths throughout; word tables are random since no vectors ship.
  mc.d_semantic = 200;
  mc.seq_len = 75;
  mc.seed = 7;
  TrainConfig tc;
  tc.epochs = 30;
  tc.seed = 7;
  PreparedData data = PrepareData(corpus.records, mc, tc, &images, ContractionDict::Builtin());
  TrainResult r = Train(MemeClassifier(mc), data.train, data.dev, tc);
  // Score the returned model directly rather than trusting the report.
  return {Evaluate(r.model, data.dev).macro_f1, data.train.size(), data.dev.size()};
}

Outcome Surrogate() {
  const auto start = std::chrono::steady_clock::now();
  SyntheticCorpus corpus = MakeSyntheticCorpus();  // 300 records, 2048-d images, seed 2020
  ImageEmbeddingMap images;
  for (const auto& e : corpus.images) images[e.meme_id] = e;

  // Majority baseline on the same split the trained arms see.
  ModelConfig probe;
  TrainConfig tc;
  tc.epochs = 30;
  tc.seed = 7;
  tc.oversample = false;
  PreparedData plain = PrepareData(corpus.records, probe, tc, nullptr, ContractionDict::Builtin());
  std::vector<size_t> hist(3, 0);
  for (const Example& ex : plain.train) ++hist[ex.label];
  const int majority = static_cast<int>(std::max_element(hist.begin(), hist.end()) - hist.begin());
  std::vector<int> gold, pred;
  for (const Example& ex : plain.dev) {
    gold.push_back(ex.label);
    pred.push_back(majority);
  }
  const double baseline = MacroF1(Confusion(gold, pred, 3));

  const ArmResult mnn1 = TrainArm(corpus, images, Architecture::kMnn1);
  const ArmResult bilstm = TrainArm(corpus, images, Architecture::kBiLstmGlove);
  const double elapsed = Seconds(start);
  const bool pass = mnn1.dev_macro_f1 - baseline >= 0.05 && mnn1.dev_macro_f1 - bilstm.dev_macro_f1 >= 0.05 &&
                    elapsed < 300 && mnn1.dev == 45;
  return {pass, Fmt("dev n=%zu: MNN-I %.4f, BiLSTM %.4f, majority %.4f (margins %.4f / %.4f), %.1f s", mnn1.dev,
                    mnn1.dev_macro_f1, bilstm.dev_macro_f1, baseline, mnn1.dev_macro_f1 - bilstm.dev_macro_f1,
                    mnn1.dev_macro_f1 - baseline, elapsed)};
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

Outcome Determinism() {
  const fs::path dir = fs::temp_directory_path() / ("memotion_accept_" + std::to_string(getpid()));
  fs::create_directories(dir);
  auto run = [](std::vector<std::string> args) {
    std::istringstream in;
    std::ostringstream out, err;
    const int code = RunCli(args, in, out, err);
    if (code != 0) std::fprintf(stderr, "%s", err.str().c_str());
    return code;
  };
  const std::string d = dir.string();
  int rc = run({"synth", "--out-dir", d, "--records", "120"});
  const std::string first = d + "/first.mmck", second = d + "/second.mmck", third = d + "/third.mmck";
  if (rc == 0) {
    rc = run({"train", "--corpus", d + "/corpus.csv", "--image-embeddings", d + "/images.memb", "--arch", "mnn1",
              "--task", "C-offense", "--epochs", "3", "--seed", "99", "--out", first});
  }
  if (rc == 0) rc = run({"train", "--manifest", first + ".manifest.json", "--out", second});
  if (rc == 0) rc = run({"train", "--manifest", first + ".manifest.json", "--out", third});
  const std::string a = Slurp(first), b = Slurp(second), c = Slurp(third);
  fs::remove_all(dir);
  return {rc == 0 && !a.empty() && a == b && a == c,
          Fmt("exit %d, checkpoint %zu bytes, reruns identical: %s", rc, a.size(), a == b && a == c ? "yes" : "no")};
}

}  // namespace
}  // namespace memotion

int main() {
  using namespace memotion;
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"gradient-suite", GradientSuite},       {"normalization-goldens", NormalizationGoldens},
      {"metric-oracle", MetricOracle},         {"shape-ledger", ShapeLedger},
      {"oversampling", Oversampling},          {"surrogate-end-to-end", Surrogate},
      {"determinism", Determinism},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
