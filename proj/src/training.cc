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

#include "memotion/training.h"

#include <atomic>
#include <chrono>
#include <cmath>
#include <mutex>
#include <thread>

#include "json.hpp"
#include "memotion/error.h"

namespace memotion {

namespace {

using Clock = std::chrono::steady_clock;

class Stepper {
 public:
  Stepper(const TrainConfig& config, std::vector<NamedParameter>& params) : config_(config), params_(params) {
    if (config_.optimizer == Optimizer::kAdam) {
      for (const auto& p : params_) {
        m_.emplace_back(p.tensor.size(), 0.0);
        v_.emplace_back(p.tensor.size(), 0.0);
      }
    }
  }

  void Step(double grad_scale) {
    ++t_;
    const double lr = config_.learning_rate;
    const double bc1 = 1.0 - std::pow(config_.beta1, static_cast<double>(t_));
    const double bc2 = 1.0 - std::pow(config_.beta2, static_cast<double>(t_));
    for (size_t i = 0; i < params_.size(); ++i) {
      ag::Tensor& t = params_[i].tensor;
      if (!t.requires_grad()) continue;
      auto value = t.mutable_values();
      auto grad = t.mutable_grad();
      for (size_t k = 0; k < value.size(); ++k) {
        const double g = grad[k] * grad_scale;
        if (!std::isfinite(g)) {
          throw Error(ErrorCode::kNonFiniteLoss, "non-finite gradient in " + params_[i].name);
        }
        if (config_.optimizer == Optimizer::kSgd) {
          value[k] -= lr * g;
        } else {
          double& m = m_[i][k];
          double& v = v_[i][k];
          m = config_.beta1 * m + (1 - config_.beta1) * g;
          v = config_.beta2 * v + (1 - config_.beta2) * g * g;
          value[k] -= lr * (m / bc1) / (std::sqrt(v / bc2) + config_.epsilon);
        }
      }
      // The padding row of a lookup table stays exactly zero.
      if (params_[i].name.rfind("emb.", 0) == 0) {
        const size_t d = t.cols();
        for (size_t c = 0; c < d; ++c) value[c] = 0.0;
      }
    }
  }

 private:
  const TrainConfig& config_;
  std::vector<NamedParameter>& params_;
  std::vector<std::vector<double>> m_;
  std::vector<std::vector<double>> v_;
  uint64_t t_ = 0;
};

std::vector<std::vector<double>> Snapshot(const MemeClassifier& model) {
  std::vector<std::vector<double>> out;
  for (const auto& p : model.parameters()) out.emplace_back(p.tensor.values().begin(), p.tensor.values().end());
  return out;
}

void Restore(MemeClassifier& model, const std::vector<std::vector<double>>& snapshot) {
  auto& params = model.parameters();
  for (size_t i = 0; i < params.size(); ++i) {
    std::copy(snapshot[i].begin(), snapshot[i].end(), params[i].tensor.mutable_values().begin());
  }
}

void CheckLabeled(const std::vector<Example>& examples, const ModelConfig& config, const char* which) {
  for (const Example& ex : examples) {
    if (ex.label < 0 || static_cast<size_t>(ex.label) >= config.classes()) {
      throw Error(ErrorCode::kInvalidArgument, std::string(which) + " example '" + ex.id + "' has no valid " +
                                                   HeadName(config.head) + " label");
    }
  }
}

}  // namespace

KeyValues TrainConfig::ToKeyValues() const {
  auto join_sizes = [](const std::vector<size_t>& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
  };
  std::string lrs;
  for (size_t i = 0; i < grid_learning_rates.size(); ++i) {
    lrs += (i ? "," : "") + FormatDouble(grid_learning_rates[i]);
  }
  return {
      {"epochs", std::to_string(epochs)},
      {"batch_size", std::to_string(batch_size)},
      {"learning_rate", FormatDouble(learning_rate)},
      {"optimizer", optimizer == Optimizer::kAdam ? "adam" : "sgd"},
      {"beta1", FormatDouble(beta1)},
      {"beta2", FormatDouble(beta2)},
      {"epsilon", FormatDouble(epsilon)},
      {"seed", std::to_string(seed)},
      {"oversample", oversample ? "true" : "false"},
      {"dev_fraction", FormatDouble(dev_fraction)},
      {"grid_lstm_layers", join_sizes(grid_lstm_layers)},
      {"grid_epochs", join_sizes(grid_epochs)},
      {"grid_learning_rates", lrs},
  };
}

TrainConfig TrainConfig::FromKeyValues(const KeyValues& kv) {
  TrainConfig c;
  GetSize(kv, "epochs", c.epochs);
  GetSize(kv, "batch_size", c.batch_size);
  GetDouble(kv, "learning_rate", c.learning_rate);
  std::string opt;
  GetString(kv, "optimizer", opt);
  if (opt == "sgd") {
    c.optimizer = Optimizer::kSgd;
  } else if (opt == "adam" || opt.empty()) {
    c.optimizer = Optimizer::kAdam;
  } else {
    throw Error(ErrorCode::kConfigError, "unknown optimizer '" + opt + "'");
  }
  GetDouble(kv, "beta1", c.beta1);
  GetDouble(kv, "beta2", c.beta2);
  GetDouble(kv, "epsilon", c.epsilon);
  GetU64(kv, "seed", c.seed);
  GetBool(kv, "oversample", c.oversample);
  GetDouble(kv, "dev_fraction", c.dev_fraction);
  if (auto it = kv.find("grid_lstm_layers"); it != kv.end()) c.grid_lstm_layers = ParseSizeList(it->second);
  if (auto it = kv.find("grid_epochs"); it != kv.end()) c.grid_epochs = ParseSizeList(it->second);
  if (auto it = kv.find("grid_learning_rates"); it != kv.end()) {
    c.grid_learning_rates = ParseDoubleList(it->second);
  }
  return c;
}

void TrainConfig::Validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::kConfigError, what); };
  if (epochs == 0) fail("epochs must be positive");
  if (batch_size == 0) fail("batch_size must be positive");
  if (!(learning_rate >= 0)) fail("learning_rate must be non-negative");
  if (!(dev_fraction > 0 && dev_fraction < 1)) fail("dev_fraction must lie in (0, 1)");
  if (grid_lstm_layers.empty() || grid_epochs.empty() || grid_learning_rates.empty()) fail("grid axes must be nonempty");
  for (size_t l : grid_lstm_layers) {
    if (l != 1 && l != 2) fail("grid lstm layers must be 1 or 2");
  }
  for (size_t e : grid_epochs) {
    if (e == 0) fail("grid epochs must be positive");
  }
  for (double lr : grid_learning_rates) {
    if (!(lr > 0)) fail("grid learning rates must be positive");
  }
}

bool TrainReport::SameTrajectory(const TrainReport& o) const {
  return train_loss == o.train_loss && dev_macro_f1 == o.dev_macro_f1 && dev_micro_f1 == o.dev_micro_f1 &&
         best_epoch == o.best_epoch;
}

std::string TrainReport::ToJson() const {
  nlohmann::json j;
  j["train_loss"] = train_loss;
  j["dev_macro_f1"] = dev_macro_f1;
  j["dev_micro_f1"] = dev_micro_f1;
  j["best_epoch"] = best_epoch;
  j["epochs_run"] = train_loss.size();
  j["wall_time_seconds"] = wall_time_seconds;
  return j.dump(2);
}

std::vector<int> PredictLabels(const MemeClassifier& model, const std::vector<Example>& examples) {
  std::vector<int> out;
  out.reserve(examples.size());
  for (const Example& ex : examples) out.push_back(Argmax(model.Predict(ex.seq, ex.image)));
  return out;
}

ScoreCard Evaluate(const MemeClassifier& model, const std::vector<Example>& examples) {
  std::vector<int> gold;
  gold.reserve(examples.size());
  for (const Example& ex : examples) gold.push_back(ex.label);
  return Score(Confusion(gold, PredictLabels(model, examples), model.config().classes()));
}

double MeanLoss(const MemeClassifier& model, const std::vector<Example>& examples) {
  if (examples.empty()) return 0;
  Rng unused(0);
  double total = 0;
  for (const Example& ex : examples) {
    total += ag::CrossEntropy(model.Forward(ex.seq, ex.image, false, unused), static_cast<size_t>(ex.label)).item();
  }
  return total / static_cast<double>(examples.size());
}

TrainResult Train(const MemeClassifier& initial, const std::vector<Example>& train,
                  const std::vector<Example>& dev, const TrainConfig& config) {
  config.Validate();
  if (train.empty() || dev.empty()) throw Error(ErrorCode::kInvalidArgument, "train and dev sets must be nonempty");
  CheckLabeled(train, initial.config(), "train");
  CheckLabeled(dev, initial.config(), "dev");

  const auto start = Clock::now();
  MemeClassifier model = initial.Clone();
  auto& params = model.parameters();
  Stepper stepper(config, params);

  TrainReport report;
  double best_score = -1;
  std::vector<std::vector<double>> best = Snapshot(model);

  std::vector<size_t> order(train.size());
  for (size_t epoch = 1; epoch <= config.epochs; ++epoch) {
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    Rng shuffle_rng(DeriveSeed(config.seed, 2 * epoch));
    shuffle_rng.Shuffle(std::span<size_t>(order));
    Rng dropout_rng(DeriveSeed(config.seed, 2 * epoch + 1));

    double epoch_loss = 0;
    for (size_t begin = 0; begin < order.size(); begin += config.batch_size) {
      const size_t end = std::min(order.size(), begin + config.batch_size);
      for (auto& p : params) {
        if (p.tensor.requires_grad()) p.tensor.ZeroGrad();
      }
      for (size_t k = begin; k < end; ++k) {
        const Example& ex = train[order[k]];
        try {
          ag::Tensor loss = ag::CrossEntropy(model.Forward(ex.seq, ex.image, true, dropout_rng),
                                             static_cast<size_t>(ex.label));
          ag::Backward(loss);
          epoch_loss += loss.item();
        } catch (const Error& e) {
          if (e.code() != ErrorCode::kNonFinite) throw;
          throw Error(ErrorCode::kNonFiniteLoss, "epoch " + std::to_string(epoch) + ", example '" + ex.id +
                                                     "': " + e.what());
        }
      }
      stepper.Step(1.0 / static_cast<double>(end - begin));
    }
    if (!std::isfinite(epoch_loss)) {
      throw Error(ErrorCode::kNonFiniteLoss, "epoch " + std::to_string(epoch) + " loss is not finite");
    }

    ScoreCard dev_score = Evaluate(model, dev);
    report.train_loss.push_back(epoch_loss / static_cast<double>(train.size()));
    report.dev_macro_f1.push_back(dev_score.macro_f1);
    report.dev_micro_f1.push_back(dev_score.micro_f1);
    if (dev_score.macro_f1 > best_score) {
      best_score = dev_score.macro_f1;
      report.best_epoch = epoch;
      best = Snapshot(model);
    }
  }
  Restore(model, best);
  report.wall_time_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return {std::move(model), std::move(report)};
}

PreparedData PrepareData(const std::vector<MemeRecord>& records, ModelConfig& model,
                         const TrainConfig& train, const ImageEmbeddingMap* images,
                         const ContractionDict& dict) {
  train.Validate();
  PreparedData out;
  std::vector<MemeRecord> labeled;
  for (const MemeRecord& r : records) {
    if (HeadLabel(r.labels, model.head)) {
      labeled.push_back(r);
    } else {
      ++out.skipped_unlabeled;
    }
  }
  if (labeled.size() < 2) {
    throw Error(ErrorCode::kEmptyCorpus, "fewer than two records carry a " + HeadName(model.head) + " label");
  }
  Split split = SplitTrainDev(labeled, train.dev_fraction, DeriveSeed(train.seed, 0x73706c6974));
  if (split.train.empty() || split.dev.empty()) {
    throw Error(ErrorCode::kEmptyCorpus, "train/dev split left one side empty");
  }

  std::vector<std::vector<std::string>> captions;
  for (const MemeRecord& r : split.train) captions.push_back(Normalize(r.description, dict));
  out.vocab = BuildVocab(captions, 1);
  model.vocab_size = out.vocab.size();

  std::vector<MemeRecord> train_records =
      train.oversample ? OversampleMinority(split.train, model.head, DeriveSeed(train.seed, 0x6f76657273))
                       : split.train;
  for (const MemeRecord& r : train_records) out.train.push_back(MakeExample(r, out.vocab, model, images, dict));
  for (const MemeRecord& r : split.dev) out.dev.push_back(MakeExample(r, out.vocab, model, images, dict));
  return out;
}

std::vector<GridCell> EnumerateGrid(const TrainConfig& config) {
  config.Validate();
  std::vector<GridCell> cells;
  for (size_t layers : config.grid_lstm_layers) {
    for (size_t epochs : config.grid_epochs) {
      for (double lr : config.grid_learning_rates) {
        GridCell cell{layers, epochs, lr, 0};
        cell.seed = DeriveSeed(config.seed, 0x67726964 + cells.size());
        cells.push_back(cell);
      }
    }
  }
  return cells;
}

GridResult RunGrid(const std::vector<GridCell>& cells, const CellRunner& runner, size_t threads) {
  if (cells.empty()) throw Error(ErrorCode::kConfigError, "empty grid");
  GridResult result;
  result.cells.resize(cells.size());
  threads = std::max<size_t>(1, std::min(threads, cells.size()));

  std::atomic<size_t> next{0};
  std::mutex error_mu;
  std::exception_ptr error;
  auto worker = [&] {
    for (size_t i = next++; i < cells.size(); i = next++) {
      try {
        result.cells[i] = runner(cells[i]);
        result.cells[i].cell = cells[i];
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);

  for (size_t i = 1; i < result.cells.size(); ++i) {
    if (result.cells[i].dev_macro_f1 > result.cells[result.best_index].dev_macro_f1) result.best_index = i;
  }
  return result;
}

GridResult GridSearch(const ModelConfig& base, const EmbeddingTable* semantic,
                      const EmbeddingTable* sentiment, const std::vector<Example>& train,
                      const std::vector<Example>& dev, const TrainConfig& config, size_t threads) {
  const std::vector<GridCell> cells = EnumerateGrid(config);
  std::vector<std::optional<TrainResult>> runs(cells.size());
  std::mutex runs_mu;

  GridResult result = RunGrid(
      cells,
      [&](const GridCell& cell) {
        ModelConfig mc = base;
        mc.lstm_layers = cell.lstm_layers;
        mc.seed = cell.seed;
        TrainConfig tc = config;
        tc.epochs = cell.epochs;
        tc.learning_rate = cell.learning_rate;
        tc.seed = cell.seed;
        TrainResult run = Train(MemeClassifier(mc, semantic, sentiment), train, dev, tc);

        GridCellResult out;
        out.cell = cell;
        out.best_epoch = run.report.best_epoch;
        out.dev_macro_f1 = run.report.dev_macro_f1[run.report.best_epoch - 1];
        out.dev_micro_f1 = run.report.dev_micro_f1[run.report.best_epoch - 1];
        const size_t index = static_cast<size_t>(&cell - cells.data());
        std::lock_guard<std::mutex> lock(runs_mu);
        runs[index].emplace(std::move(run));
        return out;
      },
      threads);
  result.best = std::move(runs[result.best_index]);
  return result;
}

std::string GridResult::ToJson() const {
  nlohmann::json j;
  j["best_index"] = best_index;
  nlohmann::json rows = nlohmann::json::array();
  for (const GridCellResult& c : cells) {
    rows.push_back({{"lstm_layers", c.cell.lstm_layers},
                    {"epochs", c.cell.epochs},
                    {"learning_rate", c.cell.learning_rate},
                    {"seed", c.cell.seed},
                    {"dev_macro_f1", c.dev_macro_f1},
                    {"dev_micro_f1", c.dev_micro_f1},
                    {"best_epoch", c.best_epoch}});
  }
  j["cells"] = rows;
  return j.dump(2);
}

}  // namespace memotion
