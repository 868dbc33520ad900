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

#ifndef MEMOTION_TRAINING_H_
#define MEMOTION_TRAINING_H_

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "memotion/kvconfig.h"
#include "memotion/metrics.h"
#include "memotion/models.h"

namespace memotion {

enum class Optimizer { kSgd, kAdam };

struct TrainConfig {
  size_t epochs = 10;
  size_t batch_size = 32;
  double learning_rate = 1e-3;
  Optimizer optimizer = Optimizer::kAdam;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  uint64_t seed = 1;
  bool oversample = true;
  double dev_fraction = 0.15;

  // Grid-search axes.
  std::vector<size_t> grid_lstm_layers = {1, 2};
  std::vector<size_t> grid_epochs = {10, 20, 30};
  std::vector<double> grid_learning_rates = {1e-3, 3e-4};

  KeyValues ToKeyValues() const;
  static TrainConfig FromKeyValues(const KeyValues& kv);
  // Throws Error(kConfigError) on non-positive counts/rates or an empty grid.
  void Validate() const;
};

struct TrainReport {
  std::vector<double> train_loss;
  std::vector<double> dev_macro_f1;
  std::vector<double> dev_micro_f1;
  size_t best_epoch = 0;  // 1-based; 0 before any epoch ran
  double wall_time_seconds = 0;

  // Equality on everything except wall time.
  bool SameTrajectory(const TrainReport& other) const;
  std::string ToJson() const;
};

struct TrainResult {
  MemeClassifier model;  // parameters from the best dev epoch
  TrainReport report;
};

// Mini-batch training with per-epoch seeded shuffling and categorical
// cross-entropy; selects the epoch with the highest dev macro F1 (earliest on
// ties). Throws Error(kNonFiniteLoss) if the loss or a gradient stops being
// finite.
TrainResult Train(const MemeClassifier& initial, const std::vector<Example>& train,
                  const std::vector<Example>& dev, const TrainConfig& config);

std::vector<int> PredictLabels(const MemeClassifier& model, const std::vector<Example>& examples);
ScoreCard Evaluate(const MemeClassifier& model, const std::vector<Example>& examples);
double MeanLoss(const MemeClassifier& model, const std::vector<Example>& examples);

struct PreparedData {
  VocabIndex vocab;
  std::vector<Example> train;  // oversampled when config.oversample
  std::vector<Example> dev;
  size_t skipped_unlabeled = 0;
};

// Drops records without a label for `model.head`, splits train/dev, builds
// the vocabulary from the training captions (min_count 1), oversamples the
// training side and sets model.vocab_size. All randomness derives from
// train.seed.
PreparedData PrepareData(const std::vector<MemeRecord>& records, ModelConfig& model,
                         const TrainConfig& train, const ImageEmbeddingMap* images,
                         const ContractionDict& dict);

struct GridCell {
  size_t lstm_layers = 1;
  size_t epochs = 1;
  double learning_rate = 1e-3;
  uint64_t seed = 0;
};

struct GridCellResult {
  GridCell cell;
  double dev_macro_f1 = 0;
  double dev_micro_f1 = 0;
  size_t best_epoch = 0;
};

struct GridResult {
  std::vector<GridCellResult> cells;
  size_t best_index = 0;
  std::optional<TrainResult> best;  // set by GridSearch, not by RunGrid

  std::string ToJson() const;
};

// Cartesian product layers x epochs x learning rates, in that nesting
// order, each cell with a seed derived from config.seed and its index.
std::vector<GridCell> EnumerateGrid(const TrainConfig& config);

using CellRunner = std::function<GridCellResult(const GridCell&)>;

// Runs every cell (on up to `threads` workers) and picks the highest dev
// macro F1, first cell on ties.
GridResult RunGrid(const std::vector<GridCell>& cells, const CellRunner& runner, size_t threads = 1);

GridResult GridSearch(const ModelConfig& base, const EmbeddingTable* semantic,
                      const EmbeddingTable* sentiment, const std::vector<Example>& train,
                      const std::vector<Example>& dev, const TrainConfig& config, size_t threads = 1);

}  // namespace memotion

#endif  // MEMOTION_TRAINING_H_
