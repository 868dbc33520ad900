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

#include "memotion/metrics.h"

#include <string>

#include "memotion/error.h"

namespace memotion {

namespace {

double SafeDiv(double num, double den) { return den == 0 ? 0.0 : num / den; }

}  // namespace

void ConfusionMatrix::Add(int gold, int pred) {
  if (gold < 0 || pred < 0 || static_cast<size_t>(gold) >= m_ || static_cast<size_t>(pred) >= m_) {
    throw Error(ErrorCode::kClassOutOfRange, "class pair (" + std::to_string(gold) + ", " +
                                                 std::to_string(pred) + ") outside " + std::to_string(m_) +
                                                 " classes");
  }
  ++counts_[static_cast<size_t>(gold) * m_ + static_cast<size_t>(pred)];
}

size_t ConfusionMatrix::total() const {
  size_t s = 0;
  for (size_t c : counts_) s += c;
  return s;
}

size_t ConfusionMatrix::trace() const {
  size_t s = 0;
  for (size_t i = 0; i < m_; ++i) s += at(i, i);
  return s;
}

size_t ConfusionMatrix::gold_count(size_t cls) const {
  size_t s = 0;
  for (size_t j = 0; j < m_; ++j) s += at(cls, j);
  return s;
}

size_t ConfusionMatrix::predicted_count(size_t cls) const {
  size_t s = 0;
  for (size_t i = 0; i < m_; ++i) s += at(i, cls);
  return s;
}

ConfusionMatrix Confusion(std::span<const int> gold, std::span<const int> pred, size_t classes) {
  if (gold.size() != pred.size()) {
    throw Error(ErrorCode::kLengthMismatch, std::to_string(gold.size()) + " gold labels vs " +
                                                std::to_string(pred.size()) + " predictions");
  }
  ConfusionMatrix cm(classes);
  for (size_t i = 0; i < gold.size(); ++i) cm.Add(gold[i], pred[i]);
  return cm;
}

ScoreCard Score(const ConfusionMatrix& cm) {
  ScoreCard card;
  const size_t m = cm.classes();
  card.per_class.resize(m);
  double f1_sum = 0;
  for (size_t k = 0; k < m; ++k) {
    ClassScore& s = card.per_class[k];
    const double tp = static_cast<double>(cm.at(k, k));
    s.support = cm.gold_count(k);
    s.precision = SafeDiv(tp, static_cast<double>(cm.predicted_count(k)));
    s.recall = SafeDiv(tp, static_cast<double>(s.support));
    s.f1 = SafeDiv(2 * s.precision * s.recall, s.precision + s.recall);
    f1_sum += s.f1;
  }
  card.macro_f1 = m ? f1_sum / static_cast<double>(m) : 0.0;
  card.micro_f1 = MicroF1(cm);
  return card;
}

double MacroF1(const ConfusionMatrix& cm) { return Score(cm).macro_f1; }

double MicroF1(const ConfusionMatrix& cm) {
  // Every misclassification is one FP (predicted class) and one FN (gold class).
  const double tp = static_cast<double>(cm.trace());
  const double errors = static_cast<double>(cm.total() - cm.trace());
  return SafeDiv(tp, tp + 0.5 * (errors + errors));
}

double Accuracy(const ConfusionMatrix& cm) {
  return SafeDiv(static_cast<double>(cm.trace()), static_cast<double>(cm.total()));
}

double TaskBCScore(std::span<const ScoreCard> subtasks) {
  if (subtasks.empty()) throw Error(ErrorCode::kInvalidArgument, "no subtask scores to average");
  double s = 0;
  for (const ScoreCard& c : subtasks) s += c.macro_f1;
  return s / static_cast<double>(subtasks.size());
}

double TaskBCMicro(std::span<const ScoreCard> subtasks) {
  if (subtasks.empty()) throw Error(ErrorCode::kInvalidArgument, "no subtask scores to average");
  double s = 0;
  for (const ScoreCard& c : subtasks) s += c.micro_f1;
  return s / static_cast<double>(subtasks.size());
}

}  // namespace memotion
