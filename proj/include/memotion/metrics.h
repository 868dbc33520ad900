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

// Competition scoring: per-head macro/micro F1 and the Task B/C average of
// per-subtask macro F1.
//
// Zero-division convention: a precision or recall of 0/0 is 0, so a class
// that is never gold and never predicted contributes F1 = 0 and still counts
// in the macro average.

#ifndef MEMOTION_METRICS_H_
#define MEMOTION_METRICS_H_

#include <span>
#include <vector>

namespace memotion {

class ConfusionMatrix {
 public:
  explicit ConfusionMatrix(size_t classes) : m_(classes), counts_(classes * classes, 0) {}

  void Add(int gold, int pred);
  size_t at(size_t gold, size_t pred) const { return counts_[gold * m_ + pred]; }
  size_t classes() const { return m_; }
  size_t total() const;
  size_t trace() const;
  size_t gold_count(size_t cls) const;
  size_t predicted_count(size_t cls) const;
  bool operator==(const ConfusionMatrix&) const = default;

 private:
  size_t m_;
  std::vector<size_t> counts_;  // row-major gold x predicted
};

// Throws LengthMismatch or ClassOutOfRange.
ConfusionMatrix Confusion(std::span<const int> gold, std::span<const int> pred, size_t classes);

struct ClassScore {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
  size_t support = 0;
};

struct ScoreCard {
  std::vector<ClassScore> per_class;
  double macro_f1 = 0;
  double micro_f1 = 0;
};

double MacroF1(const ConfusionMatrix& cm);
// TP / (TP + (FP + FN) / 2) over all classes; 0 for an empty matrix.
double MicroF1(const ConfusionMatrix& cm);
double Accuracy(const ConfusionMatrix& cm);
ScoreCard Score(const ConfusionMatrix& cm);

// Mean of the subtasks' macro F1. Throws InvalidArgument on an empty list.
double TaskBCScore(std::span<const ScoreCard> subtasks);
double TaskBCMicro(std::span<const ScoreCard> subtasks);

}  // namespace memotion

#endif  // MEMOTION_METRICS_H_
