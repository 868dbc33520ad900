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

// Seeded synthetic meme corpus with planted class signal: a weak textual cue
// and a strong image-embedding cue. Used for smoke runs and the end-to-end
// surrogate experiment.

#ifndef MEMOTION_SYNTHETIC_H_
#define MEMOTION_SYNTHETIC_H_

#include <array>
#include <cstdint>
#include <vector>

#include "memotion/dataset.h"
#include "memotion/embeddings.h"
#include "memotion/random.h"

namespace memotion {

struct SyntheticOptions {
  size_t records = 300;
  uint64_t seed = 2020;
  uint32_t image_dim = kImageEmbeddingDim;
  // Sentiment class frequencies (positive, neutral, negative).
  std::array<double, 3> class_weights = {0.45, 0.35, 0.20};
  // Chance that a caption carries its class cue word.
  double cue_probability = 0.35;
  // Image = image_signal * class prototype + image_noise * N(0, 1).
  double image_signal = 0.5;
  double image_noise = 1.0;
  size_t min_words = 4;
  size_t max_words = 10;
};

struct SyntheticCorpus {
  std::vector<MemeRecord> records;  // every task's labels filled, B/C consistent
  std::vector<ImageEmbedding> images;
};

SyntheticCorpus MakeSyntheticCorpus(const SyntheticOptions& options = {});

// Box-Muller standard normal from two uniform draws.
double StandardNormal(Rng& rng);

}  // namespace memotion

#endif  // MEMOTION_SYNTHETIC_H_
