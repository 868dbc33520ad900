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

#include "memotion/synthetic.h"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

#include "memotion/error.h"
#include "memotion/random.h"

namespace memotion {

namespace {

constexpr std::array<const char*, 3> kCueWords = {"sunny", "plain", "gloomy"};

// Letter-only filler words so normalization leaves them intact.
std::vector<std::string> FillerWords() {
  static constexpr const char* kOnsets[] = {"b", "d", "f", "k", "l", "m", "p", "r", "s", "t"};
  static constexpr const char* kNuclei[] = {"a", "e", "i", "o", "u", "ai"};
  std::vector<std::string> words;
  for (const char* a : kOnsets) {
    for (const char* b : kNuclei) words.push_back(std::string(a) + b + "n");
  }
  return words;
}

int DrawClass(Rng& rng, const std::array<double, 3>& weights) {
  const double total = weights[0] + weights[1] + weights[2];
  double u = rng.Uniform() * total;
  for (int c = 0; c < 2; ++c) {
    if (u < weights[c]) return c;
    u -= weights[c];
  }
  return 2;
}

}  // namespace

double StandardNormal(Rng& rng) {
  const double u1 = 1.0 - rng.Uniform();  // (0, 1]
  const double u2 = rng.Uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

SyntheticCorpus MakeSyntheticCorpus(const SyntheticOptions& o) {
  if (o.records == 0 || o.image_dim == 0 || o.min_words == 0 || o.min_words > o.max_words) {
    throw Error(ErrorCode::kInvalidArgument, "invalid synthetic corpus options");
  }
  const std::vector<std::string> filler = FillerWords();

  Rng proto_rng(DeriveSeed(o.seed, 1));
  std::array<std::vector<double>, 3> prototypes;
  for (auto& p : prototypes) {
    p.resize(o.image_dim);
    for (double& v : p) v = StandardNormal(proto_rng);
  }

  Rng rng(DeriveSeed(o.seed, 2));
  SyntheticCorpus out;
  for (size_t i = 0; i < o.records; ++i) {
    char id[32];
    std::snprintf(id, sizeof(id), "syn%04zu", i + 1);
    const int cls = DrawClass(rng, o.class_weights);

    const size_t words = o.min_words + static_cast<size_t>(rng.Below(o.max_words - o.min_words + 1));
    std::vector<std::string> tokens;
    for (size_t w = 0; w < words; ++w) tokens.push_back(filler[rng.Below(filler.size())]);
    if (rng.Uniform() < o.cue_probability) tokens[rng.Below(tokens.size())] = kCueWords[cls];
    std::string text;
    for (const auto& t : tokens) text += (text.empty() ? "" : " ") + t;

    MemeRecord rec;
    rec.id = id;
    rec.image_ref = rec.id + ".jpg";
    rec.description = text;
    rec.labels.sentiment = static_cast<Sentiment>(cls);
    TaskCLabels c;
    c.humour = static_cast<HumourScale>(rng.Below(4));
    c.sarcasm = static_cast<SarcasmScale>(rng.Below(4));
    c.offense = static_cast<OffenseScale>(rng.Below(4));
    c.motivation = static_cast<Motivation>(rng.Below(2));
    TaskBLabels b;
    b.humorous = c.humour != HumourScale::kNotFunny;
    b.sarcastic = c.sarcasm != SarcasmScale::kNotSarcastic;
    b.offensive = c.offense != OffenseScale::kNotOffensive;
    b.motivational = c.motivation == Motivation::kMotivational;
    rec.labels.b = b;
    rec.labels.c = c;

    ImageEmbedding img;
    img.meme_id = rec.id;
    img.vector.resize(o.image_dim);
    for (size_t k = 0; k < o.image_dim; ++k) {
      img.vector[k] = static_cast<float>(o.image_signal * prototypes[cls][k] + o.image_noise * StandardNormal(rng));
    }
    out.records.push_back(std::move(rec));
    out.images.push_back(std::move(img));
  }
  return out;
}

}  // namespace memotion
