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
// Finite-difference suite over every autograd op and every architecture,
// shared by the unit tests and the acceptance binary.

#ifndef MEMOTION_TESTS_GRADIENT_SUITE_H_
#define MEMOTION_TESTS_GRADIENT_SUITE_H_

#include <functional>
#include <string>
#include <vector>

#include "gradcheck.h"
#include "memotion/autograd.h"
#include "memotion/models.h"

namespace memotion::testing {

struct SuiteEntry {
  std::string name;
  GradCheckResult result;
  double tolerance = 1e-4;
};

inline ag::Tensor RandomParameter(ag::Shape shape, Rng& rng) {
  size_t n = 1;
  for (size_t d : shape) n *= d;
  std::vector<double> v(n);
  for (double& x : v) x = rng.Uniform(-1, 1);
  return ag::Tensor::Parameter(std::move(shape), std::move(v));
}

// Reduces any tensor to a scalar through fixed random weights.
inline ag::Tensor Project(const ag::Tensor& out, uint64_t seed = 77) {
  Rng rng(seed);
  std::vector<double> w(out.size());
  for (double& x : w) x = rng.Uniform(-1, 1);
  return ag::Sum(ag::Mul(out, ag::Tensor::Constant(out.shape(), std::move(w))));
}

inline std::vector<SuiteEntry> OpGradientSuite() {
  using namespace ag;
  Rng rng(15);
  Tensor a = RandomParameter({3, 4}, rng), b = RandomParameter({4, 2}, rng), v = RandomParameter({4}, rng);
  Tensor u = RandomParameter({4}, rng), m = RandomParameter({3, 4}, rng), table = RandomParameter({5, 3}, rng);
  Tensor r = RandomParameter({4, 3}, rng);
  const std::vector<int> ids = {4, 1, 0, 3};
  struct Case {
    const char* name;
    std::function<Tensor()> f;
    std::vector<Probe> probes;
    double tol;
  };
  // Kinked ops (relu, max-pool) get the looser bound.
  const std::vector<Case> cases = {
      {"matmul", [&] { return Project(MatMul(a, b)); }, {{"a", a}, {"b", b}}, 1e-6},
      {"matvec", [&] { return Project(MatVec(a, v)); }, {{"a", a}, {"v", v}}, 1e-6},
      {"add", [&] { return Project(Add(a, m)); }, {{"a", a}, {"m", m}}, 1e-6},
      {"mul", [&] { return Project(Mul(a, m)); }, {{"a", a}, {"m", m}}, 1e-6},
      {"concat", [&] { return Project(Concat({v, u, v})); }, {{"v", v}, {"u", u}}, 1e-6},
      {"slice", [&] { return Project(Slice(v, 1, 2)); }, {{"v", v}}, 1e-6},
      {"sigmoid", [&] { return Project(Sigmoid(a)); }, {{"a", a}}, 1e-6},
      {"tanh", [&] { return Project(Tanh(a)); }, {{"a", a}}, 1e-6},
      {"relu", [&] { return Project(Relu(a)); }, {{"a", a}}, 1e-4},
      {"softmax", [&] { return Project(Softmax(v)); }, {{"v", v}}, 1e-6},
      {"cross_entropy", [&] { return CrossEntropy(Softmax(u), 1); }, {{"u", u}}, 1e-6},
      {"dropout",
       [&] {
         Rng mask(3);
         return Project(Dropout(a, 0.4, true, mask));
       },
       {{"a", a}},
       1e-6},
      {"max_pool", [&] { return Project(TemporalMaxPool(a, 2)); }, {{"a", a}}, 1e-4},
      {"sum", [&] { return Sum(Mul(a, a)); }, {{"a", a}}, 1e-6},
      {"gather", [&] { return Project(Gather(table, ids)); }, {{"table", table}}, 1e-6},
      {"row", [&] { return Project(Row(a, 1)); }, {{"a", a}}, 1e-6},
      {"stack_rows", [&] { return Project(StackRows({v, Tensor(), u}, 4)); }, {{"v", v}, {"u", u}}, 1e-6},
      {"concat_cols", [&] { return Project(ConcatCols(a, m)); }, {{"a", a}, {"m", m}}, 1e-6},
      {"composite",
       [&] { return CrossEntropy(Softmax(MatVec(r, Tanh(Add(MatVec(a, v), Slice(u, 0, 3))))), 0); },
       {{"a", a}, {"v", v}, {"u", u}, {"r", r}},
       1e-4},
  };
  std::vector<SuiteEntry> out;
  for (const Case& c : cases) out.push_back({c.name, CheckGradients(c.f, c.probes), c.tol});
  return out;
}

// n=6 tokens, d=8 embedding width, h=4 hidden units, m=3 classes.
inline ModelConfig SuiteModelConfig(Architecture arch) {
  ModelConfig c;
  c.architecture = arch;
  c.head = Head::kA;
  c.profile = ShapeProfile::kCustom;
  c.seq_len = 6;
  c.vocab_size = 10;
  c.d_semantic = 8;
  c.d_sentiment = 8;
  c.lstm_hidden = 4;
  c.bilstm_hidden = 4;
  c.image_dim = 10;
  c.image_proj = 4;
  c.text_fusion = 4;
  c.dense_hidden = 4;
  c.lstm_layers = 2;
  c.seed = 11;
  return c;
}

// All parameters of one architecture, dropout active under a fixed mask.
inline SuiteEntry ModelGradientCheck(Architecture arch) {
  MemeClassifier model(SuiteModelConfig(arch));
  // Random biases keep every ReLU away from its kink.
  Rng init(3);
  for (auto& p : model.parameters()) {
    if (p.name.ends_with(".b")) {
      for (double& x : p.tensor.mutable_values()) x = init.Uniform(-0.3, 0.3);
    }
  }
  const TokenSequence seq{{2, 5, 9, 3, 0, 0}, 4};
  Rng img_rng(9);
  std::vector<double> image(10);
  for (double& x : image) x = img_rng.Uniform(-1, 1);
  auto loss = [&] {
    Rng mask(17);
    return ag::CrossEntropy(model.Forward(seq, image, true, mask), 1);
  };
  std::vector<Probe> probes;
  for (const auto& p : model.parameters()) probes.push_back({p.name, p.tensor});
  return {ArchitectureName(arch), CheckGradients(loss, probes), 1e-4};
}

inline std::vector<SuiteEntry> ModelGradientSuite() {
  return {ModelGradientCheck(Architecture::kBiLstmGlove), ModelGradientCheck(Architecture::kMnn1),
          ModelGradientCheck(Architecture::kMnn2)};
}

}  // namespace memotion::testing

#endif  // MEMOTION_TESTS_GRADIENT_SUITE_H_
