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

#ifndef MEMOTION_LAYERS_H_
#define MEMOTION_LAYERS_H_

#include <cstddef>

#include "memotion/autograd.h"
#include "memotion/random.h"

namespace memotion {

// Gate weights stacked in the order input, forget, cell, output:
// w is 4h x d, u is 4h x h, b has 4h entries.
struct LstmParams {
  ag::Tensor w;
  ag::Tensor u;
  ag::Tensor b;

  size_t hidden() const { return u.cols(); }
  size_t input() const { return w.cols(); }

  // Glorot-uniform W/U per gate, zero bias except forget gate = 1.
  static LstmParams Init(size_t input, size_t hidden, Rng& rng);
};

struct LstmState {
  ag::Tensor h;
  ag::Tensor c;
};

LstmState LstmStep(const ag::Tensor& x, const LstmState& prev, const LstmParams& p);

struct LstmOutput {
  ag::Tensor outputs;  // n x h, zero rows at padded positions
  ag::Tensor last;     // state after the final non-pad step
};

// Runs from a zero state over rows [0, true_length) of x (n x d), in
// reverse when `reverse` is set; each output row lands at the position of
// the input row that produced it.
LstmOutput LstmEncode(const ag::Tensor& x, size_t true_length, const LstmParams& p, bool reverse);

// Row t is [forward row t | backward row t]; n x 2h.
ag::Tensor BiLstmEncode(const ag::Tensor& x, size_t true_length, const LstmParams& fwd,
                        const LstmParams& bwd);

enum class Activation { kNone, kRelu };

struct DenseParams {
  ag::Tensor w;  // out x in
  ag::Tensor b;  // out
  Activation activation = Activation::kNone;

  size_t in() const { return w.cols(); }
  size_t out() const { return w.rows(); }

  static DenseParams Init(size_t in, size_t out, Activation activation, Rng& rng);
};

ag::Tensor Dense(const ag::Tensor& x, const DenseParams& p);

}  // namespace memotion

#endif  // MEMOTION_LAYERS_H_
