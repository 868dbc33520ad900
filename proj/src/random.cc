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

#include "memotion/random.h"

#include "memotion/error.h"

namespace memotion {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMissingColumn: return "MissingColumn";
    case ErrorCode::kEmptyCorpus: return "EmptyCorpus";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kUnreadableFile: return "UnreadableFile";
    case ErrorCode::kBadMagic: return "BadMagic";
    case ErrorCode::kDuplicateId: return "DuplicateId";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kRankError: return "RankError";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kNotScalar: return "NotScalar";
    case ErrorCode::kNonFinite: return "NonFinite";
    case ErrorCode::kBackwardTwice: return "BackwardTwice";
    case ErrorCode::kMissingHead: return "MissingHead";
    case ErrorCode::kVersionMismatch: return "VersionMismatch";
    case ErrorCode::kCorruptFile: return "CorruptFile";
    case ErrorCode::kNonFiniteLoss: return "NonFiniteLoss";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kClassOutOfRange: return "ClassOutOfRange";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kConfigError: return "ConfigError";
    case ErrorCode::kMissingModality: return "MissingModality";
  }
  return "Unknown";
}

uint64_t Rng::Below(uint64_t bound) {
  if (bound == 0) throw Error(ErrorCode::kInvalidArgument, "Rng::Below(0)");
  // Rejection sampling over the largest multiple of bound.
  const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % bound;
}

uint64_t DeriveSeed(uint64_t seed, uint64_t salt) {
  uint64_t z = seed ^ (salt * 0x9e3779b97f4a7c15ULL);
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

uint64_t Fnv1a64(const void* data, size_t size, uint64_t hash) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  for (size_t i = 0; i < size; ++i) {
    hash ^= bytes[i];
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

}  // namespace memotion
