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

// Little-endian byte encoding shared by the MEMB and MMCK file formats.

#ifndef MEMOTION_BINIO_H_
#define MEMOTION_BINIO_H_

#include <bit>
#include <cstdint>
#include <cstring>
#include <string>
#include <string_view>

#include "memotion/error.h"

namespace memotion::binio {

template <typename UInt>
void PutUInt(std::string& out, UInt value) {
  for (size_t i = 0; i < sizeof(UInt); ++i) {
    out.push_back(static_cast<char>((value >> (8 * i)) & 0xff));
  }
}

inline void PutU8(std::string& out, uint8_t v) { PutUInt(out, v); }
inline void PutU16(std::string& out, uint16_t v) { PutUInt(out, v); }
inline void PutU32(std::string& out, uint32_t v) { PutUInt(out, v); }
inline void PutU64(std::string& out, uint64_t v) { PutUInt(out, v); }
inline void PutF32(std::string& out, float v) { PutU32(out, std::bit_cast<uint32_t>(v)); }
inline void PutF64(std::string& out, double v) { PutU64(out, std::bit_cast<uint64_t>(v)); }

// Bounds-checked cursor; running past the end throws Error(kCorruptFile).
class Reader {
 public:
  explicit Reader(std::string_view data) : data_(data) {}

  template <typename UInt>
  UInt GetUInt() {
    Need(sizeof(UInt));
    UInt value = 0;
    for (size_t i = 0; i < sizeof(UInt); ++i) {
      value |= static_cast<UInt>(static_cast<unsigned char>(data_[pos_ + i])) << (8 * i);
    }
    pos_ += sizeof(UInt);
    return value;
  }

  uint8_t U8() { return GetUInt<uint8_t>(); }
  uint16_t U16() { return GetUInt<uint16_t>(); }
  uint32_t U32() { return GetUInt<uint32_t>(); }
  uint64_t U64() { return GetUInt<uint64_t>(); }
  float F32() { return std::bit_cast<float>(U32()); }
  double F64() { return std::bit_cast<double>(U64()); }

  std::string Bytes(size_t n) {
    Need(n);
    std::string out(data_.substr(pos_, n));
    pos_ += n;
    return out;
  }

  size_t remaining() const { return data_.size() - pos_; }
  bool done() const { return pos_ == data_.size(); }

 private:
  void Need(size_t n) const {
    if (data_.size() - pos_ < n) {
      throw Error(ErrorCode::kCorruptFile, "unexpected end of data at byte " + std::to_string(pos_));
    }
  }

  std::string_view data_;
  size_t pos_ = 0;
};

std::string ReadFile(const std::string& path);
// Writes via a temporary file and rename so readers never see partial output.
void WriteFileAtomic(const std::string& path, std::string_view bytes);

}  // namespace memotion::binio

#endif  // MEMOTION_BINIO_H_
