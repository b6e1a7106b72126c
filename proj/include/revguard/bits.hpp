// Copyright 2026 The revguard Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include <boost/dynamic_bitset.hpp>

#include "revguard/errors.hpp"

namespace revguard {

/// Bit i holds circuit line i (or function input/output i).
using bit_vector = boost::dynamic_bitset<>;

/// Parses an MSB-first string such as "001" (line 0 is the last character).
inline bit_vector bits_from_string(std::string_view text) {
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw input_error("bit string may only contain '0' and '1': " + std::string(text));
    }
  }
  return bit_vector(std::string(text));
}

inline std::string bits_to_string(const bit_vector& bits) {
  std::string out;
  boost::to_string(bits, out);
  return out;
}

inline bit_vector bits_from_word(std::uint64_t word, std::size_t width) {
  bit_vector bits(width);
  for (std::size_t i = 0; i < width && i < 64; ++i) {
    bits[i] = ((word >> i) & 1U) != 0;
  }
  return bits;
}

inline std::uint64_t bits_to_word(const bit_vector& bits) {
  if (bits.size() > 64) {
    throw input_error("bit vector wider than 64 bits");
  }
  std::uint64_t word = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) {
      word |= std::uint64_t{1} << i;
    }
  }
  return word;
}

}  // namespace revguard
