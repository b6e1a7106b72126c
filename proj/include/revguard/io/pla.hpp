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
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "revguard/function.hpp"
#include "revguard/io/real.hpp"

namespace revguard::io {

/// Parses a PLA truth table. Cube character j refers to input j (the order
/// of `.ilb`); unspecified minterms evaluate to 0. Two cubes conflict when one
/// drives an output to 1 and the other to 0 on a shared minterm.
inline boolean_function pla_parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  std::optional<std::size_t> ni;
  std::optional<std::size_t> no;
  std::vector<std::string> ilb;
  std::vector<std::string> ob;
  std::vector<bit_vector> ones;
  std::vector<bit_vector> zeros;
  bool ended = false;

  auto read_count = [&](const std::vector<std::string>& words) -> std::size_t {
    if (words.size() != 2) {
      detail::fail_at(line_no, words[0] + " takes one value");
    }
    try {
      std::size_t used = 0;
      const auto v = std::stoul(words[1], &used);
      if (used == words[1].size()) {
        return v;
      }
    } catch (const std::exception&) {
    }
    detail::fail_at(line_no, words[0] + " value '" + words[1] + "' is not a number");
  };
  auto ensure_tables = [&] {
    if (!ni || !no) {
      detail::fail_at(line_no, "cube before .i and .o");
    }
    if (ones.empty() && *no > 0) {
      if (*ni > default_input_cap) {
        detail::fail_at(line_no, ".i " + std::to_string(*ni) + " exceeds the input cap");
      }
      ones.assign(*no, bit_vector(std::size_t{1} << *ni));
      zeros = ones;
    }
  };

  while (std::getline(in, raw)) {
    ++line_no;
    const auto words = detail::split_words(detail::strip_comment(raw));
    if (words.empty()) {
      continue;
    }
    if (ended) {
      detail::fail_at(line_no, "content after .e");
    }
    const std::string& head = words[0];
    if (head[0] == '.') {
      if (head == ".i") {
        ni = read_count(words);
      } else if (head == ".o") {
        no = read_count(words);
      } else if (head == ".p" || head == ".type") {
        continue;
      } else if (head == ".ilb") {
        ilb.assign(words.begin() + 1, words.end());
      } else if (head == ".ob") {
        ob.assign(words.begin() + 1, words.end());
      } else if (head == ".e" || head == ".end") {
        ended = true;
      } else {
        detail::fail_at(line_no, "unknown directive '" + head + "'");
      }
      continue;
    }
    ensure_tables();
    if (words.size() != 2 || words[0].size() != *ni || words[1].size() != *no) {
      detail::fail_at(line_no, "cube does not match .i " + std::to_string(*ni) + " .o " + std::to_string(*no));
    }
    const std::string& cube = words[0];
    const std::string& outs = words[1];
    std::uint64_t fixed = 0;
    std::vector<std::size_t> free;
    for (std::size_t j = 0; j < cube.size(); ++j) {
      switch (cube[j]) {
        case '1': fixed |= std::uint64_t{1} << j; break;
        case '0': break;
        case '-': free.push_back(j); break;
        default: detail::fail_at(line_no, "bad input character '" + std::string(1, cube[j]) + "'");
      }
    }
    for (char c : outs) {
      if (c != '0' && c != '1' && c != '~' && c != '-') {
        detail::fail_at(line_no, "bad output character '" + std::string(1, c) + "'");
      }
    }
    for (std::uint64_t combo = 0; combo < (std::uint64_t{1} << free.size()); ++combo) {
      std::uint64_t row = fixed;
      for (std::size_t b = 0; b < free.size(); ++b) {
        if ((combo >> b) & 1U) {
          row |= std::uint64_t{1} << free[b];
        }
      }
      for (std::size_t o = 0; o < outs.size(); ++o) {
        auto& mine = outs[o] == '1' ? ones[o] : zeros[o];
        auto& other = outs[o] == '1' ? zeros[o] : ones[o];
        if (outs[o] != '1' && outs[o] != '0') {
          continue;
        }
        if (other[row]) {
          detail::fail_at(line_no, "cube conflicts with an earlier cube on output " + std::to_string(o + 1));
        }
        mine[row] = true;
      }
    }
  }
  if (!ni || !no) {
    throw input_error("PLA is missing .i or .o");
  }
  ensure_tables();
  if (!ilb.empty() && ilb.size() != *ni) {
    throw input_error(".ilb lists " + std::to_string(ilb.size()) + " names, expected " + std::to_string(*ni));
  }
  if (!ob.empty() && ob.size() != *no) {
    throw input_error(".ob lists " + std::to_string(ob.size()) + " names, expected " + std::to_string(*no));
  }
  return boolean_function(*ni, std::move(ones), std::move(ilb), std::move(ob));
}

/// Full truth table, one cube per minterm.
inline std::string pla_write(const boolean_function& f) {
  std::ostringstream os;
  os << ".i " << f.num_inputs() << "\n.o " << f.num_outputs() << "\n.ilb";
  for (const auto& n : f.input_names()) {
    os << ' ' << n;
  }
  os << "\n.ob";
  for (const auto& n : f.output_names()) {
    os << ' ' << n;
  }
  os << "\n.p " << f.num_rows() << '\n';
  for (std::uint64_t r = 0; r < f.num_rows(); ++r) {
    for (std::size_t j = 0; j < f.num_inputs(); ++j) {
      os << (((r >> j) & 1U) != 0 ? '1' : '0');
    }
    os << ' ';
    for (std::size_t o = 0; o < f.num_outputs(); ++o) {
      os << (f.value(r, o) ? '1' : '0');
    }
    os << '\n';
  }
  os << ".e\n";
  return os.str();
}

}  // namespace revguard::io
