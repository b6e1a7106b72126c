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

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "revguard/bits.hpp"
#include "revguard/errors.hpp"

namespace revguard {

/// Dense truth tables stop here unless the caller opts in.
inline constexpr std::size_t default_input_cap = 20;
inline constexpr std::size_t hard_input_cap = 30;

struct literal {
  std::size_t var = 0;
  bool positive = true;
};
using product_term = std::vector<literal>;

struct output_pattern_stats {
  std::uint64_t max_multiplicity = 0;
  std::map<bit_vector, std::uint64_t> histogram;
};

/// Completely specified multi-output Boolean function stored column-wise:
/// column(o)[row] is output o for the input assignment whose bit i is input i.
class boolean_function {
 public:
  boolean_function(std::size_t num_inputs, std::vector<bit_vector> columns,
                   std::vector<std::string> input_names = {}, std::vector<std::string> output_names = {},
                   bool allow_large = false)
      : num_inputs_(num_inputs), columns_(std::move(columns)) {
    if (num_inputs_ > hard_input_cap || (num_inputs_ > default_input_cap && !allow_large)) {
      throw input_error("function has " + std::to_string(num_inputs_) + " inputs; the cap is " +
                        std::to_string(allow_large ? hard_input_cap : default_input_cap));
    }
    for (const auto& col : columns_) {
      if (col.size() != num_rows()) {
        throw input_error("truth table column has " + std::to_string(col.size()) + " rows, expected " +
                          std::to_string(num_rows()));
      }
    }
    input_names_ = input_names.empty() ? numbered("x", num_inputs_) : std::move(input_names);
    output_names_ = output_names.empty() ? numbered("y", columns_.size()) : std::move(output_names);
    if (input_names_.size() != num_inputs_ || output_names_.size() != columns_.size()) {
      throw input_error("name list length does not match the function arity");
    }
    std::set<std::string> ins(input_names_.begin(), input_names_.end());
    std::set<std::string> outs(output_names_.begin(), output_names_.end());
    if (ins.size() != input_names_.size() || outs.size() != output_names_.size()) {
      throw input_error("input and output names must be unique");
    }
  }

  /// Builds the table by calling `row_fn(row)` for every assignment.
  static boolean_function from_rows(std::size_t num_inputs, std::size_t num_outputs,
                                     const std::function<bit_vector(std::uint64_t)>& row_fn,
                                     std::vector<std::string> input_names = {},
                                     std::vector<std::string> output_names = {}, bool allow_large = false) {
    if (num_inputs > hard_input_cap || (num_inputs > default_input_cap && !allow_large)) {
      throw input_error("function has " + std::to_string(num_inputs) + " inputs; over the cap");
    }
    const std::uint64_t rows = std::uint64_t{1} << num_inputs;
    std::vector<bit_vector> cols(num_outputs, bit_vector(rows));
    for (std::uint64_t r = 0; r < rows; ++r) {
      bit_vector out = row_fn(r);
      if (out.size() != num_outputs) {
        throw input_error("row function returned the wrong number of outputs");
      }
      for (std::size_t o = 0; o < num_outputs; ++o) {
        cols[o][r] = out[o];
      }
    }
    return boolean_function(num_inputs, std::move(cols), std::move(input_names), std::move(output_names),
                            allow_large);
  }

  std::size_t num_inputs() const noexcept { return num_inputs_; }
  std::size_t num_outputs() const noexcept { return columns_.size(); }
  std::uint64_t num_rows() const noexcept { return std::uint64_t{1} << num_inputs_; }
  const std::vector<std::string>& input_names() const noexcept { return input_names_; }
  const std::vector<std::string>& output_names() const noexcept { return output_names_; }
  const std::vector<bit_vector>& columns() const noexcept { return columns_; }
  const bit_vector& column(std::size_t output) const { return columns_.at(output); }

  bool value(std::uint64_t row, std::size_t output) const { return columns_[output][row]; }

  bit_vector row(std::uint64_t r) const {
    bit_vector out(num_outputs());
    for (std::size_t o = 0; o < num_outputs(); ++o) {
      out[o] = columns_[o][r];
    }
    return out;
  }

  /// Whether output `o` depends on input `var`.
  bool depends_on(std::size_t output, std::size_t var) const {
    const auto& col = columns_[output];
    const std::uint64_t bit = std::uint64_t{1} << var;
    for (std::uint64_t r = 0; r < num_rows(); ++r) {
      if ((r & bit) == 0 && col[r] != col[r | bit]) {
        return true;
      }
    }
    return false;
  }

  friend bool operator==(const boolean_function&, const boolean_function&) = default;

 private:
  static std::vector<std::string> numbered(const char* prefix, std::size_t count) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < count; ++i) {
      names.push_back(prefix + std::to_string(i + 1));
    }
    return names;
  }

  std::size_t num_inputs_;
  std::vector<bit_vector> columns_;
  std::vector<std::string> input_names_;
  std::vector<std::string> output_names_;
};

inline std::uint64_t assignment_index(const bit_vector& input) {
  return bits_to_word(input);
}

inline bit_vector evaluate(const boolean_function& f, const bit_vector& input) {
  if (input.size() != f.num_inputs()) {
    throw input_error("input width " + std::to_string(input.size()) + " does not match " +
                      std::to_string(f.num_inputs()) + " function inputs");
  }
  return f.row(assignment_index(input));
}

inline output_pattern_stats pattern_stats(const boolean_function& f) {
  output_pattern_stats stats;
  for (std::uint64_t r = 0; r < f.num_rows(); ++r) {
    auto& count = stats.histogram[f.row(r)];
    ++count;
    stats.max_multiplicity = std::max(stats.max_multiplicity, count);
  }
  return stats;
}

inline bool term_satisfied(const product_term& term, std::uint64_t row) {
  return std::all_of(term.begin(), term.end(), [row](const literal& lit) {
    return (((row >> lit.var) & 1U) != 0) == lit.positive;
  });
}

/// Single-output sum of products over `num_vars` variables.
inline boolean_function from_expression_terms(std::size_t num_vars, const std::vector<product_term>& terms) {
  for (const auto& term : terms) {
    for (const auto& lit : term) {
      if (lit.var >= num_vars) {
        throw input_error("term references variable " + std::to_string(lit.var) + " of " +
                          std::to_string(num_vars));
      }
    }
  }
  if (num_vars > default_input_cap) {
    throw input_error("too many variables for a dense truth table");
  }
  bit_vector col(std::uint64_t{1} << num_vars);
  for (std::uint64_t r = 0; r < col.size(); ++r) {
    col[r] = std::any_of(terms.begin(), terms.end(), [r](const product_term& t) { return term_satisfied(t, r); });
  }
  return boolean_function(num_vars, {std::move(col)}, {}, {"f"});
}

}  // namespace revguard
