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
#include <bit>
#include <cstddef>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <boost/random/uniform_int_distribution.hpp>

#include "revguard/circuit.hpp"
#include "revguard/errors.hpp"
#include "revguard/function.hpp"

namespace revguard {

/// Widest permutation the embedding front end will materialize.
inline constexpr std::size_t max_embedding_width = 20;

/// ceil(log2(m)) for the largest output-pattern multiplicity m.
inline std::size_t min_garbage(const boolean_function& f) {
  const std::uint64_t m = pattern_stats(f).max_multiplicity;
  std::size_t g = 0;
  while ((std::uint64_t{1} << g) < m) {
    ++g;
  }
  return g;
}

enum class ancilla_mode : std::uint8_t { zero, one, seeded };
enum class dont_care_policy : std::uint8_t { first_free, seeded };

struct embed_options {
  ancilla_mode ancillas = ancilla_mode::zero;
  dont_care_policy policy = dont_care_policy::first_free;
  std::uint64_t seed = 0;
};

/// Bijection on [0, 2^width) plus the roles of its lines. Lines
/// [0, num_primary_inputs) are the function inputs, the rest ancillas;
/// lines [0, num_primary_outputs) carry the function outputs, the rest garbage.
struct reversible_spec {
  std::size_t width = 0;
  std::vector<std::uint64_t> permutation;
  std::vector<line_annotation> annotations;
  std::size_t num_primary_inputs = 0;
  std::size_t num_primary_outputs = 0;

  std::size_t num_ancillas() const noexcept { return width - num_primary_inputs; }
  std::size_t num_garbage() const noexcept { return width - num_primary_outputs; }

  std::uint64_t ancilla_word() const {
    std::uint64_t word = 0;
    for (std::size_t i = num_primary_inputs; i < width; ++i) {
      if (annotations[i].constant.value_or(false)) {
        word |= std::uint64_t{1} << i;
      }
    }
    return word;
  }

  std::vector<std::string> line_names() const {
    std::vector<std::string> names;
    for (const auto& a : annotations) {
      names.push_back(a.input_name);
    }
    return names;
  }
};

inline bool is_bijection(const std::vector<std::uint64_t>& image) {
  std::vector<bool> hit(image.size(), false);
  for (std::uint64_t v : image) {
    if (v >= image.size() || hit[v]) {
      return false;
    }
    hit[v] = true;
  }
  return true;
}

inline reversible_spec embed(const boolean_function& f, const embed_options& options = {}) {
  const std::size_t g = min_garbage(f);
  const std::size_t ni = f.num_inputs();
  const std::size_t no = f.num_outputs();
  const std::size_t n = std::max(ni, no + g);
  if (n > max_embedding_width) {
    throw input_error("embedding needs " + std::to_string(n) + " lines; the cap is " +
                      std::to_string(max_embedding_width));
  }
  if (n == 0) {
    throw input_error("cannot embed a function without inputs or outputs");
  }
  std::mt19937_64 rng(options.seed);
  boost::random::uniform_int_distribution<int> coin(0, 1);

  reversible_spec spec;
  spec.width = n;
  spec.num_primary_inputs = ni;
  spec.num_primary_outputs = no;

  std::set<std::string> taken(f.input_names().begin(), f.input_names().end());
  taken.insert(f.output_names().begin(), f.output_names().end());
  auto fresh = [&taken](const std::string& stem, std::size_t& counter) {
    std::string name;
    do {
      name = stem + std::to_string(++counter);
    } while (taken.count(name) != 0);
    taken.insert(name);
    return name;
  };
  std::size_t anc_counter = 0;
  std::size_t garbage_counter = 0;
  for (std::size_t i = 0; i < n; ++i) {
    line_annotation a;
    if (i < ni) {
      a.input_name = f.input_names()[i];
    } else {
      a.input_name = fresh("a", anc_counter);
      switch (options.ancillas) {
        case ancilla_mode::zero: a.constant = false; break;
        case ancilla_mode::one: a.constant = true; break;
        case ancilla_mode::seeded: a.constant = coin(rng) == 1; break;
      }
    }
    if (i < no) {
      a.output_name = f.output_names()[i];
      a.garbage = false;
    } else {
      a.output_name = fresh("g", garbage_counter);
      a.garbage = true;
    }
    spec.annotations.push_back(std::move(a));
  }

  const std::uint64_t size = std::uint64_t{1} << n;
  const std::uint64_t ancilla = spec.ancilla_word();
  const std::uint64_t garbage_values = std::uint64_t{1} << (n - no);
  spec.permutation.assign(size, 0);
  std::vector<bool> used(size, false);
  std::vector<bool> functional(size, false);
  std::vector<std::uint64_t> next_garbage(std::uint64_t{1} << no, 0);

  for (std::uint64_t x = 0; x < f.num_rows(); ++x) {
    std::uint64_t pattern = 0;
    for (std::size_t o = 0; o < no; ++o) {
      if (f.value(x, o)) {
        pattern |= std::uint64_t{1} << o;
      }
    }
    std::uint64_t code = 0;
    if (options.policy == dont_care_policy::first_free) {
      auto& gnext = next_garbage[pattern];
      while (used[(gnext << no) | pattern]) {
        ++gnext;
      }
      code = (gnext << no) | pattern;
    } else {
      std::vector<std::uint64_t> free;
      for (std::uint64_t gv = 0; gv < garbage_values; ++gv) {
        if (!used[(gv << no) | pattern]) {
          free.push_back((gv << no) | pattern);
        }
      }
      boost::random::uniform_int_distribution<std::size_t> pick(0, free.size() - 1);
      code = free[pick(rng)];
    }
    const std::uint64_t input = x | ancilla;
    spec.permutation[input] = code;
    used[code] = true;
    functional[input] = true;
  }

  std::vector<std::uint64_t> free_codes;
  for (std::uint64_t c = 0; c < size; ++c) {
    if (!used[c]) {
      free_codes.push_back(c);
    }
  }
  if (options.policy == dont_care_policy::seeded) {
    for (std::size_t i = free_codes.size(); i > 1; --i) {
      boost::random::uniform_int_distribution<std::size_t> pick(0, i - 1);
      std::swap(free_codes[i - 1], free_codes[pick(rng)]);
    }
  }
  std::size_t cursor = 0;
  for (std::uint64_t input = 0; input < size; ++input) {
    if (!functional[input]) {
      spec.permutation[input] = free_codes[cursor++];
    }
  }
  if (!is_bijection(spec.permutation)) {
    throw invariant_error("embedding is not a bijection");
  }
  return spec;
}

/// Evaluates the embedded function: primary inputs from `x`, ancillas at their
/// constants, primary outputs projected.
inline std::uint64_t embedded_output(const reversible_spec& spec, std::uint64_t x) {
  const std::uint64_t code = spec.permutation[x | spec.ancilla_word()];
  return code & ((std::uint64_t{1} << spec.num_primary_outputs) - 1);
}

/// A scrambled function together with what the designer keeps secret.
struct scrambled_function {
  boolean_function function;
  std::vector<bool> hidden_constants;           // values of the extra inputs
  std::vector<std::size_t> hidden_garbage;      // indices of the extra outputs
};

namespace detail {
inline std::string unused_name(const std::string& stem, std::size_t& counter, std::set<std::string>& taken) {
  std::string name;
  do {
    name = stem + std::to_string(++counter);
  } while (taken.count(name) != 0);
  taken.insert(name);
  return name;
}
}  // namespace detail

/// Appends `count` inputs e with secret constants v. f'(x, v) = f(x); for any
/// other e every output o is flipped by parity(x & S_o), S_o a seeded nonempty
/// subset of the original inputs. The first k extra inputs do not depend on
/// `count`, so a larger count extends a smaller one.
inline scrambled_function scramble_inputs(const boolean_function& f, std::size_t count, std::uint64_t seed) {
  if (count == 0) {
    throw input_error("scramble_inputs needs at least one extra input");
  }
  if (f.num_inputs() == 0) {
    throw input_error("scramble_inputs needs a function with inputs");
  }
  std::mt19937_64 rng(seed);
  boost::random::uniform_int_distribution<std::uint64_t> subset(1, f.num_rows() - 1);
  std::vector<std::uint64_t> parity_sets;
  for (std::size_t o = 0; o < f.num_outputs(); ++o) {
    parity_sets.push_back(f.num_inputs() == 0 ? 0 : subset(rng));
  }
  boost::random::uniform_int_distribution<int> coin(0, 1);
  std::vector<bool> constants;
  std::uint64_t v = 0;
  for (std::size_t j = 0; j < count; ++j) {
    constants.push_back(coin(rng) == 1);
    if (constants.back()) {
      v |= std::uint64_t{1} << j;
    }
  }

  std::set<std::string> taken(f.input_names().begin(), f.input_names().end());
  taken.insert(f.output_names().begin(), f.output_names().end());
  auto names = f.input_names();
  std::size_t counter = 0;
  for (std::size_t j = 0; j < count; ++j) {
    names.push_back(detail::unused_name("e", counter, taken));
  }
  const std::size_t ni = f.num_inputs();
  const std::uint64_t xmask = f.num_rows() - 1;
  auto scrambled = boolean_function::from_rows(
      ni + count, f.num_outputs(),
      [&](std::uint64_t row) {
        const std::uint64_t x = row & xmask;
        const bool off = (row >> ni) != v;
        bit_vector out = f.row(x);
        if (off) {
          for (std::size_t o = 0; o < out.size(); ++o) {
            if ((std::popcount(x & parity_sets[o]) & 1) != 0) {
              out.flip(o);
            }
          }
        }
        return out;
      },
      names, f.output_names());
  return {std::move(scrambled), std::move(constants), {}};
}

/// Appends `count` seeded outputs, each depending on every input and distinct
/// from all existing outputs. Prefix-consistent in `count` for a fixed seed.
inline scrambled_function scramble_outputs(const boolean_function& f, std::size_t count, std::uint64_t seed) {
  if (count == 0) {
    throw input_error("scramble_outputs needs at least one extra output");
  }
  if (f.num_inputs() == 0) {
    throw input_error("scramble_outputs needs a function with inputs");
  }
  std::mt19937_64 rng(seed);
  auto columns = f.columns();
  std::set<std::string> taken(f.input_names().begin(), f.input_names().end());
  taken.insert(f.output_names().begin(), f.output_names().end());
  auto out_names = f.output_names();
  std::size_t counter = 0;
  std::vector<std::size_t> hidden;
  constexpr int max_attempts = 100000;
  for (std::size_t j = 0; j < count; ++j) {
    bool placed = false;
    for (int attempt = 0; attempt < max_attempts && !placed; ++attempt) {
      bit_vector col(f.num_rows());
      for (std::uint64_t base = 0; base < f.num_rows(); base += 64) {
        const std::uint64_t word = rng();
        for (std::uint64_t k = 0; k < 64 && base + k < f.num_rows(); ++k) {
          col[base + k] = ((word >> k) & 1U) != 0;
        }
      }
      if (std::find(columns.begin(), columns.end(), col) != columns.end()) {
        continue;
      }
      boolean_function probe(f.num_inputs(), {col});
      bool full = true;
      for (std::size_t var = 0; var < f.num_inputs() && full; ++var) {
        full = probe.depends_on(0, var);
      }
      if (!full) {
        continue;
      }
      columns.push_back(std::move(col));
      out_names.push_back(detail::unused_name("h", counter, taken));
      hidden.push_back(columns.size() - 1);
      placed = true;
    }
    if (!placed) {
      throw input_error("could not find a distinct full-support extra output");
    }
  }
  boolean_function scrambled(f.num_inputs(), std::move(columns), f.input_names(), std::move(out_names));
  return {std::move(scrambled), {}, std::move(hidden)};
}

}  // namespace revguard
