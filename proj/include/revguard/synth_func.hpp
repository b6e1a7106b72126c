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
#include <functional>
#include <string>
#include <vector>

#include "revguard/circuit.hpp"
#include "revguard/embed.hpp"
#include "revguard/errors.hpp"

namespace revguard {

inline constexpr std::size_t max_permutation_width = 20;

struct permutation {
  std::size_t width = 0;
  std::vector<std::uint64_t> image;

  friend bool operator==(const permutation&, const permutation&) = default;
};

inline permutation identity_permutation(std::size_t width) {
  permutation p{width, std::vector<std::uint64_t>(std::uint64_t{1} << width)};
  for (std::uint64_t i = 0; i < p.image.size(); ++i) {
    p.image[i] = i;
  }
  return p;
}

inline void require_valid(const permutation& p) {
  if (p.width == 0 || p.width > max_permutation_width) {
    throw input_error("permutation width " + std::to_string(p.width) + " outside [1, " +
                      std::to_string(max_permutation_width) + "]");
  }
  if (p.image.size() != (std::uint64_t{1} << p.width) || !is_bijection(p.image)) {
    throw input_error("image is not a bijection on 2^" + std::to_string(p.width) + " codewords");
  }
}

/// Called after each input row is settled with the gates emitted so far (in
/// emission order) and the current output-side image.
using row_settled_hook = std::function<void(std::uint64_t row, const std::vector<std::uint64_t>& current)>;

/// Unidirectional transformation-based synthesis. Rows are settled in
/// ascending order; a row's image is moved to the row index by single-bit
/// flips in ascending bit order, 0->1 flips first (controlled by the current
/// 1-bits), then 1->0 flips (controlled by the 1-bits of the row index). Gates
/// are emitted on the output side, so the cascade is their reverse.
inline reversible_circuit synthesize_permutation(const permutation& perm, const row_settled_hook& hook = {}) {
  require_valid(perm);
  const std::size_t n = perm.width;
  std::vector<std::uint64_t> current = perm.image;
  std::vector<toffoli_gate> emitted;

  auto apply_everywhere = [&](const toffoli_gate& gate) {
    for (auto& v : current) {
      v = apply_gate(v, gate);
    }
  };
  auto controls_on = [n](std::uint64_t word, std::size_t skip) {
    std::vector<control> controls;
    for (std::size_t b = 0; b < n; ++b) {
      if (b != skip && ((word >> b) & 1U) != 0) {
        controls.push_back(pos(b));
      }
    }
    return controls;
  };

  for (std::uint64_t row = 0; row < current.size(); ++row) {
    if (current[row] != row) {
      for (std::size_t b = 0; b < n; ++b) {
        const std::uint64_t bit = std::uint64_t{1} << b;
        if ((row & bit) != 0 && (current[row] & bit) == 0) {
          toffoli_gate gate(controls_on(current[row], b), b);
          apply_everywhere(gate);
          emitted.push_back(std::move(gate));
        }
      }
      for (std::size_t b = 0; b < n; ++b) {
        const std::uint64_t bit = std::uint64_t{1} << b;
        if ((row & bit) == 0 && (current[row] & bit) != 0) {
          toffoli_gate gate(controls_on(row, b), b);
          apply_everywhere(gate);
          emitted.push_back(std::move(gate));
        }
      }
    }
    if (current[row] != row) {
      throw invariant_error("transformation-based synthesis failed to settle row " + std::to_string(row));
    }
    if (hook) {
      hook(row, current);
    }
  }
  return reversible_circuit(n, std::vector<toffoli_gate>(emitted.rbegin(), emitted.rend()));
}

inline permutation circuit_to_permutation(const reversible_circuit& circuit) {
  if (circuit.width() == 0 || circuit.width() > max_permutation_width) {
    throw input_error("circuit width " + std::to_string(circuit.width()) + " outside [1, " +
                      std::to_string(max_permutation_width) + "]");
  }
  detail::require_valid_gates(circuit);
  permutation p{circuit.width(), std::vector<std::uint64_t>(std::uint64_t{1} << circuit.width())};
  for (std::uint64_t x = 0; x < p.image.size(); ++x) {
    p.image[x] = simulate_word(circuit, x);
  }
  return p;
}

/// Functional synthesis of an embedded specification, annotations attached.
inline reversible_circuit synthesize_embedding(const reversible_spec& spec) {
  auto circuit = synthesize_permutation(permutation{spec.width, spec.permutation});
  return reversible_circuit(spec.width, circuit.gates(), spec.line_names(), spec.annotations);
}

}  // namespace revguard
