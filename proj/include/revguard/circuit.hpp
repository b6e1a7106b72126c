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
#include <initializer_list>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "revguard/bits.hpp"
#include "revguard/errors.hpp"

namespace revguard {

enum class polarity : std::uint8_t { positive, negative };

struct control {
  std::size_t line = 0;
  polarity pol = polarity::positive;

  friend bool operator==(const control&, const control&) = default;
  friend auto operator<=>(const control&, const control&) = default;
};

inline control pos(std::size_t line) { return {line, polarity::positive}; }
inline control neg(std::size_t line) { return {line, polarity::negative}; }

/// Multi-controlled Toffoli gate. Controls are kept sorted by line so that
/// two gates with the same control set compare equal.
class toffoli_gate {
 public:
  toffoli_gate() = default;
  toffoli_gate(std::vector<control> controls, std::size_t target)
      : controls_(std::move(controls)), target_(target) {
    std::sort(controls_.begin(), controls_.end());
  }
  toffoli_gate(std::initializer_list<control> controls, std::size_t target)
      : toffoli_gate(std::vector<control>(controls), target) {}

  const std::vector<control>& controls() const noexcept { return controls_; }
  std::size_t target() const noexcept { return target_; }
  std::size_t num_controls() const noexcept { return controls_.size(); }

  bool all_negative() const noexcept {
    return !controls_.empty() &&
           std::all_of(controls_.begin(), controls_.end(),
                       [](const control& c) { return c.pol == polarity::negative; });
  }

  bool controls_line(std::size_t line) const noexcept {
    return std::any_of(controls_.begin(), controls_.end(),
                       [line](const control& c) { return c.line == line; });
  }

  /// Whether the gate would flip its target for the given state.
  template <typename BitAt>
  bool fires(BitAt&& bit_at) const {
    for (const auto& c : controls_) {
      if (bit_at(c.line) != (c.pol == polarity::positive)) {
        return false;
      }
    }
    return true;
  }

  friend bool operator==(const toffoli_gate&, const toffoli_gate&) = default;

 private:
  std::vector<control> controls_;
  std::size_t target_ = 0;
};

/// Role of one circuit line on the input side (primary input or constant
/// ancilla) and on the output side (primary output or garbage).
struct line_annotation {
  std::string input_name;
  std::optional<bool> constant;
  std::string output_name;
  bool garbage = false;

  bool is_ancilla() const noexcept { return constant.has_value(); }
  bool is_primary_output() const noexcept { return !garbage; }

  friend bool operator==(const line_annotation&, const line_annotation&) = default;
};

inline std::vector<std::string> default_line_names(std::size_t width) {
  std::vector<std::string> names;
  names.reserve(width);
  for (std::size_t i = 0; i < width; ++i) {
    names.push_back("x" + std::to_string(i + 1));
  }
  return names;
}

/// Ordered cascade of Toffoli gates over `width` lines. Values are immutable;
/// the `with_*` members return modified copies.
class reversible_circuit {
 public:
  explicit reversible_circuit(std::size_t width, std::vector<toffoli_gate> gates = {},
                              std::vector<std::string> line_names = {},
                              std::optional<std::vector<line_annotation>> annotations = std::nullopt)
      : width_(width),
        gates_(std::move(gates)),
        line_names_(line_names.empty() ? default_line_names(width) : std::move(line_names)),
        annotations_(std::move(annotations)) {}

  std::size_t width() const noexcept { return width_; }
  const std::vector<toffoli_gate>& gates() const noexcept { return gates_; }
  std::size_t num_gates() const noexcept { return gates_.size(); }
  const std::vector<std::string>& line_names() const noexcept { return line_names_; }
  const std::optional<std::vector<line_annotation>>& annotations() const noexcept {
    return annotations_;
  }

  reversible_circuit with_gates(std::vector<toffoli_gate> gates) const {
    return reversible_circuit(width_, std::move(gates), line_names_, annotations_);
  }
  reversible_circuit with_annotations(std::optional<std::vector<line_annotation>> annotations) const {
    return reversible_circuit(width_, gates_, line_names_, std::move(annotations));
  }
  reversible_circuit with_line_names(std::vector<std::string> names) const {
    return reversible_circuit(width_, gates_, std::move(names), annotations_);
  }

  friend bool operator==(const reversible_circuit&, const reversible_circuit&) = default;

 private:
  std::size_t width_;
  std::vector<toffoli_gate> gates_;
  std::vector<std::string> line_names_;
  std::optional<std::vector<line_annotation>> annotations_;
};

struct diagnostic {
  std::optional<std::size_t> gate_index;
  std::string reason;
};

/// Problems with a single gate against a circuit of the given width.
inline std::vector<std::string> gate_problems(const toffoli_gate& gate, std::size_t width) {
  std::vector<std::string> problems;
  if (gate.target() >= width) {
    problems.push_back("target line " + std::to_string(gate.target()) + " out of range");
  }
  std::set<std::size_t> seen;
  for (const auto& c : gate.controls()) {
    if (c.line >= width) {
      problems.push_back("control line " + std::to_string(c.line) + " out of range");
    }
    if (c.line == gate.target()) {
      problems.push_back("target line " + std::to_string(c.line) + " is also a control");
    }
    if (!seen.insert(c.line).second) {
      problems.push_back("control line " + std::to_string(c.line) + " appears twice");
    }
  }
  return problems;
}

inline std::vector<diagnostic> validate(const reversible_circuit& circuit) {
  std::vector<diagnostic> out;
  if (circuit.width() == 0) {
    out.push_back({std::nullopt, "circuit width must be at least 1"});
  }
  for (std::size_t i = 0; i < circuit.num_gates(); ++i) {
    for (auto& problem : gate_problems(circuit.gates()[i], circuit.width())) {
      out.push_back({i, std::move(problem)});
    }
  }
  if (circuit.line_names().size() != circuit.width()) {
    out.push_back({std::nullopt, "line name count differs from width"});
  } else {
    std::set<std::string> names(circuit.line_names().begin(), circuit.line_names().end());
    if (names.size() != circuit.width()) {
      out.push_back({std::nullopt, "line names are not unique"});
    }
  }
  if (const auto& ann = circuit.annotations()) {
    if (ann->size() != circuit.width()) {
      out.push_back({std::nullopt, "annotation count differs from width"});
    }
    if (std::none_of(ann->begin(), ann->end(),
                     [](const line_annotation& a) { return a.is_primary_output(); })) {
      out.push_back({std::nullopt, "every output is garbage"});
    }
  }
  return out;
}

inline bit_vector apply_gate(bit_vector state, const toffoli_gate& gate) {
  if (auto problems = gate_problems(gate, state.size()); !problems.empty()) {
    throw input_error("invalid gate: " + problems.front());
  }
  if (gate.fires([&](std::size_t line) { return state[line]; })) {
    state.flip(gate.target());
  }
  return state;
}

/// Word-level gate application for circuits of width <= 64. No validation.
inline std::uint64_t apply_gate(std::uint64_t state, const toffoli_gate& gate) noexcept {
  if (gate.fires([state](std::size_t line) { return ((state >> line) & 1U) != 0; })) {
    state ^= std::uint64_t{1} << gate.target();
  }
  return state;
}

namespace detail {
inline void require_valid_gates(const reversible_circuit& circuit) {
  for (std::size_t i = 0; i < circuit.num_gates(); ++i) {
    if (auto problems = gate_problems(circuit.gates()[i], circuit.width()); !problems.empty()) {
      throw input_error("gate " + std::to_string(i) + ": " + problems.front());
    }
  }
}
}  // namespace detail

inline bit_vector simulate(const reversible_circuit& circuit, bit_vector state) {
  if (state.size() != circuit.width()) {
    throw input_error("input width " + std::to_string(state.size()) + " does not match circuit width " +
                      std::to_string(circuit.width()));
  }
  detail::require_valid_gates(circuit);
  for (const auto& gate : circuit.gates()) {
    if (gate.fires([&](std::size_t line) { return state[line]; })) {
      state.flip(gate.target());
    }
  }
  return state;
}

/// Runs the cascade right to left; every Toffoli gate is its own inverse.
inline bit_vector simulate_inverse(const reversible_circuit& circuit, bit_vector state) {
  if (state.size() != circuit.width()) {
    throw input_error("output width " + std::to_string(state.size()) + " does not match circuit width " +
                      std::to_string(circuit.width()));
  }
  detail::require_valid_gates(circuit);
  for (auto it = circuit.gates().rbegin(); it != circuit.gates().rend(); ++it) {
    if (it->fires([&](std::size_t line) { return state[line]; })) {
      state.flip(it->target());
    }
  }
  return state;
}

/// Fast path for width <= 64; the caller guarantees the circuit is valid.
inline std::uint64_t simulate_word(const reversible_circuit& circuit, std::uint64_t state) noexcept {
  for (const auto& gate : circuit.gates()) {
    state = apply_gate(state, gate);
  }
  return state;
}

/// 2^(c+1) - 3 for c >= 2 controls, plus 2 when every control is negative;
/// NOT and CNOT cost 1.
inline std::uint64_t gate_cost(const toffoli_gate& gate) {
  const std::size_t c = gate.num_controls();
  if (c <= 1) {
    return 1;
  }
  if (c > 61) {
    throw std::overflow_error("quantum cost of a gate with " + std::to_string(c) + " controls overflows");
  }
  std::uint64_t cost = (std::uint64_t{1} << (c + 1)) - 3;
  if (gate.all_negative()) {
    cost += 2;
  }
  return cost;
}

inline std::uint64_t quantum_cost(const reversible_circuit& circuit) {
  std::uint64_t total = 0;
  for (const auto& gate : circuit.gates()) {
    total += gate_cost(gate);
  }
  return total;
}

}  // namespace revguard
