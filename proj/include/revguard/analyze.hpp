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
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "revguard/catalog.hpp"
#include "revguard/circuit.hpp"
#include "revguard/errors.hpp"
#include "revguard/synth_bdd.hpp"

namespace revguard {

using big_int = boost::multiprecision::cpp_int;

inline big_int binomial(std::size_t n, std::size_t k) {
  if (k > n) {
    return 0;
  }
  k = std::min(k, n - k);
  big_int result = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

inline big_int pow2(std::size_t e) {
  big_int v = 1;
  v <<= e;
  return v;
}

/// Functions embeddable in one output driven by k otherwise unclaimed inputs:
/// any j of them may be ancillas, each fixed to 0 or 1.
inline big_int embeddings_per_output(std::size_t k) {
  big_int total = 0;
  for (std::size_t j = 0; j <= k; ++j) {
    total += binomial(k, j) * pow2(j);
  }
  return total;
}

struct embedding_count {
  big_int value;
  big_int output_combinations;  // 2^r - 1 (black box) or 2^q (with synthesis knowledge)
  std::vector<big_int> factors;  // e(k_i) per output, or s per unresolved ancilla
};

/// (2^r - 1) * prod e(k_i).
inline embedding_count blackbox_formula(std::size_t r, const std::vector<std::size_t>& k_list) {
  embedding_count c;
  c.output_combinations = pow2(r) - 1;
  c.value = c.output_combinations;
  for (std::size_t k : k_list) {
    c.factors.push_back(embeddings_per_output(k));
    c.value *= c.factors.back();
  }
  return c;
}

/// Lines never targeted by any gate; their output equals their input.
inline std::set<std::size_t> passthrough_lines(const reversible_circuit& circuit) {
  std::vector<bool> targeted(circuit.width(), false);
  for (const auto& g : circuit.gates()) {
    if (g.target() < targeted.size()) {
      targeted[g.target()] = true;
    }
  }
  std::set<std::size_t> out;
  for (std::size_t i = 0; i < circuit.width(); ++i) {
    if (!targeted[i]) {
      out.insert(i);
    }
  }
  return out;
}

/// Structural backward cone of influence of output `line`.
inline std::set<std::size_t> output_cone(const reversible_circuit& circuit, std::size_t line) {
  if (line >= circuit.width()) {
    throw input_error("line " + std::to_string(line) + " out of range");
  }
  std::vector<bool> in_cone(circuit.width(), false);
  in_cone[line] = true;
  for (auto it = circuit.gates().rbegin(); it != circuit.gates().rend(); ++it) {
    if (it->target() < in_cone.size() && in_cone[it->target()]) {
      for (const auto& c : it->controls()) {
        in_cone.at(c.line) = true;
      }
    }
  }
  std::set<std::size_t> out;
  for (std::size_t i = 0; i < in_cone.size(); ++i) {
    if (in_cone[i]) {
      out.insert(i);
    }
  }
  return out;
}

struct support_profile {
  std::vector<std::size_t> output_lines;
  std::vector<std::set<std::size_t>> supports;
  std::vector<std::size_t> k_list;
  std::vector<std::size_t> m_list;
  std::size_t union_size = 0;
};

/// k_i counts inputs in the cone of output i that no earlier output reaches.
inline support_profile support_profile_of(const reversible_circuit& circuit, const std::vector<std::size_t>& outputs) {
  support_profile p;
  std::set<std::size_t> seen;
  for (std::size_t line : outputs) {
    auto cone = output_cone(circuit, line);
    std::size_t novel = 0;
    for (std::size_t in : cone) {
      if (seen.insert(in).second) {
        ++novel;
      }
    }
    p.output_lines.push_back(line);
    p.m_list.push_back(cone.size());
    p.k_list.push_back(novel);
    p.supports.push_back(std::move(cone));
  }
  p.union_size = seen.size();
  return p;
}

namespace detail {
inline std::optional<double> leaked_ratio(const reversible_circuit& circuit, const std::set<std::size_t>& leaked) {
  const auto& ann = circuit.annotations();
  if (!ann) {
    return std::nullopt;
  }
  const auto garbage = static_cast<std::size_t>(
      std::count_if(ann->begin(), ann->end(), [](const line_annotation& a) { return a.garbage; }));
  if (garbage == 0) {
    return std::nullopt;
  }
  return static_cast<double>(leaked.size()) / static_cast<double>(garbage);
}
}  // namespace detail

struct blackbox_result {
  embedding_count embeddings;
  support_profile profile;
  std::set<std::size_t> leaked_garbage;
  std::optional<double> pct_garbage_leaked;  // needs output annotations
};

/// Attack without knowledge of the synthesis method: leaked passthrough
/// outputs are discarded, every other output may be primary or garbage and
/// every input in its cone may be an ancilla of either value.
inline blackbox_result count_embeddings_blackbox(const reversible_circuit& circuit) {
  blackbox_result result;
  result.leaked_garbage = passthrough_lines(circuit);
  std::vector<std::size_t> remaining;
  for (std::size_t i = 0; i < circuit.width(); ++i) {
    if (result.leaked_garbage.count(i) == 0) {
      remaining.push_back(i);
    }
  }
  if (remaining.empty()) {
    throw degenerate_circuit("every output is a passthrough line; nothing left to embed");
  }
  result.profile = support_profile_of(circuit, remaining);
  result.embeddings = blackbox_formula(remaining.size(), result.profile.k_list);
  if (auto ratio = detail::leaked_ratio(circuit, result.leaked_garbage)) {
    result.pct_garbage_leaked = 100.0 * *ratio;
  }
  return result;
}

struct attack_partition {
  std::size_t gate_begin = 0;
  std::size_t gate_end = 0;
  std::optional<std::string> template_id;  // empty: UNMATCHED
  std::vector<std::string> candidates;      // every template matching the span
  std::optional<std::size_t> result_line;
  std::set<bool> ancilla_values;            // distinct init values among candidates
};

struct attack_report {
  std::size_t width = 0;
  bool degenerate = false;
  std::set<std::size_t> leaked_garbage;
  std::optional<double> pct_garbage_leaked;
  std::set<std::size_t> assumed_primary_inputs;
  std::set<std::size_t> candidate_ancillas;
  std::map<std::size_t, bool> recovered_ancillas;
  std::map<std::size_t, std::size_t> unresolved_ancillas;  // line -> number of possible values
  std::set<std::size_t> definite_primary_outputs;
  std::set<std::size_t> potential_primary_outputs;
  std::vector<attack_partition> partitions;
  embedding_count embeddings;
};

/// Attack with knowledge of BDD-based synthesis and its template catalog.
inline attack_report attack_bdd(const reversible_circuit& circuit, const template_catalog& catalog) {
  detail::require_valid_gates(circuit);
  attack_report report;
  report.width = circuit.width();
  report.leaked_garbage = passthrough_lines(circuit);
  report.assumed_primary_inputs = report.leaked_garbage;
  for (std::size_t i = 0; i < circuit.width(); ++i) {
    if (report.leaked_garbage.count(i) == 0) {
      report.candidate_ancillas.insert(i);
    }
  }
  if (auto ratio = detail::leaked_ratio(circuit, report.leaked_garbage)) {
    report.pct_garbage_leaked = 100.0 * *ratio;
  }
  const auto& gates = circuit.gates();
  if (gates.empty()) {
    report.degenerate = true;
    report.embeddings.value = 0;
    return report;
  }

  // Greedy leftmost-longest partition; ties go to catalog order.
  std::size_t i = 0;
  while (i < gates.size()) {
    std::span<const toffoli_gate> rest(gates.data() + i, gates.size() - i);
    std::size_t best_len = 0;
    for (const auto& t : catalog.templates) {
      if (t.pattern.size() > best_len && match_template(t, rest)) {
        best_len = t.pattern.size();
      }
    }
    if (best_len == 0) {
      if (!report.partitions.empty() && !report.partitions.back().template_id &&
          report.partitions.back().gate_end == i) {
        report.partitions.back().gate_end = i + 1;
      } else {
        attack_partition p;
        p.gate_begin = i;
        p.gate_end = i + 1;
        report.partitions.push_back(std::move(p));
      }
      ++i;
      continue;
    }
    attack_partition p;
    p.gate_begin = i;
    p.gate_end = i + best_len;
    for (const auto& t : catalog.templates) {
      if (t.pattern.size() != best_len) {
        continue;
      }
      if (auto binding = match_template(t, rest)) {
        if (!p.template_id) {
          p.template_id = t.id;
          p.result_line = (*binding)[static_cast<int>(role::result)];
        }
        p.candidates.push_back(t.id);
        p.ancilla_values.insert(t.ancilla_init.value());
      }
    }
    report.partitions.push_back(std::move(p));
    i += best_len;
  }

  big_int unresolved_product = 1;
  std::vector<big_int> factors;
  for (std::size_t line : report.candidate_ancillas) {
    const attack_partition* first = nullptr;
    for (const auto& p : report.partitions) {
      const bool targets = p.template_id ? p.result_line == line
                                         : std::any_of(gates.begin() + static_cast<std::ptrdiff_t>(p.gate_begin),
                                                       gates.begin() + static_cast<std::ptrdiff_t>(p.gate_end),
                                                       [line](const toffoli_gate& g) { return g.target() == line; });
      if (targets) {
        first = &p;
        break;
      }
    }
    if (first != nullptr && first->template_id && first->ancilla_values.size() == 1) {
      report.recovered_ancillas[line] = *first->ancilla_values.begin();
    } else {
      const std::size_t s = (first != nullptr && first->template_id) ? first->ancilla_values.size() : 2;
      report.unresolved_ancillas[line] = s;
      factors.emplace_back(s);
      unresolved_product *= s;
    }
  }

  report.definite_primary_outputs.insert(gates.back().target());
  for (std::size_t line : report.candidate_ancillas) {
    if (report.definite_primary_outputs.count(line) == 0) {
      report.potential_primary_outputs.insert(line);
    }
  }
  report.embeddings.output_combinations = pow2(report.potential_primary_outputs.size());
  report.embeddings.factors = std::move(factors);
  report.embeddings.value = report.embeddings.output_combinations * unresolved_product;
  return report;
}

struct attack_scorecard {
  std::size_t true_ancillas = 0;
  std::size_t recovered_correct = 0;
  std::size_t recovered_wrong = 0;
  std::size_t unresolved = 0;
  double pct_ancilla_recovered = 0.0;
  bool primary_outputs_covered = false;
  double partition_agreement = 0.0;
};

/// Compares an attack report with synthesis ground truth. A recovered value
/// that contradicts the truth counts as wrong, not as unresolved.
inline attack_scorecard score_attack(const attack_report& report, const synthesis_record& record) {
  if (record.lines.size() != report.width) {
    throw input_error("attack report and synthesis record describe circuits of different width");
  }
  attack_scorecard card;
  for (std::size_t line = 0; line < record.lines.size(); ++line) {
    const auto& truth = record.lines[line].constant;
    if (!truth) {
      continue;
    }
    ++card.true_ancillas;
    if (auto it = report.recovered_ancillas.find(line); it != report.recovered_ancillas.end()) {
      if (it->second == *truth) {
        ++card.recovered_correct;
      } else {
        ++card.recovered_wrong;
      }
    } else {
      ++card.unresolved;
    }
  }
  card.pct_ancilla_recovered =
      card.true_ancillas == 0 ? 100.0
                              : 100.0 * static_cast<double>(card.recovered_correct) / static_cast<double>(card.true_ancillas);
  card.primary_outputs_covered = true;
  for (std::size_t line = 0; line < record.lines.size(); ++line) {
    if (record.lines[line].garbage) {
      continue;
    }
    if (report.definite_primary_outputs.count(line) == 0 && report.potential_primary_outputs.count(line) == 0) {
      card.primary_outputs_covered = false;
    }
  }
  std::size_t agree = 0;
  for (const auto& truth : record.partitions) {
    for (const auto& p : report.partitions) {
      if (p.gate_begin == truth.gate_begin && p.gate_end == truth.gate_end) {
        ++agree;
        break;
      }
    }
  }
  card.partition_agreement =
      record.partitions.empty() ? 100.0
                                : 100.0 * static_cast<double>(agree) / static_cast<double>(record.partitions.size());
  return card;
}

}  // namespace revguard
