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

#include <random>

#include <gtest/gtest.h>

#include "revguard/analyze.hpp"
#include "revguard/embed.hpp"
#include "suite.hpp"

using namespace revguard;

namespace {

// Inputs whose flip changes output `line` for some assignment.
std::set<std::size_t> semantic_cone(const reversible_circuit& c, std::size_t line) {
  std::set<std::size_t> out;
  for (std::size_t in = 0; in < c.width(); ++in) {
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << c.width()); ++x) {
      const auto a = simulate_word(c, x);
      const auto b = simulate_word(c, x ^ (std::uint64_t{1} << in));
      if (((a ^ b) >> line) & 1U) {
        out.insert(in);
        break;
      }
    }
  }
  return out;
}

big_int pow3(std::size_t k) {
  big_int v = 1;
  for (std::size_t i = 0; i < k; ++i) {
    v *= 3;
  }
  return v;
}

std::size_t ambiguous_instantiations(const synthesis_record& record) {
  const auto cat = catalog_default(record.complement_mode);
  std::size_t u = 0;
  for (const auto& p : record.partitions) {
    u += cat.find(p.template_id)->ambiguity_group ? 1 : 0;
  }
  return u;
}

}  // namespace

TEST(passthrough_lines, three_gate_has_none) { EXPECT_TRUE(passthrough_lines(fixtures::three_gate_circuit()).empty()); }

TEST(passthrough_lines, empty_circuit_is_all_lines) {
  EXPECT_EQ(passthrough_lines(reversible_circuit(3)), (std::set<std::size_t>{0, 1, 2}));
}

TEST(passthrough_lines, synthesized_inputs_pass_through) {
  for (std::uint64_t i = 0; i < 50; ++i) {
    const auto f = fixtures::suite_function(i);
    const auto pt = passthrough_lines(synthesize_bdd(f).circuit);
    for (std::size_t l = 0; l < f.num_inputs(); ++l) {
      EXPECT_EQ(pt.count(l), 1U);
    }
  }
}

TEST(output_cone, three_gate_first_output) {
  EXPECT_EQ(output_cone(fixtures::three_gate_circuit(), 0), (std::set<std::size_t>{0, 1, 2}));
  EXPECT_THROW(output_cone(fixtures::three_gate_circuit(), 3), input_error);
}

TEST(output_cone, passthrough_line_is_itself) {
  const reversible_circuit c(3, {toffoli_gate({pos(0)}, 1)});
  EXPECT_EQ(output_cone(c, 2), std::set<std::size_t>{2});
}

TEST(output_cone, contains_semantic_cone) {
  std::mt19937_64 rng(51);
  for (int t = 0; t < 200; ++t) {
    const std::size_t w = 1 + rng() % 8;
    const auto c = fixtures::random_circuit(rng, w, rng() % 12, false);
    for (std::size_t l = 0; l < w; ++l) {
      const auto structural = output_cone(c, l);
      for (std::size_t s : semantic_cone(c, l)) {
        EXPECT_EQ(structural.count(s), 1U);
      }
    }
  }
}

TEST(embeddings, e_of_k_is_three_to_the_k) {
  for (std::size_t k = 0; k <= 64; ++k) {
    EXPECT_EQ(embeddings_per_output(k), pow3(k)) << k;
  }
}

TEST(embeddings, three_gate_count) {
  const auto r = count_embeddings_blackbox(fixtures::three_gate_circuit());
  EXPECT_EQ(r.embeddings.value, 189);
  EXPECT_EQ(r.profile.k_list, (std::vector<std::size_t>{3, 0, 0}));
  EXPECT_EQ(r.profile.m_list, (std::vector<std::size_t>{3, 3, 2}));
  EXPECT_EQ(r.embeddings.output_combinations, 7);
  EXPECT_FALSE(r.pct_garbage_leaked.has_value());
}

TEST(embeddings, table_anchors) {
  EXPECT_EQ(blackbox_formula(3, {7, 0, 0}).value, 15309);
  EXPECT_EQ(blackbox_formula(3, {3, 2, 2}).value, 15309);
  EXPECT_EQ(blackbox_formula(1, {6}).value, 729);
}

TEST(embeddings, degenerate_when_all_outputs_leak) {
  EXPECT_THROW(count_embeddings_blackbox(reversible_circuit(2)), degenerate_circuit);
}

TEST(embeddings, closed_form_and_order_invariance) {
  std::mt19937_64 rng(52);
  for (int t = 0; t < 200; ++t) {
    const std::size_t w = 1 + rng() % 10;
    const auto c = fixtures::random_circuit(rng, w, 1 + rng() % 15, false);
    const auto r = count_embeddings_blackbox(c);
    const std::size_t rcount = r.profile.output_lines.size();
    big_int closed = (pow2(rcount) - 1) * pow3(r.profile.union_size);
    EXPECT_EQ(r.embeddings.value, closed);
    std::size_t sum = 0;
    for (std::size_t i = 0; i < rcount; ++i) {
      EXPECT_LE(r.profile.k_list[i], r.profile.m_list[i]);
      sum += r.profile.k_list[i];
    }
    EXPECT_EQ(sum, r.profile.union_size);
    auto reversed = r.profile.output_lines;
    std::reverse(reversed.begin(), reversed.end());
    EXPECT_EQ(blackbox_formula(rcount, support_profile_of(c, reversed).k_list).value, closed);
  }
}

TEST(embeddings, leaked_ratio_uses_annotations) {
  const auto r = synthesize_bdd(fixtures::four_minterm_function());
  const auto bb = count_embeddings_blackbox(r.circuit);
  ASSERT_TRUE(bb.pct_garbage_leaked.has_value());
  std::size_t garbage = 0;
  for (const auto& a : r.record.lines) {
    garbage += a.garbage ? 1 : 0;
  }
  EXPECT_DOUBLE_EQ(*bb.pct_garbage_leaked, 100.0 * 4.0 / static_cast<double>(garbage));
}

TEST(attack_bdd, four_minterm_without_complement_recovers_everything) {
  const auto r = synthesize_bdd(fixtures::four_minterm_function());
  const auto report = attack_bdd(r.circuit.with_annotations(std::nullopt), catalog_default(false));
  std::map<std::size_t, bool> truth;
  for (std::size_t l = 0; l < r.record.lines.size(); ++l) {
    if (r.record.lines[l].constant) {
      truth[l] = *r.record.lines[l].constant;
    }
  }
  EXPECT_EQ(report.recovered_ancillas, truth);
  EXPECT_TRUE(report.unresolved_ancillas.empty());
  EXPECT_EQ(report.embeddings.value, pow2(report.potential_primary_outputs.size()));
  const auto card = score_attack(report, r.record);
  EXPECT_DOUBLE_EQ(card.pct_ancilla_recovered, 100.0);
  EXPECT_TRUE(card.primary_outputs_covered);
  EXPECT_DOUBLE_EQ(card.partition_agreement, 100.0);
}

TEST(attack_bdd, four_minterm_one_ambiguous_node) {
  const auto f = fixtures::four_minterm_function();
  const auto r = synthesize_bdd(f, {{}, true, 0});
  ASSERT_EQ(ambiguous_instantiations(r.record), 1U);
  const auto report = attack_bdd(r.circuit.with_annotations(std::nullopt), catalog_default(true));
  ASSERT_EQ(report.unresolved_ancillas.size(), 1U);
  const auto cat = catalog_default(true);
  for (const auto& p : r.record.partitions) {
    if (cat.find(p.template_id)->ambiguity_group) {
      EXPECT_EQ(report.unresolved_ancillas.begin()->first, p.result_line);
    }
  }
  EXPECT_EQ(report.embeddings.value, pow2(report.potential_primary_outputs.size()) * 2);
  const auto card = score_attack(report, r.record);
  const double a = static_cast<double>(card.true_ancillas);
  EXPECT_DOUBLE_EQ(card.pct_ancilla_recovered, 100.0 * (a - 1) / a);
  EXPECT_EQ(card.recovered_wrong, 0U);
}

TEST(attack_bdd, suite_oracle_equivalence) {
  for (std::uint64_t i = 0; i < fixtures::suite_size; ++i) {
    const auto r = synthesize_bdd(fixtures::suite_function(i));
    const auto report = attack_bdd(r.circuit.with_annotations(std::nullopt), catalog_default(false));
    const auto card = score_attack(report, r.record);
    EXPECT_DOUBLE_EQ(card.pct_ancilla_recovered, 100.0) << i;
    EXPECT_TRUE(card.primary_outputs_covered) << i;
    EXPECT_DOUBLE_EQ(card.partition_agreement, 100.0) << i;
    ASSERT_EQ(report.partitions.size(), r.record.partitions.size());
    for (std::size_t p = 0; p < report.partitions.size(); ++p) {
      EXPECT_EQ(report.partitions[p].template_id, std::optional(r.record.partitions[p].template_id));
    }
  }
}

TEST(attack_bdd, complement_mode_formula) {
  for (std::uint64_t i = 0; i < fixtures::suite_size; ++i) {
    const auto r = synthesize_bdd(fixtures::suite_function(i), {{}, true, i});
    const auto report = attack_bdd(r.circuit.with_annotations(std::nullopt), catalog_default(true));
    const auto u = ambiguous_instantiations(r.record);
    EXPECT_EQ(report.embeddings.value, pow2(report.potential_primary_outputs.size()) * pow2(u)) << i;
    const auto card = score_attack(report, r.record);
    EXPECT_EQ(card.recovered_wrong, 0U) << i;
    EXPECT_EQ(card.unresolved, u) << i;
    EXPECT_TRUE(card.primary_outputs_covered) << i;
  }
}

TEST(attack_bdd, report_invariants) {
  for (std::uint64_t i = 0; i < 50; ++i) {
    const auto r = synthesize_bdd(fixtures::suite_function(i), {{}, i % 2 == 1, i});
    const auto report = attack_bdd(r.circuit, catalog_default(i % 2 == 1));
    std::set<std::size_t> covered;
    for (const auto& [l, v] : report.recovered_ancillas) {
      covered.insert(l);
    }
    for (const auto& [l, s] : report.unresolved_ancillas) {
      EXPECT_EQ(covered.count(l), 0U);
      covered.insert(l);
    }
    EXPECT_EQ(covered, report.candidate_ancillas);
    std::size_t cursor = 0;
    for (const auto& p : report.partitions) {
      EXPECT_EQ(p.gate_begin, cursor);
      EXPECT_LT(p.gate_begin, p.gate_end);
      cursor = p.gate_end;
    }
    EXPECT_EQ(cursor, r.circuit.num_gates());
  }
}

TEST(attack_bdd, passthrough_only_is_degenerate) {
  const auto report = attack_bdd(reversible_circuit(3), catalog_default());
  EXPECT_TRUE(report.degenerate);
  EXPECT_TRUE(report.partitions.empty());
  EXPECT_EQ(report.leaked_garbage.size(), 3U);
}

TEST(attack_bdd, unmatched_span_leaves_ancilla_unresolved) {
  // A three-control gate is not in the catalog.
  const reversible_circuit c(5, {toffoli_gate({pos(0), pos(1)}, 3), toffoli_gate({pos(0), pos(1), pos(2)}, 4)});
  const auto report = attack_bdd(c, catalog_default());
  ASSERT_EQ(report.partitions.size(), 2U);
  EXPECT_EQ(report.partitions[0].template_id, std::optional<std::string>("LOW_ZERO"));
  EXPECT_FALSE(report.partitions[1].template_id.has_value());
  EXPECT_EQ(report.recovered_ancillas.at(3), false);
  EXPECT_EQ(report.unresolved_ancillas.at(4), 2U);
  EXPECT_EQ(report.definite_primary_outputs, std::set<std::size_t>{4});
  EXPECT_EQ(report.embeddings.value, 2 * 2);
}

TEST(score_attack, wrong_values_are_counted_separately) {
  const auto r = synthesize_bdd(fixtures::four_minterm_function());
  const auto report = attack_bdd(r.circuit, catalog_default());
  auto lie = r.record;
  const auto first_ancilla = report.recovered_ancillas.begin()->first;
  lie.lines[first_ancilla].constant = !*lie.lines[first_ancilla].constant;
  const auto card = score_attack(report, lie);
  EXPECT_EQ(card.recovered_wrong, 1U);
  EXPECT_EQ(card.unresolved, 0U);
  EXPECT_LT(card.pct_ancilla_recovered, 100.0);
}

TEST(score_attack, mismatched_circuit_rejected) {
  const auto r = synthesize_bdd(fixtures::four_minterm_function());
  const auto report = attack_bdd(fixtures::three_gate_circuit(), catalog_default());
  EXPECT_THROW(score_attack(report, r.record), input_error);
}

TEST(scrambling, extra_inputs_raise_blackbox_count) {
  for (std::uint64_t i = 0; i < 50; ++i) {
    const auto f = fixtures::suite_function(i);
    big_int previous = count_embeddings_blackbox(synthesize_bdd(f).circuit).embeddings.value;
    for (std::size_t k = 1; k <= 3; ++k) {
      const auto s = scramble_inputs(f, k, i);
      const auto now = count_embeddings_blackbox(synthesize_bdd(s.function).circuit).embeddings.value;
      EXPECT_GT(now, previous) << i << " k=" << k;
      previous = now;
    }
  }
}

TEST(scrambling, extra_outputs_raise_potential_outputs) {
  for (std::uint64_t i = 0; i < 50; ++i) {
    const auto f = fixtures::suite_function(i);
    auto potential = [](const boolean_function& g) {
      return attack_bdd(synthesize_bdd(g).circuit, catalog_default()).potential_primary_outputs.size();
    };
    std::size_t previous = potential(f);
    for (std::size_t k = 1; k <= 3; ++k) {
      const std::size_t now = potential(scramble_outputs(f, k, i).function);
      EXPECT_GE(now, previous + 1) << i << " k=" << k;
      previous = now;
    }
  }
}
