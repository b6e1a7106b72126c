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

#include <algorithm>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "revguard/synth_bdd.hpp"
#include "suite.hpp"

using namespace revguard;

namespace {

void expect_reproduces(const boolean_function& f, const bdd_synthesis_result& r) {
  for (std::uint64_t a = 0; a < f.num_rows(); ++a) {
    ASSERT_EQ(run_synthesized(r, a), f.row(a)) << "assignment " << a;
  }
  const auto problems = check_structure(r);
  EXPECT_TRUE(problems.empty()) << problems.front();
  EXPECT_TRUE(validate(r.circuit).empty());
}

}  // namespace

TEST(synth_bdd, and_gate) {
  const auto r = synthesize_bdd(from_expression_terms(2, {{{0, true}, {1, true}}}));
  ASSERT_EQ(r.circuit.width(), 3U);
  ASSERT_EQ(r.circuit.num_gates(), 1U);
  EXPECT_EQ(r.circuit.gates()[0], toffoli_gate({pos(0), pos(1)}, 2));
  EXPECT_EQ(r.record.lines[2].constant, std::optional<bool>(false));
  EXPECT_EQ(r.record.output_lines, std::vector<std::size_t>{2});
  EXPECT_FALSE(r.record.lines[2].garbage);
  EXPECT_TRUE(r.record.lines[0].garbage);
}

TEST(synth_bdd, identity_is_passthrough) {
  const auto r = synthesize_bdd(from_expression_terms(1, {{{0, true}}}));
  EXPECT_EQ(r.circuit.width(), 1U);
  EXPECT_EQ(r.circuit.num_gates(), 0U);
  EXPECT_EQ(r.record.output_lines, std::vector<std::size_t>{0});
}

TEST(synth_bdd, all_two_input_functions) {
  for (unsigned tt = 0; tt < 16; ++tt) {
    bit_vector col(4, tt);
    const boolean_function f(2, {col});
    expect_reproduces(f, synthesize_bdd(f));
  }
}

TEST(synth_bdd, seeded_suite_both_modes) {
  for (std::uint64_t i = 0; i < fixtures::suite_size; ++i) {
    const auto f = fixtures::suite_function(i);
    expect_reproduces(f, synthesize_bdd(f));
    expect_reproduces(f, synthesize_bdd(f, {{}, true, i}));
  }
}

TEST(synth_bdd, custom_orders) {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 50; ++t) {
    const auto f = fixtures::suite_function(static_cast<std::uint64_t>(t));
    std::vector<std::size_t> order(f.num_inputs());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    const auto r = synthesize_bdd(f, {order, t % 2 == 0, rng()});
    expect_reproduces(f, r);
    EXPECT_EQ(r.record.order, order);
  }
}

TEST(synth_bdd, constant_outputs) {
  bit_vector ones(8);
  ones.set();
  const boolean_function f(3, {bit_vector(8), ones});
  const auto r = synthesize_bdd(f);
  expect_reproduces(f, r);
  EXPECT_EQ(r.record.partitions.size(), 2U);
}

TEST(synth_bdd, shared_root_gets_copy) {
  const auto x = from_expression_terms(2, {{{0, true}, {1, true}}});
  const boolean_function f(2, {x.column(0), x.column(0)});
  const auto r = synthesize_bdd(f);
  expect_reproduces(f, r);
  EXPECT_NE(r.record.output_lines[0], r.record.output_lines[1]);
  EXPECT_EQ(r.record.partitions.back().template_id, "VARIABLE_COPY");
}

TEST(synth_bdd, partitions_replay_to_recorded_templates) {
  const auto cat = catalog_default(false);
  for (std::uint64_t i = 0; i < 100; ++i) {
    const auto f = fixtures::suite_function(i);
    const auto r = synthesize_bdd(f);
    std::span<const toffoli_gate> gates(r.circuit.gates());
    for (const auto& p : r.record.partitions) {
      const auto span = gates.subspan(p.gate_begin, p.gate_end - p.gate_begin);
      std::string first;
      for (const auto& t : cat.templates) {
        if (t.pattern.size() == span.size() && match_template(t, span)) {
          first = t.id;
          break;
        }
      }
      EXPECT_EQ(first, p.template_id);
    }
  }
}

TEST(synth_bdd, template_follows_shape_without_complement_mode) {
  const auto cat = catalog_default(false);
  for (std::uint64_t i = 0; i < 50; ++i) {
    const auto r = synthesize_bdd(fixtures::suite_function(i));
    for (const auto& p : r.record.partitions) {
      const auto* t = cat.find(p.template_id);
      ASSERT_NE(t, nullptr);
      EXPECT_EQ(cat.select(t->shape, t->copy_variant, false, false, false), t);
    }
  }
}

TEST(synth_bdd, ground_truth_annotations) {
  const auto f = fixtures::four_minterm_function();
  const auto r = synthesize_bdd(f);
  for (std::size_t l = 0; l < r.circuit.width(); ++l) {
    EXPECT_EQ(r.record.lines[l].constant.has_value(), l >= f.num_inputs());
  }
  EXPECT_EQ(r.circuit.annotations(), std::optional(r.record.lines));
}

TEST(synth_bdd, deterministic_under_seed) {
  const auto f = fixtures::suite_function(3);
  const auto a = synthesize_bdd(f, {{}, true, 99});
  const auto b = synthesize_bdd(f, {{}, true, 99});
  EXPECT_EQ(a.circuit, b.circuit);
  EXPECT_EQ(a.record, b.record);
}

TEST(synth_bdd, complement_mode_uses_init_one_siblings) {
  std::size_t flipped = 0;
  for (std::uint64_t i = 0; i < fixtures::suite_size; ++i) {
    const auto r = synthesize_bdd(fixtures::suite_function(i), {{}, true, i});
    for (const auto& a : r.record.lines) {
      flipped += a.constant == std::optional<bool>(true) ? 1 : 0;
    }
  }
  EXPECT_GT(flipped, 0U);
}
