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

#include <map>
#include <set>

#include <gtest/gtest.h>

#include "revguard/catalog.hpp"

using namespace revguard;

TEST(catalog, default_validates) {
  EXPECT_TRUE(validate_catalog(catalog_default(false)).empty());
  EXPECT_TRUE(validate_catalog(catalog_default(true)).empty());
}

TEST(catalog, ambiguity_groups_only_in_complement_mode) {
  EXPECT_EQ(ambiguity_group_count(catalog_default(false)), 0U);
  EXPECT_GE(ambiguity_group_count(catalog_default(true)), 1U);
}

TEST(catalog, general_selects_high) {
  const auto cat = catalog_default();
  const auto* t = cat.find("GENERAL");
  ASSERT_NE(t, nullptr);
  EXPECT_TRUE(simulate_pattern(t->pattern, true, false, true, false));
  EXPECT_FALSE(simulate_pattern(t->pattern, true, true, false, false));
  EXPECT_TRUE(simulate_pattern(t->pattern, false, true, false, false));
}

TEST(catalog, every_shape_covered) {
  const auto cat = catalog_default();
  for (auto k : {shape_kind::general, shape_kind::high_zero, shape_kind::high_one, shape_kind::low_zero,
                 shape_kind::low_one, shape_kind::variable, shape_kind::negated_variable, shape_kind::constant_zero,
                 shape_kind::constant_one}) {
    EXPECT_NE(cat.select(k, false, false, false, false), nullptr) << to_string(k);
  }
}

TEST(catalog, semantics_by_independent_simulation) {
  // Re-simulate each template on explicit lines and compare with its table.
  for (bool cm : {false, true}) {
    for (const auto& t : catalog_default(cm).templates) {
      if (!t.ancilla_init) {
        continue;
      }
      for (int a = 0; a < 8; ++a) {
        std::vector<toffoli_gate> gates = instantiate(t, {0, 1, 2, 3});
        std::uint64_t state = static_cast<std::uint64_t>(a) | (*t.ancilla_init ? 8U : 0U);
        for (const auto& g : gates) {
          state = apply_gate(state, g);
        }
        EXPECT_EQ(((state >> 3) & 1U) != 0, ((t.semantics >> a) & 1U) != 0) << t.id << " case " << a;
        EXPECT_EQ(state & 7U, static_cast<std::uint64_t>(a)) << t.id << " clobbered a role line";
      }
    }
  }
}

TEST(catalog, ambiguity_groups_share_pattern_and_differ_in_init) {
  std::map<std::string, std::vector<const gate_template*>> groups;
  const auto cat = catalog_default(true);
  for (const auto& t : cat.templates) {
    if (t.ambiguity_group) {
      groups[*t.ambiguity_group].push_back(&t);
    }
  }
  ASSERT_FALSE(groups.empty());
  for (const auto& [name, members] : groups) {
    std::set<bool> inits;
    for (const auto* m : members) {
      EXPECT_EQ(pattern_signature(m->pattern), pattern_signature(members.front()->pattern)) << name;
      inits.insert(m->ancilla_init.value());
    }
    EXPECT_EQ(inits.size(), members.size()) << name;
  }
}

TEST(catalog, injected_fault_is_reported) {
  auto cat = catalog_default();
  for (auto& t : cat.templates) {
    if (t.id == "HIGH_ONE") {
      t.semantics ^= 1;
    }
  }
  const auto d = validate_catalog(cat);
  ASSERT_FALSE(d.empty());
  EXPECT_EQ(d.front().template_id, "HIGH_ONE");
  EXPECT_NE(d.front().message.find("select=0 low=0 high=0"), std::string::npos) << d.front().message;
}

TEST(catalog, same_pattern_without_group_is_reported) {
  auto cat = catalog_default();
  auto copy = *cat.find("LOW_ZERO");
  copy.id = "LOW_ZERO_DUP";
  copy.ancilla_init = true;
  copy.semantics = static_cast<std::uint8_t>(~copy.semantics);
  cat.templates.push_back(copy);
  EXPECT_FALSE(validate_catalog(cat).empty());
}

TEST(match_template, instantiation_round_trip) {
  for (bool cm : {false, true}) {
    for (const auto& t : catalog_default(cm).templates) {
      if (t.pattern.empty()) {
        continue;
      }
      role_binding b{std::size_t{4}, std::size_t{1}, std::size_t{6}, std::size_t{2}};
      const auto gates = instantiate(t, b);
      const auto m = match_template(t, gates);
      ASSERT_TRUE(m.has_value()) << t.id;
      EXPECT_EQ((*m)[3], std::size_t{2}) << t.id;
      // symmetric patterns may bind roles the other way round
      EXPECT_EQ(instantiate(t, *m), gates) << t.id;
    }
  }
}

TEST(match_template, rejects_wrong_polarity_and_short_input) {
  const auto cat = catalog_default();
  const auto* t = cat.find("GENERAL");
  std::vector<toffoli_gate> gates{toffoli_gate({pos(0), pos(2)}, 3), toffoli_gate({pos(0), pos(1)}, 3)};
  EXPECT_FALSE(match_template(*t, gates).has_value());
  std::vector<toffoli_gate> one{toffoli_gate({pos(0), pos(2)}, 3)};
  EXPECT_FALSE(match_template(*t, one).has_value());
}
