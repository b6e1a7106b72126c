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
#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "revguard/bdd.hpp"
#include "revguard/circuit.hpp"

namespace revguard {

/// Placeholder lines a template is written against.
enum class role : std::uint8_t { select = 0, low = 1, high = 2, result = 3 };

struct pattern_control {
  role line = role::select;
  polarity pol = polarity::positive;
};

/// One gate of a template; the target is always the result line.
struct pattern_gate {
  std::vector<pattern_control> controls;
};

/// Sub-circuit realizing one BDD node shape.
///
/// `semantics` is the value left on the result line as a truth table over the
/// role *line* values: bit (s | l << 1 | h << 2). When `ancilla_init` is empty
/// the template emits no gates and the result is the select line itself.
struct gate_template {
  std::string id;
  shape_kind shape = shape_kind::general;
  bool copy_variant = false;
  bool complement_low = false;
  bool complement_high = false;
  bool complemented_output = false;
  std::optional<bool> ancilla_init;
  std::vector<pattern_gate> pattern;
  std::uint8_t semantics = 0;
  std::string formula;
  std::optional<std::string> ambiguity_group;

  bool uses(role r) const {
    return std::any_of(pattern.begin(), pattern.end(), [r](const pattern_gate& g) {
      return std::any_of(g.controls.begin(), g.controls.end(), [r](const pattern_control& c) { return c.line == r; });
    });
  }
};

struct template_catalog {
  std::vector<gate_template> templates;
  bool complement_mode = false;

  const gate_template* find(const std::string& id) const {
    for (const auto& t : templates) {
      if (t.id == id) {
        return &t;
      }
    }
    return nullptr;
  }

  /// Template the synthesizer instantiates for the given situation.
  const gate_template* select(shape_kind shape, bool copy_variant, bool complement_low, bool complement_high,
                              bool complemented_output) const {
    for (const auto& t : templates) {
      if (t.shape == shape && t.copy_variant == copy_variant && t.complement_low == complement_low &&
          t.complement_high == complement_high && t.complemented_output == complemented_output) {
        return &t;
      }
    }
    return nullptr;
  }
};

namespace detail {

template <typename Fn>
std::uint8_t truth_table(Fn&& fn) {
  std::uint8_t tt = 0;
  for (unsigned a = 0; a < 8; ++a) {
    if (fn((a & 1U) != 0, (a & 2U) != 0, (a & 4U) != 0)) {
      tt |= static_cast<std::uint8_t>(1U << a);
    }
  }
  return tt;
}

inline pattern_control P(role r) { return {r, polarity::positive}; }
inline pattern_control N(role r) { return {r, polarity::negative}; }

}  // namespace detail

/// Built-in Shannon look-up table. With `complement_mode` the catalog also
/// carries init-1 siblings of the LOW_ZERO / LOW_ONE patterns (each pair forms
/// an ambiguity group) and the parent variants that read a complemented child.
inline template_catalog catalog_default(bool complement_mode = false) {
  using detail::N;
  using detail::P;
  using detail::truth_table;
  constexpr auto s = role::select;
  constexpr auto l = role::low;
  constexpr auto h = role::high;

  template_catalog cat;
  cat.complement_mode = complement_mode;
  auto add = [&](gate_template t) { cat.templates.push_back(std::move(t)); };

  add({"GENERAL", shape_kind::general, false, false, false, false, false,
       {{{P(s), P(h)}}, {{N(s), P(l)}}},
       truth_table([](bool x, bool lo, bool hi) { return x ? hi : lo; }), "x*high ^ !x*low", std::nullopt});
  add({"HIGH_ZERO", shape_kind::high_zero, false, false, false, false, false,
       {{{N(s), P(l)}}},
       truth_table([](bool x, bool lo, bool) { return !x && lo; }), "!x*low", std::nullopt});
  add({"HIGH_ONE", shape_kind::high_one, false, false, false, false, false,
       {{{P(s)}}, {{N(s), P(l)}}},
       truth_table([](bool x, bool lo, bool) { return x || lo; }), "x + !x*low", std::nullopt});
  add({"LOW_ZERO", shape_kind::low_zero, false, false, false, false, false,
       {{{P(s), P(h)}}},
       truth_table([](bool x, bool, bool hi) { return x && hi; }), "x*high",
       complement_mode ? std::optional<std::string>("low_zero") : std::nullopt});
  add({"LOW_ONE", shape_kind::low_one, false, false, false, false, false,
       {{{N(s)}}, {{P(s), P(h)}}},
       truth_table([](bool x, bool, bool hi) { return !x || hi; }), "!x ^ x*high",
       complement_mode ? std::optional<std::string>("low_one") : std::nullopt});
  add({"VARIABLE", shape_kind::variable, false, false, false, false, std::nullopt, {},
       truth_table([](bool x, bool, bool) { return x; }), "x", std::nullopt});
  add({"VARIABLE_COPY", shape_kind::variable, true, false, false, false, false,
       {{{P(s)}}},
       truth_table([](bool x, bool, bool) { return x; }), "x", std::nullopt});
  add({"NEGATED_VARIABLE", shape_kind::negated_variable, false, false, false, false, false,
       {{{N(s)}}},
       truth_table([](bool x, bool, bool) { return !x; }), "!x", std::nullopt});
  add({"CONSTANT_ONE", shape_kind::constant_one, false, false, false, false, false,
       {{{}}},
       truth_table([](bool, bool, bool) { return true; }), "1", std::nullopt});
  add({"CONSTANT_ZERO", shape_kind::constant_zero, false, false, false, false, false,
       {{{}}, {{}}},
       truth_table([](bool, bool, bool) { return false; }), "0", std::nullopt});

  if (complement_mode) {
    add({"LOW_ZERO~c", shape_kind::low_zero, false, false, false, true, true,
         {{{P(s), P(h)}}},
         truth_table([](bool x, bool, bool hi) { return !(x && hi); }), "!(x*high)", "low_zero"});
    add({"LOW_ONE~c", shape_kind::low_one, false, false, false, true, true,
         {{{N(s)}}, {{P(s), P(h)}}},
         truth_table([](bool x, bool, bool hi) { return !(!x || hi); }), "!(!x ^ x*high)", "low_one"});
    add({"GENERAL~l", shape_kind::general, false, true, false, false, false,
         {{{P(s), P(h)}}, {{N(s), N(l)}}},
         truth_table([](bool x, bool lo, bool hi) { return x ? hi : !lo; }), "x*high ^ !x*!low'", std::nullopt});
    add({"GENERAL~h", shape_kind::general, false, false, true, false, false,
         {{{P(s), N(h)}}, {{N(s), P(l)}}},
         truth_table([](bool x, bool lo, bool hi) { return x ? !hi : lo; }), "x*!high' ^ !x*low", std::nullopt});
    add({"GENERAL~lh", shape_kind::general, false, true, true, false, false,
         {{{P(s), N(h)}}, {{N(s), N(l)}}},
         truth_table([](bool x, bool lo, bool hi) { return x ? !hi : !lo; }), "x*!high' ^ !x*!low'",
         std::nullopt});
    add({"HIGH_ZERO~l", shape_kind::high_zero, false, true, false, false, false,
         {{{N(s), N(l)}}},
         truth_table([](bool x, bool lo, bool) { return !x && !lo; }), "!x*!low'", std::nullopt});
    add({"HIGH_ONE~l", shape_kind::high_one, false, true, false, false, false,
         {{{P(s)}}, {{N(s), N(l)}}},
         truth_table([](bool x, bool lo, bool) { return x || !lo; }), "x + !x*!low'", std::nullopt});
    add({"LOW_ONE~h", shape_kind::low_one, false, false, true, false, false,
         {{{N(s)}}, {{P(s), N(h)}}},
         truth_table([](bool x, bool, bool hi) { return !x || !hi; }), "!x ^ x*!high'", "low_one~h"});
    add({"LOW_ONE~h~c", shape_kind::low_one, false, false, true, true, true,
         {{{N(s)}}, {{P(s), N(h)}}},
         truth_table([](bool x, bool, bool hi) { return !(!x || !hi); }), "!(!x ^ x*!high')", "low_one~h"});
  }
  return cat;
}

/// Pattern rendered canonically up to renaming of the select/low/high roles.
inline std::string pattern_signature(const std::vector<pattern_gate>& pattern) {
  std::array<int, 3> perm{0, 1, 2};
  std::string best;
  bool first = true;
  do {
    std::string sig;
    for (const auto& g : pattern) {
      std::vector<std::string> parts;
      for (const auto& c : g.controls) {
        const int r = perm[static_cast<int>(c.line)];
        parts.push_back(std::string(1, static_cast<char>('a' + r)) + (c.pol == polarity::positive ? "+" : "-"));
      }
      std::sort(parts.begin(), parts.end());
      sig += "[";
      for (const auto& p : parts) {
        sig += p;
      }
      sig += "]";
    }
    if (first || sig < best) {
      best = sig;
      first = false;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

/// Runs `pattern` on the four role lines; returns the final result-line value.
inline bool simulate_pattern(const std::vector<pattern_gate>& pattern, bool sel, bool low, bool high, bool init) {
  std::array<bool, 4> lines{sel, low, high, init};
  for (const auto& g : pattern) {
    bool fire = true;
    for (const auto& c : g.controls) {
      if (lines[static_cast<int>(c.line)] != (c.pol == polarity::positive)) {
        fire = false;
        break;
      }
    }
    if (fire) {
      lines[3] = !lines[3];
    }
  }
  return lines[3];
}

struct catalog_diagnostic {
  std::string template_id;
  std::string message;
};

inline std::vector<catalog_diagnostic> validate_catalog(const template_catalog& catalog) {
  std::vector<catalog_diagnostic> out;
  for (const auto& t : catalog.templates) {
    for (unsigned a = 0; a < 8; ++a) {
      const bool x = (a & 1U) != 0;
      const bool lo = (a & 2U) != 0;
      const bool hi = (a & 4U) != 0;
      const bool expected = ((t.semantics >> a) & 1U) != 0;
      bool got = x;
      if (t.ancilla_init) {
        got = simulate_pattern(t.pattern, x, lo, hi, *t.ancilla_init);
      } else if (!t.pattern.empty()) {
        out.push_back({t.id, "template with gates needs an ancilla initial value"});
        break;
      }
      if (got != expected) {
        out.push_back({t.id, "semantics '" + t.formula + "' fail at select=" + std::to_string(x) +
                                 " low=" + std::to_string(lo) + " high=" + std::to_string(hi)});
        break;
      }
    }
    if (t.uses(role::result)) {
      out.push_back({t.id, "result line used as a control"});
    }
  }

  for (std::size_t i = 0; i < catalog.templates.size(); ++i) {
    const auto& a = catalog.templates[i];
    if (a.pattern.empty()) {
      continue;
    }
    for (std::size_t j = i + 1; j < catalog.templates.size(); ++j) {
      const auto& b = catalog.templates[j];
      if (b.pattern.empty() || pattern_signature(a.pattern) != pattern_signature(b.pattern)) {
        continue;
      }
      if (!a.ambiguity_group || a.ambiguity_group != b.ambiguity_group) {
        out.push_back({b.id, "gate pattern duplicates " + a.id + " without a shared ambiguity group"});
      } else if (a.ancilla_init == b.ancilla_init) {
        out.push_back({b.id, "ambiguity group member " + a.id + " has the same ancilla value"});
      }
    }
  }

  std::map<std::string, std::vector<const gate_template*>> groups;
  for (const auto& t : catalog.templates) {
    if (t.ambiguity_group) {
      groups[*t.ambiguity_group].push_back(&t);
    }
  }
  for (const auto& [name, members] : groups) {
    if (members.size() < 2) {
      out.push_back({members.front()->id, "ambiguity group '" + name + "' has a single member"});
    }
    for (const auto* m : members) {
      if (pattern_signature(m->pattern) != pattern_signature(members.front()->pattern)) {
        out.push_back({m->id, "ambiguity group '" + name + "' mixes gate patterns"});
      }
    }
  }

  for (auto kind : {shape_kind::general, shape_kind::high_zero, shape_kind::high_one, shape_kind::low_zero,
                    shape_kind::low_one, shape_kind::variable, shape_kind::negated_variable}) {
    if (std::none_of(catalog.templates.begin(), catalog.templates.end(),
                     [kind](const gate_template& t) { return t.shape == kind; })) {
      out.push_back({to_string(kind), "no template for node shape"});
    }
  }
  return out;
}

inline std::size_t ambiguity_group_count(const template_catalog& catalog) {
  std::map<std::string, int> groups;
  for (const auto& t : catalog.templates) {
    if (t.ambiguity_group) {
      ++groups[*t.ambiguity_group];
    }
  }
  return groups.size();
}

/// Line assignment for the roles of a matched template; unset roles are unused.
using role_binding = std::array<std::optional<std::size_t>, 4>;

inline std::vector<toffoli_gate> instantiate(const gate_template& t, const role_binding& binding) {
  std::vector<toffoli_gate> gates;
  for (const auto& g : t.pattern) {
    std::vector<control> controls;
    for (const auto& c : g.controls) {
      controls.push_back({binding[static_cast<int>(c.line)].value(), c.pol});
    }
    gates.emplace_back(std::move(controls), binding[static_cast<int>(role::result)].value());
  }
  return gates;
}

namespace detail {

inline bool bind_role(role_binding& b, role r, std::size_t line) {
  auto& slot = b[static_cast<int>(r)];
  if (slot) {
    return *slot == line;
  }
  for (const auto& other : b) {
    if (other && *other == line) {
      return false;
    }
  }
  slot = line;
  return true;
}

inline bool match_controls(const std::vector<pattern_control>& want, const std::vector<control>& have,
                           std::size_t k, std::vector<bool>& used, role_binding& b,
                           const std::vector<pattern_gate>& pattern, std::span<const toffoli_gate> gates,
                           std::size_t gate_index);

inline bool match_gate(const std::vector<pattern_gate>& pattern, std::span<const toffoli_gate> gates,
                       std::size_t gate_index, role_binding& b) {
  if (gate_index == pattern.size()) {
    return true;
  }
  const auto& want = pattern[gate_index].controls;
  const auto& have = gates[gate_index].controls();
  if (want.size() != have.size()) {
    return false;
  }
  role_binding saved = b;
  if (!bind_role(b, role::result, gates[gate_index].target())) {
    b = saved;
    return false;
  }
  std::vector<bool> used(have.size(), false);
  if (match_controls(want, have, 0, used, b, pattern, gates, gate_index)) {
    return true;
  }
  b = saved;
  return false;
}

inline bool match_controls(const std::vector<pattern_control>& want, const std::vector<control>& have,
                           std::size_t k, std::vector<bool>& used, role_binding& b,
                           const std::vector<pattern_gate>& pattern, std::span<const toffoli_gate> gates,
                           std::size_t gate_index) {
  if (k == want.size()) {
    return match_gate(pattern, gates, gate_index + 1, b);
  }
  for (std::size_t i = 0; i < have.size(); ++i) {
    if (used[i] || have[i].pol != want[k].pol) {
      continue;
    }
    role_binding saved = b;
    if (bind_role(b, want[k].line, have[i].line)) {
      used[i] = true;
      if (match_controls(want, have, k + 1, used, b, pattern, gates, gate_index)) {
        return true;
      }
      used[i] = false;
    }
    b = saved;
  }
  return false;
}

}  // namespace detail

/// Tries to match `t` against the gates starting at `gates.front()`; the
/// span must be at least as long as the pattern.
inline std::optional<role_binding> match_template(const gate_template& t, std::span<const toffoli_gate> gates) {
  if (t.pattern.empty() || gates.size() < t.pattern.size()) {
    return std::nullopt;
  }
  role_binding b;
  if (detail::match_gate(t.pattern, gates.first(t.pattern.size()), 0, b)) {
    return b;
  }
  return std::nullopt;
}

}  // namespace revguard
