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

#include <boost/random/uniform_int_distribution.hpp>
#include <random>

#include "revguard/bdd.hpp"
#include "revguard/catalog.hpp"
#include "revguard/circuit.hpp"
#include "revguard/function.hpp"

namespace revguard {

struct bdd_synthesis_options {
  std::vector<std::size_t> order;  // empty: declaration order
  bool complement_mode = false;
  std::uint64_t seed = 0;
};

/// One instantiated template and the gates it produced.
struct instantiation {
  std::string template_id;
  std::size_t result_line = 0;
  std::size_t gate_begin = 0;
  std::size_t gate_end = 0;

  friend bool operator==(const instantiation&, const instantiation&) = default;
};

/// Ground truth of a BDD synthesis run.
struct synthesis_record {
  std::vector<line_annotation> lines;
  std::vector<instantiation> partitions;  // non-empty spans in gate order
  std::vector<std::size_t> output_lines;  // line carrying function output o
  std::size_t num_primary_inputs = 0;
  std::vector<std::size_t> order;
  bool complement_mode = false;
  std::uint64_t seed = 0;

  friend bool operator==(const synthesis_record&, const synthesis_record&) = default;
};

struct bdd_synthesis_result {
  reversible_circuit circuit;
  synthesis_record record;
};

namespace detail {

inline std::string fresh_name(const std::string& stem, std::size_t& counter, const std::set<std::string>& taken) {
  std::string name;
  do {
    name = stem + std::to_string(++counter);
  } while (taken.count(name) != 0);
  return name;
}

class bdd_synthesizer {
 public:
  bdd_synthesizer(const boolean_function& f, const bdd_synthesis_options& options)
      : f_(f),
        options_(options),
        dd_(build(f, options.order)),
        catalog_(catalog_default(options.complement_mode)),
        rng_(options.seed) {}

  bdd_synthesis_result run() {
    for (std::size_t i = 0; i < f_.num_inputs(); ++i) {
      lines_.push_back({f_.input_names()[i], std::nullopt, "", true});
    }
    if (options_.complement_mode) {
      choose_flips();
    }
    for (node_id root : dd_.roots()) {
      visit(root);
    }
    assign_outputs();
    return finish();
  }

 private:
  void choose_flips() {
    std::map<node_id, std::vector<node_id>> parents;
    for (node_id id : dd_.reachable()) {
      parents[dd_.node(id).low].push_back(id);
      parents[dd_.node(id).high].push_back(id);
    }
    std::vector<node_id> post;
    std::set<node_id> seen;
    for (node_id root : dd_.roots()) {
      post_order(root, seen, post);
    }
    boost::random::uniform_int_distribution<int> coin(0, 1);
    for (node_id id : post) {
      const auto kind = classify_node(dd_, id).kind;
      if (kind != shape_kind::low_zero && kind != shape_kind::low_one) {
        continue;
      }
      if (dd_.root_count(id) > 0) {
        continue;
      }
      const auto& ps = parents[id];
      const bool low_zero_parent = std::any_of(ps.begin(), ps.end(), [&](node_id p) {
        return classify_node(dd_, p).kind == shape_kind::low_zero;
      });
      if (low_zero_parent) {
        continue;
      }
      if (coin(rng_) == 1) {
        flipped_.insert(id);
      }
    }
  }

  void post_order(node_id id, std::set<node_id>& seen, std::vector<node_id>& out) const {
    if (bdd::is_terminal(id) || !seen.insert(id).second) {
      return;
    }
    post_order(dd_.node(id).low, seen, out);
    post_order(dd_.node(id).high, seen, out);
    out.push_back(id);
  }

  std::size_t new_ancilla(bool init) {
    lines_.push_back({"", init, "", true});
    return lines_.size() - 1;
  }

  void emit(const gate_template& t, const role_binding& binding) {
    instantiation inst;
    inst.template_id = t.id;
    inst.result_line = binding[static_cast<int>(role::result)].value();
    inst.gate_begin = gates_.size();
    for (auto& g : instantiate(t, binding)) {
      gates_.push_back(std::move(g));
    }
    inst.gate_end = gates_.size();
    partitions_.push_back(std::move(inst));
  }

  void visit(node_id id) {
    if (bdd::is_terminal(id) || line_of_.count(id) != 0) {
      return;
    }
    const auto& n = dd_.node(id);
    visit(n.low);
    visit(n.high);
    const auto shape = classify_node(dd_, id);
    if (shape.kind == shape_kind::variable) {
      line_of_[id] = n.var;
      return;
    }
    const bool cl = flipped_.count(n.low) != 0;
    const bool ch = flipped_.count(n.high) != 0;
    const bool co = flipped_.count(id) != 0;
    const gate_template* t = catalog_.select(shape.kind, false, cl, ch, co);
    if (t == nullptr) {
      throw invariant_error(std::string("no template for shape ") + to_string(shape.kind));
    }
    role_binding b;
    b[static_cast<int>(role::select)] = n.var;
    if (!bdd::is_terminal(n.low)) {
      b[static_cast<int>(role::low)] = line_of_.at(n.low);
    }
    if (!bdd::is_terminal(n.high)) {
      b[static_cast<int>(role::high)] = line_of_.at(n.high);
    }
    b[static_cast<int>(role::result)] = new_ancilla(t->ancilla_init.value());
    line_of_[id] = *b[static_cast<int>(role::result)];
    emit(*t, b);
  }

  bool used_as_control(std::size_t line) const {
    return std::any_of(gates_.begin(), gates_.end(), [line](const toffoli_gate& g) { return g.controls_line(line); });
  }

  void assign_outputs() {
    std::map<node_id, std::size_t> uses;
    for (node_id root : dd_.roots()) {
      ++uses[root];
    }
    for (node_id root : dd_.roots()) {
      if (bdd::is_terminal(root)) {
        const auto kind = root == one_node ? shape_kind::constant_one : shape_kind::constant_zero;
        const gate_template* t = catalog_.select(kind, false, false, false, false);
        role_binding b;
        b[static_cast<int>(role::result)] = new_ancilla(t->ancilla_init.value());
        emit(*t, b);
        output_lines_.push_back(*b[static_cast<int>(role::result)]);
        continue;
      }
      // A line that feeds any control, or two outputs, stays garbage; each
      // output then gets its own copy.
      const std::size_t line = line_of_.at(root);
      if (uses[root] > 1 || used_as_control(line)) {
        const gate_template* t = catalog_.select(shape_kind::variable, true, false, false, false);
        role_binding b;
        b[static_cast<int>(role::select)] = line;
        b[static_cast<int>(role::result)] = new_ancilla(t->ancilla_init.value());
        emit(*t, b);
        output_lines_.push_back(*b[static_cast<int>(role::result)]);
      } else {
        output_lines_.push_back(line);
      }
    }
  }

  bdd_synthesis_result finish() {
    std::set<std::string> taken(f_.input_names().begin(), f_.input_names().end());
    taken.insert(f_.output_names().begin(), f_.output_names().end());
    std::vector<std::string> names;
    std::size_t anc = 0;
    std::size_t garbage = 0;
    for (std::size_t i = 0; i < lines_.size(); ++i) {
      if (i < f_.num_inputs()) {
        names.push_back(f_.input_names()[i]);
      } else {
        names.push_back(fresh_name("a", anc, taken));
        taken.insert(names.back());
        lines_[i].input_name = names.back();
      }
    }
    for (std::size_t o = 0; o < output_lines_.size(); ++o) {
      auto& ann = lines_[output_lines_[o]];
      ann.garbage = false;
      ann.output_name = f_.output_names()[o];
    }
    for (auto& ann : lines_) {
      if (ann.garbage) {
        ann.output_name = fresh_name("g", garbage, taken);
        taken.insert(ann.output_name);
      }
    }
    synthesis_record record;
    record.lines = lines_;
    record.partitions = partitions_;
    record.output_lines = output_lines_;
    record.num_primary_inputs = f_.num_inputs();
    record.order = dd_.order();
    record.complement_mode = options_.complement_mode;
    record.seed = options_.seed;
    reversible_circuit circuit(lines_.size(), gates_, names, lines_);
    return {std::move(circuit), std::move(record)};
  }

  const boolean_function& f_;
  bdd_synthesis_options options_;
  bdd dd_;
  template_catalog catalog_;
  std::mt19937_64 rng_;
  std::set<node_id> flipped_;
  std::map<node_id, std::size_t> line_of_;
  std::vector<line_annotation> lines_;
  std::vector<toffoli_gate> gates_;
  std::vector<instantiation> partitions_;
  std::vector<std::size_t> output_lines_;
};

}  // namespace detail

/// Maps every BDD node to a catalog sub-circuit, children before parents
/// (low before high), allocating one fresh ancilla per node that needs one.
inline bdd_synthesis_result synthesize_bdd(const boolean_function& f, const bdd_synthesis_options& options = {}) {
  return detail::bdd_synthesizer(f, options).run();
}

/// Structural checks every BDD-synthesized circuit must pass: primary inputs
/// are never targets, output lines never feed a later control, spans tile the
/// gate list.
inline std::vector<std::string> check_structure(const bdd_synthesis_result& result) {
  std::vector<std::string> problems;
  const auto& gates = result.circuit.gates();
  for (std::size_t i = 0; i < gates.size(); ++i) {
    if (gates[i].target() < result.record.num_primary_inputs) {
      problems.push_back("gate " + std::to_string(i) + " targets primary input line " +
                         std::to_string(gates[i].target()));
    }
  }
  for (std::size_t line : result.record.output_lines) {
    std::optional<std::size_t> last_def;
    for (std::size_t i = 0; i < gates.size(); ++i) {
      if (gates[i].target() == line) {
        last_def = i;
      }
    }
    for (std::size_t i = last_def ? *last_def + 1 : 0; i < gates.size(); ++i) {
      if (gates[i].controls_line(line)) {
        problems.push_back("primary output line " + std::to_string(line) + " controls gate " + std::to_string(i));
      }
    }
  }
  std::size_t cursor = 0;
  for (const auto& p : result.record.partitions) {
    if (p.gate_begin != cursor || p.gate_end <= p.gate_begin) {
      problems.push_back("partition spans do not tile the gate list at gate " + std::to_string(cursor));
      break;
    }
    cursor = p.gate_end;
  }
  if (cursor != gates.size()) {
    problems.push_back("partition spans do not cover all gates");
  }
  return problems;
}

/// Simulates with primary inputs from `assignment` and ancillas at their
/// recorded constants; returns the function outputs.
inline bit_vector run_synthesized(const bdd_synthesis_result& result, std::uint64_t assignment) {
  bit_vector state(result.circuit.width());
  for (std::size_t i = 0; i < result.circuit.width(); ++i) {
    const auto& ann = result.record.lines[i];
    state[i] = ann.constant ? *ann.constant : ((assignment >> i) & 1U) != 0;
  }
  state = simulate(result.circuit, std::move(state));
  bit_vector out(result.record.output_lines.size());
  for (std::size_t o = 0; o < out.size(); ++o) {
    out[o] = state[result.record.output_lines[o]];
  }
  return out;
}

}  // namespace revguard
