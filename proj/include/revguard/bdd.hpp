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
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "revguard/bits.hpp"
#include "revguard/errors.hpp"
#include "revguard/function.hpp"

namespace revguard {

using node_id = std::uint32_t;
inline constexpr node_id zero_node = 0;
inline constexpr node_id one_node = 1;
inline constexpr std::size_t terminal_var = std::numeric_limits<std::size_t>::max();

struct bdd_node {
  std::size_t var = terminal_var;
  node_id low = zero_node;
  node_id high = zero_node;
};

/// Reduced ordered BDD with one root per function output. Nodes live in a
/// unique table keyed by (var, low, high); nothing is collected.
class bdd {
 public:
  bdd(std::size_t num_inputs, std::vector<std::size_t> order) : num_inputs_(num_inputs), order_(std::move(order)) {
    level_of_.assign(num_inputs_, 0);
    for (std::size_t level = 0; level < order_.size(); ++level) {
      level_of_[order_[level]] = level;
    }
    nodes_.push_back({});  // ZERO
    nodes_.push_back({});  // ONE
  }

  node_id make(std::size_t var, node_id low, node_id high) {
    if (low == high) {
      return low;
    }
    auto key = std::make_tuple(var, low, high);
    if (auto it = unique_.find(key); it != unique_.end()) {
      return it->second;
    }
    const auto id = static_cast<node_id>(nodes_.size());
    nodes_.push_back({var, low, high});
    unique_.emplace(key, id);
    return id;
  }

  void add_root(node_id root) {
    roots_.push_back(root);
    refs_.clear();
  }

  std::size_t num_inputs() const noexcept { return num_inputs_; }
  const std::vector<std::size_t>& order() const noexcept { return order_; }
  std::size_t level_of(std::size_t var) const { return level_of_.at(var); }
  const std::vector<node_id>& roots() const noexcept { return roots_; }
  const bdd_node& node(node_id id) const { return nodes_.at(id); }
  std::size_t store_size() const noexcept { return nodes_.size(); }
  static bool is_terminal(node_id id) noexcept { return id == zero_node || id == one_node; }

  /// Internal nodes reachable from the roots.
  std::vector<node_id> reachable() const {
    std::vector<bool> seen(nodes_.size(), false);
    std::vector<node_id> out;
    std::vector<node_id> stack(roots_.begin(), roots_.end());
    while (!stack.empty()) {
      node_id id = stack.back();
      stack.pop_back();
      if (is_terminal(id) || seen[id]) {
        continue;
      }
      seen[id] = true;
      out.push_back(id);
      stack.push_back(nodes_[id].low);
      stack.push_back(nodes_[id].high);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::size_t internal_count() const { return reachable().size(); }

  /// Number of parent edges into `id` from reachable internal nodes.
  std::size_t parent_count(node_id id) const {
    ensure_refs();
    return refs_.at(id).parents;
  }
  /// Number of output roots equal to `id`.
  std::size_t root_count(node_id id) const {
    ensure_refs();
    return refs_.at(id).roots;
  }
  /// Reachable internal nodes whose select variable is `var`.
  std::size_t var_use_count(std::size_t var) const {
    ensure_refs();
    return var_uses_.at(var);
  }

 private:
  struct ref_info {
    std::size_t parents = 0;
    std::size_t roots = 0;
  };

  void ensure_refs() const {
    if (!refs_.empty()) {
      return;
    }
    refs_.assign(nodes_.size(), {});
    var_uses_.assign(num_inputs_, 0);
    for (node_id id : reachable()) {
      ++refs_[nodes_[id].low].parents;
      ++refs_[nodes_[id].high].parents;
      ++var_uses_[nodes_[id].var];
    }
    for (node_id r : roots_) {
      ++refs_[r].roots;
    }
  }

  std::size_t num_inputs_;
  std::vector<std::size_t> order_;
  std::vector<std::size_t> level_of_;
  std::vector<bdd_node> nodes_;
  std::map<std::tuple<std::size_t, node_id, node_id>, node_id> unique_;
  std::vector<node_id> roots_;
  mutable std::vector<ref_info> refs_;
  mutable std::vector<std::size_t> var_uses_;
};

inline std::vector<std::size_t> natural_order(std::size_t n) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  return order;
}

namespace detail {

inline node_id build_rec(bdd& dd, const bit_vector& column, std::size_t level, std::uint64_t assignment) {
  if (level == dd.order().size()) {
    return column[assignment] ? one_node : zero_node;
  }
  const std::size_t var = dd.order()[level];
  const node_id low = build_rec(dd, column, level + 1, assignment);
  const node_id high = build_rec(dd, column, level + 1, assignment | (std::uint64_t{1} << var));
  return dd.make(var, low, high);
}

}  // namespace detail

/// Shannon expansion along `order` (default: declaration order), one root per output.
inline bdd build(const boolean_function& f, std::vector<std::size_t> order = {}) {
  if (order.empty()) {
    order = natural_order(f.num_inputs());
  }
  if (order.size() != f.num_inputs()) {
    throw input_error("variable order has " + std::to_string(order.size()) + " entries for " +
                      std::to_string(f.num_inputs()) + " inputs");
  }
  std::vector<bool> seen(f.num_inputs(), false);
  for (std::size_t v : order) {
    if (v >= f.num_inputs() || seen[v]) {
      throw input_error("variable order is not a permutation of the inputs");
    }
    seen[v] = true;
  }
  bdd dd(f.num_inputs(), std::move(order));
  for (const auto& column : f.columns()) {
    dd.add_root(detail::build_rec(dd, column, 0, 0));
  }
  return dd;
}

enum class shape_kind : std::uint8_t {
  general,
  high_zero,
  high_one,
  low_zero,
  low_one,
  variable,
  negated_variable,
  constant_zero,
  constant_one,
};

inline const char* to_string(shape_kind kind) {
  switch (kind) {
    case shape_kind::general: return "GENERAL";
    case shape_kind::high_zero: return "HIGH_ZERO";
    case shape_kind::high_one: return "HIGH_ONE";
    case shape_kind::low_zero: return "LOW_ZERO";
    case shape_kind::low_one: return "LOW_ONE";
    case shape_kind::variable: return "VARIABLE";
    case shape_kind::negated_variable: return "NEGATED_VARIABLE";
    case shape_kind::constant_zero: return "CONSTANT_ZERO";
    case shape_kind::constant_one: return "CONSTANT_ONE";
  }
  return "?";
}

struct node_shape {
  shape_kind kind = shape_kind::general;
  std::optional<bool> low_terminal;   // set when low is ZERO/ONE
  std::optional<bool> high_terminal;  // set when high is ZERO/ONE
  // The select line or a child value is referenced by another parent.
  bool still_needed = false;
};

inline node_shape classify_node(const bdd& dd, node_id id) {
  if (bdd::is_terminal(id)) {
    throw input_error("classify_node called on a terminal");
  }
  const auto& n = dd.node(id);
  node_shape shape;
  if (bdd::is_terminal(n.low)) {
    shape.low_terminal = n.low == one_node;
  }
  if (bdd::is_terminal(n.high)) {
    shape.high_terminal = n.high == one_node;
  }
  if (shape.low_terminal && shape.high_terminal) {
    shape.kind = *shape.high_terminal ? shape_kind::variable : shape_kind::negated_variable;
  } else if (shape.high_terminal) {
    shape.kind = *shape.high_terminal ? shape_kind::high_one : shape_kind::high_zero;
  } else if (shape.low_terminal) {
    shape.kind = *shape.low_terminal ? shape_kind::low_one : shape_kind::low_zero;
  } else {
    shape.kind = shape_kind::general;
  }
  auto shared = [&](node_id child) {
    return !bdd::is_terminal(child) && dd.parent_count(child) + dd.root_count(child) > 1;
  };
  shape.still_needed = dd.var_use_count(n.var) > 1 || dd.parent_count(id) + dd.root_count(id) > 1 ||
                       shared(n.low) || shared(n.high);
  return shape;
}

inline bit_vector evaluate_bdd(const bdd& dd, const bit_vector& input) {
  if (input.size() != dd.num_inputs()) {
    throw input_error("input width " + std::to_string(input.size()) + " does not match " +
                      std::to_string(dd.num_inputs()) + " BDD variables");
  }
  bit_vector out(dd.roots().size());
  for (std::size_t o = 0; o < dd.roots().size(); ++o) {
    node_id id = dd.roots()[o];
    while (!bdd::is_terminal(id)) {
      const auto& n = dd.node(id);
      id = input[n.var] ? n.high : n.low;
    }
    out[o] = id == one_node;
  }
  return out;
}

/// Graphviz rendering: dashed edges go to low children, solid to high.
inline std::string to_dot(const bdd& dd, const std::vector<std::string>& var_names,
                          const std::vector<std::string>& root_names = {}) {
  std::ostringstream os;
  os << "digraph bdd {\n";
  os << "  n0 [shape=box,label=\"0\"];\n  n1 [shape=box,label=\"1\"];\n";
  for (node_id id : dd.reachable()) {
    const auto& n = dd.node(id);
    const std::string label = n.var < var_names.size() ? var_names[n.var] : "x" + std::to_string(n.var + 1);
    os << "  n" << id << " [label=\"" << label << "\"];\n";
    os << "  n" << id << " -> n" << n.low << " [style=dashed];\n";
    os << "  n" << id << " -> n" << n.high << ";\n";
  }
  for (std::size_t o = 0; o < dd.roots().size(); ++o) {
    const std::string name = o < root_names.size() ? root_names[o] : "f" + std::to_string(o + 1);
    os << "  r" << o << " [shape=plaintext,label=\"" << name << "\"];\n";
    os << "  r" << o << " -> n" << dd.roots()[o] << ";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace revguard
