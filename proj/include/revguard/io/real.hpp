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
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "revguard/circuit.hpp"
#include "revguard/errors.hpp"

namespace revguard::io {

namespace detail {

inline std::vector<std::string> split_words(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream is{std::string(text)};
  std::string w;
  while (is >> w) {
    out.push_back(w);
  }
  return out;
}

inline std::string strip_comment(const std::string& line) {
  const auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

[[noreturn]] inline void fail_at(std::size_t line_no, const std::string& message) {
  throw input_error("line " + std::to_string(line_no) + ": " + message);
}

inline bool plain_name(const std::string& name) {
  if (name.empty() || name[0] == '-' || name[0] == '.') {
    return false;
  }
  for (char c : name) {
    if (c == '#' || c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      return false;
    }
  }
  return true;
}

}  // namespace detail

/// Parses a `.real` netlist. Annotations are attached when any of
/// `.inputs`, `.outputs`, `.constants` or `.garbage` is present.
inline reversible_circuit real_parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  std::optional<std::size_t> numvars;
  std::vector<std::string> variables;
  std::map<std::string, std::size_t> index_of;
  std::optional<std::vector<std::string>> inputs;
  std::optional<std::vector<std::string>> outputs;
  std::optional<std::string> constants;
  std::optional<std::string> garbage;
  std::vector<toffoli_gate> gates;
  bool in_body = false;
  bool ended = false;

  auto require_count = [&](const std::vector<std::string>& words, const std::string& directive) {
    if (!numvars) {
      detail::fail_at(line_no, directive + " before .numvars");
    }
    if (words.size() - 1 != *numvars) {
      detail::fail_at(line_no, directive + " lists " + std::to_string(words.size() - 1) + " entries, expected " +
                                   std::to_string(*numvars));
    }
  };
  auto flag_string = [&](const std::vector<std::string>& words, const std::string& directive,
                         std::string_view allowed) {
    std::string joined;
    for (std::size_t i = 1; i < words.size(); ++i) {
      joined += words[i];
    }
    if (!numvars) {
      detail::fail_at(line_no, directive + " before .numvars");
    }
    if (joined.size() != *numvars) {
      detail::fail_at(line_no, directive + " has " + std::to_string(joined.size()) + " entries, expected " +
                                   std::to_string(*numvars));
    }
    for (char c : joined) {
      if (allowed.find(c) == std::string_view::npos) {
        detail::fail_at(line_no, directive + " has invalid entry '" + std::string(1, c) + "'");
      }
    }
    return joined;
  };

  while (std::getline(in, raw)) {
    ++line_no;
    const auto words = detail::split_words(detail::strip_comment(raw));
    if (words.empty()) {
      continue;
    }
    const std::string& head = words[0];
    if (ended) {
      detail::fail_at(line_no, "content after .end");
    }
    if (in_body) {
      if (head == ".end") {
        ended = true;
        continue;
      }
      if (head.size() < 2 || head[0] != 't' || head.find_first_not_of("0123456789", 1) != std::string::npos) {
        detail::fail_at(line_no, "gate token '" + head + "' is not t<k>");
      }
      std::size_t k = 0;
      try {
        k = std::stoul(head.substr(1));
      } catch (const std::exception&) {
        detail::fail_at(line_no, "gate token '" + head + "' is not t<k>");
      }
      if (k == 0) {
        detail::fail_at(line_no, "gate token '" + head + "' has no target");
      }
      if (words.size() - 1 != k) {
        detail::fail_at(line_no, head + " expects " + std::to_string(k) + " names, got " +
                                     std::to_string(words.size() - 1));
      }
      std::vector<control> controls;
      for (std::size_t i = 1; i < words.size(); ++i) {
        std::string name = words[i];
        const bool negative = !name.empty() && name[0] == '-';
        if (negative) {
          name.erase(0, 1);
        }
        auto it = index_of.find(name);
        if (it == index_of.end()) {
          detail::fail_at(line_no, "unknown variable '" + name + "'");
        }
        if (i + 1 == words.size()) {
          if (negative) {
            detail::fail_at(line_no, "target '" + name + "' cannot be negated");
          }
          toffoli_gate gate(controls, it->second);
          if (auto problems = gate_problems(gate, variables.size()); !problems.empty()) {
            detail::fail_at(line_no, problems.front());
          }
          gates.push_back(std::move(gate));
        } else {
          controls.push_back({it->second, negative ? polarity::negative : polarity::positive});
        }
      }
      continue;
    }
    if (head == ".version") {
      continue;
    }
    if (head == ".numvars") {
      if (words.size() != 2) {
        detail::fail_at(line_no, ".numvars takes one value");
      }
      try {
        std::size_t used = 0;
        numvars = std::stoul(words[1], &used);
        if (used != words[1].size()) {
          throw std::invalid_argument(words[1]);
        }
      } catch (const std::exception&) {
        detail::fail_at(line_no, ".numvars value '" + words[1] + "' is not a number");
      }
    } else if (head == ".variables") {
      require_count(words, head);
      variables.assign(words.begin() + 1, words.end());
      index_of.clear();
      for (std::size_t i = 0; i < variables.size(); ++i) {
        if (!detail::plain_name(variables[i]) || !index_of.emplace(variables[i], i).second) {
          detail::fail_at(line_no, "bad or repeated variable name '" + variables[i] + "'");
        }
      }
    } else if (head == ".inputs") {
      require_count(words, head);
      inputs.emplace(words.begin() + 1, words.end());
    } else if (head == ".outputs") {
      require_count(words, head);
      outputs.emplace(words.begin() + 1, words.end());
    } else if (head == ".constants") {
      constants = flag_string(words, head, "01-");
    } else if (head == ".garbage") {
      garbage = flag_string(words, head, "1-");
    } else if (head == ".begin") {
      if (!numvars || variables.size() != *numvars) {
        detail::fail_at(line_no, ".begin before .numvars and .variables");
      }
      in_body = true;
    } else {
      detail::fail_at(line_no, "unknown directive '" + head + "'");
    }
  }
  if (!in_body) {
    detail::fail_at(line_no, "missing .begin");
  }
  if (!ended) {
    detail::fail_at(line_no, "missing .end");
  }

  std::optional<std::vector<line_annotation>> annotations;
  if (inputs || outputs || constants || garbage) {
    std::vector<line_annotation> ann(variables.size());
    for (std::size_t i = 0; i < variables.size(); ++i) {
      ann[i].input_name = inputs ? (*inputs)[i] : variables[i];
      ann[i].output_name = outputs ? (*outputs)[i] : variables[i];
      if (constants && (*constants)[i] != '-') {
        ann[i].constant = (*constants)[i] == '1';
      }
      ann[i].garbage = garbage && (*garbage)[i] == '1';
    }
    annotations = std::move(ann);
  }
  const std::size_t width = variables.size();
  return reversible_circuit(width, std::move(gates), std::move(variables), std::move(annotations));
}

/// Canonical serialization; `real_parse` inverts it exactly.
inline std::string real_write(const reversible_circuit& circuit) {
  if (auto problems = validate(circuit); !problems.empty()) {
    throw input_error("cannot write an invalid circuit: " + problems.front().reason);
  }
  const auto& names = circuit.line_names();
  for (const auto& name : names) {
    if (!detail::plain_name(name)) {
      throw input_error("line name '" + name + "' cannot be written");
    }
  }
  std::ostringstream os;
  os << ".version 1.0\n.numvars " << circuit.width() << "\n.variables";
  for (const auto& name : names) {
    os << ' ' << name;
  }
  os << '\n';
  if (const auto& ann = circuit.annotations()) {
    os << ".inputs";
    for (const auto& a : *ann) {
      if (!detail::plain_name(a.input_name)) {
        throw input_error("input name '" + a.input_name + "' cannot be written");
      }
      os << ' ' << a.input_name;
    }
    os << "\n.outputs";
    for (const auto& a : *ann) {
      if (!detail::plain_name(a.output_name)) {
        throw input_error("output name '" + a.output_name + "' cannot be written");
      }
      os << ' ' << a.output_name;
    }
    os << "\n.constants ";
    for (const auto& a : *ann) {
      os << (a.constant ? (*a.constant ? '1' : '0') : '-');
    }
    os << "\n.garbage ";
    for (const auto& a : *ann) {
      os << (a.garbage ? '1' : '-');
    }
    os << '\n';
  }
  os << ".begin\n";
  for (const auto& g : circuit.gates()) {
    os << 't' << g.num_controls() + 1;
    for (const auto& c : g.controls()) {
      os << ' ' << (c.pol == polarity::negative ? "-" : "") << names[c.line];
    }
    os << ' ' << names[g.target()] << '\n';
  }
  os << ".end\n";
  return os.str();
}

}  // namespace revguard::io
