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

#include <string>
#include <string_view>

#include <json.hpp>  // nlohmann/json, vendored

#include "revguard/analyze.hpp"
#include "revguard/errors.hpp"
#include "revguard/synth_bdd.hpp"

namespace revguard {

inline void to_json(nlohmann::json& j, const line_annotation& a) {
  j = {{"input", a.input_name},
       {"constant", a.constant ? nlohmann::json(*a.constant ? 1 : 0) : nlohmann::json(nullptr)},
       {"output", a.output_name},
       {"garbage", a.garbage}};
}

inline void from_json(const nlohmann::json& j, line_annotation& a) {
  j.at("input").get_to(a.input_name);
  j.at("output").get_to(a.output_name);
  j.at("garbage").get_to(a.garbage);
  const auto& c = j.at("constant");
  if (c.is_null()) {
    a.constant.reset();
  } else {
    const int v = c.get<int>();
    if (v != 0 && v != 1) {
      throw input_error("constant must be 0, 1 or null");
    }
    a.constant = v == 1;
  }
}

inline void to_json(nlohmann::json& j, const instantiation& p) {
  j = {{"template", p.template_id}, {"result_line", p.result_line}, {"gates", {p.gate_begin, p.gate_end}}};
}

inline void from_json(const nlohmann::json& j, instantiation& p) {
  j.at("template").get_to(p.template_id);
  j.at("result_line").get_to(p.result_line);
  const auto& span = j.at("gates");
  if (!span.is_array() || span.size() != 2) {
    throw input_error("partition gates must be [begin, end]");
  }
  span[0].get_to(p.gate_begin);
  span[1].get_to(p.gate_end);
}

inline void to_json(nlohmann::json& j, const synthesis_record& r) {
  j = {{"lines", r.lines},
       {"partitions", r.partitions},
       {"output_lines", r.output_lines},
       {"num_primary_inputs", r.num_primary_inputs},
       {"order", r.order},
       {"complement_mode", r.complement_mode},
       {"seed", r.seed}};
}

inline void from_json(const nlohmann::json& j, synthesis_record& r) {
  j.at("lines").get_to(r.lines);
  j.at("partitions").get_to(r.partitions);
  j.at("output_lines").get_to(r.output_lines);
  j.at("num_primary_inputs").get_to(r.num_primary_inputs);
  j.at("order").get_to(r.order);
  j.at("complement_mode").get_to(r.complement_mode);
  j.at("seed").get_to(r.seed);
}

inline void to_json(nlohmann::json& j, const embedding_count& c) {
  nlohmann::json factors = nlohmann::json::array();
  for (const auto& f : c.factors) {
    factors.push_back(f.str());
  }
  j = {{"value", c.value.str()}, {"output_combinations", c.output_combinations.str()}, {"factors", factors}};
}

inline void to_json(nlohmann::json& j, const support_profile& p) {
  j = {{"output_lines", p.output_lines},
       {"supports", p.supports},
       {"k", p.k_list},
       {"m", p.m_list},
       {"union_size", p.union_size}};
}

inline void to_json(nlohmann::json& j, const blackbox_result& b) {
  j = {{"embeddings", b.embeddings}, {"profile", b.profile}, {"leaked_garbage", b.leaked_garbage}};
  j["pct_garbage_leaked"] = b.pct_garbage_leaked ? nlohmann::json(*b.pct_garbage_leaked) : nlohmann::json(nullptr);
}

inline void to_json(nlohmann::json& j, const attack_partition& p) {
  j = {{"gates", {p.gate_begin, p.gate_end}},
       {"template", p.template_id ? nlohmann::json(*p.template_id) : nlohmann::json("UNMATCHED")},
       {"candidates", p.candidates}};
  if (p.result_line) {
    j["result_line"] = *p.result_line;
  }
}

inline void to_json(nlohmann::json& j, const attack_report& r) {
  nlohmann::json recovered = nlohmann::json::object();
  for (const auto& [line, value] : r.recovered_ancillas) {
    recovered[std::to_string(line)] = value ? 1 : 0;
  }
  nlohmann::json unresolved = nlohmann::json::object();
  for (const auto& [line, s] : r.unresolved_ancillas) {
    unresolved[std::to_string(line)] = s;
  }
  j = {{"width", r.width},
       {"degenerate", r.degenerate},
       {"leaked_garbage", r.leaked_garbage},
       {"assumed_primary_inputs", r.assumed_primary_inputs},
       {"candidate_ancillas", r.candidate_ancillas},
       {"recovered_ancillas", recovered},
       {"unresolved_ancillas", unresolved},
       {"definite_primary_outputs", r.definite_primary_outputs},
       {"potential_primary_outputs", r.potential_primary_outputs},
       {"partitions", r.partitions},
       {"embeddings", r.embeddings}};
  j["pct_garbage_leaked"] = r.pct_garbage_leaked ? nlohmann::json(*r.pct_garbage_leaked) : nlohmann::json(nullptr);
}

inline void to_json(nlohmann::json& j, const attack_scorecard& s) {
  j = {{"true_ancillas", s.true_ancillas},
       {"recovered_correct", s.recovered_correct},
       {"recovered_wrong", s.recovered_wrong},
       {"unresolved", s.unresolved},
       {"pct_ancilla_recovered", s.pct_ancilla_recovered},
       {"primary_outputs_covered", s.primary_outputs_covered},
       {"partition_agreement", s.partition_agreement}};
}

namespace io {

inline std::string record_write(const synthesis_record& record) { return nlohmann::json(record).dump(2) + "\n"; }

inline synthesis_record record_parse(std::string_view text) {
  try {
    return nlohmann::json::parse(text).get<synthesis_record>();
  } catch (const nlohmann::json::exception& e) {
    throw input_error(std::string("malformed synthesis record: ") + e.what());
  }
}

}  // namespace io
}  // namespace revguard
