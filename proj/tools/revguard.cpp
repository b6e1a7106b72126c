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

// revguard: command-line front end. Exit codes: 0 success, 1 input error,
// 2 internal invariant violation.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "revguard/analyze.hpp"
#include "revguard/bench.hpp"
#include "revguard/embed.hpp"
#include "revguard/io/pla.hpp"
#include "revguard/io/real.hpp"
#include "revguard/io/record.hpp"
#include "revguard/synth_bdd.hpp"
#include "revguard/synth_func.hpp"

namespace {

using namespace revguard;
using json = nlohmann::json;

struct common_flags {
  std::uint64_t seed = 0;
  std::string format = "csv";
  std::string output;
};

void add_common(CLI::App* cmd, common_flags& flags) {
  cmd->add_option("--seed", flags.seed, "Seed for every random choice");
  cmd->add_option("--format", flags.format, "Report format")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--output,-o", flags.output, "Write the result here instead of stdout");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw input_error("cannot read '" + path + "'");
  }
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) {
    throw input_error("cannot write '" + path + "'");
  }
}

void emit(const common_flags& flags, const std::string& text) {
  if (flags.output.empty()) {
    std::cout << text;
  } else {
    write_file(flags.output, text);
  }
}

std::string csv_pairs(const std::vector<std::pair<std::string, std::string>>& rows) {
  std::string out = "key,value\n";
  for (const auto& [k, v] : rows) {
    out += k + "," + v + "\n";
  }
  return out;
}

std::string join_lines(const std::set<std::size_t>& lines) {
  std::string out;
  for (std::size_t l : lines) {
    out += (out.empty() ? "" : " ") + std::to_string(l);
  }
  return out;
}

std::string join_values(const std::vector<std::size_t>& values) {
  std::string out;
  for (std::size_t v : values) {
    out += (out.empty() ? "" : " ") + std::to_string(v);
  }
  return out;
}

std::vector<std::size_t> parse_order(const std::string& text, std::size_t n) {
  std::vector<std::size_t> order;
  if (text.empty()) {
    return order;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      const auto v = std::stoul(item);
      if (v == 0 || v > n) {
        throw input_error("order entry " + item + " out of range 1.." + std::to_string(n));
      }
      order.push_back(v - 1);
    } catch (const std::logic_error&) {
      throw input_error("bad order entry '" + item + "'");
    }
  }
  return order;
}

std::string default_sidecar(const std::string& circuit_path) {
  std::filesystem::path p(circuit_path);
  p.replace_extension(".record.json");
  return p.string();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reverse-engineering analysis of reversible circuits"};
  app.require_subcommand(1);

  common_flags flags;

  std::string circuit_path;
  std::string pla_path;
  std::string input_bits;
  bool inverse = false;
  bool complement_mode = false;
  std::string order_text;
  std::string record_path;
  std::string ancillas = "zero";
  std::string policy = "first-free";
  std::size_t scramble_in = 0;
  std::size_t scramble_out = 0;
  std::string hidden_path;
  std::string bench_dir;
  std::string bench_mode_text = "bdd";
  std::string bench_target = "inputs";
  std::vector<double> schedule{0.0, 0.1, 0.2, 0.5, 1.0};

  auto* sim = app.add_subcommand("sim", "Simulate a .real circuit");
  sim->add_option("circuit", circuit_path, ".real netlist")->required();
  sim->add_option("--input", input_bits, "Input bits, last character is line 1; omit for the full table");
  sim->add_flag("--inverse", inverse, "Run the cascade backwards");
  add_common(sim, flags);

  auto* cost = app.add_subcommand("cost", "Gate count and quantum cost");
  cost->add_option("circuit", circuit_path, ".real netlist")->required();
  add_common(cost, flags);

  auto* sbdd = app.add_subcommand("synth-bdd", "BDD-based synthesis of a PLA function");
  sbdd->add_option("function", pla_path, "PLA file")->required();
  sbdd->add_flag("--complement-mode", complement_mode, "Randomly realize eligible nodes complemented");
  sbdd->add_option("--order", order_text, "Variable order as 1-based indices, top first");
  sbdd->add_option("--record", record_path, "Ground-truth sidecar path");
  add_common(sbdd, flags);

  auto* emb = app.add_subcommand("embed", "Embed a PLA function into a reversible permutation");
  emb->add_option("function", pla_path, "PLA file")->required();
  emb->add_option("--ancillas", ancillas, "Ancilla constants")->check(CLI::IsMember({"zero", "one", "seeded"}));
  emb->add_option("--policy", policy, "Don't-care fill")->check(CLI::IsMember({"first-free", "seeded"}));
  add_common(emb, flags);

  auto* sfunc = app.add_subcommand("synth-func", "Embedding followed by transformation-based synthesis");
  sfunc->add_option("function", pla_path, "PLA file")->required();
  sfunc->add_option("--ancillas", ancillas, "Ancilla constants")->check(CLI::IsMember({"zero", "one", "seeded"}));
  sfunc->add_option("--policy", policy, "Don't-care fill")->check(CLI::IsMember({"first-free", "seeded"}));
  add_common(sfunc, flags);

  auto* ana = app.add_subcommand("analyze", "Black-box embedding count");
  ana->add_option("circuit", circuit_path, ".real netlist")->required();
  add_common(ana, flags);

  auto* atk = app.add_subcommand("attack", "Template-matching attack on a BDD-synthesized circuit");
  atk->add_option("circuit", circuit_path, ".real netlist")->required();
  atk->add_option("--ground-truth", record_path, "Synthesis record to score against");
  atk->add_flag("--complement-mode", complement_mode, "Match against the complement-mode catalog");
  add_common(atk, flags);

  auto* scr = app.add_subcommand("scramble", "Add extra inputs or outputs to a PLA function");
  scr->add_option("function", pla_path, "PLA file")->required();
  scr->add_option("--inputs", scramble_in, "Extra ancillary inputs");
  scr->add_option("--outputs", scramble_out, "Extra garbage outputs");
  scr->add_option("--hidden", hidden_path, "Write the secret constants and extra outputs as JSON");
  add_common(scr, flags);

  auto* bch = app.add_subcommand("bench", "Scrambling sweep over a directory of PLA files");
  bch->add_option("directory", bench_dir, "Directory of .pla files")->required();
  bch->add_option("--mode", bench_mode_text, "Synthesis method")->check(CLI::IsMember({"bdd", "func"}));
  bch->add_option("--target", bench_target, "What to scramble")->check(CLI::IsMember({"inputs", "outputs"}));
  bch->add_option("--schedule", schedule, "Extra-line ratios of the input count")->delimiter(',');
  bch->add_flag("--complement-mode", complement_mode, "Complement-mode BDD synthesis and attack");
  add_common(bch, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (sim->parsed()) {
      const auto circuit = io::real_parse(read_file(circuit_path));
      auto run = [&](const bit_vector& in) {
        return inverse ? simulate_inverse(circuit, in) : simulate(circuit, in);
      };
      std::vector<std::pair<std::string, std::string>> rows;
      if (!input_bits.empty()) {
        rows.emplace_back(input_bits, bits_to_string(run(bits_from_string(input_bits))));
      } else {
        if (circuit.width() > 20) {
          throw input_error("full simulation is limited to 20 lines; pass --input");
        }
        for (std::uint64_t x = 0; x < (std::uint64_t{1} << circuit.width()); ++x) {
          const auto in = bits_from_word(x, circuit.width());
          rows.emplace_back(bits_to_string(in), bits_to_string(run(in)));
        }
      }
      if (flags.format == "json") {
        json j = json::array();
        for (const auto& [in, out] : rows) {
          j.push_back({{"input", in}, {"output", out}});
        }
        emit(flags, j.dump(2) + "\n");
      } else {
        std::string out = "input,output\n";
        for (const auto& [in, o] : rows) {
          out += in + "," + o + "\n";
        }
        emit(flags, out);
      }
    } else if (cost->parsed()) {
      const auto circuit = io::real_parse(read_file(circuit_path));
      detail::require_valid_gates(circuit);
      const auto qc = quantum_cost(circuit);
      if (flags.format == "json") {
        emit(flags, json{{"lines", circuit.width()}, {"gates", circuit.num_gates()}, {"quantum_cost", qc}}.dump(2) +
                        "\n");
      } else {
        emit(flags, csv_pairs({{"lines", std::to_string(circuit.width())},
                               {"gates", std::to_string(circuit.num_gates())},
                               {"quantum_cost", std::to_string(qc)}}));
      }
    } else if (sbdd->parsed()) {
      const auto f = io::pla_parse(read_file(pla_path));
      bdd_synthesis_options opts;
      opts.order = parse_order(order_text, f.num_inputs());
      opts.complement_mode = complement_mode;
      opts.seed = flags.seed;
      const auto result = synthesize_bdd(f, opts);
      emit(flags, io::real_write(result.circuit));
      if (record_path.empty() && !flags.output.empty()) {
        record_path = default_sidecar(flags.output);
      }
      if (!record_path.empty()) {
        write_file(record_path, io::record_write(result.record));
      }
    } else if (emb->parsed() || sfunc->parsed()) {
      const auto f = io::pla_parse(read_file(pla_path));
      embed_options opts;
      opts.ancillas = ancillas == "zero" ? ancilla_mode::zero : ancillas == "one" ? ancilla_mode::one
                                                                                    : ancilla_mode::seeded;
      opts.policy = policy == "seeded" ? dont_care_policy::seeded : dont_care_policy::first_free;
      opts.seed = flags.seed;
      const auto spec = embed(f, opts);
      if (sfunc->parsed()) {
        emit(flags, io::real_write(synthesize_embedding(spec)));
      } else if (flags.format == "json") {
        json j = {{"width", spec.width},
                  {"lines", spec.line_names()},
                  {"annotations", spec.annotations},
                  {"permutation", spec.permutation}};
        emit(flags, j.dump(2) + "\n");
      } else {
        std::string out = "input,output\n";
        for (std::uint64_t x = 0; x < spec.permutation.size(); ++x) {
          out += bits_to_string(bits_from_word(x, spec.width)) + "," +
                 bits_to_string(bits_from_word(spec.permutation[x], spec.width)) + "\n";
        }
        emit(flags, out);
      }
    } else if (ana->parsed()) {
      const auto circuit = io::real_parse(read_file(circuit_path));
      detail::require_valid_gates(circuit);
      const auto result = count_embeddings_blackbox(circuit);
      if (flags.format == "json") {
        emit(flags, json(result).dump(2) + "\n");
      } else {
        emit(flags, csv_pairs({{"embeddings", result.embeddings.value.str()},
                               {"remaining_outputs", std::to_string(result.profile.output_lines.size())},
                               {"union_support", std::to_string(result.profile.union_size)},
                               {"k", join_values(result.profile.k_list)},
                               {"m", join_values(result.profile.m_list)},
                               {"leaked_garbage", join_lines(result.leaked_garbage)},
                               {"pct_garbage_leaked", result.pct_garbage_leaked
                                                          ? detail::fixed2(*result.pct_garbage_leaked)
                                                          : std::string()}}));
      }
    } else if (atk->parsed()) {
      const auto circuit = io::real_parse(read_file(circuit_path));
      const auto report = attack_bdd(circuit.with_annotations(std::nullopt), catalog_default(complement_mode));
      std::optional<attack_scorecard> card;
      if (!record_path.empty()) {
        card = score_attack(report, io::record_parse(read_file(record_path)));
      }
      if (flags.format == "json") {
        json j = {{"report", report}};
        if (card) {
          j["score"] = *card;
        }
        emit(flags, j.dump(2) + "\n");
      } else {
        std::string recovered;
        for (const auto& [line, v] : report.recovered_ancillas) {
          recovered += (recovered.empty() ? "" : " ") + std::to_string(line) + "=" + (v ? "1" : "0");
        }
        std::set<std::size_t> unresolved;
        for (const auto& [line, s] : report.unresolved_ancillas) {
          unresolved.insert(line);
        }
        std::size_t unmatched = 0;
        for (const auto& p : report.partitions) {
          unmatched += p.template_id ? 0 : 1;
        }
        std::vector<std::pair<std::string, std::string>> rows{
            {"leaked_garbage", join_lines(report.leaked_garbage)},
            {"candidate_ancillas", join_lines(report.candidate_ancillas)},
            {"recovered_ancillas", recovered},
            {"unresolved_ancillas", join_lines(unresolved)},
            {"definite_primary_outputs", join_lines(report.definite_primary_outputs)},
            {"potential_primary_outputs", join_lines(report.potential_primary_outputs)},
            {"partitions", std::to_string(report.partitions.size())},
            {"unmatched_partitions", std::to_string(unmatched)},
            {"embeddings", report.embeddings.value.str()}};
        if (card) {
          rows.emplace_back("pct_ancilla_recovered", detail::fixed2(card->pct_ancilla_recovered));
          rows.emplace_back("recovered_wrong", std::to_string(card->recovered_wrong));
          rows.emplace_back("primary_outputs_covered", card->primary_outputs_covered ? "true" : "false");
          rows.emplace_back("partition_agreement", detail::fixed2(card->partition_agreement));
        }
        emit(flags, csv_pairs(rows));
      }
    } else if (scr->parsed()) {
      if ((scramble_in == 0) == (scramble_out == 0)) {
        throw input_error("pass exactly one of --inputs or --outputs with a positive count");
      }
      const auto f = io::pla_parse(read_file(pla_path));
      const auto s = scramble_in > 0 ? scramble_inputs(f, scramble_in, flags.seed)
                                     : scramble_outputs(f, scramble_out, flags.seed);
      emit(flags, io::pla_write(s.function));
      if (!hidden_path.empty()) {
        json hidden = {{"constants", s.hidden_constants}, {"extra_outputs", s.hidden_garbage}};
        write_file(hidden_path, hidden.dump(2) + "\n");
      }
    } else if (bch->parsed()) {
      bench_options opts;
      opts.mode = bench_mode_text == "func" ? bench_mode::func : bench_mode::bdd;
      opts.target = bench_target == "outputs" ? scramble_target::outputs : scramble_target::inputs;
      opts.schedule = schedule;
      opts.seed = flags.seed;
      opts.complement_mode = complement_mode;
      const auto result = run_bench(bench_dir, opts);
      for (const auto& s : result.skipped) {
        std::cerr << "warning: skipped " << s.name << ": " << s.reason << "\n";
      }
      emit(flags, flags.format == "json" ? bench_json(result) : bench_csv(result));
    }
  } catch (const input_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const invariant_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
