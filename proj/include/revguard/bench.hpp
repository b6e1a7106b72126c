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
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <future>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>  // nlohmann/json, vendored

#include "revguard/analyze.hpp"
#include "revguard/embed.hpp"
#include "revguard/io/pla.hpp"
#include "revguard/synth_bdd.hpp"
#include "revguard/synth_func.hpp"

namespace revguard {

enum class bench_mode : std::uint8_t { bdd, func };
enum class scramble_target : std::uint8_t { inputs, outputs };

/// Widest embedding the func mode will synthesize; wider rows are skipped.
inline constexpr std::size_t bench_func_width_cap = 14;

struct bench_options {
  bench_mode mode = bench_mode::bdd;
  scramble_target target = scramble_target::inputs;
  std::vector<double> schedule{0.0, 0.1, 0.2, 0.5, 1.0};
  std::uint64_t seed = 0;
  bool complement_mode = false;
  bool parallel = true;
};

struct bench_row {
  std::string name;
  double ratio = 0.0;
  std::size_t extra = 0;
  std::size_t n = 0;
  std::size_t garbage = 0;
  std::size_t ancilla = 0;
  std::uint64_t quantum_cost = 0;
  double pct_garbage_leaked = 0.0;
  std::string embed_blackbox;
  double pct_ancilla_recovered = 0.0;
  std::string embed_with_info;
};

struct bench_skip {
  std::string name;
  std::string reason;
};

struct bench_result {
  std::vector<bench_row> rows;
  std::vector<bench_skip> skipped;
};

/// Round-half-up of ratio * n, at least 1 for a nonzero ratio.
inline std::size_t extra_count(double ratio, std::size_t n) {
  if (!(ratio >= 0.0)) {
    throw input_error("schedule ratios must be nonnegative");
  }
  if (ratio == 0.0) {
    return 0;
  }
  const auto rounded = static_cast<std::size_t>(std::floor(ratio * static_cast<double>(n) + 0.5));
  return std::max<std::size_t>(1, rounded);
}

namespace detail {

inline std::size_t count_if_lines(const std::vector<line_annotation>& lines, bool garbage) {
  return static_cast<std::size_t>(std::count_if(lines.begin(), lines.end(), [garbage](const line_annotation& a) {
    return garbage ? a.garbage : a.constant.has_value();
  }));
}

inline std::string blackbox_value(const reversible_circuit& circuit) {
  try {
    return count_embeddings_blackbox(circuit).embeddings.value.str();
  } catch (const degenerate_circuit&) {
    return "0";
  }
}

inline double leaked_pct(const reversible_circuit& circuit, const std::vector<line_annotation>& truth) {
  const auto garbage = count_if_lines(truth, true);
  if (garbage == 0) {
    return 0.0;
  }
  std::size_t leaked = 0;
  for (std::size_t line : passthrough_lines(circuit)) {
    leaked += truth[line].garbage ? 1 : 0;
  }
  return 100.0 * static_cast<double>(leaked) / static_cast<double>(garbage);
}

}  // namespace detail

/// One schedule point for one function. Returns nullopt when the func mode
/// would exceed its width cap.
inline std::optional<bench_row> bench_function(const std::string& name, const boolean_function& f, double ratio,
                                               const bench_options& options) {
  const std::size_t extra = extra_count(ratio, f.num_inputs());
  boolean_function g = f;
  std::vector<bool> hidden_constants;
  std::vector<std::size_t> hidden_outputs;
  if (extra > 0) {
    auto s = options.target == scramble_target::inputs ? scramble_inputs(f, extra, options.seed)
                                                       : scramble_outputs(f, extra, options.seed);
    g = std::move(s.function);
    hidden_constants = std::move(s.hidden_constants);
    hidden_outputs = std::move(s.hidden_garbage);
  }

  bench_row row;
  row.name = name;
  row.ratio = ratio;
  row.extra = extra;
  if (options.mode == bench_mode::bdd) {
    bdd_synthesis_options so;
    so.complement_mode = options.complement_mode;
    so.seed = options.seed;
    auto result = synthesize_bdd(g, so);
    // The designer knows which inputs and outputs were added for scrambling.
    auto truth = result.record;
    for (std::size_t j = 0; j < hidden_constants.size(); ++j) {
      truth.lines[f.num_inputs() + j].constant = hidden_constants[j];
    }
    for (std::size_t o : hidden_outputs) {
      truth.lines[truth.output_lines[o]].garbage = true;
    }
    const auto& circuit = result.circuit;
    row.n = circuit.width();
    row.garbage = detail::count_if_lines(truth.lines, true);
    row.ancilla = detail::count_if_lines(truth.lines, false);
    row.quantum_cost = quantum_cost(circuit);
    row.pct_garbage_leaked = detail::leaked_pct(circuit, truth.lines);
    row.embed_blackbox = detail::blackbox_value(circuit);
    const auto report = attack_bdd(circuit.with_annotations(std::nullopt), catalog_default(options.complement_mode));
    row.pct_ancilla_recovered = score_attack(report, truth).pct_ancilla_recovered;
    row.embed_with_info = report.embeddings.value.str();
    return row;
  }

  const std::size_t width = std::max(g.num_inputs(), g.num_outputs() + min_garbage(g));
  if (width > bench_func_width_cap) {
    return std::nullopt;
  }
  embed_options eo;
  eo.seed = options.seed;
  auto spec = embed(g, eo);
  auto truth = spec.annotations;
  for (std::size_t j = 0; j < hidden_constants.size(); ++j) {
    truth[f.num_inputs() + j].constant = hidden_constants[j];
  }
  for (std::size_t o : hidden_outputs) {
    truth[o].garbage = true;
  }
  const auto circuit = synthesize_embedding(spec);
  row.n = circuit.width();
  row.garbage = detail::count_if_lines(truth, true);
  row.ancilla = detail::count_if_lines(truth, false);
  row.quantum_cost = quantum_cost(circuit);
  row.pct_garbage_leaked = detail::leaked_pct(circuit, truth);
  row.embed_blackbox = detail::blackbox_value(circuit);
  // Knowing the functional method leaves the attacker with the black-box count.
  row.pct_ancilla_recovered = 0.0;
  row.embed_with_info = row.embed_blackbox;
  return row;
}

namespace detail {

struct file_outcome {
  std::vector<bench_row> rows;
  std::vector<bench_skip> skipped;
};

inline file_outcome bench_file(const std::filesystem::path& path, const bench_options& options) {
  file_outcome out;
  const std::string name = path.stem().string();
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    out.skipped.push_back({name, "unreadable file"});
    return out;
  }
  std::ostringstream text;
  text << in.rdbuf();
  try {
    const auto f = io::pla_parse(text.str());
    for (double ratio : options.schedule) {
      if (auto row = bench_function(name, f, ratio, options)) {
        out.rows.push_back(std::move(*row));
      } else {
        out.skipped.push_back({name, "ratio " + std::to_string(ratio) + " exceeds the func-mode width cap of " +
                                         std::to_string(bench_func_width_cap)});
      }
    }
  } catch (const input_error& e) {
    out.rows.clear();
    out.skipped.push_back({name, e.what()});
  }
  return out;
}

}  // namespace detail

/// Runs the sweep over every `*.pla` file in `directory`. Rows come out sorted
/// by file name and schedule position whatever order the files finish in.
inline bench_result run_bench(const std::filesystem::path& directory, const bench_options& options) {
  std::error_code ec;
  if (!std::filesystem::is_directory(directory, ec)) {
    throw input_error("bench directory '" + directory.string() + "' does not exist");
  }
  for (double r : options.schedule) {
    (void)extra_count(r, 1);
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(directory)) {
    if (entry.is_regular_file() && entry.path().extension() == ".pla") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end(),
            [](const auto& a, const auto& b) { return a.filename().string() < b.filename().string(); });

  std::vector<detail::file_outcome> outcomes(files.size());
  if (options.parallel && files.size() > 1) {
    std::vector<std::future<detail::file_outcome>> jobs;
    jobs.reserve(files.size());
    for (const auto& file : files) {
      jobs.push_back(std::async(std::launch::async, detail::bench_file, file, options));
    }
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      outcomes[i] = jobs[i].get();
    }
  } else {
    for (std::size_t i = 0; i < files.size(); ++i) {
      outcomes[i] = detail::bench_file(files[i], options);
    }
  }
  bench_result result;
  for (auto& o : outcomes) {
    result.rows.insert(result.rows.end(), o.rows.begin(), o.rows.end());
    result.skipped.insert(result.skipped.end(), o.skipped.begin(), o.skipped.end());
  }
  return result;
}

namespace detail {
inline std::string fixed2(double v) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(2);
  os << v;
  return os.str();
}
}  // namespace detail

inline std::string bench_csv(const bench_result& result) {
  std::ostringstream os;
  os << "benchmark,ratio,extra,n,garbage,ancilla,quantum_cost,pct_garbage_leaked,embed_blackbox,"
        "pct_ancilla_recovered,embed_with_info\n";
  for (const auto& r : result.rows) {
    os << r.name << ',' << detail::fixed2(r.ratio) << ',' << r.extra << ',' << r.n << ',' << r.garbage << ','
       << r.ancilla << ',' << r.quantum_cost << ',' << detail::fixed2(r.pct_garbage_leaked) << ','
       << r.embed_blackbox << ',' << detail::fixed2(r.pct_ancilla_recovered) << ',' << r.embed_with_info << '\n';
  }
  return os.str();
}

inline std::string bench_json(const bench_result& result) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : result.rows) {
    rows.push_back({{"benchmark", r.name},
                    {"ratio", r.ratio},
                    {"extra", r.extra},
                    {"n", r.n},
                    {"garbage", r.garbage},
                    {"ancilla", r.ancilla},
                    {"quantum_cost", r.quantum_cost},
                    {"pct_garbage_leaked", r.pct_garbage_leaked},
                    {"embed_blackbox", r.embed_blackbox},
                    {"pct_ancilla_recovered", r.pct_ancilla_recovered},
                    {"embed_with_info", r.embed_with_info}});
  }
  nlohmann::json skipped = nlohmann::json::array();
  for (const auto& s : result.skipped) {
    skipped.push_back({{"benchmark", s.name}, {"reason", s.reason}});
  }
  return nlohmann::json{{"rows", rows}, {"skipped", skipped}}.dump(2) + "\n";
}

}  // namespace revguard
