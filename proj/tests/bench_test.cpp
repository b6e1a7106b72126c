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

#include <filesystem>
#include <fstream>

#include <unistd.h>

#include <gtest/gtest.h>

#include "revguard/bench.hpp"

using namespace revguard;

namespace {

class temp_dir {
 public:
  explicit temp_dir(const std::string& tag)
      : path_(std::filesystem::temp_directory_path() / ("revguard_" + tag + "_" + std::to_string(::getpid()))) {
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~temp_dir() { std::filesystem::remove_all(path_); }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

const std::filesystem::path samples{REVGUARD_SAMPLES};

}  // namespace

TEST(extra_count, schedule_for_ten_inputs) {
  std::vector<std::size_t> got;
  for (double r : {0.0, 0.1, 0.2, 0.5, 1.0}) {
    got.push_back(extra_count(r, 10));
  }
  EXPECT_EQ(got, (std::vector<std::size_t>{0, 1, 2, 5, 10}));
}

TEST(extra_count, rounding_and_floor) {
  EXPECT_EQ(extra_count(0.1, 3), 1U);
  EXPECT_EQ(extra_count(0.5, 3), 2U);
  EXPECT_EQ(extra_count(0.5, 5), 3U);
  EXPECT_EQ(extra_count(0.2, 4), 1U);
  EXPECT_THROW(extra_count(-0.1, 3), input_error);
}

TEST(run_bench, empty_directory) {
  temp_dir dir("empty");
  const auto result = run_bench(dir.path(), {});
  EXPECT_TRUE(result.rows.empty());
  EXPECT_EQ(bench_csv(result).find('\n'), bench_csv(result).size() - 1);
}

TEST(run_bench, missing_directory) { EXPECT_THROW(run_bench("/nonexistent/revguard", {}), input_error); }

TEST(run_bench, deterministic_csv) {
  bench_options opts;
  opts.seed = 5;
  const auto a = bench_csv(run_bench(samples, opts));
  opts.parallel = false;
  const auto b = bench_csv(run_bench(samples, opts));
  EXPECT_EQ(a, b);
  EXPECT_GT(a.size(), 100U);
}

TEST(run_bench, rows_sorted_and_monotone) {
  const auto result = run_bench(samples, {});
  ASSERT_FALSE(result.rows.empty());
  EXPECT_TRUE(result.skipped.empty());
  for (std::size_t i = 1; i < result.rows.size(); ++i) {
    const auto& prev = result.rows[i - 1];
    const auto& row = result.rows[i];
    EXPECT_LE(prev.name, row.name);
    if (prev.name == row.name) {
      EXPECT_LE(prev.extra, row.extra);
      EXPECT_LE(big_int(prev.embed_blackbox), big_int(row.embed_blackbox)) << row.name;
      EXPECT_LE(big_int(prev.embed_with_info), big_int(row.embed_with_info)) << row.name;
    }
  }
}

TEST(run_bench, embedding_fields_match_analysis) {
  const auto f = io::pla_parse(".i 3\n.o 1\n11- 1\n--1 1\n.e\n");
  bench_options opts;
  const auto row = bench_function("t", f, 0.0, opts).value();
  const auto synth = synthesize_bdd(f);
  EXPECT_EQ(big_int(row.embed_blackbox), count_embeddings_blackbox(synth.circuit).embeddings.value);
  EXPECT_EQ(big_int(row.embed_with_info), attack_bdd(synth.circuit, catalog_default()).embeddings.value);
  EXPECT_DOUBLE_EQ(row.pct_ancilla_recovered, 100.0);
  EXPECT_EQ(row.n, synth.circuit.width());
}

TEST(run_bench, scrambled_ancillas_count_as_hidden) {
  const auto f = io::pla_parse(".i 3\n.o 1\n11- 1\n--1 1\n.e\n");
  const auto plain = bench_function("t", f, 0.0, {}).value();
  const auto scrambled = bench_function("t", f, 1.0, {}).value();
  EXPECT_EQ(scrambled.extra, 3U);
  const auto synth = synthesize_bdd(scramble_inputs(f, 3, 0).function);
  std::size_t built = 0;
  for (const auto& a : synth.record.lines) {
    built += a.constant ? 1 : 0;
  }
  EXPECT_EQ(scrambled.ancilla, built + 3);
  EXPECT_EQ(plain.extra, 0U);
  EXPECT_LT(scrambled.pct_ancilla_recovered, 100.0);
}

TEST(run_bench, invalid_file_skipped) {
  temp_dir dir("bad");
  std::ofstream(dir.path() / "broken.pla") << ".i 2\n.o 1\n1 1\n";
  std::ofstream(dir.path() / "ok.pla") << ".i 2\n.o 1\n11 1\n.e\n";
  const auto result = run_bench(dir.path(), {});
  ASSERT_EQ(result.skipped.size(), 1U);
  EXPECT_EQ(result.skipped[0].name, "broken");
  EXPECT_EQ(result.rows.size(), 5U);
  EXPECT_NE(bench_json(result).find("\"skipped\""), std::string::npos);
}

TEST(run_bench, func_mode) {
  bench_options opts;
  opts.mode = bench_mode::func;
  opts.schedule = {0.0, 0.5};
  const auto result = run_bench(samples, opts);
  ASSERT_FALSE(result.rows.empty());
  for (const auto& row : result.rows) {
    EXPECT_EQ(row.embed_blackbox, row.embed_with_info);
    EXPECT_LE(row.n, bench_func_width_cap);
  }
}

TEST(run_bench, output_scrambling) {
  bench_options opts;
  opts.target = scramble_target::outputs;
  opts.schedule = {0.0, 0.2, 0.5};
  const auto result = run_bench(samples, opts);
  for (std::size_t i = 1; i < result.rows.size(); ++i) {
    if (result.rows[i].name == result.rows[i - 1].name) {
      EXPECT_GE(result.rows[i].garbage, result.rows[i - 1].garbage);
      EXPECT_LE(big_int(result.rows[i - 1].embed_with_info), big_int(result.rows[i].embed_with_info));
    }
  }
}
