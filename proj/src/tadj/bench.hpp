/*
 * Copyright 2026 The tadj Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include "tadj/adjustment_design.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace tadj {

enum class BenchPipeline { Dense, Band4, Band6, SubBlock8, Multiple };
enum class Direction { Forward, Inverse };

std::string_view to_string(BenchPipeline pipeline) noexcept;
std::string_view to_string(Direction direction) noexcept;

struct BenchConfig {
  int samples = 31;             // timed samples per measurement, >= 30
  int warmup = 3;               // discarded passes before sampling
  double min_sample_seconds = 0.01;
  int blocks = 32;              // N x N input blocks per pass
  std::uint64_t seed = 1;
  // Timing does not depend on design quality, only on structure, so the
  // designs used here default to a short optimization.
  DesignConfig design = [] {
    DesignConfig d;
    d.max_iterations = 40;
    d.restarts = 1;
    return d;
  }();
};

struct BenchReport {
  std::string pipeline;
  int size = 0;
  Direction direction = Direction::Forward;
  double coefficients_per_second = 0.0;
  double ratio_vs_dense = 0.0;
  int samples = 0;
  double dispersion = 0.0;        // interquartile range / median
  std::int64_t passes_per_sample = 0;
  std::vector<std::string> warnings;
};

/// Times 2-D transforms of identical pseudo-random N x N blocks through each
/// pipeline and through dense matrix multiplication, in the same session.
/// Samples are taken round-robin across pipelines so that drift affects all
/// of them alike. Every pipeline is checked against its dense oracle first;
/// a mismatch throws Error(Configuration) and nothing is timed.
///
/// The "multiple" pipeline times the four DST-7/DCT-8 combinations an
/// encoder needs, against four dense 2-D transforms; its inverse is the
/// single sub-block inverse a decoder runs.
std::vector<BenchReport> run_benchmark(const std::vector<BenchPipeline>& pipelines,
                                       const std::vector<int>& sizes, const BenchConfig& config);

/// Ratio table: one row per pipeline, columns forward/inverse x sizes.
std::string bench_table(const std::vector<BenchReport>& reports);
std::string bench_csv(const std::vector<BenchReport>& reports);

/// Median and relative interquartile range of a sample set.
struct SampleSummary {
  double median = 0.0;
  double dispersion = 0.0;
};
SampleSummary summarize_samples(std::vector<double> values);

}  // namespace tadj
