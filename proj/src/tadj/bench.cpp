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

#include "tadj/bench.hpp"

#include "tadj/error.hpp"
#include "tadj/fast_transform.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <sstream>

namespace tadj {

std::string_view to_string(BenchPipeline pipeline) noexcept {
  switch (pipeline) {
    case BenchPipeline::Dense: return "dense";
    case BenchPipeline::Band4: return "band-4";
    case BenchPipeline::Band6: return "band-6";
    case BenchPipeline::SubBlock8: return "subblock-8";
    case BenchPipeline::Multiple: return "multiple";
  }
  return "?";
}

std::string_view to_string(Direction direction) noexcept {
  return direction == Direction::Forward ? "forward" : "inverse";
}

SampleSummary summarize_samples(std::vector<double> values) {
  if (values.empty()) return {};
  std::sort(values.begin(), values.end());
  auto quantile = [&](double q) {
    const double pos = q * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = static_cast<std::size_t>(std::ceil(pos));
    return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
  };
  SampleSummary s;
  s.median = quantile(0.5);
  s.dispersion = s.median != 0.0 ? (quantile(0.75) - quantile(0.25)) / s.median : 0.0;
  return s;
}

namespace {

using Clock = std::chrono::steady_clock;

volatile double g_sink = 0.0;

struct Job {
  std::string id;
  BenchPipeline pipeline;
  Direction direction;
  std::string baseline;  // id of the job this one is compared with
  double coefficients_per_pass = 0.0;
  std::function<void()> pass;
  std::int64_t passes = 1;
  std::vector<double> throughput;
  std::vector<std::string> warnings;
};

double time_passes(Job& job, std::int64_t passes) {
  const auto start = Clock::now();
  for (std::int64_t p = 0; p < passes; ++p) job.pass();
  const auto stop = Clock::now();
  return std::chrono::duration<double>(stop - start).count();
}

Matrix from_row_major(const double* data, int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = data[i * n + j];
  }
  return m;
}

void require_close(const Matrix& got, const Matrix& want, const std::string& what) {
  const double err = max_abs_diff(got, want);
  if (!(err < 1e-9)) {
    throw Error(ErrorCode::Configuration,
                what + " failed its dense oracle check (max error " + std::to_string(err) +
                    "); refusing to time it");
  }
}

}  // namespace

std::vector<BenchReport> run_benchmark(const std::vector<BenchPipeline>& pipelines,
                                       const std::vector<int>& sizes, const BenchConfig& config) {
  if (config.samples < 30) {
    throw Error(ErrorCode::Configuration, "benchmark needs at least 30 samples per measurement");
  }
  if (config.blocks < 1 || config.warmup < 0 || !(config.min_sample_seconds > 0.0)) {
    throw Error(ErrorCode::Configuration, "invalid benchmark configuration");
  }
  for (int n : sizes) {
    if (!fast_size_supported(n) || n < 8) {
      throw Error(ErrorCode::InvalidDimension,
                  "benchmark sizes must be in {8, 16, 32, 64}, got " + std::to_string(n));
    }
  }

  std::vector<BenchReport> reports;
  for (int n : sizes) {
    const std::size_t block_len = static_cast<std::size_t>(n) * n;
    const std::size_t total = block_len * config.blocks;

    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> input(total);
    for (auto& v : input) v = dist(rng);
    std::vector<double> out(total * 4);
    std::vector<double> dct2_out(total);

    const auto dst7 = build_transform(TransformKind::DST7, n);
    const auto dct8 = build_transform(TransformKind::DCT8, n);
    const auto dst3 = build_transform(TransformKind::DST3, n);
    const auto dct2 = build_transform(TransformKind::DCT2, n);
    const DenseTransform dense7(dst7.entries);
    const DenseTransform dense8(dct8.entries);

    auto design = [&](const TransformMatrix& base, const SparsityPattern& pattern, Side side) {
      return optimize_adjustment(base, dst7, pattern, side, config.design);
    };

    std::map<BenchPipeline, AdjustedTransform> adjusted;
    const bool want_band4 = std::count(pipelines.begin(), pipelines.end(), BenchPipeline::Band4);
    const bool want_band6 = std::count(pipelines.begin(), pipelines.end(), BenchPipeline::Band6);
    const bool want_sub = std::count(pipelines.begin(), pipelines.end(), BenchPipeline::SubBlock8) ||
                          std::count(pipelines.begin(), pipelines.end(), BenchPipeline::Multiple);
    if (want_band4) {
      adjusted.emplace(BenchPipeline::Band4,
                       AdjustedTransform(design(dst3, SparsityPattern::band(4, n), Side::Pre)));
    }
    if (want_band6) {
      adjusted.emplace(BenchPipeline::Band6,
                       AdjustedTransform(design(dst3, SparsityPattern::band(6, n), Side::Pre)));
    }
    std::optional<SimultaneousEncoder> encoder;
    std::optional<AdjustedTransform> sub8_dct8;
    if (want_sub) {
      auto c7 = design(dct2, SparsityPattern::subblock(std::min(8, n), n), Side::Post);
      sub8_dct8.emplace(dct8_adjustment_from_dst7(c7));
      encoder.emplace(EncoderContext{c7, c7});
      adjusted.emplace(BenchPipeline::SubBlock8, AdjustedTransform(std::move(c7)));
    }

    // Oracle checks on the first block.
    const Matrix x0 = from_row_major(input.data(), n);
    for (const auto& [id, t] : adjusted) {
      const Matrix h = t.dense();
      require_close(forward_2d(t, t, x0), h * x0 * h.transpose(),
                    std::string(to_string(id)) + " forward");
      require_close(inverse_2d(t, t, x0), h.transpose() * x0 * h,
                    std::string(to_string(id)) + " inverse");
    }
    {
      std::vector<double> y(block_len);
      forward_2d(dense7, dense7, input.data(), y.data());
      require_close(from_row_major(y.data(), n), dst7.entries * x0 * dst7.entries.transpose(),
                    "dense forward");
      inverse_2d(dense7, dense7, input.data(), y.data());
      require_close(from_row_major(y.data(), n), dst7.entries.transpose() * x0 * dst7.entries,
                    "dense inverse");
    }
    if (encoder) {
      const auto outputs = encoder->evaluate(x0);
      const auto& s7 = adjusted.at(BenchPipeline::SubBlock8);
      const AdjustedTransform* kinds[2] = {&s7, &*sub8_dct8};
      for (int hk = 0; hk < 2; ++hk) {
        for (int vk = 0; vk < 2; ++vk) {
          require_close(outputs.combos[hk][vk], forward_2d(*kinds[hk], *kinds[vk], x0),
                        "multiple forward");
        }
      }
    }

    const double coeffs = static_cast<double>(total);
    std::vector<Job> jobs;
    auto add_job = [&](std::string id, BenchPipeline p, Direction d, std::string baseline,
                       double coefficients, std::function<void()> fn) {
      Job job;
      job.id = std::move(id);
      job.pipeline = p;
      job.direction = d;
      job.baseline = std::move(baseline);
      job.coefficients_per_pass = coefficients;
      job.pass = std::move(fn);
      jobs.push_back(std::move(job));
    };

    auto each_block = [&](auto&& fn) {
      for (int b = 0; b < config.blocks; ++b) {
        fn(input.data() + b * block_len, out.data() + b * block_len);
      }
      g_sink = g_sink + out[0];
    };

    add_job("dense", BenchPipeline::Dense, Direction::Forward, "dense", coeffs, [&] {
      each_block([&](const double* in, double* o) { forward_2d(dense7, dense7, in, o); });
    });
    add_job("dense", BenchPipeline::Dense, Direction::Inverse, "dense", coeffs, [&] {
      each_block([&](const double* in, double* o) { inverse_2d(dense7, dense7, in, o); });
    });

    for (auto p : pipelines) {
      if (p == BenchPipeline::Dense) continue;
      const std::string id(to_string(p));
      if (p == BenchPipeline::Multiple) {
        const auto& s7 = adjusted.at(BenchPipeline::SubBlock8);
        add_job("dense-x4", BenchPipeline::Dense, Direction::Forward, "dense-x4", 4 * coeffs, [&] {
          for (int b = 0; b < config.blocks; ++b) {
            const double* in = input.data() + b * block_len;
            double* o = out.data() + 4 * b * block_len;
            forward_2d(dense7, dense7, in, o);
            forward_2d(dense7, dense8, in, o + block_len);
            forward_2d(dense8, dense7, in, o + 2 * block_len);
            forward_2d(dense8, dense8, in, o + 3 * block_len);
          }
          g_sink = g_sink + out[0];
        });
        add_job(id, p, Direction::Forward, "dense-x4", 4 * coeffs, [&] {
          for (int b = 0; b < config.blocks; ++b) {
            double* o = out.data() + 4 * b * block_len;
            encoder->evaluate(input.data() + b * block_len, dct2_out.data() + b * block_len,
                              {o, o + block_len, o + 2 * block_len, o + 3 * block_len});
          }
          g_sink = g_sink + out[0];
        });
        add_job(id, p, Direction::Inverse, "dense", coeffs, [&, t = &s7] {
          each_block([&](const double* in, double* o) { inverse_2d(*t, *t, in, o); });
        });
        continue;
      }
      const AdjustedTransform* t = &adjusted.at(p);
      add_job(id, p, Direction::Forward, "dense", coeffs, [&, t] {
        each_block([&](const double* in, double* o) { forward_2d(*t, *t, in, o); });
      });
      add_job(id, p, Direction::Inverse, "dense", coeffs, [&, t] {
        each_block([&](const double* in, double* o) { inverse_2d(*t, *t, in, o); });
      });
    }

    for (auto& job : jobs) {
      for (int w = 0; w < config.warmup; ++w) job.pass();
      while (time_passes(job, job.passes) < config.min_sample_seconds) {
        job.passes *= 2;
        if (job.passes > (std::int64_t{1} << 30)) {
          throw Error(ErrorCode::Configuration, "timer never reached the sample target");
        }
      }
      if (job.passes > 1) {
        job.warnings.push_back("batch increased to " + std::to_string(job.passes) +
                               " passes per sample to reach the timer target");
      }
    }
    for (int s = 0; s < config.samples; ++s) {
      for (auto& job : jobs) {
        const double seconds = time_passes(job, job.passes);
        job.throughput.push_back(job.coefficients_per_pass * static_cast<double>(job.passes) /
                                 seconds);
      }
    }

    std::map<std::pair<std::string, Direction>, SampleSummary> summaries;
    for (const auto& job : jobs) {
      const auto summary = summarize_samples(job.throughput);
      summaries[{job.id, job.direction}] = summary;
    }
    for (const auto& job : jobs) {
      if (job.id == "dense-x4") continue;
      const auto& mine = summaries.at({job.id, job.direction});
      const auto& base = summaries.at({job.baseline, job.direction});
      BenchReport r;
      r.pipeline = job.id;
      r.size = n;
      r.direction = job.direction;
      r.coefficients_per_second = mine.median;
      r.ratio_vs_dense = mine.median / base.median;
      r.samples = static_cast<int>(job.throughput.size());
      r.dispersion = mine.dispersion;
      r.passes_per_sample = job.passes;
      r.warnings = job.warnings;
      reports.push_back(std::move(r));
    }
  }
  return reports;
}

std::string bench_table(const std::vector<BenchReport>& reports) {
  std::vector<std::string> order;
  std::vector<int> sizes;
  for (const auto& r : reports) {
    if (std::find(order.begin(), order.end(), r.pipeline) == order.end()) order.push_back(r.pipeline);
    if (std::find(sizes.begin(), sizes.end(), r.size) == sizes.end()) sizes.push_back(r.size);
  }
  std::ostringstream os;
  char buf[64];
  os << "Throughput ratio vs dense matrix multiplication (median; +-relative IQR)\n";
  std::snprintf(buf, sizeof(buf), "%-12s", "pipeline");
  os << buf;
  for (auto d : {Direction::Forward, Direction::Inverse}) {
    for (int n : sizes) {
      std::snprintf(buf, sizeof(buf), " %16s", (std::string(to_string(d)) + "-" + std::to_string(n)).c_str());
      os << buf;
    }
  }
  os << '\n';
  for (const auto& p : order) {
    std::snprintf(buf, sizeof(buf), "%-12s", p.c_str());
    os << buf;
    for (auto d : {Direction::Forward, Direction::Inverse}) {
      for (int n : sizes) {
        auto it = std::find_if(reports.begin(), reports.end(), [&](const BenchReport& r) {
          return r.pipeline == p && r.size == n && r.direction == d;
        });
        if (it == reports.end()) {
          std::snprintf(buf, sizeof(buf), " %16s", "-");
        } else {
          std::snprintf(buf, sizeof(buf), " %9.2f +-%4.2f", it->ratio_vs_dense, it->dispersion);
        }
        os << buf;
      }
    }
    os << '\n';
  }
  return os.str();
}

std::string bench_csv(const std::vector<BenchReport>& reports) {
  std::ostringstream os;
  os << "pipeline,size,direction,coefficients_per_second,ratio_vs_dense,samples,dispersion\n";
  for (const auto& r : reports) {
    os << r.pipeline << ',' << r.size << ',' << to_string(r.direction) << ','
       << r.coefficients_per_second << ',' << r.ratio_vs_dense << ',' << r.samples << ','
       << r.dispersion << '\n';
  }
  return os.str();
}

}  // namespace tadj
