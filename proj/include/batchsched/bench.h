// Copyright 2026 The batchsched Authors
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


// Solver dispatch by name and seeded cross-solver sweeps.

#ifndef BATCHSCHED_BENCH_H_
#define BATCHSCHED_BENCH_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "batchsched/core.h"

namespace batchsched {

// oracle, xp-p, xp-w, reduce, ip-size, ip-release, release-xp.
const std::vector<std::string>& algorithm_names();

// Caps come from BATCHSCHED_ORACLE_CAP and BATCHSCHED_IP_CAP. Throws
// std::invalid_argument for an unknown name and Refusal when the solver
// declines.
OptResult run_algorithm(std::string_view algo, const Instance& inst);

// Line-based key/value file; '#' starts a comment. Lists are comma
// separated and may contain ranges a-b.
//   seeds 1-500
//   n 3-7
//   levels p=2 w=1-2 d=2 r=1
//   algos oracle,xp-p,xp-w,reduce
//   max_time 20
//   size_bound 2,n        (optional; n stands for the job count)
// Every combination of seed, n, levels and size bound is one instance.
// Level counts above n are lowered to n.
struct BenchConfig {
  std::vector<std::uint64_t> seeds;
  std::vector<std::size_t> n;
  std::vector<std::size_t> p{2}, w{2}, d{2}, r{1};
  std::vector<std::string> algos;
  std::int64_t max_time = 20;
  // 0 stands for n.
  std::vector<std::size_t> size_bounds;
};

// Throws std::invalid_argument with the line number on bad input.
BenchConfig parse_bench_config(std::string_view text);

struct BenchRow {
  std::uint64_t seed = 0;
  std::size_t n = 0, p = 0, w = 0, d = 0, r = 0;
  std::optional<std::size_t> size_bound;
  std::string algo;
  // Objective as num/den, or "refused" / "invalid".
  std::string objective;
  double wall_seconds = 0;
  bool agrees = true;
};

struct BenchReport {
  std::vector<BenchRow> rows;
  std::size_t disagreements = 0;  // instances
};

// Rows come out sorted by instance and then by algorithm order. An instance
// disagrees when two solved objectives differ or a witness fails to
// validate or to evaluate to its objective.
BenchReport run_bench(const BenchConfig& config);

std::string format_bench(const BenchReport& report, bool wall_time = true);

}  // namespace batchsched

#endif  // BATCHSCHED_BENCH_H_
