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


// Instances built from k-Sum, Partition and P||Cmax inputs, plus seeded
// random instances with a prescribed number of distinct values per field.

#ifndef BATCHSCHED_GENERATORS_H_
#define BATCHSCHED_GENERATORS_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "batchsched/core.h"

namespace batchsched {

struct KSumParams {
  std::vector<Int> x;
  Int t = 0;
  std::size_t k = 1;
};

struct KSumOptions {
  // Multiply every weight and the threshold by the product of the x_i.
  bool integral_weights = false;
  // Lift the refusal for more than 10^4 leftover jobs.
  bool allow_large = false;
};

struct ReductionInstance {
  Instance instance;
  Rational threshold;
  std::vector<std::string> notes;
};

// Digits of x in the given base, least significant first.
std::vector<Int> digits(Int x, const Int& base);

// Base of the digit expansion: the number of values, at least 2.
Int ksum_base(const KSumParams& params);

// Whether k values of x, repetition allowed, sum to t.
bool ksum_answer(const KSumParams& params);

// k >= 2: when (k-1) max x >= t, adds k N to every value and k^2 N to the
// target, N the least power of the base with N >= max x.
// k = 1: drops values above t, refusing when none is left.
// Returns nullopt when nothing had to change.
std::optional<KSumParams> normalize_ksum(const KSumParams& params);

// Leftover jobs: (k-1) t copies of p 1, w k(X+n), r 0, d 3kt.
// For each round l = 1..k and each x_i, digit a_j of x_i in base B yields a_j
// jobs with p B^j, w B^j + B^j / x_i, r 3t(l-1), d 3t(l-1) + t + x_i.
// Setup t, threshold kX - t + (n-1)k.
// Throws Refusal when the input is not normalized, or on too many jobs.
ReductionInstance gen_ksum(const KSumParams& params,
                           const KSumOptions& opts = {});

struct PartitionParams {
  std::vector<Int> values;
};

enum class PartitionVolume {
  kHalf,         // V = K
  kHalfPlusOne,  // V = K + 1
};

bool partition_answer(const PartitionParams& params);

// Unit weights, setup 1, due date 2K + 2 where 2K is the sum. Threshold 0.
// Throws Refusal on an odd sum.
ReductionInstance gen_partition(const PartitionParams& params,
                                PartitionVolume volume = PartitionVolume::kHalf);

struct PCMaxParams {
  std::vector<Int> sizes;
  std::size_t m = 1;
  Int makespan = 0;
};

enum class PCMaxDue {
  kMachinesTimesSetupPlusMakespan,  // d = m (setup + T)
  kMachinesTimesVolume,             // d = m V
};

// Some assignment to m machines has every load <= T.
bool pcmax_answer(const PCMaxParams& params);

// Unit weights, setup T m, volume bound T. Threshold 0.
// Throws Refusal when m = 0 or a size exceeds T.
ReductionInstance gen_pcmax(
    const PCMaxParams& params,
    PCMaxDue due = PCMaxDue::kMachinesTimesSetupPlusMakespan);

struct RandomParams {
  std::size_t n = 6;
  std::size_t processing_levels = 2;
  std::size_t weight_levels = 2;
  std::size_t due_levels = 2;
  std::size_t release_levels = 1;
  // Pool for p, w, d and setup. Release levels are 0 plus draws from
  // 1..max_time.
  std::int64_t max_time = 20;
  // Separate pools when set.
  std::optional<std::int64_t> max_processing;
  std::optional<std::int64_t> max_setup;
  std::optional<std::int64_t> max_release;
  std::uint64_t seed = 1;
};

// Distinct values per field are drawn without replacement, each used at
// least once, the rest of the jobs assigned uniformly. A single release
// level is 0. Throws Refusal when a count exceeds n or its pool.
Instance gen_random(const RandomParams& params);

}  // namespace batchsched

#endif  // BATCHSCHED_GENERATORS_H_
