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

// Exhaustive ground-truth solver for tiny instances of every variant.
//
// Single-release instances without batch bounds enumerate every early set
// and every split of it, taken in EDD order, into consecutive batches. Any
// other instance enumerates every sequence of early batches; identical jobs
// are collapsed into counts and repeated (remaining jobs, clock) states are
// memoized. Batches always start as early as possible.

#ifndef BATCHSCHED_ORACLE_H_
#define BATCHSCHED_ORACLE_H_

#include <cstddef>

#include "batchsched/core.h"

namespace batchsched {

struct OracleOptions {
  std::size_t max_jobs = 7;
  std::size_t max_jobs_with_releases = 6;
};

// Defaults, with both caps replaced by BATCHSCHED_ORACLE_CAP when set.
OracleOptions oracle_options_from_env();

// Throws Refusal when the instance exceeds the applicable cap.
OptResult brute_force(const Instance& inst, const OracleOptions& opts = {});

// True iff some schedule has objective <= threshold. Stops at the first one.
bool brute_force_threshold(const Instance& inst, const Rational& threshold,
                           const OracleOptions& opts = {});

// The batch-sequence enumeration on its own, for any instance. brute_force
// uses it whenever the EDD enumeration does not apply.
OptResult brute_force_sequences(const Instance& inst,
                                const OracleOptions& opts = {});

// The EDD enumeration on its own. Throws Refusal unless the instance has a
// single release date and no batch bounds.
OptResult brute_force_edd(const Instance& inst, const OracleOptions& opts = {});

}  // namespace batchsched

#endif  // BATCHSCHED_ORACLE_H_
