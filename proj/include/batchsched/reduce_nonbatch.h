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

// Reduction of the batch problem (one release date, no bounds) to 2^#d
// instances of the classical problem without batching.
//
// A guess I names the due-date intervals (d^(i-1), d^(i)] in which a batch
// completes. A job with due level l then joins the batch of interval
// i(l) = max{i in I : i <= l}, and its due date becomes
// d^(i(l)) - |{i in I : i <= l}| * setup. Jobs below min(I) get the sentinel
// due date -1 and stay tardy.

#ifndef BATCHSCHED_REDUCE_NONBATCH_H_
#define BATCHSCHED_REDUCE_NONBATCH_H_

#include <cstddef>
#include <optional>
#include <vector>

#include "batchsched/core.h"

namespace batchsched {

struct IntervalGuess {
  // Sorted due levels, 1-based.
  std::vector<std::size_t> levels;

  // i(level), or nullopt below the smallest guessed level.
  std::optional<std::size_t> anchor(std::size_t level) const;
  // Number of guessed levels <= level.
  std::size_t count_upto(std::size_t level) const;

  friend bool operator==(const IntervalGuess&, const IntervalGuess&) = default;
};

// All subsets of {1..levels}, by size and then lexicographically.
std::vector<IntervalGuess> enumerate_guesses(std::size_t levels);

// Setup 0 and transformed due dates; ids, p, w and r are kept.
Instance transform(const Instance& inst, const IntervalGuess& guess);

// True when the transformed due dates of the guessed levels never decrease.
// Only then is the lift of every solution of transform() feasible.
bool is_monotone(const Instance& inst, const IntervalGuess& guess);

struct LawlerMooreOptions {
  // Refuse when the DP would track more than this many time values.
  std::size_t max_time_states = 10'000'000;
};

// Classical EDD dynamic program over the total early processing time.
// Requires setup 0, one release date and no bounds. Early jobs are returned
// as single-job batches in due date order.
OptResult lawler_moore(const Instance& inst,
                       const LawlerMooreOptions& opts = {});
Rational lawler_moore_value(const Instance& inst,
                            const LawlerMooreOptions& opts = {});

// Batches B_i for i in I, in increasing i, holding the early jobs of
// `nonbatch` by anchor; empty batches are dropped and starts are greedy.
Schedule lift(const Instance& inst, const IntervalGuess& guess,
              const Schedule& nonbatch);

struct ReductionOptions {
  LawlerMooreOptions lawler_moore;
  std::size_t max_due_levels = 24;
};

// Best guess wins; ties keep the earliest in enumerate_guesses order. The
// chosen guess is reported through `chosen` when given.
OptResult solve_via_reduction(const Instance& inst,
                              const ReductionOptions& opts = {},
                              IntervalGuess* chosen = nullptr);

}  // namespace batchsched

#endif  // BATCHSCHED_REDUCE_NONBATCH_H_
