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

// Count-vector dynamic programs for one release date and unbounded batches.
//
// Jobs are taken in EDD order. A state (I, b, d) fixes how many early jobs
// of each level were chosen so far (I), in how many back-to-back batches (b),
// and a lower bound d on the earliest due date in the last batch, with d in
// {0} and the due levels. The batches finish at sum(I * p) + b * setup, so a
// state is only usable when that load is at most d.
//
//   solve_xp_p  levels are processing times; value is the least tardy weight.
//   solve_xp_w  levels are weights; value is the least load, and the answer
//               is the total weight minus the best early weight sum(I * w).

#ifndef BATCHSCHED_DP_UNBOUNDED_H_
#define BATCHSCHED_DP_UNBOUNDED_H_

#include <cstddef>

#include "batchsched/core.h"

namespace batchsched {

struct XpOptions {
  // Require d <= d_j before j may enter a last batch with due bound d.
  // Switching it off reproduces the weaker recursion for comparison.
  bool due_guard = true;
  // Refuse when one layer of the table would exceed this many states.
  std::size_t max_states = 40'000'000;
};

// Both throw Refusal on release dates that differ, on batch bounds, and on
// tables larger than max_states.
OptResult solve_xp_p(const Instance& inst, const XpOptions& opts = {});
OptResult solve_xp_w(const Instance& inst, const XpOptions& opts = {});

// Throws Refusal naming `algo` unless the instance has one release date and
// no batch bounds.
void require_single_release_unbounded(const Instance& inst, const char* algo);

}  // namespace batchsched

#endif  // BATCHSCHED_DP_UNBOUNDED_H_
