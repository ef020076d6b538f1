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

// Release dates without batch bounds: enumeration of start vectors, and the
// time reversal that swaps release and due dates.

#ifndef BATCHSCHED_RELEASE_XP_H_
#define BATCHSCHED_RELEASE_XP_H_

#include <cstddef>
#include <optional>
#include <vector>

#include "batchsched/core.h"

namespace batchsched {

struct ReleaseXpOptions {
  // Refuse when the number of start vectors exceeds this.
  double max_vectors = 1e8;
};

// A start vector v[l][i] says how many early jobs of type i = (p, w, r)
// start in [r^(l), r^(l+1)). Each type sends its latest-due jobs, earlier
// intervals taking the earlier dues; every interval is packed in EDD order,
// a batch being extended while all of its jobs stay early. The heaviest
// feasible vector wins, ties going to the lexicographically smallest.
// Throws Refusal on batch bounds or when the vector space exceeds the cap.
OptResult solve_release_xp(const Instance& inst,
                           const ReleaseXpOptions& opts = {});

// Greedy packing of `job_ids` (taken in EDD order) with the first batch
// starting at `start`. Returns the batches, or nothing when a job is late.
std::optional<std::vector<Batch>> pack_interval(const Instance& inst,
                                                std::vector<int> job_ids,
                                                const Int& start);

// Each job (p, w, d, r) becomes (p, w, M - r, M - d) with M the largest
// release or due date. Setup and bounds are kept.
Instance mirror(const Instance& inst);

// A schedule for mirror(inst) turned into one for inst with the same early
// jobs: a batch over [S, C] is replaced by its early jobs started at M - C,
// and the batch order is reversed.
Schedule mirror_schedule(const Schedule& schedule, const Instance& inst);

}  // namespace batchsched

#endif  // BATCHSCHED_RELEASE_XP_H_
