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

// Exact integer-program search: LP-based branch and bound, and a plain
// depth-first enumeration of the integer variables.

#ifndef BATCHSCHED_BRANCH_AND_BOUND_H_
#define BATCHSCHED_BRANCH_AND_BOUND_H_

#include <cstddef>
#include <vector>

#include "batchsched/ip_model.h"

namespace batchsched {

struct IpLimits {
  std::size_t max_integer_vars = 24;
  // Product of the integer ranges; only the enumeration is bound by it.
  double max_search_space = 1e8;
  std::size_t max_nodes = 2'000'000;
};

// Defaults, with max_integer_vars replaced by BATCHSCHED_IP_CAP when set.
IpLimits ip_limits_from_env();

struct IpSolution {
  enum class Status { kOptimal, kInfeasible };
  Status status = Status::kInfeasible;
  Rational objective = 0;
  // Integer variables integral; continuous ones as the LP left them.
  std::vector<Rational> values;
  Rational root_bound = 0;
  std::size_t nodes = 0;
};

// Branches on the first fractional integer variable in model order, the
// lower child first. Throws Refusal when the model exceeds the limits.
IpSolution solve_ip(const IpModel& model, const IpLimits& limits = {});

// Tries every integer assignment that survives row-activity pruning and
// solves the remaining LP over the continuous variables.
IpSolution solve_ip_enumerate(const IpModel& model,
                              const IpLimits& limits = {});

}  // namespace batchsched

#endif  // BATCHSCHED_BRANCH_AND_BOUND_H_
