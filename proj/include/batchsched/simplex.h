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

// Exact two-phase primal simplex with bounded variables.

#ifndef BATCHSCHED_SIMPLEX_H_
#define BATCHSCHED_SIMPLEX_H_

#include <cstddef>
#include <vector>

#include "batchsched/ip_model.h"

namespace batchsched {

struct LpResult {
  enum class Status { kOptimal, kInfeasible };
  Status status = Status::kInfeasible;
  Rational objective = 0;
  std::vector<Rational> x;
  std::size_t pivots = 0;
};

// LP relaxation of `model` with the variable bounds replaced by
// lower/upper. Integrality is ignored.
LpResult solve_lp(const IpModel& model, const std::vector<Rational>& lower,
                  const std::vector<Rational>& upper);

inline LpResult solve_lp(const IpModel& model) {
  std::vector<Rational> lo, up;
  for (const IpVar& v : model.vars()) {
    lo.push_back(v.lower);
    up.push_back(v.upper);
  }
  return solve_lp(model, lo, up);
}

}  // namespace batchsched

#endif  // BATCHSCHED_SIMPLEX_H_
