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

// Integer programs for batches holding at most b jobs.
//
// Size model (one release date). For due levels l = 1..#d:
//   z_l        batches completed by d^(l), integer
//   x_{i,l}    early jobs of weight/due class i completed in
//              (d^(l-1), d^(l)], integer; absent when d^(l) > d_i
//   y_{t,l}    jobs of type t completed by d^(l), continuous in [0, n_t]
//   min  sum_t (n_t - y_{t,#d}) w_t
//   z_l >= z_{l-1} + (1/b) sum_i x_{i,l}
//   sum_{l0 <= l} x_{i,l0} = sum_{t in i} y_{t,l}
//   z_l * setup + sum_t p_t y_{t,l} <= d^(l) - release
//   y_{t,l-1} <= y_{t,l}
//
// Release model. T = {t_1 < ... < t_k} holds all release and due dates; a
// class (l, l') holds the batches that start in [t_l, t_{l+1}) and complete
// in (t_{l'-1}, t_{l'}]:
//   z_{l,l'}     batches in the class, integer
//   x_{i,l,l'}   early jobs of processing/release/due class i in the class,
//                integer; absent when d_i < t_{l'} or r_i > t_l
//   y_t          early jobs of type t, continuous in [0, n_t]
//   min  sum_t (n_t - y_t) w_t
//   sum_i x_{i,l,l'} <= b z_{l,l'}
//   sum_{l,l'} x_{i,l,l'} = sum_{t in i} y_t
//   sum over classes inside [t, t'] of (z setup + sum_i p_i x) <= t' - t
//   z_{l1,l2} + z_{l3,l4} <= 1   for distinct l1 <= l3, l3 + 2 <= l4 <= l2
//   z_{l,l'} <= 1                for l' >= l + 2
//   z_{l,l+1} / n + z_{l1,l2} <= 1   for l1 < l, l2 > l + 1
// Classes that admit no x variable get no z variable.

#ifndef BATCHSCHED_BOUNDED_BATCH_H_
#define BATCHSCHED_BOUNDED_BATCH_H_

#include <cstddef>
#include <map>
#include <optional>
#include <tuple>
#include <utility>
#include <vector>

#include "batchsched/branch_and_bound.h"
#include "batchsched/core.h"
#include "batchsched/ip_model.h"

namespace batchsched {

struct JobType {
  Int p;
  Rational w;
  Int d;
  Int r;
  std::vector<int> members;  // ascending ids
};

struct TypeTable {
  // Sorted by (p, w, d, r).
  std::vector<JobType> types;

  std::size_t job_count() const;
  // Fine type indices grouped by (w, d), groups in ascending (w, d), members
  // in ascending p.
  std::vector<std::vector<std::size_t>> by_weight_due() const;
  // Fine type indices grouped by (p, r, d), groups in ascending order,
  // members in descending w.
  std::vector<std::vector<std::size_t>> by_processing_release_due() const;
};

TypeTable build_type_table(const Instance& inst);

struct SizeModel {
  IpModel ip;
  TypeTable types;
  std::vector<std::vector<std::size_t>> classes;
  std::vector<Int> levels;
  Int release = 0;
  Int setup = 0;
  Int b = 1;
  std::vector<std::size_t> z;                            // [l]
  std::vector<std::vector<std::optional<std::size_t>>> x;  // [i][l]
  std::vector<std::vector<std::size_t>> y;               // [t][l]
};

struct ReleaseModelOptions {
  // Keep the pair (l1,l2) = (l3,l4) in the exclusion rows as 2 z <= 1.
  bool literal_self_pairs = false;
};

struct ReleaseModel {
  IpModel ip;
  TypeTable types;
  std::vector<std::vector<std::size_t>> classes;
  std::vector<Int> points;
  Int setup = 0;
  Int b = 1;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> z;
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::size_t> x;
  std::vector<std::size_t> y;  // [t]
};

// Throws Refusal when release dates differ or b < 1.
SizeModel build_model_size(const Instance& inst, const Int& b);
// Throws Refusal when b < 1.
ReleaseModel build_model_release(const Instance& inst, const Int& b,
                                 const ReleaseModelOptions& opts = {});

// Integral y by filling every class in member order. The objective and
// feasibility of the assignment are preserved; StructuralError otherwise.
std::vector<Rational> round_size(const SizeModel& m,
                                 const std::vector<Rational>& values);
std::vector<Rational> round_release(const ReleaseModel& m,
                                    const std::vector<Rational>& values);

// Schedules for integral, feasible assignments. Throw StructuralError when
// the assignment violates the model.
Schedule reconstruct_size(const SizeModel& m,
                          const std::vector<Rational>& assignment);
Schedule reconstruct_release(const ReleaseModel& m,
                             const std::vector<Rational>& assignment);

// Full pipelines: build, solve, round, reconstruct. The bound is the
// instance's size bound, or n when it has none. Volume bounds are refused.
OptResult solve_ip_size(const Instance& inst, const IpLimits& limits = {});
OptResult solve_ip_release(const Instance& inst, const IpLimits& limits = {},
                           const ReleaseModelOptions& opts = {});

}  // namespace batchsched

#endif  // BATCHSCHED_BOUNDED_BATCH_H_
