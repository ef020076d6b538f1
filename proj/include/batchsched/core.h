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

// Data model for single-machine batch scheduling with weighted tardy jobs.
//
// A batch B started at S_B completes at S_B + setup + sum of p_j over B, and
// every job in B completes with it. A job is tardy when its batch completes
// after its due date, or when it is not batched at all.

#ifndef BATCHSCHED_CORE_H_
#define BATCHSCHED_CORE_H_

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "batchsched/numeric.h"

namespace batchsched {

// A solver declined an instance: unmet precondition or exceeded cap.
class Refusal : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A schedule or assignment does not fit the instance or model it claims to.
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Job {
  int id = 0;
  Int p = 1;
  Rational w = 1;
  Int d = 0;
  Int r = 0;

  friend bool operator==(const Job&, const Job&) = default;
};

struct Instance {
  std::vector<Job> jobs;
  Int setup = 0;
  std::optional<Int> size_bound;
  std::optional<Int> volume_bound;

  std::size_t size() const { return jobs.size(); }
  bool has_bounds() const { return size_bound || volume_bound; }

  // Sorted distinct values occurring among the jobs.
  std::vector<Int> due_levels() const;
  std::vector<Int> release_levels() const;
  std::vector<Int> processing_levels() const;
  std::vector<Rational> weight_levels() const;

  bool single_release() const;
  // Requires single_release(); 0 for the empty instance.
  Int common_release() const;

  Rational total_weight() const;
  // Index into `jobs`; throws StructuralError for an unknown id.
  std::size_t position(int id) const;
  const Job& job(int id) const { return jobs[position(id)]; }

  friend bool operator==(const Instance&, const Instance&) = default;
};

struct Batch {
  Int start = 0;
  std::vector<int> job_ids;

  friend bool operator==(const Batch&, const Batch&) = default;
};

struct Schedule {
  std::vector<Batch> batches;
  std::vector<int> tardy_ids;

  friend bool operator==(const Schedule&, const Schedule&) = default;
};

struct OptResult {
  Rational objective;
  Schedule schedule;
};

Int batch_volume(const Batch& batch, const Instance& inst);
Int completion(const Batch& batch, const Instance& inst);

// Total weight of tardy jobs. Throws StructuralError on unknown job ids.
Rational evaluate(const Schedule& schedule, const Instance& inst);

struct Violation {
  enum class Kind {
    kUnknownJob,
    kDuplicateJob,
    kMissingJob,
    kEmptyBatch,
    kOverlap,
    kRelease,
    kSize,
    kVolume,
  };
  Kind kind;
  std::string message;
};

std::string to_string(Violation::Kind kind);

// Structural feasibility only; late jobs inside batches are legal.
std::vector<Violation> validate(const Schedule& schedule, const Instance& inst);

// Job ids by nondecreasing due date, then processing time, then id.
std::vector<int> edd_sort(const Instance& inst);

// Packs consecutive groups of `early_ids` (sizes given by `group_sizes`) into
// batches, each started as early as its releases and the previous batch
// allow. Every other job is tardy. Returns nullopt when a packed job would
// complete after its due date.
std::optional<Schedule> greedy_pack(std::span<const int> early_ids,
                                    std::span<const std::size_t> group_sizes,
                                    const Instance& inst);

// Merges consecutive batches whose completions fall in the same due-date
// interval (d_prev, d_next], keeping the earlier start. Intended for
// single-release instances, where it never increases the objective.
Schedule merge_within_due_intervals(const Schedule& schedule,
                                    const Instance& inst);

// Copy with every release and due date moved by `delta`.
Instance shift_times(const Instance& inst, const Int& delta);
Schedule shift_schedule(const Schedule& schedule, const Int& delta);

// Integral view of an instance for the fast kernels: weights multiplied by
// the lcm of their denominators, times moved so that `origin` becomes 0.
// Due dates may become negative; such jobs can never be early.
template <typename Num>
struct IntegralJobs {
  std::vector<Num> p;
  std::vector<Num> w;
  std::vector<Num> d;
  std::vector<Num> r;
  Num setup{};
  Int weight_scale = 1;

  std::size_t size() const { return p.size(); }
  Rational to_objective(const Num& scaled) const {
    return Rational(to_int(scaled), weight_scale);
  }
};

Int weight_scale(const Instance& inst);

// True when every quantity the kernels form fits int64_t comfortably.
bool fits_fast_kernels(const Instance& inst);

template <typename Num>
IntegralJobs<Num> make_integral(const Instance& inst, const Int& origin = 0);

// While alive, fits_fast_kernels reports false on this thread so that tests
// can exercise the arbitrary-precision path.
class ForceWideArithmetic {
 public:
  ForceWideArithmetic();
  ~ForceWideArithmetic();
  ForceWideArithmetic(const ForceWideArithmetic&) = delete;
  ForceWideArithmetic& operator=(const ForceWideArithmetic&) = delete;

 private:
  bool previous_;
};

// Calls fn(std::int64_t{}) or fn(Int{}) depending on fits_fast_kernels.
template <typename Fn>
decltype(auto) dispatch_scalar(const Instance& inst, Fn&& fn) {
  if (fits_fast_kernels(inst)) return fn(std::int64_t{});
  return fn(Int{});
}

}  // namespace batchsched

#endif  // BATCHSCHED_CORE_H_
