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

#include "batchsched/core.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

namespace batchsched {
namespace {

thread_local bool force_wide = false;

template <typename T, typename Get>
std::vector<T> distinct_sorted(const std::vector<Job>& jobs, Get get) {
  std::vector<T> out;
  out.reserve(jobs.size());
  for (const Job& j : jobs) out.push_back(get(j));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

class IdIndex {
 public:
  explicit IdIndex(const Instance& inst) {
    for (std::size_t i = 0; i < inst.jobs.size(); ++i) {
      map_.emplace(inst.jobs[i].id, i);
    }
  }
  std::optional<std::size_t> find(int id) const {
    auto it = map_.find(id);
    if (it == map_.end()) return std::nullopt;
    return it->second;
  }

 private:
  std::unordered_map<int, std::size_t> map_;
};

}  // namespace

std::vector<Int> Instance::due_levels() const {
  return distinct_sorted<Int>(jobs, [](const Job& j) { return j.d; });
}
std::vector<Int> Instance::release_levels() const {
  return distinct_sorted<Int>(jobs, [](const Job& j) { return j.r; });
}
std::vector<Int> Instance::processing_levels() const {
  return distinct_sorted<Int>(jobs, [](const Job& j) { return j.p; });
}
std::vector<Rational> Instance::weight_levels() const {
  return distinct_sorted<Rational>(jobs, [](const Job& j) { return j.w; });
}

bool Instance::single_release() const {
  return std::all_of(jobs.begin(), jobs.end(),
                     [&](const Job& j) { return j.r == jobs.front().r; });
}

Int Instance::common_release() const {
  return jobs.empty() ? Int(0) : jobs.front().r;
}

Rational Instance::total_weight() const {
  Rational total = 0;
  for (const Job& j : jobs) total += j.w;
  return total;
}

std::size_t Instance::position(int id) const {
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    if (jobs[i].id == id) return i;
  }
  throw StructuralError("unknown job id " + std::to_string(id));
}

Int batch_volume(const Batch& batch, const Instance& inst) {
  Int volume = 0;
  for (int id : batch.job_ids) volume += inst.job(id).p;
  return volume;
}

Int completion(const Batch& batch, const Instance& inst) {
  return batch.start + inst.setup + batch_volume(batch, inst);
}

Rational evaluate(const Schedule& schedule, const Instance& inst) {
  IdIndex index(inst);
  std::vector<char> early(inst.size(), 0);
  for (const Batch& batch : schedule.batches) {
    Int done = batch.start + inst.setup;
    for (int id : batch.job_ids) {
      auto pos = index.find(id);
      if (!pos) throw StructuralError("unknown job id " + std::to_string(id));
      done += inst.jobs[*pos].p;
    }
    for (int id : batch.job_ids) {
      std::size_t pos = *index.find(id);
      if (done <= inst.jobs[pos].d) early[pos] = 1;
    }
  }
  for (int id : schedule.tardy_ids) {
    if (!index.find(id)) {
      throw StructuralError("unknown job id " + std::to_string(id));
    }
  }
  Rational total = 0;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    if (!early[i]) total += inst.jobs[i].w;
  }
  return total;
}

std::string to_string(Violation::Kind kind) {
  switch (kind) {
    case Violation::Kind::kUnknownJob: return "unknown-job";
    case Violation::Kind::kDuplicateJob: return "duplicate-job";
    case Violation::Kind::kMissingJob: return "missing-job";
    case Violation::Kind::kEmptyBatch: return "empty-batch";
    case Violation::Kind::kOverlap: return "overlap";
    case Violation::Kind::kRelease: return "release";
    case Violation::Kind::kSize: return "size";
    case Violation::Kind::kVolume: return "volume";
  }
  return "unknown";
}

std::vector<Violation> validate(const Schedule& schedule,
                                const Instance& inst) {
  using Kind = Violation::Kind;
  std::vector<Violation> out;
  IdIndex index(inst);
  std::vector<int> seen(inst.size(), 0);
  auto note = [&](int id) -> std::optional<std::size_t> {
    auto pos = index.find(id);
    if (!pos) {
      out.push_back({Kind::kUnknownJob, "job " + std::to_string(id) +
                                            " is not in the instance"});
      return std::nullopt;
    }
    if (++seen[*pos] == 2) {
      out.push_back({Kind::kDuplicateJob,
                     "job " + std::to_string(id) + " appears more than once"});
    }
    return pos;
  };

  std::optional<Int> previous_completion;
  for (std::size_t k = 0; k < schedule.batches.size(); ++k) {
    const Batch& batch = schedule.batches[k];
    const std::string label = "batch " + std::to_string(k + 1);
    if (batch.job_ids.empty()) {
      out.push_back({Kind::kEmptyBatch, label + " has no jobs"});
    }
    Int volume = 0;
    for (int id : batch.job_ids) {
      auto pos = note(id);
      if (!pos) continue;
      const Job& job = inst.jobs[*pos];
      volume += job.p;
      if (batch.start < job.r) {
        out.push_back({Kind::kRelease,
                       label + " starts at " + format_int(batch.start) +
                           " before job " + std::to_string(id) +
                           " is released at " + format_int(job.r)});
      }
    }
    if (previous_completion && batch.start < *previous_completion) {
      out.push_back({Kind::kOverlap,
                     label + " starts at " + format_int(batch.start) +
                         " before the previous batch completes at " +
                         format_int(*previous_completion)});
    }
    if (inst.size_bound && Int(batch.job_ids.size()) > *inst.size_bound) {
      out.push_back({Kind::kSize, label + " holds " +
                                      std::to_string(batch.job_ids.size()) +
                                      " jobs, bound is " +
                                      format_int(*inst.size_bound)});
    }
    if (inst.volume_bound && volume > *inst.volume_bound) {
      out.push_back({Kind::kVolume, label + " has volume " +
                                        format_int(volume) + ", bound is " +
                                        format_int(*inst.volume_bound)});
    }
    previous_completion = batch.start + inst.setup + volume;
  }
  for (int id : schedule.tardy_ids) note(id);
  for (std::size_t i = 0; i < inst.size(); ++i) {
    if (seen[i] == 0) {
      out.push_back({Kind::kMissingJob,
                     "job " + std::to_string(inst.jobs[i].id) +
                         " is neither batched nor listed as tardy"});
    }
  }
  return out;
}

std::vector<int> edd_sort(const Instance& inst) {
  std::vector<std::size_t> order(inst.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const Job& x = inst.jobs[a];
    const Job& y = inst.jobs[b];
    if (x.d != y.d) return x.d < y.d;
    if (x.p != y.p) return x.p < y.p;
    return x.id < y.id;
  });
  std::vector<int> ids;
  ids.reserve(order.size());
  for (std::size_t i : order) ids.push_back(inst.jobs[i].id);
  return ids;
}

std::optional<Schedule> greedy_pack(std::span<const int> early_ids,
                                    std::span<const std::size_t> group_sizes,
                                    const Instance& inst) {
  std::size_t total = std::accumulate(group_sizes.begin(), group_sizes.end(),
                                      std::size_t{0});
  if (total != early_ids.size()) {
    throw StructuralError("group sizes do not cover the early sequence");
  }
  Schedule out;
  std::set<int> early;
  Int clock = 0;
  std::size_t next = 0;
  for (std::size_t size : group_sizes) {
    if (size == 0) throw StructuralError("empty group in composition");
    Batch batch;
    Int start = clock;
    for (std::size_t k = 0; k < size; ++k) {
      const Job& job = inst.job(early_ids[next + k]);
      start = std::max(start, job.r);
    }
    batch.start = std::max(start, Int(0));
    Int done = batch.start + inst.setup;
    for (std::size_t k = 0; k < size; ++k) {
      int id = early_ids[next + k];
      done += inst.job(id).p;
      batch.job_ids.push_back(id);
      if (!early.insert(id).second) {
        throw StructuralError("job " + std::to_string(id) + " packed twice");
      }
    }
    for (int id : batch.job_ids) {
      if (done > inst.job(id).d) return std::nullopt;
    }
    clock = done;
    next += size;
    out.batches.push_back(std::move(batch));
  }
  for (const Job& job : inst.jobs) {
    if (!early.count(job.id)) out.tardy_ids.push_back(job.id);
  }
  return out;
}

Schedule merge_within_due_intervals(const Schedule& schedule,
                                    const Instance& inst) {
  const std::vector<Int> levels = inst.due_levels();
  // Interval index of a completion time c: smallest l with c <= d^(l), or
  // levels.size() when c exceeds every due date (never merged).
  auto interval_of = [&](const Int& c) {
    return static_cast<std::size_t>(
        std::lower_bound(levels.begin(), levels.end(), c) - levels.begin());
  };
  Schedule out;
  out.tardy_ids = schedule.tardy_ids;
  std::optional<std::size_t> last_interval;
  for (const Batch& batch : schedule.batches) {
    std::size_t here = interval_of(completion(batch, inst));
    if (!out.batches.empty() && last_interval && *last_interval == here &&
        here < levels.size()) {
      Batch& merged = out.batches.back();
      merged.job_ids.insert(merged.job_ids.end(), batch.job_ids.begin(),
                            batch.job_ids.end());
      continue;
    }
    out.batches.push_back(batch);
    last_interval = here;
  }
  return out;
}

Instance shift_times(const Instance& inst, const Int& delta) {
  Instance out = inst;
  for (Job& j : out.jobs) {
    j.d += delta;
    j.r += delta;
  }
  return out;
}

Schedule shift_schedule(const Schedule& schedule, const Int& delta) {
  Schedule out = schedule;
  for (Batch& b : out.batches) b.start += delta;
  return out;
}

Int weight_scale(const Instance& inst) {
  Int scale = 1;
  for (const Job& j : inst.jobs) scale = lcm(scale, denominator(j.w));
  return scale;
}

bool fits_fast_kernels(const Instance& inst) {
  if (force_wide) return false;
  const Int scale = weight_scale(inst);
  Int total_time = abs(inst.setup) * Int(inst.size() + 1);
  Int total_weight = 0;
  for (const Job& j : inst.jobs) {
    total_time += abs(j.p) + abs(j.d) + abs(j.r);
    total_weight += abs(numerator(j.w) * (scale / denominator(j.w)));
  }
  return fits_fast(total_time) && fits_fast(total_weight);
}

template <typename Num>
IntegralJobs<Num> make_integral(const Instance& inst, const Int& origin) {
  IntegralJobs<Num> out;
  out.weight_scale = weight_scale(inst);
  out.setup = to_num<Num>(inst.setup);
  for (const Job& j : inst.jobs) {
    out.p.push_back(to_num<Num>(j.p));
    out.w.push_back(to_num<Num>(numerator(j.w) *
                                (out.weight_scale / denominator(j.w))));
    out.d.push_back(to_num<Num>(j.d - origin));
    out.r.push_back(to_num<Num>(j.r - origin));
  }
  return out;
}

template IntegralJobs<std::int64_t> make_integral(const Instance&, const Int&);
template IntegralJobs<Int> make_integral(const Instance&, const Int&);

ForceWideArithmetic::ForceWideArithmetic() : previous_(force_wide) {
  force_wide = true;
}
ForceWideArithmetic::~ForceWideArithmetic() { force_wide = previous_; }

}  // namespace batchsched
