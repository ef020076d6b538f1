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

#include "batchsched/reduce_nonbatch.h"

#include <algorithm>
#include <cstdint>
#include <string>

#include "batchsched/dp_unbounded.h"

namespace batchsched {
namespace {

void require_nonbatch(const Instance& inst) {
  if (inst.setup != 0) throw Refusal("lawler-moore requires setup 0");
  if (!inst.single_release()) {
    throw Refusal("lawler-moore requires all release dates to be equal");
  }
  if (inst.has_bounds()) throw Refusal("lawler-moore does not support bounds");
}

struct LmOutcome {
  Rational objective;
  std::vector<int> early;  // EDD order
};

template <typename Num>
LmOutcome lm_kernel(const Instance& inst, const LawlerMooreOptions& opts,
                    bool want_witness) {
  const std::vector<int> order = edd_sort(inst);
  const IntegralJobs<Num> jobs = make_integral<Num>(inst, inst.common_release());
  const std::size_t n = inst.size();

  Int total_p = 0;
  Int latest = 0;
  Num total_w{};
  for (std::size_t i = 0; i < n; ++i) {
    total_p += inst.jobs[i].p;
    latest = std::max(latest, to_int(jobs.d[i]));
    total_w += jobs.w[i];
  }
  const Int horizon = std::min(total_p, latest);
  if (horizon > Int(opts.max_time_states)) {
    throw Refusal("lawler-moore needs " + format_int(horizon + 1) +
                  " time states, cap is " +
                  std::to_string(opts.max_time_states));
  }
  const std::int64_t T = horizon.convert_to<std::int64_t>();
  const Num inf = total_w + 1;

  std::vector<Num> f(T + 1, inf);
  f[0] = Num{};
  std::vector<std::vector<bool>> took;
  if (want_witness) took.assign(n, std::vector<bool>(T + 1, false));

  std::vector<std::size_t> pos;
  for (int id : order) pos.push_back(inst.position(id));
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t i = pos[k];
    const Num& w = jobs.w[i];
    const Int& p_big = inst.jobs[i].p;
    const Int deadline = std::min(to_int(jobs.d[i]), horizon);
    const bool can = p_big <= horizon && deadline >= p_big;
    const std::int64_t p = can ? p_big.convert_to<std::int64_t>() : 0;
    const std::int64_t lim = can ? deadline.convert_to<std::int64_t>() : -1;
    for (std::int64_t t = T; t >= 0; --t) {
      Num keep = f[t] < inf ? f[t] + w : inf;
      if (can && t <= lim && t >= p && f[t - p] < inf && f[t - p] < keep) {
        f[t] = f[t - p];
        if (want_witness) took[k][t] = true;
      } else {
        f[t] = keep;
      }
    }
  }

  std::int64_t best_t = 0;
  for (std::int64_t t = 1; t <= T; ++t) {
    if (f[t] < f[best_t]) best_t = t;
  }
  LmOutcome out;
  out.objective = jobs.to_objective(f[best_t]);
  if (want_witness) {
    std::int64_t t = best_t;
    for (std::size_t k = n; k-- > 0;) {
      if (took[k][t]) {
        out.early.push_back(order[k]);
        t -= inst.jobs[pos[k]].p.convert_to<std::int64_t>();
      }
    }
    std::reverse(out.early.begin(), out.early.end());
  }
  return out;
}

LmOutcome run_lm(const Instance& inst, const LawlerMooreOptions& opts,
                 bool want_witness) {
  require_nonbatch(inst);
  return dispatch_scalar(inst, [&](auto tag) {
    return lm_kernel<decltype(tag)>(inst, opts, want_witness);
  });
}

}  // namespace

std::optional<std::size_t> IntervalGuess::anchor(std::size_t level) const {
  auto it = std::upper_bound(levels.begin(), levels.end(), level);
  if (it == levels.begin()) return std::nullopt;
  return *std::prev(it);
}

std::size_t IntervalGuess::count_upto(std::size_t level) const {
  return static_cast<std::size_t>(
      std::upper_bound(levels.begin(), levels.end(), level) - levels.begin());
}

std::vector<IntervalGuess> enumerate_guesses(std::size_t levels) {
  std::vector<IntervalGuess> out;
  for (std::size_t size = 0; size <= levels; ++size) {
    std::vector<std::size_t> pick(size);
    for (std::size_t k = 0; k < size; ++k) pick[k] = k + 1;
    for (;;) {
      out.push_back({pick});
      std::size_t k = size;
      while (k > 0 && pick[k - 1] == levels - (size - k)) --k;
      if (k == 0) break;
      ++pick[k - 1];
      for (std::size_t m = k; m < size; ++m) pick[m] = pick[m - 1] + 1;
    }
  }
  return out;
}

Instance transform(const Instance& inst, const IntervalGuess& guess) {
  const std::vector<Int> levels = inst.due_levels();
  Instance out = inst;
  out.setup = 0;
  for (Job& job : out.jobs) {
    const std::size_t level = static_cast<std::size_t>(
        std::lower_bound(levels.begin(), levels.end(), job.d) -
        levels.begin()) + 1;
    const auto a = guess.anchor(level);
    Int d = -1;
    if (a) {
      d = levels[*a - 1] - Int(guess.count_upto(level)) * inst.setup;
      if (d < 0) d = -1;
    }
    job.d = d;
  }
  return out;
}

bool is_monotone(const Instance& inst, const IntervalGuess& guess) {
  const std::vector<Int> levels = inst.due_levels();
  for (std::size_t k = 1; k < guess.levels.size(); ++k) {
    const Int a = levels[guess.levels[k - 1] - 1] - Int(k) * inst.setup;
    const Int b = levels[guess.levels[k] - 1] - Int(k + 1) * inst.setup;
    if (b < a) return false;
  }
  return true;
}

OptResult lawler_moore(const Instance& inst, const LawlerMooreOptions& opts) {
  LmOutcome lm = run_lm(inst, opts, true);
  std::vector<std::size_t> groups(lm.early.size(), 1);
  auto packed = greedy_pack(lm.early, groups, inst);
  if (!packed) throw std::logic_error("lawler-moore witness does not pack");
  OptResult out{lm.objective, std::move(*packed)};
  if (evaluate(out.schedule, inst) != out.objective) {
    throw std::logic_error("lawler-moore witness disagrees with its value");
  }
  return out;
}

Rational lawler_moore_value(const Instance& inst,
                            const LawlerMooreOptions& opts) {
  return run_lm(inst, opts, false).objective;
}

Schedule lift(const Instance& inst, const IntervalGuess& guess,
              const Schedule& nonbatch) {
  const std::vector<Int> levels = inst.due_levels();
  std::vector<std::vector<int>> members(levels.size() + 1);
  std::vector<char> early(inst.size(), 0);
  for (const Batch& b : nonbatch.batches) {
    for (int id : b.job_ids) {
      const std::size_t pos = inst.position(id);
      const std::size_t level = static_cast<std::size_t>(
          std::lower_bound(levels.begin(), levels.end(), inst.jobs[pos].d) -
          levels.begin()) + 1;
      const auto a = guess.anchor(level);
      if (!a) continue;
      members[*a].push_back(id);
      early[pos] = 1;
    }
  }
  const std::vector<int> edd = edd_sort(inst);
  std::vector<std::size_t> rank(inst.size());
  for (std::size_t k = 0; k < edd.size(); ++k) rank[inst.position(edd[k])] = k;

  std::vector<int> seq;
  std::vector<std::size_t> groups;
  for (std::size_t i : guess.levels) {
    auto& m = members[i];
    if (m.empty()) continue;
    std::sort(m.begin(), m.end(), [&](int a, int b) {
      return rank[inst.position(a)] < rank[inst.position(b)];
    });
    seq.insert(seq.end(), m.begin(), m.end());
    groups.push_back(m.size());
  }

  // Starts are greedy; packed jobs may still be late, lift never refuses.
  Schedule out;
  Int clock = inst.jobs.empty() ? Int(0) : inst.common_release();
  std::size_t next = 0;
  for (std::size_t g : groups) {
    Batch b;
    b.start = clock;
    for (std::size_t k = 0; k < g; ++k) b.job_ids.push_back(seq[next + k]);
    next += g;
    clock = completion(b, inst);
    out.batches.push_back(std::move(b));
  }
  for (std::size_t i = 0; i < inst.size(); ++i) {
    if (!early[i]) out.tardy_ids.push_back(inst.jobs[i].id);
  }
  return out;
}

OptResult solve_via_reduction(const Instance& inst,
                              const ReductionOptions& opts,
                              IntervalGuess* chosen) {
  require_single_release_unbounded(inst, "reduce");
  const std::size_t d = inst.due_levels().size();
  if (d > opts.max_due_levels) {
    throw Refusal("reduce enumerates 2^" + std::to_string(d) +
                  " guesses, cap is 2^" + std::to_string(opts.max_due_levels));
  }
  IntervalGuess best_guess;
  Rational best = inst.total_weight();
  for (const IntervalGuess& guess : enumerate_guesses(d)) {
    if (best == 0) break;
    const Rational v = lawler_moore_value(transform(inst, guess),
                                          opts.lawler_moore);
    if (v < best) {
      best = v;
      best_guess = guess;
    }
  }
  const Instance sub = transform(inst, best_guess);
  const OptResult nonbatch = lawler_moore(sub, opts.lawler_moore);
  OptResult out;
  out.schedule = lift(inst, best_guess, nonbatch.schedule);
  out.objective = evaluate(out.schedule, inst);
  if (out.objective != best) {
    throw std::logic_error("lifted schedule misses the reduction optimum");
  }
  if (chosen) *chosen = best_guess;
  return out;
}

}  // namespace batchsched
