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

#include "batchsched/oracle.h"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace batchsched {
namespace {

void check_cap(const Instance& inst, const OracleOptions& opts) {
  const bool releases = !inst.single_release();
  const std::size_t cap =
      releases ? opts.max_jobs_with_releases : opts.max_jobs;
  if (inst.size() > cap) {
    throw Refusal("oracle cap exceeded: " + std::to_string(inst.size()) +
                  " jobs, cap is " + std::to_string(cap) +
                  (releases ? " for instances with several release dates"
                            : "") +
                  " (set BATCHSCHED_ORACLE_CAP to raise it)");
  }
}

bool edd_applies(const Instance& inst) {
  return inst.single_release() && !inst.has_bounds();
}

std::vector<std::size_t> positions_of(const Instance& inst,
                                      const std::vector<int>& ids) {
  std::vector<std::size_t> out;
  out.reserve(ids.size());
  for (int id : ids) out.push_back(inst.position(id));
  return out;
}

// ---------------------------------------------------------------------------
// EDD enumeration: early set as a bitmask over EDD positions, batch split as
// a bitmask of cuts.

struct EddChoice {
  std::uint64_t mask = 0;
  std::uint64_t cuts = 0;
};

template <typename Num>
std::optional<EddChoice> edd_search(const IntegralJobs<Num>& jobs,
                                    const std::vector<std::size_t>& order,
                                    const std::optional<Num>& threshold) {
  const std::size_t n = order.size();
  Num total{};
  for (std::size_t i = 0; i < n; ++i) total += jobs.w[i];
  EddChoice best;
  Num best_tardy = total;
  if (threshold && total <= *threshold) return best;
  std::vector<std::size_t> seq;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    seq.clear();
    Num early{};
    for (std::size_t k = 0; k < n; ++k) {
      if (mask >> k & 1) {
        seq.push_back(order[k]);
        early += jobs.w[order[k]];
      }
    }
    const Num tardy = total - early;
    if (threshold ? tardy > *threshold : tardy >= best_tardy) continue;
    const std::size_t m = seq.size();
    for (std::uint64_t cuts = 0; cuts < (std::uint64_t{1} << (m - 1)); ++cuts) {
      Num clock{};
      Num load{};
      Num due = jobs.d[seq[0]];
      bool ok = true;
      for (std::size_t i = 0; i < m && ok; ++i) {
        load += jobs.p[seq[i]];
        due = std::min(due, jobs.d[seq[i]]);
        const bool closes = i + 1 == m || (cuts >> i & 1);
        if (closes) {
          clock += jobs.setup + load;
          ok = clock <= due;
          load = Num{};
          if (i + 1 < m) due = jobs.d[seq[i + 1]];
        }
      }
      if (ok) {
        best = {mask, cuts};
        best_tardy = tardy;
        if (threshold) return best;
        break;
      }
    }
  }
  if (threshold) return std::nullopt;
  return best;
}

Schedule edd_witness(const Instance& inst, const std::vector<int>& order,
                     const EddChoice& choice) {
  std::vector<int> early;
  std::vector<std::size_t> groups;
  std::size_t run = 0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (!(choice.mask >> k & 1)) continue;
    early.push_back(order[k]);
    ++run;
    if (choice.cuts >> (early.size() - 1) & 1) {
      groups.push_back(run);
      run = 0;
    }
  }
  if (run) groups.push_back(run);
  auto packed = greedy_pack(early, groups, inst);
  if (!packed) throw std::logic_error("oracle witness does not pack");
  return *packed;
}

// ---------------------------------------------------------------------------
// Batch-sequence enumeration over job types.

template <typename Num>
class SequenceSearch {
 public:
  explicit SequenceSearch(const Instance& inst)
      : jobs_(make_integral<Num>(inst)) {
    // Collapse identical jobs; members listed by id.
    std::vector<std::size_t> pos(inst.size());
    for (std::size_t i = 0; i < pos.size(); ++i) pos[i] = i;
    std::sort(pos.begin(), pos.end(), [&](std::size_t a, std::size_t b) {
      return inst.jobs[a].id < inst.jobs[b].id;
    });
    for (std::size_t i : pos) {
      std::size_t t = 0;
      for (; t < types_.size(); ++t) {
        const std::size_t rep = types_[t].members.front();
        if (jobs_.p[rep] == jobs_.p[i] && jobs_.w[rep] == jobs_.w[i] &&
            jobs_.d[rep] == jobs_.d[i] && jobs_.r[rep] == jobs_.r[i]) {
          break;
        }
      }
      if (t == types_.size()) types_.push_back({});
      types_[t].members.push_back(i);
    }
    std::uint64_t stride = 1;
    for (Type& t : types_) {
      const std::size_t rep = t.members.front();
      t.p = jobs_.p[rep];
      t.w = jobs_.w[rep];
      t.d = jobs_.d[rep];
      t.r = jobs_.r[rep];
      t.stride = stride;
      stride *= t.members.size() + 1;
    }
    if (inst.size_bound) size_bound_ = inst.size_bound->convert_to<long>();
    if (inst.volume_bound) volume_bound_ = to_num<Num>(*inst.volume_bound);
  }

  Num solve() {
    std::vector<int> rem(types_.size());
    std::uint64_t code = 0;
    for (std::size_t t = 0; t < types_.size(); ++t) {
      rem[t] = static_cast<int>(types_[t].members.size());
      code += types_[t].stride * rem[t];
    }
    root_code_ = code;
    return value(code, rem, Num{});
  }

  bool reaches(const Num& threshold) {
    threshold_ = threshold;
    solve();
    return found_;
  }

  Schedule witness(const Instance& inst) const {
    Schedule out;
    std::vector<std::size_t> next(types_.size(), 0);
    std::vector<char> early(inst.size(), 0);
    std::uint64_t code = root_code_;
    Num clock{};
    for (;;) {
      auto it = memo_.find({code, clock});
      if (it == memo_.end() || it->second.stop) break;
      const std::uint64_t batch = it->second.batch;
      Batch b;
      Num start = clock;
      Num volume{};
      for (std::size_t t = 0; t < types_.size(); ++t) {
        const std::uint64_t k = batch / types_[t].stride %
                                (types_[t].members.size() + 1);
        for (std::uint64_t c = 0; c < k; ++c) {
          const std::size_t pos = types_[t].members[next[t]++];
          b.job_ids.push_back(inst.jobs[pos].id);
          early[pos] = 1;
          start = std::max(start, types_[t].r);
          volume += types_[t].p;
        }
      }
      b.start = to_int(start);
      out.batches.push_back(std::move(b));
      code -= batch;
      clock = start + jobs_.setup + volume;
    }
    for (std::size_t i = 0; i < inst.size(); ++i) {
      if (!early[i]) out.tardy_ids.push_back(inst.jobs[i].id);
    }
    return out;
  }

  const IntegralJobs<Num>& jobs() const { return jobs_; }

 private:
  struct Type {
    std::vector<std::size_t> members;
    Num p{}, w{}, d{}, r{};
    std::uint64_t stride = 1;
  };
  struct Entry {
    Num value{};
    std::uint64_t batch = 0;
    bool stop = true;
  };

  Num value(std::uint64_t code, std::vector<int>& rem, const Num& clock) {
    auto it = memo_.find({code, clock});
    if (it != memo_.end()) return it->second.value;

    Entry entry;
    for (std::size_t t = 0; t < types_.size(); ++t) {
      entry.value += types_[t].w * rem[t];
    }
    if (threshold_ && entry.value <= *threshold_) found_ = true;

    std::vector<int> take(types_.size(), 0);
    if (!found_) {
      enumerate(0, code, rem, take, clock, 0, Num{}, Num{}, std::nullopt,
                entry);
    }
    memo_.emplace(std::make_pair(code, clock), entry);
    return entry.value;
  }

  // Chooses how many jobs of type t (and later types) join the next batch.
  // Feasibility is monotone: adding jobs only raises the start and load and
  // lowers the tightest due date, so a failing count ends the loop.
  void enumerate(std::size_t t, std::uint64_t code, std::vector<int>& rem,
                 std::vector<int>& take, const Num& clock, long count,
                 const Num& volume, const Num& max_release,
                 const std::optional<Num>& min_due, Entry& entry) {
    if (found_) return;
    if (t == types_.size()) {
      if (count == 0) return;
      const Num start = std::max(clock, max_release);
      const Num done = start + jobs_.setup + volume;
      std::uint64_t batch = 0;
      for (std::size_t s = 0; s < types_.size(); ++s) {
        batch += types_[s].stride * take[s];
        rem[s] -= take[s];
      }
      const Num v = value(code - batch, rem, done);
      for (std::size_t s = 0; s < types_.size(); ++s) rem[s] += take[s];
      if (v < entry.value) {
        entry.value = v;
        entry.batch = batch;
        entry.stop = false;
      }
      return;
    }
    const Type& type = types_[t];
    for (int k = 0; k <= rem[t]; ++k) {
      take[t] = k;
      if (k == 0) {
        enumerate(t + 1, code, rem, take, clock, count, volume, max_release,
                  min_due, entry);
        continue;
      }
      const long c = count + k;
      const Num vol = volume + type.p * k;
      const Num rel = std::max(max_release, type.r);
      const Num due = min_due ? std::min(*min_due, type.d) : type.d;
      const Num done = std::max(clock, rel) + jobs_.setup + vol;
      if (done > due) break;
      if (size_bound_ && c > *size_bound_) break;
      if (volume_bound_ && vol > *volume_bound_) break;
      enumerate(t + 1, code, rem, take, clock, c, vol, rel, due, entry);
    }
    take[t] = 0;
  }

  IntegralJobs<Num> jobs_;
  std::vector<Type> types_;
  std::optional<long> size_bound_;
  std::optional<Num> volume_bound_;
  std::optional<Num> threshold_;
  bool found_ = false;
  std::uint64_t root_code_ = 0;
  std::map<std::pair<std::uint64_t, Num>, Entry> memo_;
};

template <typename Num>
Num scaled_threshold(const Rational& threshold, const Int& scale) {
  // Objectives are multiples of 1/scale, so floor(threshold * scale) is exact.
  Rational t = threshold * scale;
  Int floor_value = numerator(t) / denominator(t);
  if (t < 0 && floor_value * denominator(t) != numerator(t)) floor_value -= 1;
  return to_num<Num>(floor_value);
}

}  // namespace

OracleOptions oracle_options_from_env() {
  OracleOptions opts;
  if (const char* env = std::getenv("BATCHSCHED_ORACLE_CAP")) {
    const std::size_t cap = std::stoul(env);
    opts.max_jobs = cap;
    opts.max_jobs_with_releases = cap;
  }
  return opts;
}

OptResult brute_force_edd(const Instance& inst, const OracleOptions& opts) {
  if (!edd_applies(inst)) {
    throw Refusal("EDD enumeration needs one release date and no bounds");
  }
  check_cap(inst, opts);
  const std::vector<int> order = edd_sort(inst);
  const std::vector<std::size_t> pos = positions_of(inst, order);
  return dispatch_scalar(inst, [&](auto tag) {
    using Num = decltype(tag);
    const auto jobs = make_integral<Num>(inst, inst.common_release());
    const EddChoice choice = *edd_search<Num>(jobs, pos, std::nullopt);
    OptResult out;
    out.schedule = edd_witness(inst, order, choice);
    out.objective = evaluate(out.schedule, inst);
    return out;
  });
}

OptResult brute_force_sequences(const Instance& inst,
                                const OracleOptions& opts) {
  check_cap(inst, opts);
  return dispatch_scalar(inst, [&](auto tag) {
    using Num = decltype(tag);
    SequenceSearch<Num> search(inst);
    const Num best = search.solve();
    OptResult out;
    out.schedule = search.witness(inst);
    out.objective = search.jobs().to_objective(best);
    if (evaluate(out.schedule, inst) != out.objective) {
      throw std::logic_error("oracle witness disagrees with its value");
    }
    return out;
  });
}

OptResult brute_force(const Instance& inst, const OracleOptions& opts) {
  if (edd_applies(inst)) return brute_force_edd(inst, opts);
  return brute_force_sequences(inst, opts);
}

bool brute_force_threshold(const Instance& inst, const Rational& threshold,
                           const OracleOptions& opts) {
  check_cap(inst, opts);
  if (threshold >= inst.total_weight()) return true;
  return dispatch_scalar(inst, [&](auto tag) {
    using Num = decltype(tag);
    const Int scale = weight_scale(inst);
    const Num limit = scaled_threshold<Num>(threshold, scale);
    if (edd_applies(inst)) {
      const auto jobs = make_integral<Num>(inst, inst.common_release());
      const auto pos = positions_of(inst, edd_sort(inst));
      return edd_search<Num>(jobs, pos, limit).has_value();
    }
    SequenceSearch<Num> search(inst);
    return search.reaches(limit);
  });
}

}  // namespace batchsched
