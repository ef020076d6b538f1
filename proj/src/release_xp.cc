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

#include "batchsched/release_xp.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace batchsched {
namespace {

template <typename Num>
struct Packed {
  std::vector<std::vector<std::size_t>> batches;  // positions
  std::vector<Num> starts;
  Num end{};
};

// `order` holds positions in EDD order.
template <typename Num>
std::optional<Packed<Num>> pack(const IntegralJobs<Num>& jobs,
                                const std::vector<std::size_t>& order,
                                const Num& start) {
  Packed<Num> out;
  out.end = start;
  Num batch_start = start;
  Num volume{};
  Num due{};
  for (std::size_t pos : order) {
    if (!out.batches.empty()) {
      const Num grown = batch_start + jobs.setup + volume + jobs.p[pos];
      const Num tight = std::min(due, jobs.d[pos]);
      if (grown <= tight) {
        out.batches.back().push_back(pos);
        volume += jobs.p[pos];
        due = tight;
        out.end = grown;
        continue;
      }
      batch_start = out.end;
    }
    volume = jobs.p[pos];
    due = jobs.d[pos];
    out.end = batch_start + jobs.setup + volume;
    if (out.end > due) return std::nullopt;
    out.batches.push_back({pos});
    out.starts.push_back(batch_start);
  }
  return out;
}

std::vector<std::size_t> edd_positions(const Instance& inst,
                                       std::vector<std::size_t> pos) {
  std::sort(pos.begin(), pos.end(), [&](std::size_t a, std::size_t b) {
    const Job& x = inst.jobs[a];
    const Job& y = inst.jobs[b];
    if (x.d != y.d) return x.d < y.d;
    if (x.p != y.p) return x.p < y.p;
    return x.id < y.id;
  });
  return pos;
}

template <typename Num>
class StartVectors {
 public:
  StartVectors(const Instance& inst, const ReleaseXpOptions& opts)
      : inst_(inst), jobs_(make_integral<Num>(inst)) {
    for (const Int& r : inst.release_levels()) releases_.push_back(to_num<Num>(r));
    std::vector<std::size_t> all(inst.size());
    std::iota(all.begin(), all.end(), 0);
    for (std::size_t pos : edd_positions(inst, all)) {
      std::size_t t = 0;
      for (; t < types_.size(); ++t) {
        const std::size_t rep = types_[t].front();
        if (jobs_.p[rep] == jobs_.p[pos] && jobs_.w[rep] == jobs_.w[pos] &&
            jobs_.r[rep] == jobs_.r[pos]) {
          break;
        }
      }
      if (t == types_.size()) types_.push_back({});
      types_[t].push_back(pos);
    }
    double space = 1;
    for (std::size_t t = 0; t < types_.size(); ++t) {
      std::size_t open = 0;
      for (std::size_t l = 0; l < releases_.size(); ++l) {
        if (jobs_.r[types_[t].front()] <= releases_[l]) {
          slots_.push_back({l, t});
          ++open;
        }
      }
      // Distributions of at most n_t jobs over `open` intervals.
      const double n = static_cast<double>(types_[t].size());
      space *= std::round(std::exp(std::lgamma(n + open + 1) -
                                   std::lgamma(n + 1) - std::lgamma(open + 1.0)));
    }
    if (space > opts.max_vectors) {
      throw Refusal("release-xp would enumerate " + std::to_string(space) +
                    " start vectors, cap is " +
                    std::to_string(opts.max_vectors));
    }
    std::sort(slots_.begin(), slots_.end());
    last_slot_.assign(types_.size(), 0);
    for (std::size_t k = 0; k < slots_.size(); ++k) {
      last_slot_[slots_[k].second] = k;
    }
    v_.assign(releases_.size(), std::vector<std::size_t>(types_.size(), 0));
    used_.assign(types_.size(), 0);
  }

  OptResult run() {
    search(0, Num{});
    OptResult out;
    out.schedule = build(best_v_);
    out.objective = evaluate(out.schedule, inst_);
    Num total{};
    for (const Num& w : jobs_.w) total += w;
    if (out.objective != jobs_.to_objective(total - *best_)) {
      throw std::logic_error("start vector witness disagrees with its value");
    }
    return out;
  }

 private:
  void search(std::size_t k, const Num& weight) {
    if (best_) {
      Num bound = weight;
      for (std::size_t t = 0; t < types_.size(); ++t) {
        if (k < slots_.size() && last_slot_[t] >= k) {
          bound += jobs_.w[types_[t].front()] *
                   static_cast<long>(types_[t].size() - used_[t]);
        }
      }
      if (bound <= *best_) return;
    }
    if (k == slots_.size()) {
      if (feasible(v_)) {
        best_ = weight;
        best_v_ = v_;
      }
      return;
    }
    const auto [l, t] = slots_[k];
    const std::size_t room = types_[t].size() - used_[t];
    for (std::size_t c = 0; c <= room; ++c) {
      v_[l][t] = c;
      used_[t] += c;
      search(k + 1, weight + jobs_.w[types_[t].front()] * static_cast<long>(c));
      used_[t] -= c;
    }
    v_[l][t] = 0;
  }

  // Jobs started in each interval, per the latest-due selection.
  std::vector<std::vector<std::size_t>> assign(
      const std::vector<std::vector<std::size_t>>& v) const {
    std::vector<std::vector<std::size_t>> in(releases_.size());
    for (std::size_t t = 0; t < types_.size(); ++t) {
      std::size_t total = 0;
      for (std::size_t l = 0; l < releases_.size(); ++l) total += v[l][t];
      std::size_t next = types_[t].size() - total;
      for (std::size_t l = 0; l < releases_.size(); ++l) {
        for (std::size_t c = 0; c < v[l][t]; ++c) {
          in[l].push_back(types_[t][next++]);
        }
      }
    }
    for (auto& group : in) group = edd_positions(inst_, group);
    return in;
  }

  bool feasible(const std::vector<std::vector<std::size_t>>& v) const {
    std::optional<Num> clock;
    const auto in = assign(v);
    for (std::size_t l = 0; l < releases_.size(); ++l) {
      if (in[l].empty()) continue;
      const Num start = clock ? std::max(*clock, releases_[l]) : releases_[l];
      const auto packed = pack(jobs_, in[l], start);
      if (!packed) return false;
      clock = packed->end;
    }
    return true;
  }

  Schedule build(const std::vector<std::vector<std::size_t>>& v) const {
    Schedule out;
    std::vector<char> early(inst_.size(), 0);
    std::optional<Num> clock;
    const auto in = assign(v);
    for (std::size_t l = 0; l < releases_.size(); ++l) {
      if (in[l].empty()) continue;
      const Num start = clock ? std::max(*clock, releases_[l]) : releases_[l];
      const auto packed = pack(jobs_, in[l], start);
      if (!packed) throw std::logic_error("accepted start vector fails");
      for (std::size_t b = 0; b < packed->batches.size(); ++b) {
        Batch batch;
        batch.start = to_int(packed->starts[b]);
        for (std::size_t pos : packed->batches[b]) {
          batch.job_ids.push_back(inst_.jobs[pos].id);
          early[pos] = 1;
        }
        out.batches.push_back(std::move(batch));
      }
      clock = packed->end;
    }
    for (std::size_t i = 0; i < inst_.size(); ++i) {
      if (!early[i]) out.tardy_ids.push_back(inst_.jobs[i].id);
    }
    return out;
  }

  const Instance& inst_;
  IntegralJobs<Num> jobs_;
  std::vector<Num> releases_;
  std::vector<std::vector<std::size_t>> types_;  // positions by EDD
  std::vector<std::pair<std::size_t, std::size_t>> slots_;
  std::vector<std::size_t> last_slot_;
  std::vector<std::vector<std::size_t>> v_;
  std::vector<std::size_t> used_;
  std::optional<Num> best_;
  std::vector<std::vector<std::size_t>> best_v_;
};

}  // namespace

OptResult solve_release_xp(const Instance& inst, const ReleaseXpOptions& opts) {
  if (inst.has_bounds()) throw Refusal("release-xp does not support bounds");
  if (inst.size() == 0) return {};
  return dispatch_scalar(inst, [&](auto tag) {
    return StartVectors<decltype(tag)>(inst, opts).run();
  });
}

std::optional<std::vector<Batch>> pack_interval(const Instance& inst,
                                                std::vector<int> job_ids,
                                                const Int& start) {
  std::vector<std::size_t> pos;
  for (int id : job_ids) pos.push_back(inst.position(id));
  const IntegralJobs<Int> jobs = make_integral<Int>(inst);
  const auto packed = pack(jobs, edd_positions(inst, pos), start);
  if (!packed) return std::nullopt;
  std::vector<Batch> out;
  for (std::size_t b = 0; b < packed->batches.size(); ++b) {
    Batch batch;
    batch.start = packed->starts[b];
    for (std::size_t p : packed->batches[b]) {
      batch.job_ids.push_back(inst.jobs[p].id);
    }
    out.push_back(std::move(batch));
  }
  return out;
}

Instance mirror(const Instance& inst) {
  Int m = 0;
  for (const Job& j : inst.jobs) m = std::max({m, j.d, j.r});
  Instance out = inst;
  for (Job& j : out.jobs) {
    const Int d = j.d;
    j.d = m - j.r;
    j.r = m - d;
  }
  return out;
}

Schedule mirror_schedule(const Schedule& schedule, const Instance& inst) {
  Int m = 0;
  for (const Job& j : inst.jobs) m = std::max({m, j.d, j.r});
  const Instance mirrored = mirror(inst);
  Schedule out;
  std::vector<char> early(inst.size(), 0);
  for (auto it = schedule.batches.rbegin(); it != schedule.batches.rend();
       ++it) {
    const Int done = completion(*it, mirrored);
    Batch batch;
    batch.start = m - done;
    for (int id : it->job_ids) {
      if (done <= mirrored.job(id).d) {
        batch.job_ids.push_back(id);
        early[inst.position(id)] = 1;
      }
    }
    if (!batch.job_ids.empty()) out.batches.push_back(std::move(batch));
  }
  for (std::size_t i = 0; i < inst.size(); ++i) {
    if (!early[i]) out.tardy_ids.push_back(inst.jobs[i].id);
  }
  return out;
}

}  // namespace batchsched
