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


#include "batchsched/generators.h"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <string>

namespace batchsched {
namespace {

Int max_of(const std::vector<Int>& v) {
  Int m = 0;
  for (const Int& a : v) m = std::max(m, a);
  return m;
}

Int sum_of(const std::vector<Int>& v) {
  Int s = 0;
  for (const Int& a : v) s += a;
  return s;
}

void check_ksum(const KSumParams& params) {
  if (params.x.empty()) throw Refusal("k-Sum needs at least one value");
  if (params.k == 0) throw Refusal("k-Sum needs k >= 1");
  if (params.t <= 0) throw Refusal("k-Sum needs a positive target");
  for (const Int& v : params.x) {
    if (v <= 0) throw Refusal("k-Sum values must be positive");
  }
}

std::string join(const std::vector<Int>& v) {
  std::string out;
  for (const Int& a : v) {
    if (!out.empty()) out += ',';
    out += a.str();
  }
  return out;
}

// Sizes sorted descending; loads kept sorted to skip symmetric branches.
bool fill_machines(const std::vector<Int>& sizes, std::size_t next,
                   std::vector<Int>& loads, const Int& cap) {
  if (next == sizes.size()) return true;
  for (std::size_t i = 0; i < loads.size(); ++i) {
    if (i > 0 && loads[i] == loads[i - 1]) continue;
    if (loads[i] + sizes[next] > cap) continue;
    loads[i] += sizes[next];
    const bool ok = fill_machines(sizes, next + 1, loads, cap);
    loads[i] -= sizes[next];
    if (ok) return true;
  }
  return false;
}

}  // namespace

std::vector<Int> digits(Int x, const Int& base) {
  if (base < 2) throw std::invalid_argument("digit base must be at least 2");
  std::vector<Int> out;
  while (x > 0) {
    out.push_back(x % base);
    x /= base;
  }
  return out;
}

Int ksum_base(const KSumParams& params) {
  return std::max<Int>(2, Int(params.x.size()));
}

bool ksum_answer(const KSumParams& params) {
  std::set<Int> reach{0};
  for (std::size_t round = 0; round < params.k; ++round) {
    std::set<Int> next;
    for (const Int& s : reach) {
      for (const Int& v : params.x) {
        if (s + v <= params.t) next.insert(s + v);
      }
    }
    reach = std::move(next);
  }
  return reach.count(params.t) > 0;
}

std::optional<KSumParams> normalize_ksum(const KSumParams& params) {
  check_ksum(params);
  const Int top = max_of(params.x);
  if (params.k == 1) {
    if (top <= params.t) return std::nullopt;
    KSumParams out = params;
    std::erase_if(out.x, [&](const Int& v) { return v > params.t; });
    if (out.x.empty()) {
      throw Refusal("every value exceeds the target; nothing is left");
    }
    return out;
  }
  const Int k(static_cast<unsigned long>(params.k));
  if ((k - 1) * top < params.t) return std::nullopt;
  const Int base = ksum_base(params);
  Int n_pow = base;
  while (n_pow < top) n_pow *= base;
  KSumParams out = params;
  for (Int& v : out.x) v += k * n_pow;
  out.t += k * k * n_pow;
  return out;
}

ReductionInstance gen_ksum(const KSumParams& params, const KSumOptions& opts) {
  check_ksum(params);
  const Int k(static_cast<unsigned long>(params.k));
  const Int n(static_cast<unsigned long>(params.x.size()));
  const Int& t = params.t;
  const Int top = max_of(params.x);
  if (params.k == 1 && top > t) {
    throw Refusal("k = 1 requires every value <= t (" + top.str() + " > " +
                  t.str() + "); drop the larger values");
  }
  if ((k - 1) * top >= t) {
    const Int base = ksum_base(params);
    Int n_pow = base;
    while (n_pow < top) n_pow *= base;
    throw Refusal("(k-1) max x = " + Int((k - 1) * top).str() +
                  " is not below t = " + t.str() + "; add " +
                  Int(k * n_pow).str() + " to every value and set t to " +
                  Int(t + k * k * n_pow).str());
  }
  const Int leftover = (k - 1) * t;
  if (leftover > 10000 && !opts.allow_large) {
    throw Refusal("k-Sum instance would have " + leftover.str() +
                  " leftover jobs (more than 10^4)");
  }
  const Int X = sum_of(params.x);
  const Int base = ksum_base(params);

  ReductionInstance out;
  Instance& inst = out.instance;
  inst.setup = t;
  int id = 1;
  for (Int c = 0; c < leftover; ++c) {
    inst.jobs.push_back({id++, 1, Rational(k * (X + n)), 3 * k * t, 0});
  }
  for (std::size_t l = 0; l < params.k; ++l) {
    const Int release = Int(3) * t * static_cast<unsigned long>(l);
    for (const Int& x : params.x) {
      const Int due = release + t + x;
      Int total_p = 0;
      Rational total_w = 0;
      Int power = 1;
      for (const Int& a : digits(x, base)) {
        for (Int c = 0; c < a; ++c) {
          const Rational w = Rational(power) + Rational(power, x);
          inst.jobs.push_back({id++, power, w, due, release});
          total_p += power;
          total_w += w;
        }
        power *= base;
      }
      if (total_p != x || total_w != Rational(x + 1)) {
        throw std::logic_error("job set for " + x.str() +
                               " has the wrong totals");
      }
    }
  }
  out.threshold = Rational(k * X - t + (n - 1) * k);
  out.notes.push_back("k-Sum x=" + join(params.x) + " t=" + t.str() +
                      " k=" + k.str());
  if (opts.integral_weights) {
    Int scale = 1;
    for (const Int& x : params.x) scale *= x;
    for (Job& j : inst.jobs) j.w *= scale;
    out.threshold *= scale;
    out.notes.push_back("weights scaled by " + scale.str());
  }
  return out;
}

bool partition_answer(const PartitionParams& params) {
  const Int total = sum_of(params.values);
  if (total % 2 != 0) return false;
  std::set<Int> reach{0};
  for (const Int& v : params.values) {
    std::set<Int> next = reach;
    for (const Int& s : reach) next.insert(s + v);
    reach = std::move(next);
  }
  return reach.count(total / 2) > 0;
}

ReductionInstance gen_partition(const PartitionParams& params,
                                PartitionVolume volume) {
  for (const Int& v : params.values) {
    if (v <= 0) throw Refusal("Partition values must be positive");
  }
  const Int total = sum_of(params.values);
  if (total % 2 != 0) {
    throw Refusal("Partition values sum to " + total.str() + ", which is odd");
  }
  const Int half = total / 2;
  ReductionInstance out;
  Instance& inst = out.instance;
  inst.setup = 1;
  inst.volume_bound = volume == PartitionVolume::kHalf ? half : half + 1;
  int id = 1;
  for (const Int& v : params.values) {
    inst.jobs.push_back({id++, v, 1, 2 * half + 2, 0});
  }
  out.threshold = 0;
  out.notes.push_back("Partition " + join(params.values) + " K=" + half.str());
  return out;
}

bool pcmax_answer(const PCMaxParams& params) {
  if (params.m == 0) return params.sizes.empty();
  std::vector<Int> sizes = params.sizes;
  std::sort(sizes.begin(), sizes.end(), std::greater<>());
  std::vector<Int> loads(params.m, 0);
  return fill_machines(sizes, 0, loads, params.makespan);
}

ReductionInstance gen_pcmax(const PCMaxParams& params, PCMaxDue due) {
  if (params.m == 0) throw Refusal("P||Cmax needs at least one machine");
  for (const Int& s : params.sizes) {
    if (s <= 0) throw Refusal("P||Cmax sizes must be positive");
  }
  if (max_of(params.sizes) > params.makespan) {
    throw Refusal("a job is longer than the target makespan");
  }
  const Int m(static_cast<unsigned long>(params.m));
  const Int& T = params.makespan;
  ReductionInstance out;
  Instance& inst = out.instance;
  inst.setup = T * m;
  inst.volume_bound = T;
  const Int d = due == PCMaxDue::kMachinesTimesSetupPlusMakespan
                    ? Int(m * (inst.setup + T))
                    : Int(m * T);
  int id = 1;
  for (const Int& s : params.sizes) inst.jobs.push_back({id++, s, 1, d, 0});
  out.threshold = 0;
  out.notes.push_back("P||Cmax sizes=" + join(params.sizes) +
                      " m=" + m.str() + " T=" + T.str());
  return out;
}

Instance gen_random(const RandomParams& params) {
  std::mt19937_64 rng(params.seed);
  const std::size_t n = params.n;
  auto pick = [&](std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
  };
  auto draw_levels = [&](const char* name, std::size_t count, std::int64_t lo,
                         std::int64_t hi) {
    if (n == 0) return std::vector<std::int64_t>{};
    if (count == 0 || count > n) {
      throw Refusal(std::string("need 1..n distinct ") + name + " values, got " +
                    std::to_string(count));
    }
    if (hi < lo || static_cast<std::uint64_t>(hi - lo + 1) < count) {
      throw Refusal(std::string("cannot draw ") + std::to_string(count) +
                    " distinct " + name + " values from " + std::to_string(lo) +
                    ".." + std::to_string(hi));
    }
    std::set<std::int64_t> chosen;
    while (chosen.size() < count) chosen.insert(pick(lo, hi));
    std::vector<std::int64_t> levels(chosen.begin(), chosen.end());
    std::shuffle(levels.begin(), levels.end(), rng);
    return levels;
  };
  auto spread = [&](const std::vector<std::int64_t>& levels) {
    std::vector<std::int64_t> out(levels);
    while (out.size() < n) {
      out.push_back(levels[pick(0, static_cast<std::int64_t>(levels.size()) - 1)]);
    }
    std::shuffle(out.begin(), out.end(), rng);
    return out;
  };

  const std::int64_t top = params.max_time;
  const auto p = spread(draw_levels(
      "processing", params.processing_levels, 1,
      params.max_processing.value_or(top)));
  const auto w = spread(draw_levels("weight", params.weight_levels, 1, top));
  const auto d = spread(draw_levels("due", params.due_levels, 1, top));
  std::vector<std::int64_t> r_levels{0};
  if (n > 0 && params.release_levels > 1) {
    const auto extra =
        draw_levels("release", params.release_levels - 1, 1,
                    params.max_release.value_or(top));
    r_levels.insert(r_levels.end(), extra.begin(), extra.end());
  } else if (n > 0 && params.release_levels == 0) {
    throw Refusal("need 1..n distinct release values, got 0");
  }
  if (n > 0 && r_levels.size() > n) {
    throw Refusal("more release levels than jobs");
  }
  const auto r = n > 0 ? spread(r_levels) : std::vector<std::int64_t>{};

  Instance inst;
  inst.setup = pick(0, params.max_setup.value_or(top));
  for (std::size_t i = 0; i < n; ++i) {
    inst.jobs.push_back({static_cast<int>(i + 1), p[i], w[i], d[i], r[i]});
  }
  return inst;
}

}  // namespace batchsched
