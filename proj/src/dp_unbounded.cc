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

#include "batchsched/dp_unbounded.h"

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

namespace batchsched {
namespace {

enum Branch : std::uint8_t { kUnset = 0, kTardy, kJoin, kOpen };

// kByWeight selects the weight-level table; otherwise processing levels.
template <typename Num, bool kByWeight>
class CountDp {
 public:
  CountDp(const Instance& inst, const XpOptions& opts)
      : inst_(inst),
        opts_(opts),
        jobs_(make_integral<Num>(inst, inst.common_release())),
        order_(edd_sort(inst)),
        n_(inst.size()) {
    for (int id : order_) pos_.push_back(inst.position(id));

    std::vector<Num> keys;
    for (std::size_t i = 0; i < n_; ++i) keys.push_back(key(i));
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    level_value_ = keys;
    counts_.assign(keys.size(), 0);
    for (std::size_t i = 0; i < n_; ++i) {
      level_of_.push_back(static_cast<std::size_t>(
          std::lower_bound(keys.begin(), keys.end(), key(i)) - keys.begin()));
      ++counts_[level_of_.back()];
    }
    codes_ = 1;
    for (std::size_t c : counts_) {
      strides_.push_back(codes_);
      codes_ *= c + 1;
    }

    dvals_.push_back(Num{});
    for (std::size_t i = 0; i < n_; ++i) dvals_.push_back(jobs_.d[i]);
    std::sort(dvals_.begin(), dvals_.end());
    dvals_.erase(std::unique(dvals_.begin(), dvals_.end()), dvals_.end());

    const long double states = static_cast<long double>(codes_) *
                               static_cast<long double>(n_ + 1) *
                               static_cast<long double>(dvals_.size());
    if (states > static_cast<long double>(opts_.max_states)) {
      throw Refusal("count-vector table needs " +
                    std::to_string(static_cast<unsigned long long>(states)) +
                    " states per job, cap is " +
                    std::to_string(opts_.max_states));
    }
    layer_ = codes_ * (n_ + 1) * dvals_.size();

    code_sum_.assign(codes_, Num{});
    for (std::size_t code = 0; code < codes_; ++code) {
      Num s{};
      for (std::size_t l = 0; l < counts_.size(); ++l) {
        s += level_value_[l] * static_cast<long>(digit(code, l));
      }
      code_sum_[code] = s;
    }

    Num total_w{};
    Num total_load = jobs_.setup * static_cast<long>(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      total_w += jobs_.w[i];
      total_load += jobs_.p[i];
    }
    total_weight_ = total_w;
    inf_ = (kByWeight ? total_load : total_w) + 1;
  }

  OptResult run() {
    if (n_ == 0) return {};
    std::vector<Num> prev(layer_, inf_), cur(layer_, inf_);
    std::vector<Num> prefix(layer_);
    std::vector<std::uint16_t> prefix_arg(layer_);
    const std::size_t dn = dvals_.size();
    // Only the empty selection in zero batches exists before any job.
    for (std::size_t di = 0; di < dn; ++di) prev[index(0, 0, di)] = Num{};

    branch_.assign(n_, std::vector<std::uint8_t>(layer_, kUnset));
    opened_from_.assign(n_, std::vector<std::uint16_t>(layer_, 0));

    for (std::size_t j = 0; j < n_; ++j) {
      const std::size_t job = pos_[j];
      const std::size_t lv = level_of_[job];
      const Num& pj = jobs_.p[job];
      const Num& wj = jobs_.w[job];
      const Num& dj = jobs_.d[job];

      for (std::size_t base = 0; base < layer_; base += dn) {
        Num best = inf_;
        std::uint16_t arg = 0;
        for (std::size_t di = 0; di < dn; ++di) {
          if (prev[base + di] < best) {
            best = prev[base + di];
            arg = static_cast<std::uint16_t>(di);
          }
          prefix[base + di] = best;
          prefix_arg[base + di] = arg;
        }
      }

      std::vector<std::uint8_t>& br = branch_[j];
      std::vector<std::uint16_t>& from = opened_from_[j];
      for (std::size_t code = 0; code < codes_; ++code) {
        const bool has = digit(code, lv) > 0;
        const std::size_t pc = has ? code - strides_[lv] : 0;
        for (std::size_t b = 0; b <= n_; ++b) {
          const Num load =
              code_sum_[code] + jobs_.setup * static_cast<long>(b);
          for (std::size_t di = 0; di < dn; ++di) {
            const std::size_t idx = index(code, b, di);
            const Num& d = dvals_[di];
            Num best = inf_;
            std::uint8_t how = kUnset;
            if (prev[idx] < inf_) {
              best = kByWeight ? prev[idx] : prev[idx] + wj;
              how = kTardy;
            }
            if (has && b >= 1 && (!opts_.due_guard || d <= dj)) {
              if constexpr (kByWeight) {
                if (pc != 0) {
                  const Num& c = prev[index(pc, b, di)];
                  if (c < inf_ && c + pj <= d && c + pj < best) {
                    best = c + pj;
                    how = kJoin;
                  }
                }
                const std::size_t pi = index(pc, b - 1, di);
                const Num& c = prefix[pi];
                if (c < inf_ && c + pj + jobs_.setup <= d &&
                    c + pj + jobs_.setup < best) {
                  best = c + pj + jobs_.setup;
                  how = kOpen;
                  from[idx] = prefix_arg[pi];
                }
              } else if (load <= d) {
                if (pc != 0 && prev[index(pc, b, di)] < best) {
                  best = prev[index(pc, b, di)];
                  how = kJoin;
                }
                const std::size_t pi = index(pc, b - 1, di);
                if (prefix[pi] < best) {
                  best = prefix[pi];
                  how = kOpen;
                  from[idx] = prefix_arg[pi];
                }
              }
            }
            cur[idx] = best;
            br[idx] = how;
            if constexpr (!kByWeight) {
              if (opts_.due_guard && di > 0 && dvals_[di - 1] >= load &&
                  cur[idx - 1] > best) {
                throw std::logic_error(
                    "count-vector table is not monotone in the due bound");
              }
            }
          }
        }
      }
      std::swap(prev, cur);
    }
    return finish(prev);
  }

 private:
  const Num& key(std::size_t i) const {
    return kByWeight ? jobs_.w[i] : jobs_.p[i];
  }
  std::size_t digit(std::size_t code, std::size_t l) const {
    return code / strides_[l] % (counts_[l] + 1);
  }
  std::size_t index(std::size_t code, std::size_t b, std::size_t di) const {
    return (code * (n_ + 1) + b) * dvals_.size() + di;
  }

  OptResult finish(const std::vector<Num>& last) const {
    std::size_t best_idx = 0;
    Num best_value{};
    bool have = false;
    for (std::size_t idx = 0; idx < layer_; ++idx) {
      if (!(last[idx] < inf_)) continue;
      const std::size_t code = idx / dvals_.size() / (n_ + 1);
      const Num value =
          kByWeight ? total_weight_ - code_sum_[code] : last[idx];
      if (!have || value < best_value) {
        have = true;
        best_value = value;
        best_idx = idx;
      }
    }
    if (!have) throw std::logic_error("count-vector table has no final state");

    const std::size_t dn = dvals_.size();
    std::size_t di = best_idx % dn;
    std::size_t b = best_idx / dn % (n_ + 1);
    std::size_t code = best_idx / dn / (n_ + 1);
    std::vector<std::vector<int>> batches;
    std::vector<int> current;
    for (std::size_t j = n_; j-- > 0;) {
      const std::size_t idx = index(code, b, di);
      const std::uint8_t how = branch_[j][idx];
      if (how == kUnset) throw std::logic_error("broken backpointer");
      if (how == kTardy) continue;
      current.push_back(order_[j]);
      code -= strides_[level_of_[pos_[j]]];
      if (how == kOpen) {
        std::reverse(current.begin(), current.end());
        batches.push_back(std::move(current));
        current.clear();
        di = opened_from_[j][idx];
        --b;
      }
    }
    if (!current.empty() || b != 0) {
      throw std::logic_error("backpointers do not end in the empty state");
    }
    std::reverse(batches.begin(), batches.end());
    std::vector<int> early;
    std::vector<std::size_t> groups;
    for (const auto& batch : batches) {
      early.insert(early.end(), batch.begin(), batch.end());
      groups.push_back(batch.size());
    }
    auto packed = greedy_pack(early, groups, inst_);
    if (!packed) throw std::logic_error("count-vector witness does not pack");
    OptResult out;
    out.schedule = std::move(*packed);
    out.objective = jobs_.to_objective(best_value);
    if (evaluate(out.schedule, inst_) != out.objective) {
      throw std::logic_error("count-vector witness disagrees with its value");
    }
    return out;
  }

  const Instance& inst_;
  XpOptions opts_;
  IntegralJobs<Num> jobs_;
  std::vector<int> order_;
  std::vector<std::size_t> pos_;
  std::size_t n_;
  std::vector<Num> level_value_;
  std::vector<std::size_t> counts_;
  std::vector<std::size_t> level_of_;
  std::vector<std::size_t> strides_;
  std::size_t codes_ = 1;
  std::vector<Num> dvals_;
  std::size_t layer_ = 0;
  std::vector<Num> code_sum_;
  Num total_weight_{};
  Num inf_{};
  std::vector<std::vector<std::uint8_t>> branch_;
  std::vector<std::vector<std::uint16_t>> opened_from_;
};

template <bool kByWeight>
OptResult solve_counts(const Instance& inst, const XpOptions& opts,
                       const char* algo) {
  require_single_release_unbounded(inst, algo);
  return dispatch_scalar(inst, [&](auto tag) {
    using Num = decltype(tag);
    return CountDp<Num, kByWeight>(inst, opts).run();
  });
}

}  // namespace

void require_single_release_unbounded(const Instance& inst, const char* algo) {
  if (!inst.single_release()) {
    throw Refusal(std::string(algo) +
                  " requires all release dates to be equal");
  }
  if (inst.size_bound) {
    throw Refusal(std::string(algo) + " does not support a batch size bound");
  }
  if (inst.volume_bound) {
    throw Refusal(std::string(algo) +
                  " does not support a batch volume bound");
  }
}

OptResult solve_xp_p(const Instance& inst, const XpOptions& opts) {
  return solve_counts<false>(inst, opts, "xp-p");
}

OptResult solve_xp_w(const Instance& inst, const XpOptions& opts) {
  return solve_counts<true>(inst, opts, "xp-w");
}

}  // namespace batchsched
