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


#include "test_support.h"

#include <algorithm>
#include <random>

#include "batchsched/generators.h"

namespace batchsched::testing {

Instance make_instance(std::initializer_list<Spec> jobs, const Int& setup) {
  Instance inst;
  inst.setup = setup;
  int id = 1;
  for (const Spec& s : jobs) inst.jobs.push_back({id++, s.p, s.w, s.d, s.r});
  return inst;
}

Instance three_jobs() {
  return make_instance({{1, 2, 3}, {2, 2, 5}, {3, 2, 6}}, 1);
}

std::optional<std::string> witness_problem(const OptResult& res,
                                           const Instance& inst) {
  const auto violations = validate(res.schedule, inst);
  if (!violations.empty()) {
    return to_string(violations.front().kind) + ": " +
           violations.front().message;
  }
  const Rational value = evaluate(res.schedule, inst);
  if (value != res.objective) {
    return "witness evaluates to " + format_rational(value) + ", reported " +
           format_rational(res.objective);
  }
  return std::nullopt;
}

Instance with_fractional_weights(Instance inst, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  for (Job& j : inst.jobs) {
    j.w /= std::uniform_int_distribution<int>(2, 6)(rng);
  }
  return inst;
}

namespace {

Instance sweep(std::uint64_t seed, std::size_t min_n, std::size_t max_n,
               bool releases) {
  std::mt19937_64 rng(seed * 7919 + 13);
  auto pick = [&](std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  };
  RandomParams params;
  params.seed = seed;
  params.n = pick(min_n, max_n);
  const std::size_t top = std::min<std::size_t>(3, params.n);
  params.processing_levels = pick(1, top);
  params.weight_levels = pick(1, top);
  params.due_levels = pick(1, top);
  params.release_levels = releases ? pick(2, std::max<std::size_t>(2, top)) : 1;
  params.max_processing = 5;
  params.max_setup = 4;
  params.max_release = 10;
  params.max_time = 16;
  Instance inst = gen_random(params);
  if (seed % 3 == 2) inst = with_fractional_weights(std::move(inst), seed);
  return inst;
}

}  // namespace

Instance sweep_unbounded(std::uint64_t seed, std::size_t max_n) {
  return sweep(seed, 1, max_n, false);
}

Instance sweep_release(std::uint64_t seed, std::size_t max_n) {
  return sweep(seed, 2, max_n, true);
}

}  // namespace batchsched::testing
