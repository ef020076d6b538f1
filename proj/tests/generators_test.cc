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


#include <gtest/gtest.h>

#include <map>
#include <set>

#include "batchsched/bounded_batch.h"
#include "batchsched/dp_unbounded.h"
#include "batchsched/generators.h"
#include "batchsched/io.h"
#include "batchsched/oracle.h"
#include "batchsched/reduce_nonbatch.h"
#include "batchsched/release_xp.h"
#include "test_support.h"

namespace batchsched {
namespace {

std::vector<Int> ints(std::initializer_list<long> v) {
  return std::vector<Int>(v.begin(), v.end());
}

TEST(Digits, BaseExpansion) {
  EXPECT_EQ(digits(11, 3), ints({2, 0, 1}));
  EXPECT_TRUE(digits(0, 2).empty());
  EXPECT_THROW(digits(5, 1), std::invalid_argument);
}

TEST(KSum, SmallStructure) {
  const ReductionInstance red = gen_ksum({ints({1, 2}), 2, 1});
  const Instance& inst = red.instance;
  ASSERT_EQ(inst.size(), 2u);
  EXPECT_EQ(inst.setup, 2);
  EXPECT_EQ(inst.jobs[0].p, 1);
  EXPECT_EQ(inst.jobs[0].w, 2);
  EXPECT_EQ(inst.jobs[0].d, 3);
  EXPECT_EQ(inst.jobs[1].p, 2);
  EXPECT_EQ(inst.jobs[1].w, 3);
  EXPECT_EQ(inst.jobs[1].d, 4);
  EXPECT_EQ(red.threshold, 2);
  EXPECT_FALSE(red.notes.empty());
}

// Group normal jobs by (release, due): every group is one value's job set.
TEST(KSum, JobSetsSumToValue) {
  const KSumParams params{ints({3, 5, 7}), 11, 2};
  const ReductionInstance red = gen_ksum(params);
  const Int leftover = (2 - 1) * params.t;
  std::size_t count_leftover = 0;
  std::map<std::pair<Int, Int>, std::pair<Int, Rational>> sets;
  for (const Job& j : red.instance.jobs) {
    if (j.d == 3 * 2 * params.t) {
      ++count_leftover;
      EXPECT_EQ(j.p, 1);
      EXPECT_EQ(j.w, Rational(2 * (15 + 3)));
      continue;
    }
    auto& [p, w] = sets[{j.r, j.d}];
    p += j.p;
    w += j.w;
  }
  EXPECT_EQ(Int(static_cast<unsigned long>(count_leftover)), leftover);
  EXPECT_EQ(sets.size(), 6u);
  for (const auto& [key, total] : sets) {
    const Int x = key.second - key.first - params.t;
    EXPECT_EQ(total.first, x);
    EXPECT_EQ(total.second, Rational(x + 1));
  }
  EXPECT_EQ(red.threshold, Rational(2 * 15 - 11 + 2 * 2));
}

TEST(KSum, AnswerMatchesThreshold) {
  for (const KSumParams& params :
       {KSumParams{ints({1, 2}), 3, 2}, KSumParams{ints({1, 3}), 5, 2},
        KSumParams{ints({2, 3}), 3, 1}, KSumParams{ints({2}), 3, 1},
        KSumParams{ints({2, 3}), 7, 2}}) {
    const ReductionInstance red = gen_ksum(params);
    OracleOptions wide;
    wide.max_jobs = wide.max_jobs_with_releases = 40;
    const bool yes = brute_force_threshold(red.instance, red.threshold, wide);
    EXPECT_EQ(yes, ksum_answer(params)) << red.notes[0];
  }
}

TEST(KSum, Refusals) {
  try {
    gen_ksum({ints({5}), 3, 1});
    FAIL();
  } catch (const Refusal& e) {
    EXPECT_NE(std::string(e.what()).find("5 > 3"), std::string::npos);
  }
  try {
    gen_ksum({ints({2, 4}), 4, 2});
    FAIL();
  } catch (const Refusal& e) {
    EXPECT_NE(std::string(e.what()).find("add 8"), std::string::npos);
  }
  EXPECT_THROW(gen_ksum({ints({1, 2}), 20000, 3}), Refusal);
  EXPECT_THROW(gen_ksum({{}, 3, 1}), Refusal);
  EXPECT_THROW(gen_ksum({ints({0}), 3, 1}), Refusal);
}

TEST(KSum, NormalizeShiftsOrDrops) {
  EXPECT_FALSE(normalize_ksum({ints({1, 2}), 3, 2}));
  const auto dropped = normalize_ksum({ints({1, 5, 2}), 3, 1});
  ASSERT_TRUE(dropped);
  EXPECT_EQ(dropped->x, ints({1, 2}));
  EXPECT_THROW(normalize_ksum({ints({5}), 3, 1}), Refusal);
  const KSumParams before{ints({2, 4}), 4, 2};
  const auto shifted = normalize_ksum(before);
  ASSERT_TRUE(shifted);
  EXPECT_EQ(shifted->x, ints({10, 12}));
  EXPECT_EQ(shifted->t, 20);
  EXPECT_EQ(ksum_answer(*shifted), ksum_answer(before));
  EXPECT_NO_THROW(gen_ksum(*shifted));
}

TEST(KSum, NormalizePreservesAnswer) {
  for (long t = 1; t <= 9; ++t) {
    for (const auto& x : {ints({1, 3}), ints({2, 5, 6}), ints({4})}) {
      for (std::size_t k : {2u, 3u}) {
        const KSumParams params{x, t, k};
        const auto shifted = normalize_ksum(params);
        if (shifted) EXPECT_EQ(ksum_answer(*shifted), ksum_answer(params));
      }
    }
  }
}

TEST(KSum, IntegralWeights) {
  KSumOptions opts;
  opts.integral_weights = true;
  const ReductionInstance plain = gen_ksum({ints({2, 3}), 5, 1});
  const ReductionInstance scaled = gen_ksum({ints({2, 3}), 5, 1}, opts);
  for (std::size_t k = 0; k < plain.instance.size(); ++k) {
    EXPECT_EQ(scaled.instance.jobs[k].w, plain.instance.jobs[k].w * 6);
    EXPECT_EQ(denominator(scaled.instance.jobs[k].w), 1);
  }
  EXPECT_EQ(scaled.threshold, plain.threshold * 6);
}

TEST(Partition, YesInstance) {
  const ReductionInstance red = gen_partition({ints({1, 2, 3, 4})});
  EXPECT_EQ(red.instance.setup, 1);
  EXPECT_EQ(*red.instance.volume_bound, 5);
  EXPECT_EQ(red.instance.jobs[0].d, 12);
  EXPECT_EQ(brute_force(red.instance).objective, 0);
  const ReductionInstance literal =
      gen_partition({ints({1, 2, 3, 4})}, PartitionVolume::kHalfPlusOne);
  EXPECT_EQ(*literal.instance.volume_bound, 6);
}

TEST(Partition, OddSumRefused) {
  EXPECT_THROW(gen_partition({ints({1, 1, 3})}), Refusal);
  EXPECT_FALSE(partition_answer({ints({1, 1, 3})}));
}

TEST(Partition, NoInstanceIsLate) {
  const ReductionInstance red = gen_partition({ints({2, 2, 2})});
  EXPECT_FALSE(partition_answer({ints({2, 2, 2})}));
  EXPECT_GT(brute_force(red.instance).objective, 0);
}

// With V = K + 1 the volume no longer forces an even split.
TEST(Partition, HalfPlusOneAcceptsNoInstances) {
  const ReductionInstance red =
      gen_partition({ints({2, 2, 2})}, PartitionVolume::kHalfPlusOne);
  EXPECT_EQ(brute_force(red.instance).objective, 0);
}

TEST(PCMax, YesInstance) {
  const ReductionInstance red = gen_pcmax({ints({2, 2, 4}), 2, 4});
  EXPECT_EQ(red.instance.setup, 8);
  EXPECT_EQ(*red.instance.volume_bound, 4);
  EXPECT_EQ(red.instance.jobs[0].d, 24);
  EXPECT_EQ(brute_force(red.instance).objective, 0);
}

TEST(PCMax, OneMachine) {
  const ReductionInstance red = gen_pcmax({ints({1, 2}), 1, 3});
  EXPECT_EQ(brute_force(red.instance).objective, 0);
  EXPECT_TRUE(pcmax_answer({ints({1, 2}), 1, 3}));
}

TEST(PCMax, NoInstanceIsLate) {
  EXPECT_FALSE(pcmax_answer({ints({2, 2, 2}), 2, 3}));
  EXPECT_GT(brute_force(gen_pcmax({ints({2, 2, 2}), 2, 3}).instance).objective, 0);
}

TEST(PCMax, DueOfMachinesTimesVolumeIsTooTight) {
  const PCMaxParams params{ints({2}), 1, 4};
  EXPECT_TRUE(pcmax_answer(params));
  const ReductionInstance red = gen_pcmax(params, PCMaxDue::kMachinesTimesVolume);
  EXPECT_EQ(red.instance.jobs[0].d, 4);
  EXPECT_GT(brute_force(red.instance).objective, 0);
}

TEST(PCMax, Refusals) {
  EXPECT_THROW(gen_pcmax({ints({1}), 0, 3}), Refusal);
  EXPECT_THROW(gen_pcmax({ints({5}), 2, 3}), Refusal);
}

RandomParams random_params(std::uint64_t seed) {
  RandomParams params;
  params.n = 6;
  params.processing_levels = 2;
  params.weight_levels = 2;
  params.due_levels = 2;
  params.release_levels = 1;
  params.seed = seed;
  return params;
}

TEST(Random, Deterministic) {
  const RandomParams params = random_params(1);
  EXPECT_EQ(format_instance(gen_random(params)),
            format_instance(gen_random(params)));
  EXPECT_NE(format_instance(gen_random(params)),
            format_instance(gen_random(random_params(2))));
}

TEST(Random, ExactLevelCounts) {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    RandomParams params = random_params(seed);
    params.n = 8;
    params.processing_levels = 1 + seed % 4;
    params.weight_levels = 1 + seed % 3;
    params.due_levels = 1 + seed % 5;
    params.release_levels = 1 + seed % 3;
    const Instance inst = gen_random(params);
    ASSERT_EQ(inst.size(), 8u);
    EXPECT_EQ(inst.processing_levels().size(), params.processing_levels);
    EXPECT_EQ(inst.weight_levels().size(), params.weight_levels);
    EXPECT_EQ(inst.due_levels().size(), params.due_levels);
    EXPECT_EQ(inst.release_levels().size(), params.release_levels);
    EXPECT_EQ(inst.release_levels().front(), 0);
  }
}

TEST(Random, SingleReleaseIsZero) {
  const Instance inst = gen_random(random_params(3));
  for (const Job& j : inst.jobs) EXPECT_EQ(j.r, 0);
}

TEST(Random, Refusals) {
  RandomParams params = random_params(1);
  params.processing_levels = 7;
  EXPECT_THROW(gen_random(params), Refusal);
  params = random_params(1);
  params.due_levels = 0;
  EXPECT_THROW(gen_random(params), Refusal);
  params = random_params(1);
  params.weight_levels = 5;
  params.max_time = 3;
  EXPECT_THROW(gen_random(params), Refusal);
}

TEST(Random, SolversAgree) {
  const Instance inst = gen_random(random_params(1));
  const Rational want = brute_force(inst).objective;
  EXPECT_EQ(solve_xp_p(inst).objective, want);
  EXPECT_EQ(solve_xp_w(inst).objective, want);
  EXPECT_EQ(solve_via_reduction(inst).objective, want);
  EXPECT_EQ(solve_ip_size(inst).objective, want);
  EXPECT_EQ(solve_release_xp(inst).objective, want);
}

}  // namespace
}  // namespace batchsched
