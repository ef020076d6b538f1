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

#include "batchsched/oracle.h"
#include "batchsched/reduce_nonbatch.h"
#include "test_support.h"

namespace batchsched {
namespace {

using testing::make_instance;
using testing::witness_problem;

Instance two_levels() {
  return make_instance({{1, 1, 10}, {2, 1, 20}}, 3);
}

TEST(Guess, AnchorAndCount) {
  const IntervalGuess g{{2, 4}};
  EXPECT_FALSE(g.anchor(1));
  EXPECT_EQ(g.anchor(2), 2u);
  EXPECT_EQ(g.anchor(3), 2u);
  EXPECT_EQ(g.anchor(5), 4u);
  EXPECT_EQ(g.count_upto(1), 0u);
  EXPECT_EQ(g.count_upto(4), 2u);
}

TEST(Guess, EnumerationOrder) {
  const auto all = enumerate_guesses(3);
  ASSERT_EQ(all.size(), 8u);
  const std::vector<std::vector<std::size_t>> want{
      {}, {1}, {2}, {3}, {1, 2}, {1, 3}, {2, 3}, {1, 2, 3}};
  for (std::size_t k = 0; k < all.size(); ++k) EXPECT_EQ(all[k].levels, want[k]);
}

TEST(Transform, BothLevelsGuessed) {
  const Instance t = transform(two_levels(), {{1, 2}});
  EXPECT_EQ(t.setup, 0);
  EXPECT_EQ(t.jobs[0].d, 7);
  EXPECT_EQ(t.jobs[1].d, 14);
  EXPECT_EQ(t.jobs[1].p, 2);
}

TEST(Transform, LowerLevelOnly) {
  const Instance t = transform(two_levels(), {{1}});
  EXPECT_EQ(t.jobs[0].d, 7);
  EXPECT_EQ(t.jobs[1].d, 7);
}

TEST(Transform, NoLevelMeansTardy) {
  const Instance inst = two_levels();
  const Instance t = transform(inst, {});
  for (const Job& j : t.jobs) EXPECT_EQ(j.d, -1);
  EXPECT_EQ(lawler_moore_value(t), inst.total_weight());
  const Instance upper = transform(inst, {{2}});
  EXPECT_EQ(upper.jobs[0].d, -1);
  EXPECT_EQ(upper.jobs[1].d, 17);
}

TEST(Transform, NegativeDueBecomesSentinel) {
  const Instance inst = make_instance({{1, 1, 2}}, 5);
  EXPECT_EQ(transform(inst, {{1}}).jobs[0].d, -1);
}

TEST(Transform, MonotoneCheck) {
  const Instance inst = make_instance({{1, 1, 20}, {1, 1, 25}}, 10);
  EXPECT_FALSE(is_monotone(inst, {{1, 2}}));
  EXPECT_TRUE(is_monotone(inst, {{1}}));
  EXPECT_TRUE(is_monotone(two_levels(), {{1, 2}}));
}

TEST(LawlerMoore, OnlyOneFits) {
  const Instance inst = make_instance({{3, 5, 3}, {3, 4, 3}}, 0);
  const OptResult res = lawler_moore(inst);
  EXPECT_EQ(res.objective, 4);
  EXPECT_FALSE(witness_problem(res, inst));
}

TEST(LawlerMoore, EverythingFits) {
  const Instance inst = make_instance({{3, 5, 9}, {2, 4, 9}, {4, 1, 9}}, 0);
  EXPECT_EQ(lawler_moore_value(inst), 0);
}

TEST(LawlerMoore, KnapsackTriple) {
  const Instance inst = make_instance({{2, 3, 5}, {3, 4, 5}, {4, 5, 5}}, 0);
  const OptResult res = lawler_moore(inst);
  EXPECT_EQ(res.objective, 5);
  EXPECT_EQ(res.schedule.tardy_ids, std::vector<int>{3});
}

TEST(LawlerMoore, Preconditions) {
  EXPECT_THROW(lawler_moore(two_levels()), Refusal);
  const Instance released = make_instance({{1, 1, 5}, {1, 1, 5, 1}}, 0);
  EXPECT_THROW(lawler_moore(released), Refusal);
  const Instance big = make_instance({{1000, 1, 5000}, {1000, 1, 5000}}, 0);
  LawlerMooreOptions tiny;
  tiny.max_time_states = 100;
  EXPECT_THROW(lawler_moore(big, tiny), Refusal);
}

Rational subset_optimum(const Instance& inst) {
  const std::size_t n = inst.size();
  const std::vector<int> edd = edd_sort(inst);
  Rational best = inst.total_weight();
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    Int t = inst.jobs.empty() ? Int(0) : inst.common_release();
    Rational early = 0;
    bool ok = true;
    for (int id : edd) {
      const std::size_t k = inst.position(id);
      if (!(mask >> k & 1)) continue;
      t += inst.jobs[k].p;
      ok &= t <= inst.jobs[k].d;
      early += inst.jobs[k].w;
    }
    if (ok) best = std::min(best, inst.total_weight() - early);
  }
  return best;
}

TEST(LawlerMoore, AgreesWithSubsetEnumeration) {
  for (std::uint64_t seed = 1; seed <= 120; ++seed) {
    Instance inst = testing::sweep_unbounded(seed, 7 + seed % 9);
    inst.setup = 0;
    EXPECT_EQ(lawler_moore_value(inst), subset_optimum(inst)) << "seed " << seed;
    const OptResult res = lawler_moore(inst);
    EXPECT_FALSE(witness_problem(res, inst)) << "seed " << seed;
  }
}

TEST(Reduction, ThreeJobs) {
  const Instance inst = testing::three_jobs();
  const OptResult res = solve_via_reduction(inst);
  EXPECT_EQ(res.objective, 2);
  EXPECT_FALSE(witness_problem(res, inst));
}

TEST(Reduction, ZeroSetupFullGuessIsIdentity) {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    Instance inst = testing::sweep_unbounded(seed);
    inst.setup = 0;
    IntervalGuess full;
    for (std::size_t l = 1; l <= inst.due_levels().size(); ++l) {
      full.levels.push_back(l);
    }
    const Instance same = transform(inst, full);
    for (std::size_t k = 0; k < inst.size(); ++k) {
      EXPECT_EQ(same.jobs[k].d, inst.jobs[k].d);
    }
    EXPECT_EQ(solve_via_reduction(inst).objective, lawler_moore_value(inst));
  }
}

TEST(Reduction, SingleDueDateIsKnapsackAfterSetup) {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    Instance inst = testing::sweep_unbounded(seed);
    for (Job& j : inst.jobs) j.d = 14;
    Instance knapsack = inst;
    knapsack.setup = 0;
    for (Job& j : knapsack.jobs) j.d = 14 - inst.setup;
    const Rational want =
        14 - inst.setup < 0 ? inst.total_weight()
                            : std::min(inst.total_weight(),
                                       lawler_moore_value(knapsack));
    EXPECT_EQ(solve_via_reduction(inst).objective, want) << "seed " << seed;
    EXPECT_EQ(brute_force(inst).objective, want) << "seed " << seed;
  }
}

TEST(Reduction, AgreesWithOracleAndPicksMonotoneGuess) {
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    const Instance inst = testing::sweep_unbounded(seed + 900);
    IntervalGuess chosen;
    const OptResult res = solve_via_reduction(inst, {}, &chosen);
    EXPECT_EQ(res.objective, brute_force(inst).objective) << "seed " << seed;
    EXPECT_FALSE(witness_problem(res, inst)) << "seed " << seed;
    EXPECT_TRUE(is_monotone(inst, chosen)) << "seed " << seed;
  }
}

// Each lifted batch B_i completes by d^(i), and at most one batch per
// guessed level exists. Monotone guesses keep the subproblem's value.
TEST(Reduction, LiftedBatchesMeetTheirLevels) {
  int monotone = 0, broken = 0;
  for (std::uint64_t seed = 1; seed <= 150; ++seed) {
    const Instance inst = testing::sweep_unbounded(seed);
    const std::vector<Int> levels = inst.due_levels();
    for (const IntervalGuess& g : enumerate_guesses(levels.size())) {
      const Instance sub = transform(inst, g);
      const OptResult nb = lawler_moore(sub);
      const Schedule lifted = lift(inst, g, nb.schedule);
      ASSERT_TRUE(validate(lifted, inst).empty()) << "seed " << seed;
      EXPECT_LE(lifted.batches.size(), g.levels.size());
      if (!is_monotone(inst, g)) {
        broken += evaluate(lifted, inst) != nb.objective;
        continue;
      }
      ++monotone;
      EXPECT_EQ(evaluate(lifted, inst), nb.objective) << "seed " << seed;
      std::size_t next = 0;
      for (std::size_t i : g.levels) {
        bool used = false;
        for (const Batch& b : nb.schedule.batches) {
          for (int id : b.job_ids) {
            const Int d = inst.job(id).d;
            const std::size_t level =
                std::lower_bound(levels.begin(), levels.end(), d) -
                levels.begin() + 1;
            used |= g.anchor(level) == i;
          }
        }
        if (!used) continue;
        ASSERT_LT(next, lifted.batches.size());
        EXPECT_LE(completion(lifted.batches[next], inst), levels[i - 1])
            << "seed " << seed;
        ++next;
      }
    }
  }
  EXPECT_GT(monotone, 0);
  EXPECT_GT(broken, 0);
}

TEST(Reduction, NonMonotoneGuessCanLiftLate) {
  const Instance inst = make_instance({{4, 9, 13}, {4, 5, 12}, {4, 16, 11}}, 3);
  const IntervalGuess g{{1, 2}};
  EXPECT_FALSE(is_monotone(inst, g));
  const Instance sub = transform(inst, g);
  const OptResult nb = lawler_moore(sub);
  EXPECT_EQ(nb.objective, 5);
  const Schedule lifted = lift(inst, g, nb.schedule);
  EXPECT_GT(evaluate(lifted, inst), nb.objective);
  const OptResult res = solve_via_reduction(inst);
  EXPECT_EQ(res.objective, brute_force(inst).objective);
  EXPECT_FALSE(witness_problem(res, inst));
}

TEST(Reduction, Preconditions) {
  Instance inst = testing::three_jobs();
  inst.size_bound = 2;
  EXPECT_THROW(solve_via_reduction(inst), Refusal);
  Instance many;
  for (int i = 1; i <= 30; ++i) many.jobs.push_back({i, 1, 1, 100 + i, 0});
  EXPECT_THROW(solve_via_reduction(many), Refusal);
}

TEST(Reduction, WideArithmeticAgrees) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const Instance inst = testing::sweep_unbounded(seed);
    const Rational want = solve_via_reduction(inst).objective;
    ForceWideArithmetic wide;
    EXPECT_EQ(solve_via_reduction(inst).objective, want);
  }
}

}  // namespace
}  // namespace batchsched
