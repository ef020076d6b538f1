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

#include "batchsched/dp_unbounded.h"
#include "batchsched/generators.h"
#include "batchsched/oracle.h"
#include "batchsched/reduce_nonbatch.h"
#include "test_support.h"

namespace batchsched {
namespace {

using testing::make_instance;
using testing::three_jobs;
using testing::witness_problem;

void expect_both(const Instance& inst, const Rational& want,
                 const std::string& where) {
  const OptResult p = solve_xp_p(inst);
  const OptResult w = solve_xp_w(inst);
  EXPECT_EQ(p.objective, want) << where;
  EXPECT_EQ(w.objective, want) << where;
  EXPECT_FALSE(witness_problem(p, inst)) << where;
  EXPECT_FALSE(witness_problem(w, inst)) << where;
}

TEST(CountDp, ThreeJobs) { expect_both(three_jobs(), 2, "three jobs"); }

TEST(CountDp, EmptyAndHopeless) {
  expect_both(Instance{}, 0, "empty");
  expect_both(make_instance({{3, 2, 2}, {1, 5, 0}}, 0), 7, "hopeless");
}

TEST(CountDp, RefusesReleaseDates) {
  const Instance inst = make_instance({{1, 1, 5}, {1, 1, 5, 2}}, 0);
  for (auto solve : {solve_xp_p, solve_xp_w}) {
    try {
      solve(inst, {});
      FAIL() << "expected a refusal";
    } catch (const Refusal& e) {
      EXPECT_NE(std::string(e.what()).find("release"), std::string::npos);
    }
  }
}

TEST(CountDp, RefusesBounds) {
  Instance inst = three_jobs();
  inst.size_bound = 2;
  EXPECT_THROW(solve_xp_p(inst), Refusal);
  inst.size_bound.reset();
  inst.volume_bound = 4;
  EXPECT_THROW(solve_xp_w(inst), Refusal);
}

TEST(CountDp, RefusesHugeTables) {
  RandomParams params;
  params.n = 30;
  params.processing_levels = 6;
  params.weight_levels = 6;
  params.due_levels = 10;
  params.max_time = 200;
  const Instance inst = gen_random(params);
  XpOptions tiny;
  tiny.max_states = 1000;
  EXPECT_THROW(solve_xp_p(inst, tiny), Refusal);
  EXPECT_THROW(solve_xp_w(inst, tiny), Refusal);
}

TEST(CountDp, CommonReleaseIsAnOrigin) {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const Instance inst = testing::sweep_unbounded(seed);
    const Rational want = brute_force(inst).objective;
    for (int c : {1, 17}) {
      Instance moved = inst;
      for (Job& j : moved.jobs) {
        j.r += c;
        j.d += c;
      }
      expect_both(moved, want, "seed " + std::to_string(seed));
    }
  }
}

TEST(CountDp, ZeroSetupSingleDueIsKnapsack) {
  for (std::uint64_t seed = 1; seed <= 80; ++seed) {
    Instance inst = testing::sweep_unbounded(seed);
    inst.setup = 0;
    for (Job& j : inst.jobs) j.d = inst.jobs[0].d + 4;
    expect_both(inst, lawler_moore_value(inst), "seed " + std::to_string(seed));
  }
}

TEST(CountDp, AgreesWithOracle) {
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    const Instance inst = testing::sweep_unbounded(seed + 500);
    expect_both(inst, brute_force(inst).objective, "seed " + std::to_string(seed));
  }
}

TEST(CountDp, EqualProcessingUnitWeights) {
  for (std::uint64_t seed = 1; seed <= 80; ++seed) {
    Instance inst = testing::sweep_unbounded(seed);
    for (Job& j : inst.jobs) {
      j.p = 3;
      j.w = 1;
    }
    expect_both(inst, brute_force(inst).objective, "seed " + std::to_string(seed));
  }
}

TEST(CountDp, AllWeightsDistinct) {
  for (std::uint64_t seed = 1; seed <= 80; ++seed) {
    Instance inst = testing::sweep_unbounded(seed, 6);
    for (std::size_t i = 0; i < inst.size(); ++i) {
      inst.jobs[i].w = Rational(static_cast<long>(2 * i + 1), 3);
    }
    expect_both(inst, brute_force(inst).objective, "seed " + std::to_string(seed));
  }
}

TEST(CountDp, WideArithmeticAgrees) {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const Instance inst = testing::sweep_unbounded(seed);
    const Rational want = brute_force(inst).objective;
    ForceWideArithmetic wide;
    expect_both(inst, want, "seed " + std::to_string(seed));
  }
}

TEST(CountDp, HugeTimes) {
  const Int big = Int(1) << 70;
  Instance inst = three_jobs();
  for (Job& j : inst.jobs) {
    j.d += big;
    j.r += big;
  }
  expect_both(inst, 2, "shifted by 2^70");
  Instance heavy = three_jobs();
  heavy.jobs[0].w = Rational(big, 3);
  expect_both(heavy, brute_force(heavy).objective, "heavy weight");
}

// Without the due guard a job may join a last batch whose due bound exceeds
// its own due date, so the recursion overrates some schedules.
TEST(CountDp, DueGuardOffGoesWrong) {
  XpOptions loose;
  loose.due_guard = false;
  int wrong = 0, right = 0;
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    const Instance inst = testing::sweep_unbounded(seed);
    const Rational want = brute_force(inst).objective;
    try {
      const OptResult res = solve_xp_p(inst, loose);
      (res.objective == want ? right : wrong) += 1;
    } catch (const std::logic_error&) {
      ++wrong;
    }
  }
  EXPECT_GT(wrong, 0);
  EXPECT_GT(right, 0);
}

}  // namespace
}  // namespace batchsched
