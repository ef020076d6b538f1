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
#include <sys/wait.h>

#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "batchsched/io.h"

namespace batchsched {
namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code;
  std::string output;
};

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("batchsched_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string file(const std::string& name, const std::string& text) {
    const std::string path = (dir_ / name).string();
    std::ofstream(path) << text;
    return path;
  }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  static CliRun run(const std::string& args) {
    const std::string cmd = std::string(BATCHSCHED_CLI) + " " + args + " 2>&1";
    FILE* pipe = ::popen(cmd.c_str(), "r");
    CliRun out{-1, ""};
    if (!pipe) return out;
    char buf[4096];
    while (std::size_t got = std::fread(buf, 1, sizeof buf, pipe)) {
      out.output.append(buf, got);
    }
    const int status = ::pclose(pipe);
    out.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return out;
  }

  fs::path dir_;
};

const char* kThreeJobs =
    "setup 1\n"
    "job 1 p 1 w 2 d 3\n"
    "job 2 p 2 w 2 d 5\n"
    "job 3 p 3 w 2 d 6\n";

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

TEST_F(Cli, SolveWritesScheduleAndObjective) {
  const std::string inst = file("three.txt", kThreeJobs);
  const CliRun r = run("solve --algo xp-p " + inst + " --out " + path("s.txt"));
  EXPECT_EQ(r.code, 0) << r.output;
  EXPECT_EQ(r.output, "objective 2/1\n");
  const CliRun v = run("verify " + inst + " " + path("s.txt"));
  EXPECT_EQ(v.code, 0) << v.output;
  EXPECT_EQ(v.output, "ok\n");
}

TEST_F(Cli, EverySolverOnStdout) {
  const std::string inst = file("three.txt", kThreeJobs);
  for (const char* algo : {"oracle", "xp-p", "xp-w", "reduce", "ip-size",
                           "ip-release", "release-xp"}) {
    const CliRun r = run(std::string("solve --algo ") + algo + " " + inst);
    EXPECT_EQ(r.code, 0) << algo << ": " << r.output;
    EXPECT_TRUE(contains(r.output, "objective 2/1")) << algo;
    EXPECT_EQ(parse_schedule(r.output).objective, Rational(2));
  }
}

TEST_F(Cli, RefusesReleaseDatesForXpP) {
  const std::string inst =
      file("rel.txt", "setup 1\njob 1 p 1 w 1 d 5\njob 2 p 1 w 1 d 6 r 2\n");
  const CliRun r = run("solve --algo xp-p " + inst);
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(contains(r.output, "release")) << r.output;
}

TEST_F(Cli, OracleCap) {
  std::string text = "setup 1\n";
  for (int k = 1; k <= 12; ++k) {
    text += "job " + std::to_string(k) + " p 1 w 1 d " + std::to_string(k + 3) + "\n";
  }
  const CliRun r = run("solve --algo oracle " + file("big.txt", text));
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(contains(r.output, "cap")) << r.output;
}

TEST_F(Cli, VerifyReportsOverlap) {
  const std::string inst = file("three.txt", kThreeJobs);
  const std::string sched = file(
      "bad.txt",
      "batch start 0 jobs 1\nbatch start 1 jobs 2\ntardy 3\nobjective 2/1\n");
  const CliRun r = run("verify " + inst + " " + sched);
  EXPECT_EQ(r.code, 3);
  EXPECT_TRUE(contains(r.output, "overlap")) << r.output;
}

TEST_F(Cli, VerifyReportsObjectiveMismatch) {
  const std::string inst = file("three.txt", kThreeJobs);
  const std::string sched = file(
      "bad.txt",
      "batch start 0 jobs 1\nbatch start 2 jobs 2\ntardy 3\nobjective 1/1\n");
  const CliRun r = run("verify " + inst + " " + sched);
  EXPECT_EQ(r.code, 3);
  EXPECT_TRUE(contains(r.output, "declared 1/1, evaluated 2/1")) << r.output;
}

TEST_F(Cli, ParseErrorNamesTheLine) {
  const std::string inst = file("broken.txt", "setup 1\njob 1 p x w 1 d 3\n");
  const CliRun r = run("solve " + inst);
  EXPECT_EQ(r.code, 1);
  EXPECT_TRUE(contains(r.output, "line 2")) << r.output;
}

TEST_F(Cli, MissingFileAndBadArguments) {
  EXPECT_EQ(run("solve " + path("absent.txt")).code, 1);
  EXPECT_EQ(run("solve --algo nope " + file("three.txt", kThreeJobs)).code, 1);
  EXPECT_EQ(run("").code, 1);
  EXPECT_EQ(run("--help").code, 0);
}

TEST_F(Cli, BenchTable) {
  const std::string config =
      file("bench.txt", "seeds 1-3\nn 4\nalgos oracle,xp-p,reduce\n");
  const CliRun r = run("bench " + config + " --no-wall-time");
  EXPECT_EQ(r.code, 0) << r.output;
  std::istringstream in(r.output);
  std::size_t lines = 0;
  for (std::string line; std::getline(in, line);) {
    ++lines;
    if (lines > 1) EXPECT_TRUE(contains(line, "\t-\tok")) << line;
  }
  EXPECT_EQ(lines, 10u);
  EXPECT_EQ(run("bench " + file("bad.txt", "seeds 1\nn 2\nwhat 3\n")).code, 1);
}

TEST_F(Cli, GenerateKSumRoundTrips) {
  const CliRun r = run("generate --out " + path("k.txt") +
                    " ksum --x 2,4 --t 4 --k 2 --normalize");
  EXPECT_EQ(r.code, 0) << r.output;
  const InstanceFile f = parse_instance(read_text_file(path("k.txt")));
  ASSERT_TRUE(f.threshold);
  EXPECT_TRUE(std::any_of(f.comments.begin(), f.comments.end(),
                          [](const std::string& c) { return contains(c, "normalized"); }));
  const CliRun refused = run("generate ksum --x 2,4 --t 4 --k 2");
  EXPECT_EQ(refused.code, 2);
  EXPECT_TRUE(contains(refused.output, "add 8")) << refused.output;
}

TEST_F(Cli, GeneratePartitionAndPCMax) {
  const CliRun p = run("generate partition --values 1,2,3,4");
  EXPECT_EQ(p.code, 0) << p.output;
  EXPECT_EQ(*parse_instance(p.output).instance.volume_bound, 5);
  EXPECT_EQ(run("generate partition --values 1,1,3").code, 2);
  const CliRun c = run("generate pcmax --sizes 2,2,4 --m 2 --T 4");
  EXPECT_EQ(c.code, 0) << c.output;
  const Instance inst = parse_instance(c.output).instance;
  EXPECT_EQ(inst.setup, 8);
  EXPECT_EQ(inst.jobs[0].d, 24);
  const CliRun lit = run("generate pcmax --sizes 2 --m 1 --T 4 --due-m-times-v");
  EXPECT_EQ(parse_instance(lit.output).instance.jobs[0].d, 4);
}

TEST_F(Cli, GenerateRandomIsSeeded) {
  const std::string args =
      "generate random --n 6 --p 2 --w 2 --d 3 --r 2 --seed 9 --size-bound 2";
  const CliRun a = run(args);
  const CliRun b = run(args);
  EXPECT_EQ(a.code, 0) << a.output;
  EXPECT_EQ(a.output, b.output);
  const Instance inst = parse_instance(a.output).instance;
  EXPECT_EQ(inst.size(), 6u);
  EXPECT_EQ(*inst.size_bound, 2);
  EXPECT_EQ(inst.release_levels().size(), 2u);
  EXPECT_EQ(run("generate random --n 3 --p 4").code, 2);
}

TEST_F(Cli, ExportLp) {
  const std::string inst = file("three.txt", kThreeJobs);
  const CliRun size = run("export-lp " + inst + " --model size");
  EXPECT_EQ(size.code, 0) << size.output;
  for (const char* part : {"Minimize", "Subject To", "Bounds", "General", "End"}) {
    EXPECT_TRUE(contains(size.output, part)) << part;
  }
  EXPECT_TRUE(contains(size.output, "z_1"));
  const CliRun release = run("export-lp " + inst + " --model release --out " +
                          path("m.lp"));
  EXPECT_EQ(release.code, 0) << release.output;
  EXPECT_TRUE(contains(read_text_file(path("m.lp")), "Subject To"));
  const CliRun vol = run("export-lp " + file("v.txt", std::string("volume_bound 4\n") +
                                                       kThreeJobs));
  EXPECT_EQ(vol.code, 2);
}

}  // namespace
}  // namespace batchsched
