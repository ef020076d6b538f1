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


#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "batchsched/bench.h"
#include "batchsched/bounded_batch.h"
#include "batchsched/core.h"
#include "batchsched/generators.h"
#include "batchsched/io.h"
#include "batchsched/ip_model.h"

namespace {

using namespace batchsched;

enum Exit {
  kOk = 0,
  kParseOrIo = 1,
  kRefused = 2,
  kVerifyFailed = 3,
  kDisagreement = 4,
};

std::vector<Int> parse_ints(const std::string& text) {
  std::vector<Int> out;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    out.push_back(parse_int(item));
  }
  return out;
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
  } else {
    write_text_file(out_path, text);
  }
}

InstanceFile load_instance(const std::string& path) {
  return parse_instance(read_text_file(path));
}

int cmd_solve(const std::string& algo, const std::string& path,
              const std::string& out_path) {
  const InstanceFile file = load_instance(path);
  const OptResult res = run_algorithm(algo, file.instance);
  const std::string text = format_schedule(res.schedule, res.objective);
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
  } else {
    write_text_file(out_path, text);
    std::cout << "objective " << format_rational(res.objective) << '\n';
  }
  return kOk;
}

int cmd_verify(const std::string& inst_path, const std::string& sched_path) {
  const Instance inst = load_instance(inst_path).instance;
  const ScheduleFile file = parse_schedule(read_text_file(sched_path));
  int status = kOk;
  for (const Violation& v : validate(file.schedule, inst)) {
    std::cout << to_string(v.kind) << ": " << v.message << '\n';
    status = kVerifyFailed;
  }
  if (status == kOk) {
    const Rational actual = evaluate(file.schedule, inst);
    if (!file.objective) {
      std::cout << "missing objective line; schedule evaluates to "
                << format_rational(actual) << '\n';
      status = kVerifyFailed;
    } else if (*file.objective != actual) {
      std::cout << "objective mismatch: declared "
                << format_rational(*file.objective) << ", evaluated "
                << format_rational(actual) << '\n';
      status = kVerifyFailed;
    }
  }
  if (status == kOk) std::cout << "ok\n";
  return status;
}

int cmd_bench(const std::string& config_path, const std::string& out_path,
              bool wall_time) {
  const BenchConfig config = parse_bench_config(read_text_file(config_path));
  const BenchReport report = run_bench(config);
  emit(out_path, format_bench(report, wall_time));
  if (report.disagreements > 0) {
    std::cerr << report.disagreements << " instance(s) with disagreeing solvers\n";
    return kDisagreement;
  }
  return kOk;
}

int cmd_export_lp(const std::string& path, const std::string& model,
                  bool literal_self_pairs, const std::string& out_path) {
  const Instance inst = load_instance(path).instance;
  if (inst.volume_bound) throw Refusal("integer models do not support volume bounds");
  const Int b = inst.size_bound
                    ? *inst.size_bound
                    : Int(static_cast<unsigned long>(std::max<std::size_t>(inst.size(), 1)));
  if (model == "size") {
    emit(out_path, export_lp(build_model_size(inst, b).ip));
  } else {
    ReleaseModelOptions opts;
    opts.literal_self_pairs = literal_self_pairs;
    emit(out_path, export_lp(build_model_release(inst, b, opts).ip));
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact solvers for single-machine batch scheduling with "
               "weighted tardy jobs"};
  app.require_subcommand(1);

  std::string algo = "oracle", inst_path, sched_path, out_path, config_path;
  auto* solve = app.add_subcommand("solve", "Solve an instance");
  solve->add_option("--algo", algo, "Solver")
      ->check(CLI::IsMember(algorithm_names()));
  solve->add_option("instance", inst_path, "Instance file")->required();
  solve->add_option("--out,-o", out_path, "Schedule file (default stdout)");

  auto* verify = app.add_subcommand("verify", "Check a schedule against an instance");
  verify->add_option("instance", inst_path, "Instance file")->required();
  verify->add_option("schedule", sched_path, "Schedule file")->required();

  bool no_wall = false;
  auto* bench = app.add_subcommand("bench", "Run a seeded cross-solver sweep");
  bench->add_option("config", config_path, "Sweep configuration")->required();
  bench->add_option("--out,-o", out_path, "Table file (default stdout)");
  bench->add_flag("--no-wall-time", no_wall, "Print '-' instead of timings");

  std::string model = "size";
  bool literal_self_pairs = false;
  auto* lp = app.add_subcommand("export-lp", "Write the integer model as an LP file");
  lp->add_option("instance", inst_path, "Instance file")->required();
  lp->add_option("--model", model, "Model")->check(CLI::IsMember({"size", "release"}));
  lp->add_flag("--literal-self-pairs", literal_self_pairs,
               "Keep 2z <= 1 for a class paired with itself");
  lp->add_option("--out,-o", out_path, "LP file (default stdout)");

  auto* gen = app.add_subcommand("generate", "Write a generated instance");
  gen->require_subcommand(1);
  gen->add_option("--out,-o", out_path, "Instance file (default stdout)");

  std::string x_list, t_value;
  std::size_t k = 1;
  bool normalize = false, integral = false, allow_large = false;
  auto* ksum = gen->add_subcommand("ksum", "From a k-Sum input");
  ksum->add_option("--x", x_list, "Comma-separated values")->required();
  ksum->add_option("--t", t_value, "Target")->required();
  ksum->add_option("--k", k, "Number of summands")->required();
  ksum->add_flag("--normalize", normalize, "Shift the input when needed");
  ksum->add_flag("--integral", integral, "Scale weights to integers");
  ksum->add_flag("--allow-large", allow_large, "Allow more than 10^4 leftover jobs");

  std::string values;
  bool volume_plus_one = false;
  auto* partition = gen->add_subcommand("partition", "From a Partition input");
  partition->add_option("--values", values, "Comma-separated values")->required();
  partition->add_flag("--volume-plus-one", volume_plus_one,
                      "Volume bound K + 1 instead of K");

  std::string sizes, makespan;
  std::size_t machines = 1;
  bool due_m_times_v = false;
  auto* pcmax = gen->add_subcommand("pcmax", "From a P||Cmax input");
  pcmax->add_option("--sizes", sizes, "Comma-separated job sizes")->required();
  pcmax->add_option("--m", machines, "Machines")->required();
  pcmax->add_option("--T", makespan, "Target makespan")->required();
  pcmax->add_flag("--due-m-times-v", due_m_times_v,
                  "Due date m V instead of m (setup + T)");

  RandomParams rp;
  std::optional<std::size_t> size_bound;
  auto* random = gen->add_subcommand("random", "Seeded random instance");
  random->add_option("--n", rp.n, "Jobs");
  random->add_option("--p", rp.processing_levels, "Distinct processing times");
  random->add_option("--w", rp.weight_levels, "Distinct weights");
  random->add_option("--d", rp.due_levels, "Distinct due dates");
  random->add_option("--r", rp.release_levels, "Distinct release dates");
  random->add_option("--max-time", rp.max_time, "Value pool 1..max-time");
  random->add_option("--seed", rp.seed, "Seed");
  random->add_option("--size-bound", size_bound, "Batch size bound");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kParseOrIo;
  }

  try {
    if (solve->parsed()) return cmd_solve(algo, inst_path, out_path);
    if (verify->parsed()) return cmd_verify(inst_path, sched_path);
    if (bench->parsed()) return cmd_bench(config_path, out_path, !no_wall);
    if (lp->parsed()) {
      return cmd_export_lp(inst_path, model, literal_self_pairs, out_path);
    }
    ReductionInstance made;
    if (ksum->parsed()) {
      KSumParams params{parse_ints(x_list), parse_int(t_value), k};
      std::optional<std::string> shift_note;
      if (normalize) {
        if (auto shifted = normalize_ksum(params)) {
          shift_note = "normalized from x=" + x_list + " t=" + t_value;
          params = *shifted;
        }
      }
      made = gen_ksum(params, {integral, allow_large});
      if (shift_note) made.notes.push_back(*shift_note);
    } else if (partition->parsed()) {
      made = gen_partition({parse_ints(values)},
                           volume_plus_one ? PartitionVolume::kHalfPlusOne
                                           : PartitionVolume::kHalf);
    } else if (pcmax->parsed()) {
      made = gen_pcmax({parse_ints(sizes), machines, parse_int(makespan)},
                       due_m_times_v ? PCMaxDue::kMachinesTimesVolume
                                     : PCMaxDue::kMachinesTimesSetupPlusMakespan);
    } else {
      Instance inst = gen_random(rp);
      if (size_bound) inst.size_bound = Int(static_cast<unsigned long>(*size_bound));
      emit(out_path, format_instance(inst));
      return kOk;
    }
    emit(out_path, format_instance(made.instance, made.threshold, made.notes));
    return kOk;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kParseOrIo;
  } catch (const Refusal& e) {
    std::cerr << "refused: " << e.what() << '\n';
    return kRefused;
  } catch (const StructuralError& e) {
    std::cerr << "invalid: " << e.what() << '\n';
    return kVerifyFailed;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kParseOrIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kParseOrIo;
  }
}
