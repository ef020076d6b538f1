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


#include "batchsched/bench.h"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "batchsched/bounded_batch.h"
#include "batchsched/branch_and_bound.h"
#include "batchsched/dp_unbounded.h"
#include "batchsched/generators.h"
#include "batchsched/oracle.h"
#include "batchsched/reduce_nonbatch.h"
#include "batchsched/release_xp.h"

namespace batchsched {
namespace {

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::uint64_t to_u64(const std::string& s) {
  std::size_t used = 0;
  const unsigned long long v = std::stoull(s, &used);
  if (used != s.size() || s.empty() || s[0] == '-') {
    throw std::invalid_argument("not a nonnegative integer: " + s);
  }
  return v;
}

template <typename T>
std::vector<T> parse_list(const std::string& text, bool allow_n = false) {
  std::vector<T> out;
  for (const std::string& item : split(text, ',')) {
    if (allow_n && item == "n") {
      out.push_back(0);
      continue;
    }
    const auto dash = item.find('-');
    if (dash == std::string::npos) {
      out.push_back(static_cast<T>(to_u64(item)));
      continue;
    }
    const std::uint64_t lo = to_u64(item.substr(0, dash));
    const std::uint64_t hi = to_u64(item.substr(dash + 1));
    if (hi < lo) throw std::invalid_argument("empty range " + item);
    for (std::uint64_t v = lo; v <= hi; ++v) out.push_back(static_cast<T>(v));
  }
  return out;
}

std::size_t algo_rank(const std::string& algo) {
  const auto& names = algorithm_names();
  return std::find(names.begin(), names.end(), algo) - names.begin();
}

}  // namespace

const std::vector<std::string>& algorithm_names() {
  static const std::vector<std::string> names{
      "oracle", "xp-p", "xp-w", "reduce", "ip-size", "ip-release",
      "release-xp"};
  return names;
}

OptResult run_algorithm(std::string_view algo, const Instance& inst) {
  if (algo == "oracle") return brute_force(inst, oracle_options_from_env());
  if (algo == "xp-p") return solve_xp_p(inst);
  if (algo == "xp-w") return solve_xp_w(inst);
  if (algo == "reduce") return solve_via_reduction(inst);
  if (algo == "ip-size") return solve_ip_size(inst, ip_limits_from_env());
  if (algo == "ip-release") return solve_ip_release(inst, ip_limits_from_env());
  if (algo == "release-xp") return solve_release_xp(inst);
  throw std::invalid_argument("unknown algorithm '" + std::string(algo) + "'");
}

BenchConfig parse_bench_config(std::string_view text) {
  BenchConfig config;
  int line_no = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    std::istringstream words(line);
    std::string key;
    if (!(words >> key)) continue;
    std::vector<std::string> values;
    for (std::string v; words >> v;) values.push_back(v);
    try {
      if (values.empty()) throw std::invalid_argument("missing value");
      auto single = [&]() -> const std::string& {
        if (values.size() != 1) throw std::invalid_argument("expected one value");
        return values[0];
      };
      if (key == "seeds") {
        config.seeds = parse_list<std::uint64_t>(single());
      } else if (key == "n") {
        config.n = parse_list<std::size_t>(single());
      } else if (key == "algos") {
        config.algos = split(single(), ',');
        for (const std::string& a : config.algos) {
          if (algo_rank(a) == algorithm_names().size()) {
            throw std::invalid_argument("unknown algorithm '" + a + "'");
          }
        }
      } else if (key == "max_time") {
        config.max_time = static_cast<std::int64_t>(to_u64(single()));
        if (config.max_time < 1) throw std::invalid_argument("max_time < 1");
      } else if (key == "size_bound") {
        config.size_bounds = parse_list<std::size_t>(single(), true);
      } else if (key == "levels") {
        for (const std::string& v : values) {
          const auto eq = v.find('=');
          if (eq != 1) throw std::invalid_argument("expected x=list, got " + v);
          auto list = parse_list<std::size_t>(v.substr(2));
          switch (v[0]) {
            case 'p': config.p = std::move(list); break;
            case 'w': config.w = std::move(list); break;
            case 'd': config.d = std::move(list); break;
            case 'r': config.r = std::move(list); break;
            default: throw std::invalid_argument("unknown level " + v);
          }
        }
      } else {
        throw std::invalid_argument("unknown key '" + key + "'");
      }
    } catch (const std::exception& e) {
      throw std::invalid_argument("line " + std::to_string(line_no) + ": " +
                                  e.what());
    }
  }
  if (config.seeds.empty()) throw std::invalid_argument("no seeds given");
  if (config.n.empty()) throw std::invalid_argument("no n given");
  if (config.algos.empty()) throw std::invalid_argument("no algos given");
  return config;
}

BenchReport run_bench(const BenchConfig& config) {
  std::vector<std::optional<std::size_t>> bounds;
  if (config.size_bounds.empty()) bounds.push_back(std::nullopt);
  for (std::size_t b : config.size_bounds) bounds.push_back(b);
  std::vector<std::string> algos = config.algos;
  std::sort(algos.begin(), algos.end(), [](const auto& a, const auto& b) {
    return algo_rank(a) < algo_rank(b);
  });
  algos.erase(std::unique(algos.begin(), algos.end()), algos.end());

  struct Cell {
    RandomParams params;
    std::optional<std::size_t> bound;
  };
  std::vector<Cell> cells;
  for (std::uint64_t seed : config.seeds) {
    for (std::size_t n : config.n) {
      for (std::size_t p : config.p) {
        for (std::size_t w : config.w) {
          for (std::size_t d : config.d) {
            for (std::size_t r : config.r) {
              for (const auto& bound : bounds) {
                RandomParams params;
                params.n = n;
                params.processing_levels = std::min(p, n);
                params.weight_levels = std::min(w, n);
                params.due_levels = std::min(d, n);
                params.release_levels = std::min(r, n);
                params.max_time = config.max_time;
                params.seed = seed;
                cells.push_back({params, bound});
              }
            }
          }
        }
      }
    }
  }

  BenchReport report;
  for (const auto& [params, bound] : cells) {
    const std::size_t n = params.n;
    const std::uint64_t seed = params.seed;
    Instance inst = gen_random(params);
    std::optional<std::size_t> b;
    if (bound) {
      b = *bound == 0 ? n : *bound;
      inst.size_bound = Int(static_cast<unsigned long>(std::max<std::size_t>(*b, 1)));
    }
    std::vector<BenchRow> rows;
    std::optional<Rational> first;
    bool agrees = true;
    for (const std::string& algo : algos) {
      BenchRow row{seed, n, params.processing_levels, params.weight_levels,
                   params.due_levels, params.release_levels, b, algo,
                   "", 0, true};
      const auto t0 = std::chrono::steady_clock::now();
      try {
        const OptResult res = run_algorithm(algo, inst);
        row.wall_seconds = std::chrono::duration<double>(
                               std::chrono::steady_clock::now() - t0)
                               .count();
        if (!validate(res.schedule, inst).empty() ||
            evaluate(res.schedule, inst) != res.objective) {
          row.objective = "invalid";
          agrees = false;
        } else {
          row.objective = format_rational(res.objective);
          if (first && *first != res.objective) agrees = false;
          if (!first) first = res.objective;
        }
      } catch (const Refusal&) {
        row.wall_seconds = std::chrono::duration<double>(
                               std::chrono::steady_clock::now() - t0)
                               .count();
        row.objective = "refused";
      }
      rows.push_back(std::move(row));
    }
    if (!agrees) ++report.disagreements;
    for (BenchRow& row : rows) {
      row.agrees = agrees;
      report.rows.push_back(std::move(row));
    }
  }
  std::stable_sort(report.rows.begin(), report.rows.end(),
                   [](const BenchRow& a, const BenchRow& b) {
                     return std::tie(a.seed, a.n, a.p, a.w, a.d, a.r,
                                     a.size_bound) <
                            std::tie(b.seed, b.n, b.p, b.w, b.d, b.r,
                                     b.size_bound);
                   });
  return report;
}

std::string format_bench(const BenchReport& report, bool wall_time) {
  std::string out =
      "seed\tn\t#p\t#w\t#d\t#r\tb\talgo\tobjective\twall_s\tagreement\n";
  for (const BenchRow& row : report.rows) {
    char wall[32];
    std::snprintf(wall, sizeof wall, "%.6f", row.wall_seconds);
    out += std::to_string(row.seed) + '\t' + std::to_string(row.n) + '\t' +
           std::to_string(row.p) + '\t' + std::to_string(row.w) + '\t' +
           std::to_string(row.d) + '\t' + std::to_string(row.r) + '\t' +
           (row.size_bound ? std::to_string(*row.size_bound) : "-") + '\t' +
           row.algo + '\t' + row.objective + '\t' + (wall_time ? wall : "-") +
           '\t' + (row.agrees ? "ok" : "MISMATCH") + '\n';
  }
  return out;
}

}  // namespace batchsched
