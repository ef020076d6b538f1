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

#include "batchsched/branch_and_bound.h"

#include <cstdlib>
#include <optional>
#include <string>

#include "batchsched/core.h"
#include "batchsched/simplex.h"

namespace batchsched {
namespace {

Int floor_of(const Rational& q) {
  Int f = numerator(q) / denominator(q);
  if (q < 0 && f * denominator(q) != numerator(q)) f -= 1;
  return f;
}

void check_size(const IpModel& model, const IpLimits& limits) {
  const std::size_t k = model.integer_count();
  if (k > limits.max_integer_vars) {
    throw Refusal("integer program has " + std::to_string(k) +
                  " integer variables, " + std::to_string(model.vars().size()) +
                  " variables and " + std::to_string(model.rows().size()) +
                  " rows; cap is " + std::to_string(limits.max_integer_vars) +
                  " integer variables (set BATCHSCHED_IP_CAP to raise it)");
  }
}

void bounds_of(const IpModel& model, std::vector<Rational>& lo,
               std::vector<Rational>& up) {
  for (const IpVar& v : model.vars()) {
    lo.push_back(v.lower);
    up.push_back(v.upper);
  }
}

class BranchAndBound {
 public:
  BranchAndBound(const IpModel& model, const IpLimits& limits)
      : model_(model), limits_(limits) {}

  void run(std::vector<Rational>& lo, std::vector<Rational>& up) {
    if (++nodes_ > limits_.max_nodes) {
      throw Refusal("branch and bound exceeded " +
                    std::to_string(limits_.max_nodes) + " nodes");
    }
    const LpResult lp = solve_lp(model_, lo, up);
    if (lp.status != LpResult::Status::kOptimal) return;
    if (best_ && lp.objective >= best_->objective) return;
    std::optional<std::size_t> frac;
    for (std::size_t k = 0; k < lp.x.size(); ++k) {
      if (model_.vars()[k].integer && denominator(lp.x[k]) != 1) {
        frac = k;
        break;
      }
    }
    if (!frac) {
      best_ = lp;
      return;
    }
    const std::size_t k = *frac;
    const Rational f = floor_of(lp.x[k]);
    const Rational saved_lo = lo[k];
    const Rational saved_up = up[k];
    up[k] = f;
    run(lo, up);
    up[k] = saved_up;
    lo[k] = f + 1;
    run(lo, up);
    lo[k] = saved_lo;
  }

  const std::optional<LpResult>& best() const { return best_; }
  std::size_t nodes() const { return nodes_; }

 private:
  const IpModel& model_;
  const IpLimits& limits_;
  std::optional<LpResult> best_;
  std::size_t nodes_ = 0;
};

class Enumeration {
 public:
  Enumeration(const IpModel& model, std::vector<std::size_t> ints)
      : model_(model), ints_(std::move(ints)) {}

  void run(std::size_t depth, std::vector<Rational>& lo,
           std::vector<Rational>& up) {
    if (!rows_possible(lo, up)) return;
    if (depth == ints_.size()) {
      ++nodes_;
      const LpResult lp = solve_lp(model_, lo, up);
      if (lp.status != LpResult::Status::kOptimal) return;
      if (!best_ || lp.objective < best_->objective) best_ = lp;
      return;
    }
    const std::size_t k = ints_[depth];
    const Rational saved_lo = lo[k];
    const Rational saved_up = up[k];
    for (Rational v = saved_lo; v <= saved_up; v += 1) {
      lo[k] = v;
      up[k] = v;
      run(depth + 1, lo, up);
    }
    lo[k] = saved_lo;
    up[k] = saved_up;
  }

  const std::optional<LpResult>& best() const { return best_; }
  std::size_t nodes() const { return nodes_; }

 private:
  bool rows_possible(const std::vector<Rational>& lo,
                     const std::vector<Rational>& up) const {
    for (const IpRow& row : model_.rows()) {
      Rational least = 0, most = 0;
      for (const auto& [var, coef] : row.terms) {
        if (coef > 0) {
          least += coef * lo[var];
          most += coef * up[var];
        } else {
          least += coef * up[var];
          most += coef * lo[var];
        }
      }
      if (row.relation != Relation::kGe && least > row.rhs) return false;
      if (row.relation != Relation::kLe && most < row.rhs) return false;
    }
    return true;
  }

  const IpModel& model_;
  std::vector<std::size_t> ints_;
  std::optional<LpResult> best_;
  std::size_t nodes_ = 0;
};

IpSolution finish(const std::optional<LpResult>& best, const Rational& root,
                  std::size_t nodes) {
  IpSolution out;
  out.root_bound = root;
  out.nodes = nodes;
  if (!best) return out;
  out.status = IpSolution::Status::kOptimal;
  out.objective = best->objective;
  out.values = best->x;
  if (out.root_bound > out.objective) {
    throw std::logic_error("LP relaxation bound exceeds the integer optimum");
  }
  return out;
}

}  // namespace

IpLimits ip_limits_from_env() {
  IpLimits limits;
  if (const char* env = std::getenv("BATCHSCHED_IP_CAP")) {
    limits.max_integer_vars = std::stoul(env);
  }
  return limits;
}

IpSolution solve_ip(const IpModel& model, const IpLimits& limits) {
  check_size(model, limits);
  std::vector<Rational> lo, up;
  bounds_of(model, lo, up);
  const LpResult root = solve_lp(model, lo, up);
  if (root.status != LpResult::Status::kOptimal) return {};
  BranchAndBound bb(model, limits);
  bb.run(lo, up);
  return finish(bb.best(), root.objective, bb.nodes());
}

IpSolution solve_ip_enumerate(const IpModel& model, const IpLimits& limits) {
  check_size(model, limits);
  std::vector<std::size_t> ints;
  double space = 1;
  for (std::size_t k = 0; k < model.vars().size(); ++k) {
    const IpVar& v = model.vars()[k];
    if (!v.integer) continue;
    ints.push_back(k);
    space *= (v.upper - v.lower + 1).convert_to<double>();
  }
  if (space > limits.max_search_space) {
    throw Refusal("integer enumeration space " + std::to_string(space) +
                  " exceeds cap " + std::to_string(limits.max_search_space));
  }
  std::vector<Rational> lo, up;
  bounds_of(model, lo, up);
  const LpResult root = solve_lp(model, lo, up);
  if (root.status != LpResult::Status::kOptimal) return {};
  Enumeration e(model, ints);
  e.run(0, lo, up);
  return finish(e.best(), root.objective, e.nodes());
}

}  // namespace batchsched
