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

// Mixed-integer linear programs with exact rational data and finite bounds.

#ifndef BATCHSCHED_IP_MODEL_H_
#define BATCHSCHED_IP_MODEL_H_

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "batchsched/numeric.h"

namespace batchsched {

struct IpVar {
  std::string name;
  bool integer = false;
  Rational lower = 0;
  Rational upper = 0;
};

enum class Relation { kLe, kGe, kEq };

using LinearTerms = std::vector<std::pair<std::size_t, Rational>>;

struct IpRow {
  std::string name;
  LinearTerms terms;
  Relation relation = Relation::kLe;
  Rational rhs = 0;
};

class IpModel {
 public:
  std::size_t add_var(std::string name, bool integer, Rational lower,
                      Rational upper);
  // Merges repeated variables and drops zero coefficients.
  void add_row(std::string name, LinearTerms terms, Relation relation,
               Rational rhs);
  void add_objective(std::size_t var, const Rational& coef);
  void add_objective_constant(const Rational& c) { constant_ += c; }

  const std::vector<IpVar>& vars() const { return vars_; }
  const std::vector<IpRow>& rows() const { return rows_; }
  const std::vector<Rational>& objective() const { return objective_; }
  const Rational& objective_constant() const { return constant_; }

  std::size_t integer_count() const;
  std::optional<std::size_t> find(const std::string& name) const;

  Rational objective_value(const std::vector<Rational>& x) const;
  // Names the first violated bound, integrality or row.
  std::optional<std::string> violation(const std::vector<Rational>& x) const;

 private:
  std::vector<IpVar> vars_;
  std::vector<IpRow> rows_;
  std::vector<Rational> objective_;
  Rational constant_ = 0;
};

// CPLEX LP text. Every row and the objective are multiplied by the lcm of
// their denominators; header comments record the objective scale and the
// constant term.
std::string export_lp(const IpModel& model);

}  // namespace batchsched

#endif  // BATCHSCHED_IP_MODEL_H_
