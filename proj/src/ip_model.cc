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

#include "batchsched/ip_model.h"

#include <map>
#include <sstream>
#include <stdexcept>

namespace batchsched {
namespace {

Int denominator_lcm(const std::vector<Rational>& values) {
  Int l = 1;
  for (const Rational& v : values) l = lcm(l, denominator(v));
  return l;
}

void write_terms(std::ostream& out, const IpModel& model,
                 const LinearTerms& terms, const Int& scale) {
  bool first = true;
  std::size_t on_line = 0;
  for (const auto& [var, coef] : terms) {
    const Rational c = coef * scale;
    const Int v = numerator(c);
    if (first) {
      out << (v < 0 ? "- " : "") << abs(v);
    } else {
      out << (v < 0 ? " - " : " + ") << abs(v);
    }
    out << " " << model.vars()[var].name;
    first = false;
    if (++on_line == 8) {
      out << "\n   ";
      on_line = 0;
    }
  }
  if (first) out << "0 " << (model.vars().empty() ? "x" : model.vars()[0].name);
}

}  // namespace

std::size_t IpModel::add_var(std::string name, bool integer, Rational lower,
                             Rational upper) {
  if (upper < lower) {
    throw std::invalid_argument("variable " + name + " has empty range");
  }
  vars_.push_back({std::move(name), integer, std::move(lower),
                   std::move(upper)});
  objective_.push_back(0);
  return vars_.size() - 1;
}

void IpModel::add_row(std::string name, LinearTerms terms, Relation relation,
                      Rational rhs) {
  std::map<std::size_t, Rational> merged;
  for (auto& [var, coef] : terms) {
    if (var >= vars_.size()) {
      throw std::invalid_argument("row " + name + " uses an unknown variable");
    }
    merged[var] += coef;
  }
  IpRow row{std::move(name), {}, relation, std::move(rhs)};
  for (auto& [var, coef] : merged) {
    if (coef != 0) row.terms.emplace_back(var, coef);
  }
  rows_.push_back(std::move(row));
}

void IpModel::add_objective(std::size_t var, const Rational& coef) {
  objective_.at(var) += coef;
}

std::size_t IpModel::integer_count() const {
  std::size_t n = 0;
  for (const IpVar& v : vars_) n += v.integer;
  return n;
}

std::optional<std::size_t> IpModel::find(const std::string& name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (vars_[i].name == name) return i;
  }
  return std::nullopt;
}

Rational IpModel::objective_value(const std::vector<Rational>& x) const {
  Rational total = constant_;
  for (std::size_t i = 0; i < vars_.size(); ++i) total += objective_[i] * x[i];
  return total;
}

std::optional<std::string> IpModel::violation(
    const std::vector<Rational>& x) const {
  if (x.size() != vars_.size()) return "assignment has the wrong length";
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    const IpVar& v = vars_[i];
    if (x[i] < v.lower || x[i] > v.upper) return v.name + " out of bounds";
    if (v.integer && denominator(x[i]) != 1) return v.name + " not integral";
  }
  for (const IpRow& row : rows_) {
    Rational lhs = 0;
    for (const auto& [var, coef] : row.terms) lhs += coef * x[var];
    const bool ok = row.relation == Relation::kLe   ? lhs <= row.rhs
                    : row.relation == Relation::kGe ? lhs >= row.rhs
                                                    : lhs == row.rhs;
    if (!ok) return "row " + row.name + " violated";
  }
  return std::nullopt;
}

std::string export_lp(const IpModel& model) {
  std::ostringstream out;
  const Int obj_scale = denominator_lcm(model.objective());
  out << "\\ " << model.vars().size() << " variables, "
      << model.integer_count() << " integer, " << model.rows().size()
      << " rows\n";
  out << "\\ objective scale " << obj_scale << "\n";
  out << "\\ objective constant " << format_rational(model.objective_constant())
      << "\n";
  out << "\\ model objective = obj / scale + constant\n";
  out << "Minimize\n obj: ";
  LinearTerms obj;
  for (std::size_t i = 0; i < model.vars().size(); ++i) {
    if (model.objective()[i] != 0) obj.emplace_back(i, model.objective()[i]);
  }
  write_terms(out, model, obj, obj_scale);
  out << "\nSubject To\n";
  for (const IpRow& row : model.rows()) {
    std::vector<Rational> values{row.rhs};
    for (const auto& term : row.terms) values.push_back(term.second);
    const Int scale = denominator_lcm(values);
    out << " " << row.name << ": ";
    write_terms(out, model, row.terms, scale);
    const char* rel = row.relation == Relation::kLe   ? " <= "
                      : row.relation == Relation::kGe ? " >= "
                                                      : " = ";
    out << rel << numerator(Rational(row.rhs * scale)) << "\n";
  }
  out << "Bounds\n";
  for (const IpVar& v : model.vars()) {
    if (denominator(v.lower) != 1 || denominator(v.upper) != 1) {
      throw std::invalid_argument("LP export needs integral bounds, " +
                                  v.name + " has none");
    }
    out << " " << numerator(v.lower) << " <= " << v.name << " <= "
        << numerator(v.upper) << "\n";
  }
  out << "General\n";
  std::size_t on_line = 0;
  for (const IpVar& v : model.vars()) {
    if (!v.integer) continue;
    out << " " << v.name;
    if (++on_line == 10) {
      out << "\n";
      on_line = 0;
    }
  }
  if (on_line) out << "\n";
  out << "End\n";
  return out.str();
}

}  // namespace batchsched
