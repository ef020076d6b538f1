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

#include "batchsched/simplex.h"

#include <optional>
#include <stdexcept>

namespace batchsched {
namespace {

// Dense tableau B^-1 A over structural, slack and artificial columns.
class Tableau {
 public:
  Tableau(const IpModel& model, const std::vector<Rational>& lower,
          const std::vector<Rational>& upper)
      : ns_(model.vars().size()), m_(model.rows().size()) {
    for (std::size_t j = 0; j < ns_; ++j) add_column(lower[j], upper[j]);
    val_ = lower;
    basis_.assign(m_, 0);
    tab_.assign(m_, {});

    std::vector<Rational> residual(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      const IpRow& row = model.rows()[i];
      residual[i] = row.rhs;
      for (const auto& [var, coef] : row.terms) residual[i] -= coef * lower[var];
    }

    // Column layout is fixed before filling rows so every row has full width.
    std::vector<std::optional<std::size_t>> slack(m_);
    std::vector<int> slack_sign(m_, 0);
    std::vector<std::optional<std::size_t>> artificial(m_);
    std::vector<int> art_sign(m_, 0);
    for (std::size_t i = 0; i < m_; ++i) {
      const IpRow& row = model.rows()[i];
      if (row.relation != Relation::kEq) {
        slack[i] = add_column(0, std::nullopt);
        slack_sign[i] = row.relation == Relation::kLe ? 1 : -1;
        val_.push_back(0);
      }
      const bool slack_basic =
          row.relation == Relation::kLe ? residual[i] >= 0
          : row.relation == Relation::kGe ? residual[i] <= 0
                                          : false;
      if (!slack_basic) {
        artificial[i] = add_column(0, std::nullopt);
        art_sign[i] = residual[i] >= 0 ? 1 : -1;
        val_.push_back(0);
        artificials_.push_back(*artificial[i]);
      }
    }
    n_ = lower_.size();
    basic_row_.assign(n_, -1);

    for (std::size_t i = 0; i < m_; ++i) {
      const IpRow& row = model.rows()[i];
      std::vector<Rational>& t = tab_[i];
      t.assign(n_, 0);
      for (const auto& [var, coef] : row.terms) t[var] = coef;
      if (slack[i]) t[*slack[i]] = slack_sign[i];
      if (artificial[i]) t[*artificial[i]] = art_sign[i];
      const std::size_t b = artificial[i] ? *artificial[i] : *slack[i];
      const Rational pivot = t[b];
      if (pivot != 1) {
        for (Rational& v : t) v /= pivot;
      }
      basis_[i] = b;
      basic_row_[b] = static_cast<long>(i);
      val_[b] = residual[i] / pivot;
    }
  }

  bool needs_phase_one() const { return !artificials_.empty(); }

  // Minimizes cost * x. Returns false on an unbounded ray.
  bool optimize(const std::vector<Rational>& cost) {
    std::vector<Rational> d = cost;
    d.resize(n_, 0);
    for (std::size_t i = 0; i < m_; ++i) {
      const Rational& cb = d_basic_cost(cost, basis_[i]);
      if (cb == 0) continue;
      for (std::size_t j = 0; j < n_; ++j) {
        if (tab_[i][j] != 0) d[j] -= cb * tab_[i][j];
      }
    }
    std::size_t degenerate_run = 0;
    for (;;) {
      const bool bland = degenerate_run >= 8;
      std::optional<std::size_t> enter;
      Rational best_score = 0;
      for (std::size_t j = 0; j < n_; ++j) {
        if (basic_row_[j] >= 0 || d[j] == 0) continue;
        const bool up = d[j] < 0 && (!upper_[j] || val_[j] < *upper_[j]);
        const bool down = d[j] > 0 && val_[j] > lower_[j];
        if (!up && !down) continue;
        if (bland) {
          enter = j;
          break;
        }
        const Rational score = abs(d[j]);
        if (!enter || score > best_score) {
          enter = j;
          best_score = score;
        }
      }
      if (!enter) return true;
      const std::size_t j = *enter;
      const int dir = d[j] < 0 ? 1 : -1;

      std::optional<Rational> step;
      if (upper_[j]) step = *upper_[j] - lower_[j];
      std::optional<std::size_t> leave_row;
      bool leave_to_upper = false;
      for (std::size_t i = 0; i < m_; ++i) {
        const Rational& a = tab_[i][j];
        if (a == 0) continue;
        const std::size_t b = basis_[i];
        std::optional<Rational> lim;
        bool to_upper = false;
        if ((dir > 0) == (a > 0)) {
          lim = (val_[b] - lower_[b]) / abs(a);
        } else if (upper_[b]) {
          lim = (*upper_[b] - val_[b]) / abs(a);
          to_upper = true;
        }
        if (!lim) continue;
        const bool better =
            !step || *lim < *step ||
            (*lim == *step && leave_row && b < basis_[*leave_row]);
        if (better) {
          step = *lim;
          leave_row = i;
          leave_to_upper = to_upper;
        }
      }
      if (!step) return false;
      ++pivots_;
      degenerate_run = *step == 0 ? degenerate_run + 1 : 0;

      const Rational delta = dir > 0 ? *step : Rational(-*step);
      if (delta != 0) {
        val_[j] += delta;
        for (std::size_t i = 0; i < m_; ++i) {
          if (tab_[i][j] != 0) val_[basis_[i]] -= delta * tab_[i][j];
        }
      }
      if (!leave_row) continue;  // bound flip

      const std::size_t r = *leave_row;
      const std::size_t out = basis_[r];
      val_[out] = leave_to_upper ? *upper_[out] : lower_[out];
      pivot(r, j, d);
    }
  }

  void fix_artificials() {
    for (std::size_t a : artificials_) upper_[a] = Rational(0);
  }

  Rational artificial_sum() const {
    Rational s = 0;
    for (std::size_t a : artificials_) s += val_[a];
    return s;
  }

  std::vector<Rational> phase_one_cost() const {
    std::vector<Rational> c(n_, 0);
    for (std::size_t a : artificials_) c[a] = 1;
    return c;
  }

  std::vector<Rational> structural() const {
    return {val_.begin(), val_.begin() + static_cast<long>(ns_)};
  }
  std::size_t pivots() const { return pivots_; }

 private:
  std::size_t add_column(const Rational& lo, std::optional<Rational> up) {
    lower_.push_back(lo);
    upper_.push_back(std::move(up));
    return lower_.size() - 1;
  }

  static const Rational& d_basic_cost(const std::vector<Rational>& cost,
                                      std::size_t col) {
    static const Rational zero = 0;
    return col < cost.size() ? cost[col] : zero;
  }

  void pivot(std::size_t r, std::size_t j, std::vector<Rational>& d) {
    std::vector<Rational>& pr = tab_[r];
    const Rational p = pr[j];
    std::vector<std::size_t> nz;
    for (std::size_t k = 0; k < n_; ++k) {
      if (pr[k] == 0) continue;
      if (p != 1) pr[k] /= p;
      nz.push_back(k);
    }
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r || tab_[i][j] == 0) continue;
      const Rational f = tab_[i][j];
      for (std::size_t k : nz) tab_[i][k] -= f * pr[k];
    }
    if (d[j] != 0) {
      const Rational f = d[j];
      for (std::size_t k : nz) d[k] -= f * pr[k];
    }
    basic_row_[basis_[r]] = -1;
    basis_[r] = j;
    basic_row_[j] = static_cast<long>(r);
  }

  std::size_t ns_;
  std::size_t m_;
  std::size_t n_ = 0;
  std::vector<Rational> lower_;
  std::vector<std::optional<Rational>> upper_;
  std::vector<Rational> val_;
  std::vector<std::vector<Rational>> tab_;
  std::vector<std::size_t> basis_;
  std::vector<long> basic_row_;
  std::vector<std::size_t> artificials_;
  std::size_t pivots_ = 0;
};

}  // namespace

LpResult solve_lp(const IpModel& model, const std::vector<Rational>& lower,
                  const std::vector<Rational>& upper) {
  LpResult out;
  for (std::size_t j = 0; j < lower.size(); ++j) {
    if (upper[j] < lower[j]) return out;
  }
  Tableau t(model, lower, upper);
  if (t.needs_phase_one()) {
    if (!t.optimize(t.phase_one_cost())) {
      throw std::logic_error("phase one of the simplex is unbounded");
    }
    if (t.artificial_sum() != 0) {
      out.pivots = t.pivots();
      return out;
    }
    t.fix_artificials();
  }
  if (!t.optimize(model.objective())) {
    throw std::logic_error("LP relaxation with finite bounds is unbounded");
  }
  out.status = LpResult::Status::kOptimal;
  out.x = t.structural();
  out.objective = model.objective_value(out.x);
  out.pivots = t.pivots();
  return out;
}

}  // namespace batchsched
