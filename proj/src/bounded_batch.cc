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

#include "batchsched/bounded_batch.h"

#include <algorithm>
#include <string>

namespace batchsched {
namespace {

std::string idx(std::size_t v) { return std::to_string(v); }

template <typename Key>
std::vector<std::vector<std::size_t>> group_types(const TypeTable& table,
                                                  Key key) {
  std::map<decltype(key(table.types[0])), std::vector<std::size_t>> groups;
  for (std::size_t t = 0; t < table.types.size(); ++t) {
    groups[key(table.types[t])].push_back(t);
  }
  std::vector<std::vector<std::size_t>> out;
  for (auto& [k, members] : groups) out.push_back(std::move(members));
  return out;
}

Int batch_bound(const Instance& inst) {
  if (inst.volume_bound) throw Refusal("ip models do not support volume bounds");
  if (inst.size_bound) return *inst.size_bound;
  return Int(std::max<std::size_t>(inst.size(), 1));
}

void require_assignment(const IpModel& ip, const std::vector<Rational>& a,
                        const std::vector<std::size_t>& must_be_integral) {
  if (auto why = ip.violation(a)) {
    throw StructuralError("assignment violates the model: " + *why);
  }
  for (std::size_t v : must_be_integral) {
    if (denominator(a[v]) != 1) {
      throw StructuralError("assignment has fractional " + ip.vars()[v].name);
    }
  }
}

long as_count(const Rational& q) { return numerator(q).convert_to<long>(); }

Instance shape_of(const TypeTable& types, const Int& setup) {
  Instance out;
  out.setup = setup;
  for (const JobType& t : types.types) {
    for (int id : t.members) out.jobs.push_back({id, t.p, t.w, t.d, t.r});
  }
  return out;
}

Schedule finish_schedule(const Instance& inst, std::vector<Batch> batches) {
  Schedule out;
  std::vector<char> early(inst.size(), 0);
  for (const Batch& b : batches) {
    for (int id : b.job_ids) early[inst.position(id)] = 1;
  }
  out.batches = std::move(batches);
  for (std::size_t i = 0; i < inst.size(); ++i) {
    if (!early[i]) out.tardy_ids.push_back(inst.jobs[i].id);
  }
  return out;
}

template <typename Model>
std::vector<Rational> checked_rounding(const Model& m,
                                       const std::vector<Rational>& before,
                                       std::vector<Rational> after,
                                       bool exact) {
  if (auto why = m.ip.violation(after)) {
    throw std::logic_error("rounded assignment violates the model: " + *why);
  }
  const Rational old_obj = m.ip.objective_value(before);
  const Rational new_obj = m.ip.objective_value(after);
  if (exact ? new_obj != old_obj : new_obj > old_obj) {
    throw std::logic_error("rounding changed the objective");
  }
  return after;
}

}  // namespace

std::size_t TypeTable::job_count() const {
  std::size_t n = 0;
  for (const JobType& t : types) n += t.members.size();
  return n;
}

std::vector<std::vector<std::size_t>> TypeTable::by_weight_due() const {
  return group_types(*this, [](const JobType& t) {
    return std::make_pair(t.w, t.d);
  });
}

std::vector<std::vector<std::size_t>> TypeTable::by_processing_release_due()
    const {
  auto groups = group_types(*this, [](const JobType& t) {
    return std::make_tuple(t.p, t.r, t.d);
  });
  for (auto& g : groups) {
    std::stable_sort(g.begin(), g.end(), [&](std::size_t a, std::size_t b) {
      return types[a].w > types[b].w;
    });
  }
  return groups;
}

TypeTable build_type_table(const Instance& inst) {
  std::map<std::tuple<Int, Rational, Int, Int>, std::vector<int>> groups;
  for (const Job& j : inst.jobs) groups[{j.p, j.w, j.d, j.r}].push_back(j.id);
  TypeTable out;
  for (auto& [key, ids] : groups) {
    std::sort(ids.begin(), ids.end());
    out.types.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key),
                         std::get<3>(key), std::move(ids)});
  }
  return out;
}

SizeModel build_model_size(const Instance& inst, const Int& b) {
  if (!inst.single_release()) {
    throw Refusal("ip-size requires all release dates to be equal");
  }
  if (b < 1) throw Refusal("batch size bound must be positive");
  SizeModel m;
  m.types = build_type_table(inst);
  m.classes = m.types.by_weight_due();
  m.levels = inst.due_levels();
  m.release = inst.common_release();
  m.setup = inst.setup;
  m.b = b;
  const std::size_t L = m.levels.size();
  const Int n(inst.size());
  IpModel& ip = m.ip;

  for (std::size_t l = 0; l < L; ++l) {
    m.z.push_back(ip.add_var("z_" + idx(l + 1), true, 0, n));
  }
  m.x.assign(m.classes.size(), std::vector<std::optional<std::size_t>>(L));
  for (std::size_t i = 0; i < m.classes.size(); ++i) {
    const JobType& rep = m.types.types[m.classes[i].front()];
    std::size_t count = 0;
    for (std::size_t t : m.classes[i]) count += m.types.types[t].members.size();
    for (std::size_t l = 0; l < L && m.levels[l] <= rep.d; ++l) {
      m.x[i][l] = ip.add_var("x_" + idx(i + 1) + "_" + idx(l + 1), true, 0,
                             Int(count));
    }
  }
  m.y.assign(m.types.types.size(), {});
  for (std::size_t t = 0; t < m.types.types.size(); ++t) {
    const JobType& type = m.types.types[t];
    const Int count(type.members.size());
    for (std::size_t l = 0; l < L; ++l) {
      m.y[t].push_back(ip.add_var("y_" + idx(t + 1) + "_" + idx(l + 1), false,
                                  0, count));
    }
    ip.add_objective_constant(type.w * count);
    if (L) ip.add_objective(m.y[t][L - 1], -type.w);
  }

  const Rational inv_b = Rational(1) / Rational(b);
  for (std::size_t l = 0; l < L; ++l) {
    LinearTerms row{{m.z[l], 1}};
    if (l) row.emplace_back(m.z[l - 1], -1);
    for (std::size_t i = 0; i < m.classes.size(); ++i) {
      if (m.x[i][l]) row.emplace_back(*m.x[i][l], -inv_b);
    }
    ip.add_row("batches_" + idx(l + 1), row, Relation::kGe, 0);
  }
  for (std::size_t i = 0; i < m.classes.size(); ++i) {
    for (std::size_t l = 0; l < L; ++l) {
      LinearTerms row;
      for (std::size_t l0 = 0; l0 <= l; ++l0) {
        if (m.x[i][l0]) row.emplace_back(*m.x[i][l0], 1);
      }
      for (std::size_t t : m.classes[i]) row.emplace_back(m.y[t][l], -1);
      ip.add_row("class_" + idx(i + 1) + "_" + idx(l + 1), row, Relation::kEq,
                 0);
    }
  }
  for (std::size_t l = 0; l < L; ++l) {
    LinearTerms row{{m.z[l], Rational(inst.setup)}};
    for (std::size_t t = 0; t < m.types.types.size(); ++t) {
      row.emplace_back(m.y[t][l], Rational(m.types.types[t].p));
    }
    const Int room = std::max(Int(0), Int(m.levels[l] - m.release));
    ip.add_row("load_" + idx(l + 1), row, Relation::kLe, Rational(room));
  }
  for (std::size_t t = 0; t < m.types.types.size(); ++t) {
    for (std::size_t l = 1; l < L; ++l) {
      ip.add_row("mono_" + idx(t + 1) + "_" + idx(l + 1),
                 {{m.y[t][l - 1], 1}, {m.y[t][l], -1}}, Relation::kLe, 0);
    }
  }
  return m;
}

ReleaseModel build_model_release(const Instance& inst, const Int& b,
                                 const ReleaseModelOptions& opts) {
  if (b < 1) throw Refusal("batch size bound must be positive");
  ReleaseModel m;
  m.types = build_type_table(inst);
  m.classes = m.types.by_processing_release_due();
  m.setup = inst.setup;
  m.b = b;
  for (const Job& j : inst.jobs) {
    m.points.push_back(j.r);
    m.points.push_back(j.d);
  }
  std::sort(m.points.begin(), m.points.end());
  m.points.erase(std::unique(m.points.begin(), m.points.end()),
                 m.points.end());
  const std::size_t k = m.points.size();
  const Int n(inst.size());
  IpModel& ip = m.ip;

  auto allowed = [&](std::size_t i, std::size_t l, std::size_t lp) {
    const JobType& rep = m.types.types[m.classes[i].front()];
    return !(rep.d < m.points[lp] || rep.r > m.points[l]);
  };
  std::vector<Int> class_size(m.classes.size(), 0);
  for (std::size_t i = 0; i < m.classes.size(); ++i) {
    for (std::size_t t : m.classes[i]) {
      class_size[i] += m.types.types[t].members.size();
    }
  }
  for (std::size_t l = 0; l < k; ++l) {
    for (std::size_t lp = l + 1; lp < k; ++lp) {
      Int room = 0;
      for (std::size_t i = 0; i < m.classes.size(); ++i) {
        if (allowed(i, l, lp)) room += class_size[i];
      }
      if (room == 0) continue;
      m.z[{l, lp}] = ip.add_var("z_" + idx(l + 1) + "_" + idx(lp + 1), true, 0,
                                std::min(room, n));
    }
  }
  for (const auto& [cls, zvar] : m.z) {
    for (std::size_t i = 0; i < m.classes.size(); ++i) {
      if (!allowed(i, cls.first, cls.second)) continue;
      m.x[{i, cls.first, cls.second}] =
          ip.add_var("x_" + idx(i + 1) + "_" + idx(cls.first + 1) + "_" +
                         idx(cls.second + 1),
                     true, 0, class_size[i]);
    }
  }
  for (std::size_t t = 0; t < m.types.types.size(); ++t) {
    const JobType& type = m.types.types[t];
    const Int count(type.members.size());
    m.y.push_back(ip.add_var("y_" + idx(t + 1), false, 0, count));
    ip.add_objective_constant(type.w * count);
    ip.add_objective(m.y.back(), -type.w);
  }

  for (const auto& [cls, zvar] : m.z) {
    LinearTerms row{{zvar, -Rational(b)}};
    for (std::size_t i = 0; i < m.classes.size(); ++i) {
      auto it = m.x.find({i, cls.first, cls.second});
      if (it != m.x.end()) row.emplace_back(it->second, 1);
    }
    ip.add_row("cap_" + idx(cls.first + 1) + "_" + idx(cls.second + 1), row,
               Relation::kLe, 0);
  }
  for (std::size_t i = 0; i < m.classes.size(); ++i) {
    LinearTerms row;
    for (const auto& [key, var] : m.x) {
      if (std::get<0>(key) == i) row.emplace_back(var, 1);
    }
    for (std::size_t t : m.classes[i]) row.emplace_back(m.y[t], -1);
    ip.add_row("class_" + idx(i + 1), row, Relation::kEq, 0);
  }
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t c = a + 1; c < k; ++c) {
      LinearTerms row;
      for (const auto& [cls, zvar] : m.z) {
        if (cls.first < a || cls.second > c) continue;
        row.emplace_back(zvar, Rational(inst.setup));
      }
      for (const auto& [key, var] : m.x) {
        if (std::get<1>(key) < a || std::get<2>(key) > c) continue;
        row.emplace_back(var, Rational(m.types.types[m.classes[std::get<0>(key)]
                                                        .front()]
                                           .p));
      }
      if (row.empty()) continue;
      ip.add_row("window_" + idx(a + 1) + "_" + idx(c + 1), row, Relation::kLe,
                 Rational(m.points[c] - m.points[a]));
    }
  }
  for (const auto& [outer, zo] : m.z) {
    const auto [l1, l2] = outer;
    for (const auto& [inner, zi] : m.z) {
      const auto [l3, l4] = inner;
      if (!(l1 <= l3 && l3 + 2 <= l4 && l4 <= l2)) continue;
      const std::string name =
          "long_" + idx(l1 + 1) + "_" + idx(l2 + 1) + "_" + idx(l3 + 1) + "_" +
          idx(l4 + 1);
      if (outer == inner) {
        if (opts.literal_self_pairs) {
          ip.add_row(name, {{zo, 2}}, Relation::kLe, 1);
        } else {
          ip.add_row(name, {{zo, 1}}, Relation::kLe, 1);
        }
      } else {
        ip.add_row(name, {{zo, 1}, {zi, 1}}, Relation::kLe, 1);
      }
    }
  }
  const Rational inv_n = Rational(1) / Rational(std::max(n, Int(1)));
  for (const auto& [outer, zo] : m.z) {
    const auto [l1, l2] = outer;
    for (std::size_t l = l1 + 1; l + 1 < l2; ++l) {
      auto it = m.z.find({l, l + 1});
      if (it == m.z.end()) continue;
      ip.add_row("short_" + idx(l + 1) + "_" + idx(l1 + 1) + "_" + idx(l2 + 1),
                 {{it->second, inv_n}, {zo, 1}}, Relation::kLe, 1);
    }
  }
  return m;
}

std::vector<Rational> round_size(const SizeModel& m,
                                 const std::vector<Rational>& values) {
  std::vector<Rational> out = values;
  const std::size_t L = m.levels.size();
  for (std::size_t i = 0; i < m.classes.size(); ++i) {
    Rational total = 0;
    for (std::size_t l = 0; l < L; ++l) {
      if (m.x[i][l]) {
        if (denominator(values[*m.x[i][l]]) != 1) {
          throw StructuralError("x variables must be integral before rounding");
        }
        total += values[*m.x[i][l]];
      }
      Rational left = total;
      for (std::size_t t : m.classes[i]) {
        const Rational cap(m.types.types[t].members.size());
        const Rational take = std::min(cap, left);
        out[m.y[t][l]] = take;
        left -= take;
      }
    }
  }
  return checked_rounding(m, values, std::move(out), true);
}

std::vector<Rational> round_release(const ReleaseModel& m,
                                    const std::vector<Rational>& values) {
  std::vector<Rational> out = values;
  for (std::size_t i = 0; i < m.classes.size(); ++i) {
    Rational total = 0;
    for (const auto& [key, var] : m.x) {
      if (std::get<0>(key) != i) continue;
      if (denominator(values[var]) != 1) {
        throw StructuralError("x variables must be integral before rounding");
      }
      total += values[var];
    }
    for (std::size_t t : m.classes[i]) {
      const Rational cap(m.types.types[t].members.size());
      const Rational take = std::min(cap, total);
      out[m.y[t]] = take;
      total -= take;
    }
  }
  return checked_rounding(m, values, std::move(out), false);
}

Schedule reconstruct_size(const SizeModel& m,
                          const std::vector<Rational>& assignment) {
  std::vector<std::size_t> ys;
  for (const auto& row : m.y) ys.insert(ys.end(), row.begin(), row.end());
  require_assignment(m.ip, assignment, ys);

  const Instance shape = shape_of(m.types, m.setup);
  std::vector<std::size_t> next(m.types.types.size(), 0);
  std::vector<Batch> batches;
  Int clock = m.release;
  for (std::size_t l = 0; l < m.levels.size(); ++l) {
    std::vector<std::pair<Int, int>> jobs;
    for (std::size_t t = 0; t < m.types.types.size(); ++t) {
      const long before = l ? as_count(assignment[m.y[t][l - 1]]) : 0;
      const long now = as_count(assignment[m.y[t][l]]);
      for (long c = before; c < now; ++c) {
        jobs.emplace_back(m.types.types[t].p,
                          m.types.types[t].members.at(next[t]++));
      }
    }
    std::sort(jobs.begin(), jobs.end());
    const std::size_t cap = m.b.convert_to<std::size_t>();
    for (std::size_t s = 0; s < jobs.size(); s += cap) {
      Batch batch;
      batch.start = clock;
      Int volume = 0;
      for (std::size_t k = s; k < std::min(jobs.size(), s + cap); ++k) {
        batch.job_ids.push_back(jobs[k].second);
        volume += jobs[k].first;
      }
      clock += shape.setup + volume;
      batches.push_back(std::move(batch));
    }
  }
  return finish_schedule(shape, std::move(batches));
}

Schedule reconstruct_release(const ReleaseModel& m,
                             const std::vector<Rational>& assignment) {
  require_assignment(m.ip, assignment, m.y);
  const Instance shape = shape_of(m.types, m.setup);
  // Designated jobs of each class, heaviest types first.
  std::vector<std::vector<int>> queue(m.classes.size());
  for (std::size_t i = 0; i < m.classes.size(); ++i) {
    for (std::size_t t : m.classes[i]) {
      const long count = as_count(assignment[m.y[t]]);
      for (long c = 0; c < count; ++c) {
        queue[i].push_back(m.types.types[t].members.at(c));
      }
    }
  }
  std::vector<std::size_t> next(m.classes.size(), 0);
  std::vector<Batch> batches;
  std::optional<Int> clock;
  const std::size_t cap = m.b.convert_to<std::size_t>();
  for (const auto& [cls, zvar] : m.z) {
    std::vector<int> jobs;
    for (std::size_t i = 0; i < m.classes.size(); ++i) {
      auto it = m.x.find({i, cls.first, cls.second});
      if (it == m.x.end()) continue;
      const long count = as_count(assignment[it->second]);
      for (long c = 0; c < count; ++c) jobs.push_back(queue[i].at(next[i]++));
    }
    for (std::size_t s = 0; s < jobs.size(); s += cap) {
      Batch batch;
      batch.start = clock ? std::max(*clock, m.points[cls.first])
                          : m.points[cls.first];
      for (std::size_t k = s; k < std::min(jobs.size(), s + cap); ++k) {
        batch.job_ids.push_back(jobs[k]);
      }
      clock = completion(batch, shape);
      batches.push_back(std::move(batch));
    }
  }
  Schedule out = finish_schedule(shape, std::move(batches));
  for (const Batch& batch : out.batches) {
    const Int done = completion(batch, shape);
    for (int id : batch.job_ids) {
      if (done > shape.job(id).d) {
        throw std::logic_error("designated job " + std::to_string(id) +
                               " is late in the reconstructed schedule");
      }
    }
  }
  return out;
}

OptResult solve_ip_size(const Instance& inst, const IpLimits& limits) {
  const Int b = batch_bound(inst);
  if (inst.size() == 0) return {};
  const SizeModel m = build_model_size(inst, b);
  const IpSolution sol = solve_ip(m.ip, limits);
  if (sol.status != IpSolution::Status::kOptimal) {
    throw std::logic_error("size model is infeasible");
  }
  const std::vector<Rational> rounded = round_size(m, sol.values);
  OptResult out;
  out.schedule = reconstruct_size(m, rounded);
  out.objective = evaluate(out.schedule, inst);
  if (out.objective != sol.objective) {
    throw std::logic_error("size model schedule misses the model optimum");
  }
  return out;
}

OptResult solve_ip_release(const Instance& inst, const IpLimits& limits,
                           const ReleaseModelOptions& opts) {
  const Int b = batch_bound(inst);
  if (inst.size() == 0) return {};
  const ReleaseModel m = build_model_release(inst, b, opts);
  const IpSolution sol = solve_ip(m.ip, limits);
  if (sol.status != IpSolution::Status::kOptimal) {
    throw std::logic_error("release model is infeasible");
  }
  const std::vector<Rational> rounded = round_release(m, sol.values);
  OptResult out;
  out.schedule = reconstruct_release(m, rounded);
  out.objective = evaluate(out.schedule, inst);
  if (out.objective != m.ip.objective_value(rounded)) {
    throw std::logic_error("release model schedule misses the model optimum");
  }
  return out;
}

}  // namespace batchsched
