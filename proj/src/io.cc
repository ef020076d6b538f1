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

#include "batchsched/io.h"

#include <fstream>
#include <set>
#include <sstream>

namespace batchsched {
namespace {

std::vector<std::string> split_words(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> words;
  std::string w;
  while (in >> w) words.push_back(w);
  return words;
}

std::vector<int> parse_id_list(const std::string& text, int line) {
  std::vector<int> ids;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    try {
      ids.push_back(parse_int(item).convert_to<int>());
    } catch (const std::exception&) {
      throw ParseError(line, "bad job id '" + item + "'");
    }
  }
  return ids;
}

std::string join_ids(const std::vector<int>& ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(ids[i]);
  }
  return out;
}

// Joins tokens so that "3", "/", "2" and "3", "/2" both read as "3/2".
std::string take_rational_tokens(const std::vector<std::string>& w,
                                 std::size_t& k) {
  std::string text = w.at(k++);
  while (k < w.size() &&
         (w[k] == "/" || w[k].front() == '/' || text.back() == '/')) {
    text += w[k++];
  }
  return text;
}

template <typename T, typename F>
T parse_field(int line, const std::string& what, F&& f) {
  try {
    return f();
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(line, "bad " + what + ": " + e.what());
  }
}

Job parse_job(const std::vector<std::string>& w, int line) {
  if (w.size() < 2) throw ParseError(line, "job line needs an id");
  Job job;
  job.id = parse_field<int>(line, "job id",
                            [&] { return parse_int(w[1]).convert_to<int>(); });
  std::set<std::string> given;
  std::size_t k = 2;
  while (k < w.size()) {
    const std::string key = w[k++];
    if (k >= w.size()) throw ParseError(line, "field '" + key + "' has no value");
    if (!given.insert(key).second) {
      throw ParseError(line, "field '" + key + "' given twice");
    }
    if (key == "p") {
      job.p = parse_field<Int>(line, "p", [&] { return parse_int(w[k++]); });
    } else if (key == "d") {
      job.d = parse_field<Int>(line, "d", [&] { return parse_int(w[k++]); });
    } else if (key == "r") {
      job.r = parse_field<Int>(line, "r", [&] { return parse_int(w[k++]); });
    } else if (key == "w") {
      job.w = parse_field<Rational>(
          line, "w", [&] { return parse_rational(take_rational_tokens(w, k)); });
    } else {
      throw ParseError(line, "unknown job field '" + key + "'");
    }
  }
  for (const char* required : {"p", "w", "d"}) {
    if (!given.count(required)) {
      throw ParseError(line, std::string("job is missing field '") + required +
                                 "'");
    }
  }
  if (job.p < 1) throw ParseError(line, "processing time must be positive");
  if (job.w < 0) throw ParseError(line, "weight must be nonnegative");
  if (job.d < 0 || job.r < 0) {
    throw ParseError(line, "due and release dates must be nonnegative");
  }
  return job;
}

}  // namespace

ParseError::ParseError(int line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message),
      line_(line) {}

InstanceFile parse_instance(std::string_view text) {
  InstanceFile out;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  bool have_setup = false;
  std::set<int> ids;
  while (std::getline(in, raw)) {
    ++line;
    std::size_t first = raw.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (raw[first] == '#') {
      std::string c = raw.substr(first + 1);
      if (!c.empty() && c.front() == ' ') c.erase(0, 1);
      while (!c.empty() && c.back() == '\r') c.pop_back();
      out.comments.push_back(c);
      continue;
    }
    auto w = split_words(raw);
    const std::string& key = w[0];
    auto single = [&](const std::string& what) -> const std::string& {
      if (w.size() != 2) throw ParseError(line, what + " takes one value");
      return w[1];
    };
    if (key == "setup") {
      out.instance.setup =
          parse_field<Int>(line, "setup", [&] { return parse_int(single(key)); });
      if (out.instance.setup < 0) throw ParseError(line, "negative setup");
      have_setup = true;
    } else if (key == "size_bound") {
      out.instance.size_bound = parse_field<Int>(
          line, "size_bound", [&] { return parse_int(single(key)); });
      if (*out.instance.size_bound < 1) {
        throw ParseError(line, "size_bound must be positive");
      }
    } else if (key == "volume_bound") {
      out.instance.volume_bound = parse_field<Int>(
          line, "volume_bound", [&] { return parse_int(single(key)); });
      if (*out.instance.volume_bound < 1) {
        throw ParseError(line, "volume_bound must be positive");
      }
    } else if (key == "job") {
      Job job = parse_job(w, line);
      if (!ids.insert(job.id).second) {
        throw ParseError(line, "duplicate job id " + std::to_string(job.id));
      }
      out.instance.jobs.push_back(std::move(job));
    } else if (key == "threshold") {
      std::size_t k = 1;
      if (w.size() < 2) throw ParseError(line, "threshold takes one value");
      out.threshold = parse_field<Rational>(line, "threshold", [&] {
        return parse_rational(take_rational_tokens(w, k));
      });
    } else {
      throw ParseError(line, "unknown directive '" + key + "'");
    }
  }
  if (!have_setup) throw ParseError(line, "missing 'setup' line");
  return out;
}

std::string format_instance(const Instance& inst,
                            const std::optional<Rational>& threshold,
                            const std::vector<std::string>& comments) {
  std::ostringstream out;
  out << "setup " << inst.setup << "\n";
  if (inst.size_bound) out << "size_bound " << *inst.size_bound << "\n";
  if (inst.volume_bound) out << "volume_bound " << *inst.volume_bound << "\n";
  for (const Job& j : inst.jobs) {
    out << "job " << j.id << " p " << j.p << " w " << format_rational(j.w)
        << " d " << j.d << " r " << j.r << "\n";
  }
  if (threshold) out << "threshold " << format_rational(*threshold) << "\n";
  for (const std::string& c : comments) out << "# " << c << "\n";
  return out.str();
}

ScheduleFile parse_schedule(std::string_view text) {
  ScheduleFile out;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  bool have_tardy = false;
  while (std::getline(in, raw)) {
    ++line;
    auto w = split_words(raw);
    if (w.empty() || w[0].front() == '#') continue;
    if (w[0] == "batch") {
      if (w.size() < 4 || w[1] != "start" || w[3] != "jobs") {
        throw ParseError(line, "expected 'batch start <S> jobs <ids>'");
      }
      Batch b;
      b.start = parse_field<Int>(line, "start", [&] { return parse_int(w[2]); });
      std::string list;
      for (std::size_t k = 4; k < w.size(); ++k) list += w[k];
      b.job_ids = parse_id_list(list, line);
      out.schedule.batches.push_back(std::move(b));
    } else if (w[0] == "tardy") {
      if (have_tardy) throw ParseError(line, "second 'tardy' line");
      have_tardy = true;
      std::string list;
      for (std::size_t k = 1; k < w.size(); ++k) list += w[k];
      out.schedule.tardy_ids = parse_id_list(list, line);
    } else if (w[0] == "objective") {
      std::size_t k = 1;
      if (w.size() < 2) throw ParseError(line, "objective takes one value");
      out.objective = parse_field<Rational>(line, "objective", [&] {
        return parse_rational(take_rational_tokens(w, k));
      });
    } else {
      throw ParseError(line, "unknown directive '" + w[0] + "'");
    }
  }
  return out;
}

std::string format_schedule(const Schedule& schedule,
                            const Rational& objective) {
  std::ostringstream out;
  for (const Batch& b : schedule.batches) {
    out << "batch start " << b.start << " jobs " << join_ids(b.job_ids) << "\n";
  }
  out << "tardy";
  if (!schedule.tardy_ids.empty()) out << " " << join_ids(schedule.tardy_ids);
  out << "\n";
  out << "objective " << format_rational(objective) << "\n";
  return out.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << contents;
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace batchsched
