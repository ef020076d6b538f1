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

// Line-based text formats.
//
// Instance:
//   setup <setup>
//   size_bound <b>            (optional)
//   volume_bound <V>          (optional)
//   job <id> p <p> w <num>/<den> d <d> r <r>    (one per job; "r <r>" and
//                                                "/<den>" may be omitted)
//   threshold <num>/<den>     (optional, written by the reduction generators)
//   # free-form comment
//
// Schedule:
//   batch start <S> jobs <id,id,...>   (one per batch, in start order)
//   tardy <id,...>
//   objective <num>/<den>

#ifndef BATCHSCHED_IO_H_
#define BATCHSCHED_IO_H_

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "batchsched/core.h"

namespace batchsched {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

struct InstanceFile {
  Instance instance;
  std::optional<Rational> threshold;
  std::vector<std::string> comments;
};

struct ScheduleFile {
  Schedule schedule;
  std::optional<Rational> objective;
};

InstanceFile parse_instance(std::string_view text);
std::string format_instance(const Instance& inst,
                            const std::optional<Rational>& threshold = {},
                            const std::vector<std::string>& comments = {});

ScheduleFile parse_schedule(std::string_view text);
std::string format_schedule(const Schedule& schedule,
                            const Rational& objective);

// Throws std::runtime_error when the file cannot be read or written.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view contents);

}  // namespace batchsched

#endif  // BATCHSCHED_IO_H_
