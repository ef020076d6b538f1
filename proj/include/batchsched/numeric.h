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

#ifndef BATCHSCHED_NUMERIC_H_
#define BATCHSCHED_NUMERIC_H_

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace batchsched {

// Times are arbitrary-precision integers, weights exact rationals.
using Int = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

inline Int numerator(const Rational& q) {
  return boost::multiprecision::numerator(q);
}
inline Int denominator(const Rational& q) {
  return boost::multiprecision::denominator(q);
}

// Always "num/den", also for integers, so output diffs stay stable.
std::string format_rational(const Rational& q);
std::string format_int(const Int& v);

// Accepts "a", "a/b" and "a / b". Throws std::invalid_argument.
Rational parse_rational(std::string_view text);
Int parse_int(std::string_view text);

Int lcm(const Int& a, const Int& b);

// Values whose magnitude stays below this bound can be summed a few times
// without overflowing int64_t; the fast kernels require it.
inline const Int& int64_headroom() {
  static const Int bound = Int(1) << 60;
  return bound;
}

inline bool fits_fast(const Int& v) {
  return abs(v) < int64_headroom();
}

// Conversion used by the integer kernels. The caller has checked fits_fast
// for int64_t.
template <typename Num>
Num to_num(const Int& v);

template <>
inline Int to_num<Int>(const Int& v) {
  return v;
}

template <>
inline std::int64_t to_num<std::int64_t>(const Int& v) {
  return v.convert_to<std::int64_t>();
}

template <typename Num>
Int to_int(const Num& v) {
  return Int(v);
}

}  // namespace batchsched

#endif  // BATCHSCHED_NUMERIC_H_
