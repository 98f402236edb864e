// Copyright 2026 The QOC Workbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QOC_RATIONAL_HPP
#define QOC_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace qoc {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
    return Rational(Integer(num), Integer(den));
}

/// "a/b" with the denominator always printed.
inline std::string rational_str(const Rational& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

/// Decimal rendering with 12 significant digits.
std::string rational_decimal(const Rational& r, int significant = 12);

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace qoc

#endif
