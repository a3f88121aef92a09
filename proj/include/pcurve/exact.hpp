/*
   Copyright 2026 The pcurve Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef PCURVE_EXACT_HPP
#define PCURVE_EXACT_HPP

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace pcurve {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

Integer ipow(const Integer& base, std::uint64_t e);
/// base^e for any integer e (base nonzero when e < 0).
Rational rpow(const Rational& base, std::int64_t e);
Integer binomial(std::uint64_t n, std::uint64_t k);

/// "num/den", or just "num" when the denominator is 1.
std::string to_string(const Rational& r);
Rational parse_rational(const std::string& text);
/// Decimal rendering with a fixed number of digits after the point.
std::string to_fixed(const Rational& r, int digits = 12);
double to_double(const Rational& r);

}  // namespace pcurve

#endif  // PCURVE_EXACT_HPP
