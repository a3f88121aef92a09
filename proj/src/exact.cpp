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

#include "pcurve/exact.hpp"

#include <stdexcept>

namespace pcurve {

Integer ipow(const Integer& base, std::uint64_t e) {
    Integer r = 1, b = base;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

Rational rpow(const Rational& base, std::int64_t e) {
    if (e < 0) {
        if (base == 0) throw std::domain_error("zero to a negative power");
        return Rational(1) / rpow(base, -e);
    }
    Rational r = 1, b = base;
    auto n = static_cast<std::uint64_t>(e);
    while (n) {
        if (n & 1) r *= b;
        b *= b;
        n >>= 1;
    }
    return r;
}

Integer binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    Integer r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

std::string to_string(const Rational& r) {
    const Integer num = boost::multiprecision::numerator(r);
    const Integer den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    if (slash == std::string::npos) return Rational(Integer(text));
    return Rational(Integer(text.substr(0, slash)), Integer(text.substr(slash + 1)));
}

std::string to_fixed(const Rational& r, int digits) {
    Integer num = boost::multiprecision::numerator(r);
    const Integer den = boost::multiprecision::denominator(r);
    const bool negative = num < 0;
    if (negative) num = -num;
    const Integer scale = ipow(10, static_cast<std::uint64_t>(digits));
    // round half up on the magnitude
    Integer scaled = (num * scale * 2 + den) / (den * 2);
    const Integer whole = scaled / scale;
    std::string frac = Integer(scaled % scale).str();
    if (frac.size() < static_cast<std::size_t>(digits)) frac.insert(0, digits - frac.size(), '0');
    std::string out = (negative && scaled != 0 ? "-" : "") + whole.str();
    if (digits > 0) out += "." + frac;
    return out;
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace pcurve
