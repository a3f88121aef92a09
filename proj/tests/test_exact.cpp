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

#include <doctest.h>

#include "pcurve/exact.hpp"

using namespace pcurve;

TEST_SUITE("exact") {
    TEST_CASE("integer helpers") {
        CHECK(ipow(2, 10) == 1024);
        CHECK(ipow(3, 0) == 1);
        CHECK(ipow(2, 100).str() == "1267650600228229401496703205376");
        CHECK(binomial(7, 3) == 35);
        CHECK(binomial(7, 0) == 1);
        CHECK(binomial(3, 5) == 0);
        Integer row = 0;
        for (std::uint64_t k = 0; k <= 31; ++k) row += binomial(31, k);
        CHECK(row == ipow(2, 31));
    }

    TEST_CASE("rational powers accept negative exponents") {
        CHECK(rpow(Rational(2), -3) == Rational(1, 8));
        CHECK(rpow(Rational(2, 3), 2) == Rational(4, 9));
        CHECK(rpow(Rational(5), 0) == 1);
        CHECK_THROWS(rpow(Rational(0), -1));
    }

    TEST_CASE("text forms") {
        CHECK(to_string(Rational(6, 4)) == "3/2");
        CHECK(to_string(Rational(3)) == "3");
        CHECK(parse_rational("-21/64") == Rational(-21, 64));
        CHECK(parse_rational("5") == 5);
        CHECK_THROWS(parse_rational("1/0"));
        CHECK_THROWS(parse_rational("a/b"));
        CHECK(to_fixed(Rational(21, 64)) == "0.328125000000");
        CHECK(to_fixed(Rational(1, 8), 2) == "0.13");
        CHECK(to_fixed(Rational(-1, 8), 2) == "-0.13");
        CHECK(to_fixed(Rational(2, 3), 4) == "0.6667");
        CHECK(to_fixed(Rational(21), 1) == "21.0");
        CHECK(to_double(Rational(1, 4)) == doctest::Approx(0.25));
    }
}
