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

#ifndef PCURVE_TESTS_SUPPORT_HPP
#define PCURVE_TESTS_SUPPORT_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "pcurve/gf.hpp"
#include "pcurve/poly.hpp"

namespace pcurve::testing {

/// Deterministic generator for property tests.
inline std::mt19937_64& rng() {
    static std::mt19937_64 gen(20261018);
    return gen;
}

inline Code random_code(const Field& k) { return static_cast<Code>(rng()() % k.size()); }

inline Code random_nonzero(const Field& k) { return static_cast<Code>(1 + rng()() % (k.size() - 1)); }

inline TernaryForm random_form(const FieldPtr& k, int d) {
    std::vector<Code> c(monomial_count(d));
    for (auto& x : c) x = random_code(*k);
    return TernaryForm(k, d, std::move(c));
}

inline TernaryForm random_nonzero_form(const FieldPtr& k, int d) {
    for (;;) {
        auto f = random_form(k, d);
        if (!f.is_zero()) return f;
    }
}

/// Bivariate polynomial with random coefficients on monomials of degree <= d.
inline AffinePoly random_affine(const FieldPtr& k, int d, double density = 0.5) {
    std::vector<Term> terms;
    std::uniform_real_distribution<double> u(0, 1);
    for (int a = 0; a <= d; ++a)
        for (int b = 0; a + b <= d; ++b)
            if (u(rng()) < density) terms.push_back({static_cast<std::uint16_t>(a), static_cast<std::uint16_t>(b), random_nonzero(*k)});
    return AffinePoly(k, std::move(terms));
}

}  // namespace pcurve::testing

#endif  // PCURVE_TESTS_SUPPORT_HPP
