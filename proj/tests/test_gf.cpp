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

#include <set>

#include "pcurve/gf.hpp"
#include "support.hpp"

using namespace pcurve;
using pcurve::testing::random_code;

namespace {

// Schoolbook multiplication of coordinate vectors modulo the field's modulus.
Code slow_mul(const Field& k, Code a, Code b) {
    const auto& d = k.desc();
    if (d.k == 1) return static_cast<Code>((std::uint64_t{a} * b) % d.p);
    const auto x = k.coords(a), y = k.coords(b);
    std::vector<std::uint64_t> prod(2 * d.k - 1, 0);
    for (std::size_t i = 0; i < d.k; ++i)
        for (std::size_t j = 0; j < d.k; ++j) prod[i + j] = (prod[i + j] + std::uint64_t{x[i]} * y[j]) % d.p;
    for (std::size_t top = prod.size(); top-- > d.k;) {
        const std::uint64_t c = prod[top];
        if (c == 0) continue;
        for (std::size_t i = 0; i < d.k; ++i) {
            prod[top - d.k + i] = (prod[top - d.k + i] + (d.p - c) * d.modulus[i]) % d.p;
        }
        prod[top] = 0;
    }
    std::vector<std::uint32_t> out(d.k);
    for (std::size_t i = 0; i < d.k; ++i) out[i] = static_cast<std::uint32_t>(prod[i]);
    return k.from_coords(out);
}

Code slow_add(const Field& k, Code a, Code b) {
    const auto& d = k.desc();
    auto x = k.coords(a);
    const auto y = k.coords(b);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = (x[i] + y[i]) % d.p;
    return k.from_coords(x);
}

// Evaluates a low-to-high polynomial over F_p at a point of F_p.
std::uint64_t eval_mod(const std::vector<std::uint32_t>& poly, std::uint64_t x, std::uint64_t p) {
    std::uint64_t acc = 0;
    for (std::size_t i = poly.size(); i-- > 0;) acc = (acc * x + poly[i]) % p;
    return acc;
}

const std::vector<std::pair<int, int>> kSmallFields{{2, 1}, {3, 1}, {5, 1}, {7, 1}, {2, 2}, {2, 3},
                                                     {3, 2}, {2, 4}, {5, 2}, {3, 3}, {2, 5}, {7, 2}};

}  // namespace

TEST_SUITE("gf") {
    TEST_CASE("field axioms hold on every pair and triple of small fields") {
        for (auto [p, k] : kSmallFields) {
            const FieldPtr f = make_field(p, k);
            const Code q = f->size();
            CAPTURE(q);
            for (Code a = 0; a < q; ++a) {
                CHECK(f->add(a, 0) == a);
                CHECK(f->mul(a, 1) == a);
                CHECK(f->add(a, f->neg(a)) == 0);
                if (a != 0) CHECK(f->mul(a, f->inv(a)) == 1);
                for (Code b = 0; b < q; ++b) {
                    REQUIRE(f->add(a, b) == slow_add(*f, a, b));
                    REQUIRE(f->mul(a, b) == slow_mul(*f, a, b));
                    CHECK(f->sub(f->add(a, b), b) == a);
                    if (b != 0) CHECK(f->mul(f->div(a, b), b) == a);
                }
            }
            if (q <= 9) {
                for (Code a = 0; a < q; ++a)
                    for (Code b = 0; b < q; ++b)
                        for (Code c = 0; c < q; ++c) {
                            CHECK(f->mul(a, f->add(b, c)) == f->add(f->mul(a, b), f->mul(a, c)));
                            CHECK(f->mul(f->mul(a, b), c) == f->mul(a, f->mul(b, c)));
                        }
            }
        }
    }

    TEST_CASE("modulus is the first monic irreducible in lexicographic order") {
        // Degree <= 3: irreducible iff no root in F_p.
        for (auto [p, k] : kSmallFields) {
            if (k == 1 || k > 3) continue;
            const FieldPtr f = make_field(p, k);
            const auto& mod = f->desc().modulus;
            REQUIRE(mod.size() == static_cast<std::size_t>(k) + 1);
            CHECK(mod.back() == 1);
            auto irreducible = [&](const std::vector<std::uint32_t>& poly) {
                for (std::uint64_t x = 0; x < static_cast<std::uint64_t>(p); ++x)
                    if (eval_mod(poly, x, p) == 0) return false;
                return true;
            };
            CHECK(irreducible(mod));
            // Every monic candidate before it (constant coefficient fastest) is reducible.
            std::uint64_t rank = 0, base = 1;
            for (int i = 0; i < k; ++i, base *= p) rank += mod[i] * base;
            for (std::uint64_t r = 0; r < rank; ++r) {
                std::vector<std::uint32_t> cand(k + 1, 0);
                cand[k] = 1;
                std::uint64_t x = r;
                for (int i = 0; i < k; ++i, x /= p) cand[i] = static_cast<std::uint32_t>(x % p);
                CHECK_FALSE(irreducible(cand));
            }
        }
        CHECK(make_field(2, 2)->desc().modulus_string() == "t^2+t+1");
        CHECK(make_field(2, 3)->desc().modulus_string() == "t^3+t+1");
        CHECK(make_field(3, 2)->desc().modulus_string() == "t^2+1");
        CHECK(make_field(5, 1)->desc().modulus_string() == "-");
    }

    TEST_CASE("primitive element generates the multiplicative group") {
        for (auto [p, k] : kSmallFields) {
            const FieldPtr f = make_field(p, k);
            std::set<Code> seen;
            Code x = 1;
            for (Code i = 0; i + 1 < f->size(); ++i) {
                seen.insert(x);
                x = f->mul(x, f->primitive());
            }
            CHECK(x == 1);
            CHECK(seen.size() == f->size() - 1);
        }
    }

    TEST_CASE("Frobenius is a field automorphism fixing the prime field") {
        for (auto [p, k] : kSmallFields) {
            const FieldPtr f = make_field(p, k);
            for (int trial = 0; trial < 200; ++trial) {
                const Code a = random_code(*f), b = random_code(*f);
                CHECK(f->frobenius(f->add(a, b)) == f->add(f->frobenius(a), f->frobenius(b)));
                CHECK(f->frobenius(f->mul(a, b)) == f->mul(f->frobenius(a), f->frobenius(b)));
                CHECK(f->pow(a, f->size()) == a);
            }
            for (std::int64_t n = 0; n < p; ++n) CHECK(f->frobenius(f->from_int(n)) == f->from_int(n));
        }
    }

    TEST_CASE("from_int reduces modulo p, including negatives") {
        const FieldPtr f = make_field(5, 2);
        CHECK(f->from_int(7) == f->from_int(2));
        CHECK(f->from_int(-1) == f->neg(1));
        CHECK(f->from_int(0) == 0);
    }

    TEST_CASE("embeddings are injective ring homomorphisms onto the Frobenius-fixed subfield") {
        const std::vector<std::array<int, 3>> pairs{{2, 1, 3}, {2, 2, 4}, {3, 1, 2}, {3, 2, 4}, {2, 3, 6}};
        for (auto [p, a, b] : pairs) {
            const FieldPtr base = make_field(p, a), ext = make_field(p, b);
            const Embedding emb(base, ext);
            std::set<Code> image;
            for (Code x = 0; x < base->size(); ++x) {
                image.insert(emb(x));
                CHECK(ext->pow(emb(x), base->size()) == emb(x));
                for (Code y = 0; y < base->size(); ++y) {
                    CHECK(emb(base->add(x, y)) == ext->add(emb(x), emb(y)));
                    CHECK(emb(base->mul(x, y)) == ext->mul(emb(x), emb(y)));
                }
            }
            CHECK(image.size() == base->size());
            std::size_t fixed = 0;
            for (Code z = 0; z < ext->size(); ++z) fixed += ext->pow(z, base->size()) == z;
            CHECK(fixed == base->size());
        }
        CHECK_THROWS_AS(Embedding(make_field(2, 2), make_field(2, 3)), std::invalid_argument);
        CHECK_THROWS_AS(Embedding(make_field(2, 1), make_field(3, 2)), std::invalid_argument);
    }

    TEST_CASE("format and parse are inverse") {
        for (auto [p, k] : kSmallFields) {
            const FieldPtr f = make_field(p, k);
            for (Code a = 0; a < f->size(); ++a) CHECK(f->parse(f->format(a)) == a);
        }
        const FieldPtr f4 = make_field(2, 2);
        CHECK(f4->format(3) == "(t+1)");
        CHECK(f4->parse("(t+1)") == 3);
        CHECK(make_field(3, 1)->format(2) == "2");
    }

    TEST_CASE("construction guards") {
        CHECK_THROWS_AS(make_field(4, 1), std::invalid_argument);
        CHECK_THROWS_AS(make_field(1, 1), std::invalid_argument);
        CHECK_THROWS_AS(make_field(2, 0), std::invalid_argument);
        CHECK_THROWS_AS(make_field(2, 21), BudgetExceeded);
        CHECK_NOTHROW(make_field(2, 20));
        CHECK(parse_field("3^2")->size() == 9);
        CHECK(parse_field("7")->size() == 7);
        CHECK_THROWS_AS(parse_field("x^2"), std::invalid_argument);
        CHECK_THROWS_AS(parse_field("6^1"), std::invalid_argument);
        CHECK(enumerate_field(*make_field(2, 2)) == std::vector<Code>{0, 1, 2, 3});
    }

    TEST_CASE("checked elements reject mixed fields and zero division") {
        const FieldPtr f9 = make_field(3, 2), f5 = make_field(5, 1);
        const FieldElem a(f9, 4), b(f9, 7), c(f5, 2);
        CHECK((a * b).code() == f9->mul(4, 7));
        CHECK((a - a).is_zero());
        CHECK((a / b * b) == a);
        CHECK(a.pow(8) == FieldElem::one(f9));
        CHECK(a.frobenius() == a.pow(3));
        CHECK_THROWS_AS(a + c, std::invalid_argument);
        CHECK_THROWS_AS(FieldElem::zero(f9).inv(), std::domain_error);
        CHECK_THROWS_AS(a / FieldElem::zero(f9), std::domain_error);
        CHECK_THROWS_AS(FieldElem(f5, 5), std::invalid_argument);
        CHECK(to_string(FieldElem(make_field(2, 2), 2)) == "(t)");
        // Separately constructed copies of one field interoperate.
        CHECK_NOTHROW(FieldElem(make_field(3, 2), 1) + a);
    }
}
