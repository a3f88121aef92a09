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

#include "pcurve/plane.hpp"
#include "support.hpp"

using namespace pcurve;
using namespace pcurve::testing;

namespace {

// Brute-force count of Frobenius orbits of exact size e on P^2(F_{q^e}).
std::uint64_t orbits_of_exact_size(std::uint32_t p, std::uint32_t k, int e) {
    const FieldPtr ext = make_field(p, static_cast<std::int64_t>(k) * e);
    const std::uint64_t q = std::uint64_t{1} * make_field(p, k)->size();
    std::uint64_t n = 0;
    for (const auto& pt : enumerate_p2(*ext)) {
        ProjPoint cur = pt;
        int size = 0;
        do {
            cur = frobenius(cur, *ext, q);
            ++size;
        } while (!(cur == pt));
        n += size == e;
    }
    return n / static_cast<std::uint64_t>(e);
}

}  // namespace

TEST_SUITE("plane") {
    TEST_CASE("P^2 enumeration is complete, normalized and sorted") {
        for (auto [p, k] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 2}, {5, 1}, {3, 2}}) {
            const FieldPtr f = make_field(p, k);
            const auto pts = enumerate_p2(*f);
            const std::uint64_t q = f->size();
            CHECK(pts.size() == q * q + q + 1);
            CHECK(pts.front() == ProjPoint{{0, 0, 1}});
            CHECK(std::is_sorted(pts.begin(), pts.end()));
            CHECK(std::set<ProjPoint>(pts.begin(), pts.end()).size() == pts.size());
            for (const auto& pt : pts) {
                CHECK(pt.coords[pt.chart()] == 1);
                for (int c = 0; c < pt.chart(); ++c) CHECK(pt.coords[c] == 0);
                CHECK(parse_point(*f, to_string(pt, *f)) == pt);
                const Code s = random_nonzero(*f);
                CHECK(normalize(*f, {f->mul(s, pt.coords[0]), f->mul(s, pt.coords[1]), f->mul(s, pt.coords[2])}) == pt);
            }
        }
        CHECK_THROWS(normalize(*make_field(2, 1), {0, 0, 0}));
        CHECK_THROWS(parse_point(*make_field(2, 1), "[1:0]"));
    }

    TEST_CASE("jets agree with partial derivatives in the point's chart") {
        const FieldPtr k = make_field(3, 2);
        const std::array<Var, 3> vars{Var::X, Var::Y, Var::Z};
        for (int trial = 0; trial < 100; ++trial) {
            const int d = 1 + static_cast<int>(rng()() % 5);
            const TernaryForm f = random_form(k, d);
            const auto pts = enumerate_p2(*k);
            const ProjPoint& pt = pts[rng()() % pts.size()];
            const Jet j = jet_at(f, pt);
            CHECK(j.value == evaluate(f, pt.coords));
            std::vector<Code> ds;
            for (int v = 0; v < 3; ++v)
                if (v != pt.chart()) ds.push_back(evaluate(partial(f, vars[v]), pt.coords));
            CHECK(j.dx == ds[0]);
            CHECK(j.dy == ds[1]);
        }
    }

    TEST_CASE("jet table rows reproduce jet_at") {
        const FieldPtr k = make_field(2, 1), ext = make_field(2, 3);
        const JetTable table(3, enumerate_p2(*ext), Embedding(k, ext));
        for (int trial = 0; trial < 30; ++trial) {
            const TernaryForm f = random_form(k, 3);
            const auto c = table.embed_coeffs(f);
            for (std::size_t i = 0; i < table.size(); ++i) CHECK(table.jet(i, c) == jet_at(f, table.point(i), table.embedding()));
        }
        CHECK_THROWS_AS(table.embed_coeffs(random_form(k, 2)), std::invalid_argument);
        CHECK_THROWS_AS(table.embed_coeffs(random_form(make_field(3, 1), 3)), std::invalid_argument);
    }

    TEST_CASE("point counts of simple curves") {
        for (auto [p, k] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {5, 1}, {2, 2}, {7, 1}}) {
            const FieldPtr f = make_field(p, k);
            const std::uint64_t q = f->size();
            CAPTURE(q);
            CHECK(point_count(parse_form(f, 1, "X + Y + Z")) == q + 1);
            CHECK(point_count(parse_form(f, 3, "XYZ")) == 3 * q);
            CHECK(point_count(parse_form(f, 2, "X^2 + YZ")) == q + 1);
            CHECK(point_count(parse_form(f, 1, "Z"), 2) == q * q + 1);
            CHECK(point_count(parse_form(f, 2, "XY"), 1) == 2 * q + 1);
        }
        // A supersingular cubic over F_2 has 3 points over F_2 and 9 over F_4.
        const FieldPtr f2 = make_field(2, 1);
        const TernaryForm e = parse_form(f2, 3, "Y^2Z + YZ^2 + X^3");
        CHECK(point_count(e) == 3);
        CHECK(point_count(e, 2) == 9);
        CHECK_THROWS(point_count(TernaryForm(f2, 3)));
    }

    TEST_CASE("closed point counts match Frobenius orbits and the divisor sum") {
        for (std::uint64_t q : {2, 3, 4, 5, 7}) {
            for (int n = 1; n <= 8; ++n) {
                Integer sum = 0;
                for (int e = 1; e <= n; ++e)
                    if (n % e == 0) sum += e * closed_point_count(q, e);
                CHECK(sum == p2_point_count(q, n));
            }
        }
        CHECK(closed_point_count(2, 1) == 7);
        CHECK(closed_point_count(2, 2) == 7);
        CHECK(closed_point_count(2, 3) == 22);
        for (int e = 1; e <= 4; ++e) CHECK(closed_point_count(2, e) == orbits_of_exact_size(2, 1, e));
        for (int e = 1; e <= 3; ++e) CHECK(closed_point_count(3, e) == orbits_of_exact_size(3, 1, e));
        CHECK(closed_point_count(4, 2) == orbits_of_exact_size(2, 2, 2));
        CHECK_THROWS(closed_point_count(2, 0));
    }
}
