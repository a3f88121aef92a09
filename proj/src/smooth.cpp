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

#include "pcurve/smooth.hpp"

#include <algorithm>
#include <stdexcept>

namespace pcurve {

const char* to_string(DecisionPath p) {
    switch (p) {
        case DecisionPath::rational_point: return "rational_point";
        case DecisionPath::line_at_infinity: return "line_at_infinity";
        case DecisionPath::resultant: return "resultant";
        case DecisionPath::groebner: return "groebner";
    }
    return "unknown";
}

bool is_singular_at(const TernaryForm& f, const ProjPoint& p) {
    if (f.is_zero()) throw std::invalid_argument("singularity test on the zero form");
    return jet_at(f, p).is_zero();
}

bool is_singular_at(const TernaryForm& f, const ProjPoint& p, const Embedding& emb) {
    if (f.is_zero()) throw std::invalid_argument("singularity test on the zero form");
    return jet_at(f, p, emb).is_zero();
}

SmoothnessDecider::SmoothnessDecider(FieldPtr field, int d)
    : field_(std::move(field)), d_(d), rational_(JetTable::rational(field_, d)) {
    if (d < 1) throw std::invalid_argument("curve degree must be positive");
}

SmoothnessVerdict SmoothnessDecider::decide(const TernaryForm& f) const { return decide_impl(f, false); }

SmoothnessVerdict SmoothnessDecider::decide_via_resultant(const TernaryForm& f) const {
    return decide_impl(f, true);
}

namespace {

// F restricted to the line Z = 0 in the chart Y = 1, as a polynomial in x.
UPoly on_line_at_infinity(const TernaryForm& f) {
    const int d = f.degree();
    std::vector<Code> c(static_cast<std::size_t>(d) + 1, 0);
    for (int a = 0; a <= d; ++a) c[a] = f.coeff(a, d - a, 0);
    return UPoly(f.field(), std::move(c));
}

}  // namespace

SmoothnessVerdict SmoothnessDecider::decide_impl(const TernaryForm& f, bool use_resultant) const {
    if (f.is_zero()) throw std::invalid_argument("smoothness test on the zero form");
    if (f.degree() != d_ || !(f.field()->desc() == field_->desc())) {
        throw std::invalid_argument("form does not match the decider's field and degree");
    }

    const auto coeffs = rational_.embed_coeffs(f);
    for (std::size_t i = 0; i < rational_.size(); ++i) {
        if (rational_.value(i, coeffs) != 0) continue;
        if (rational_.jet(i, coeffs).is_zero()) {
            const auto& p = rational_.point(i);
            return {false, SingularWitness{p.chart(), 1, p}, DecisionPath::rational_point};
        }
    }

    // Points [x:1:0]; [1:0:0] is rational and already checked.
    {
        const TernaryForm fx = partial(f, Var::X), fz = partial(f, Var::Z);
        const UPoly g = on_line_at_infinity(f);
        const UPoly gx = on_line_at_infinity(fx);
        const UPoly gz = on_line_at_infinity(fz);
        const UPoly common = gcd(gcd(g, gx), gz);
        if (common.is_zero() || common.degree() > 0) return {false, std::nullopt, DecisionPath::line_at_infinity};
    }

    const AffinePoly a = dehomogenize(f, 2);
    if (a.is_constant()) return {true, std::nullopt, use_resultant ? DecisionPath::resultant : DecisionPath::groebner};
    const AffinePoly ax = a.derivative(0), ay = a.derivative(1);

    if (use_resultant && !ax.is_zero() && !ay.is_zero()) {
        const YResultant r1 = resultant_y(a, ax);
        if (!r1.degenerate) {
            const YResultant r2 = resultant_y(a, ay);
            if (!r2.degenerate && gcd(r1.value, r2.value).degree() == 0) {
                return {true, std::nullopt, DecisionPath::resultant};
            }
        }
    }
    const std::vector<AffinePoly> gens{a, ax, ay};
    return {ideal_trivial(gens), std::nullopt, DecisionPath::groebner};
}

SmoothnessVerdict is_smooth(const TernaryForm& f) { return SmoothnessDecider(f.field(), f.degree()).decide(f); }

bool is_smooth_by_charts(const TernaryForm& f) {
    if (f.is_zero()) throw std::invalid_argument("smoothness test on the zero form");
    for (int chart = 0; chart < 3; ++chart) {
        const AffinePoly a = dehomogenize(f, chart);
        const std::vector<AffinePoly> gens{a, a.derivative(0), a.derivative(1)};
        if (!ideal_trivial(gens)) return false;
    }
    return true;
}

int default_scan_bound(int d) { return std::max(1, (d - 1) * (d - 1)); }

SingularScanner::SingularScanner(FieldPtr field, int d, int max_e, std::uint64_t field_limit)
    : field_(std::move(field)), d_(d), max_e_(max_e) {
    if (max_e < 1) throw std::invalid_argument("scan bound must be positive");
    const auto& desc = field_->desc();
    const std::uint64_t q = field_->size();
    for (int e = 1; e <= max_e; ++e) {
        const FieldPtr ext = e == 1 ? field_ : make_field(desc.p, static_cast<std::int64_t>(desc.k) * e, field_limit);
        std::vector<ProjPoint> reps;
        for (const auto& p : enumerate_p2(*ext)) {
            // keep p iff its Frobenius orbit has size e and p is the orbit minimum
            ProjPoint cur = p;
            bool keep = true;
            int size = 0;
            do {
                cur = frobenius(cur, *ext, q);
                ++size;
                if (cur < p) keep = false;
            } while (!(cur == p) && keep);
            if (keep && size == e) reps.push_back(p);
        }
        tables_.emplace_back(d, std::move(reps), Embedding(field_, ext));
    }
}

std::vector<SingularPoint> SingularScanner::scan(const TernaryForm& f) const {
    if (f.is_zero()) throw std::invalid_argument("singular scan of the zero form");
    std::vector<SingularPoint> out;
    const std::uint64_t q = field_->size();
    for (std::size_t t = 0; t < tables_.size(); ++t) {
        const auto& table = tables_[t];
        const int e = static_cast<int>(t) + 1;
        const auto coeffs = table.embed_coeffs(f);
        for (std::size_t i = 0; i < table.size(); ++i) {
            if (table.value(i, coeffs) != 0 || !table.jet(i, coeffs).is_zero()) continue;
            ProjPoint cur = table.point(i);
            for (int j = 0; j < e; ++j) {
                out.push_back({e, cur});
                cur = frobenius(cur, table.embedding().ext(), q);
            }
        }
    }
    return out;
}

bool SingularScanner::any(const TernaryForm& f) const { return any(f, 1); }

bool SingularScanner::any(const TernaryForm& f, int min_e) const {
    if (f.is_zero()) throw std::invalid_argument("singular scan of the zero form");
    for (std::size_t t = static_cast<std::size_t>(std::max(min_e, 1)) - 1; t < tables_.size(); ++t) {
        const auto& table = tables_[t];
        const auto coeffs = table.embed_coeffs(f);
        for (std::size_t i = 0; i < table.size(); ++i) {
            if (table.value(i, coeffs) == 0 && table.jet(i, coeffs).is_zero()) return true;
        }
    }
    return false;
}

std::vector<SingularPoint> singular_scan_oracle(const TernaryForm& f, int max_e, std::uint64_t field_limit) {
    return SingularScanner(f.field(), f.degree(), max_e, field_limit).scan(f);
}

}  // namespace pcurve
