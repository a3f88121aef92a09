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

#include "pcurve/sieve.hpp"

#include <algorithm>
#include <set>

#include "pcurve/digest.hpp"

namespace pcurve {

ZConfig::ZConfig(std::vector<ZEntry> entries) : entries_(std::move(entries)) {
    std::set<ProjPoint> seen;
    for (const auto& e : entries_) {
        if (e.order != 1 && e.order != 2) throw std::invalid_argument("jet order must be 1 or 2");
        if (!seen.insert(e.point).second) throw std::invalid_argument("repeated point in jet scheme");
    }
}

ZConfig ZConfig::all_points(const Field& field, int order) {
    std::vector<ZEntry> out;
    for (const auto& p : enumerate_p2(field)) out.push_back({p, order});
    return ZConfig(std::move(out));
}

std::size_t ZConfig::dim() const noexcept {
    std::size_t n = 0;
    for (const auto& e : entries_) n += e.order == 1 ? 1 : 3;
    return n;
}

std::string ZConfig::describe(const Field& field) const {
    std::string s;
    for (const auto& e : entries_) {
        if (!s.empty()) s += ';';
        s += to_string(e.point, field) + "/" + std::to_string(e.order);
    }
    return s;
}

std::string ZConfig::digest(const Field& field) const { return fnv1a64_hex(describe(field)); }

JetMatrix jet_matrix(const FieldPtr& field, int d, const ZConfig& z) {
    if (d < 1) throw std::invalid_argument("degree must be positive");
    std::vector<ProjPoint> pts;
    for (const auto& e : z.entries()) pts.push_back(e.point);
    const JetTable table(d, std::move(pts), Embedding(field, field));
    JetMatrix m(static_cast<Eigen::Index>(z.dim()), static_cast<Eigen::Index>(table.width()));
    Eigen::Index r = 0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        const int rows = z.entries()[i].order == 1 ? 1 : 3;
        for (int w = 0; w < rows; ++w, ++r) {
            const auto src = table.row(i, w);
            for (std::size_t j = 0; j < src.size(); ++j) m(r, static_cast<Eigen::Index>(j)) = src[j];
        }
    }
    return m;
}

std::size_t rank(JetMatrix m, const Field& field) {
    std::size_t rk = 0;
    const Eigen::Index rows = m.rows(), cols = m.cols();
    for (Eigen::Index c = 0; c < cols && static_cast<Eigen::Index>(rk) < rows; ++c) {
        const auto top = static_cast<Eigen::Index>(rk);
        Eigen::Index piv = top;
        while (piv < rows && m(piv, c) == 0) ++piv;
        if (piv == rows) continue;
        if (piv != top) m.row(piv).swap(m.row(top));
        const Code inv = field.inv(m(top, c));
        for (Eigen::Index j = c; j < cols; ++j) m(top, j) = field.mul(m(top, j), inv);
        for (Eigen::Index i = top + 1; i < rows; ++i) {
            const Code f = m(i, c);
            if (f == 0) continue;
            for (Eigen::Index j = c; j < cols; ++j) m(i, j) = field.sub(m(i, j), field.mul(f, m(top, j)));
        }
        ++rk;
    }
    return rk;
}

const char* to_string(PointConstraint c) {
    switch (c) {
        case PointConstraint::unconstrained: return "unconstrained";
        case PointConstraint::value_zero: return "value_zero";
        case PointConstraint::value_nonzero: return "value_nonzero";
        case PointConstraint::jet_zero: return "jet_zero";
        case PointConstraint::jet_nonzero: return "jet_nonzero";
        case PointConstraint::on_curve_smooth: return "on_curve_smooth";
    }
    return "unknown";
}

PointConstraint parse_point_constraint(const std::string& s) {
    for (const auto c : {PointConstraint::unconstrained, PointConstraint::value_zero, PointConstraint::value_nonzero,
                         PointConstraint::jet_zero, PointConstraint::jet_nonzero, PointConstraint::on_curve_smooth}) {
        if (s == to_string(c)) return c;
    }
    throw std::invalid_argument("unknown point constraint '" + s + "'");
}

Integer constraint_cardinality(PointConstraint c, int order, std::uint64_t q) {
    const Integer Q = q;
    if (order == 1) {
        switch (c) {
            case PointConstraint::unconstrained: return Q;
            case PointConstraint::value_zero: return 1;
            case PointConstraint::value_nonzero: return Q - 1;
            default: throw std::invalid_argument(std::string(to_string(c)) + " needs an order-2 point");
        }
    }
    if (order != 2) throw std::invalid_argument("jet order must be 1 or 2");
    switch (c) {
        case PointConstraint::unconstrained: return Q * Q * Q;
        case PointConstraint::value_zero: return Q * Q;
        case PointConstraint::value_nonzero: return (Q - 1) * Q * Q;
        case PointConstraint::jet_zero: return 1;
        case PointConstraint::jet_nonzero: return Q * Q * Q - 1;
        case PointConstraint::on_curve_smooth: return Q * Q - 1;
    }
    throw std::invalid_argument("unknown constraint");
}

Integer cardinality(const TargetSet& t, const ZConfig& z, std::uint64_t q) {
    if (t.constraints.size() != z.size()) throw std::invalid_argument("target set does not match jet scheme");
    Integer n = 1;
    for (std::size_t i = 0; i < z.size(); ++i) n *= constraint_cardinality(t.constraints[i], z.entries()[i].order, q);
    return n;
}

NotSurjective::NotSurjective(std::size_t r, std::size_t n)
    : std::runtime_error("jet map not surjective: rank " + std::to_string(r) + " < " + std::to_string(n)),
      rank(r),
      dim(n) {}

SurjectivityReport certify(const FieldPtr& field, int d, const ZConfig& z) {
    SurjectivityReport r;
    r.d = d;
    r.digest = z.digest(*field);
    r.dim = z.dim();
    r.rank = z.empty() ? 0 : rank(jet_matrix(field, d, z), *field);
    r.surjective = r.rank == r.dim;
    return r;
}

Rational fiber_density(const FieldPtr& field, int d, const ZConfig& z, const TargetSet& t) {
    const Integer size = cardinality(t, z, field->size());
    const auto cert = certify(field, d, z);
    if (!cert.surjective) throw NotSurjective(cert.rank, cert.dim);
    return Rational(size, ipow(field->size(), z.dim()));
}

std::optional<int> smallest_surjective_degree(const FieldPtr& field, const ZConfig& z, int max_d) {
    for (int d = 1; d <= max_d; ++d)
        if (certify(field, d, z).surjective) return d;
    return std::nullopt;
}

Integer closed_points_outside(std::uint64_t q, int e, const ZConfig& z) {
    Integer n = closed_point_count(q, e);
    if (e == 1) n -= z.size();
    return n;
}

Integer p_dr_degree_bound(std::uint64_t q, int r, const ZConfig& z) {
    Integer s = 0;
    for (int e = 1; e < r; ++e) s += closed_points_outside(q, e, z);
    return 3 * Integer(r) * s + Integer(z.dim()) - 1;
}

Rational p_dr_formula(const FieldPtr& field, int d, int r, const ZConfig& z, const TargetSet& t) {
    if (r < 0) throw std::invalid_argument("r must be nonnegative");
    const std::uint64_t q = field->size();
    const Integer bound = p_dr_degree_bound(q, r, z);
    if (Integer(d) < bound) {
        throw std::invalid_argument("degree " + std::to_string(d) + " below the required " + bound.str());
    }
    Rational out(cardinality(t, z, q), ipow(q, z.dim()));
    for (int e = 1; e < r; ++e) {
        const Rational factor = 1 - rpow(Rational(q), -3 * e);
        const Integer n = closed_points_outside(q, e, z);
        out *= rpow(factor, static_cast<std::int64_t>(n));
    }
    return out;
}

Rational zeta_p2(std::uint64_t q, int s) {
    if (s < 3) throw std::invalid_argument("zeta of P^2 is evaluated only at s >= 3");
    const Rational Q(q);
    return 1 / ((1 - rpow(Q, -s)) * (1 - rpow(Q, 1 - s)) * (1 - rpow(Q, 2 - s)));
}

Rational zeta_u(std::uint64_t q, int s, const ZConfig& z) {
    const Rational factor = 1 - rpow(Rational(q), -s);
    return zeta_p2(q, s) * rpow(factor, static_cast<std::int64_t>(z.size()));
}

TailBounds tail_bounds(std::uint64_t q, std::uint32_t p, int d, int r) {
    if (d < 1 || r < 1) throw std::invalid_argument("tail bounds need d, r >= 1");
    const Rational Q(q);
    TailBounds b;
    b.medium = 2 * rpow(Q, -r) / (1 - 1 / Q);
    const std::int64_t a = d / static_cast<std::int64_t>(p) + 1;
    std::int64_t m = a;
    if (3 * a > d) {
        m = d / 3;
        b.high_exponent_rounded = d % 3 != 0;
    }
    const std::int64_t dm1 = d - 1;
    b.high = 3 * Rational(dm1 * dm1) * rpow(Q, -m) +
             3 * Rational(d) * rpow(Q, -(dm1 / static_cast<std::int64_t>(p)) - 1);
    return b;
}

FiberDistribution point_count_distribution_by_fibers(const FieldPtr& field, int d) {
    FiberDistribution out;
    out.q = field->size();
    out.d = d;
    out.total = ipow(out.q, monomial_count(d));
    const ZConfig z = ZConfig::all_points(*field, 1);
    const auto cert = certify(field, d, z);
    out.dim = cert.dim;
    out.rank = cert.rank;
    out.surjective = cert.surjective;
    if (!out.surjective) return out;

    // Fibers all have size q^(N - dim); the jets with exactly t zero values are
    // counted point by point as coefficients of prod (z + (q - 1)).
    std::vector<Integer> jets{1};
    const Integer on = constraint_cardinality(PointConstraint::value_zero, 1, out.q);
    const Integer off = constraint_cardinality(PointConstraint::value_nonzero, 1, out.q);
    for (std::size_t i = 0; i < z.size(); ++i) {
        std::vector<Integer> next(jets.size() + 1, 0);
        for (std::size_t t = 0; t < jets.size(); ++t) {
            next[t] += jets[t] * off;
            next[t + 1] += jets[t] * on;
        }
        jets = std::move(next);
    }
    const Integer fiber = ipow(out.q, monomial_count(d) - z.dim());
    out.counts.reserve(jets.size());
    for (const auto& j : jets) out.counts.push_back(j * fiber);
    return out;
}

}  // namespace pcurve
