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

#include "pcurve/plane.hpp"

#include <stdexcept>

namespace pcurve {

std::array<Code, 2> ProjPoint::affine() const noexcept {
    const int c = chart();
    std::array<Code, 2> out{};
    int n = 0;
    for (int v = 0; v < 3; ++v)
        if (v != c) out[n++] = coords[v];
    return out;
}

ProjPoint normalize(const Field& field, const std::array<Code, 3>& v) {
    for (int i = 0; i < 3; ++i) {
        if (v[i] == 0) continue;
        const Code s = field.inv(v[i]);
        return {{field.mul(v[0], s), field.mul(v[1], s), field.mul(v[2], s)}};
    }
    throw std::invalid_argument("the zero vector is not a projective point");
}

std::string to_string(const ProjPoint& p, const Field& field) {
    return "[" + field.format(p.coords[0]) + ":" + field.format(p.coords[1]) + ":" + field.format(p.coords[2]) + "]";
}

ProjPoint parse_point(const Field& field, const std::string& text) {
    if (text.size() < 2 || text.front() != '[' || text.back() != ']') {
        throw std::invalid_argument("malformed point '" + text + "'");
    }
    std::array<Code, 3> v{};
    std::size_t start = 1;
    for (int i = 0; i < 3; ++i) {
        const auto end = i < 2 ? text.find(':', start) : text.size() - 1;
        if (end == std::string::npos) throw std::invalid_argument("malformed point '" + text + "'");
        v[i] = field.parse(text.substr(start, end - start));
        start = end + 1;
    }
    return normalize(field, v);
}

std::vector<ProjPoint> enumerate_p2(const Field& field) {
    const Code q = field.size();
    std::vector<ProjPoint> out;
    out.reserve(std::size_t{q} * q + q + 1);
    out.push_back({{0, 0, 1}});
    for (Code b = 0; b < q; ++b) out.push_back({{0, 1, b}});
    for (Code a = 0; a < q; ++a)
        for (Code b = 0; b < q; ++b) out.push_back({{1, a, b}});
    return out;
}

ProjPoint frobenius(const ProjPoint& p, const Field& ext, std::uint64_t q) {
    return {{ext.pow(p.coords[0], q), ext.pow(p.coords[1], q), ext.pow(p.coords[2], q)}};
}

namespace {

// Value and chart partials of one monomial at a point with chart coordinate 1.
std::array<Code, 3> monomial_jet(const Field& k, const std::array<int, 3>& e, const ProjPoint& p) {
    const int chart = p.chart();
    auto mono = [&](std::array<int, 3> ex) {
        Code r = 1;
        for (int v = 0; v < 3; ++v)
            for (int i = 0; i < ex[v]; ++i) r = k.mul(r, p.coords[v]);
        return r;
    };
    std::array<Code, 3> out{mono(e), 0, 0};
    int slot = 1;
    for (int v = 0; v < 3; ++v) {
        if (v == chart) continue;
        if (e[v] > 0) {
            auto ex = e;
            --ex[v];
            out[slot] = k.mul(k.from_int(e[v]), mono(ex));
        }
        ++slot;
    }
    return out;
}

}  // namespace

Jet jet_at(const TernaryForm& f, const ProjPoint& p) { return jet_at(f, p, Embedding(f.field(), f.field())); }

Jet jet_at(const TernaryForm& f, const ProjPoint& p, const Embedding& emb) {
    const Field& k = emb.ext();
    const auto mons = monomials(f.degree());
    Jet out;
    for (std::size_t j = 0; j < mons.size(); ++j) {
        const Code c = f.coeffs()[j];
        if (c == 0) continue;
        const auto mj = monomial_jet(k, mons[j], p);
        const Code ce = emb(c);
        out.value = k.add(out.value, k.mul(ce, mj[0]));
        out.dx = k.add(out.dx, k.mul(ce, mj[1]));
        out.dy = k.add(out.dy, k.mul(ce, mj[2]));
    }
    return out;
}

std::uint64_t point_count(const TernaryForm& f, int e, std::uint64_t field_limit) {
    if (f.is_zero()) throw std::invalid_argument("point count of the zero form");
    if (e < 1) throw std::invalid_argument("extension degree must be positive");
    const auto& d = f.field()->desc();
    const FieldPtr ext = e == 1 ? f.field() : make_field(d.p, static_cast<std::int64_t>(d.k) * e, field_limit);
    const Embedding emb(f.field(), ext);
    std::uint64_t count = 0;
    for (const auto& p : enumerate_p2(*ext)) {
        if (evaluate(f, p.coords, emb) == 0) ++count;
    }
    return count;
}

Integer p2_point_count(std::uint64_t q, int e) {
    const Integer qe = ipow(q, static_cast<std::uint64_t>(e));
    return qe * qe + qe + 1;
}

Integer closed_point_count(std::uint64_t q, int e) {
    if (e < 1) throw std::invalid_argument("closed point degree must be positive");
    auto mobius = [](int n) {
        int result = 1;
        for (int f = 2; f * f <= n; ++f) {
            if (n % f == 0) {
                n /= f;
                if (n % f == 0) return 0;
                result = -result;
            }
        }
        if (n > 1) result = -result;
        return result;
    };
    Integer sum = 0;
    for (int j = 1; j <= e; ++j) {
        if (e % j != 0) continue;
        const int mu = mobius(e / j);
        if (mu != 0) sum += mu * p2_point_count(q, j);
    }
    return sum / e;
}

JetTable::JetTable(int d, std::vector<ProjPoint> points, Embedding emb)
    : d_(d), width_(monomial_count(d)), points_(std::move(points)), emb_(std::move(emb)) {
    const auto mons = monomials(d);
    rows_.resize(points_.size() * 3 * width_);
    for (std::size_t i = 0; i < points_.size(); ++i) {
        for (std::size_t j = 0; j < width_; ++j) {
            const auto mj = monomial_jet(emb_.ext(), mons[j], points_[i]);
            for (int w = 0; w < 3; ++w) rows_[(i * 3 + static_cast<std::size_t>(w)) * width_ + j] = mj[w];
        }
    }
}

JetTable JetTable::rational(const FieldPtr& field, int d) {
    return JetTable(d, enumerate_p2(*field), Embedding(field, field));
}

std::vector<Code> JetTable::embed_coeffs(const TernaryForm& f) const {
    if (f.degree() != d_) throw std::invalid_argument("form degree does not match jet table");
    if (!(f.field()->desc() == emb_.base().desc())) throw std::invalid_argument("form field does not match jet table");
    std::vector<Code> out(width_);
    for (std::size_t j = 0; j < width_; ++j) out[j] = emb_(f.coeffs()[j]);
    return out;
}

}  // namespace pcurve
