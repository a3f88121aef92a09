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

#ifndef PCURVE_PLANE_HPP
#define PCURVE_PLANE_HPP

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pcurve/exact.hpp"
#include "pcurve/gf.hpp"
#include "pcurve/poly.hpp"

namespace pcurve {

/// Point of P^2 with its first nonzero coordinate equal to 1.
struct ProjPoint {
    std::array<Code, 3> coords{0, 0, 1};

    /// Index of the first nonzero coordinate; also the point's chart.
    int chart() const noexcept { return coords[0] != 0 ? 0 : coords[1] != 0 ? 1 : 2; }
    /// The two coordinates other than the chart coordinate, in X, Y, Z order.
    std::array<Code, 2> affine() const noexcept;

    friend auto operator<=>(const ProjPoint&, const ProjPoint&) = default;
};

/// Scale a nonzero triple so that its first nonzero entry is 1.
ProjPoint normalize(const Field& field, const std::array<Code, 3>& v);

/// "[a:b:c]"
std::string to_string(const ProjPoint& p, const Field& field);
ProjPoint parse_point(const Field& field, const std::string& text);

/// P^2(F_q) in lexicographic order of normalized coordinates; [0:0:1] first.
std::vector<ProjPoint> enumerate_p2(const Field& field);

/// Componentwise Frobenius x -> x^q (q = size of the base field) on a point
/// over an extension.
ProjPoint frobenius(const ProjPoint& p, const Field& ext, std::uint64_t q);

/// Value and the two chart partials of a form at a point, in the point's chart.
struct Jet {
    Code value = 0;
    Code dx = 0;
    Code dy = 0;

    bool is_zero() const noexcept { return value == 0 && dx == 0 && dy == 0; }
    friend bool operator==(const Jet&, const Jet&) = default;
};

Jet jet_at(const TernaryForm& f, const ProjPoint& p);
/// Jet at a point over the extension emb.ext().
Jet jet_at(const TernaryForm& f, const ProjPoint& p, const Embedding& emb);

/// Number of points of P^2(F_{q^e}) on the curve f = 0. Throws on the zero form.
std::uint64_t point_count(const TernaryForm& f, int e = 1, std::uint64_t field_limit = kDefaultFieldLimit);

/// Number of closed points of degree e of P^2 over F_q (Frobenius orbits of size e).
Integer closed_point_count(std::uint64_t q, int e);

/// Number of points of P^2(F_{q^e}), q^{2e} + q^e + 1.
Integer p2_point_count(std::uint64_t q, int e);

/// Per-point, per-monomial jet rows for forms of degree d: for every point,
/// the value and the two chart partial derivatives of each monomial, over
/// the extension field of the embedding. Evaluating a form at all points is
/// then a dot product against the embedded coefficient vector.
class JetTable {
public:
    JetTable(int d, std::vector<ProjPoint> points, Embedding emb);
    /// All points of P^2 over the form field itself.
    static JetTable rational(const FieldPtr& field, int d);

    int degree() const noexcept { return d_; }
    std::size_t size() const noexcept { return points_.size(); }
    std::size_t width() const noexcept { return width_; }
    const ProjPoint& point(std::size_t i) const { return points_[i]; }
    const std::vector<ProjPoint>& points() const noexcept { return points_; }
    const Embedding& embedding() const noexcept { return emb_; }

    /// Row 0 = values, 1 = first chart partial, 2 = second chart partial.
    std::span<const Code> row(std::size_t i, int which) const {
        return {rows_.data() + (i * 3 + static_cast<std::size_t>(which)) * width_, width_};
    }

    std::vector<Code> embed_coeffs(const TernaryForm& f) const;
    Code value(std::size_t i, std::span<const Code> ext_coeffs) const { return dot(row(i, 0), ext_coeffs); }
    Jet jet(std::size_t i, std::span<const Code> ext_coeffs) const {
        return {dot(row(i, 0), ext_coeffs), dot(row(i, 1), ext_coeffs), dot(row(i, 2), ext_coeffs)};
    }

private:
    Code dot(std::span<const Code> r, std::span<const Code> c) const {
        const Field& k = emb_.ext();
        Code acc = 0;
        for (std::size_t j = 0; j < width_; ++j) {
            if (c[j] != 0 && r[j] != 0) acc = k.add(acc, k.mul(c[j], r[j]));
        }
        return acc;
    }

    int d_;
    std::size_t width_;
    std::vector<ProjPoint> points_;
    Embedding emb_;
    std::vector<Code> rows_;
};

}  // namespace pcurve

#endif  // PCURVE_PLANE_HPP
