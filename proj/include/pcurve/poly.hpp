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

#ifndef PCURVE_POLY_HPP
#define PCURVE_POLY_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pcurve/gf.hpp"

namespace pcurve {

enum class Var : int { X = 0, Y = 1, Z = 2 };

/// Number of monomials X^a Y^b Z^c with a + b + c = d.
constexpr std::size_t monomial_count(int d) noexcept {
    return d < 0 ? 0 : static_cast<std::size_t>(d + 1) * static_cast<std::size_t>(d + 2) / 2;
}

/// Position of X^a Y^b Z^(d-a-b) in graded-lexicographic order, X > Y > Z.
constexpr std::size_t monomial_index(int d, int a, int b) noexcept {
    const auto r = static_cast<std::size_t>(d - a);
    return r * (r + 1) / 2 + (r - static_cast<std::size_t>(b));
}

/// Exponent triples in storage order.
std::vector<std::array<int, 3>> monomials(int d);

/// A homogeneous polynomial of degree d in X, Y, Z over F_q.
class TernaryForm {
public:
    TernaryForm(FieldPtr field, int d);
    TernaryForm(FieldPtr field, int d, std::vector<Code> coeffs);

    /// Inverse of index(): digit j (base q, least significant first) is the
    /// code of the j-th monomial coefficient.
    static TernaryForm from_index(FieldPtr field, int d, std::uint64_t index);

    const FieldPtr& field() const noexcept { return field_; }
    int degree() const noexcept { return d_; }
    std::span<const Code> coeffs() const noexcept { return coeffs_; }
    Code coeff(int a, int b, int c) const;
    void set_coeff(int a, int b, int c, Code value);
    bool is_zero() const noexcept;

    /// Canonical base-q integer encoding of the coefficient sequence.
    std::uint64_t index() const;

    TernaryForm scaled(Code c) const;

    friend bool operator==(const TernaryForm& a, const TernaryForm& b);

private:
    FieldPtr field_;
    int d_;
    std::vector<Code> coeffs_;
};

/// Single monomial c * X^a Y^b Z^c.
TernaryForm monomial_form(FieldPtr field, int a, int b, int c, Code coeff = 1);

TernaryForm operator+(const TernaryForm& f, const TernaryForm& g);
TernaryForm operator*(const TernaryForm& f, const TernaryForm& g);
/// Multiply by one of the variables (degree goes up by one).
TernaryForm times_var(const TernaryForm& f, Var v);

/// Value at a coordinate triple over the form's own field.
Code evaluate(const TernaryForm& f, const std::array<Code, 3>& v);
/// Value at a coordinate triple over an extension, coefficients mapped by emb.
Code evaluate(const TernaryForm& f, const std::array<Code, 3>& v, const Embedding& emb);

/// Formal partial derivative (exponents reduced mod p).
TernaryForm partial(const TernaryForm& f, Var v);

std::string to_string(const TernaryForm& f);
TernaryForm parse_form(FieldPtr field, int d, std::string_view text);

/// Exponent pair plus coefficient of a bivariate term.
struct Term {
    std::uint16_t ex = 0;
    std::uint16_t ey = 0;
    Code c = 0;
};

/// Graded reverse lexicographic order on x^a y^b (x > y).
constexpr bool grevlex_greater(std::uint16_t ax, std::uint16_t ay, std::uint16_t bx, std::uint16_t by) noexcept {
    const int da = ax + ay, db = bx + by;
    if (da != db) return da > db;
    return ay < by;
}

/// Sparse polynomial in two variables, terms kept in decreasing grevlex order
/// with no zero coefficients.
class AffinePoly {
public:
    explicit AffinePoly(FieldPtr field) : field_(std::move(field)) {}
    AffinePoly(FieldPtr field, std::vector<Term> terms);

    const FieldPtr& field() const noexcept { return field_; }
    const std::vector<Term>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    /// -1 for the zero polynomial.
    int total_degree() const noexcept;
    /// Largest exponent of the given variable (0 = x, 1 = y); -1 if zero.
    int degree_in(int var) const noexcept;
    const Term& leading() const { return terms_.front(); }
    bool is_constant() const noexcept { return terms_.size() == 1 && terms_[0].ex == 0 && terms_[0].ey == 0; }

    Code eval(Code x, Code y) const;
    Code eval(Code x, Code y, const Embedding& emb) const;
    AffinePoly derivative(int var) const;

    friend AffinePoly operator+(const AffinePoly& a, const AffinePoly& b);
    friend AffinePoly operator-(const AffinePoly& a, const AffinePoly& b);
    friend AffinePoly operator*(const AffinePoly& a, const AffinePoly& b);
    friend bool operator==(const AffinePoly& a, const AffinePoly& b);

private:
    FieldPtr field_;
    std::vector<Term> terms_;
};

/// Set the chart variable to 1. The remaining variables become (x, y) in
/// their X, Y, Z order: chart 2 (Z) gives x = X, y = Y; chart 1 gives x = X,
/// y = Z; chart 0 gives x = Y, y = Z.
AffinePoly dehomogenize(const TernaryForm& f, int chart);
/// Degree-d homogenization in the given chart; requires total degree <= d.
TernaryForm homogenize(const AffinePoly& f, int chart, int d);

/// Dense univariate polynomial over F_q, coefficients low-to-high, trimmed.
class UPoly {
public:
    explicit UPoly(FieldPtr field) : field_(std::move(field)) {}
    UPoly(FieldPtr field, std::vector<Code> coeffs);
    static UPoly constant(FieldPtr field, Code c);

    const FieldPtr& field() const noexcept { return field_; }
    const std::vector<Code>& coeffs() const noexcept { return c_; }
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    Code lead() const noexcept { return c_.empty() ? 0 : c_.back(); }
    Code eval(Code x) const;
    Code eval(Code x, const Embedding& emb) const;
    UPoly monic() const;

    friend UPoly operator+(const UPoly& a, const UPoly& b);
    friend UPoly operator-(const UPoly& a, const UPoly& b);
    friend UPoly operator*(const UPoly& a, const UPoly& b);
    friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

private:
    void trim();

    FieldPtr field_;
    std::vector<Code> c_;
};

/// Quotient and remainder; divisor must be nonzero.
std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
/// Monic gcd (zero when both inputs are zero).
UPoly gcd(const UPoly& a, const UPoly& b);

/// Determinant of the Sylvester matrix of f and g (coefficients low-to-high,
/// formal degrees size - 1) over an integral domain, by fraction-free
/// (Bareiss) elimination. Ring supplies zero/one/is_zero/add/sub/mul/neg and
/// exact_div.
template <class Ring>
typename Ring::value_type sylvester_determinant(const Ring& ring, const std::vector<typename Ring::value_type>& f,
                                                const std::vector<typename Ring::value_type>& g) {
    using T = typename Ring::value_type;
    const std::size_t m = f.size() - 1, n = g.size() - 1, size = m + n;
    if (size == 0) return ring.one();
    std::vector<std::vector<T>> mat(size, std::vector<T>(size, ring.zero()));
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t i = 0; i <= m; ++i) mat[r][r + i] = f[m - i];
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t i = 0; i <= n; ++i) mat[n + r][r + i] = g[n - i];

    bool negate = false;
    T prev = ring.one();
    for (std::size_t k = 0; k + 1 < size; ++k) {
        if (ring.is_zero(mat[k][k])) {
            std::size_t swap_row = k + 1;
            while (swap_row < size && ring.is_zero(mat[swap_row][k])) ++swap_row;
            if (swap_row == size) return ring.zero();
            std::swap(mat[k], mat[swap_row]);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < size; ++i) {
            for (std::size_t j = k + 1; j < size; ++j) {
                T num = ring.sub(ring.mul(mat[i][j], mat[k][k]), ring.mul(mat[i][k], mat[k][j]));
                mat[i][j] = ring.exact_div(num, prev);
            }
            mat[i][k] = ring.zero();
        }
        prev = mat[k][k];
    }
    T det = mat[size - 1][size - 1];
    return negate ? ring.neg(det) : det;
}

/// F_q as a Ring for sylvester_determinant.
struct ScalarRing {
    using value_type = Code;
    const Field* field;
    Code zero() const { return 0; }
    Code one() const { return 1; }
    bool is_zero(Code a) const { return a == 0; }
    Code add(Code a, Code b) const { return field->add(a, b); }
    Code sub(Code a, Code b) const { return field->sub(a, b); }
    Code mul(Code a, Code b) const { return field->mul(a, b); }
    Code neg(Code a) const { return field->neg(a); }
    Code exact_div(Code a, Code b) const { return field->div(a, b); }
};

/// F_q[x] as a Ring for sylvester_determinant.
struct UPolyRing {
    using value_type = UPoly;
    FieldPtr field;
    UPoly zero() const { return UPoly(field); }
    UPoly one() const { return UPoly::constant(field, 1); }
    bool is_zero(const UPoly& a) const { return a.is_zero(); }
    UPoly add(const UPoly& a, const UPoly& b) const { return a + b; }
    UPoly sub(const UPoly& a, const UPoly& b) const { return a - b; }
    UPoly mul(const UPoly& a, const UPoly& b) const { return a * b; }
    UPoly neg(const UPoly& a) const { return UPoly(field) - a; }
    UPoly exact_div(const UPoly& a, const UPoly& b) const;
};

/// Resultant of two univariate polynomials over F_q. Throws if both are zero;
/// returns 0 if exactly one is zero.
Code resultant(const UPoly& f, const UPoly& g);

/// Outcome of eliminating y from two bivariate polynomials.
struct YResultant {
    UPoly value;
    /// The resultant is unusable as a certificate: it vanishes identically,
    /// an input is zero, or neither input involves y.
    bool degenerate = false;
    /// The y-leading coefficients of f and g have a common root, so the
    /// resultant vanishes there whether or not the fibers share a root.
    bool leading_coefficients_share_root = false;
};

/// Res_y(f, g) as a polynomial in x. Throws if both inputs are zero.
YResultant resultant_y(const AffinePoly& f, const AffinePoly& g);

/// True iff the polynomials have no common zero over the algebraic closure,
/// i.e. the reduced grevlex Groebner basis is {1}. Throws if every generator
/// is zero.
bool ideal_trivial(std::span<const AffinePoly> generators);

/// Groebner basis (grevlex, monic, not reduced) of the generators.
std::vector<AffinePoly> groebner_basis(std::span<const AffinePoly> generators);

}  // namespace pcurve

#endif  // PCURVE_POLY_HPP
