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

#include "pcurve/poly.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace pcurve {

namespace {

void require_same_field(const FieldPtr& a, const FieldPtr& b) {
    if (a != b && !(a->desc() == b->desc())) throw std::invalid_argument("polynomials over different fields");
}

// Powers v^0..v^d over a field.
std::vector<Code> powers(const Field& f, Code v, int d) {
    std::vector<Code> out(static_cast<std::size_t>(d) + 1, 1);
    for (int i = 1; i <= d; ++i) out[i] = f.mul(out[i - 1], v);
    return out;
}

}  // namespace

std::vector<std::array<int, 3>> monomials(int d) {
    std::vector<std::array<int, 3>> out;
    out.reserve(monomial_count(d));
    for (int a = d; a >= 0; --a)
        for (int b = d - a; b >= 0; --b) out.push_back({a, b, d - a - b});
    return out;
}

TernaryForm::TernaryForm(FieldPtr field, int d) : field_(std::move(field)), d_(d) {
    if (d < 0) throw std::invalid_argument("form degree must be nonnegative");
    coeffs_.assign(monomial_count(d), 0);
}

TernaryForm::TernaryForm(FieldPtr field, int d, std::vector<Code> coeffs)
    : field_(std::move(field)), d_(d), coeffs_(std::move(coeffs)) {
    if (d < 0) throw std::invalid_argument("form degree must be nonnegative");
    if (coeffs_.size() != monomial_count(d)) throw std::invalid_argument("coefficient count does not match degree");
    for (const Code c : coeffs_) {
        if (c >= field_->size()) throw std::invalid_argument("coefficient code out of range");
    }
}

TernaryForm TernaryForm::from_index(FieldPtr field, int d, std::uint64_t index) {
    TernaryForm f(std::move(field), d);
    const std::uint64_t q = f.field_->size();
    for (auto& c : f.coeffs_) {
        c = static_cast<Code>(index % q);
        index /= q;
    }
    if (index != 0) throw std::out_of_range("form index exceeds q^monomial_count");
    return f;
}

Code TernaryForm::coeff(int a, int b, int c) const {
    if (a < 0 || b < 0 || c < 0 || a + b + c != d_) throw std::invalid_argument("monomial of wrong degree");
    return coeffs_[monomial_index(d_, a, b)];
}

void TernaryForm::set_coeff(int a, int b, int c, Code value) {
    if (a < 0 || b < 0 || c < 0 || a + b + c != d_) throw std::invalid_argument("monomial of wrong degree");
    if (value >= field_->size()) throw std::invalid_argument("coefficient code out of range");
    coeffs_[monomial_index(d_, a, b)] = value;
}

bool TernaryForm::is_zero() const noexcept {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](Code c) { return c == 0; });
}

std::uint64_t TernaryForm::index() const {
    const std::uint64_t q = field_->size();
    std::uint64_t r = 0;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
        if (r > (UINT64_MAX - coeffs_[i]) / q) throw std::overflow_error("form index does not fit in 64 bits");
        r = r * q + coeffs_[i];
    }
    return r;
}

TernaryForm TernaryForm::scaled(Code c) const {
    TernaryForm out(field_, d_);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) out.coeffs_[i] = field_->mul(coeffs_[i], c);
    return out;
}

bool operator==(const TernaryForm& a, const TernaryForm& b) {
    return a.d_ == b.d_ && a.coeffs_ == b.coeffs_ && a.field_->desc() == b.field_->desc();
}

TernaryForm monomial_form(FieldPtr field, int a, int b, int c, Code coeff) {
    TernaryForm f(std::move(field), a + b + c);
    f.set_coeff(a, b, c, coeff);
    return f;
}

TernaryForm operator+(const TernaryForm& f, const TernaryForm& g) {
    require_same_field(f.field(), g.field());
    if (f.degree() != g.degree()) throw std::invalid_argument("adding forms of different degree");
    std::vector<Code> c(f.coeffs().begin(), f.coeffs().end());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = f.field()->add(c[i], g.coeffs()[i]);
    return {f.field(), f.degree(), std::move(c)};
}

TernaryForm operator*(const TernaryForm& f, const TernaryForm& g) {
    require_same_field(f.field(), g.field());
    const Field& k = *f.field();
    const int d = f.degree() + g.degree();
    TernaryForm out(f.field(), d);
    const auto mf = monomials(f.degree());
    const auto mg = monomials(g.degree());
    std::vector<Code> c(monomial_count(d), 0);
    for (std::size_t i = 0; i < mf.size(); ++i) {
        if (f.coeffs()[i] == 0) continue;
        for (std::size_t j = 0; j < mg.size(); ++j) {
            if (g.coeffs()[j] == 0) continue;
            const auto idx = monomial_index(d, mf[i][0] + mg[j][0], mf[i][1] + mg[j][1]);
            c[idx] = k.add(c[idx], k.mul(f.coeffs()[i], g.coeffs()[j]));
        }
    }
    return {f.field(), d, std::move(c)};
}

TernaryForm times_var(const TernaryForm& f, Var v) {
    std::array<int, 3> e{0, 0, 0};
    e[static_cast<int>(v)] = 1;
    return f * monomial_form(f.field(), e[0], e[1], e[2]);
}

Code evaluate(const TernaryForm& f, const std::array<Code, 3>& v) {
    const Field& k = *f.field();
    const int d = f.degree();
    const auto px = powers(k, v[0], d), py = powers(k, v[1], d), pz = powers(k, v[2], d);
    Code acc = 0;
    std::size_t i = 0;
    for (int a = d; a >= 0; --a) {
        for (int b = d - a; b >= 0; --b, ++i) {
            const Code c = f.coeffs()[i];
            if (c == 0) continue;
            acc = k.add(acc, k.mul(c, k.mul(px[a], k.mul(py[b], pz[d - a - b]))));
        }
    }
    return acc;
}

Code evaluate(const TernaryForm& f, const std::array<Code, 3>& v, const Embedding& emb) {
    require_same_field(f.field(), emb.base_ptr());
    const Field& k = emb.ext();
    const int d = f.degree();
    const auto px = powers(k, v[0], d), py = powers(k, v[1], d), pz = powers(k, v[2], d);
    Code acc = 0;
    std::size_t i = 0;
    for (int a = d; a >= 0; --a) {
        for (int b = d - a; b >= 0; --b, ++i) {
            const Code c = f.coeffs()[i];
            if (c == 0) continue;
            acc = k.add(acc, k.mul(emb(c), k.mul(px[a], k.mul(py[b], pz[d - a - b]))));
        }
    }
    return acc;
}

TernaryForm partial(const TernaryForm& f, Var v) {
    const int d = f.degree();
    if (d < 1) throw std::invalid_argument("partial derivative of a constant form");
    const Field& k = *f.field();
    TernaryForm out(f.field(), d - 1);
    const int vi = static_cast<int>(v);
    std::size_t i = 0;
    for (int a = d; a >= 0; --a) {
        for (int b = d - a; b >= 0; --b, ++i) {
            const Code c = f.coeffs()[i];
            std::array<int, 3> e{a, b, d - a - b};
            if (c == 0 || e[vi] == 0) continue;
            const Code m = k.mul(c, k.from_int(e[vi]));
            if (m == 0) continue;
            --e[vi];
            out.set_coeff(e[0], e[1], e[2], m);
        }
    }
    return out;
}

std::string to_string(const TernaryForm& f) {
    std::string out;
    std::size_t i = 0;
    const int d = f.degree();
    for (int a = d; a >= 0; --a) {
        for (int b = d - a; b >= 0; --b, ++i) {
            const Code c = f.coeffs()[i];
            if (c == 0) continue;
            if (!out.empty()) out += " + ";
            const std::array<int, 3> e{a, b, d - a - b};
            const bool constant = d == 0;
            if (c != 1 || constant) out += f.field()->format(c);
            static constexpr char names[3] = {'X', 'Y', 'Z'};
            for (int v = 0; v < 3; ++v) {
                if (e[v] == 0) continue;
                out += names[v];
                if (e[v] > 1) out += "^" + std::to_string(e[v]);
            }
        }
    }
    return out.empty() ? "0" : out;
}

TernaryForm parse_form(FieldPtr field, int d, std::string_view text) {
    TernaryForm f(field, d);
    std::string s;
    for (char ch : text) {
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    }
    if (s == "0") return f;
    // Split on '+' outside parentheses.
    std::vector<std::string> terms;
    int depth = 0;
    std::string cur;
    for (char ch : s) {
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if (ch == '+' && depth == 0) {
            terms.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    terms.push_back(cur);
    for (const auto& term : terms) {
        if (term.empty()) throw std::invalid_argument("malformed form '" + std::string(text) + "'");
        const auto var_pos = term.find_first_of("XYZ");
        std::string coef_text = term.substr(0, var_pos == std::string::npos ? term.size() : var_pos);
        if (!coef_text.empty() && coef_text.back() == '*') coef_text.pop_back();
        const Code c = coef_text.empty() ? 1 : field->parse(coef_text);
        std::array<int, 3> e{0, 0, 0};
        std::size_t i = var_pos == std::string::npos ? term.size() : var_pos;
        while (i < term.size()) {
            if (term[i] == '*') {
                ++i;
                continue;
            }
            const auto name = std::string_view("XYZ").find(term[i]);
            if (name == std::string_view::npos) throw std::invalid_argument("malformed form '" + std::string(text) + "'");
            ++i;
            int power = 1;
            if (i < term.size() && term[i] == '^') {
                std::size_t j = i + 1;
                while (j < term.size() && std::isdigit(static_cast<unsigned char>(term[j]))) ++j;
                if (j == i + 1) throw std::invalid_argument("malformed form '" + std::string(text) + "'");
                power = std::stoi(term.substr(i + 1, j - i - 1));
                i = j;
            }
            e[name] += power;
        }
        if (e[0] + e[1] + e[2] != d) {
            throw std::invalid_argument("term '" + term + "' is not of degree " + std::to_string(d));
        }
        f.set_coeff(e[0], e[1], e[2], field->add(f.coeff(e[0], e[1], e[2]), c));
    }
    return f;
}

// ---------------------------------------------------------------------------

namespace {

bool term_greater(const Term& a, const Term& b) { return grevlex_greater(a.ex, a.ey, b.ex, b.ey); }

std::vector<Term> normalize_terms(const Field& k, std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(), term_greater);
    std::vector<Term> out;
    for (const auto& t : terms) {
        if (!out.empty() && out.back().ex == t.ex && out.back().ey == t.ey) {
            out.back().c = k.add(out.back().c, t.c);
        } else {
            out.push_back(t);
        }
        if (!out.empty() && out.back().c == 0) out.pop_back();
    }
    return out;
}

// a + s * b, both sorted; result sorted without zeros.
std::vector<Term> merge_add(const Field& k, const std::vector<Term>& a, const std::vector<Term>& b, Code s) {
    std::vector<Term> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && term_greater(a[i], b[j]))) {
            out.push_back(a[i++]);
        } else if (i == a.size() || term_greater(b[j], a[i])) {
            const Code c = k.mul(s, b[j].c);
            if (c != 0) out.push_back({b[j].ex, b[j].ey, c});
            ++j;
        } else {
            const Code c = k.add(a[i].c, k.mul(s, b[j].c));
            if (c != 0) out.push_back({a[i].ex, a[i].ey, c});
            ++i;
            ++j;
        }
    }
    return out;
}

Code pow_small(const Field& k, Code v, int e) {
    Code r = 1;
    for (int i = 0; i < e; ++i) r = k.mul(r, v);
    return r;
}

}  // namespace

AffinePoly::AffinePoly(FieldPtr field, std::vector<Term> terms) : field_(std::move(field)) {
    terms_ = normalize_terms(*field_, std::move(terms));
}

int AffinePoly::total_degree() const noexcept {
    return terms_.empty() ? -1 : terms_.front().ex + terms_.front().ey;
}

int AffinePoly::degree_in(int var) const noexcept {
    int d = -1;
    for (const auto& t : terms_) d = std::max(d, var == 0 ? int{t.ex} : int{t.ey});
    return d;
}

Code AffinePoly::eval(Code x, Code y) const {
    const Field& k = *field_;
    Code acc = 0;
    for (const auto& t : terms_) acc = k.add(acc, k.mul(t.c, k.mul(pow_small(k, x, t.ex), pow_small(k, y, t.ey))));
    return acc;
}

Code AffinePoly::eval(Code x, Code y, const Embedding& emb) const {
    const Field& k = emb.ext();
    Code acc = 0;
    for (const auto& t : terms_) acc = k.add(acc, k.mul(emb(t.c), k.mul(pow_small(k, x, t.ex), pow_small(k, y, t.ey))));
    return acc;
}

AffinePoly AffinePoly::derivative(int var) const {
    const Field& k = *field_;
    std::vector<Term> out;
    for (const auto& t : terms_) {
        const int e = var == 0 ? t.ex : t.ey;
        if (e == 0) continue;
        const Code c = k.mul(t.c, k.from_int(e));
        if (c == 0) continue;
        out.push_back(var == 0 ? Term{static_cast<std::uint16_t>(t.ex - 1), t.ey, c}
                               : Term{t.ex, static_cast<std::uint16_t>(t.ey - 1), c});
    }
    return AffinePoly(field_, std::move(out));
}

AffinePoly operator+(const AffinePoly& a, const AffinePoly& b) {
    require_same_field(a.field_, b.field_);
    AffinePoly out(a.field_);
    out.terms_ = merge_add(*a.field_, a.terms_, b.terms_, 1);
    return out;
}

AffinePoly operator-(const AffinePoly& a, const AffinePoly& b) {
    require_same_field(a.field_, b.field_);
    AffinePoly out(a.field_);
    out.terms_ = merge_add(*a.field_, a.terms_, b.terms_, a.field_->neg(1));
    return out;
}

AffinePoly operator*(const AffinePoly& a, const AffinePoly& b) {
    require_same_field(a.field_, b.field_);
    const Field& k = *a.field_;
    std::vector<Term> out;
    out.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& s : a.terms_)
        for (const auto& t : b.terms_)
            out.push_back({static_cast<std::uint16_t>(s.ex + t.ex), static_cast<std::uint16_t>(s.ey + t.ey), k.mul(s.c, t.c)});
    return AffinePoly(a.field_, std::move(out));
}

bool operator==(const AffinePoly& a, const AffinePoly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
        const auto &s = a.terms_[i], &t = b.terms_[i];
        if (s.ex != t.ex || s.ey != t.ey || s.c != t.c) return false;
    }
    return true;
}

AffinePoly dehomogenize(const TernaryForm& f, int chart) {
    if (chart < 0 || chart > 2) throw std::invalid_argument("chart index must be 0, 1 or 2");
    const int d = f.degree();
    std::vector<Term> terms;
    std::size_t i = 0;
    for (int a = d; a >= 0; --a) {
        for (int b = d - a; b >= 0; --b, ++i) {
            const Code c = f.coeffs()[i];
            if (c == 0) continue;
            const std::array<int, 3> e{a, b, d - a - b};
            std::array<int, 2> rest{};
            int n = 0;
            for (int v = 0; v < 3; ++v)
                if (v != chart) rest[n++] = e[v];
            terms.push_back({static_cast<std::uint16_t>(rest[0]), static_cast<std::uint16_t>(rest[1]), c});
        }
    }
    return AffinePoly(f.field(), std::move(terms));
}

TernaryForm homogenize(const AffinePoly& f, int chart, int d) {
    if (chart < 0 || chart > 2) throw std::invalid_argument("chart index must be 0, 1 or 2");
    if (f.total_degree() > d) throw std::invalid_argument("polynomial degree exceeds homogenization degree");
    TernaryForm out(f.field(), d);
    for (const auto& t : f.terms()) {
        std::array<int, 3> e{};
        const std::array<int, 2> rest{t.ex, t.ey};
        int n = 0;
        for (int v = 0; v < 3; ++v) e[v] = v == chart ? 0 : rest[n++];
        e[chart] = d - t.ex - t.ey;
        out.set_coeff(e[0], e[1], e[2], t.c);
    }
    return out;
}

// ---------------------------------------------------------------------------

UPoly::UPoly(FieldPtr field, std::vector<Code> coeffs) : field_(std::move(field)), c_(std::move(coeffs)) { trim(); }

UPoly UPoly::constant(FieldPtr field, Code c) { return UPoly(std::move(field), std::vector<Code>{c}); }

void UPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Code UPoly::eval(Code x) const {
    Code acc = 0;
    for (std::size_t i = c_.size(); i-- > 0;) acc = field_->add(field_->mul(acc, x), c_[i]);
    return acc;
}

Code UPoly::eval(Code x, const Embedding& emb) const {
    const Field& k = emb.ext();
    Code acc = 0;
    for (std::size_t i = c_.size(); i-- > 0;) acc = k.add(k.mul(acc, x), emb(c_[i]));
    return acc;
}

UPoly UPoly::monic() const {
    if (c_.empty()) return *this;
    const Code li = field_->inv(c_.back());
    std::vector<Code> out(c_);
    for (auto& c : out) c = field_->mul(c, li);
    return UPoly(field_, std::move(out));
}

UPoly operator+(const UPoly& a, const UPoly& b) {
    std::vector<Code> out(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < out.size(); ++i) {
        const Code x = i < a.c_.size() ? a.c_[i] : 0, y = i < b.c_.size() ? b.c_[i] : 0;
        out[i] = a.field_->add(x, y);
    }
    return UPoly(a.field_, std::move(out));
}

UPoly operator-(const UPoly& a, const UPoly& b) {
    std::vector<Code> out(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < out.size(); ++i) {
        const Code x = i < a.c_.size() ? a.c_[i] : 0, y = i < b.c_.size() ? b.c_[i] : 0;
        out[i] = a.field_->sub(x, y);
    }
    return UPoly(a.field_, std::move(out));
}

UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.c_.empty() || b.c_.empty()) return UPoly(a.field_);
    const Field& k = *a.field_;
    std::vector<Code> out(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] = k.add(out[i + j], k.mul(a.c_[i], b.c_[j]));
    }
    return UPoly(a.field_, std::move(out));
}

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    const Field& k = *a.field();
    std::vector<Code> rem = a.coeffs();
    const auto& bc = b.coeffs();
    const Code li = k.inv(b.lead());
    std::vector<Code> quo(rem.size() >= bc.size() ? rem.size() - bc.size() + 1 : 0, 0);
    for (std::size_t i = rem.size(); i-- >= bc.size();) {
        const Code c = k.mul(rem[i], li);
        if (c != 0) {
            const std::size_t shift = i - (bc.size() - 1);
            quo[shift] = c;
            for (std::size_t j = 0; j < bc.size(); ++j) rem[shift + j] = k.sub(rem[shift + j], k.mul(c, bc[j]));
        }
        if (i == 0) break;
    }
    return {UPoly(a.field(), std::move(quo)), UPoly(a.field(), std::move(rem))};
}

UPoly gcd(const UPoly& a, const UPoly& b) {
    UPoly x = a, y = b;
    while (!y.is_zero()) {
        UPoly r = divmod(x, y).second;
        x = std::move(y);
        y = std::move(r);
    }
    return x.monic();
}

UPoly UPolyRing::exact_div(const UPoly& a, const UPoly& b) const {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) throw std::logic_error("inexact polynomial division in fraction-free elimination");
    return q;
}

Code resultant(const UPoly& f, const UPoly& g) {
    if (f.is_zero() && g.is_zero()) throw std::invalid_argument("resultant of two zero polynomials");
    if (f.is_zero() || g.is_zero()) return 0;
    return sylvester_determinant(ScalarRing{f.field().get()}, f.coeffs(), g.coeffs());
}

namespace {

// Coefficients of f as a polynomial in y with F_q[x] coefficients, low-to-high.
std::vector<UPoly> y_coefficients(const AffinePoly& f) {
    const int dy = f.degree_in(1);
    std::vector<std::vector<Code>> raw(static_cast<std::size_t>(std::max(dy, 0)) + 1);
    for (const auto& t : f.terms()) {
        auto& c = raw[t.ey];
        if (c.size() <= t.ex) c.resize(t.ex + 1u, 0);
        c[t.ex] = t.c;
    }
    std::vector<UPoly> out;
    out.reserve(raw.size());
    for (auto& c : raw) out.emplace_back(f.field(), std::move(c));
    return out;
}

}  // namespace

YResultant resultant_y(const AffinePoly& f, const AffinePoly& g) {
    if (f.is_zero() && g.is_zero()) throw std::invalid_argument("resultant of two zero polynomials");
    require_same_field(f.field(), g.field());
    YResultant out{UPoly(f.field())};
    if (f.is_zero() || g.is_zero()) {
        out.degenerate = true;
        return out;
    }
    const auto fc = y_coefficients(f), gc = y_coefficients(g);
    out.leading_coefficients_share_root = gcd(fc.back(), gc.back()).degree() > 0;
    if (fc.size() == 1 && gc.size() == 1) {
        out.value = UPoly::constant(f.field(), 1);
        out.degenerate = true;
        return out;
    }
    out.value = sylvester_determinant(UPolyRing{f.field()}, fc, gc);
    out.degenerate = out.value.is_zero();
    return out;
}

// ---------------------------------------------------------------------------

namespace {

struct Basis {
    const Field* k;
    std::vector<std::vector<Term>> polys;
};

std::vector<Term> make_monic(const Field& k, std::vector<Term> p) {
    if (p.empty() || p.front().c == 1) return p;
    const Code li = k.inv(p.front().c);
    for (auto& t : p) t.c = k.mul(t.c, li);
    return p;
}

bool divides(const Term& a, std::uint16_t bx, std::uint16_t by) { return a.ex <= bx && a.ey <= by; }

// a - c * x^sx y^sy * b
void sub_shifted(const Field& k, std::vector<Term>& a, const std::vector<Term>& b, Code c, std::uint16_t sx,
                 std::uint16_t sy) {
    std::vector<Term> shifted;
    shifted.reserve(b.size());
    for (const auto& t : b) shifted.push_back({static_cast<std::uint16_t>(t.ex + sx), static_cast<std::uint16_t>(t.ey + sy), t.c});
    a = merge_add(k, a, shifted, k.neg(c));
}

// Full normal form with respect to a basis of monic polynomials.
std::vector<Term> normal_form(const Field& k, std::vector<Term> p, const std::vector<std::vector<Term>>& basis) {
    std::vector<Term> rem;
    while (!p.empty()) {
        const Term lt = p.front();
        bool reduced = false;
        for (const auto& g : basis) {
            if (divides(g.front(), lt.ex, lt.ey)) {
                sub_shifted(k, p, g, lt.c, static_cast<std::uint16_t>(lt.ex - g.front().ex),
                            static_cast<std::uint16_t>(lt.ey - g.front().ey));
                reduced = true;
                break;
            }
        }
        if (!reduced) {
            rem.push_back(lt);
            p.erase(p.begin());
        }
    }
    return rem;
}

struct Pair {
    std::size_t i, j;
    std::uint16_t lx, ly;
};

std::vector<std::vector<Term>> buchberger(const Field& k, std::span<const AffinePoly> generators, bool stop_at_unit,
                                          bool& unit) {
    unit = false;
    std::vector<std::vector<Term>> basis;
    for (const auto& g : generators) {
        if (g.is_zero()) continue;
        auto r = make_monic(k, normal_form(k, g.terms(), basis));
        if (r.empty()) continue;
        if (r.front().ex == 0 && r.front().ey == 0) {
            unit = true;
            return {r};
        }
        basis.push_back(std::move(r));
    }
    if (basis.empty()) throw std::invalid_argument("ideal generated by zero polynomials only");

    std::vector<Pair> pairs;
    // processed[i][j]: the pair (i, j) has left the queue
    std::vector<std::vector<bool>> queued;
    auto add_pairs = [&](std::size_t j) {
        queued.resize(basis.size());
        for (auto& row : queued) row.resize(basis.size(), false);
        for (std::size_t i = 0; i < j; ++i) {
            const auto& a = basis[i].front();
            const auto& b = basis[j].front();
            pairs.push_back({i, j, std::max(a.ex, b.ex), std::max(a.ey, b.ey)});
            queued[i][j] = queued[j][i] = true;
        }
    };
    for (std::size_t j = 0; j < basis.size(); ++j) add_pairs(j);

    while (!pairs.empty()) {
        // normal strategy: smallest lcm first
        auto best = std::min_element(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
            return grevlex_greater(b.lx, b.ly, a.lx, a.ly);
        });
        const Pair pr = *best;
        pairs.erase(best);
        queued[pr.i][pr.j] = queued[pr.j][pr.i] = false;

        const auto& fi = basis[pr.i];
        const auto& fj = basis[pr.j];
        // first criterion: coprime leading monomials
        if ((fi.front().ex == 0 || fj.front().ex == 0) && (fi.front().ey == 0 || fj.front().ey == 0)) continue;
        // second (chain) criterion
        bool chain = false;
        for (std::size_t m = 0; m < basis.size() && !chain; ++m) {
            if (m == pr.i || m == pr.j) continue;
            if (!divides(basis[m].front(), pr.lx, pr.ly)) continue;
            if (!queued[pr.i][m] && !queued[pr.j][m]) chain = true;
        }
        if (chain) continue;

        std::vector<Term> s;
        {
            std::vector<Term> left;
            left.reserve(fi.size());
            for (const auto& t : fi)
                left.push_back({static_cast<std::uint16_t>(t.ex + pr.lx - fi.front().ex),
                                static_cast<std::uint16_t>(t.ey + pr.ly - fi.front().ey), t.c});
            s = std::move(left);
            sub_shifted(k, s, fj, 1, static_cast<std::uint16_t>(pr.lx - fj.front().ex),
                        static_cast<std::uint16_t>(pr.ly - fj.front().ey));
        }
        auto r = make_monic(k, normal_form(k, std::move(s), basis));
        if (r.empty()) continue;
        if (r.front().ex == 0 && r.front().ey == 0) {
            unit = true;
            if (stop_at_unit) return {r};
        }
        basis.push_back(std::move(r));
        add_pairs(basis.size() - 1);
    }
    return basis;
}

}  // namespace

bool ideal_trivial(std::span<const AffinePoly> generators) {
    if (generators.empty()) throw std::invalid_argument("ideal generated by zero polynomials only");
    bool unit = false;
    buchberger(*generators.front().field(), generators, true, unit);
    return unit;
}

std::vector<AffinePoly> groebner_basis(std::span<const AffinePoly> generators) {
    if (generators.empty()) throw std::invalid_argument("ideal generated by zero polynomials only");
    const FieldPtr& field = generators.front().field();
    bool unit = false;
    auto raw = buchberger(*field, generators, false, unit);
    std::vector<AffinePoly> out;
    out.reserve(raw.size());
    for (auto& p : raw) out.emplace_back(field, std::move(p));
    return out;
}

}  // namespace pcurve
