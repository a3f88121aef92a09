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

#include "pcurve/gf.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

namespace pcurve {

namespace {

using Coeffs = std::vector<std::uint32_t>;  // low-to-high over F_p

void trim(Coeffs& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Coeffs poly_mod(Coeffs a, const Coeffs& m, std::uint32_t p) {
    trim(a);
    const std::size_t dm = m.size() - 1;
    // m is monic
    while (a.size() > dm) {
        const std::uint32_t lead = a.back();
        const std::size_t shift = a.size() - 1 - dm;
        for (std::size_t i = 0; i <= dm; ++i) {
            a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + std::uint64_t{p - lead} * m[i]) % p);
        }
        trim(a);
    }
    return a;
}

Coeffs poly_mulmod(const Coeffs& a, const Coeffs& b, const Coeffs& m, std::uint32_t p) {
    if (a.empty() || b.empty()) return {};
    Coeffs r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            r[i + j] = static_cast<std::uint32_t>((r[i + j] + std::uint64_t{a[i]} * b[j]) % p);
        }
    }
    return poly_mod(std::move(r), m, p);
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
    std::uint64_t r = 1, b = a, e = p - 2;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(r);
}

Coeffs poly_gcd(Coeffs a, Coeffs b, std::uint32_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        // make b monic, then a mod b
        const std::uint32_t li = inv_mod(b.back(), p);
        for (auto& c : b) c = static_cast<std::uint32_t>(std::uint64_t{c} * li % p);
        a = poly_mod(std::move(a), b, p);
        std::swap(a, b);
    }
    return a;
}

// Ben-Or: m of degree k is irreducible iff gcd(t^{p^i} - t, m) = 1 for i <= k/2.
bool is_irreducible(const Coeffs& m, std::uint32_t p) {
    const std::size_t k = m.size() - 1;
    if (k == 1) return true;
    Coeffs t{0, 1};
    Coeffs power = poly_mod(t, m, p);
    for (std::size_t i = 1; i <= k / 2; ++i) {
        // power <- power^p
        Coeffs base = power, acc{1};
        for (std::uint32_t e = p; e; e >>= 1) {
            if (e & 1) acc = poly_mulmod(acc, base, m, p);
            base = poly_mulmod(base, base, m, p);
        }
        power = acc;
        Coeffs diff = power;
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = (diff[1] + p - 1) % p;
        trim(diff);
        if (diff.empty()) return false;
        const Coeffs g = poly_gcd(diff, m, p);
        if (g.size() > 1) return false;
    }
    return true;
}

Coeffs first_irreducible(std::uint32_t p, std::uint32_t k) {
    Coeffs m(k + 1, 0);
    m[k] = 1;
    while (true) {
        if (is_irreducible(m, p)) return m;
        std::size_t i = 0;
        while (i < k) {
            if (++m[i] < p) break;
            m[i] = 0;
            ++i;
        }
        if (i == k) throw std::logic_error("no irreducible polynomial found");
    }
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t f = 2; f * f <= n; ++f) {
        if (n % f == 0) {
            out.push_back(f);
            while (n % f == 0) n /= f;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

// Multiplication on codes through the polynomial basis; used only to build tables.
class SlowMul {
public:
    SlowMul(const FieldDesc& d) : d_(d) {
        q_ = static_cast<std::uint32_t>(d.order());
        if (d.p == 2 && d.k > 1) {
            for (std::uint32_t i = 0; i <= d.k; ++i) mod_mask_ |= std::uint64_t{d.modulus[i]} << i;
        }
    }

    Code operator()(Code a, Code b) const {
        if (d_.k == 1) return static_cast<Code>(std::uint64_t{a} * b % d_.p);
        if (d_.p == 2) {
            std::uint64_t r = 0, x = a;
            for (std::uint32_t i = 0; i < d_.k; ++i) {
                if ((b >> i) & 1) r ^= x;
                x <<= 1;
                if ((x >> d_.k) & 1) x ^= mod_mask_;
            }
            return static_cast<Code>(r);
        }
        return encode(poly_mulmod(decode(a), decode(b), d_.modulus, d_.p));
    }

    Code pow(Code a, std::uint64_t e) const {
        Code r = 1;
        while (e) {
            if (e & 1) r = (*this)(r, a);
            a = (*this)(a, a);
            e >>= 1;
        }
        return r;
    }

private:
    Coeffs decode(Code a) const {
        Coeffs c;
        while (a) {
            c.push_back(a % d_.p);
            a /= d_.p;
        }
        return c;
    }
    Code encode(const Coeffs& c) const {
        Code r = 0;
        for (std::size_t i = c.size(); i-- > 0;) r = r * d_.p + c[i];
        return r;
    }

    const FieldDesc& d_;
    std::uint32_t q_;
    std::uint64_t mod_mask_ = 0;
};

}  // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t f = 2; f * f <= n; ++f) {
        if (n % f == 0) return false;
    }
    return true;
}

std::uint64_t FieldDesc::order() const {
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < k; ++i) q *= p;
    return q;
}

std::string FieldDesc::spec() const { return std::to_string(p) + "^" + std::to_string(k); }

std::string FieldDesc::modulus_string() const {
    if (modulus.empty()) return "-";
    std::string out;
    for (std::size_t i = modulus.size(); i-- > 0;) {
        const std::uint32_t c = modulus[i];
        if (c == 0) continue;
        if (!out.empty()) out += "+";
        if (i == 0) {
            out += std::to_string(c);
            continue;
        }
        if (c != 1) out += std::to_string(c);
        out += "t";
        if (i > 1) out += "^" + std::to_string(i);
    }
    return out;
}

Field::Field(FieldDesc desc) : desc_(std::move(desc)) {
    q_ = static_cast<std::uint32_t>(desc_.order());
    const std::uint32_t p = desc_.p;

    neg_.resize(q_);
    for (Code a = 0; a < q_; ++a) {
        Code r = 0, scale = 1;
        for (Code x = a; x; x /= p) {
            r += ((p - x % p) % p) * scale;
            scale *= p;
        }
        neg_[a] = r;
    }
    if (p != 2 && q_ <= 256 && desc_.k > 1) {
        add_table_.resize(std::size_t{q_} * q_);
        for (Code a = 0; a < q_; ++a)
            for (Code b = 0; b < q_; ++b) add_table_[std::size_t{a} * q_ + b] = add_digits(a, b);
    }

    const SlowMul slow(desc_);
    Code gen = 1;
    if (q_ > 2) {
        const auto factors = prime_factors(q_ - 1);
        for (gen = 2; gen < q_; ++gen) {
            bool primitive = true;
            for (const auto f : factors) {
                if (slow.pow(gen, (q_ - 1) / f) == 1) {
                    primitive = false;
                    break;
                }
            }
            if (primitive) break;
        }
    }
    exp_.resize(2 * std::size_t{q_ - 1});
    log_.assign(q_, 0);
    Code x = 1;
    for (std::uint32_t i = 0; i + 1 < q_; ++i) {
        exp_[i] = x;
        exp_[i + q_ - 1] = x;
        log_[x] = i;
        x = slow(x, gen);
    }
}

Code Field::add_digits(Code a, Code b) const noexcept {
    const std::uint32_t p = desc_.p;
    Code r = 0, scale = 1;
    while (a || b) {
        r += ((a % p + b % p) % p) * scale;
        a /= p;
        b /= p;
        scale *= p;
    }
    return r;
}

Code Field::pow(Code a, std::uint64_t n) const noexcept {
    if (n == 0) return 1;
    if (a == 0) return 0;
    return exp_[(std::uint64_t{log_[a]} * (n % (q_ - 1))) % (q_ - 1)];
}

Code Field::from_int(std::int64_t n) const noexcept {
    const std::int64_t p = desc_.p;
    return static_cast<Code>(((n % p) + p) % p);
}

std::vector<std::uint32_t> Field::coords(Code a) const {
    std::vector<std::uint32_t> c(desc_.k, 0);
    for (std::uint32_t i = 0; i < desc_.k; ++i) {
        c[i] = a % desc_.p;
        a /= desc_.p;
    }
    return c;
}

Code Field::from_coords(const std::vector<std::uint32_t>& c) const {
    if (c.size() != desc_.k) throw std::invalid_argument("coordinate count does not match field degree");
    Code r = 0;
    for (std::size_t i = c.size(); i-- > 0;) {
        if (c[i] >= desc_.p) throw std::invalid_argument("coordinate out of range");
        r = r * desc_.p + c[i];
    }
    return r;
}

std::string Field::format(Code a) const {
    if (a < desc_.p) return std::to_string(a);
    const auto c = coords(a);
    std::string out;
    for (std::size_t i = c.size(); i-- > 0;) {
        if (c[i] == 0) continue;
        if (!out.empty()) out += "+";
        if (i == 0) {
            out += std::to_string(c[i]);
            continue;
        }
        if (c[i] != 1) out += std::to_string(c[i]);
        out += "t";
        if (i > 1) out += "^" + std::to_string(i);
    }
    return "(" + out + ")";
}

Code Field::parse(std::string_view text) const {
    std::string s;
    for (char ch : text) {
        if (!std::isspace(static_cast<unsigned char>(ch)) && ch != '(' && ch != ')' && ch != '*') s += ch;
    }
    if (s.empty()) throw std::invalid_argument("empty field element");
    std::vector<std::uint32_t> c(desc_.k, 0);
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t end = s.find('+', pos);
        if (end == std::string::npos) end = s.size();
        const std::string term = s.substr(pos, end - pos);
        pos = end + 1;
        if (term.empty()) throw std::invalid_argument("malformed field element '" + std::string(text) + "'");
        std::size_t i = 0;
        std::uint64_t coef = 1;
        bool has_coef = false;
        while (i < term.size() && std::isdigit(static_cast<unsigned char>(term[i]))) ++i;
        if (i > 0) {
            coef = std::stoull(term.substr(0, i));
            has_coef = true;
        }
        std::uint32_t power = 0;
        if (i < term.size()) {
            if (term[i] != 't') throw std::invalid_argument("malformed field element '" + std::string(text) + "'");
            power = 1;
            ++i;
            if (i < term.size()) {
                if (term[i] != '^' || i + 1 == term.size())
                    throw std::invalid_argument("malformed field element '" + std::string(text) + "'");
                power = static_cast<std::uint32_t>(std::stoul(term.substr(i + 1)));
            }
        } else if (!has_coef) {
            throw std::invalid_argument("malformed field element '" + std::string(text) + "'");
        }
        if (power >= desc_.k) throw std::invalid_argument("power of t exceeds field degree");
        c[power] = static_cast<std::uint32_t>((c[power] + coef) % desc_.p);
    }
    return from_coords(c);
}

FieldPtr make_field(std::int64_t p, std::int64_t k, std::uint64_t limit) {
    if (p < 2 || !is_prime(static_cast<std::uint64_t>(p))) {
        throw std::invalid_argument("field characteristic " + std::to_string(p) + " is not prime");
    }
    if (k < 1) throw std::invalid_argument("field degree must be positive, got " + std::to_string(k));
    std::uint64_t q = 1;
    for (std::int64_t i = 0; i < k; ++i) {
        q *= static_cast<std::uint64_t>(p);
        if (q > limit) {
            throw BudgetExceeded("field " + std::to_string(p) + "^" + std::to_string(k) + " exceeds the size limit " +
                                 std::to_string(limit));
        }
    }
    FieldDesc desc;
    desc.p = static_cast<std::uint32_t>(p);
    desc.k = static_cast<std::uint32_t>(k);
    if (k > 1) desc.modulus = first_irreducible(desc.p, desc.k);
    return std::make_shared<const Field>(std::move(desc));
}

FieldPtr parse_field(std::string_view spec, std::uint64_t limit) {
    const auto caret = spec.find('^');
    auto parse_int = [&](std::string_view s) {
        std::int64_t v = 0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size()) {
            throw std::invalid_argument("malformed field spec '" + std::string(spec) + "'");
        }
        return v;
    };
    if (caret == std::string_view::npos) return make_field(parse_int(spec), 1, limit);
    return make_field(parse_int(spec.substr(0, caret)), parse_int(spec.substr(caret + 1)), limit);
}

std::vector<Code> enumerate_field(const Field& field) {
    std::vector<Code> out(field.size());
    for (Code a = 0; a < field.size(); ++a) out[a] = a;
    return out;
}

Embedding::Embedding(FieldPtr base, FieldPtr ext) : base_(std::move(base)), ext_(std::move(ext)) {
    const auto& bd = base_->desc();
    const auto& ed = ext_->desc();
    if (bd.p != ed.p || ed.k % bd.k != 0) {
        throw std::invalid_argument("cannot embed F_" + bd.spec() + " into F_" + ed.spec());
    }
    if (bd.k > 1) {
        bool found = false;
        for (Code r = 0; r < ext_->size() && !found; ++r) {
            // Horner evaluation of the base modulus at r
            Code v = 0;
            for (std::size_t i = bd.modulus.size(); i-- > 0;) v = ext_->add(ext_->mul(v, r), ext_->from_int(bd.modulus[i]));
            if (v == 0) {
                root_ = r;
                found = true;
            }
        }
        if (!found) throw std::logic_error("base modulus has no root in the extension");
    }
    table_.resize(base_->size());
    for (Code a = 0; a < base_->size(); ++a) {
        const auto c = base_->coords(a);
        Code v = 0;
        for (std::size_t i = c.size(); i-- > 0;) v = ext_->add(ext_->mul(v, root_), ext_->from_int(c[i]));
        table_[a] = v;
    }
}

Embedding embed(const FieldPtr& base, const FieldPtr& ext) { return Embedding(base, ext); }

FieldElem::FieldElem(FieldPtr field, Code code) : field_(std::move(field)), code_(code) {
    if (!field_) throw std::invalid_argument("field element without a field");
    if (code_ >= field_->size()) throw std::invalid_argument("field element code out of range");
}

namespace {
const FieldPtr& common_field(const FieldElem& a, const FieldElem& b) {
    if (a.field() != b.field() && !(a.field()->desc() == b.field()->desc())) {
        throw std::invalid_argument("operands belong to different fields");
    }
    return a.field();
}
}  // namespace

FieldElem FieldElem::inv() const {
    if (code_ == 0) throw std::domain_error("inverse of zero");
    return {field_, field_->inv(code_)};
}

FieldElem FieldElem::pow(std::uint64_t n) const { return {field_, field_->pow(code_, n)}; }

FieldElem FieldElem::frobenius() const { return {field_, field_->frobenius(code_)}; }

FieldElem operator+(const FieldElem& a, const FieldElem& b) {
    const auto& f = common_field(a, b);
    return {f, f->add(a.code_, b.code_)};
}

FieldElem operator-(const FieldElem& a, const FieldElem& b) {
    const auto& f = common_field(a, b);
    return {f, f->sub(a.code_, b.code_)};
}

FieldElem operator*(const FieldElem& a, const FieldElem& b) {
    const auto& f = common_field(a, b);
    return {f, f->mul(a.code_, b.code_)};
}

FieldElem operator/(const FieldElem& a, const FieldElem& b) {
    const auto& f = common_field(a, b);
    if (b.code_ == 0) throw std::domain_error("division by zero");
    return {f, f->div(a.code_, b.code_)};
}

FieldElem operator-(const FieldElem& a) { return {a.field_, a.field_->neg(a.code_)}; }

bool operator==(const FieldElem& a, const FieldElem& b) {
    return a.code_ == b.code_ && (a.field_ == b.field_ || a.field_->desc() == b.field_->desc());
}

std::string to_string(const FieldElem& a) { return a.field()->format(a.code()); }

}  // namespace pcurve
