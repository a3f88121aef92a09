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

#ifndef PCURVE_GF_HPP
#define PCURVE_GF_HPP

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pcurve {

/// Integer code of a field element: the base-p number whose digits are the
/// coordinates in the power basis of the modulus root, constant digit first.
/// Code 0 is zero and code 1 is one in every field.
using Code = std::uint32_t;

/// Default ceiling on p^k for any constructed field.
inline constexpr std::uint64_t kDefaultFieldLimit = std::uint64_t{1} << 20;

/// Raised when a requested object is too large to enumerate.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Description of F_q, q = p^k.
struct FieldDesc {
    std::uint32_t p = 2;
    std::uint32_t k = 1;
    /// Monic irreducible polynomial of degree k over F_p, low-to-high
    /// coefficients (k + 1 entries). Empty for prime fields.
    std::vector<std::uint32_t> modulus;

    std::uint64_t order() const;
    /// "p^k"
    std::string spec() const;
    /// Human readable modulus, e.g. "t^2+t+1"; "-" for prime fields.
    std::string modulus_string() const;

    friend bool operator==(const FieldDesc&, const FieldDesc&) = default;
};

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// Immutable arithmetic context for F_{p^k}. Operations act on raw codes and do
/// no validation; FieldElem is the checked value type.
class Field {
public:
    explicit Field(FieldDesc desc);

    const FieldDesc& desc() const noexcept { return desc_; }
    std::uint32_t characteristic() const noexcept { return desc_.p; }
    std::uint32_t degree() const noexcept { return desc_.k; }
    std::uint32_t size() const noexcept { return q_; }

    Code add(Code a, Code b) const noexcept {
        if (desc_.p == 2) return a ^ b;
        if (desc_.k == 1) {
            const Code s = a + b;
            return s >= desc_.p ? s - desc_.p : s;
        }
        if (!add_table_.empty()) return add_table_[std::size_t{a} * q_ + b];
        return add_digits(a, b);
    }
    Code neg(Code a) const noexcept { return neg_[a]; }
    Code sub(Code a, Code b) const noexcept { return add(a, neg_[b]); }
    Code mul(Code a, Code b) const noexcept {
        if (a == 0 || b == 0) return 0;
        return exp_[log_[a] + log_[b]];
    }
    /// Precondition a != 0.
    Code inv(Code a) const noexcept { return exp_[(q_ - 1 - log_[a]) % (q_ - 1)]; }
    Code div(Code a, Code b) const noexcept { return mul(a, inv(b)); }
    Code pow(Code a, std::uint64_t n) const noexcept;
    Code frobenius(Code a) const noexcept { return pow(a, desc_.p); }
    /// Image of the integer n under Z -> F_p -> F_q.
    Code from_int(std::int64_t n) const noexcept;

    /// A fixed generator of the multiplicative group.
    Code primitive() const noexcept { return exp_[1]; }

    /// Coordinates of a code (k residues, constant first).
    std::vector<std::uint32_t> coords(Code a) const;
    Code from_coords(const std::vector<std::uint32_t>& c) const;

    /// Text form: prime fields print the residue, extensions print a
    /// polynomial in t in parentheses, e.g. "(t+1)".
    std::string format(Code a) const;
    Code parse(std::string_view text) const;

private:
    Code add_digits(Code a, Code b) const noexcept;

    FieldDesc desc_;
    std::uint32_t q_;
    std::vector<Code> exp_;  // length 2(q-1), so exp_[i + j] needs no reduction
    std::vector<std::uint32_t> log_;
    std::vector<Code> neg_;
    std::vector<Code> add_table_;  // q <= 256, odd p
};

/// Construct F_{p^k} with the lexicographically first monic irreducible
/// modulus (constant coefficient varying fastest).
FieldPtr make_field(std::int64_t p, std::int64_t k, std::uint64_t limit = kDefaultFieldLimit);

/// Parse "p^k" (or a bare prime "p").
FieldPtr parse_field(std::string_view spec, std::uint64_t limit = kDefaultFieldLimit);

bool is_prime(std::uint64_t n);

/// All elements in code order 0, 1, ..., q - 1.
std::vector<Code> enumerate_field(const Field& field);

/// Ring embedding F_{p^a} -> F_{p^b}, a | b, as a lookup table on codes.
class Embedding {
public:
    Embedding(FieldPtr base, FieldPtr ext);

    Code operator()(Code a) const noexcept { return table_[a]; }
    const Field& base() const noexcept { return *base_; }
    const Field& ext() const noexcept { return *ext_; }
    const FieldPtr& base_ptr() const noexcept { return base_; }
    const FieldPtr& ext_ptr() const noexcept { return ext_; }
    /// Image of the base generator t (1 for prime fields).
    Code root() const noexcept { return root_; }

private:
    FieldPtr base_;
    FieldPtr ext_;
    Code root_ = 1;
    std::vector<Code> table_;
};

Embedding embed(const FieldPtr& base, const FieldPtr& ext);

/// Checked field element bound to its field.
class FieldElem {
public:
    FieldElem(FieldPtr field, Code code);

    static FieldElem zero(FieldPtr field) { return {std::move(field), 0}; }
    static FieldElem one(FieldPtr field) { return {std::move(field), 1}; }

    Code code() const noexcept { return code_; }
    const FieldPtr& field() const noexcept { return field_; }
    std::vector<std::uint32_t> coeffs() const { return field_->coords(code_); }
    bool is_zero() const noexcept { return code_ == 0; }

    FieldElem inv() const;
    FieldElem pow(std::uint64_t n) const;
    FieldElem frobenius() const;

    friend FieldElem operator+(const FieldElem& a, const FieldElem& b);
    friend FieldElem operator-(const FieldElem& a, const FieldElem& b);
    friend FieldElem operator*(const FieldElem& a, const FieldElem& b);
    friend FieldElem operator/(const FieldElem& a, const FieldElem& b);
    friend FieldElem operator-(const FieldElem& a);
    friend bool operator==(const FieldElem& a, const FieldElem& b);

private:
    FieldPtr field_;
    Code code_;
};

std::string to_string(const FieldElem& a);

}  // namespace pcurve

#endif  // PCURVE_GF_HPP
