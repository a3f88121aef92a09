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

#ifndef PCURVE_SIEVE_HPP
#define PCURVE_SIEVE_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "pcurve/exact.hpp"
#include "pcurve/plane.hpp"

namespace pcurve {

/// One point of a jet scheme: order 1 keeps the value, order 2 the value and
/// both chart derivatives.
struct ZEntry {
    ProjPoint point;
    int order = 1;
};

/// Finite jet scheme supported on rational points.
class ZConfig {
public:
    ZConfig() = default;
    explicit ZConfig(std::vector<ZEntry> entries);

    /// Every point of P^2(F_q) with the same order, in enumeration order.
    static ZConfig all_points(const Field& field, int order);

    const std::vector<ZEntry>& entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }
    /// Dimension of the space of jets: sum of 1 (order 1) or 3 (order 2).
    std::size_t dim() const noexcept;
    /// Short stable hash of the textual description.
    std::string digest(const Field& field) const;
    std::string describe(const Field& field) const;

private:
    std::vector<ZEntry> entries_;
};

/// Matrix of the jet evaluation map S_d -> H^0(Z, O_Z): one row per jet
/// coordinate, one column per monomial in storage order; entries are field codes.
using JetMatrix = Eigen::Matrix<Code, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

JetMatrix jet_matrix(const FieldPtr& field, int d, const ZConfig& z);

/// Row rank over the field.
std::size_t rank(JetMatrix m, const Field& field);

enum class PointConstraint {
    unconstrained,
    value_zero,
    value_nonzero,
    jet_zero,         // order 2 only
    jet_nonzero,      // order 2 only
    on_curve_smooth,  // order 2 only: value 0, jet nonzero
};

const char* to_string(PointConstraint c);
PointConstraint parse_point_constraint(const std::string& s);

/// T as a product of per-entry constraints, aligned with the ZConfig entries.
struct TargetSet {
    std::vector<PointConstraint> constraints;

    static TargetSet uniform(std::size_t n, PointConstraint c) { return {std::vector<PointConstraint>(n, c)}; }
};

/// Number of jets satisfying one constraint at an entry of the given order.
Integer constraint_cardinality(PointConstraint c, int order, std::uint64_t q);
/// |T|; throws if T does not match z.
Integer cardinality(const TargetSet& t, const ZConfig& z, std::uint64_t q);

/// Raised when the jet map is not onto, so fibers need not have equal size.
class NotSurjective : public std::runtime_error {
public:
    NotSurjective(std::size_t rank, std::size_t dim);
    std::size_t rank;
    std::size_t dim;
};

/// Rank certificate for the jet map in degree d.
struct SurjectivityReport {
    int d = 0;
    std::string digest;
    std::size_t dim = 0;
    std::size_t rank = 0;
    bool surjective = false;
};

SurjectivityReport certify(const FieldPtr& field, int d, const ZConfig& z);

/// #{F in S_d : jets of F in T} / #S_d = |T| / q^dim, exact once the jet map
/// has full rank. Throws NotSurjective otherwise.
Rational fiber_density(const FieldPtr& field, int d, const ZConfig& z, const TargetSet& t);

/// Smallest degree in [1, max_d] with a surjective jet map, if any.
std::optional<int> smallest_surjective_degree(const FieldPtr& field, const ZConfig& z, int max_d);

/// Number of closed points of degree e in U = P^2 minus the support of z.
Integer closed_points_outside(std::uint64_t q, int e, const ZConfig& z);

/// (|T| / q^dim) * prod over closed points P of U with deg P < r of
/// (1 - q^{-3 deg P}). Throws std::invalid_argument if d < 3 r s + dim - 1.
Rational p_dr_formula(const FieldPtr& field, int d, int r, const ZConfig& z, const TargetSet& t);
/// The degree needed by p_dr_formula: 3 r s + dim - 1.
Integer p_dr_degree_bound(std::uint64_t q, int r, const ZConfig& z);

/// zeta of P^2 at an integer s >= 3: 1 / ((1 - q^-s)(1 - q^{1-s})(1 - q^{2-s})).
Rational zeta_p2(std::uint64_t q, int s);
/// zeta of U = P^2 minus the support of z: zeta_p2 * (1 - q^-s)^{#support}.
Rational zeta_u(std::uint64_t q, int s, const ZConfig& z);

/// Right-hand sides of the medium- and high-degree tail bounds.
struct TailBounds {
    Rational medium;
    Rational high;
    /// The exponent d/3 was binding and not an integer; floor(d/3) was used,
    /// which can only enlarge the bound.
    bool high_exponent_rounded = false;

    bool medium_vacuous() const { return medium >= 1; }
    bool high_vacuous() const { return high >= 1; }
};

TailBounds tail_bounds(std::uint64_t q, std::uint32_t p, int d, int r);

/// Distribution of #C_F(F_q) over all of S_d (the zero form included),
/// derived from the order-1 jet map at every rational point.
struct FiberDistribution {
    std::uint64_t q = 0;
    int d = 0;
    std::size_t dim = 0;
    std::size_t rank = 0;
    bool surjective = false;
    /// counts[t] = #{F in S_d : #C_F(F_q) = t}; empty if not surjective.
    std::vector<Integer> counts;
    Integer total;  // q^monomial_count(d)
};

FiberDistribution point_count_distribution_by_fibers(const FieldPtr& field, int d);

}  // namespace pcurve

#endif  // PCURVE_SIEVE_HPP
