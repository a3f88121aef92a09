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

#ifndef PCURVE_SMOOTH_HPP
#define PCURVE_SMOOTH_HPP

#include <optional>
#include <vector>

#include "pcurve/plane.hpp"
#include "pcurve/poly.hpp"

namespace pcurve {

/// A singular point, rational over F_{q^ext_degree}; chart is the point's
/// canonical chart.
struct SingularWitness {
    int chart = 2;
    int ext_degree = 1;
    ProjPoint point;
};

/// Which stage of the decision produced the verdict.
enum class DecisionPath {
    rational_point,    // singular F_q-point found
    line_at_infinity,  // univariate gcd on Z = 0
    resultant,         // resultant certificate of smoothness on Z = 1
    groebner,          // Groebner basis on Z = 1
};

const char* to_string(DecisionPath p);

struct SmoothnessVerdict {
    bool smooth = false;
    std::optional<SingularWitness> witness;
    DecisionPath path = DecisionPath::groebner;
};

/// F(P) = 0 and both chart partials vanish at P. P lies over F's own field
/// or, with an embedding, over emb.ext().
bool is_singular_at(const TernaryForm& f, const ProjPoint& p);
bool is_singular_at(const TernaryForm& f, const ProjPoint& p, const Embedding& emb);

/// Smoothness over the algebraic closure with precomputation shared across
/// all forms of one field and degree. Both decision routes are const and
/// thread-safe.
///
/// Both start with singular rational points (with witness) and the line
/// Z = 0 (univariate gcd of F, F_X, F_Z restricted to [x:1:0]). On the
/// affine chart Z = 1, decide() computes the Groebner basis of (f, f_x, f_y);
/// decide_via_resultant() first tries Res_y(f, f_x) and Res_y(f, f_y), whose
/// coprimality certifies smoothness, and falls back to Groebner when a
/// resultant is degenerate or the certificate is inconclusive.
class SmoothnessDecider {
public:
    SmoothnessDecider(FieldPtr field, int d);

    SmoothnessVerdict decide(const TernaryForm& f) const;
    SmoothnessVerdict decide_via_resultant(const TernaryForm& f) const;

    const FieldPtr& field() const noexcept { return field_; }
    int degree() const noexcept { return d_; }

private:
    SmoothnessVerdict decide_impl(const TernaryForm& f, bool use_resultant) const;

    FieldPtr field_;
    int d_;
    JetTable rational_;
};

SmoothnessVerdict is_smooth(const TernaryForm& f);

/// Chart-by-chart Groebner test on all three charts, with no shortcuts.
bool is_smooth_by_charts(const TernaryForm& f);

/// A singular geometric point: its exact degree over F_q and a
/// representative over F_{q^ext_degree}.
struct SingularPoint {
    int ext_degree = 1;
    ProjPoint point;
    friend bool operator==(const SingularPoint&, const SingularPoint&) = default;
};

/// Exhaustive search for singular points of exact degree 1..max_e by
/// scanning P^2(F_{q^e}). Frobenius orbits are scanned through one
/// representative and reported in full.
class SingularScanner {
public:
    SingularScanner(FieldPtr field, int d, int max_e, std::uint64_t field_limit = kDefaultFieldLimit);

    std::vector<SingularPoint> scan(const TernaryForm& f) const;
    /// True iff scan(f) would be nonempty.
    bool any(const TernaryForm& f) const;
    /// True iff f has a singular point of exact degree in [min_e, max_degree()].
    bool any(const TernaryForm& f, int min_e) const;

    int max_degree() const noexcept { return max_e_; }
    /// Number of closed points (orbit representatives) of exact degree e.
    std::size_t representatives(int e) const { return tables_.at(static_cast<std::size_t>(e - 1)).size(); }

private:
    FieldPtr field_;
    int d_;
    int max_e_;
    std::vector<JetTable> tables_;  // one per degree, representatives of exact degree e
};

/// Default bound: singular points of a degree-d curve have degree <= (d-1)^2.
int default_scan_bound(int d);

std::vector<SingularPoint> singular_scan_oracle(const TernaryForm& f, int max_e,
                                                std::uint64_t field_limit = kDefaultFieldLimit);

}  // namespace pcurve

#endif  // PCURVE_SMOOTH_HPP
