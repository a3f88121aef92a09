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

#ifndef PCURVE_STATS_HPP
#define PCURVE_STATS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pcurve/exact.hpp"
#include "pcurve/gf.hpp"
#include "pcurve/plane.hpp"
#include "pcurve/smooth.hpp"

namespace pcurve {

/// Ceiling on the number of candidate forms an exhaustive run may visit.
inline constexpr std::uint64_t kDefaultCandidateBudget = std::uint64_t{1} << 30;

enum class CountMode { all, smooth };

const char* to_string(CountMode m);
CountMode parse_count_mode(const std::string& s);

struct Provenance {
    bool exhaustive = true;
    std::uint64_t sample_n = 0;
    std::uint64_t seed = 0;
    /// The zero form was skipped; every exhaustive run excludes it.
    bool zero_form_excluded = true;
};

/// counts[t] = number of visited forms whose curve has t rational points.
struct Histogram {
    FieldDesc field;
    int d = 0;
    CountMode mode = CountMode::all;
    std::vector<std::uint64_t> counts;
    std::uint64_t total = 0;
    Provenance provenance;

    Histogram() = default;
    Histogram(FieldDesc field, int d, CountMode mode, Provenance prov = {});

    std::size_t support_size() const noexcept { return counts.size(); }
    void add(std::size_t t) {
        ++counts.at(t);
        ++total;
    }
    /// Adds another histogram of the same field, degree and mode.
    void merge(const Histogram& other);
    friend bool operator==(const Histogram& a, const Histogram& b) {
        return a.field == b.field && a.d == b.d && a.mode == b.mode && a.counts == b.counts && a.total == b.total;
    }
};

/// Binomial(n, p) with exact probabilities.
struct ModelDist {
    std::uint64_t n = 0;
    Rational p;
    std::vector<Rational> pmf;
};

ModelDist binomial_model(std::uint64_t n, const Rational& p);
/// n = q^2 + q + 1 points, each on the curve with probability (q+1)/(q^2+q+1).
ModelDist smooth_model(std::uint64_t q);
/// n = q^2 + q + 1 points, each on the curve with probability 1/q.
ModelDist all_curves_model(std::uint64_t q);

/// Histogram as exact frequencies count/total.
std::vector<Rational> frequencies(const Histogram& h);

/// E[t^k] of a distribution given by exact probabilities indexed by t.
Rational raw_moment(const std::vector<Rational>& dist, int k);
/// E[(t - c)^k].
Rational central_moment(const std::vector<Rational>& dist, const Rational& c, int k);
Rational raw_moment(const Histogram& h, int k);
Rational raw_moment(const ModelDist& m, int k);

/// coeff * base^(-half_power / 2): an exact value that may involve a square root.
struct ScaledMoment {
    Rational coeff;
    Integer base;
    int half_power = 0;

    bool is_rational() const noexcept { return half_power % 2 == 0; }
    /// The value itself; throws std::domain_error when half_power is odd.
    Rational exact() const;
    /// The value squared, always rational.
    Rational squared() const;
    double approx() const;
};

/// N_k = (q+1)^{-k/2} E[t^k].
ScaledMoment normalized_raw_moment(const std::vector<Rational>& dist, std::uint64_t q, int k);
/// M_k = E[((t - (q+1)) / sqrt(q+1))^k].
ScaledMoment normalized_central_moment(const std::vector<Rational>& dist, std::uint64_t q, int k);

/// Stirling number of the second kind S(k, l).
Integer stirling2(int k, int l);
/// E[(X_1 + ... + X_n)^k] for i.i.d. Bernoulli(p): sum_l S(k,l) (n)_l p^l.
Rational stirling_moment_identity(std::uint64_t n, const Rational& p, int k);

/// 99% two-sided normal quantile.
inline constexpr double kZ99 = 2.5758293035489004;

struct CompareRow {
    std::size_t t = 0;
    std::uint64_t count = 0;
    Rational empirical;
    Rational model;
    Rational diff;  // empirical - model
    double ci_halfwidth = 0;  // sampled histograms only
};

struct Comparison {
    Rational tv;
    Rational max_abs_diff;
    std::vector<CompareRow> rows;
};

/// Total variation distance and per-t table against a model of the same support.
Comparison compare(const Histogram& h, const ModelDist& m);

/// Contiguous range [begin, end) of candidate indices.
struct Range {
    std::uint64_t begin = 0;
    std::uint64_t end = 0;
    std::uint64_t size() const noexcept { return end - begin; }
    friend bool operator==(const Range&, const Range&) = default;
};

/// Split [0, total) into n_shards contiguous ranges, the first total % n_shards
/// one element longer.
std::vector<Range> shard_plan(std::uint64_t total, std::uint64_t n_shards);
/// Plan over the base-q odometer space of degree-d coefficient sequences,
/// q^monomial_count(d) candidates including the zero form.
std::vector<Range> shard_plan(int d, std::uint64_t q, std::uint64_t n_shards);

/// Number of candidate forms q^monomial_count(d); throws BudgetExceeded above budget.
std::uint64_t candidate_count(std::uint64_t q, int d, std::uint64_t budget = kDefaultCandidateBudget);

/// Coefficients of sample i (attempt a) from a generator seeded by (seed, i, a).
std::vector<Code> sample_coefficients(const Field& field, int d, std::uint64_t seed, std::uint64_t index,
                                      std::uint64_t attempt);

/// Counts rational points and, in smooth mode, decides smoothness, with
/// tables shared across forms.
class CurveCounter {
public:
    CurveCounter(FieldPtr field, int d, CountMode mode);

    /// Rational point count, or nullopt if the mode filters the form out.
    std::optional<std::size_t> classify(const TernaryForm& f) const;
    std::size_t point_count(const TernaryForm& f) const;

    const FieldPtr& field() const noexcept { return field_; }
    int degree() const noexcept { return d_; }
    CountMode mode() const noexcept { return mode_; }

private:
    FieldPtr field_;
    int d_;
    CountMode mode_;
    JetTable table_;
    std::optional<SmoothnessDecider> decider_;
};

/// Calls fn(form, index) for every nonzero candidate with index in r, in
/// odometer order (coefficient of monomial 0 varies fastest).
void visit_range(const FieldPtr& field, int d, Range r,
                 const std::function<void(const TernaryForm&, std::uint64_t)>& fn);

/// Called after every `interval` candidates with the next index to visit.
using ProgressFn = std::function<void(std::uint64_t next, const Histogram& partial)>;

/// Exhaustive pass over candidate indices in r (zero form skipped), adding to h.
void enumerate_range(const CurveCounter& counter, Range r, Histogram& h, const ProgressFn& progress = {},
                     std::uint64_t interval = std::uint64_t{1} << 20);
/// Samples with indices in r; a sample whose form is zero or filtered out by
/// the mode is redrawn with the next attempt number.
void sample_range(const CurveCounter& counter, std::uint64_t seed, Range r, Histogram& h,
                  const ProgressFn& progress = {}, std::uint64_t interval = std::uint64_t{1} << 20);

struct Strategy {
    bool exhaustive = true;
    std::uint64_t n = 0;
    std::uint64_t seed = 0;
    std::uint64_t budget = kDefaultCandidateBudget;

    static Strategy full(std::uint64_t budget = kDefaultCandidateBudget) { return {true, 0, 0, budget}; }
    static Strategy sample(std::uint64_t n, std::uint64_t seed) { return {false, n, seed, kDefaultCandidateBudget}; }
    friend bool operator==(const Strategy&, const Strategy&) = default;
};

struct Shard {
    std::uint64_t index = 0;
    std::uint64_t of = 1;
};

Histogram empirical_histogram(const FieldPtr& field, int d, CountMode mode, const Strategy& strategy,
                              std::optional<Shard> shard = std::nullopt);

/// Density over all of S_d (zero form included) of forms singular at some
/// closed point of degree in [min_e, max_e]; zero when the range is empty.
Rational singular_density(const FieldPtr& field, int d, int min_e, int max_e,
                          std::uint64_t budget = kDefaultCandidateBudget);

}  // namespace pcurve

#endif  // PCURVE_STATS_HPP
