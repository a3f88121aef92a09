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

#include "pcurve/stats.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "pcurve/poly.hpp"

namespace pcurve {

const char* to_string(CountMode m) { return m == CountMode::all ? "all" : "smooth"; }

CountMode parse_count_mode(const std::string& s) {
    if (s == "all") return CountMode::all;
    if (s == "smooth") return CountMode::smooth;
    throw std::invalid_argument("unknown mode '" + s + "' (expected all or smooth)");
}

Histogram::Histogram(FieldDesc f, int degree, CountMode m, Provenance prov)
    : field(f), d(degree), mode(m), provenance(prov) {
    const std::uint64_t q = f.order();
    counts.assign(static_cast<std::size_t>(q * q + q + 2), 0);
}

void Histogram::merge(const Histogram& other) {
    if (!(field == other.field) || d != other.d || mode != other.mode || counts.size() != other.counts.size()) {
        throw std::invalid_argument("merging histograms of different experiments");
    }
    for (std::size_t t = 0; t < counts.size(); ++t) counts[t] += other.counts[t];
    total += other.total;
}

ModelDist binomial_model(std::uint64_t n, const Rational& p) {
    if (p < 0 || p > 1) throw std::invalid_argument("probability outside [0, 1]");
    ModelDist m{n, p, {}};
    m.pmf.reserve(n + 1);
    for (std::uint64_t t = 0; t <= n; ++t) {
        m.pmf.push_back(Rational(binomial(n, t)) * rpow(p, static_cast<std::int64_t>(t)) *
                        rpow(1 - p, static_cast<std::int64_t>(n - t)));
    }
    return m;
}

ModelDist smooth_model(std::uint64_t q) {
    const std::uint64_t n = q * q + q + 1;
    return binomial_model(n, Rational(q + 1, n));
}

ModelDist all_curves_model(std::uint64_t q) { return binomial_model(q * q + q + 1, Rational(1, q)); }

std::vector<Rational> frequencies(const Histogram& h) {
    if (h.total == 0) throw std::invalid_argument("empty histogram");
    std::vector<Rational> out;
    out.reserve(h.counts.size());
    for (const auto c : h.counts) out.emplace_back(c, h.total);
    return out;
}

Rational central_moment(const std::vector<Rational>& dist, const Rational& c, int k) {
    if (k < 0) throw std::invalid_argument("moment order must be nonnegative");
    Rational sum = 0;
    for (std::size_t t = 0; t < dist.size(); ++t) {
        if (dist[t] != 0) sum += dist[t] * rpow(Rational(t) - c, k);
    }
    return sum;
}

Rational raw_moment(const std::vector<Rational>& dist, int k) { return central_moment(dist, 0, k); }
Rational raw_moment(const Histogram& h, int k) { return raw_moment(frequencies(h), k); }
Rational raw_moment(const ModelDist& m, int k) { return raw_moment(m.pmf, k); }

Rational ScaledMoment::exact() const {
    if (!is_rational()) throw std::domain_error("moment involves an odd power of a square root");
    return coeff * rpow(Rational(base), -half_power / 2);
}

Rational ScaledMoment::squared() const { return coeff * coeff * rpow(Rational(base), -half_power); }

double ScaledMoment::approx() const {
    return to_double(coeff) * std::pow(base.convert_to<double>(), -0.5 * half_power);
}

ScaledMoment normalized_raw_moment(const std::vector<Rational>& dist, std::uint64_t q, int k) {
    return {raw_moment(dist, k), Integer(q + 1), k};
}

ScaledMoment normalized_central_moment(const std::vector<Rational>& dist, std::uint64_t q, int k) {
    return {central_moment(dist, Rational(q + 1), k), Integer(q + 1), k};
}

Integer stirling2(int k, int l) {
    if (k < 0 || l < 0) throw std::invalid_argument("negative Stirling index");
    std::vector<Integer> row(static_cast<std::size_t>(l) + 1, 0);
    row[0] = 1;
    for (int i = 1; i <= k; ++i) {
        for (int j = std::min(i, l); j >= 1; --j) row[j] = j * row[j] + row[j - 1];
        row[0] = 0;
    }
    return row[l];
}

Rational stirling_moment_identity(std::uint64_t n, const Rational& p, int k) {
    if (n < 1 || k < 1) throw std::invalid_argument("need n, k >= 1");
    Rational sum = 0;
    Integer falling = 1;
    for (int l = 1; l <= k && static_cast<std::uint64_t>(l) <= n; ++l) {
        falling *= n - static_cast<std::uint64_t>(l) + 1;
        sum += Rational(stirling2(k, l) * falling) * rpow(p, l);
    }
    return sum;
}

Comparison compare(const Histogram& h, const ModelDist& m) {
    if (h.total == 0) throw std::invalid_argument("comparison against an empty histogram");
    if (m.pmf.size() + 1 != h.counts.size() && m.pmf.size() != h.counts.size()) {
        throw std::invalid_argument("histogram and model supports differ");
    }
    Comparison out;
    Rational abs_sum = 0;
    const std::size_t n = std::max(m.pmf.size(), h.counts.size());
    for (std::size_t t = 0; t < n; ++t) {
        CompareRow row;
        row.t = t;
        row.count = t < h.counts.size() ? h.counts[t] : 0;
        row.empirical = Rational(row.count, h.total);
        row.model = t < m.pmf.size() ? m.pmf[t] : Rational(0);
        row.diff = row.empirical - row.model;
        const Rational a = abs(row.diff);
        abs_sum += a;
        if (a > out.max_abs_diff) out.max_abs_diff = a;
        if (!h.provenance.exhaustive) {
            const double f = to_double(row.empirical);
            row.ci_halfwidth = kZ99 * std::sqrt(f * (1 - f) / static_cast<double>(h.total));
        }
        out.rows.push_back(std::move(row));
    }
    out.tv = abs_sum / 2;
    return out;
}

std::vector<Range> shard_plan(std::uint64_t total, std::uint64_t n_shards) {
    if (n_shards < 1) throw std::invalid_argument("shard count must be positive");
    std::vector<Range> out;
    const std::uint64_t base = total / n_shards, extra = total % n_shards;
    std::uint64_t at = 0;
    for (std::uint64_t i = 0; i < n_shards; ++i) {
        const std::uint64_t len = base + (i < extra ? 1 : 0);
        out.push_back({at, at + len});
        at += len;
    }
    return out;
}

std::uint64_t candidate_count(std::uint64_t q, int d, std::uint64_t budget) {
    const Integer n = ipow(q, monomial_count(d));
    if (n > budget) {
        throw BudgetExceeded(std::to_string(q) + "^" + std::to_string(monomial_count(d)) +
                             " candidate forms exceed the budget of " + std::to_string(budget));
    }
    return n.convert_to<std::uint64_t>();
}

std::vector<Range> shard_plan(int d, std::uint64_t q, std::uint64_t n_shards) {
    return shard_plan(candidate_count(q, d, ~std::uint64_t{0}), n_shards);
}

std::vector<Code> sample_coefficients(const Field& field, int d, std::uint64_t seed, std::uint64_t index,
                                      std::uint64_t attempt) {
    auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v); };
    auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
    std::seed_seq seq{lo(seed), hi(seed), lo(index), hi(index), lo(attempt), hi(attempt)};
    std::mt19937_64 gen(seq);
    const std::uint64_t q = field.size();
    const std::uint64_t reject_below = (0 - q) % q;  // 2^64 mod q
    std::vector<Code> out(monomial_count(d));
    for (auto& c : out) {
        std::uint64_t x;
        do x = gen();
        while (x < reject_below);
        c = static_cast<Code>(x % q);
    }
    return out;
}

CurveCounter::CurveCounter(FieldPtr field, int d, CountMode mode)
    : field_(std::move(field)), d_(d), mode_(mode), table_(JetTable::rational(field_, d)) {
    if (mode_ == CountMode::smooth) decider_.emplace(field_, d_);
}

std::size_t CurveCounter::point_count(const TernaryForm& f) const {
    const auto c = f.coeffs();
    std::size_t n = 0;
    for (std::size_t i = 0; i < table_.size(); ++i)
        if (table_.value(i, c) == 0) ++n;
    return n;
}

std::optional<std::size_t> CurveCounter::classify(const TernaryForm& f) const {
    if (f.is_zero()) return std::nullopt;
    if (decider_ && !decider_->decide(f).smooth) return std::nullopt;
    return point_count(f);
}

void visit_range(const FieldPtr& field, int d, Range r,
                 const std::function<void(const TernaryForm&, std::uint64_t)>& fn) {
    if (r.size() == 0) return;
    const std::uint64_t q = field->size();
    const TernaryForm first = TernaryForm::from_index(field, d, r.begin);
    std::vector<Code> c(first.coeffs().begin(), first.coeffs().end());
    for (std::uint64_t i = r.begin; i < r.end; ++i) {
        if (i != r.begin) {
            for (auto& digit : c) {
                if (++digit < q) break;
                digit = 0;
            }
        }
        if (i == 0) continue;
        fn(TernaryForm(field, d, c), i);
    }
}

void enumerate_range(const CurveCounter& counter, Range r, Histogram& h, const ProgressFn& progress,
                     std::uint64_t interval) {
    visit_range(counter.field(), counter.degree(), r, [&](const TernaryForm& g, std::uint64_t i) {
        if (const auto t = counter.classify(g)) h.add(*t);
        if (progress && (i + 1 - r.begin) % interval == 0 && i + 1 < r.end) progress(i + 1, h);
    });
}

void sample_range(const CurveCounter& counter, std::uint64_t seed, Range r, Histogram& h,
                  const ProgressFn& progress, std::uint64_t interval) {
    const FieldPtr& field = counter.field();
    for (std::uint64_t i = r.begin; i < r.end; ++i) {
        for (std::uint64_t attempt = 0;; ++attempt) {
            const TernaryForm g(field, counter.degree(), sample_coefficients(*field, counter.degree(), seed, i, attempt));
            if (const auto t = counter.classify(g)) {
                h.add(*t);
                break;
            }
        }
        if (progress && (i + 1 - r.begin) % interval == 0 && i + 1 < r.end) progress(i + 1, h);
    }
}

Histogram empirical_histogram(const FieldPtr& field, int d, CountMode mode, const Strategy& strategy,
                              std::optional<Shard> shard) {
    const Shard s = shard.value_or(Shard{});
    if (s.of < 1 || s.index >= s.of) throw std::invalid_argument("invalid shard specification");
    Provenance prov;
    prov.exhaustive = strategy.exhaustive;
    prov.sample_n = strategy.n;
    prov.seed = strategy.seed;
    prov.zero_form_excluded = true;
    Histogram h(field->desc(), d, mode, prov);
    const CurveCounter counter(field, d, mode);
    if (strategy.exhaustive) {
        const auto plan = shard_plan(candidate_count(field->size(), d, strategy.budget), s.of);
        enumerate_range(counter, plan[s.index], h);
    } else {
        if (strategy.n < 1) throw std::invalid_argument("sample size must be positive");
        const auto plan = shard_plan(strategy.n, s.of);
        sample_range(counter, strategy.seed, plan[s.index], h);
    }
    return h;
}

Rational singular_density(const FieldPtr& field, int d, int min_e, int max_e, std::uint64_t budget) {
    const std::uint64_t total = candidate_count(field->size(), d, budget);
    min_e = std::max(min_e, 1);
    if (min_e > max_e) return 0;
    const SingularScanner scanner(field, d, max_e);
    std::uint64_t hits = 1;  // the zero form is singular everywhere
    visit_range(field, d, {0, total}, [&](const TernaryForm& f, std::uint64_t) {
        if (scanner.any(f, min_e)) ++hits;
    });
    return Rational(hits, total);
}

}  // namespace pcurve
