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

#include "pcurve/experiment.hpp"

#include <atomic>
#include <cstdio>
#include <ctime>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "pcurve/digest.hpp"
#include "pcurve/poly.hpp"
#include "pcurve/sieve.hpp"
#include "pcurve/smooth.hpp"

namespace pcurve {

using nlohmann::json;

const char* to_string(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::distribution: return "distribution";
        case ExperimentKind::moments: return "moments";
        case ExperimentKind::sieve_verify: return "sieve-verify";
        case ExperimentKind::smooth_crosscheck: return "smooth-crosscheck";
        case ExperimentKind::proposition_exact: return "proposition-exact";
    }
    return "unknown";
}

ExperimentKind parse_experiment_kind(const std::string& s) {
    for (const auto k : {ExperimentKind::distribution, ExperimentKind::moments, ExperimentKind::sieve_verify,
                         ExperimentKind::smooth_crosscheck, ExperimentKind::proposition_exact}) {
        if (s == to_string(k)) return k;
    }
    throw InvalidManifest("unknown experiment kind '" + s + "'");
}

json to_json(const Manifest& m) {
    json strategy = m.strategy.exhaustive
                        ? json{{"type", "exhaustive"}, {"budget", m.strategy.budget}}
                        : json{{"type", "sample"}, {"n", m.strategy.n}, {"seed", m.strategy.seed}};
    json j{{"kind", to_string(m.kind)},
           {"field", m.field},
           {"degree", m.degree},
           {"mode", to_string(m.mode)},
           {"strategy", std::move(strategy)},
           {"max_k", m.max_k},
           {"jet_order", m.jet_order},
           {"target", to_string(m.target)},
           {"oracle_max_e", m.oracle_max_e},
           {"outputs", {{"json", m.json_out}, {"csv", m.csv_out}}},
           {"run", {{"shards", m.shards}}}};
    if (m.tv_tolerance) j["tv_tolerance"] = *m.tv_tolerance;
    return j;
}

namespace {

void check_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
    if (!j.is_object()) throw InvalidManifest(where + " must be an object");
    for (const auto& [key, value] : j.items()) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || key == a;
        if (!ok) throw InvalidManifest("unknown key '" + key + "' in " + where);
    }
}

template <class T>
T get_or(const json& j, const char* key, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw InvalidManifest(std::string("bad value for '") + key + "': " + e.what());
    }
}

}  // namespace

Manifest manifest_from_json(const json& j) {
    check_keys(j,
               {"kind", "field", "degree", "mode", "strategy", "max_k", "jet_order", "target", "oracle_max_e",
                "tv_tolerance", "outputs", "run"},
               "manifest");
    for (const char* key : {"kind", "field", "degree"}) {
        if (!j.contains(key)) throw InvalidManifest(std::string("missing required key '") + key + "'");
    }
    Manifest m;
    m.kind = parse_experiment_kind(get_or<std::string>(j, "kind", ""));
    m.field = get_or<std::string>(j, "field", "");
    try {
        parse_field(m.field);
    } catch (const BudgetExceeded&) {
        throw;
    } catch (const std::exception& e) {
        throw InvalidManifest("bad field '" + m.field + "': " + e.what());
    }
    m.degree = get_or<int>(j, "degree", 0);
    if (m.degree < 1 || m.degree > 64) throw InvalidManifest("degree must be in [1, 64]");
    try {
        m.mode = parse_count_mode(get_or<std::string>(j, "mode", "all"));
        m.target = parse_point_constraint(get_or<std::string>(j, "target", "value_zero"));
    } catch (const std::invalid_argument& e) {
        throw InvalidManifest(e.what());
    }
    if (j.contains("strategy")) {
        const json& s = j.at("strategy");
        check_keys(s, {"type", "budget", "n", "seed"}, "strategy");
        const auto type = get_or<std::string>(s, "type", "exhaustive");
        if (type == "exhaustive") {
            if (s.contains("n") || s.contains("seed")) throw InvalidManifest("exhaustive strategy takes no n or seed");
            m.strategy = Strategy::full(get_or<std::uint64_t>(s, "budget", kDefaultCandidateBudget));
        } else if (type == "sample") {
            if (s.contains("budget")) throw InvalidManifest("sample strategy takes no budget");
            m.strategy = Strategy::sample(get_or<std::uint64_t>(s, "n", 0), get_or<std::uint64_t>(s, "seed", 0));
            if (m.strategy.n < 1) throw InvalidManifest("sample size must be positive");
        } else {
            throw InvalidManifest("unknown strategy type '" + type + "'");
        }
    }
    m.max_k = get_or<int>(j, "max_k", 4);
    if (m.max_k < 1 || m.max_k > 16) throw InvalidManifest("max_k must be in [1, 16]");
    m.jet_order = get_or<int>(j, "jet_order", 1);
    if (m.jet_order != 1 && m.jet_order != 2) throw InvalidManifest("jet_order must be 1 or 2");
    try {
        constraint_cardinality(m.target, m.jet_order, 2);
    } catch (const std::invalid_argument& e) {
        throw InvalidManifest(e.what());
    }
    m.oracle_max_e = get_or<int>(j, "oracle_max_e", 0);
    if (m.oracle_max_e < 0) throw InvalidManifest("oracle_max_e must be nonnegative");
    if (j.contains("tv_tolerance")) {
        m.tv_tolerance = get_or<double>(j, "tv_tolerance", 0.0);
        if (*m.tv_tolerance < 0) throw InvalidManifest("tv_tolerance must be nonnegative");
    }
    if (j.contains("outputs")) {
        const json& o = j.at("outputs");
        check_keys(o, {"json", "csv"}, "outputs");
        m.json_out = get_or<std::string>(o, "json", "");
        m.csv_out = get_or<std::string>(o, "csv", "");
    }
    if (j.contains("run")) {
        const json& r = j.at("run");
        check_keys(r, {"shards"}, "run");
        m.shards = get_or<std::uint64_t>(r, "shards", 1);
        if (m.shards < 1) throw InvalidManifest("shards must be positive");
    }
    return m;
}

Manifest load_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidManifest("cannot open manifest '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw InvalidManifest("manifest '" + path + "' is not valid JSON: " + e.what());
    }
    return manifest_from_json(j);
}

void save_manifest(const Manifest& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << to_json(m).dump(2) << '\n';
}

namespace {

// The manifest as it appears in reports: what is computed, not where or how.
json canonical(const Manifest& m) {
    json j = to_json(m);
    j.erase("run");
    j.erase("outputs");
    return j;
}

}  // namespace

std::string manifest_digest(const Manifest& m) { return fnv1a64_hex(canonical(m).dump()); }

std::string serialize(const Checkpoint& c) {
    std::ostringstream out;
    out << "pcurve-checkpoint v1\n";
    out << "digest " << c.digest << '\n';
    out << "field " << c.partial.field.spec() << '\n';
    out << "degree " << c.partial.d << '\n';
    out << "mode " << to_string(c.partial.mode) << '\n';
    out << "shard " << c.shard << ' ' << c.of << '\n';
    out << "range " << c.range.begin << ' ' << c.range.end << '\n';
    out << "next " << c.next << '\n';
    out << "total " << c.partial.total << '\n';
    out << "counts";
    for (const auto n : c.partial.counts) out << ' ' << n;
    out << "\nend\n";
    return out.str();
}

Checkpoint parse_checkpoint(const std::string& text, const FieldDesc& field, int d, CountMode mode) {
    std::istringstream in(text);
    auto fail = [](const std::string& why) { return std::runtime_error("malformed checkpoint: " + why); };
    std::string line;
    if (!std::getline(in, line) || line != "pcurve-checkpoint v1") throw fail("unknown header");
    auto expect = [&](const char* key) {
        std::string k;
        if (!(in >> k) || k != key) throw fail(std::string("expected '") + key + "'");
    };
    Checkpoint c;
    std::string s;
    expect("digest");
    in >> c.digest;
    expect("field");
    in >> s;
    if (s != field.spec()) throw fail("field " + s + " does not match " + field.spec());
    expect("degree");
    int cd = 0;
    in >> cd;
    if (cd != d) throw fail("degree mismatch");
    expect("mode");
    in >> s;
    if (s != to_string(mode)) throw fail("mode mismatch");
    expect("shard");
    in >> c.shard >> c.of;
    expect("range");
    in >> c.range.begin >> c.range.end;
    expect("next");
    in >> c.next;
    c.partial = Histogram(field, d, mode);
    expect("total");
    in >> c.partial.total;
    expect("counts");
    std::uint64_t sum = 0;
    for (auto& n : c.partial.counts) {
        if (!(in >> n)) throw fail("short count list");
        sum += n;
    }
    expect("end");
    if (!in) throw fail("truncated");
    if (sum != c.partial.total) throw fail("counts do not add up to total");
    if (c.next < c.range.begin || c.next > c.range.end) throw fail("position outside range");
    return c;
}

namespace {

json rational_json(const Rational& r) { return {{"exact", to_string(r)}, {"decimal", to_fixed(r, 12)}}; }

std::string fixed(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12f", x);
    return buf;
}

json scaled_json(const ScaledMoment& s) {
    json j{{"coeff", to_string(s.coeff)}, {"base", s.base.str()}, {"half_power", s.half_power},
           {"approx", fixed(s.approx())}};
    if (s.is_rational()) j["exact"] = to_string(s.exact());
    return j;
}

json histogram_json(const Histogram& h) {
    json prov = h.provenance.exhaustive
                    ? json{{"strategy", "exhaustive"}}
                    : json{{"strategy", "sample"}, {"n", h.provenance.sample_n}, {"seed", h.provenance.seed}};
    prov["zero_form_excluded"] = h.provenance.zero_form_excluded;
    return {{"counts", h.counts}, {"total", h.total}, {"mode", to_string(h.mode)}, {"provenance", prov}};
}

std::string now_utc() {
    const std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string checkpoint_path(const std::string& prefix, std::uint64_t shard) {
    return prefix + ".shard" + std::to_string(shard) + ".ckpt";
}

void write_file(const std::string& path, const std::string& text) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write '" + tmp + "'");
        out << text;
    }
    std::filesystem::rename(tmp, path);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

// Runs every shard of a histogram experiment and merges in shard order.
Histogram run_histogram(const Manifest& m, const FieldPtr& field, const RunOptions& opts) {
    const std::string digest = manifest_digest(m);
    const CurveCounter counter(field, m.degree, m.mode);
    const auto plan = m.strategy.exhaustive
                          ? shard_plan(candidate_count(field->size(), m.degree, m.strategy.budget), m.shards)
                          : shard_plan(m.strategy.n, m.shards);
    Provenance prov{m.strategy.exhaustive, m.strategy.n, m.strategy.seed, true};
    std::vector<Histogram> parts(plan.size(), Histogram(field->desc(), m.degree, m.mode, prov));

    const bool checkpoints = !opts.checkpoint_prefix.empty();
    std::atomic<std::uint64_t> next_shard{0};
    std::atomic<bool> stop{false};
    std::uint64_t completed = 0;
    std::mutex mu;
    std::exception_ptr error;

    auto work = [&] {
        for (;;) {
            if (stop) return;
            const std::uint64_t i = next_shard++;
            if (i >= plan.size()) return;
            try {
                Checkpoint c{digest, i, plan.size(), plan[i], plan[i].begin, parts[i]};
                const std::string path = checkpoints ? checkpoint_path(opts.checkpoint_prefix, i) : "";
                if (checkpoints && opts.resume && std::filesystem::exists(path)) {
                    Checkpoint saved = parse_checkpoint(read_file(path), field->desc(), m.degree, m.mode);
                    if (saved.digest != digest || saved.shard != i || saved.of != plan.size() ||
                        !(saved.range == plan[i])) {
                        throw std::runtime_error("checkpoint '" + path + "' belongs to a different run");
                    }
                    c.next = saved.next;
                    c.partial.counts = saved.partial.counts;
                    c.partial.total = saved.partial.total;
                }
                const ProgressFn save = [&](std::uint64_t next, const Histogram& h) {
                    Checkpoint snap = c;
                    snap.next = next;
                    snap.partial.counts = h.counts;
                    snap.partial.total = h.total;
                    write_file(path, serialize(snap));
                };
                const Range rest{c.next, plan[i].end};
                if (m.strategy.exhaustive) {
                    enumerate_range(counter, rest, c.partial, checkpoints ? save : ProgressFn{},
                                    opts.checkpoint_interval);
                } else {
                    sample_range(counter, m.strategy.seed, rest, c.partial, checkpoints ? save : ProgressFn{},
                                 opts.checkpoint_interval);
                }
                if (checkpoints) save(plan[i].end, c.partial);
                parts[i] = std::move(c.partial);
                std::lock_guard lock(mu);
                ++completed;
                if (opts.halt_after_shards && completed >= *opts.halt_after_shards) stop = true;
            } catch (...) {
                std::lock_guard lock(mu);
                if (!error) error = std::current_exception();
                stop = true;
                return;
            }
        }
    };

    const unsigned n_workers = static_cast<unsigned>(std::min<std::uint64_t>(std::max(1u, opts.workers), plan.size()));
    if (n_workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < n_workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    if (error) std::rethrow_exception(error);
    if (completed < plan.size()) {
        throw RunInterrupted("run halted after " + std::to_string(completed) + " of " + std::to_string(plan.size()) +
                             " shards");
    }
    Histogram merged(field->desc(), m.degree, m.mode, prov);
    for (const auto& h : parts) merged.merge(h);
    if (checkpoints) {
        for (std::uint64_t i = 0; i < plan.size(); ++i) std::filesystem::remove(checkpoint_path(opts.checkpoint_prefix, i));
    }
    return merged;
}

ModelDist model_for(CountMode mode, std::uint64_t q) {
    return mode == CountMode::smooth ? smooth_model(q) : all_curves_model(q);
}

json distribution_result(const Manifest& m, const FieldPtr& field, const Histogram& h, std::string& csv) {
    const std::uint64_t q = field->size();
    const ModelDist model = model_for(m.mode, q);
    const Comparison cmp = compare(h, model);
    json rows = json::array();
    std::ostringstream out;
    out << "t,count,empirical_freq,model_pmf,diff,ci_halfwidth\n";
    for (const auto& r : cmp.rows) {
        const std::string ci = h.provenance.exhaustive ? "" : fixed(r.ci_halfwidth);
        rows.push_back({{"t", r.t},
                        {"count", r.count},
                        {"empirical_freq", to_fixed(r.empirical, 12)},
                        {"model_pmf", to_fixed(r.model, 12)},
                        {"diff", to_fixed(r.diff, 12)},
                        {"ci_halfwidth", ci}});
        out << r.t << ',' << r.count << ',' << to_fixed(r.empirical, 12) << ',' << to_fixed(r.model, 12) << ','
            << to_fixed(r.diff, 12) << ',' << ci << '\n';
    }
    csv = out.str();
    json j{{"histogram", histogram_json(h)},
           {"model", {{"name", m.mode == CountMode::smooth ? "smooth" : "all_curves"},
                      {"n", model.n},
                      {"p", to_string(model.p)}}},
           {"tv", rational_json(cmp.tv)},
           {"max_abs_diff", rational_json(cmp.max_abs_diff)},
           {"rows", rows}};
    if (h.provenance.exhaustive) {
        const Integer forms = ipow(q, monomial_count(m.degree));
        j["candidates"] = forms.str();
        if (m.mode == CountMode::smooth) j["smooth_fraction"] = rational_json(Rational(Integer(h.total), forms));
    }
    if (m.tv_tolerance) j["tv_within_tolerance"] = to_double(cmp.tv) <= *m.tv_tolerance;
    return j;
}

json moments_result(const Manifest& m, const FieldPtr& field, const Histogram& h, std::string& csv) {
    const std::uint64_t q = field->size();
    const ModelDist model = model_for(m.mode, q);
    const auto freq = frequencies(h);
    json rows = json::array();
    std::ostringstream out;
    out << "k,empirical_raw,model_raw,empirical_M,model_M\n";
    for (int k = 1; k <= m.max_k; ++k) {
        const Rational model_raw = raw_moment(model, k);
        const Rational stirling = stirling_moment_identity(model.n, model.p, k);
        if (stirling != model_raw) {
            throw InternalInconsistency("moment identity fails at k = " + std::to_string(k));
        }
        const ScaledMoment em = normalized_central_moment(freq, q, k);
        const ScaledMoment mm = normalized_central_moment(model.pmf, q, k);
        rows.push_back({{"k", k},
                        {"empirical", {{"raw", rational_json(raw_moment(freq, k))},
                                       {"normalized_raw", scaled_json(normalized_raw_moment(freq, q, k))},
                                       {"normalized_central", scaled_json(em)}}},
                        {"model", {{"raw", rational_json(model_raw)},
                                   {"stirling_raw", to_string(stirling)},
                                   {"normalized_raw", scaled_json(normalized_raw_moment(model.pmf, q, k))},
                                   {"normalized_central", scaled_json(mm)}}}});
        out << k << ',' << to_fixed(raw_moment(freq, k), 12) << ',' << to_fixed(model_raw, 12) << ','
            << fixed(em.approx()) << ',' << fixed(mm.approx()) << '\n';
    }
    csv = out.str();
    return {{"histogram", histogram_json(h)}, {"moments", rows}};
}

json sieve_result(const Manifest& m, const FieldPtr& field) {
    const ZConfig z = ZConfig::all_points(*field, m.jet_order);
    const TargetSet t = TargetSet::uniform(z.size(), m.target);
    json ranks = json::array();
    for (int d = 1; d <= m.degree; ++d) {
        const auto c = certify(field, d, z);
        ranks.push_back({{"d", d}, {"rank", c.rank}, {"dim", c.dim}, {"surjective", c.surjective}});
    }
    const auto cert = certify(field, m.degree, z);
    const auto first = smallest_surjective_degree(field, z, m.degree);
    json j{{"zconfig", {{"points", z.size()}, {"order", m.jet_order}, {"digest", cert.digest}}},
           {"target", to_string(m.target)},
           {"d", m.degree},
           {"rank", cert.rank},
           {"dim", cert.dim},
           {"surjective", cert.surjective},
           {"interpolation_degree_bound", static_cast<std::int64_t>(cert.dim) - 1},
           {"smallest_surjective_degree", first ? json(*first) : json(nullptr)},
           {"ranks", ranks}};
    if (cert.surjective) {
        const Rational density = fiber_density(field, m.degree, z, t);
        const Integer forms = ipow(field->size(), monomial_count(m.degree));
        j["target_size"] = cardinality(t, z, field->size()).str();
        j["fiber_size"] = ipow(field->size(), monomial_count(m.degree) - cert.dim).str();
        j["density"] = rational_json(density);
        j["form_count"] = (forms * numerator(density) / denominator(density)).str();
        j["exact_uniform_fibers"] = true;
    } else {
        j["exact_uniform_fibers"] = false;
    }
    return j;
}

json crosscheck_result(const Manifest& m, const FieldPtr& field) {
    const std::uint64_t q = field->size();
    const int bound = default_scan_bound(m.degree);
    const int max_e = m.oracle_max_e > 0 ? m.oracle_max_e : bound;
    // P^2(F_{q^e}) is scanned point by point.
    if (Integer(p2_point_count(q, max_e)) > Integer(1) << 26) {
        throw BudgetExceeded("oracle scan over P^2(F_" + std::to_string(q) + "^" + std::to_string(max_e) +
                             ") is too large; lower oracle_max_e");
    }
    const SmoothnessDecider decider(field, m.degree);
    const SingularScanner oracle(field, m.degree, max_e);
    const bool complete = max_e >= bound;
    std::uint64_t forms = 0, smooth = 0;
    auto check = [&](const TernaryForm& f) {
        const bool s = decider.decide(f).smooth;
        if (decider.decide_via_resultant(f).smooth != s) {
            throw InternalInconsistency("decision routes disagree on " + to_string(f));
        }
        const bool singular_found = oracle.any(f);
        if (s && singular_found) throw InternalInconsistency("oracle finds a singular point on smooth " + to_string(f));
        if (complete && !s && !singular_found) {
            throw InternalInconsistency("oracle finds no singular point on singular " + to_string(f));
        }
        ++forms;
        if (s) ++smooth;
    };
    if (m.strategy.exhaustive) {
        for (const auto& r : shard_plan(candidate_count(q, m.degree, m.strategy.budget), m.shards)) {
            visit_range(field, m.degree, r, [&](const TernaryForm& f, std::uint64_t) { check(f); });
        }
    } else {
        for (const auto& r : shard_plan(m.strategy.n, m.shards)) {
            for (std::uint64_t i = r.begin; i < r.end; ++i) {
                for (std::uint64_t attempt = 0;; ++attempt) {
                    const TernaryForm f(field, m.degree, sample_coefficients(*field, m.degree, m.strategy.seed, i, attempt));
                    if (f.is_zero()) continue;
                    check(f);
                    break;
                }
            }
        }
    }
    return {{"forms", forms},
            {"smooth", smooth},
            {"singular", forms - smooth},
            {"oracle_max_e", max_e},
            {"oracle_complete", complete},
            {"routes", {"groebner", "resultant"}},
            {"disagreements", 0}};
}

json proposition_result(const Manifest& m, const FieldPtr& field, const RunOptions& opts) {
    const std::uint64_t q = field->size();
    const FiberDistribution fd = point_count_distribution_by_fibers(field, m.degree);
    const ZConfig z = ZConfig::all_points(*field, 1);
    json j{{"d", m.degree}, {"rank", fd.rank}, {"dim", fd.dim}, {"surjective", fd.surjective},
           {"forms", fd.total.str()}};
    if (!fd.surjective) {
        const auto first = smallest_surjective_degree(field, z, std::max(m.degree, static_cast<int>(z.dim()) + 1));
        j["smallest_surjective_degree"] = first ? json(*first) : json(nullptr);
        j["exact_match"] = nullptr;
        return j;
    }
    const ModelDist model = all_curves_model(q);
    json rows = json::array();
    bool match = true;
    for (std::size_t t = 0; t < fd.counts.size(); ++t) {
        const Rational expected = Rational(fd.total) * model.pmf[t];
        match = match && expected == Rational(fd.counts[t]);
        rows.push_back({{"t", t}, {"fiber_count", fd.counts[t].str()}, {"model_count", to_string(expected)}});
    }
    if (!match) throw InternalInconsistency("fiber counts differ from the binomial model");
    j["rows"] = rows;
    j["exact_match"] = true;

    // Enumeration cross-check when the whole space fits the budget.
    const Integer forms = ipow(q, monomial_count(m.degree));
    if (m.strategy.exhaustive && forms <= m.strategy.budget) {
        Manifest e = m;
        e.mode = CountMode::all;
        Histogram h = run_histogram(e, field, opts);
        h.add(static_cast<std::size_t>(z.size()));  // the zero form vanishes everywhere
        bool same = true;
        for (std::size_t t = 0; t < fd.counts.size(); ++t) same = same && Integer(h.counts[t]) == fd.counts[t];
        if (!same) throw InternalInconsistency("enumerated point counts differ from fiber counts");
        j["enumeration"] = {{"performed", true}, {"matches_fiber_counts", true}, {"zero_form_readded", true}};
    } else {
        j["enumeration"] = {{"performed", false}};
    }
    return j;
}

}  // namespace

Report run(const Manifest& m, const RunOptions& opts) {
    const FieldPtr field = parse_field(m.field);
    Report r;
    json result;
    switch (m.kind) {
        case ExperimentKind::distribution:
            result = distribution_result(m, field, run_histogram(m, field, opts), r.csv);
            break;
        case ExperimentKind::moments:
            result = moments_result(m, field, run_histogram(m, field, opts), r.csv);
            break;
        case ExperimentKind::sieve_verify: result = sieve_result(m, field); break;
        case ExperimentKind::smooth_crosscheck: result = crosscheck_result(m, field); break;
        case ExperimentKind::proposition_exact: result = proposition_result(m, field, opts); break;
    }
    const auto& desc = field->desc();
    r.payload = {{"manifest", canonical(m)},
                 {"manifest_digest", manifest_digest(m)},
                 {"field", {{"spec", desc.spec()}, {"p", desc.p}, {"k", desc.k}, {"modulus", desc.modulus_string()}}},
                 {"enumeration_order", kEnumerationOrder},
                 {"code_version", PCURVE_VERSION},
                 {"kind", to_string(m.kind)},
                 {"result", std::move(result)}};
    r.run = {{"shards", m.shards}, {"timestamp", opts.timestamp.value_or(now_utc())}};
    return r;
}

void write_outputs(const Manifest& m, const Report& r) {
    if (!m.json_out.empty()) write_file(m.json_out, r.document().dump(2) + "\n");
    if (!m.csv_out.empty() && !r.csv.empty()) write_file(m.csv_out, r.csv);
}

}  // namespace pcurve
