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

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "pcurve/experiment.hpp"
#include "pcurve/poly.hpp"
#include "pcurve/sieve.hpp"
#include "pcurve/smooth.hpp"

namespace {

using namespace pcurve;

struct CommonFlags {
    std::string field = "2";
    int degree = 3;
    std::string mode = "all";
    bool exhaustive = false;
    std::optional<std::uint64_t> sample;
    std::uint64_t seed = 0;
    std::uint64_t shards = 1;
    std::uint64_t budget = kDefaultCandidateBudget;
    unsigned workers = 1;
    std::string out;
    bool resume = false;
};

void add_common(CLI::App* app, CommonFlags& f, bool with_mode) {
    app->add_option("--field", f.field, "field size as p or p^k")->required();
    app->add_option("--degree", f.degree, "curve degree")->required()->check(CLI::Range(1, 64));
    if (with_mode) app->add_option("--mode", f.mode, "all or smooth")->check(CLI::IsMember({"all", "smooth"}));
    auto* ex = app->add_flag("--exhaustive", f.exhaustive, "visit every form (default)");
    auto* sa = app->add_option("--sample", f.sample, "draw N random forms")->check(CLI::PositiveNumber);
    ex->excludes(sa);
    app->add_option("--seed", f.seed, "sampling seed");
    app->add_option("--shards", f.shards, "number of shards")->check(CLI::PositiveNumber);
    app->add_option("--budget", f.budget, "candidate budget for exhaustive runs");
    app->add_option("--workers", f.workers, "parallel workers")->check(CLI::PositiveNumber);
    app->add_option("--out", f.out, "write PATH.json (and PATH.csv) instead of printing");
    app->add_flag("--resume", f.resume, "continue from checkpoints written under --out");
}

Manifest manifest_from(const CommonFlags& f, ExperimentKind kind) {
    Manifest m;
    m.kind = kind;
    m.field = f.field;
    m.degree = f.degree;
    m.mode = parse_count_mode(f.mode);
    m.strategy = f.sample ? Strategy::sample(*f.sample, f.seed) : Strategy::full(f.budget);
    m.shards = f.shards;
    if (!f.out.empty()) {
        m.json_out = f.out + ".json";
        m.csv_out = f.out + ".csv";
    }
    return m;
}

int execute(const Manifest& m, const CommonFlags& f) {
    RunOptions opts;
    opts.resume = f.resume;
    opts.workers = f.workers;
    if (!f.out.empty()) opts.checkpoint_prefix = f.out;
    if (f.resume && f.out.empty()) throw std::invalid_argument("--resume needs --out");
    const Report r = run(m, opts);
    if (m.json_out.empty()) {
        std::cout << r.document().dump(2) << '\n';
    } else {
        write_outputs(m, r);
        std::cout << "wrote " << m.json_out;
        if (!r.csv.empty() && !m.csv_out.empty()) std::cout << " and " << m.csv_out;
        std::cout << '\n';
    }
    return exit_ok;
}

void field_info(const std::string& spec) {
    const FieldPtr k = parse_field(spec);
    const auto& d = k->desc();
    std::cout << "field      F_" << d.order() << " (" << d.spec() << ")\n"
              << "modulus    " << d.modulus_string() << '\n'
              << "primitive  " << k->format(k->primitive()) << '\n'
              << "P^2 points " << p2_point_count(d.order(), 1) << '\n';
}

void smooth_single(const std::string& spec, int d, const std::string& text, int max_e) {
    const FieldPtr k = parse_field(spec);
    const TernaryForm f = parse_form(k, d, text);
    const auto v = is_smooth(f);
    std::cout << "form    " << to_string(f) << '\n'
              << "smooth  " << (v.smooth ? "yes" : "no") << '\n'
              << "path    " << to_string(v.path) << '\n';
    if (v.witness) {
        std::cout << "witness " << to_string(v.witness->point, *k) << " (chart " << v.witness->chart << ")\n";
    }
    std::cout << "points  " << point_count(f) << '\n';
    const int e = max_e > 0 ? max_e : std::min(default_scan_bound(d), 4);
    const auto sing = singular_scan_oracle(f, e);
    std::cout << "scan    " << sing.size() << " singular point(s) of degree <= " << e << '\n';
}

void bounds(const std::string& spec, int d, int r, bool density) {
    const FieldPtr k = parse_field(spec);
    const std::uint64_t q = k->size();
    const TailBounds b = tail_bounds(q, k->characteristic(), d, r);
    std::cout << "medium  " << to_string(b.medium) << " = " << to_fixed(b.medium) << (b.medium_vacuous() ? "  (vacuous)" : "")
              << '\n'
              << "high    " << to_string(b.high) << " = " << to_fixed(b.high) << (b.high_vacuous() ? "  (vacuous)" : "")
              << (b.high_exponent_rounded ? "  (exponent floor(d/3))" : "") << '\n'
              << "zeta^-1 " << to_string(1 / zeta_p2(q, 3)) << " = " << to_fixed(1 / zeta_p2(q, 3)) << '\n'
              << "P_dr needs d >= " << p_dr_degree_bound(q, r, ZConfig()) << '\n';
    if (density) {
        const Rational s = singular_density(k, d, r, d / 3);
        std::cout << "density " << to_string(s) << " = " << to_fixed(s) << "  (singular at a point of degree in [" << r
                  << ", " << d / 3 << "])\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Plane curves over finite fields: point counts, smoothness and sieve densities"};
    app.set_version_flag("--version", PCURVE_VERSION);
    app.require_subcommand(1);

    auto* field_cmd = app.add_subcommand("field", "field arithmetic");
    auto* info = field_cmd->add_subcommand("info", "describe a field");
    std::string info_field;
    info->add_option("--field", info_field, "field size as p or p^k")->required();
    field_cmd->require_subcommand(1);

    CommonFlags dist_f, mom_f, sieve_f, check_f, prop_f;
    auto* dist = app.add_subcommand("dist", "point-count distribution against the binomial model");
    add_common(dist, dist_f, true);
    auto* mom = app.add_subcommand("moments", "empirical and model moments");
    add_common(mom, mom_f, true);
    int max_k = 4;
    mom->add_option("--max-k", max_k, "highest moment")->check(CLI::Range(1, 16));

    auto* sieve = app.add_subcommand("sieve", "jet-map rank and exact fiber density");
    add_common(sieve, sieve_f, false);
    int order = 1;
    std::string target = "value_zero";
    sieve->add_option("--order", order, "jet order at every rational point")->check(CLI::IsMember({1, 2}));
    sieve->add_option("--target", target, "per-point constraint");

    auto* check = app.add_subcommand("smooth-check", "cross-check smoothness against the singular-point scan");
    add_common(check, check_f, false);
    std::string form_text;
    int oracle_e = 0;
    check->add_option("--form", form_text, "check a single form, e.g. \"X^3 + Y^3 + Z^3\"");
    check->add_option("--oracle-max-e", oracle_e, "largest extension degree scanned");

    auto* prop = app.add_subcommand("prop-exact", "exact point-count distribution from fiber counts");
    add_common(prop, prop_f, false);

    auto* bnd = app.add_subcommand("bounds", "tail bounds and zeta values");
    std::string bnd_field;
    int bnd_d = 3, bnd_r = 1;
    bool bnd_density = false;
    bnd->add_option("--field", bnd_field, "field size as p or p^k")->required();
    bnd->add_option("--degree", bnd_d, "curve degree")->required()->check(CLI::PositiveNumber);
    bnd->add_option("--r", bnd_r, "lowest closed-point degree")->check(CLI::PositiveNumber);
    bnd->add_flag("--density", bnd_density, "enumerate the density the medium bound controls");

    auto* run_cmd = app.add_subcommand("run", "run an experiment manifest");
    std::string manifest_path;
    CommonFlags run_f;
    std::optional<std::uint64_t> run_shards;
    run_cmd->add_option("--manifest", manifest_path, "manifest JSON")->required();
    run_cmd->add_option("--shards", run_shards, "override the shard count")->check(CLI::PositiveNumber);
    run_cmd->add_option("--workers", run_f.workers, "parallel workers")->check(CLI::PositiveNumber);
    run_cmd->add_option("--out", run_f.out, "write PATH.json (and PATH.csv)");
    run_cmd->add_flag("--resume", run_f.resume, "continue from checkpoints");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_invalid_manifest;
    }

    try {
        if (info->parsed()) {
            field_info(info_field);
            return exit_ok;
        }
        if (dist->parsed()) return execute(manifest_from(dist_f, ExperimentKind::distribution), dist_f);
        if (mom->parsed()) {
            Manifest m = manifest_from(mom_f, ExperimentKind::moments);
            m.max_k = max_k;
            return execute(m, mom_f);
        }
        if (sieve->parsed()) {
            Manifest m = manifest_from(sieve_f, ExperimentKind::sieve_verify);
            m.jet_order = order;
            m.target = parse_point_constraint(target);
            m.csv_out.clear();
            return execute(manifest_from_json(to_json(m)), sieve_f);
        }
        if (check->parsed()) {
            if (!form_text.empty()) {
                smooth_single(check_f.field, check_f.degree, form_text, oracle_e);
                return exit_ok;
            }
            Manifest m = manifest_from(check_f, ExperimentKind::smooth_crosscheck);
            m.oracle_max_e = oracle_e;
            m.csv_out.clear();
            return execute(m, check_f);
        }
        if (prop->parsed()) {
            Manifest m = manifest_from(prop_f, ExperimentKind::proposition_exact);
            m.csv_out.clear();
            return execute(m, prop_f);
        }
        if (bnd->parsed()) {
            bounds(bnd_field, bnd_d, bnd_r, bnd_density);
            return exit_ok;
        }
        if (run_cmd->parsed()) {
            Manifest m = load_manifest(manifest_path);
            if (run_shards) m.shards = *run_shards;
            if (!run_f.out.empty()) {
                m.json_out = run_f.out + ".json";
                m.csv_out = run_f.out + ".csv";
            }
            if (run_f.out.empty() && !m.json_out.empty()) run_f.out = m.json_out;
            return execute(m, run_f);
        }
    } catch (const InvalidManifest& e) {
        std::cerr << "invalid manifest: " << e.what() << '\n';
        return exit_invalid_manifest;
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << '\n';
        return exit_budget_exceeded;
    } catch (const InternalInconsistency& e) {
        std::cerr << "INTERNAL INCONSISTENCY: " << e.what() << '\n';
        return exit_internal_inconsistency;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return exit_invalid_manifest;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_failure;
    }
    return exit_failure;
}
