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

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "pcurve/experiment.hpp"

using namespace pcurve;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("pcurve-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string operator/(const std::string& name) const { return (path / name).string(); }
    static int& counter() {
        static int n = 0;
        return n;
    }
};

Manifest smooth_cubics(std::uint64_t shards = 1) {
    Manifest m;
    m.kind = ExperimentKind::distribution;
    m.field = "2^1";
    m.degree = 3;
    m.mode = CountMode::smooth;
    m.shards = shards;
    return m;
}

RunOptions fixed_time() {
    RunOptions o;
    o.timestamp = "2026-01-01T00:00:00Z";
    return o;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST_SUITE("experiment") {
    TEST_CASE("manifests round-trip through JSON and disk") {
        TempDir dir;
        Manifest m = smooth_cubics(4);
        m.strategy = Strategy::sample(500, 9);
        m.tv_tolerance = 0.25;
        m.json_out = "a.json";
        m.csv_out = "a.csv";
        CHECK(manifest_from_json(to_json(m)) == m);
        save_manifest(m, dir / "m.json");
        CHECK(load_manifest(dir / "m.json") == m);

        Manifest s;
        s.kind = ExperimentKind::sieve_verify;
        s.jet_order = 2;
        s.target = PointConstraint::on_curve_smooth;
        s.degree = 9;
        CHECK(manifest_from_json(to_json(s)) == s);
        for (const auto k : {ExperimentKind::distribution, ExperimentKind::moments, ExperimentKind::sieve_verify,
                             ExperimentKind::smooth_crosscheck, ExperimentKind::proposition_exact})
            CHECK(parse_experiment_kind(to_string(k)) == k);
    }

    TEST_CASE("manifest parsing is strict") {
        const json good = {{"kind", "distribution"}, {"field", "3^1"}, {"degree", 2}};
        CHECK_NOTHROW(manifest_from_json(good));
        auto with = [&](const char* key, json value) {
            json j = good;
            j[key] = std::move(value);
            return j;
        };
        auto without = [&](const char* key) {
            json j = good;
            j.erase(key);
            return j;
        };
        CHECK_THROWS_AS(manifest_from_json(without("kind")), InvalidManifest);
        CHECK_THROWS_AS(manifest_from_json(without("field")), InvalidManifest);
        CHECK_THROWS_AS(manifest_from_json(without("degree")), InvalidManifest);
        CHECK_THROWS_AS(manifest_from_json(with("colour", "red")), InvalidManifest);
        CHECK_THROWS_AS(manifest_from_json(with("kind", "histogram")), InvalidManifest);
        CHECK_THROWS_AS(manifest_from_json(with("field", "6^1")), InvalidManifest);
        CHECK_THROWS_AS(manifest_from_json(with("degree", 0)), InvalidManifest);
        CHECK_THROWS_AS(manifest_from_json(with("degree", "three")), InvalidManifest);
        CHECK_THROWS_AS(manifest_from_json(with("mode", "some")), InvalidManifest);
        CHECK_THROWS_AS(manifest_from_json(with("strategy", {{"type", "sample"}, {"n", 0}})), InvalidManifest);
        CHECK_THROWS_AS(manifest_from_json(with("strategy", {{"type", "exhaustive"}, {"seed", 1}})), InvalidManifest);
        CHECK_THROWS_AS(manifest_from_json(with("strategy", {{"type", "guess"}})), InvalidManifest);
        CHECK_THROWS_AS(manifest_from_json(with("run", {{"shards", 0}})), InvalidManifest);
        CHECK_THROWS_AS(manifest_from_json(with("run", {{"workers", 2}})), InvalidManifest);
        CHECK_THROWS_AS(manifest_from_json(with("outputs", {{"pdf", "x"}})), InvalidManifest);
        CHECK_THROWS_AS(manifest_from_json(with("jet_order", 3)), InvalidManifest);
        CHECK_THROWS_AS(manifest_from_json(with("target", "jet_zero")), InvalidManifest);  // needs order 2
        CHECK_THROWS_AS(manifest_from_json(with("tv_tolerance", -1)), InvalidManifest);
        CHECK_THROWS_AS(manifest_from_json(json::array()), InvalidManifest);
        CHECK_THROWS_AS(manifest_from_json(with("field", "2^21")), BudgetExceeded);

        TempDir dir;
        std::ofstream(dir / "bad.json") << "{ not json";
        CHECK_THROWS_AS(load_manifest(dir / "bad.json"), InvalidManifest);
        CHECK_THROWS_AS(load_manifest(dir / "missing.json"), InvalidManifest);
    }

    TEST_CASE("digest ignores execution settings and output paths only") {
        const Manifest a = smooth_cubics(1);
        Manifest b = smooth_cubics(4);
        b.json_out = "x.json";
        b.csv_out = "x.csv";
        CHECK(manifest_digest(a) == manifest_digest(b));
        CHECK(manifest_digest(a).size() == 16);
        Manifest c = a;
        c.degree = 4;
        CHECK(manifest_digest(a) != manifest_digest(c));
        c = a;
        c.mode = CountMode::all;
        CHECK(manifest_digest(a) != manifest_digest(c));
        c = a;
        c.strategy = Strategy::sample(10, 1);
        CHECK(manifest_digest(a) != manifest_digest(c));
    }

    TEST_CASE("checkpoints round-trip and reject damage") {
        const FieldPtr k = make_field(3, 1);
        Checkpoint c;
        c.digest = "0123456789abcdef";
        c.shard = 2;
        c.of = 5;
        c.range = {100, 200};
        c.next = 150;
        c.partial = Histogram(k->desc(), 2, CountMode::smooth);
        c.partial.add(4);
        c.partial.add(4);
        c.partial.add(0);
        const std::string text = serialize(c);
        const Checkpoint back = parse_checkpoint(text, k->desc(), 2, CountMode::smooth);
        CHECK(back.digest == c.digest);
        CHECK(back.shard == 2);
        CHECK(back.of == 5);
        CHECK(back.range == c.range);
        CHECK(back.next == 150);
        CHECK(back.partial == c.partial);
        CHECK_FALSE(back.complete());
        CHECK(serialize(back) == text);

        CHECK_THROWS(parse_checkpoint(text, k->desc(), 3, CountMode::smooth));
        CHECK_THROWS(parse_checkpoint(text, k->desc(), 2, CountMode::all));
        CHECK_THROWS(parse_checkpoint(text, make_field(2, 1)->desc(), 2, CountMode::smooth));
        CHECK_THROWS(parse_checkpoint("pcurve-checkpoint v0\n" + text.substr(text.find('\n') + 1), k->desc(), 2,
                                      CountMode::smooth));
        CHECK_THROWS(parse_checkpoint(text.substr(0, text.size() / 2), k->desc(), 2, CountMode::smooth));
        std::string wrong_total = text;
        wrong_total.replace(wrong_total.find("total 3"), 7, "total 4");
        CHECK_THROWS(parse_checkpoint(wrong_total, k->desc(), 2, CountMode::smooth));
        std::string outside = text;
        outside.replace(outside.find("next 150"), 8, "next 250");
        CHECK_THROWS(parse_checkpoint(outside, k->desc(), 2, CountMode::smooth));
    }

    TEST_CASE("distribution run over smooth cubics") {
        const Report r = run(smooth_cubics(), fixed_time());
        const json& res = r.payload["result"];
        CHECK(res["histogram"]["total"] == 336);
        CHECK(res["candidates"] == "1024");
        CHECK(res["smooth_fraction"]["exact"] == "21/64");
        CHECK(res["rows"].size() == 8);
        std::istringstream csv(r.csv);
        std::string line;
        std::getline(csv, line);
        CHECK(line == "t,count,empirical_freq,model_pmf,diff,ci_halfwidth");
        int rows = 0;
        while (std::getline(csv, line)) {
            CHECK(line.back() == ',');  // no interval for exhaustive runs
            ++rows;
        }
        CHECK(rows == 8);
        CHECK(r.payload["enumeration_order"] == kEnumerationOrder);
        CHECK(r.payload["manifest_digest"] == manifest_digest(smooth_cubics()));
        CHECK(r.payload["field"]["modulus"] == "-");
        CHECK_FALSE(r.payload["manifest"].contains("run"));
        CHECK(r.run["timestamp"] == "2026-01-01T00:00:00Z");
        CHECK(r.run["shards"] == 1);

        Manifest tol = smooth_cubics();
        tol.tv_tolerance = 0.5;
        CHECK(run(tol, fixed_time()).payload["result"]["tv_within_tolerance"] == true);
        tol.tv_tolerance = 0.01;
        CHECK(run(tol, fixed_time()).payload["result"]["tv_within_tolerance"] == false);
    }

    TEST_CASE("payloads do not depend on sharding or workers") {
        for (const Strategy& strategy : {Strategy::full(), Strategy::sample(2000, 77)}) {
            for (const ExperimentKind kind : {ExperimentKind::distribution, ExperimentKind::moments}) {
                Manifest one = smooth_cubics(1);
                one.kind = kind;
                one.strategy = strategy;
                one.field = "3^1";
                one.degree = 2;
                Manifest four = one;
                four.shards = 4;
                const auto base = run(one, fixed_time());
                CHECK(run(four, fixed_time()).payload.dump() == base.payload.dump());
                RunOptions par = fixed_time();
                par.workers = 3;
                const auto parallel = run(four, par);
                CHECK(parallel.payload.dump() == base.payload.dump());
                CHECK(parallel.csv == base.csv);
            }
        }
    }

    TEST_CASE("halting and resuming reproduces a fresh run") {
        TempDir dir;
        const Manifest m = smooth_cubics(4);
        const auto fresh = run(m, fixed_time());

        RunOptions opts = fixed_time();
        opts.checkpoint_prefix = dir / "ck";
        opts.checkpoint_interval = 37;
        opts.halt_after_shards = 1;
        CHECK_THROWS_AS(run(m, opts), RunInterrupted);
        CHECK(fs::exists(dir / "ck.shard0.ckpt"));
        CHECK_FALSE(fs::exists(dir / "ck.shard1.ckpt"));

        // A partially finished second shard, as if killed mid-way.
        const FieldPtr k = make_field(2, 1);
        const auto plan = shard_plan(1024, 4);
        const CurveCounter counter(k, 3, CountMode::smooth);
        Checkpoint mid{manifest_digest(m), 1, 4, plan[1], plan[1].begin + 100, Histogram(k->desc(), 3, CountMode::smooth)};
        enumerate_range(counter, {plan[1].begin, plan[1].begin + 100}, mid.partial);
        std::ofstream(dir / "ck.shard1.ckpt") << serialize(mid);

        opts.halt_after_shards.reset();
        opts.resume = true;
        const auto resumed = run(m, opts);
        CHECK(resumed.payload.dump() == fresh.payload.dump());
        CHECK(resumed.document().dump() == fresh.document().dump());
        for (int i = 0; i < 4; ++i) CHECK_FALSE(fs::exists(dir / ("ck.shard" + std::to_string(i) + ".ckpt")));

        // A checkpoint from another run is refused.
        Manifest other = m;
        other.mode = CountMode::all;
        Checkpoint foreign{manifest_digest(other), 0, 4, plan[0], plan[0].begin, Histogram(k->desc(), 3, CountMode::smooth)};
        std::ofstream(dir / "ck.shard0.ckpt") << serialize(foreign);
        CHECK_THROWS_AS(run(m, opts), std::runtime_error);
    }

    TEST_CASE("sieve verification report") {
        Manifest m;
        m.kind = ExperimentKind::sieve_verify;
        m.degree = 7;
        const auto res = run(m, fixed_time()).payload["result"];
        CHECK(res["rank"] == 7);
        CHECK(res["dim"] == 7);
        CHECK(res["surjective"] == true);
        CHECK(res["exact_uniform_fibers"] == true);
        CHECK(res["density"]["exact"] == "1/128");
        CHECK(res["smallest_surjective_degree"] == 3);
        CHECK(res["ranks"].size() == 7);
        CHECK(res["ranks"][0]["rank"] == 3);
        m.degree = 2;
        const auto low = run(m, fixed_time()).payload["result"];
        CHECK(low["surjective"] == false);
        CHECK(low["exact_uniform_fibers"] == false);
        CHECK_FALSE(low.contains("density"));
    }

    TEST_CASE("smoothness cross-check report") {
        Manifest m;
        m.kind = ExperimentKind::smooth_crosscheck;
        m.degree = 3;
        auto res = run(m, fixed_time()).payload["result"];
        CHECK(res["forms"] == 1023);
        CHECK(res["smooth"] == 336);
        CHECK(res["oracle_complete"] == true);
        CHECK(res["disagreements"] == 0);
        m.field = "3^1";
        m.strategy = Strategy::sample(300, 5);
        res = run(m, fixed_time()).payload["result"];
        CHECK(res["forms"] == 300);
        m.oracle_max_e = 30;
        CHECK_THROWS_AS(run(m, fixed_time()), BudgetExceeded);
    }

    TEST_CASE("exact proposition report") {
        Manifest m;
        m.kind = ExperimentKind::proposition_exact;
        m.degree = 4;
        auto res = run(m, fixed_time()).payload["result"];
        CHECK(res["exact_match"] == true);
        CHECK(res["enumeration"]["performed"] == true);
        CHECK(res["enumeration"]["matches_fiber_counts"] == true);
        m.degree = 7;
        res = run(m, fixed_time()).payload["result"];
        CHECK(res["exact_match"] == true);
        CHECK(res["rank"] == 7);
        CHECK(res["enumeration"]["performed"] == false);
        CHECK(res["rows"][0]["fiber_count"] == ipow(2, 29).str());
        m.degree = 2;
        res = run(m, fixed_time()).payload["result"];
        CHECK(res["surjective"] == false);
        CHECK(res["smallest_surjective_degree"] == 3);
    }

    TEST_CASE("outputs are written where the manifest says") {
        TempDir dir;
        Manifest m = smooth_cubics();
        m.json_out = dir / "out.json";
        m.csv_out = dir / "out.csv";
        const auto r = run(m, fixed_time());
        write_outputs(m, r);
        const json doc = json::parse(slurp(m.json_out));
        CHECK(doc["payload"] == r.payload);
        CHECK(doc["run"]["timestamp"] == "2026-01-01T00:00:00Z");
        CHECK(slurp(m.csv_out) == r.csv);
    }
}
