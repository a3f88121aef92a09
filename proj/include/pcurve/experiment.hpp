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

#ifndef PCURVE_EXPERIMENT_HPP
#define PCURVE_EXPERIMENT_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "pcurve/sieve.hpp"
#include "pcurve/stats.hpp"

namespace pcurve {

/// Version tag of the candidate enumeration order embedded in reports.
inline constexpr const char* kEnumerationOrder = "enum-v1";

class InvalidManifest : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A disagreement between two computations that must agree; always fatal.
class InternalInconsistency : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised by a run stopped on purpose before all shards finished.
class RunInterrupted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class ExperimentKind { distribution, moments, sieve_verify, smooth_crosscheck, proposition_exact };

const char* to_string(ExperimentKind k);
ExperimentKind parse_experiment_kind(const std::string& s);

struct Manifest {
    ExperimentKind kind = ExperimentKind::distribution;
    std::string field = "2^1";
    int degree = 3;
    CountMode mode = CountMode::all;
    Strategy strategy;
    int max_k = 4;                          // moments
    int jet_order = 1;                      // sieve-verify
    PointConstraint target = PointConstraint::value_zero;  // sieve-verify
    int oracle_max_e = 0;                   // smooth-crosscheck; 0 means (d-1)^2
    std::optional<double> tv_tolerance;     // distribution: flag tv above it
    std::string json_out;
    std::string csv_out;
    /// Execution setting; not part of the digest.
    std::uint64_t shards = 1;

    friend bool operator==(const Manifest&, const Manifest&) = default;
};

nlohmann::json to_json(const Manifest& m);
/// Strict parse: unknown keys and out-of-range values throw InvalidManifest.
Manifest manifest_from_json(const nlohmann::json& j);
Manifest load_manifest(const std::string& path);
void save_manifest(const Manifest& m, const std::string& path);
/// Hash of the canonical JSON without the execution settings.
std::string manifest_digest(const Manifest& m);

/// Saved progress of one shard of a histogram run.
struct Checkpoint {
    std::string digest;
    std::uint64_t shard = 0;
    std::uint64_t of = 1;
    Range range;
    std::uint64_t next = 0;  // first candidate index not yet visited
    Histogram partial;

    bool complete() const noexcept { return next >= range.end; }
};

std::string serialize(const Checkpoint& c);
/// Throws std::runtime_error on a malformed or foreign-version file.
Checkpoint parse_checkpoint(const std::string& text, const FieldDesc& field, int d, CountMode mode);

struct RunOptions {
    bool resume = false;
    /// Directory-less prefix for checkpoint files; empty disables checkpoints.
    std::string checkpoint_prefix;
    std::uint64_t checkpoint_interval = std::uint64_t{1} << 20;
    /// Parallel workers; shards are processed in index order when 1.
    unsigned workers = 1;
    /// Stop with RunInterrupted after this many shards complete.
    std::optional<std::uint64_t> halt_after_shards;
    /// Overrides the timestamp in the run block.
    std::optional<std::string> timestamp;
};

struct Report {
    nlohmann::json payload;  // deterministic part
    nlohmann::json run;      // shards, timestamp
    std::string csv;         // empty when the kind has no table

    nlohmann::json document() const { return {{"payload", payload}, {"run", run}}; }
};

Report run(const Manifest& m, const RunOptions& opts = {});
/// Writes the JSON (and CSV, if any) to the manifest's output paths.
void write_outputs(const Manifest& m, const Report& r);

/// Exit status of the command-line driver.
enum ExitCode : int {
    exit_ok = 0,
    exit_failure = 1,
    exit_invalid_manifest = 2,
    exit_budget_exceeded = 3,
    exit_internal_inconsistency = 4,
};

}  // namespace pcurve

#endif  // PCURVE_EXPERIMENT_HPP
